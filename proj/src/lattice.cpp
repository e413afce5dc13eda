#include "toriscope/lattice.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "toriscope/errors.hpp"

namespace toriscope {

LatVec::LatVec(std::initializer_list<long> values) {
  coords_.reserve(values.size());
  for (long v : values) coords_.emplace_back(v);
}

LatVec LatVec::unit(std::size_t dim, std::size_t index) {
  LatVec e(dim);
  e[index] = 1;
  return e;
}

LatVec LatVec::from_int64(const std::vector<std::int64_t>& values) {
  LatVec v(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) v[i] = static_cast<long>(values[i]);
  return v;
}

bool LatVec::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](const Integer& x) { return sgn(x) == 0; });
}

std::vector<std::int64_t> LatVec::to_int64() const {
  std::vector<std::int64_t> out(coords_.size());
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (!coords_[i].fits_slong_p()) throw LimitsExceeded("coordinate exceeds 64-bit range: " + coords_[i].get_str());
    out[i] = coords_[i].get_si();
  }
  return out;
}

std::string LatVec::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) s += ", ";
    s += coords_[i].get_str();
  }
  return s + ")";
}

std::string LatVec::to_plain() const {
  std::string s;
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) s += ' ';
    s += coords_[i].get_str();
  }
  return s;
}

LatVec& LatVec::operator+=(const LatVec& other) {
  if (other.dim() != dim()) throw ContractViolation("dimension mismatch in vector addition");
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += other.coords_[i];
  return *this;
}

LatVec& LatVec::operator-=(const LatVec& other) {
  if (other.dim() != dim()) throw ContractViolation("dimension mismatch in vector subtraction");
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= other.coords_[i];
  return *this;
}

LatVec& LatVec::operator*=(const Integer& factor) {
  for (auto& c : coords_) c *= factor;
  return *this;
}

LatVec operator-(LatVec a) {
  for (auto& c : a.coords_) c = -c;
  return a;
}

std::strong_ordering operator<=>(const LatVec& a, const LatVec& b) {
  const std::size_t n = std::min(a.dim(), b.dim());
  for (std::size_t i = 0; i < n; ++i) {
    int c = cmp(a[i], b[i]);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
  }
  return a.dim() <=> b.dim();
}

std::ostream& operator<<(std::ostream& os, const LatVec& v) { return os << v.to_string(); }

std::size_t LatVecHash::operator()(const LatVec& v) const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (const auto& c : v) {
    h ^= static_cast<std::size_t>(mpz_get_si(c.get_mpz_t())) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

Integer dot(const LatVec& a, const LatVec& b) {
  if (a.dim() != b.dim()) throw ContractViolation("dimension mismatch in dot product");
  Integer s = 0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += a[i] * b[i];
  return s;
}

Integer content(const LatVec& v) {
  Integer g = 0;
  for (const auto& c : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

LatVec primitive(const LatVec& v) {
  Integer g = content(v);
  if (g == 0) throw ContractViolation("zero vector has no primitive representative");
  if (g == 1) return v;
  LatVec out(v.dim());
  for (std::size_t i = 0; i < v.dim(); ++i) mpz_divexact(out[i].get_mpz_t(), v[i].get_mpz_t(), g.get_mpz_t());
  return out;
}

// ---------------------------------------------------------------------------

LatMatrix::LatMatrix(std::size_t rows, std::size_t cols) : rows_(rows, LatVec(cols)), cols_(cols) {}

LatMatrix::LatMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  for (const auto& r : rows) {
    LatVec v(r);
    if (!rows_.empty() && v.dim() != cols_) throw ContractViolation("ragged matrix literal");
    cols_ = v.dim();
    rows_.push_back(std::move(v));
  }
}

LatMatrix::LatMatrix(std::vector<LatVec> rows, std::size_t cols) : rows_(std::move(rows)), cols_(cols) {
  if (!rows_.empty()) {
    if (cols_ == 0) cols_ = rows_.front().dim();
    for (const auto& r : rows_)
      if (r.dim() != cols_) throw ContractViolation("matrix rows differ in length");
  }
}

LatMatrix LatMatrix::identity(std::size_t n) {
  LatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

void LatMatrix::append_row(LatVec v) {
  if (rows_.empty() && cols_ == 0) cols_ = v.dim();
  if (v.dim() != cols_) throw ContractViolation("appended row has wrong length");
  rows_.push_back(std::move(v));
}

LatMatrix LatMatrix::transpose() const {
  LatMatrix t(cols_, rows());
  for (std::size_t r = 0; r < rows(); ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = rows_[r][c];
  return t;
}

LatVec LatMatrix::column(std::size_t c) const {
  LatVec v(rows());
  for (std::size_t r = 0; r < rows(); ++r) v[r] = rows_[r][c];
  return v;
}

LatMatrix operator*(const LatMatrix& a, const LatMatrix& b) {
  if (a.cols() != b.rows()) throw ContractViolation("matrix product dimension mismatch");
  LatMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (sgn(a(i, k)) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

LatVec operator*(const LatVec& v, const LatMatrix& m) {
  if (v.dim() != m.rows()) throw ContractViolation("vector-matrix product dimension mismatch");
  LatVec out(m.cols());
  for (std::size_t k = 0; k < m.rows(); ++k) {
    if (sgn(v[k]) == 0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) out[j] += v[k] * m(k, j);
  }
  return out;
}

std::string LatMatrix::to_string() const {
  std::string s = "[";
  for (std::size_t r = 0; r < rows(); ++r) {
    if (r) s += ", ";
    s += rows_[r].to_string();
  }
  return s + "]";
}

// ---------------------------------------------------------------------------

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Integer mod_floor(const Integer& a, const Integer& b) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

std::string to_string(const Integer& value) { return value.get_str(); }

namespace {

void add_multiple(LatVec& target, const LatVec& source, const Integer& factor) {
  if (sgn(factor) == 0) return;
  for (std::size_t i = 0; i < target.dim(); ++i) target[i] += factor * source[i];
}

// Upper row echelon Hermite form: pivots move right as rows go down, entries
// above a pivot reduced into [0, pivot).
HermiteResult upper_hermite(LatMatrix h) {
  const std::size_t m = h.rows();
  const std::size_t n = h.cols();
  LatMatrix u = LatMatrix::identity(m);
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < m; ++col) {
    while (true) {
      std::size_t best = m;
      for (std::size_t i = row; i < m; ++i) {
        if (sgn(h(i, col)) == 0) continue;
        if (best == m || mpz_cmpabs(h(i, col).get_mpz_t(), h(best, col).get_mpz_t()) < 0) best = i;
      }
      if (best == m) break;
      if (best != row) {
        std::swap(h.row(best), h.row(row));
        std::swap(u.row(best), u.row(row));
      }
      bool clean = true;
      for (std::size_t i = row + 1; i < m; ++i) {
        if (sgn(h(i, col)) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), h(i, col).get_mpz_t(), h(row, col).get_mpz_t());
        add_multiple(h.row(i), h.row(row), -q);
        add_multiple(u.row(i), u.row(row), -q);
        if (sgn(h(i, col)) != 0) clean = false;
      }
      if (clean) break;
    }
    if (sgn(h(row, col)) == 0) continue;
    if (sgn(h(row, col)) < 0) {
      h.row(row) = -h.row(row);
      u.row(row) = -u.row(row);
    }
    for (std::size_t i = 0; i < row; ++i) {
      Integer q = floor_div(h(i, col), h(row, col));
      add_multiple(h.row(i), h.row(row), -q);
      add_multiple(u.row(i), u.row(row), -q);
    }
    ++row;
  }
  return {std::move(h), std::move(u), row};
}

LatMatrix reverse_columns(const LatMatrix& m) {
  LatMatrix out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = m(r, m.cols() - 1 - c);
  return out;
}

}  // namespace

HermiteResult hermite_normal_form(const LatMatrix& m) {
  if (m.rows() == 0) throw ContractViolation("Hermite normal form of an empty matrix");
  HermiteResult upper = upper_hermite(reverse_columns(m));
  LatMatrix h = reverse_columns(upper.H);
  LatMatrix u = upper.U;
  for (std::size_t i = 0, j = upper.rank; i + 1 < j; ++i, --j) {
    std::swap(h.row(i), h.row(j - 1));
    std::swap(u.row(i), u.row(j - 1));
  }
  return {std::move(h), std::move(u), upper.rank};
}

Integer determinant(const LatMatrix& m) {
  if (m.rows() != m.cols()) throw ContractViolation("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  LatMatrix a = m;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (sgn(a(k, k)) == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && sgn(a(swap_row, k)) == 0) ++swap_row;
      if (swap_row == n) return 0;
      std::swap(a.row(k), a.row(swap_row));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  Integer det = a(n - 1, n - 1);
  return sign > 0 ? det : Integer(-det);
}

Integer determinant_by_cofactors(const LatMatrix& m) {
  if (m.rows() != m.cols()) throw ContractViolation("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  if (n == 1) return m(0, 0);
  Integer total = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (sgn(m(0, c)) == 0) continue;
    LatMatrix minor(n - 1, n - 1);
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t cc = 0, k = 0; cc < n; ++cc)
        if (cc != c) minor(r - 1, k++) = m(r, cc);
    Integer term = m(0, c) * determinant_by_cofactors(minor);
    if (c % 2) total -= term;
    else total += term;
  }
  return total;
}

LatMatrix adjugate(const LatMatrix& m) {
  if (m.rows() != m.cols()) throw ContractViolation("adjugate of a non-square matrix");
  const std::size_t n = m.rows();
  LatMatrix adj(n, n);
  if (n == 1) {
    adj(0, 0) = 1;
    return adj;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      LatMatrix minor(n - 1, n - 1);
      for (std::size_t r = 0, rr = 0; r < n; ++r) {
        if (r == i) continue;
        for (std::size_t c = 0, cc = 0; c < n; ++c)
          if (c != j) minor(rr, cc++) = m(r, c);
        ++rr;
      }
      Integer cof = determinant(minor);
      adj(j, i) = ((i + j) % 2) ? Integer(-cof) : cof;
    }
  return adj;
}

std::size_t rank(const LatMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  // Fraction-free elimination; only the pivot count matters.
  LatMatrix a = m;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && sgn(a(p, c)) == 0) ++p;
    if (p == a.rows()) continue;
    std::swap(a.row(p), a.row(r));
    for (std::size_t i = r + 1; i < a.rows(); ++i) {
      if (sgn(a(i, c)) == 0) continue;
      Integer f = a(i, c);
      Integer g = a(r, c);
      for (std::size_t j = c; j < a.cols(); ++j) a(i, j) = a(i, j) * g - a(r, j) * f;
      LatVec& row = a.row(i);
      Integer ct = content(row);
      if (ct > 1)
        for (auto& x : row) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), ct.get_mpz_t());
    }
    ++r;
  }
  return r;
}

bool is_unimodular_basis(const std::vector<LatVec>& vectors) {
  if (vectors.empty()) throw ContractViolation("empty vector family");
  const std::size_t d = vectors.front().dim();
  if (vectors.size() != d) throw ContractViolation("unimodularity test needs exactly d vectors of dimension d");
  Integer det = determinant(LatMatrix(vectors, d));
  return abs(det) == 1;
}

bool generates_lattice(const std::vector<LatVec>& vectors, std::size_t dim) {
  const LatMatrix basis = lattice_basis(vectors, dim);
  return basis.rows() == dim && basis == LatMatrix::identity(dim);
}

LatMatrix integer_kernel(const LatMatrix& m) {
  const std::size_t n = m.cols();
  if (m.rows() == 0) return LatMatrix::identity(n);
  HermiteResult hr = hermite_normal_form(m.transpose());
  std::vector<LatVec> kernel;
  for (std::size_t r = hr.rank; r < hr.U.rows(); ++r) kernel.push_back(hr.U.row(r));
  if (kernel.empty()) return LatMatrix(0, n);
  HermiteResult canon = hermite_normal_form(LatMatrix(kernel, n));
  std::vector<LatVec> rows(canon.H.row_vectors().begin(), canon.H.row_vectors().begin() + canon.rank);
  return LatMatrix(std::move(rows), n);
}

LatMatrix saturated_span(const std::vector<LatVec>& vectors, std::size_t dim) {
  if (vectors.empty()) return LatMatrix(0, dim);
  LatMatrix annihilator = integer_kernel(lattice_basis(vectors, dim));
  if (annihilator.rows() == 0) return LatMatrix::identity(dim);
  return integer_kernel(annihilator);
}

LatMatrix lattice_basis(const std::vector<LatVec>& vectors, std::size_t dim) {
  if (vectors.empty()) return LatMatrix(0, dim);
  // Fold the vectors in a few at a time: the transform of a single Hermite
  // reduction is quadratic in the number of rows.  The form is canonical, so
  // the result does not depend on the chunking.
  const std::size_t chunk = std::max<std::size_t>(dim, 1);
  std::vector<LatVec> basis;
  std::size_t next = 0;
  while (next < vectors.size()) {
    std::vector<LatVec> rows = basis;
    for (std::size_t k = 0; k < chunk && next < vectors.size(); ++k) rows.push_back(vectors[next++]);
    HermiteResult hr = hermite_normal_form(LatMatrix(rows, dim));
    basis.assign(hr.H.row_vectors().begin(), hr.H.row_vectors().begin() + hr.rank);
  }
  return LatMatrix(std::move(basis), dim);
}

std::optional<LatVec> coordinates_in(const LatMatrix& basis, const LatVec& v) {
  if (basis.rows() == 0) {
    if (v.is_zero()) return LatVec(0);
    return std::nullopt;
  }
  HermiteResult hr = hermite_normal_form(basis);
  LatVec residual = v;
  LatVec c(hr.H.rows());
  for (std::size_t k = hr.rank; k-- > 0;) {
    std::size_t pivot = 0;
    for (std::size_t j = hr.H.cols(); j-- > 0;)
      if (sgn(hr.H(k, j)) != 0) {
        pivot = j;
        break;
      }
    if (!mpz_divisible_p(residual[pivot].get_mpz_t(), hr.H(k, pivot).get_mpz_t())) return std::nullopt;
    Integer q;
    mpz_divexact(q.get_mpz_t(), residual[pivot].get_mpz_t(), hr.H(k, pivot).get_mpz_t());
    c[k] = q;
    add_multiple(residual, hr.H.row(k), -q);
  }
  if (!residual.is_zero()) return std::nullopt;
  // c * H = v and H = U * B, so (c * U) * B = v.
  return c * hr.U;
}

std::vector<Rational> solve_rational(const LatMatrix& a, const std::vector<Rational>& b) {
  const std::size_t n = a.rows();
  if (a.cols() != n || b.size() != n) throw ContractViolation("solve_rational needs a square system");
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i][j] = a(i, j);
    m[i][n] = b[i];
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && sgn(m[p][c]) == 0) ++p;
    if (p == n) throw ContractViolation("singular system");
    std::swap(m[p], m[c]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || sgn(m[i][c]) == 0) continue;
      Rational f = m[i][c] / m[c][c];
      for (std::size_t j = c; j <= n; ++j) m[i][j] -= f * m[c][j];
    }
  }
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = m[i][n] / m[i][i];
    x[i].canonicalize();
  }
  return x;
}

}  // namespace toriscope
