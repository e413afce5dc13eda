#include "toriscope/polytope.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

#include "toriscope/double_description.hpp"
#include "toriscope/fan.hpp"

namespace toriscope {

namespace {

constexpr std::int64_t kCoordinateLimit = std::int64_t{1} << 24;
constexpr std::uint64_t kPointLimit = 50'000'000;

std::int64_t checked_small(const Integer& x, const char* what) {
  if (!x.fits_slong_p() || abs(x) > kCoordinateLimit)
    throw LimitsExceeded(std::string(what) + " too large for lattice point enumeration");
  return x.get_si();
}

// Integer points of {x : normal_f . x + offset_f >= 0} inside the box [lo, hi].
class BoxEnumerator {
 public:
  BoxEnumerator(const std::vector<Facet>& facets, const Integer& scale, std::vector<std::int64_t> lo,
                std::vector<std::int64_t> hi)
      : dim_(lo.size()), lo_(std::move(lo)), hi_(std::move(hi)) {
    for (const auto& f : facets) {
      std::vector<std::int64_t> n;
      for (const auto& c : f.normal) n.push_back(checked_small(c, "facet normal"));
      normals_.push_back(std::move(n));
      Integer off = f.offset * scale;
      if (!off.fits_slong_p()) throw LimitsExceeded("facet offset too large for lattice point enumeration");
      offsets_.push_back(off.get_si());
    }
    partial_.assign(dim_ + 1, std::vector<std::int64_t>(normals_.size(), 0));
    for (std::size_t f = 0; f < normals_.size(); ++f) partial_[0][f] = offsets_[f];
    point_.assign(dim_, 0);
  }

  void run(const std::function<void(const std::vector<std::int64_t>&)>& visit) {
    visit_ = &visit;
    visited_ = 0;
    recurse(0);
  }
  std::uint64_t visited() const { return visited_; }

 private:
  void recurse(std::size_t i) {
    const std::size_t m = normals_.size();
    if (i + 1 == dim_) {
      std::int64_t lo = lo_[i], hi = hi_[i];
      for (std::size_t f = 0; f < m && lo <= hi; ++f) {
        std::int64_t a = normals_[f][i];
        std::int64_t r = -partial_[i][f];  // need a * x >= r
        if (a > 0) {
          lo = std::max(lo, ceil_div(r, a));
        } else if (a < 0) {
          hi = std::min(hi, floor_div64(-r, -a));
        } else if (r > 0) {
          return;
        }
      }
      for (std::int64_t x = lo; x <= hi; ++x) {
        point_[i] = x;
        if (++visited_ > kPointLimit) throw LimitsExceeded("too many lattice points to enumerate");
        (*visit_)(point_);
      }
      return;
    }
    for (std::int64_t x = lo_[i]; x <= hi_[i]; ++x) {
      point_[i] = x;
      for (std::size_t f = 0; f < m; ++f) partial_[i + 1][f] = partial_[i][f] + normals_[f][i] * x;
      recurse(i + 1);
    }
  }
  static std::int64_t floor_div64(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
  }
  static std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div64(-a, b); }

  std::size_t dim_;
  std::vector<std::int64_t> lo_, hi_;
  std::vector<std::vector<std::int64_t>> normals_;
  std::vector<std::int64_t> offsets_;
  std::vector<std::vector<std::int64_t>> partial_;
  std::vector<std::int64_t> point_;
  const std::function<void(const std::vector<std::int64_t>&)>* visit_ = nullptr;
  std::uint64_t visited_ = 0;
};

BoxEnumerator scaled_enumerator(const LatticePolytope& p, const Integer& scale) {
  std::size_t d = p.dim();
  std::vector<std::int64_t> lo(d), hi(d);
  for (std::size_t i = 0; i < d; ++i) {
    Integer mn = p.vertices().front()[i], mx = mn;
    for (const auto& v : p.vertices()) {
      if (v[i] < mn) mn = v[i];
      if (v[i] > mx) mx = v[i];
    }
    lo[i] = checked_small(mn * scale, "coordinate");
    hi[i] = checked_small(mx * scale, "coordinate");
  }
  return BoxEnumerator(p.facets(), scale, std::move(lo), std::move(hi));
}

std::vector<Integer> binomial_row(std::size_t n) {
  std::vector<Integer> row(n + 1);
  for (std::size_t i = 0; i <= n; ++i) mpz_bin_uiui(row[i].get_mpz_t(), n, i);
  return row;
}

}  // namespace

Hull convex_hull(const std::vector<LatVec>& points) {
  if (points.empty()) throw DegeneratePolytope("convex hull of no points");
  const std::size_t d = points.front().dim();
  for (const auto& p : points)
    if (p.dim() != d) throw ContractViolation("points of mixed dimension");
  const std::size_t n = points.size();

  // Extreme-looking points first keeps the intermediate descriptions small.
  LatVec sum(d);
  for (const auto& p : points) sum += p;
  std::vector<Integer> spread(n);
  for (std::size_t i = 0; i < n; ++i) {
    LatVec diff = points[i] * Integer(static_cast<unsigned long>(n)) - sum;
    spread[i] = dot(diff, diff);
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return spread[a] > spread[b]; });

  std::vector<LatVec> lifted;
  for (auto i : order) {
    LatVec q(d + 1);
    for (std::size_t j = 0; j < d; ++j) q[j] = points[i][j];
    q[d] = 1;
    lifted.push_back(std::move(q));
  }
  DualDescription dual = double_description(lifted, d + 1);
  if (!dual.lineality.empty()) throw DegeneratePolytope("convex hull is not full-dimensional");

  Hull hull;
  for (const auto& r : dual.rays) {
    LatVec normal(d);
    for (std::size_t j = 0; j < d; ++j) normal[j] = r[j];
    Facet f{normal, r[d]};
    Integer g = content(f.normal);
    if (g != 1) {
      for (auto& c : f.normal) c /= g;
      f.offset /= g;
    }
    hull.facets.push_back(std::move(f));
  }
  std::sort(hull.facets.begin(), hull.facets.end(), [](const Facet& a, const Facet& b) { return a.normal < b.normal; });

  std::vector<std::vector<std::size_t>> tight(n);
  hull.facet_points.resize(hull.facets.size());
  for (std::size_t f = 0; f < hull.facets.size(); ++f)
    for (std::size_t i = 0; i < n; ++i)
      if (sgn(hull.facets[f].value(points[i])) == 0) {
        hull.facet_points[f].push_back(i);
        tight[i].push_back(f);
      }
  std::vector<LatVec> seen;
  for (std::size_t i = 0; i < n; ++i) {
    if (tight[i].size() < d) continue;
    if (std::find(seen.begin(), seen.end(), points[i]) != seen.end()) continue;
    std::vector<LatVec> normals;
    for (auto f : tight[i]) normals.push_back(hull.facets[f].normal);
    if (rank(LatMatrix(normals, d)) == d) {
      hull.vertices.push_back(i);
      seen.push_back(points[i]);
    }
  }
  return hull;
}

LatticePolytope LatticePolytope::from_points(const std::vector<LatVec>& points) {
  Hull hull = convex_hull(points);
  std::vector<LatVec> vertices;
  for (auto i : hull.vertices) vertices.push_back(points[i]);
  LatticePolytope p;
  p.build(std::move(vertices), std::move(hull.facets));
  return p;
}

LatticePolytope LatticePolytope::from_inequalities(const std::vector<Facet>& inequalities, std::size_t dim) {
  std::vector<LatVec> homogenized;
  for (const auto& f : inequalities) {
    if (f.normal.dim() != dim) throw ContractViolation("inequality of the wrong dimension");
    LatVec a(dim + 1);
    for (std::size_t j = 0; j < dim; ++j) a[j] = f.normal[j];
    a[dim] = f.offset;
    homogenized.push_back(std::move(a));
  }
  homogenized.push_back(LatVec::unit(dim + 1, dim));
  DualDescription dual = double_description(homogenized, dim + 1);
  if (!dual.lineality.empty()) throw Error("inequalities define an unbounded set");
  std::vector<LatVec> vertices;
  for (const auto& r : dual.rays) {
    if (sgn(r[dim]) == 0) throw Error("inequalities define an unbounded set");
    LatVec v(dim);
    for (std::size_t j = 0; j < dim; ++j) {
      if (!mpz_divisible_p(r[j].get_mpz_t(), r[dim].get_mpz_t()))
        throw Error("inequalities have a non-integral vertex " + r.to_string());
      mpz_divexact(v[j].get_mpz_t(), r[j].get_mpz_t(), r[dim].get_mpz_t());
    }
    vertices.push_back(std::move(v));
  }
  if (vertices.empty()) throw DegeneratePolytope("inequalities define an empty set");
  return from_points(vertices);
}

void LatticePolytope::build(std::vector<LatVec> vertices, std::vector<Facet> facets) {
  dim_ = vertices.front().dim();
  std::sort(vertices.begin(), vertices.end());
  vertices_ = std::move(vertices);
  facets_ = std::move(facets);
  const std::size_t nv = vertices_.size();

  vertex_facets_.assign(nv, {});
  for (std::size_t v = 0; v < nv; ++v)
    for (std::size_t f = 0; f < facets_.size(); ++f)
      if (sgn(facets_[f].value(vertices_[v])) == 0) vertex_facets_[v].push_back(f);

  neighbors_.assign(nv, {});
  edges_.clear();
  for (std::size_t a = 0; a < nv; ++a)
    for (std::size_t b = a + 1; b < nv; ++b) {
      std::vector<std::size_t> common;
      std::set_intersection(vertex_facets_[a].begin(), vertex_facets_[a].end(), vertex_facets_[b].begin(),
                            vertex_facets_[b].end(), std::back_inserter(common));
      if (common.size() + 1 < dim_) continue;
      std::vector<LatVec> normals;
      for (auto f : common) normals.push_back(facets_[f].normal);
      if (dim_ > 1 && rank(LatMatrix(normals, dim_)) != dim_ - 1) continue;
      edges_.push_back({a, b, content(vertices_[b] - vertices_[a])});
      neighbors_[a].push_back(b);
      neighbors_[b].push_back(a);
    }
  for (auto& n : neighbors_) std::sort(n.begin(), n.end());

  lattice_points_.clear();
  BoxEnumerator e = scaled_enumerator(*this, 1);
  e.run([&](const std::vector<std::int64_t>& x) { lattice_points_.push_back(LatVec::from_int64(x)); });

  std::vector<LatVec> diffs;
  for (std::size_t v = 1; v < nv; ++v) diffs.push_back(vertices_[v] - vertices_[0]);
  spans_lattice_ = generates_lattice(diffs, dim_);
  if (!spans_lattice_) {
    diffs.clear();
    for (const auto& x : lattice_points_) diffs.push_back(x - lattice_points_.front());
    spans_lattice_ = generates_lattice(diffs, dim_);
  }
}

bool LatticePolytope::is_simple() const {
  return std::all_of(vertex_facets_.begin(), vertex_facets_.end(),
                     [&](const std::vector<std::size_t>& f) { return f.size() == dim_; });
}

std::optional<std::size_t> LatticePolytope::vertex_index(const LatVec& v) const {
  auto it = std::lower_bound(vertices_.begin(), vertices_.end(), v);
  if (it == vertices_.end() || *it != v) return std::nullopt;
  return static_cast<std::size_t>(it - vertices_.begin());
}

bool LatticePolytope::contains(const LatVec& x) const {
  return std::all_of(facets_.begin(), facets_.end(), [&](const Facet& f) { return f.value(x) >= 0; });
}

bool LatticePolytope::contains(const LatticePolytope& other) const {
  return std::all_of(other.vertices_.begin(), other.vertices_.end(), [&](const LatVec& v) { return contains(v); });
}

bool LatticePolytope::has_lattice_point(const LatVec& x) const {
  return std::binary_search(lattice_points_.begin(), lattice_points_.end(), x);
}

std::optional<Integer> LatticePolytope::edge_length(std::size_t a, std::size_t b) const {
  if (a > b) std::swap(a, b);
  for (const auto& e : edges_)
    if (e.a == a && e.b == b) return e.length;
  return std::nullopt;
}

std::string LatticePolytope::to_text() const {
  std::ostringstream os;
  os << "polytope " << dim_ << ' ' << vertices_.size() << '\n';
  for (const auto& v : vertices_) os << v.to_plain() << '\n';
  return os.str();
}

Integer count_lattice_points(const LatticePolytope& p, const Integer& scale) {
  if (scale < 0) throw ContractViolation("negative dilation factor");
  if (scale == 0) return 1;
  BoxEnumerator e = scaled_enumerator(p, scale);
  e.run([](const std::vector<std::int64_t>&) {});
  return Integer(static_cast<unsigned long>(e.visited()));
}

RationalCone corner_cone(const LatticePolytope& p, const LatVec& vertex) {
  auto idx = p.vertex_index(vertex);
  if (!idx) throw Error(vertex.to_string() + " is not a vertex");
  std::vector<LatVec> gens;
  for (auto n : p.neighbors(*idx)) gens.push_back(primitive(p.vertices()[n] - vertex));
  return RationalCone::from_generators(gens, p.dim());
}

PredicateResult is_smooth(const LatticePolytope& p) {
  for (std::size_t v = 0; v < p.vertices().size(); ++v) {
    const LatVec& vertex = p.vertices()[v];
    if (p.neighbors(v).size() != p.dim()) return {false, vertex, std::nullopt, "vertex is not simple"};
    std::vector<LatVec> dirs;
    for (auto n : p.neighbors(v)) dirs.push_back(primitive(p.vertices()[n] - vertex));
    if (!is_unimodular_basis(dirs))
      return {false, vertex, std::nullopt, "edge directions do not form a lattice basis"};
  }
  return {};
}

PredicateResult is_very_ample(const LatticePolytope& p) {
  for (std::size_t v = 0; v < p.vertices().size(); ++v) {
    const LatVec& vertex = p.vertices()[v];
    std::vector<LatVec> dirs;
    for (auto n : p.neighbors(v)) dirs.push_back(primitive(p.vertices()[n] - vertex));
    if (dirs.size() == p.dim() && is_unimodular_basis(dirs)) continue;
    for (const auto& h : hilbert_basis(RationalCone::from_generators(dirs, p.dim())))
      if (!p.contains(vertex + h)) return {false, vertex, h, "Hilbert basis element of the corner cone leaves P"};
  }
  return {};
}

PredicateResult is_normal(const LatticePolytope& p, const HilbertOptions& options) {
  const std::size_t d = p.dim();
  std::vector<LatVec> gens;
  for (const auto& v : p.vertices()) {
    LatVec g(d + 1);
    for (std::size_t j = 0; j < d; ++j) g[j] = v[j];
    g[d] = 1;
    gens.push_back(std::move(g));
  }
  std::optional<LatVec> witness;
  for (const auto& h : hilbert_basis(RationalCone::from_generators(gens, d + 1), options))
    if (h[d] >= 2 && (!witness || h[d] < (*witness)[d])) witness = h;
  if (witness) return {false, std::nullopt, witness, "Hilbert basis element of height " + (*witness)[d].get_str()};
  return {};
}

PredicateResult hc_condition(const LatticePolytope& p) {
  if (!p.is_simple()) throw Error("(HC) condition requires a simple polytope");
  const std::size_t d = p.dim();
  for (std::size_t v = 0; v < p.vertices().size(); ++v) {
    const LatVec& vertex = p.vertices()[v];
    std::vector<LatVec> edge_vectors;
    for (auto n : p.neighbors(v)) edge_vectors.push_back(p.vertices()[n] - vertex);
    LatMatrix e(edge_vectors, d);
    Integer det = determinant(e);
    LatMatrix adj = adjugate(e);
    std::vector<LatVec> gens;
    for (const auto& x : p.lattice_points())
      if (x != vertex) gens.push_back(x - vertex);
    for (const auto& h : monoid_hilbert_basis(gens)) {
      LatVec t = h * adj;  // barycentric numerators over det
      if (det < 0) t = -t;
      Integer total = 0;
      bool inside = true;
      for (const auto& c : t) {
        if (c < 0) inside = false;
        total += c;
      }
      if (!inside || total > abs(det))
        return {false, vertex, h, "irreducible element outside the vertex simplex"};
    }
  }
  return {};
}

Fan normal_fan(const LatticePolytope& p) {
  std::vector<LatVec> rays;
  for (const auto& f : p.facets()) rays.push_back(f.normal);
  std::vector<std::vector<std::size_t>> cones;
  for (std::size_t v = 0; v < p.vertices().size(); ++v) cones.push_back(p.vertex_facets(v));
  return Fan(p.dim(), std::move(rays), std::move(cones));
}

LatticePolytope dilate(const LatticePolytope& p, const Integer& factor) {
  if (factor <= 0) throw ContractViolation("dilation factor must be positive");
  std::vector<LatVec> vertices;
  for (const auto& v : p.vertices()) vertices.push_back(v * factor);
  std::vector<Facet> facets;
  for (const auto& f : p.facets()) facets.push_back({f.normal, f.offset * factor});
  LatticePolytope q;
  q.build(std::move(vertices), std::move(facets));
  return q;
}

LatticePolytope translate(const LatticePolytope& p, const LatVec& shift) {
  std::vector<LatVec> vertices;
  for (const auto& v : p.vertices()) vertices.push_back(v + shift);
  std::vector<Facet> facets;
  for (const auto& f : p.facets()) facets.push_back({f.normal, f.offset - dot(f.normal, shift)});
  LatticePolytope q;
  q.build(std::move(vertices), std::move(facets));
  return q;
}

Integer EhrhartData::normalized_volume() const {
  Integer s = 0;
  for (const auto& h : hstar) s += h;
  return s;
}

Rational EhrhartData::evaluate(const Integer& k) const {
  Rational value = 0, power = 1;
  for (const auto& c : poly_coeffs) {
    value += c * power;
    power *= Rational(k);
  }
  return value;
}

EhrhartData ehrhart(const LatticePolytope& p) {
  const std::size_t d = p.dim();
  EhrhartData data;
  for (std::size_t k = 0; k <= d + 1; ++k)
    data.counts.push_back(count_lattice_points(p, Integer(static_cast<unsigned long>(k))));

  std::vector<Integer> binom = binomial_row(d + 1);
  for (std::size_t j = 0; j <= d; ++j) {
    Integer h = 0;
    for (std::size_t i = 0; i <= j; ++i) {
      if (i % 2 == 0)
        h += binom[i] * data.counts[j - i];
      else
        h -= binom[i] * data.counts[j - i];
    }
    data.hstar.push_back(h);
  }
  while (data.hstar.size() > 1 && sgn(data.hstar.back()) == 0) data.hstar.pop_back();

  // Newton form through k = 0..d, expanded into monomials.
  std::vector<Integer> diffs(data.counts.begin(), data.counts.begin() + static_cast<std::ptrdiff_t>(d + 1));
  std::vector<Integer> newton;
  for (std::size_t j = 0; j <= d; ++j) {
    newton.push_back(diffs[0]);
    for (std::size_t i = 0; i + 1 < diffs.size(); ++i) diffs[i] = diffs[i + 1] - diffs[i];
    diffs.pop_back();
  }
  data.poly_coeffs.assign(d + 1, Rational(0));
  std::vector<Rational> falling{Rational(1)};  // k (k-1) ... (k-j+1) / j!
  for (std::size_t j = 0; j <= d; ++j) {
    for (std::size_t i = 0; i < falling.size(); ++i) data.poly_coeffs[i] += Rational(newton[j]) * falling[i];
    std::vector<Rational> next(falling.size() + 1, Rational(0));
    Rational shift(static_cast<long>(j));
    for (std::size_t i = 0; i < falling.size(); ++i) {
      next[i + 1] += falling[i];
      next[i] -= shift * falling[i];
    }
    for (auto& c : next) c /= static_cast<long>(j + 1);
    falling = std::move(next);
  }
  for (auto& c : data.poly_coeffs) c.canonicalize();
  return data;
}

}  // namespace toriscope
