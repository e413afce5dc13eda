#pragma once

// Exact integer vectors and matrices over Z together with the normal-form
// algorithms (Hermite normal form, Bareiss determinant, integer kernels)
// that the cone, polytope and fan code is built on.

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace toriscope {

using Integer = mpz_class;
using Rational = mpq_class;

/// Element of Z^d (or of the dual lattice; the two are not distinguished).
class LatVec {
 public:
  LatVec() = default;
  explicit LatVec(std::size_t dim) : coords_(dim) {}
  LatVec(std::initializer_list<long> values);
  explicit LatVec(std::vector<Integer> coords) : coords_(std::move(coords)) {}
  static LatVec unit(std::size_t dim, std::size_t index);
  static LatVec from_int64(const std::vector<std::int64_t>& values);

  std::size_t dim() const { return coords_.size(); }
  Integer& operator[](std::size_t i) { return coords_[i]; }
  const Integer& operator[](std::size_t i) const { return coords_[i]; }
  auto begin() const { return coords_.begin(); }
  auto end() const { return coords_.end(); }
  auto begin() { return coords_.begin(); }
  auto end() { return coords_.end(); }
  const std::vector<Integer>& coords() const { return coords_; }

  bool is_zero() const;
  /// Coordinates as machine integers; throws if any entry does not fit.
  std::vector<std::int64_t> to_int64() const;
  /// "(a, b, c)"
  std::string to_string() const;
  /// "a b c", the form used by the text file formats.
  std::string to_plain() const;

  LatVec& operator+=(const LatVec& other);
  LatVec& operator-=(const LatVec& other);
  LatVec& operator*=(const Integer& factor);

  friend LatVec operator+(LatVec a, const LatVec& b) { return a += b; }
  friend LatVec operator-(LatVec a, const LatVec& b) { return a -= b; }
  friend LatVec operator*(LatVec a, const Integer& k) { return a *= k; }
  friend LatVec operator*(const Integer& k, LatVec a) { return a *= k; }
  friend LatVec operator-(LatVec a);

  friend bool operator==(const LatVec& a, const LatVec& b) { return a.coords_ == b.coords_; }
  friend std::strong_ordering operator<=>(const LatVec& a, const LatVec& b);

 private:
  std::vector<Integer> coords_;
};

std::ostream& operator<<(std::ostream& os, const LatVec& v);

struct LatVecHash {
  std::size_t operator()(const LatVec& v) const noexcept;
};

Integer dot(const LatVec& a, const LatVec& b);
Integer content(const LatVec& v);  // gcd of the entries, 0 for the zero vector

/// v divided by the gcd of its entries.  Throws ContractViolation on v = 0.
LatVec primitive(const LatVec& v);

/// Rectangular integer matrix stored by rows.
class LatMatrix {
 public:
  LatMatrix() = default;
  LatMatrix(std::size_t rows, std::size_t cols);
  LatMatrix(std::initializer_list<std::initializer_list<long>> rows);
  explicit LatMatrix(std::vector<LatVec> rows, std::size_t cols = 0);
  static LatMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_.empty() || cols_ == 0; }

  Integer& operator()(std::size_t r, std::size_t c) { return rows_[r][c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return rows_[r][c]; }
  LatVec& row(std::size_t r) { return rows_[r]; }
  const LatVec& row(std::size_t r) const { return rows_[r]; }
  const std::vector<LatVec>& row_vectors() const { return rows_; }
  void append_row(LatVec v);

  LatMatrix transpose() const;
  LatVec column(std::size_t c) const;
  friend LatMatrix operator*(const LatMatrix& a, const LatMatrix& b);
  /// Row vector times matrix.
  friend LatVec operator*(const LatVec& v, const LatMatrix& m);
  friend bool operator==(const LatMatrix& a, const LatMatrix& b) = default;

  std::string to_string() const;

 private:
  std::vector<LatVec> rows_;
  std::size_t cols_ = 0;
};

struct HermiteResult {
  LatMatrix H;  // U * M, zero rows last
  LatMatrix U;  // unimodular
  std::size_t rank = 0;
};

/// Row Hermite normal form, lower-triangular convention: the pivot of row r
/// sits at column p_r with p_0 < p_1 < ..., all entries right of a pivot are
/// zero, pivots are positive and the other entries of a pivot column are
/// reduced into [0, pivot).
HermiteResult hermite_normal_form(const LatMatrix& m);

/// Exact determinant (Bareiss elimination).  Non-square input is a contract
/// violation.
Integer determinant(const LatMatrix& m);

/// Cofactor expansion; exponential, kept for cross-checks on tiny matrices.
Integer determinant_by_cofactors(const LatMatrix& m);

/// Adjugate matrix: adj(M) * M = M * adj(M) = det(M) * I.
LatMatrix adjugate(const LatMatrix& m);

std::size_t rank(const LatMatrix& m);

/// True iff the d vectors (each of dimension d) have determinant +-1.
bool is_unimodular_basis(const std::vector<LatVec>& vectors);

/// True iff the integer span of the vectors is all of Z^dim.
bool generates_lattice(const std::vector<LatVec>& vectors, std::size_t dim);

/// Lattice basis (rows, in Hermite normal form) of {x in Z^n : M x = 0}.
LatMatrix integer_kernel(const LatMatrix& m);

/// Lattice basis of (real span of the vectors) intersected with Z^dim.
LatMatrix saturated_span(const std::vector<LatVec>& vectors, std::size_t dim);

/// Basis (rows, Hermite normal form) of the lattice generated by the vectors.
LatMatrix lattice_basis(const std::vector<LatVec>& vectors, std::size_t dim);

/// Integer coordinates c with c * basis = v, if they exist.
std::optional<LatVec> coordinates_in(const LatMatrix& basis, const LatVec& v);

/// Rational solution x of A x = b for square nonsingular A.
std::vector<Rational> solve_rational(const LatMatrix& a, const std::vector<Rational>& b);

/// Floor division and non-negative remainder for a positive modulus.
Integer floor_div(const Integer& a, const Integer& b);
Integer mod_floor(const Integer& a, const Integer& b);

std::string to_string(const Integer& value);

}  // namespace toriscope
