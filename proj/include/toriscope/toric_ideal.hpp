#pragma once

// Low-degree parts of the toric ideal I(P): quadratic binomials, the degree-3
// Gröbner component under graded reverse lexicographic order, and
// squarefree divisor complexes in total degree 3.
//
// Variables X_0, X_1, ... are the lattice points of P in lexicographic order,
// with X_0 > X_1 > ... in the term order.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "toriscope/polytope.hpp"

namespace toriscope {

/// Sparse exponent vector: (variable index, exponent), indices ascending.
using Exponents = std::vector<std::pair<std::size_t, unsigned>>;

struct ExponentBinomial {
  Exponents plus;
  Exponents minus;
  unsigned degree = 0;
};

/// Exponents of the monomial X_{i_1} ... X_{i_k}.
Exponents monomial(std::vector<std::size_t> variables);
/// Sum of the lattice points weighted by the exponents.
LatVec multidegree(const Exponents& e, const std::vector<LatVec>& points);
/// "X_(0, 0)*X_(1, 1) - X_(1, 0)*X_(0, 1)"
std::string to_string(const ExponentBinomial& b, const std::vector<LatVec>& points);

/// All X_a X_b - X_c X_d with a + b = c + d and {a,b} != {c,d}.  Within a
/// binomial the plus side is the lexicographically smaller index pair.
std::vector<ExponentBinomial> degree2_binomials(const LatticePolytope& p);

/// Hilbert function of S / in(J) in degrees 0..3 for J generated by the
/// quadrics of I(P).
struct TruncatedHVector {
  Integer h0, h1, h2, h3;
};

struct Degree3Options {
  /// Largest number of lattice points accepted (the tables grow cubically).
  std::size_t max_points = 400;
  /// Process the degree-3 reductions in a shuffled order.
  std::optional<std::uint64_t> shuffle_seed;
};

struct Degree3Result {
  bool needs_degree3 = false;
  std::optional<LatVec> multidegree;  // an offending multidegree (height 3) when needs_degree3
  TruncatedHVector hilbert;           // of S / in(J)
  std::vector<Integer> h_vector;      // h_0..h_3 of S / in(J) for Krull dimension d + 1
  std::vector<Integer> ehrhart_hstar;  // h*_0..h*_3 of P (zero padded)
  std::size_t gb2_size = 0;           // degree-2 Gröbner elements
  /// Degree-3 Gröbner elements as (leading triple, standard triple) of variable indices.
  std::vector<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> gb3;
};

/// Throws Error("h-vector comparison requires normality") for non-normal P
/// and LimitsExceeded beyond Degree3Options::max_points.
Degree3Result needs_degree3_generators(const LatticePolytope& p, const Degree3Options& options = {});

struct DivisorComplex {
  LatVec degree;
  std::vector<LatVec> vertices;                              // sorted
  std::vector<std::pair<std::size_t, std::size_t>> edges;    // indices into vertices
  std::vector<std::vector<LatVec>> components;               // sorted, each sorted
  bool connected = true;
};

/// Squarefree divisor complex (1-skeleton) of the monoid element c at height 3.
/// Throws Error if c is not a sum of three lattice points of P.
DivisorComplex squarefree_divisor_complex(const LatticePolytope& p, const LatVec& c);

/// Sums of `trials` seeded random triples of lattice points whose complex is
/// disconnected, without repetitions, in order of discovery.  P must be
/// normal: the divisors c - x are tested for membership in 2P.
std::vector<LatVec> random_degree3_probe(const LatticePolytope& p, std::uint64_t seed, std::size_t trials);

}  // namespace toriscope
