#pragma once

// Full-dimensional lattice polytopes with cached face data, and the
// predicates smooth / very ample / normal / (HC) built on the cone engine.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "toriscope/cone.hpp"
#include "toriscope/lattice.hpp"

namespace toriscope {

class Fan;

/// Facet inequality normal(x) >= -offset; normal is primitive and inward.
struct Facet {
  LatVec normal;
  Integer offset;
  Integer value(const LatVec& x) const { return dot(normal, x) + offset; }
  friend bool operator==(const Facet&, const Facet&) = default;
};

struct Hull {
  std::vector<Facet> facets;                            // sorted by normal
  std::vector<std::vector<std::size_t>> facet_points;   // input indices on each facet
  std::vector<std::size_t> vertices;                    // input indices of vertices, ascending
};

/// Facets of the convex hull of points in Z^d.  Throws DegeneratePolytope
/// if the hull is not full-dimensional.
Hull convex_hull(const std::vector<LatVec>& points);

struct Edge {
  std::size_t a;  // vertex indices, a < b
  std::size_t b;
  Integer length;  // lattice length
};

class LatticePolytope {
 public:
  /// Convex hull of lattice points.  Throws DegeneratePolytope when the hull
  /// is not full-dimensional.
  static LatticePolytope from_points(const std::vector<LatVec>& points);
  /// {x : normal_i(x) >= -offset_i}.  Throws DegeneratePolytope for empty or
  /// lower-dimensional sets, Error for unbounded sets or non-integral vertices.
  static LatticePolytope from_inequalities(const std::vector<Facet>& inequalities, std::size_t dim);

  std::size_t dim() const { return dim_; }
  /// Lexicographically sorted.
  const std::vector<LatVec>& vertices() const { return vertices_; }
  /// Sorted by normal.
  const std::vector<Facet>& facets() const { return facets_; }
  /// Lexicographically sorted.
  const std::vector<LatVec>& lattice_points() const { return lattice_points_; }
  const std::vector<Edge>& edges() const { return edges_; }
  /// Neighbouring vertex indices, ascending.
  const std::vector<std::size_t>& neighbors(std::size_t vertex) const { return neighbors_[vertex]; }
  /// Indices of the facets containing the vertex, ascending.
  const std::vector<std::size_t>& vertex_facets(std::size_t vertex) const { return vertex_facets_[vertex]; }
  bool spans_lattice() const { return spans_lattice_; }
  /// Every vertex lies on exactly d facets.
  bool is_simple() const;

  std::optional<std::size_t> vertex_index(const LatVec& v) const;
  bool contains(const LatVec& x) const;
  bool contains(const LatticePolytope& other) const;
  bool has_lattice_point(const LatVec& x) const;
  /// Lattice length of the edge between two vertices, if they are adjacent.
  std::optional<Integer> edge_length(std::size_t a, std::size_t b) const;

  /// Text format: "polytope d n" followed by the vertices.
  std::string to_text() const;

  friend bool operator==(const LatticePolytope& a, const LatticePolytope& b) { return a.vertices_ == b.vertices_; }

 private:
  friend LatticePolytope dilate(const LatticePolytope& p, const Integer& factor);
  friend LatticePolytope translate(const LatticePolytope& p, const LatVec& shift);
  void build(std::vector<LatVec> vertices, std::vector<Facet> facets);

  std::size_t dim_ = 0;
  std::vector<LatVec> vertices_;
  std::vector<Facet> facets_;
  std::vector<LatVec> lattice_points_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> neighbors_;
  std::vector<std::vector<std::size_t>> vertex_facets_;
  bool spans_lattice_ = false;
};

/// Lattice points of P, sorted lexicographically.
inline const std::vector<LatVec>& lattice_points(const LatticePolytope& p) { return p.lattice_points(); }

/// Number of lattice points of {x : normal_i(x) >= -scale * offset_i}.
Integer count_lattice_points(const LatticePolytope& p, const Integer& scale);

/// Tangent cone at a vertex, generated by the primitive edge directions.
RationalCone corner_cone(const LatticePolytope& p, const LatVec& vertex);

struct PredicateResult {
  bool value = true;
  std::optional<LatVec> vertex;   // offending vertex
  std::optional<LatVec> witness;  // offending vector (edge direction, Hilbert basis element, ...)
  std::string detail;
};

PredicateResult is_smooth(const LatticePolytope& p);
/// Fails at a vertex v whose corner cone has a Hilbert basis element h with v + h outside P.
PredicateResult is_very_ample(const LatticePolytope& p);
/// Fails with a Hilbert basis element of height >= 2 of the cone over P x {1}.
PredicateResult is_normal(const LatticePolytope& p, const HilbertOptions& options = {});
/// Every irreducible element of the monoid generated by P - v lies in
/// conv(v, neighbours of v).  Throws Error for non-simple P.
PredicateResult hc_condition(const LatticePolytope& p);

Fan normal_fan(const LatticePolytope& p);
LatticePolytope dilate(const LatticePolytope& p, const Integer& factor);
LatticePolytope translate(const LatticePolytope& p, const LatVec& shift);

struct EhrhartData {
  std::vector<Integer> counts;        // |kP ∩ Z^d| for k = 0..d+1
  std::vector<Integer> hstar;         // numerator of the Ehrhart series, trailing zeros dropped
  std::vector<Rational> poly_coeffs;  // coefficient of t^i at index i
  Integer normalized_volume() const;
  Rational evaluate(const Integer& k) const;
};

EhrhartData ehrhart(const LatticePolytope& p);

}  // namespace toriscope
