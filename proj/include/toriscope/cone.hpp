#pragma once

// Pointed rational cones: dual description, placing triangulations,
// multiplicities, Hilbert bases and stellar subdivision.

#include <cstddef>
#include <vector>

#include "toriscope/errors.hpp"
#include "toriscope/lattice.hpp"
#include "toriscope/random.hpp"

namespace toriscope {

/// The cone contains a line; `witness` spans one.
class NonPointedCone : public Error {
 public:
  explicit NonPointedCone(LatVec witness)
      : Error("cone is not pointed; it contains the line through " + witness.to_string()), witness_(std::move(witness)) {}
  const LatVec& witness() const { return witness_; }

 private:
  LatVec witness_;
};

class RationalCone {
 public:
  /// Cone generated by `generators` in R^dim.  Zero vectors are dropped, the
  /// rest made primitive and deduplicated (first occurrence kept).
  static RationalCone from_generators(const std::vector<LatVec>& generators, std::size_t dim);
  /// The cone {x : a . x >= 0 for all a}; throws NonPointedCone if it
  /// contains a line.
  static RationalCone from_inequalities(const std::vector<LatVec>& inequalities, std::size_t dim);

  const std::vector<LatVec>& generators() const { return generators_; }
  /// Inward facet normals, primitive.  For cones that are not full-dimensional
  /// these are representatives modulo equations().
  const std::vector<LatVec>& support_hyperplanes() const { return hyperplanes_; }
  /// Lattice basis of the linear forms vanishing on the cone.
  const std::vector<LatVec>& equations() const { return equations_; }
  std::size_t ambient_dim() const { return ambient_dim_; }
  std::size_t dim() const { return dim_; }
  bool pointed() const { return pointed_; }
  bool full_dimensional() const { return dim_ == ambient_dim_; }

  bool contains(const LatVec& x) const;
  /// Generators that span extreme rays, in generator order.
  std::vector<LatVec> extreme_rays() const;
  /// Same point set (mutual containment of generators).
  bool same_cone(const RationalCone& other) const;

 private:
  std::vector<LatVec> generators_;
  std::vector<LatVec> hyperplanes_;
  std::vector<LatVec> equations_;
  std::size_t ambient_dim_ = 0;
  std::size_t dim_ = 0;
  bool pointed_ = true;
};

struct SimplicialCone {
  std::vector<LatVec> generators;
  Integer multiplicity;
};

/// Irredundant inward facet normals of the cone generated by `generators`.
/// Throws NonPointedCone (with a line in the cone) if the cone is not pointed.
std::vector<LatVec> support_hyperplanes(const std::vector<LatVec>& generators);

/// Placing triangulation using the generators in input order.
std::vector<SimplicialCone> triangulate(const RationalCone& cone);

/// |det| of the generators in a lattice basis of their span.  Linearly
/// dependent generators are a contract violation.
Integer multiplicity(const std::vector<LatVec>& generators);
inline Integer multiplicity(const SimplicialCone& sc) { return multiplicity(sc.generators); }

/// Nonzero lattice points of the half-open parallelepiped spanned by d
/// linearly independent vectors of Z^d.
std::vector<LatVec> parallelepiped_points(const std::vector<LatVec>& generators);

struct HilbertOptions {
  std::size_t threads = configured_threads();
  /// Abort with LimitsExceeded when the triangulation's total multiplicity
  /// (the number of parallelepiped candidates) exceeds this.
  std::size_t max_candidates = 20'000'000;
};

/// Hilbert basis of cone ∩ Z^d, sorted lexicographically.
std::vector<LatVec> hilbert_basis(const RationalCone& cone, const HilbertOptions& options = {});

/// Irreducible elements of the affine monoid generated by `generators`
/// (which must span a pointed cone), sorted lexicographically.
std::vector<LatVec> monoid_hilbert_basis(const std::vector<LatVec>& generators);

/// Stellar subdivision of full-dimensional simplicial cones at `ray`.
/// Throws Error if no cone contains the ray.
std::vector<SimplicialCone> stellar_subdivide(const std::vector<SimplicialCone>& cones, const LatVec& ray);

/// Sufficient criterion for d+1 vectors spanning a d-dimensional cone to be
/// its Hilbert basis: for every facet, the generators on it together with
/// one of the remaining generators generate Z^d.
bool dplus1_hilbert_criterion(const std::vector<LatVec>& generators);

}  // namespace toriscope
