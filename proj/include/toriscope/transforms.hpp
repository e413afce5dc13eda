#pragma once

// Chiseling smooth polytopes along faces, robustness, chisel reduction,
// vertex shrinking of very ample polytopes and hyperplane splits.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "toriscope/polytope.hpp"

namespace toriscope {

struct Face {
  std::vector<std::size_t> facets;    // indices into P.facets(), ascending
  std::vector<std::size_t> vertices;  // indices into P.vertices(), ascending
  std::size_t dim = 0;
};

/// The smallest face containing the given vertices.  Throws Error unless its
/// vertex set is exactly the given one and it is a proper face.
Face face_from_vertices(const LatticePolytope& p, const std::vector<LatVec>& vertices);

/// Proper faces of a simple polytope, by increasing dimension and then by
/// vertex list.
std::vector<Face> enumerate_faces(const LatticePolytope& p);

struct ChiselResult {
  Face face;
  LatVec sigma;
  Integer b;  // value of sigma on the face
  Integer c;  // minimum of sigma over the vertices off the face
  std::optional<std::pair<LatticePolytope, LatticePolytope>> pieces;  // (sigma >= c-1, sigma <= c-1)
};

/// Splits iff b < c - 1.  Both pieces are checked to be smooth, the normal
/// fan of the first piece to be the stellar subdivision of N(P) at sigma,
/// and for a vertex face the second piece to be a multiple of a unimodular
/// simplex; a failed check throws std::logic_error.
ChiselResult chisel(const LatticePolytope& p, const Face& face);

struct RobustnessResult {
  bool robust = true;
  std::optional<Face> face;  // first chiselable face
};

RobustnessResult is_robust(const LatticePolytope& p);
/// Every face has an emanating edge of lattice length 1.
RobustnessResult is_robust_by_edges(const LatticePolytope& p);

struct ChiselStep {
  ChiselResult cut;
  std::size_t points_before = 0;
  std::size_t points_after = 0;
};

struct ChiselReduction {
  LatticePolytope result;
  std::vector<ChiselStep> transcript;
};

/// Chisels along faces chosen in seeded random order, keeping the first
/// piece, until the polytope is robust.
ChiselReduction chisel_reduce(const LatticePolytope& p, std::uint64_t seed);

struct ShrinkFind {
  LatticePolytope polytope;
  LatVec witness;  // Hilbert basis element of height >= 2
  bool simple = false;
  bool smooth = false;
};

struct ShrinkResult {
  std::vector<LatticePolytope> transcript;  // starts with the input
  std::vector<LatVec> removed;              // vertex removed at each step
  std::vector<ShrinkFind> non_normal;
};

/// Repeatedly replaces P by the hull of its lattice points minus a vertex
/// (seeded order) while that hull is full-dimensional, spans the lattice and
/// is very ample.  Throws Error if the input is not normal.
ShrinkResult shrink(const LatticePolytope& p, std::uint64_t seed);

/// P ∩ {form >= level} and P ∩ {form <= level}.  Throws Error unless both are
/// full-dimensional lattice polytopes.
std::pair<LatticePolytope, LatticePolytope> split_polytope(const LatticePolytope& p, const LatVec& form,
                                                           const Integer& level);

struct SplitCheck {
  bool hypotheses_met = true;
  std::vector<std::string> violations;
  bool p_normal = false;
  std::optional<bool> p1_needs_degree3;
  std::optional<bool> p2_needs_degree3;
  std::optional<bool> p_needs_degree3;
  /// The conclusions hold: P is normal, and P needs no cubic generators when
  /// neither piece does.  Only meaningful when hypotheses_met.
  bool consistent = true;
};

/// Integral closedness of the pieces of a hyperplane split and the resulting
/// bounds for P, evaluated up to degree 3.
SplitCheck check_split(const LatticePolytope& p, const LatVec& form, const Integer& level);

}  // namespace toriscope
