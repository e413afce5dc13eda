#pragma once

// Complete fans: random generation, desingularization by stellar
// subdivision, the Cartier lattice and support polytopes.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "toriscope/cone.hpp"
#include "toriscope/lattice.hpp"
#include "toriscope/polytope.hpp"

namespace toriscope {

class Fan {
 public:
  Fan() = default;
  /// Rays are made primitive; each cone is a set of ray indices (sorted on
  /// construction).  Flags are computed eagerly.
  Fan(std::size_t dim, std::vector<LatVec> rays, std::vector<std::vector<std::size_t>> cones);

  std::size_t dim() const { return dim_; }
  const std::vector<LatVec>& rays() const { return rays_; }
  const std::vector<std::vector<std::size_t>>& cones() const { return cones_; }
  std::vector<LatVec> cone_rays(std::size_t cone) const;
  /// Every facet of every maximal cone is shared by exactly two maximal cones.
  bool complete() const { return complete_; }
  bool simplicial() const { return simplicial_; }
  bool unimodular() const { return unimodular_; }
  /// Multiplicity of a simplicial maximal cone.
  Integer multiplicity(std::size_t cone) const;
  /// Index of a maximal cone containing x (first in order), if any.
  std::optional<std::size_t> locate(const LatVec& x) const;

  /// Text format: "fan d s m", the rays, then the cones as index lists.
  std::string to_text() const;

 private:
  std::size_t dim_ = 0;
  std::vector<LatVec> rays_;
  std::vector<std::vector<std::size_t>> cones_;
  bool complete_ = false;
  bool simplicial_ = false;
  bool unimodular_ = false;
};

/// Same rays and the same cones, independent of ray and cone order.
bool fan_equals(const Fan& a, const Fan& b);

/// Refine by stellar subdivision at a primitive vector in the support.
Fan insert_ray(const Fan& fan, const LatVec& ray);

struct RandomFanOptions {
  std::uint64_t seed = 0;
  std::size_t dim = 3;
  std::size_t num_points = 8;
  std::int64_t coord_bound = 1;
  /// Points always included besides the random ones.
  std::vector<LatVec> forced_points;
  std::size_t max_attempts = 200;
};

/// Face fan of a randomly perturbed hull of random primitive points whose
/// hull contains the origin in its interior.
Fan random_complete_fan(const RandomFanOptions& options);

struct FanLimits {
  std::size_t max_extra_rays = 20;
  std::size_t max_cones = 150;
};

/// Stellar subdivision at Hilbert basis elements of the non-unimodular cones,
/// in seeded random order, until the fan is unimodular.  Throws
/// LimitsExceeded when the ray or cone caps would be exceeded.
Fan desingularize(const Fan& fan, std::uint64_t seed, const FanLimits& limits = {},
                  const HilbertOptions& options = {});

/// Hermite basis of the lattice of b in Z^s such that every maximal cone
/// admits an integral v with rho_i(v) = -b_i for its rays.
LatMatrix cartier_lattice(const Fan& fan);

/// Vertex of P(b) belonging to a maximal simplicial cone, if integral.
std::optional<LatVec> cone_vertex(const Fan& fan, std::size_t cone, const std::vector<Integer>& b);

/// {x : rho_i(x) >= -b_i}.
LatticePolytope support_polytope(const Fan& fan, const std::vector<Integer>& b);

enum class SupportMode { hilbert_basis, extreme_rays };
enum class Projectivity { projective, non_projective, no_minimal_found };

std::string to_string(SupportMode mode);
std::string to_string(Projectivity verdict);

struct SupportVector {
  std::vector<Integer> b;
  std::vector<LatVec> vertex_map;  // v_Sigma per maximal cone
};

struct SupportResult {
  Projectivity verdict = Projectivity::non_projective;
  bool minimality_guaranteed = true;
  std::vector<SupportVector> vectors;  // inclusion-minimal, verified
  std::vector<LatticePolytope> polytopes;
  std::size_t candidates = 0;  // elements of height 1 before verification
  std::size_t rejected = 0;    // candidates whose normal fan differs from the input
  /// Elements of height 0 of the Hilbert basis (or extreme rays), as b-vectors.
  std::vector<std::vector<Integer>> recession;
};

/// Support polytopes of a complete simplicial fan with the first maximal
/// cone pinned at the origin (v_0 = 0).
SupportResult support_polytopes(const Fan& fan, SupportMode mode = SupportMode::hilbert_basis,
                                const HilbertOptions& options = {});

}  // namespace toriscope
