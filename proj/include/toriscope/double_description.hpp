#pragma once

#include <cstddef>
#include <vector>

#include "toriscope/lattice.hpp"

namespace toriscope {

struct DualDescription {
  std::vector<LatVec> rays;       // extreme rays modulo lineality, primitive, sorted
  std::vector<LatVec> lineality;  // lattice basis of the lineality space (Hermite form)
};

/// Generators of the cone {y in R^dim : a . y >= 0 for every a}.  The
/// inequalities are processed in the given order (double description
/// method with the combinatorial adjacency test).
DualDescription double_description(const std::vector<LatVec>& inequalities, std::size_t dim);

}  // namespace toriscope
