#pragma once

// Combinatorial predicates on lattice points: the scheme-theoretic degree-2
// criterion, abundant degree-2 relations, Hilb_v-path connectivity and
// Ehrhart positivity.

#include <string>
#include <vector>

#include "toriscope/polytope.hpp"

namespace toriscope {

struct Witness {
  std::string tag;             // "2a", "2b", "abundance", "superconnected", "strongly_connected"
  std::vector<LatVec> points;  // (v, x, y, z) for 2a; (x, y, z) for 2b; (v, x) for abundance and paths
  bool satisfied = true;
  bool via_neighbor = false;   // 2a: y is a neighbour of v
};

struct CriterionReport {
  bool verdict = true;
  std::vector<Witness> witnesses;
  std::vector<std::string> caveats;
};

/// Lattice points next to the vertex on its edges.
std::vector<LatVec> lattice_neighbors(const LatticePolytope& p, std::size_t vertex);

/// Conditions (2a) and (2b); non-smooth input is evaluated with a caveat.
CriterionReport scheme_degree2(const LatticePolytope& p);

/// Every admissible pair {v, x} (v = x allowed) has its midpoint on another
/// lattice segment in P.  All violating pairs are reported.
CriterionReport abundant_degree2(const LatticePolytope& p);

/// Lattice points reachable from the vertex by steps along its primitive
/// edge directions without leaving P, sorted.  Smooth P only.
std::vector<LatVec> hilb_reachable(const LatticePolytope& p, const LatVec& vertex);

struct ConnectivityReport {
  bool superconnected = true;
  bool strongly_connected = true;
  std::vector<Witness> witnesses;  // one per failed property: (vertex, unreachable point) or (point)
};

ConnectivityReport connectivity(const LatticePolytope& p);

struct EhrhartPositivity {
  bool positive = true;
  std::vector<Rational> coefficients;
};

EhrhartPositivity ehrhart_positive(const LatticePolytope& p);

}  // namespace toriscope
