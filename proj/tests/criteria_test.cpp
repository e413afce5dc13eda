#include <gtest/gtest.h>

#include <algorithm>
#include <map>

#include "testing.hpp"
#include "toriscope/criteria.hpp"
#include "toriscope/search.hpp"
#include "toriscope/toric_ideal.hpp"

using namespace toriscope;
using namespace toriscope::testing;

namespace {

bool has_pair(const CriterionReport& r, const LatVec& a, const LatVec& b) {
  for (const auto& w : r.witnesses)
    if (!w.satisfied && w.points.size() == 2 &&
        ((w.points[0] == a && w.points[1] == b) || (w.points[0] == b && w.points[1] == a)))
      return true;
  return false;
}

/// Breadth-first search with generic LatVec arithmetic and polytope
/// membership, independent of the packed index used by the library.
std::vector<LatVec> brute_force_reachable(const LatticePolytope& p, const LatVec& v) {
  const auto vi = *p.vertex_index(v);
  std::vector<LatVec> steps;
  for (auto n : p.neighbors(vi)) steps.push_back(primitive(p.vertices()[n] - v));
  std::set<LatVec> seen{v};
  std::vector<LatVec> queue{v};
  while (!queue.empty()) {
    auto x = queue.back();
    queue.pop_back();
    for (const auto& s : steps) {
      auto y = x + s;
      if (p.contains(y) && seen.insert(y).second) queue.push_back(y);
    }
  }
  return {seen.begin(), seen.end()};
}

std::vector<LatticePolytope> smooth_corpus() {
  std::vector<LatticePolytope> out{unit_square(), unit_cube(), hexagon(), box2(4, 2), box2(2, 2),
                                   poly({{0, 0}, {2, 0}, {0, 2}}), poly({{0, 0}, {3, 0}, {0, 3}})};
  for (std::uint64_t s = 0; s < 12; ++s) out.push_back(random_smooth_polygon(s));
  return out;
}

}  // namespace

TEST(SchemeDegree2, Fixtures) {
  for (const auto& p : {hexagon(), unit_cube(), poly({{0, 0}, {2, 0}, {0, 2}})}) {
    auto r = scheme_degree2(p);
    EXPECT_TRUE(r.verdict);
    EXPECT_TRUE(r.caveats.empty());
  }
  // 2 Delta_2: the three edge midpoints are witnessed by (2b).
  auto r = scheme_degree2(poly({{0, 0}, {2, 0}, {0, 2}}));
  std::set<LatVec> centres;
  for (const auto& w : r.witnesses)
    if (w.tag == "2b" && w.satisfied) centres.insert(w.points[0]);
  EXPECT_EQ(centres, (std::set<LatVec>{LatVec{1, 0}, LatVec{0, 1}, LatVec{1, 1}}));
}

TEST(SchemeDegree2, WitnessesAreExactIdentities) {
  for (const auto& p : smooth_corpus()) {
    auto r = scheme_degree2(p);
    EXPECT_TRUE(r.verdict) << p.to_text();
    for (const auto& w : r.witnesses) {
      ASSERT_TRUE(w.satisfied);
      if (w.tag == "2a") {
        ASSERT_EQ(w.points.size(), 4u);
        EXPECT_EQ(w.points[0] + w.points[1], w.points[2] + w.points[3]);
        EXPECT_NE(std::set<LatVec>({w.points[0], w.points[1]}), std::set<LatVec>({w.points[2], w.points[3]}));
      } else {
        ASSERT_EQ(w.points.size(), 3u);
        EXPECT_EQ(w.points[0] + w.points[0], w.points[1] + w.points[2]);
        EXPECT_NE(w.points[1], w.points[0]);
      }
      for (const auto& x : w.points) EXPECT_TRUE(p.has_lattice_point(x));
    }
  }
}

TEST(SchemeDegree2, NonSmoothInputCarriesCaveat) {
  auto r = scheme_degree2(known_non_normal_fixture());
  EXPECT_FALSE(r.caveats.empty());
}

TEST(SchemeDegree2, SuperconnectedGivesNeighbourWitnesses) {
  for (const auto& p : smooth_corpus()) {
    if (!connectivity(p).superconnected) continue;
    for (const auto& w : scheme_degree2(p).witnesses)
      if (w.tag == "2a") EXPECT_TRUE(w.via_neighbor) << p.to_text();
  }
}

TEST(Abundant, Fixtures) {
  EXPECT_TRUE(abundant_degree2(hexagon()).verdict);
  EXPECT_TRUE(abundant_degree2(box2(2, 2)).verdict);
  EXPECT_TRUE(abundant_degree2(unit_simplex(3)).verdict);
}

TEST(Abundant, JoinOfSegments) {
  JoinPoints j;
  auto p = join_of_segments();
  auto r = abundant_degree2(p);
  EXPECT_FALSE(r.verdict);
  EXPECT_TRUE(has_pair(r, lv(j.y), lv(j.v)));
  // Every reported pair is the unique pair with its sum.
  const auto& pts = p.lattice_points();
  std::map<LatVec, int> fibres;
  for (std::size_t a = 0; a < pts.size(); ++a)
    for (std::size_t b = a; b < pts.size(); ++b) ++fibres[pts[a] + pts[b]];
  for (const auto& w : r.witnesses) EXPECT_EQ(fibres[w.points[0] + w.points[1]], 1);
}

TEST(Abundant, JoinOfSegmentsQuadrics) {
  JoinPoints j;
  auto p = join_of_segments();
  std::set<std::string> got;
  for (const auto& b : degree2_binomials(p)) got.insert(to_string(b, p.lattice_points()));
  auto name = [](const IVec& a) { return "X_" + lv(a).to_string(); };
  // Plus side is the lexicographically smaller index pair.
  std::set<std::string> expected{name(j.x) + "*" + name(j.z) + " - " + name(j.y) + "*" + name(j.y),
                                 name(j.u) + "*" + name(j.w) + " - " + name(j.v) + "*" + name(j.v)};
  EXPECT_EQ(got, expected);
}

TEST(Reachable, Examples) {
  EXPECT_EQ(hilb_reachable(unit_square(), LatVec{0, 0}).size(), 4u);
  auto hex = hexagon();
  auto from33 = hilb_reachable(hex, LatVec{3, 3});
  EXPECT_TRUE(std::binary_search(from33.begin(), from33.end(), LatVec{3, 0}));
  EXPECT_FALSE(std::binary_search(from33.begin(), from33.end(), LatVec{0, 0}));
  for (const auto& v : hex.vertices()) EXPECT_EQ(hilb_reachable(hex, v), brute_force_reachable(hex, v));
  EXPECT_EQ(hilb_reachable(hex, LatVec{0, 0}).size(), 21u);
  EXPECT_THROW(hilb_reachable(known_non_normal_fixture(), known_non_normal_fixture().vertices()[0]), Error);
}

TEST(Connectivity, Fixtures) {
  auto hex = connectivity(hexagon());
  EXPECT_FALSE(hex.superconnected);
  EXPECT_TRUE(hex.strongly_connected);
  ASSERT_EQ(hex.witnesses.size(), 1u);
  EXPECT_EQ(hex.witnesses[0].points, (std::vector<LatVec>{LatVec{3, 3}, LatVec{0, 0}}));
  auto cube = connectivity(unit_cube());
  EXPECT_TRUE(cube.superconnected && cube.strongly_connected);
  auto tri = connectivity(poly({{0, 0}, {2, 0}, {0, 2}}));
  EXPECT_TRUE(tri.superconnected && tri.strongly_connected);
}

TEST(Connectivity, AgreesWithBruteForceOnRandomSmoothPolygons) {
  for (std::uint64_t s = 20; s < 30; ++s) {
    auto p = random_smooth_polygon(s);
    bool super = true;
    std::set<LatVec> reached;
    for (const auto& v : p.vertices()) {
      auto r = brute_force_reachable(p, v);
      if (r.size() != p.lattice_points().size()) super = false;
      reached.insert(r.begin(), r.end());
    }
    auto c = connectivity(p);
    EXPECT_EQ(c.superconnected, super);
    EXPECT_EQ(c.strongly_connected, reached.size() == p.lattice_points().size());
  }
}

TEST(EhrhartPositive, Examples) {
  auto sq = ehrhart_positive(unit_square());
  EXPECT_TRUE(sq.positive);
  EXPECT_EQ(sq.coefficients, (std::vector<Rational>{1, 2, 1}));
  auto hex = ehrhart_positive(hexagon());
  EXPECT_TRUE(hex.positive);
  EXPECT_EQ(hex.coefficients, (std::vector<Rational>{1, Rational(13, 2), Rational(27, 2)}));
  // Reeve tetrahedron: the linear coefficient is 2 - k/6.
  auto reeve = ehrhart_positive(poly({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 13}}));
  EXPECT_FALSE(reeve.positive);
  EXPECT_EQ(reeve.coefficients[1], Rational(2) - Rational(13, 6));
}
