#include <gtest/gtest.h>

#include "testing.hpp"
#include "toriscope/search.hpp"
#include "toriscope/transforms.hpp"

using namespace toriscope;
using namespace toriscope::testing;

namespace {

/// Q = v + k * (unimodular simplex): d + 1 vertices, and from some vertex the
/// edge vectors all have lattice length k and primitive parts forming a basis.
bool is_unimodular_simplex_multiple(const LatticePolytope& q) {
  const std::size_t d = q.dim();
  if (q.vertices().size() != d + 1) return false;
  const auto& v0 = q.vertices().front();
  std::vector<IVec> dirs;
  Integer k = 0;
  for (std::size_t i = 1; i <= d; ++i) {
    const LatVec e = q.vertices()[i] - v0;
    const Integer len = content(e);
    if (k == 0) k = len;
    if (len != k) return false;
    dirs.push_back(to_ivecs({primitive(e)}).front());
  }
  return std::abs(cofactor_det(dirs)) == 1;
}

/// Lattice length of a face's emanating edges: robust iff every face has one
/// of length 1.  Evaluated from vertex coordinates directly.
bool brute_force_robust(const LatticePolytope& p) {
  for (const auto& f : enumerate_faces(p)) {
    bool unit = false;
    for (auto vi : f.vertices)
      for (auto n : p.neighbors(vi)) {
        if (std::binary_search(f.vertices.begin(), f.vertices.end(), n)) continue;
        if (content(p.vertices()[n] - p.vertices()[vi]) == 1) unit = true;
      }
    if (!unit) return false;
  }
  return true;
}

}  // namespace

TEST(Faces, RectangleAndCube) {
  auto rect = box2(4, 2);
  auto faces = enumerate_faces(rect);
  ASSERT_EQ(faces.size(), 8u);
  EXPECT_EQ(faces.front().dim, 0u);
  EXPECT_EQ(faces.back().dim, 1u);
  EXPECT_EQ(enumerate_faces(unit_cube()).size(), 8u + 12u + 6u);
  auto edge = face_from_vertices(rect, {LatVec{0, 0}, LatVec{4, 0}});
  EXPECT_EQ(edge.dim, 1u);
  EXPECT_EQ(edge.facets.size(), 1u);
  EXPECT_THROW(face_from_vertices(rect, {LatVec{0, 0}, LatVec{4, 2}}), Error);
  EXPECT_THROW(face_from_vertices(rect, {LatVec{1, 0}}), Error);
  EXPECT_THROW(enumerate_faces(known_non_normal_fixture()), Error);
}

TEST(Chisel, RectangleAtVertex) {
  auto rect = box2(4, 2);
  auto r = chisel(rect, face_from_vertices(rect, {LatVec{0, 2}}));
  EXPECT_EQ(r.sigma, (LatVec{1, -1}));
  EXPECT_EQ(r.b, -2);
  EXPECT_EQ(r.c, 0);
  ASSERT_TRUE(r.pieces);
  EXPECT_EQ(r.pieces->second, poly({{0, 1}, {0, 2}, {1, 2}}));
  EXPECT_TRUE(is_smooth(r.pieces->first).value);
  EXPECT_TRUE(is_unimodular_simplex_multiple(r.pieces->second));
}

TEST(Chisel, RectangleAlongEdge) {
  auto rect = box2(4, 2);
  auto r = chisel(rect, face_from_vertices(rect, {LatVec{0, 2}, LatVec{4, 2}}));
  ASSERT_TRUE(r.pieces);
  EXPECT_EQ(r.pieces->first, box2(4, 1));
  EXPECT_EQ(r.pieces->second, translate(box2(4, 1), LatVec{0, 1}));
}

TEST(Chisel, UnitSquareDoesNotSplit) {
  auto sq = unit_square();
  for (const auto& f : enumerate_faces(sq)) {
    auto r = chisel(sq, f);
    EXPECT_FALSE(r.pieces);
    if (f.dim == 0) EXPECT_EQ(r.b, r.c - 1);
  }
  EXPECT_THROW(chisel(poly({{0, 0}, {2, 1}, {1, 2}}), Face{{0}, {0}, 0}), Error);
}

TEST(Chisel, NormalFanIsStellarSubdivision) {
  auto cube = dilate(unit_cube(), 3);
  for (const auto& f : enumerate_faces(cube)) {
    auto r = chisel(cube, f);
    ASSERT_TRUE(r.pieces);
    EXPECT_TRUE(fan_equals(normal_fan(r.pieces->first), insert_ray(normal_fan(cube), primitive(r.sigma))));
    EXPECT_TRUE(is_smooth(r.pieces->second).value);
    if (f.dim == 0) EXPECT_TRUE(is_unimodular_simplex_multiple(r.pieces->second));
  }
}

TEST(Robust, Fixtures) {
  EXPECT_TRUE(is_robust(unit_cube()).robust);
  auto rect = is_robust(box2(4, 2));
  EXPECT_FALSE(rect.robust);
  auto hex = is_robust(hexagon());
  EXPECT_FALSE(hex.robust);
  ASSERT_TRUE(hex.face);
  EXPECT_EQ(hex.face->vertices, std::vector<std::size_t>{*hexagon().vertex_index(LatVec{0, 0})});
}

TEST(Robust, CharacterizationsAgree) {
  std::vector<LatticePolytope> corpus{unit_cube(), box2(4, 2), hexagon(), dilate(unit_cube(), 2), box2(1, 3)};
  for (std::uint64_t s = 0; s < 15; ++s) corpus.push_back(random_smooth_polygon(s));
  for (const auto& p : corpus) {
    EXPECT_EQ(is_robust(p).robust, is_robust_by_edges(p).robust);
    EXPECT_EQ(is_robust(p).robust, brute_force_robust(p));
  }
}

TEST(ChiselReduce, EndsRobustAndSmaller) {
  auto rect = box2(4, 2);
  auto red = chisel_reduce(rect, 7);
  EXPECT_TRUE(is_robust(red.result).robust);
  EXPECT_TRUE(is_smooth(red.result).value);
  EXPECT_LT(red.result.lattice_points().size(), rect.lattice_points().size());
  for (const auto& step : red.transcript) EXPECT_LT(step.points_after, step.points_before);
  auto same = chisel_reduce(unit_cube(), 7);
  EXPECT_TRUE(same.transcript.empty());
  EXPECT_EQ(same.result, unit_cube());
  // Seeded: the same seed gives the same transcript.
  auto again = chisel_reduce(rect, 7);
  EXPECT_EQ(again.result, red.result);
  EXPECT_EQ(again.transcript.size(), red.transcript.size());
}

TEST(Shrink, Examples) {
  auto simplex = shrink(unit_simplex(3), 1);
  EXPECT_EQ(simplex.transcript.size(), 1u);
  auto cube = shrink(unit_cube(), 1);
  EXPECT_GE(cube.transcript.size(), 1u);
  for (const auto& q : cube.transcript) {
    EXPECT_TRUE(is_very_ample(q).value);
    EXPECT_TRUE(q.spans_lattice());
  }
  EXPECT_EQ(cube.removed.size() + 1, cube.transcript.size());
  EXPECT_THROW(shrink(known_non_normal_fixture(), 1), Error);
}

TEST(Shrink, FlagsNonNormalFinds) {
  // Run from a few starting points and check every flagged find.
  for (const auto& p : {dilate(unit_cube(), 2), hexagon()}) {
    auto r = shrink(p, 3);
    for (const auto& f : r.non_normal) {
      EXPECT_FALSE(is_normal(f.polytope).value);
      EXPECT_TRUE(is_very_ample(f.polytope).value);
      EXPECT_EQ(f.simple, f.polytope.is_simple());
    }
  }
}

TEST(Split, RectangleHalves) {
  auto [p1, p2] = split_polytope(box2(4, 2), LatVec{0, 1}, 1);
  EXPECT_EQ(p1, translate(box2(4, 1), LatVec{0, 1}));
  EXPECT_EQ(p2, box2(4, 1));
  auto check = check_split(box2(4, 2), LatVec{0, 1}, 1);
  EXPECT_TRUE(check.hypotheses_met);
  EXPECT_TRUE(check.p_normal);
  ASSERT_TRUE(check.p_needs_degree3);
  EXPECT_FALSE(*check.p_needs_degree3);
  EXPECT_TRUE(check.consistent);
  EXPECT_THROW(split_polytope(box2(4, 2), LatVec{1, 0}, 0), Error);
}

TEST(Split, FivePointCounterexample) {
  auto check = check_split(five_point(), LatVec{0, 0, 1}, 0);
  EXPECT_FALSE(check.hypotheses_met);
  EXPECT_FALSE(check.violations.empty());
  EXPECT_TRUE(check.p_normal);
  ASSERT_TRUE(check.p_needs_degree3);
  EXPECT_TRUE(*check.p_needs_degree3);
}
