#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>

#include "testing.hpp"
#include "toriscope/io.hpp"
#include "toriscope/report.hpp"
#include "toriscope/search.hpp"

using namespace toriscope;
using namespace toriscope::testing;

namespace {

std::vector<Json> parse_lines(const std::string& text) {
  std::vector<Json> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) out.push_back(Json::parse(line));
  return out;
}

}  // namespace

TEST(Io, PolytopeRoundTrip) {
  auto hex = hexagon();
  EXPECT_EQ(parse_polytope(hex.to_text()), hex);
  EXPECT_EQ(parse_polytope("# comment\n\npolytope 2 3\n0 0\n1 0\n0 1\n"), unit_simplex(2));
}

TEST(Io, FanRoundTrip) {
  auto f = product_p1_fan(3);
  EXPECT_TRUE(fan_equals(parse_fan(f.to_text()), f));
}

TEST(Io, ParseErrorsCarryLineNumbers) {
  try {
    parse_polytope("polytope 2 3\n0 0\n1 x\n0 1\n");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  EXPECT_THROW(parse_polytope("polytope 2 3\n0 0\n1 0\n"), ParseError);
  EXPECT_THROW(parse_polytope("polytope 2 1\n0 0 0\n"), ParseError);
  EXPECT_THROW(parse_polytope("polygon 2 1\n0 0\n"), ParseError);
  EXPECT_THROW(parse_polytope("polytope 2 3\n0 0\n1 0\n0 1\n5 5\n"), ParseError);
  EXPECT_THROW(parse_fan("fan 2 2 1\n1 0\n0 1\n0 7\n"), ParseError);
  // Well-formed but degenerate input is a geometric error, not a parse error.
  EXPECT_THROW(parse_polytope("polytope 2 2\n0 0\n1 1\n"), DegeneratePolytope);
}

TEST(Report, JsonShapes) {
  EXPECT_EQ(to_json(Integer(5)), Json(5));
  EXPECT_TRUE(to_json(Integer("123456789012345678901234567890")).is_string());
  EXPECT_EQ(to_json(Rational(13, 2)), Json("13/2"));
  EXPECT_EQ(to_json(LatVec{1, -2}), Json::parse("[1,-2]"));
  auto p = to_json(unit_square());
  EXPECT_EQ(p["dim"], 2);
  EXPECT_EQ(p["lattice_points"], 4);
  auto line = dump_line(p);
  EXPECT_EQ(line.back(), '\n');
  EXPECT_EQ(line.find('\n'), line.size() - 1);
}

TEST(Analyze, Hexagon) {
  auto r = analyze(hexagon());
  EXPECT_EQ(*r.verdict("smooth").value, true);
  EXPECT_EQ(*r.verdict("superconnected").value, false);
  EXPECT_EQ(r.verdict("superconnected").witness["vertex"], Json::parse("[3,3]"));
  EXPECT_EQ(r.verdict("superconnected").witness["unreachable"], Json::parse("[0,0]"));
  EXPECT_EQ(*r.verdict("strongly_connected").value, true);
  EXPECT_EQ(*r.verdict("robust").value, false);
  EXPECT_EQ(*r.verdict("ehrhart_positive").value, true);
  EXPECT_EQ(r.verdict("ehrhart_positive").witness["coefficients"], Json::parse(R"(["1","13/2","27/2"])"));
  EXPECT_TRUE(r.discoveries.empty());
  std::vector<std::string> names;
  for (const auto& v : r.verdicts) names.push_back(v.name);
  EXPECT_EQ(names, verdict_names());
}

TEST(Analyze, FixtureIsAKnownDiscovery) {
  auto r = analyze(known_non_normal_fixture());
  EXPECT_EQ(*r.verdict("very_ample").value, true);
  EXPECT_EQ(*r.verdict("normal").value, false);
  EXPECT_FALSE(r.verdict("superconnected").value);
  ASSERT_EQ(r.discoveries.size(), 1u);
  EXPECT_EQ(r.discoveries[0].kind, "very_ample_non_normal");
  EXPECT_TRUE(r.discoveries[0].known_fixture);
  EXPECT_TRUE(is_known_fixture(known_non_normal_fixture()));
  EXPECT_FALSE(is_known_fixture(hexagon()));
}

TEST(Analyze, FivePointNeedsCubic) {
  auto r = analyze(five_point());
  EXPECT_EQ(*r.verdict("needs_degree3").value, true);
  EXPECT_EQ(r.verdict("needs_degree3").witness["method"], "groebner");
  // Not smooth, so no discovery class applies.
  EXPECT_TRUE(r.discoveries.empty());
}

TEST(Analyze, ProbeAboveThePointLimit) {
  AnalyzeOptions o;
  o.limit_points = 10;
  auto r = analyze(hexagon(), o);
  EXPECT_FALSE(r.verdict("needs_degree3").value);
  EXPECT_EQ(r.verdict("needs_degree3").witness["method"], "probe");
  EXPECT_FALSE(r.verdict("needs_degree3").note.empty());
}

TEST(Search, PlaneRunsFindNothingAndAreDeterministic) {
  SearchConfig c;
  c.seed = 3;
  c.dim = 2;
  c.iterations = 4;
  c.coord_bound = 2;
  std::ostringstream a, b;
  EXPECT_EQ(run_search(c, a), exit_ok);
  EXPECT_EQ(run_search(c, b), exit_ok);
  EXPECT_EQ(a.str(), b.str());
  auto lines = parse_lines(a.str());
  ASSERT_GE(lines.size(), 2u);
  EXPECT_EQ(lines.front()["type"], "config");
  EXPECT_EQ(lines.back()["type"], "summary");
  EXPECT_EQ(lines.back()["discoveries"], 0);
  EXPECT_GT(lines.back()["analyzed"].get<int>(), 0);
}

TEST(Search, ResumeReproducesTheTail) {
  SearchConfig c;
  c.seed = 8;
  c.dim = 2;
  c.iterations = 3;
  std::ostringstream full;
  run_search(c, full);
  SearchConfig tail = c;
  tail.start_iteration = 2;
  tail.iterations = 1;
  std::ostringstream part;
  run_search(tail, part);
  auto all = parse_lines(full.str());
  auto some = parse_lines(part.str());
  auto at = [](const std::vector<Json>& lines, const std::string& type) {
    std::vector<Json> out;
    for (const auto& j : lines)
      if (j["type"] == type && j.contains("iteration") && j["iteration"] == 2) out.push_back(j);
    return out;
  };
  EXPECT_FALSE(at(some, "iteration").empty());
  EXPECT_EQ(at(all, "iteration"), at(some, "iteration"));
  // The resumed run has not seen earlier iterations, so it may analyze
  // polytopes the full run skipped as duplicates, but never fewer.
  auto resumed = at(some, "analysis");
  for (const auto& a : at(all, "analysis"))
    EXPECT_NE(std::find(resumed.begin(), resumed.end(), a), resumed.end());
}

TEST(Search, InjectedFixtureFiresDiscovery) {
  SearchConfig c;
  c.seed = 1;
  c.dim = 2;
  c.iterations = 1;
  c.inject_fixture = true;
  std::ostringstream out;
  EXPECT_EQ(run_search(c, out), exit_discovery);
  bool fired = false;
  for (const auto& j : parse_lines(out.str()))
    if (j["type"] == "discovery") {
      fired = true;
      EXPECT_EQ(j["report"]["discoveries"][0]["known_fixture"], true);
    }
  EXPECT_TRUE(fired);
}
