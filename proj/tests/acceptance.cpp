// Acceptance run: one PASS/FAIL line per criterion, with wall times.
// Exit status: 0 when everything passes, 10 when the scheme-theoretic
// degree-2 sweep finds a false verdict, 1 on any other failure.

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>

#include "testing.hpp"
#include "toriscope/cone.hpp"
#include "toriscope/criteria.hpp"
#include "toriscope/search.hpp"
#include "toriscope/toric_ideal.hpp"
#include "toriscope/transforms.hpp"

using namespace toriscope;
using namespace toriscope::testing;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  bool discovery = false;
};

/// Collects the first few failure messages of a criterion.
class Checker {
 public:
  void expect(bool cond, const std::string& what) {
    if (cond) return;
    ++failures_;
    if (failures_ <= 3) messages_ << (failures_ > 1 ? "; " : "") << what;
  }
  bool ok() const { return failures_ == 0; }
  Outcome outcome(const std::string& summary) const {
    if (ok()) return {true, summary};
    return {false, std::to_string(failures_) + " failure(s): " + messages_.str()};
  }

 private:
  int failures_ = 0;
  std::ostringstream messages_;
};

std::string str(const LatVec& v) { return v.to_string(); }

// Tolerances: wall-time limits in seconds.
constexpr double limit_hexagon = 1.0;
constexpr double limit_five_point = 1.0;
constexpr double limit_fixture = 5.0;
constexpr double limit_support = 300.0;
constexpr double limit_dilation = 600.0;

Outcome hexagon_fixture() {
  Checker c;
  auto r = analyze(hexagon());
  c.expect(r.verdict("smooth").value == true, "smooth");
  const auto& sc = r.verdict("superconnected");
  c.expect(sc.value == false, "superconnected");
  c.expect(sc.witness.value("vertex", Json()) == Json::parse("[3,3]"), "witness vertex");
  c.expect(sc.witness.value("unreachable", Json()) == Json::parse("[0,0]"), "witness point");
  c.expect(r.verdict("strongly_connected").value == true, "strongly_connected");
  c.expect(r.verdict("ehrhart_positive").value == true, "ehrhart_positive");
  auto e = ehrhart_positive(hexagon());
  c.expect(e.coefficients == std::vector<Rational>{1, Rational(13, 2), Rational(27, 2)}, "coefficients");
  return c.outcome("witness (0,0) unreachable from (3,3); coefficients 1, 13/2, 27/2");
}

Outcome five_point_fixture() {
  Checker c;
  auto p = five_point();
  auto pts = lvs(five_point_coords());
  std::sort(pts.begin(), pts.end());
  c.expect(p.lattice_points() == pts, "lattice points");
  c.expect(box_lattice_points(p) == pts, "lattice points (box scan)");
  c.expect(degree2_binomials(p).empty(), "quadrics present");
  const LatVec x = lv({0, 0, 0}), y = lv({1, 0, 0}), z = lv({0, 1, 0});
  const LatVec v = lv({1, 1, 2}), w = lv({0, 0, -1});
  const LatVec sum = x + y + z;
  c.expect(sum == v + w + w, "x+y+z = v+2w");
  auto dc = squarefree_divisor_complex(p, sum);
  std::vector<std::vector<LatVec>> expected{{v, w}, {x, y, z}};
  for (auto& comp : expected) std::sort(comp.begin(), comp.end());
  std::sort(expected.begin(), expected.end());
  c.expect(!dc.connected && dc.components == expected, "divisor complex components");
  const bool normal = is_normal(p).value;
  c.expect(normal, "normality");
  if (normal) {
    auto r = needs_degree3_generators(p);
    c.expect(r.needs_degree3, "needs_degree3");
    c.expect(r.multidegree && *r.multidegree == sum, "offending multidegree");
  }
  return c.outcome("5 points, no quadrics, components {x,y,z} {v,w}, normal, cubic at x+y+z");
}

Outcome non_normal_fixture() {
  Checker c;
  auto p = known_non_normal_fixture();
  c.expect(is_very_ample(p).value, "very ample");
  auto n = is_normal(p);
  c.expect(!n.value && n.witness.has_value(), "normal");
  std::string witness;
  if (n.witness) {
    const auto& h = *n.witness;
    const std::size_t d = p.dim();
    witness = str(h);
    c.expect(h[d] >= 2, "witness height");
    LatVec base(d);
    for (std::size_t i = 0; i < d; ++i) base[i] = h[i];
    // In the cone: base / height lies in P.
    bool inside = true;
    for (const auto& f : p.facets())
      if (dot(f.normal, base) + f.offset * h[d] < 0) inside = false;
    c.expect(inside, "witness outside the cone");
    // Not a sum of lower-height cone points: at height 2 it would be a sum
    // of two lattice points of P.
    if (h[d] == 2) {
      bool decomposes = false;
      for (const auto& a : p.lattice_points())
        if (p.has_lattice_point(base - a)) decomposes = true;
      c.expect(!decomposes, "witness decomposes");
    }
  }
  std::size_t non_simple = 0;
  for (std::size_t i = 0; i < p.vertices().size(); ++i) {
    const auto& nb = p.neighbors(i);
    if (nb.size() == p.dim()) {
      std::vector<LatVec> dirs;
      for (auto j : nb) dirs.push_back(p.vertices()[j] - p.vertices()[i]);
      c.expect(abs(determinant(LatMatrix(dirs))) == 1, "simple corner not unimodular");
      continue;
    }
    ++non_simple;
    std::vector<LatVec> gens;
    for (auto j : nb) gens.push_back(p.vertices()[j] - p.vertices()[i]);
    c.expect(gens.size() == p.dim() + 1, "corner with " + std::to_string(gens.size()) + " neighbours");
    if (gens.size() == p.dim() + 1) c.expect(dplus1_hilbert_criterion(gens), "criterion at " + str(p.vertices()[i]));
  }
  c.expect(non_simple == 4, "non-simple corners: " + std::to_string(non_simple));
  return c.outcome("very ample, Hilbert basis element " + witness + ", criterion holds at 4 non-simple corners");
}

Outcome support_round_trips() {
  Checker c;
  for (std::size_t d : {2u, 3u}) {
    auto r = support_polytopes(projective_space_fan(d));
    c.expect(r.polytopes.size() == 1, "P^d count");
    if (r.polytopes.size() == 1) {
      const auto& got = r.polytopes[0];
      const auto want = unit_simplex(d);
      c.expect(translate(got, want.vertices().front() - got.vertices().front()) == want, "P^d simplex");
    }
  }
  auto cube = support_polytopes(product_p1_fan(3));
  c.expect(cube.polytopes.size() == 1 && cube.polytopes[0] == unit_cube(), "(P1)^3 cube");

  std::size_t fans = 0, capped = 0, polytopes = 0;
  for (std::uint64_t seed = 0; fans < 25; ++seed) {
    RandomFanOptions o;
    o.seed = seed;
    o.dim = 2 + seed % 2;
    std::optional<Fan> smooth;
    try {
      smooth = desingularize(random_complete_fan(o), seed);
    } catch (const LimitsExceeded&) {
      ++capped;
      continue;
    }
    const Fan& f = *smooth;
    ++fans;
    c.expect(f.unimodular() && f.complete(), "seed " + std::to_string(seed) + " not unimodular");
    auto r = support_polytopes(f, resolve_mode("auto", f));
    c.expect(r.verdict == Projectivity::projective, "seed " + std::to_string(seed) + " no polytope");
    polytopes += r.polytopes.size();
    for (std::size_t i = 0; i < r.polytopes.size(); ++i) {
      c.expect(fan_equals(normal_fan(r.polytopes[i]), f), "seed " + std::to_string(seed) + " normal fan differs");
      for (std::size_t j = 0; j < r.polytopes.size(); ++j) {
        if (i == j) continue;
        c.expect(!r.polytopes[i].contains(r.polytopes[j]), "seed " + std::to_string(seed) + " containment");
        bool dominated = true;
        for (std::size_t k = 0; k < f.rays().size(); ++k)
          if (r.vectors[i].b[k] > r.vectors[j].b[k]) dominated = false;
        c.expect(!dominated, "seed " + std::to_string(seed) + " b-vector domination");
      }
    }
  }
  return c.outcome("simplex, cube, 25 random fans (" + std::to_string(polytopes) + " polytopes, " +
                   std::to_string(capped) + " draws over caps skipped)");
}

Outcome dilations() {
  Checker c;
  Rng rng(2024);
  std::size_t done = 0, rejected = 0, largest = 0;
  while (done < 50) {
    auto q = random_polytope3(rng, 4, 8);
    const auto n3 = count_lattice_points(q, 3);
    if (n3 > Integer(400)) {
      ++rejected;
      continue;
    }
    ++done;
    largest = std::max<std::size_t>(largest, n3.get_ui());
    c.expect(is_normal(dilate(q, 2)).value, "2P not normal: " + q.to_text());
    c.expect(!needs_degree3_generators(dilate(q, 3)).needs_degree3, "3P needs a cubic: " + q.to_text());
  }
  return c.outcome("50 polytopes, |3P| <= " + std::to_string(largest) + ", " + std::to_string(rejected) +
                   " larger draws rejected");
}

/// Independent check: d + 1 vertices, and from the first one all edges have
/// the same lattice length and primitive directions forming a basis.
bool unimodular_simplex_multiple(const LatticePolytope& q) {
  const std::size_t d = q.dim();
  if (q.vertices().size() != d + 1) return false;
  const auto& v0 = q.vertices().front();
  std::vector<IVec> dirs;
  Integer k = 0;
  for (std::size_t i = 1; i <= d; ++i) {
    const LatVec e = q.vertices()[i] - v0;
    if (k == 0) k = content(e);
    if (content(e) != k) return false;
    dirs.push_back(to_ivecs({primitive(e)}).front());
  }
  return std::abs(cofactor_det(dirs)) == 1;
}

Outcome chisels() {
  Checker c;
  std::size_t splits = 0, vertex_splits = 0;
  auto check = [&](const LatticePolytope& p, const Face& f, const std::string& label) {
    ChiselResult r;
    try {
      r = chisel(p, f);
    } catch (const std::exception& e) {
      c.expect(false, label + ": " + e.what());
      return;
    }
    if (!r.pieces) return;
    ++splits;
    c.expect(is_smooth(r.pieces->first).value && is_smooth(r.pieces->second).value, label + " piece not smooth");
    if (f.dim == 0) {
      ++vertex_splits;
      c.expect(unimodular_simplex_multiple(r.pieces->second), label + " vertex piece not a simplex multiple");
    }
  };
  Rng rng(6);
  for (std::uint64_t s = 0; s < 100; ++s) {
    auto p = random_smooth_polygon(1000 + s);
    auto faces = enumerate_faces(p);
    check(p, faces[rng.index(faces.size())], "polygon " + std::to_string(1000 + s));
  }
  auto rect = box2(4, 2);
  for (const auto& f : enumerate_faces(rect)) check(rect, f, "[0,4]x[0,2]");
  return c.outcome(std::to_string(splits) + " splits (" + std::to_string(vertex_splits) +
                   " at vertices), all pieces smooth");
}

Outcome scheme_degree2_sweep() {
  Checker c;
  std::vector<LatticePolytope> corpus{unit_square(),     unit_cube(),       hexagon(),
                                      box2(4, 2),        box2(1, 3),        dilate(unit_simplex(2), 2),
                                      dilate(unit_simplex(2), 3), dilate(unit_cube(), 2), unit_simplex(3)};
  for (std::uint64_t s = 0; s < 200; ++s) corpus.push_back(random_smooth_polygon(5000 + s));
  std::size_t falses = 0, identities = 0;
  for (const auto& p : corpus) {
    c.expect(is_smooth(p).value, "corpus polytope not smooth");
    auto r = scheme_degree2(p);
    if (!r.verdict) {
      ++falses;
      std::cerr << "DISCOVERY scheme_degree2 = false for\n" << p.to_text();
    }
    for (const auto& w : r.witnesses) {
      if (!w.satisfied) continue;
      if (w.tag == "2a") {
        const bool ok = w.points.size() == 4 && w.points[0] + w.points[1] == w.points[2] + w.points[3];
        c.expect(ok, "2a identity");
      } else {
        const bool ok = w.points.size() == 3 && w.points[0] + w.points[0] == w.points[1] + w.points[2];
        c.expect(ok, "2b identity");
      }
      for (const auto& x : w.points) c.expect(p.has_lattice_point(x), "witness outside P");
      ++identities;
    }
  }
  Outcome o = c.outcome(std::to_string(corpus.size()) + " smooth polytopes, " + std::to_string(identities) +
                        " witness identities");
  if (falses) {
    o.pass = false;
    o.discovery = true;
    o.detail = std::to_string(falses) + " false verdict(s)";
  }
  return o;
}

Outcome abundance_join() {
  Checker c;
  JoinPoints j;
  auto p = join_of_segments();
  auto r = abundant_degree2(p);
  c.expect(!r.verdict, "abundant");
  bool found = false;
  for (const auto& w : r.witnesses)
    if (!w.satisfied && w.points.size() == 2 && std::set<LatVec>(w.points.begin(), w.points.end()) ==
                                                     std::set<LatVec>{lv(j.y), lv(j.v)})
      found = true;
  c.expect(found, "witness (y,v)");
  auto name = [](const IVec& a) { return "X_" + lv(a).to_string(); };
  std::set<std::string> expected{name(j.x) + "*" + name(j.z) + " - " + name(j.y) + "*" + name(j.y),
                                 name(j.u) + "*" + name(j.w) + " - " + name(j.v) + "*" + name(j.v)};
  std::set<std::string> got;
  for (const auto& b : degree2_binomials(p)) got.insert(to_string(b, p.lattice_points()));
  c.expect(got == expected, "quadrics");
  return c.outcome("witness (y,v); quadrics X_x*X_z - X_y^2, X_u*X_w - X_v^2");
}

Outcome determinism() {
  Checker c;
  SearchConfig cfg;
  cfg.seed = 42;
  cfg.dim = 3;
  std::ostringstream a, b;
  const int ra = run_search(cfg, a);
  const int rb = run_search(cfg, b);
  c.expect(ra == rb, "exit codes differ");
  c.expect(a.str() == b.str(), "streams differ");
  HilbertOptions one, four;
  one.threads = 1;
  four.threads = 4;
  std::vector<RationalCone> cones{RationalCone::from_generators(lvs({{1, 0, 0}, {0, 1, 0}, {1, 2, 7}, {3, 1, 5}}), 3)};
  const auto fixture = known_non_normal_fixture();
  for (const auto& v : fixture.vertices()) cones.push_back(corner_cone(fixture, v));
  {
    std::vector<LatVec> lifted;
    const auto doubled = dilate(fixture, 2);
    for (const auto& v : doubled.vertices()) {
      LatVec h(4);
      for (std::size_t i = 0; i < 3; ++i) h[i] = v[i];
      h[3] = 1;
      lifted.push_back(h);
    }
    cones.push_back(RationalCone::from_generators(lifted, 4));
  }
  for (const auto& cone : cones) c.expect(hilbert_basis(cone, one) == hilbert_basis(cone, four), "thread counts");
  return c.outcome(std::to_string(a.str().size()) + " identical bytes; " + std::to_string(cones.size()) +
                   " Hilbert bases equal under 1 and 4 threads");
}

Outcome hilbert_oracle() {
  Checker c;
  Rng rng(10);
  std::size_t checked = 0;
  Integer largest = 0;
  while (checked < 100) {
    const std::size_t d = 2 + checked % 2;
    const std::size_t n = d + rng.index(2);
    std::vector<IVec> gens;
    for (std::size_t i = 0; i < n; ++i) {
      IVec g;
      for (std::size_t k = 0; k < d; ++k) g.push_back(rng.uniform(-4, 4));
      gens.push_back(g);
    }
    if (!positive_form(gens, d)) continue;
    auto cone = RationalCone::from_generators(lvs(gens), d);
    if (!cone.full_dimensional()) continue;
    Integer total = 0;
    for (const auto& s : triangulate(cone)) total += s.multiplicity;
    if (total > 50) continue;
    largest = std::max(largest, total);
    ++checked;
    c.expect(to_ivecs(hilbert_basis(cone)) == brute_force_hilbert_basis(gens), "cone " + std::to_string(checked));
  }
  return c.outcome("100 cones, multiplicity <= " + largest.get_str());
}

}  // namespace

int main(int argc, char** argv) {
  // Optional arguments select criteria by number.
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::stoi(argv[i]));
  struct Criterion {
    int number;
    std::string name;
    double limit;  // seconds; 0 for none
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "hexagon fixture", limit_hexagon, hexagon_fixture},
      {2, "five-point fixture", limit_five_point, five_point_fixture},
      {3, "very ample non-normal fixture", limit_fixture, non_normal_fixture},
      {4, "support polytope round trips", limit_support, support_round_trips},
      {5, "dilations 2P normal, 3P no cubics", limit_dilation, dilations},
      {6, "chisel pieces", 0, chisels},
      {7, "scheme-theoretic degree 2", 0, scheme_degree2_sweep},
      {8, "abundance non-example", 0, abundance_join},
      {9, "determinism", 0, determinism},
      {10, "Hilbert basis oracle", 0, hilbert_oracle},
  };
  bool all = true, discovery = false;
  for (const auto& crit : criteria) {
    if (!only.empty() && !only.count(crit.number)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = crit.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (crit.limit > 0 && secs >= crit.limit) {
      o.pass = false;
      o.detail += "; over the " + std::to_string(static_cast<int>(crit.limit)) + " s limit";
    }
    all = all && o.pass;
    discovery = discovery || o.discovery;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << std::setw(2) << crit.number << "  " << crit.name
              << " [" << std::fixed << std::setprecision(2) << secs << " s]: " << o.detail << std::endl;
  }
  if (discovery) return exit_discovery;
  return all ? 0 : 1;
}
