#include "toriscope/transforms.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "toriscope/fan.hpp"
#include "toriscope/random.hpp"
#include "toriscope/toric_ideal.hpp"

namespace toriscope {

namespace {

std::vector<std::size_t> vertices_on(const LatticePolytope& p, const std::vector<std::size_t>& facets) {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < p.vertices().size(); ++v) {
    const auto& vf = p.vertex_facets(v);
    if (std::includes(vf.begin(), vf.end(), facets.begin(), facets.end())) out.push_back(v);
  }
  return out;
}

std::size_t face_dim(const LatticePolytope& p, const std::vector<std::size_t>& verts) {
  if (verts.size() <= 1) return 0;
  std::vector<LatVec> diffs;
  for (std::size_t i = 1; i < verts.size(); ++i) diffs.push_back(p.vertices()[verts[i]] - p.vertices()[verts[0]]);
  return rank(LatMatrix(diffs, p.dim()));
}

void require_smooth(const LatticePolytope& p) {
  if (!is_smooth(p).value) throw Error("chiseling requires a smooth polytope");
}

bool is_multiple_of_unimodular_simplex(const LatticePolytope& q, const LatVec& apex) {
  if (q.vertices().size() != q.dim() + 1) return false;
  std::vector<LatVec> edges;
  for (const auto& w : q.vertices())
    if (w != apex) edges.push_back(w - apex);
  if (edges.size() != q.dim()) return false;
  auto h = hermite_normal_form(LatMatrix(edges, q.dim())).H;
  const Integer k = h(0, 0);
  for (std::size_t i = 0; i < q.dim(); ++i)
    for (std::size_t j = 0; j < q.dim(); ++j)
      if (h(i, j) != (i == j ? k : Integer(0))) return false;
  return true;
}

}  // namespace

Face face_from_vertices(const LatticePolytope& p, const std::vector<LatVec>& vertices) {
  if (vertices.empty()) throw Error("a face needs at least one vertex");
  std::vector<std::size_t> idx;
  for (const auto& v : vertices) {
    auto i = p.vertex_index(v);
    if (!i) throw Error(v.to_string() + " is not a vertex");
    idx.push_back(*i);
  }
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  Face f;
  for (std::size_t k = 0; k < p.facets().size(); ++k) {
    bool all = std::all_of(idx.begin(), idx.end(), [&](std::size_t v) {
      const auto& vf = p.vertex_facets(v);
      return std::binary_search(vf.begin(), vf.end(), k);
    });
    if (all) f.facets.push_back(k);
  }
  if (f.facets.empty()) throw Error("the vertices do not lie on a common facet");
  f.vertices = vertices_on(p, f.facets);
  if (f.vertices != idx) throw Error("the vertices are not the vertex set of a face");
  f.dim = face_dim(p, f.vertices);
  return f;
}

std::vector<Face> enumerate_faces(const LatticePolytope& p) {
  if (!p.is_simple()) throw Error("face enumeration requires a simple polytope");
  std::map<std::vector<std::size_t>, Face> by_facets;
  for (std::size_t v = 0; v < p.vertices().size(); ++v) {
    const auto& vf = p.vertex_facets(v);
    const std::size_t s = vf.size();
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << s); ++mask) {
      std::vector<std::size_t> subset;
      for (std::size_t i = 0; i < s; ++i)
        if (mask >> i & 1) subset.push_back(vf[i]);
      if (by_facets.count(subset)) continue;
      Face f;
      f.facets = subset;
      f.vertices = vertices_on(p, subset);
      f.dim = p.dim() - subset.size();
      by_facets.emplace(std::move(subset), std::move(f));
    }
  }
  std::vector<Face> out;
  for (auto& [key, f] : by_facets) out.push_back(std::move(f));
  std::sort(out.begin(), out.end(), [](const Face& a, const Face& b) {
    return a.dim != b.dim ? a.dim < b.dim : a.vertices < b.vertices;
  });
  return out;
}

namespace {

// chisel() for a polytope already known to be smooth.
ChiselResult chisel_smooth(const LatticePolytope& p, const Face& face) {
  if (face.facets.empty() || face.vertices.empty()) throw Error("not a proper face");
  ChiselResult r;
  r.face = face;
  r.sigma = LatVec(p.dim());
  r.b = 0;
  for (auto k : face.facets) {
    if (k >= p.facets().size()) throw Error("facet index out of range");
    r.sigma += p.facets()[k].normal;
    r.b -= p.facets()[k].offset;
  }
  if (vertices_on(p, face.facets) != face.vertices) throw Error("face data does not match the polytope");
  bool any = false;
  for (std::size_t v = 0; v < p.vertices().size(); ++v) {
    if (std::binary_search(face.vertices.begin(), face.vertices.end(), v)) continue;
    Integer s = dot(r.sigma, p.vertices()[v]);
    if (!any || s < r.c) r.c = s;
    any = true;
  }
  if (!any) throw Error("not a proper face");
  if (!(r.b < r.c - 1)) return r;

  const Integer level = r.c - 1;
  auto pieces = split_polytope(p, r.sigma, level);
  const auto& [p1, p2] = pieces;
  if (!is_smooth(p1).value || !is_smooth(p2).value) throw std::logic_error("chiseling produced a non-smooth piece");
  if (!fan_equals(normal_fan(p1), insert_ray(normal_fan(p), primitive(r.sigma))))
    throw std::logic_error("normal fan of the chiseled polytope is not the stellar subdivision");
  if (face.dim == 0 && !is_multiple_of_unimodular_simplex(p2, p.vertices()[face.vertices.front()]))
    throw std::logic_error("corner piece is not a multiple of a unimodular simplex");
  r.pieces = std::move(pieces);
  return r;
}

}  // namespace

ChiselResult chisel(const LatticePolytope& p, const Face& face) {
  require_smooth(p);
  return chisel_smooth(p, face);
}

RobustnessResult is_robust(const LatticePolytope& p) {
  require_smooth(p);
  RobustnessResult out;
  for (const auto& f : enumerate_faces(p))
    if (chisel_smooth(p, f).pieces) {
      out.robust = false;
      out.face = f;
      break;
    }
  auto check = is_robust_by_edges(p);
  if (check.robust != out.robust) throw std::logic_error("robustness characterizations disagree");
  return out;
}

RobustnessResult is_robust_by_edges(const LatticePolytope& p) {
  RobustnessResult out;
  for (const auto& f : enumerate_faces(p)) {
    bool found = false;
    for (const auto& e : p.edges()) {
      bool ina = std::binary_search(f.vertices.begin(), f.vertices.end(), e.a);
      bool inb = std::binary_search(f.vertices.begin(), f.vertices.end(), e.b);
      if (ina != inb && e.length == 1) {
        found = true;
        break;
      }
    }
    if (!found) {
      out.robust = false;
      out.face = f;
      break;
    }
  }
  return out;
}

ChiselReduction chisel_reduce(const LatticePolytope& p, std::uint64_t seed) {
  require_smooth(p);
  ChiselReduction out{p, {}};
  for (std::uint64_t step = 0;; ++step) {
    auto faces = enumerate_faces(out.result);
    Rng rng(derive_seed(seed, "chisel", step));
    rng.shuffle(faces);
    std::optional<ChiselResult> cut;
    for (const auto& f : faces) {
      auto r = chisel_smooth(out.result, f);
      if (r.pieces) {
        cut = std::move(r);
        break;
      }
    }
    if (!cut) break;
    ChiselStep s;
    s.points_before = out.result.lattice_points().size();
    out.result = cut->pieces->first;
    s.points_after = out.result.lattice_points().size();
    s.cut = std::move(*cut);
    out.transcript.push_back(std::move(s));
  }
  return out;
}

ShrinkResult shrink(const LatticePolytope& p, std::uint64_t seed) {
  if (!is_normal(p).value) throw Error("shrinking starts from a normal polytope");
  ShrinkResult out;
  out.transcript.push_back(p);
  for (std::uint64_t round = 0;; ++round) {
    const LatticePolytope& cur = out.transcript.back();
    std::vector<LatVec> order = cur.vertices();
    Rng rng(derive_seed(seed, "shrink", round));
    rng.shuffle(order);
    std::optional<LatticePolytope> next;
    LatVec removed;
    for (const auto& v : order) {
      std::vector<LatVec> pts;
      for (const auto& x : cur.lattice_points())
        if (x != v) pts.push_back(x);
      try {
        auto q = LatticePolytope::from_points(pts);
        if (!q.spans_lattice() || !is_very_ample(q).value) continue;
        next = std::move(q);
        removed = v;
        break;
      } catch (const DegeneratePolytope&) {
      }
    }
    if (!next) break;
    auto normal = is_normal(*next);
    if (!normal.value) {
      ShrinkFind find{*next, normal.witness.value_or(LatVec()), next->is_simple(), false};
      find.smooth = is_smooth(*next).value;
      out.non_normal.push_back(std::move(find));
    }
    out.removed.push_back(removed);
    out.transcript.push_back(std::move(*next));
  }
  return out;
}

std::pair<LatticePolytope, LatticePolytope> split_polytope(const LatticePolytope& p, const LatVec& form,
                                                           const Integer& level) {
  if (form.dim() != p.dim() || form.is_zero()) throw Error("split form must be a nonzero vector of dimension " +
                                                          std::to_string(p.dim()));
  auto upper = p.facets();
  upper.push_back({form, -level});
  auto lower = p.facets();
  lower.push_back({-form, level});
  try {
    return {LatticePolytope::from_inequalities(upper, p.dim()), LatticePolytope::from_inequalities(lower, p.dim())};
  } catch (const DegeneratePolytope&) {
    throw Error("not a split: a piece is not full-dimensional");
  }
}

SplitCheck check_split(const LatticePolytope& p, const LatVec& form, const Integer& level) {
  auto [p1, p2] = split_polytope(p, form, level);
  SplitCheck out;
  const std::pair<const char*, const LatticePolytope*> pieces[] = {{"P1", &p1}, {"P2", &p2}};
  bool normal[2] = {false, false};
  for (int i = 0; i < 2; ++i) {
    const auto& [name, q] = pieces[i];
    normal[i] = is_normal(*q).value;
    if (!q->spans_lattice()) out.violations.push_back(std::string(name) + " lattice points do not span the lattice");
    if (!normal[i]) out.violations.push_back(std::string(name) + " is not normal");
  }
  out.hypotheses_met = out.violations.empty();
  out.p_normal = is_normal(p).value;
  if (normal[0]) out.p1_needs_degree3 = needs_degree3_generators(p1).needs_degree3;
  if (normal[1]) out.p2_needs_degree3 = needs_degree3_generators(p2).needs_degree3;
  if (out.p_normal) out.p_needs_degree3 = needs_degree3_generators(p).needs_degree3;
  if (out.hypotheses_met) {
    out.consistent = out.p_normal;
    if (out.consistent && !*out.p1_needs_degree3 && !*out.p2_needs_degree3) out.consistent = !*out.p_needs_degree3;
  }
  return out;
}

}  // namespace toriscope
