#include "toriscope/criteria.hpp"

#include <algorithm>
#include <deque>
#include <optional>
#include <unordered_map>

#include "toriscope/point_index.hpp"

namespace toriscope {

std::vector<LatVec> lattice_neighbors(const LatticePolytope& p, std::size_t vertex) {
  std::vector<LatVec> out;
  const LatVec& v = p.vertices()[vertex];
  for (auto n : p.neighbors(vertex)) out.push_back(v + primitive(p.vertices()[n] - v));
  return out;
}

namespace {

// For each lattice point index: the indices of the lattice neighbours if it is a vertex.
std::vector<std::optional<std::vector<std::size_t>>> neighbour_table(const LatticePolytope& p, const PointIndex& idx) {
  const auto& pts = p.lattice_points();
  std::vector<std::optional<std::vector<std::size_t>>> out(pts.size());
  for (std::size_t vi = 0; vi < p.vertices().size(); ++vi) {
    auto v = idx.find(idx.key({p.vertices()[vi].to_int64().data()}));
    std::vector<std::size_t> ns;
    for (const auto& n : lattice_neighbors(p, vi)) ns.push_back(*idx.find(idx.key({n.to_int64().data()})));
    std::sort(ns.begin(), ns.end());
    out[*v] = std::move(ns);
  }
  return out;
}

}  // namespace

CriterionReport scheme_degree2(const LatticePolytope& p) {
  CriterionReport report;
  if (!is_smooth(p).value)
    report.caveats.push_back("non-smooth input: the conditions only imply scheme-theoretic generation, not conversely");
  const auto& pts = p.lattice_points();
  PointIndex idx(pts, 2);
  auto table = neighbour_table(p, idx);

  for (std::size_t v = 0; v < pts.size(); ++v) {
    if (!table[v]) continue;
    const auto& ns = *table[v];
    auto is_neighbour = [&](std::size_t i) { return std::binary_search(ns.begin(), ns.end(), i); };
    for (std::size_t x = 0; x < pts.size(); ++x) {
      if (x == v || is_neighbour(x)) continue;
      auto try_y = [&](std::size_t y, bool via_neighbor) {
        if (y == v || y == x) return false;
        auto z = idx.find(idx.key({idx.coords(x), idx.coords(v)}, {idx.coords(y)}));
        if (!z) return false;
        report.witnesses.push_back({"2a", {pts[v], pts[x], pts[y], pts[*z]}, true, via_neighbor});
        return true;
      };
      bool found = false;
      for (auto y : ns)
        if ((found = try_y(y, true))) break;
      for (std::size_t y = 0; y < pts.size() && !found; ++y)
        if (!is_neighbour(y)) found = try_y(y, false);
      if (!found) {
        report.verdict = false;
        report.witnesses.push_back({"2a", {pts[v], pts[x]}, false, false});
      }
    }
  }

  for (std::size_t x = 0; x < pts.size(); ++x) {
    if (table[x]) continue;
    bool found = false;
    for (std::size_t y = 0; y < pts.size() && !found; ++y) {
      if (y == x) continue;
      auto z = idx.find(idx.key({idx.coords(x), idx.coords(x)}, {idx.coords(y)}));
      if (z) {
        report.witnesses.push_back({"2b", {pts[x], pts[y], pts[*z]}, true, false});
        found = true;
      }
    }
    if (!found) {
      report.verdict = false;
      report.witnesses.push_back({"2b", {pts[x]}, false, false});
    }
  }
  return report;
}

CriterionReport abundant_degree2(const LatticePolytope& p) {
  CriterionReport report;
  const auto& pts = p.lattice_points();
  PointIndex idx(pts, 2);
  auto table = neighbour_table(p, idx);
  std::unordered_map<std::uint64_t, std::size_t> fibre_size;
  fibre_size.reserve(pts.size() * (pts.size() + 1) / 2);
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i; j < pts.size(); ++j) ++fibre_size[*idx.key({idx.coords(i), idx.coords(j)})];

  auto excepted = [&](std::size_t v, std::size_t x) {
    if (!table[v]) return false;
    return x == v || std::binary_search(table[v]->begin(), table[v]->end(), x);
  };
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i; j < pts.size(); ++j) {
      if (excepted(i, j) || excepted(j, i)) continue;
      if (fibre_size[*idx.key({idx.coords(i), idx.coords(j)})] < 2) {
        report.verdict = false;
        report.witnesses.push_back({"abundance", {pts[i], pts[j]}, false, false});
      }
    }
  return report;
}

namespace {

// Indices of the lattice points reachable from vertex vi by its primitive edge steps.
std::vector<bool> reachable(const LatticePolytope& p, const PointIndex& idx, std::size_t vi) {
  const LatVec& vertex = p.vertices()[vi];
  std::vector<std::vector<std::int64_t>> steps;
  for (auto n : p.neighbors(vi)) steps.push_back(primitive(p.vertices()[n] - vertex).to_int64());
  std::vector<bool> seen(idx.size(), false);
  const std::size_t start = *idx.find(idx.key({vertex.to_int64().data()}));
  seen[start] = true;
  std::deque<std::size_t> queue{start};
  while (!queue.empty()) {
    std::size_t x = queue.front();
    queue.pop_front();
    for (const auto& st : steps) {
      auto y = idx.find(idx.key({idx.coords(x), st.data()}));
      if (y && !seen[*y]) {
        seen[*y] = true;
        queue.push_back(*y);
      }
    }
  }
  return seen;
}

void require_smooth_for_paths(const LatticePolytope& p) {
  if (!is_smooth(p).value) throw Error("Hilb_v-paths implemented for smooth polytopes");
}

}  // namespace

std::vector<LatVec> hilb_reachable(const LatticePolytope& p, const LatVec& vertex) {
  require_smooth_for_paths(p);
  auto vi = p.vertex_index(vertex);
  if (!vi) throw Error(vertex.to_string() + " is not a vertex");
  PointIndex idx(p.lattice_points(), 2);
  auto seen = reachable(p, idx, *vi);
  std::vector<LatVec> out;
  for (std::size_t i = 0; i < seen.size(); ++i)
    if (seen[i]) out.push_back(p.lattice_points()[i]);
  return out;
}

ConnectivityReport connectivity(const LatticePolytope& p) {
  require_smooth_for_paths(p);
  ConnectivityReport report;
  const auto& pts = p.lattice_points();
  PointIndex idx(pts, 2);
  std::vector<bool> reached_by_some(pts.size(), false);
  for (std::size_t vi = 0; vi < p.vertices().size(); ++vi) {
    auto seen = reachable(p, idx, vi);
    for (std::size_t i = 0; i < pts.size(); ++i)
      if (seen[i]) reached_by_some[i] = true;
    if (!report.superconnected) continue;
    for (std::size_t i = 0; i < pts.size(); ++i)
      if (!seen[i]) {
        report.superconnected = false;
        report.witnesses.push_back({"superconnected", {p.vertices()[vi], pts[i]}, false, false});
        break;
      }
  }
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (!reached_by_some[i]) {
      report.strongly_connected = false;
      report.witnesses.push_back({"strongly_connected", {pts[i]}, false, false});
      break;
    }
  return report;
}

EhrhartPositivity ehrhart_positive(const LatticePolytope& p) {
  EhrhartPositivity out;
  out.coefficients = ehrhart(p).poly_coeffs;
  out.positive = std::all_of(out.coefficients.begin(), out.coefficients.end(), [](const Rational& c) { return sgn(c) > 0; });
  return out;
}

}  // namespace toriscope
