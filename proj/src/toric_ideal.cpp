#include "toriscope/toric_ideal.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "toriscope/point_index.hpp"
#include "toriscope/random.hpp"

namespace toriscope {

namespace {

std::size_t pair_rank(std::size_t i, std::size_t j) { return j * (j + 1) / 2 + i; }  // i <= j
std::size_t triple_rank(std::size_t i, std::size_t j, std::size_t k) {             // i <= j <= k
  return k * (k + 1) * (k + 2) / 6 + j * (j + 1) / 2 + i;
}

// a < b in graded reverse lexicographic order; both sorted ascending, same length.
bool grevlex_less(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  for (std::size_t t = a.size(); t-- > 0;)
    if (a[t] != b[t]) return a[t] > b[t];
  return false;
}

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0u); }
  std::uint32_t find(std::uint32_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  bool unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (a < b) std::swap(a, b);
    parent_[a] = b;
    return true;
  }

 private:
  std::vector<std::uint32_t> parent_;
};

// Degree-2 fibres: pairs (i <= j) grouped by their sum, pairs in lexicographic order.
std::vector<std::vector<std::pair<std::size_t, std::size_t>>> degree2_fibres(const std::vector<LatVec>& points) {
  std::map<LatVec, std::size_t> index;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> fibres;
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i; j < points.size(); ++j) {
      auto [it, fresh] = index.emplace(points[i] + points[j], fibres.size());
      if (fresh) fibres.emplace_back();
      fibres[it->second].emplace_back(i, j);
    }
  return fibres;
}

// Membership of lattice points and of sums of two lattice points, for
// multidegrees of height 3.  With `normal` the sums are the lattice points of
// 2P and are tested against the facets instead of being tabulated.
class PointTables {
 public:
  PointTables(const LatticePolytope& p, bool normal) : pts_(p.lattice_points()), index_(pts_, 3), normal_(normal) {
    if (normal) {
      for (const auto& f : p.facets()) {
        auto n = f.normal.to_int64();
        for (auto a : n)
          if (a > (1 << 20) || a < -(1 << 20)) throw LimitsExceeded("facet normal too large for the degree-3 probe");
        if (!f.offset.fits_slong_p()) throw LimitsExceeded("facet offset too large for the degree-3 probe");
        facets_.insert(facets_.end(), n.begin(), n.end());
        offsets2_.push_back(2 * f.offset.get_si());
      }
      return;
    }
    sums_.reserve(pts_.size() * (pts_.size() + 1) / 2);
    for (std::size_t i = 0; i < pts_.size(); ++i)
      for (std::size_t k = i; k < pts_.size(); ++k) sums_.insert(*index_.key({index_.coords(i), index_.coords(k)}));
  }

  DivisorComplex complex(const LatVec& degree) const {
    auto c = degree.to_int64();
    DivisorComplex dc;
    dc.degree = degree;
    auto verts = vertices(c);
    if (verts.empty()) throw Error(degree.to_string() + " is not a sum of three lattice points");
    UnionFind uf(verts.size());
    for (std::size_t a = 0; a < verts.size(); ++a)
      for (std::size_t b = a + 1; b < verts.size(); ++b)
        if (edge(c, verts[a], verts[b])) {
          dc.edges.emplace_back(a, b);
          uf.unite(static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b));
        }
    for (auto v : verts) dc.vertices.push_back(pts_[v]);
    std::map<std::uint32_t, std::vector<LatVec>> groups;
    for (std::size_t a = 0; a < verts.size(); ++a) groups[uf.find(static_cast<std::uint32_t>(a))].push_back(dc.vertices[a]);
    for (auto& [root, members] : groups) dc.components.push_back(std::move(members));
    std::sort(dc.components.begin(), dc.components.end());
    dc.connected = dc.components.size() == 1;
    return dc;
  }

  // Connectivity only, without materializing edges.
  bool connected(const std::vector<std::int64_t>& c) const {
    auto verts = vertices(c);
    if (verts.size() <= 1) return true;
    std::vector<bool> seen(verts.size(), false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    std::size_t reached = 1;
    while (!stack.empty()) {
      std::size_t a = stack.back();
      stack.pop_back();
      for (std::size_t b = 0; b < verts.size(); ++b)
        if (!seen[b] && edge(c, verts[a], verts[b])) {
          seen[b] = true;
          ++reached;
          stack.push_back(b);
        }
    }
    return reached == verts.size();
  }

 private:
  std::vector<std::size_t> vertices(const std::vector<std::int64_t>& c) const {
    std::vector<std::size_t> out;
    const std::size_t d = c.size();
    for (std::size_t i = 0; i < pts_.size(); ++i) {
      if (normal_) {
        const std::int64_t* x = index_.coords(i);
        bool inside = true;
        for (std::size_t f = 0; f < offsets2_.size() && inside; ++f) {
          std::int64_t v = offsets2_[f];
          for (std::size_t j = 0; j < d; ++j) v += facets_[f * d + j] * (c[j] - x[j]);
          inside = v >= 0;
        }
        if (inside) out.push_back(i);
        continue;
      }
      auto k = index_.key({c.data()}, {index_.coords(i)});
      if (k && sums_.count(*k)) out.push_back(i);
    }
    return out;
  }
  bool edge(const std::vector<std::int64_t>& c, std::size_t a, std::size_t b) const {
    return index_.find(index_.key({c.data()}, {index_.coords(a), index_.coords(b)})).has_value();
  }

  const std::vector<LatVec>& pts_;
  PointIndex index_;
  bool normal_;
  std::unordered_set<std::uint64_t> sums_;
  std::vector<std::int64_t> facets_;  // row-major facet normals
  std::vector<std::int64_t> offsets2_;
};

}  // namespace

Exponents monomial(std::vector<std::size_t> variables) {
  std::sort(variables.begin(), variables.end());
  Exponents e;
  for (auto v : variables) {
    if (!e.empty() && e.back().first == v)
      ++e.back().second;
    else
      e.emplace_back(v, 1u);
  }
  return e;
}

LatVec multidegree(const Exponents& e, const std::vector<LatVec>& points) {
  LatVec s(points.front().dim());
  for (const auto& [v, k] : e) s += points[v] * Integer(k);
  return s;
}

std::string to_string(const ExponentBinomial& b, const std::vector<LatVec>& points) {
  auto side = [&](const Exponents& e) {
    std::ostringstream os;
    bool first = true;
    for (const auto& [v, k] : e)
      for (unsigned t = 0; t < k; ++t) {
        os << (first ? "" : "*") << "X_" << points[v].to_string();
        first = false;
      }
    return os.str();
  };
  return side(b.plus) + " - " + side(b.minus);
}

std::vector<ExponentBinomial> degree2_binomials(const LatticePolytope& p) {
  std::vector<ExponentBinomial> out;
  for (const auto& fibre : degree2_fibres(p.lattice_points()))
    for (std::size_t u = 0; u < fibre.size(); ++u)
      for (std::size_t v = u + 1; v < fibre.size(); ++v)
        out.push_back({monomial({fibre[u].first, fibre[u].second}), monomial({fibre[v].first, fibre[v].second}), 2});
  return out;
}

Degree3Result needs_degree3_generators(const LatticePolytope& p, const Degree3Options& options) {
  const auto& pts = p.lattice_points();
  const std::size_t n = pts.size();
  if (n > options.max_points)
    throw LimitsExceeded("degree-3 Gröbner computation limited to " + std::to_string(options.max_points) +
                         " lattice points, polytope has " + std::to_string(n));
  if (!is_normal(p).value) throw Error("h-vector comparison requires normality");

  Degree3Result result;

  // Degree 2: every non-minimal monomial of a fibre reduces to the minimal one.
  std::vector<bool> lt2(pair_rank(n - 1, n - 1) + 1, false);
  std::vector<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> g2;
  auto fibres = degree2_fibres(pts);
  for (const auto& fibre : fibres) {
    std::vector<std::size_t> best{fibre.front().first, fibre.front().second};
    for (const auto& [i, j] : fibre)
      if (grevlex_less({i, j}, best)) best = {i, j};
    for (const auto& [i, j] : fibre)
      if (std::vector<std::size_t>{i, j} != best) {
        lt2[pair_rank(i, j)] = true;
        g2.push_back({{i, j}, best});
      }
  }
  result.gb2_size = g2.size();

  // Degree 3: X_t * lead ~ X_t * trail, one union-find over all cubic monomials.
  const std::size_t total = triple_rank(n - 1, n - 1, n - 1) + 1;
  UnionFind uf(total);
  std::vector<std::size_t> order_t(n);
  std::iota(order_t.begin(), order_t.end(), 0);
  if (options.shuffle_seed) {
    Rng rng(derive_seed(*options.shuffle_seed, "degree3-order"));
    rng.shuffle(g2);
    rng.shuffle(order_t);
  }
  auto rank3 = [](std::size_t a, std::size_t b, std::size_t c) {
    std::size_t v[3] = {a, b, c};
    std::sort(v, v + 3);
    return static_cast<std::uint32_t>(triple_rank(v[0], v[1], v[2]));
  };
  std::size_t unions = 0;
  for (const auto& [lead, trail] : g2)
    for (auto t : order_t)
      if (uf.unite(rank3(lead[0], lead[1], t), rank3(trail[0], trail[1], t))) ++unions;
  const std::size_t components = total - unions;

  const std::size_t dim = p.dim();
  Integer h0 = 1, h1 = static_cast<unsigned long>(n), h2 = static_cast<unsigned long>(fibres.size()),
          h3 = static_cast<unsigned long>(components);
  result.hilbert = {h0, h1, h2, h3};
  std::vector<Integer> hf{h0, h1, h2, h3};
  for (std::size_t k = 0; k <= 3; ++k) {
    Integer h = 0;
    for (std::size_t i = 0; i <= k; ++i) {
      Integer binom;
      mpz_bin_uiui(binom.get_mpz_t(), dim + 1, i);
      if (i % 2 == 0)
        h += binom * hf[k - i];
      else
        h -= binom * hf[k - i];
    }
    result.h_vector.push_back(h);
  }
  EhrhartData e = ehrhart(p);
  for (std::size_t k = 0; k <= 3; ++k) result.ehrhart_hstar.push_back(k < e.hstar.size() ? e.hstar[k] : Integer(0));
  result.needs_degree3 = result.h_vector[3] != result.ehrhart_hstar[3];

  // Standard monomial of each component, Gröbner elements, offending multidegrees.
  auto pack = [](std::size_t i, std::size_t j, std::size_t k) {
    return static_cast<std::uint32_t>((i << 20) | (j << 10) | k);
  };
  auto unpack = [](std::uint32_t x) {
    return std::vector<std::size_t>{(x >> 20) & 1023u, (x >> 10) & 1023u, x & 1023u};
  };
  const std::uint32_t none = UINT32_MAX;
  std::vector<std::uint32_t> standard(total, none);
  std::uint32_t r = 0;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j <= k; ++j)
      for (std::size_t i = 0; i <= j; ++i, ++r) {
        std::uint32_t root = uf.find(r);
        if (standard[root] == none || grevlex_less({i, j, k}, unpack(standard[root]))) standard[root] = pack(i, j, k);
      }
  std::map<LatVec, std::uint32_t> first_root;
  std::set<LatVec> offending;
  r = 0;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j <= k; ++j)
      for (std::size_t i = 0; i <= j; ++i, ++r) {
        std::uint32_t root = uf.find(r);
        if (result.needs_degree3) {
          LatVec s = pts[i] + pts[j] + pts[k];
          auto [it, fresh] = first_root.emplace(s, root);
          if (!fresh && it->second != root) offending.insert(s);
        }
        if (standard[root] == pack(i, j, k)) continue;
        if (lt2[pair_rank(i, j)] || lt2[pair_rank(i, k)] || lt2[pair_rank(j, k)]) continue;
        result.gb3.push_back({{i, j, k}, unpack(standard[root])});
      }
  std::sort(result.gb3.begin(), result.gb3.end());
  if (!offending.empty()) result.multidegree = *offending.begin();
  return result;
}

DivisorComplex squarefree_divisor_complex(const LatticePolytope& p, const LatVec& c) {
  if (c.dim() != p.dim()) throw ContractViolation("multidegree of the wrong dimension");
  return PointTables(p, false).complex(c);
}

std::vector<LatVec> random_degree3_probe(const LatticePolytope& p, std::uint64_t seed, std::size_t trials) {
  const auto& pts = p.lattice_points();
  PointTables tables(p, true);
  Rng rng(derive_seed(seed, "degree3-probe"));
  std::set<LatVec> seen;
  std::vector<LatVec> out;
  for (std::size_t t = 0; t < trials; ++t) {
    LatVec c = pts[rng.index(pts.size())] + pts[rng.index(pts.size())] + pts[rng.index(pts.size())];
    if (!seen.insert(c).second) continue;
    if (!tables.connected(c.to_int64())) out.push_back(c);
  }
  return out;
}

}  // namespace toriscope
