#include "toriscope/cone.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "toriscope/double_description.hpp"

namespace toriscope {

namespace {

std::vector<LatVec> clean_generators(const std::vector<LatVec>& generators, std::size_t dim) {
  std::vector<LatVec> out;
  std::unordered_set<LatVec, LatVecHash> seen;
  for (const auto& g : generators) {
    if (g.dim() != dim) throw ContractViolation("generator " + g.to_string() + " has the wrong dimension");
    if (g.is_zero()) continue;
    LatVec p = primitive(g);
    if (seen.insert(p).second) out.push_back(std::move(p));
  }
  return out;
}

// Normal of the hyperplane through k-1 vectors of Z^k (generalized cross product).
LatVec hyperplane_normal(const std::vector<LatVec>& vectors, std::size_t k) {
  LatVec n(k);
  if (k == 1) {
    n[0] = 1;
    return n;
  }
  for (std::size_t j = 0; j < k; ++j) {
    LatMatrix minor(k - 1, k - 1);
    for (std::size_t r = 0; r + 1 < k; ++r)
      for (std::size_t c = 0, cc = 0; c < k; ++c)
        if (c != j) minor(r, cc++) = vectors[r][c];
    n[j] = determinant(minor);
    if (j % 2 == 1) n[j] = -n[j];
  }
  return n;
}

// Coordinates of full-rank data in the saturated span lattice of `generators`.
struct SpanChart {
  LatMatrix basis;  // k x n
  std::vector<LatVec> to_chart(const std::vector<LatVec>& vectors) const {
    std::vector<LatVec> out;
    out.reserve(vectors.size());
    for (const auto& v : vectors) {
      auto c = coordinates_in(basis, v);
      if (!c) throw ContractViolation("vector " + v.to_string() + " is not in the span");
      out.push_back(std::move(*c));
    }
    return out;
  }
  LatVec from_chart(const LatVec& c) const { return c * basis; }
};

// Index sets of a placing triangulation of full-dimensional vectors in Z^k.
std::vector<std::vector<std::size_t>> placing_triangulation(const std::vector<LatVec>& gens, std::size_t k) {
  std::vector<std::size_t> initial;
  std::vector<LatVec> chosen;
  std::vector<bool> used(gens.size(), false);
  for (std::size_t i = 0; i < gens.size() && initial.size() < k; ++i) {
    chosen.push_back(gens[i]);
    if (rank(LatMatrix(chosen, k)) == chosen.size()) {
      initial.push_back(i);
      used[i] = true;
    } else {
      chosen.pop_back();
    }
  }
  if (initial.size() != k) throw ContractViolation("generators do not span the ambient space");

  std::vector<std::vector<std::size_t>> simplices{initial};
  struct Facet {
    LatVec normal;  // oriented towards the simplex
  };
  std::map<std::vector<std::size_t>, Facet> boundary;

  auto toggle_facets = [&](const std::vector<std::size_t>& simplex) {
    for (std::size_t drop = 0; drop < simplex.size(); ++drop) {
      std::vector<std::size_t> face;
      std::vector<LatVec> vecs;
      for (std::size_t j = 0; j < simplex.size(); ++j)
        if (j != drop) {
          face.push_back(simplex[j]);
          vecs.push_back(gens[simplex[j]]);
        }
      auto it = boundary.find(face);
      if (it != boundary.end()) {
        boundary.erase(it);
        continue;
      }
      LatVec n = hyperplane_normal(vecs, k);
      if (dot(n, gens[simplex[drop]]) < 0) n = -n;
      boundary.emplace(std::move(face), Facet{std::move(n)});
    }
  };
  toggle_facets(initial);

  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (used[i]) continue;
    std::vector<std::vector<std::size_t>> added;
    for (const auto& [face, facet] : boundary)
      if (dot(facet.normal, gens[i]) < 0) {
        auto s = face;
        s.push_back(i);
        std::sort(s.begin(), s.end());
        added.push_back(std::move(s));
      }
    for (const auto& s : added) {
      toggle_facets(s);
      simplices.push_back(s);
    }
  }
  for (auto& s : simplices) std::sort(s.begin(), s.end());
  return simplices;
}

std::vector<LatVec> full_dim_hilbert_basis(const std::vector<LatVec>& gens, const std::vector<LatVec>& facets,
                                           std::size_t k, const HilbertOptions& options) {
  auto tri = placing_triangulation(gens, k);
  std::vector<std::vector<LatVec>> simplex_gens;
  Integer total = 0;
  for (const auto& s : tri) {
    std::vector<LatVec> g;
    for (auto i : s) g.push_back(gens[i]);
    total += abs(determinant(LatMatrix(g, k)));
    simplex_gens.push_back(std::move(g));
  }
  if (total > Integer(static_cast<unsigned long>(options.max_candidates)))
    throw LimitsExceeded("Hilbert basis needs " + total.get_str() + " candidates (cap " +
                         std::to_string(options.max_candidates) + ")");

  std::size_t workers = std::max<std::size_t>(1, std::min(options.threads, simplex_gens.size()));
  std::vector<std::vector<LatVec>> parts(workers);
  auto work = [&](std::size_t w) {
    for (std::size_t s = w; s < simplex_gens.size(); s += workers) {
      auto pts = parallelepiped_points(simplex_gens[s]);
      parts[w].insert(parts[w].end(), std::make_move_iterator(pts.begin()), std::make_move_iterator(pts.end()));
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }

  std::vector<LatVec> candidates(gens);
  for (auto& p : parts) candidates.insert(candidates.end(), std::make_move_iterator(p.begin()), std::make_move_iterator(p.end()));
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  struct Graded {
    Integer grade;
    std::vector<Integer> values;
    std::size_t index;
  };
  std::vector<Graded> graded;
  graded.reserve(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    Graded g{0, {}, i};
    for (const auto& f : facets) {
      g.values.push_back(dot(f, candidates[i]));
      g.grade += g.values.back();
    }
    graded.push_back(std::move(g));
  }
  std::sort(graded.begin(), graded.end(), [&](const Graded& a, const Graded& b) {
    if (a.grade != b.grade) return a.grade < b.grade;
    return candidates[a.index] < candidates[b.index];
  });

  std::vector<const Graded*> accepted;
  for (const auto& x : graded) {
    bool reducible = std::any_of(accepted.begin(), accepted.end(), [&](const Graded* h) {
      if (h->grade >= x.grade) return false;
      for (std::size_t j = 0; j < x.values.size(); ++j)
        if (h->values[j] > x.values[j]) return false;
      return true;
    });
    if (!reducible) accepted.push_back(&x);
  }
  std::vector<LatVec> out;
  for (const auto* h : accepted) out.push_back(candidates[h->index]);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

RationalCone RationalCone::from_generators(const std::vector<LatVec>& generators, std::size_t dim) {
  RationalCone c;
  c.ambient_dim_ = dim;
  c.generators_ = clean_generators(generators, dim);
  if (c.generators_.empty()) {
    for (std::size_t i = 0; i < dim; ++i) c.equations_.push_back(LatVec::unit(dim, i));
    return c;
  }
  DualDescription dual = double_description(c.generators_, dim);
  c.hyperplanes_ = dual.rays;
  c.equations_ = dual.lineality;
  c.dim_ = dim - c.equations_.size();
  std::vector<LatVec> all = dual.rays;
  all.insert(all.end(), dual.lineality.begin(), dual.lineality.end());
  c.pointed_ = rank(LatMatrix(all, dim)) == dim;
  return c;
}

namespace {

// True iff the vectors span a space of dimension >= target.
bool rank_at_least(const std::vector<const LatVec*>& vectors, std::size_t target) {
  if (target == 0) return true;
  std::vector<LatVec> basis;
  std::vector<std::size_t> pivots;
  for (const LatVec* v : vectors) {
    LatVec w = *v;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      const Integer c = w[pivots[i]];
      if (sgn(c) != 0) w = basis[i][pivots[i]] * w - c * basis[i];
    }
    auto nz = std::find_if(w.begin(), w.end(), [](const Integer& x) { return sgn(x) != 0; });
    if (nz == w.end()) continue;
    pivots.push_back(static_cast<std::size_t>(nz - w.begin()));
    basis.push_back(primitive(w));
    if (basis.size() >= target) return true;
  }
  return false;
}

}  // namespace

RationalCone RationalCone::from_inequalities(const std::vector<LatVec>& inequalities, std::size_t dim) {
  DualDescription primal = double_description(inequalities, dim);
  if (!primal.lineality.empty()) throw NonPointedCone(primal.lineality.front());
  std::vector<const LatVec*> all;
  for (const auto& r : primal.rays) all.push_back(&r);
  if (dim < 2 || !rank_at_least(all, dim)) return from_generators(primal.rays, dim);

  // Full-dimensional: the rays are extreme and the facets are the inequalities
  // whose tight rays span a hyperplane.
  RationalCone c;
  c.ambient_dim_ = dim;
  c.dim_ = dim;
  c.generators_ = primal.rays;
  std::set<LatVec> facets;
  for (const auto& a : inequalities) {
    if (a.is_zero()) continue;
    LatVec h = primitive(a);
    if (facets.count(h)) continue;
    std::vector<const LatVec*> tight;
    for (const auto& r : primal.rays)
      if (sgn(dot(h, r)) == 0) tight.push_back(&r);
    if (rank_at_least(tight, dim - 1)) facets.insert(std::move(h));
  }
  c.hyperplanes_.assign(facets.begin(), facets.end());
  return c;
}

bool RationalCone::contains(const LatVec& x) const {
  for (const auto& e : equations_)
    if (sgn(dot(e, x)) != 0) return false;
  for (const auto& h : hyperplanes_)
    if (dot(h, x) < 0) return false;
  return true;
}

std::vector<LatVec> RationalCone::extreme_rays() const {
  if (!pointed_) throw ContractViolation("extreme rays of a non-pointed cone");
  std::vector<LatVec> out;
  if (dim_ == 0) return out;
  for (const auto& g : generators_) {
    std::vector<LatVec> tight(equations_);
    for (const auto& h : hyperplanes_)
      if (sgn(dot(h, g)) == 0) tight.push_back(h);
    if (rank(LatMatrix(tight, ambient_dim_)) == ambient_dim_ - 1) out.push_back(g);
  }
  return out;
}

bool RationalCone::same_cone(const RationalCone& other) const {
  if (ambient_dim_ != other.ambient_dim_) return false;
  for (const auto& g : generators_)
    if (!other.contains(g)) return false;
  for (const auto& g : other.generators_)
    if (!contains(g)) return false;
  return true;
}

std::vector<LatVec> support_hyperplanes(const std::vector<LatVec>& generators) {
  if (generators.empty()) throw ContractViolation("support hyperplanes of an empty generator list");
  auto cone = RationalCone::from_generators(generators, generators.front().dim());
  if (!cone.pointed()) {
    for (const auto& g : cone.generators()) {
      bool on_all = std::all_of(cone.support_hyperplanes().begin(), cone.support_hyperplanes().end(),
                                [&](const LatVec& h) { return sgn(dot(h, g)) == 0; });
      if (on_all) throw NonPointedCone(g);
    }
    throw NonPointedCone(cone.generators().front());
  }
  return cone.support_hyperplanes();
}

std::vector<SimplicialCone> triangulate(const RationalCone& cone) {
  if (!cone.pointed()) throw ContractViolation("triangulation of a non-pointed cone");
  std::vector<SimplicialCone> out;
  if (cone.dim() == 0) return out;
  const auto& gens = cone.generators();
  std::vector<std::vector<std::size_t>> tri;
  if (cone.full_dimensional()) {
    tri = placing_triangulation(gens, cone.dim());
  } else {
    SpanChart chart{saturated_span(gens, cone.ambient_dim())};
    tri = placing_triangulation(chart.to_chart(gens), cone.dim());
  }
  for (const auto& s : tri) {
    SimplicialCone sc;
    for (auto i : s) sc.generators.push_back(gens[i]);
    sc.multiplicity = multiplicity(sc.generators);
    out.push_back(std::move(sc));
  }
  return out;
}

Integer multiplicity(const std::vector<LatVec>& generators) {
  if (generators.empty()) return 1;
  std::size_t n = generators.front().dim();
  std::size_t k = generators.size();
  if (rank(LatMatrix(generators, n)) != k) throw ContractViolation("multiplicity of dependent generators");
  if (k == n) return abs(determinant(LatMatrix(generators, n)));
  SpanChart chart{saturated_span(generators, n)};
  return abs(determinant(LatMatrix(chart.to_chart(generators), k)));
}

std::vector<LatVec> parallelepiped_points(const std::vector<LatVec>& generators) {
  std::size_t k = generators.size();
  if (k == 0) return {};
  LatMatrix g(generators, generators.front().dim());
  if (g.cols() != k) throw ContractViolation("parallelepiped needs a square generator matrix");
  Integer det = determinant(g);
  if (det == 0) throw ContractViolation("parallelepiped of dependent generators");
  Integer d = abs(det);
  int sign = sgn(det);
  std::vector<LatVec> out;
  if (d == 1) return out;

  // Z^k / (lattice of G) is covered by the box of the Hermite diagonal.
  HermiteResult h = hermite_normal_form(g);
  std::vector<unsigned long> radix(k);
  for (std::size_t j = 0; j < k; ++j) radix[j] = h.H(j, j).get_ui();
  LatMatrix adj = adjugate(g);  // a * adj / det = coefficients of a in G
  std::vector<unsigned long> a(k, 0);
  LatVec numer(k);
  out.reserve(d.get_ui());
  while (true) {
    std::size_t j = 0;
    for (; j < k; ++j) {
      if (++a[j] < radix[j]) {
        numer += adj.row(j);
        break;
      }
      a[j] = 0;
      numer -= Integer(static_cast<unsigned long>(radix[j] - 1)) * adj.row(j);
    }
    if (j == k) break;
    LatVec point(k);
    for (std::size_t i = 0; i < k; ++i) {
      Integer r = mod_floor(sign > 0 ? numer[i] : Integer(-numer[i]), d);
      if (sgn(r) != 0) point += r * generators[i];
    }
    for (std::size_t i = 0; i < k; ++i) mpz_divexact(point[i].get_mpz_t(), point[i].get_mpz_t(), d.get_mpz_t());
    if (!point.is_zero()) out.push_back(std::move(point));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<LatVec> hilbert_basis(const RationalCone& cone, const HilbertOptions& options) {
  if (!cone.pointed()) {
    support_hyperplanes(cone.generators());  // throws with a witness
  }
  if (cone.dim() == 0) return {};
  if (cone.full_dimensional())
    return full_dim_hilbert_basis(cone.generators(), cone.support_hyperplanes(), cone.dim(), options);
  SpanChart chart{saturated_span(cone.generators(), cone.ambient_dim())};
  auto gens = chart.to_chart(cone.generators());
  auto facets = RationalCone::from_generators(gens, cone.dim()).support_hyperplanes();
  std::vector<LatVec> out;
  for (const auto& c : full_dim_hilbert_basis(gens, facets, cone.dim(), options)) out.push_back(chart.from_chart(c));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<LatVec> monoid_hilbert_basis(const std::vector<LatVec>& generators) {
  if (generators.empty()) return {};
  std::size_t n = generators.front().dim();
  std::vector<LatVec> gens;
  for (const auto& g : generators)
    if (!g.is_zero()) gens.push_back(g);
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  if (gens.empty()) return {};
  auto cone = RationalCone::from_generators(gens, n);
  if (!cone.pointed()) support_hyperplanes(gens);

  auto grade = [&](const LatVec& x) {
    Integer s = 0;
    for (const auto& h : cone.support_hyperplanes()) s += dot(h, x);
    return s;
  };
  std::vector<Integer> grades;
  for (const auto& g : gens) grades.push_back(grade(g));

  std::unordered_map<LatVec, bool, LatVecHash> memo;
  std::function<bool(const LatVec&)> member = [&](const LatVec& x) -> bool {
    if (x.is_zero()) return true;
    auto it = memo.find(x);
    if (it != memo.end()) return it->second;
    bool result = false;
    if (cone.contains(x)) {
      Integer gx = grade(x);
      for (std::size_t i = 0; i < gens.size() && !result; ++i)
        if (grades[i] <= gx && member(x - gens[i])) result = true;
    }
    memo.emplace(x, result);
    return result;
  };

  std::vector<LatVec> out;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    bool reducible = false;
    for (std::size_t j = 0; j < gens.size() && !reducible; ++j)
      if (j != i && grades[j] <= grades[i] && member(gens[i] - gens[j])) reducible = true;
    if (!reducible) out.push_back(gens[i]);
  }
  return out;
}

std::vector<SimplicialCone> stellar_subdivide(const std::vector<SimplicialCone>& cones, const LatVec& ray) {
  if (ray.is_zero()) throw ContractViolation("stellar subdivision at the zero vector");
  LatVec r = primitive(ray);
  std::size_t n = r.dim();
  std::vector<SimplicialCone> out;
  bool hit = false;
  for (const auto& c : cones) {
    if (c.generators.size() != n) throw ContractViolation("stellar subdivision needs full-dimensional simplicial cones");
    LatMatrix g(c.generators, n);
    Integer det = determinant(g);
    LatVec numer = r * adjugate(g);
    if (sgn(det) < 0) numer = -numer;
    bool inside = std::all_of(numer.begin(), numer.end(), [](const Integer& x) { return sgn(x) >= 0; });
    bool is_generator = std::find(c.generators.begin(), c.generators.end(), r) != c.generators.end();
    if (!inside || is_generator) {
      if (inside) hit = true;
      out.push_back(c);
      continue;
    }
    hit = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (sgn(numer[i]) == 0) continue;
      SimplicialCone piece{c.generators, 0};
      piece.generators[i] = r;
      piece.multiplicity = abs(determinant(LatMatrix(piece.generators, n)));
      out.push_back(std::move(piece));
    }
  }
  if (!hit) throw Error("ray " + r.to_string() + " lies in no cone");
  return out;
}

bool dplus1_hilbert_criterion(const std::vector<LatVec>& generators) {
  if (generators.empty()) throw ContractViolation("criterion needs generators");
  std::size_t d = generators.front().dim();
  if (generators.size() != d + 1) throw ContractViolation("criterion needs exactly d+1 generators");
  auto cone = RationalCone::from_generators(generators, d);
  if (!cone.full_dimensional() || !cone.pointed())
    throw ContractViolation("criterion needs a full-dimensional pointed cone");
  for (const auto& f : cone.support_hyperplanes()) {
    std::vector<LatVec> on, off;
    for (const auto& g : generators) (sgn(dot(f, g)) == 0 ? on : off).push_back(g);
    bool ok = std::any_of(off.begin(), off.end(), [&](const LatVec& r) {
      auto vs = on;
      vs.push_back(r);
      return generates_lattice(vs, d);
    });
    if (!ok) return false;
  }
  return true;
}

}  // namespace toriscope
