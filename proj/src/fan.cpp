#include "toriscope/fan.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "toriscope/double_description.hpp"

namespace toriscope {

namespace {

// Ray-index sets of the facets of a maximal cone.
std::vector<std::vector<std::size_t>> cone_facets(const std::vector<LatVec>& rays, const std::vector<std::size_t>& cone,
                                                  std::size_t dim) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<LatVec> gens;
  for (auto i : cone) gens.push_back(rays[i]);
  if (cone.size() == dim && rank(LatMatrix(gens, dim)) == dim) {
    for (std::size_t drop = 0; drop < cone.size(); ++drop) {
      std::vector<std::size_t> f;
      for (std::size_t j = 0; j < cone.size(); ++j)
        if (j != drop) f.push_back(cone[j]);
      out.push_back(std::move(f));
    }
    return out;
  }
  auto c = RationalCone::from_generators(gens, dim);
  for (const auto& h : c.support_hyperplanes()) {
    std::vector<std::size_t> f;
    for (auto i : cone)
      if (sgn(dot(h, rays[i])) == 0) f.push_back(i);
    out.push_back(std::move(f));
  }
  return out;
}

std::set<std::set<LatVec>> cone_sets(const Fan& f) {
  std::set<std::set<LatVec>> out;
  for (std::size_t c = 0; c < f.cones().size(); ++c) {
    auto r = f.cone_rays(c);
    out.emplace(r.begin(), r.end());
  }
  return out;
}

}  // namespace

Fan::Fan(std::size_t dim, std::vector<LatVec> rays, std::vector<std::vector<std::size_t>> cones) : dim_(dim) {
  for (auto& r : rays) {
    if (r.dim() != dim) throw ContractViolation("ray of the wrong dimension");
    rays_.push_back(primitive(r));
  }
  for (auto& c : cones) {
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    for (auto i : c)
      if (i >= rays_.size()) throw ContractViolation("cone refers to ray " + std::to_string(i) + " which does not exist");
  }
  cones_ = std::move(cones);

  simplicial_ = !cones_.empty();
  unimodular_ = !cones_.empty();
  bool full = !cones_.empty();
  for (const auto& c : cones_) {
    auto gens = std::vector<LatVec>();
    for (auto i : c) gens.push_back(rays_[i]);
    std::size_t r = gens.empty() ? 0 : rank(LatMatrix(gens, dim_));
    if (r != dim_) full = false;
    if (c.size() != dim_ || r != dim_) {
      simplicial_ = false;
      unimodular_ = false;
    } else if (abs(determinant(LatMatrix(gens, dim_))) != 1) {
      unimodular_ = false;
    }
  }
  complete_ = full;
  if (complete_) {
    std::map<std::vector<std::size_t>, int> count;
    for (const auto& c : cones_)
      for (auto& f : cone_facets(rays_, c, dim_)) ++count[f];
    complete_ = std::all_of(count.begin(), count.end(), [](const auto& kv) { return kv.second == 2; });
  }
}

std::vector<LatVec> Fan::cone_rays(std::size_t cone) const {
  std::vector<LatVec> out;
  for (auto i : cones_.at(cone)) out.push_back(rays_[i]);
  return out;
}

Integer Fan::multiplicity(std::size_t cone) const { return toriscope::multiplicity(cone_rays(cone)); }

std::optional<std::size_t> Fan::locate(const LatVec& x) const {
  for (std::size_t c = 0; c < cones_.size(); ++c) {
    auto gens = cone_rays(c);
    if (simplicial_) {
      LatMatrix g(gens, dim_);
      LatVec numer = x * adjugate(g);
      if (determinant(g) < 0) numer = -numer;
      if (std::all_of(numer.begin(), numer.end(), [](const Integer& v) { return sgn(v) >= 0; })) return c;
    } else if (RationalCone::from_generators(gens, dim_).contains(x)) {
      return c;
    }
  }
  return std::nullopt;
}

std::string Fan::to_text() const {
  std::ostringstream os;
  os << "fan " << dim_ << ' ' << rays_.size() << ' ' << cones_.size() << '\n';
  for (const auto& r : rays_) os << r.to_plain() << '\n';
  for (const auto& c : cones_) {
    for (std::size_t j = 0; j < c.size(); ++j) os << (j ? " " : "") << c[j];
    os << '\n';
  }
  return os.str();
}

bool fan_equals(const Fan& a, const Fan& b) {
  if (a.dim() != b.dim() || a.rays().size() != b.rays().size() || a.cones().size() != b.cones().size()) return false;
  std::set<LatVec> ra(a.rays().begin(), a.rays().end()), rb(b.rays().begin(), b.rays().end());
  if (ra != rb) return false;
  return cone_sets(a) == cone_sets(b);
}

Fan insert_ray(const Fan& fan, const LatVec& ray) {
  if (!fan.simplicial()) throw ContractViolation("stellar subdivision needs a simplicial fan");
  LatVec r = primitive(ray);
  if (std::find(fan.rays().begin(), fan.rays().end(), r) != fan.rays().end()) return fan;
  const std::size_t d = fan.dim();
  const std::size_t index = fan.rays().size();
  std::vector<std::vector<std::size_t>> cones;
  bool hit = false;
  for (std::size_t c = 0; c < fan.cones().size(); ++c) {
    const auto& cone = fan.cones()[c];
    LatMatrix g(fan.cone_rays(c), d);
    LatVec numer = r * adjugate(g);
    if (determinant(g) < 0) numer = -numer;
    if (!std::all_of(numer.begin(), numer.end(), [](const Integer& v) { return sgn(v) >= 0; })) {
      cones.push_back(cone);
      continue;
    }
    hit = true;
    for (std::size_t i = 0; i < d; ++i) {
      if (sgn(numer[i]) == 0) continue;
      auto piece = cone;
      piece[i] = index;
      cones.push_back(std::move(piece));
    }
  }
  if (!hit) throw Error("ray " + r.to_string() + " lies in no cone");
  auto rays = fan.rays();
  rays.push_back(r);
  return Fan(d, std::move(rays), std::move(cones));
}

Fan random_complete_fan(const RandomFanOptions& options) {
  const std::size_t d = options.dim;
  if (d < 2) throw ContractViolation("random fans need dimension at least 2");
  if (options.coord_bound < 1) throw ContractViolation("coordinate bound must be positive");
  for (std::size_t attempt = 0; attempt < options.max_attempts; ++attempt) {
    Rng rng(derive_seed(options.seed, "fan-points", attempt));
    std::vector<LatVec> points;
    for (const auto& f : options.forced_points) {
      LatVec p = primitive(f);
      if (std::find(points.begin(), points.end(), p) == points.end()) points.push_back(std::move(p));
    }
    const std::size_t target = points.size() + options.num_points;
    for (std::size_t tries = 0; points.size() < target && tries < 1000 * (options.num_points + 1); ++tries) {
      LatVec p(d);
      for (std::size_t j = 0; j < d; ++j) p[j] = static_cast<long>(rng.uniform(-options.coord_bound, options.coord_bound));
      if (p.is_zero()) continue;
      p = primitive(p);
      if (std::find(points.begin(), points.end(), p) == points.end()) points.push_back(std::move(p));
    }
    DualDescription dual = double_description(points, d);
    if (!dual.rays.empty() || !dual.lineality.empty()) continue;  // origin not interior

    // Radial perturbation turns the boundary subdivision into a regular triangulation.
    std::vector<LatVec> lifted;
    for (const auto& p : points) lifted.push_back(p * Integer(256 + rng.uniform(0, 15)));
    Hull hull = convex_hull(lifted);
    std::vector<std::vector<std::size_t>> cones;
    for (const auto& on : hull.facet_points) {
      if (on.size() == d) {
        cones.push_back(on);
        continue;
      }
      std::vector<LatVec> gens;
      for (auto i : on) gens.push_back(points[i]);
      for (const auto& sc : triangulate(RationalCone::from_generators(gens, d))) {
        std::vector<std::size_t> cone;
        for (const auto& g : sc.generators)
          cone.push_back(on[static_cast<std::size_t>(std::find(gens.begin(), gens.end(), g) - gens.begin())]);
        cones.push_back(std::move(cone));
      }
    }
    std::vector<std::size_t> used;
    for (const auto& c : cones) used.insert(used.end(), c.begin(), c.end());
    std::sort(used.begin(), used.end());
    used.erase(std::unique(used.begin(), used.end()), used.end());
    std::sort(used.begin(), used.end(), [&](std::size_t a, std::size_t b) { return points[a] < points[b]; });
    std::vector<std::size_t> remap(points.size());
    std::vector<LatVec> rays;
    for (std::size_t k = 0; k < used.size(); ++k) {
      remap[used[k]] = k;
      rays.push_back(points[used[k]]);
    }
    for (auto& c : cones)
      for (auto& i : c) i = remap[i];
    std::sort(cones.begin(), cones.end(), [](auto a, auto b) {
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      return a < b;
    });
    Fan fan(d, std::move(rays), std::move(cones));
    if (fan.complete() && fan.simplicial()) return fan;
  }
  throw Error("no complete simplicial fan found after " + std::to_string(options.max_attempts) + " attempts");
}

Fan desingularize(const Fan& fan, std::uint64_t seed, const FanLimits& limits, const HilbertOptions& options) {
  if (!fan.simplicial()) throw ContractViolation("desingularization needs a simplicial fan");
  const std::size_t d = fan.dim();
  Fan current = fan;
  for (std::uint64_t round = 0; !current.unimodular(); ++round) {
    std::vector<LatVec> insert;
    for (std::size_t c = 0; c < current.cones().size(); ++c) {
      if (current.multiplicity(c) == 1) continue;
      for (auto& h : hilbert_basis(RationalCone::from_generators(current.cone_rays(c), d), options))
        if (std::find(current.rays().begin(), current.rays().end(), h) == current.rays().end() &&
            std::find(insert.begin(), insert.end(), h) == insert.end())
          insert.push_back(std::move(h));
    }
    if (insert.empty()) throw Error("no refining vector found for a non-unimodular fan");
    Rng rng(derive_seed(seed, "desingularize", round));
    rng.shuffle(insert);
    for (const auto& h : insert) {
      if (std::find(current.rays().begin(), current.rays().end(), h) != current.rays().end()) continue;
      if (current.rays().size() + 1 > d + limits.max_extra_rays)
        throw LimitsExceeded("desingularization needs more than " + std::to_string(d + limits.max_extra_rays) + " rays");
      current = insert_ray(current, h);
      if (current.cones().size() > limits.max_cones)
        throw LimitsExceeded("desingularization needs more than " + std::to_string(limits.max_cones) + " cones");
    }
  }
  return current;
}

LatMatrix cartier_lattice(const Fan& fan) {
  if (!fan.simplicial()) throw ContractViolation("Cartier lattice needs a simplicial fan");
  const std::size_t s = fan.rays().size();
  const std::size_t d = fan.dim();
  LatMatrix basis = LatMatrix::identity(s);
  for (std::size_t c = 0; c < fan.cones().size(); ++c) {
    LatMatrix r(fan.cone_rays(c), d);
    Integer det = abs(determinant(r));
    if (det == 1) continue;
    LatMatrix adj_t = adjugate(r).transpose();
    const auto& cone = fan.cones()[c];
    const std::size_t k = basis.rows();
    // Coefficients c with (c * basis)_cone * adj(R)^T = 0 mod det.
    LatMatrix restricted(k, d);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < d; ++j) restricted(i, j) = basis(i, cone[j]);
    LatMatrix m = restricted * adj_t;  // k x d
    LatMatrix system(d, k + d);
    for (std::size_t j = 0; j < d; ++j) {
      for (std::size_t i = 0; i < k; ++i) system(j, i) = m(i, j);
      system(j, k + j) = det;
    }
    LatMatrix kernel = integer_kernel(system);
    std::vector<LatVec> coeffs;
    for (const auto& row : kernel.row_vectors()) {
      LatVec c2(k);
      for (std::size_t i = 0; i < k; ++i) c2[i] = row[i];
      coeffs.push_back(std::move(c2));
    }
    LatMatrix cbasis = lattice_basis(coeffs, k);
    basis = lattice_basis((cbasis * basis).row_vectors(), s);
  }
  return lattice_basis(basis.row_vectors(), s);
}

std::optional<LatVec> cone_vertex(const Fan& fan, std::size_t cone, const std::vector<Integer>& b) {
  const std::size_t d = fan.dim();
  LatMatrix r(fan.cone_rays(cone), d);
  Integer det = determinant(r);
  if (det == 0) throw ContractViolation("cone vertex of a degenerate cone");
  LatVec bs(d);
  for (std::size_t j = 0; j < d; ++j) bs[j] = -b[fan.cones()[cone][j]];
  LatVec numer = bs * adjugate(r).transpose();
  LatVec v(d);
  for (std::size_t j = 0; j < d; ++j) {
    if (!mpz_divisible_p(numer[j].get_mpz_t(), det.get_mpz_t())) return std::nullopt;
    mpz_divexact(v[j].get_mpz_t(), numer[j].get_mpz_t(), det.get_mpz_t());
  }
  return v;
}

LatticePolytope support_polytope(const Fan& fan, const std::vector<Integer>& b) {
  if (b.size() != fan.rays().size()) throw ContractViolation("support vector has the wrong length");
  std::vector<Facet> inequalities;
  for (std::size_t i = 0; i < b.size(); ++i) inequalities.push_back({fan.rays()[i], b[i]});
  return LatticePolytope::from_inequalities(inequalities, fan.dim());
}

std::string to_string(SupportMode mode) {
  return mode == SupportMode::hilbert_basis ? "hilbert_basis" : "extreme_rays";
}

std::string to_string(Projectivity verdict) {
  switch (verdict) {
    case Projectivity::projective:
      return "projective";
    case Projectivity::non_projective:
      return "non_projective";
    case Projectivity::no_minimal_found:
      return "no_minimal_found";
  }
  return "unknown";
}

SupportResult support_polytopes(const Fan& fan, SupportMode mode, const HilbertOptions& options) {
  if (!fan.complete() || !fan.simplicial()) throw ContractViolation("support polytopes need a complete simplicial fan");
  const std::size_t s = fan.rays().size();
  const std::size_t d = fan.dim();

  // Sublattice of the Cartier lattice with b vanishing on the base cone.
  LatMatrix cartier = cartier_lattice(fan);
  const auto& base = fan.cones().front();
  LatMatrix pinned(d, cartier.rows());
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t i = 0; i < cartier.rows(); ++i) pinned(j, i) = cartier(i, base[j]);
  LatMatrix k = integer_kernel(pinned) * cartier;
  const std::size_t m = k.rows();

  std::vector<LatVec> inequalities;
  std::set<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t a = 0; a < fan.cones().size(); ++a)
    for (std::size_t c = 0; c < fan.cones().size(); ++c) {
      if (a == c) continue;
      std::vector<std::size_t> extra;
      std::set_difference(fan.cones()[c].begin(), fan.cones()[c].end(), fan.cones()[a].begin(), fan.cones()[a].end(),
                          std::back_inserter(extra));
      if (extra.size() == 1) pairs.emplace(a, extra.front());
    }
  for (const auto& [cone, j] : pairs) {
    LatMatrix r(fan.cone_rays(cone), d);
    Integer det = determinant(r);
    LatVec row = fan.rays()[j] * adjugate(r);
    if (det > 0) row = -row;
    LatVec coef_b(s);
    for (std::size_t t = 0; t < d; ++t) coef_b[fan.cones()[cone][t]] += row[t];
    coef_b[j] += abs(det);
    LatVec ineq(m + 1);
    for (std::size_t t = 0; t < m; ++t) ineq[t] = dot(k.row(t), coef_b);
    ineq[m] = -abs(det);
    inequalities.push_back(std::move(ineq));
  }
  inequalities.push_back(LatVec::unit(m + 1, m));

  RationalCone ntilde = RationalCone::from_inequalities(inequalities, m + 1);
  std::vector<LatVec> elements =
      mode == SupportMode::hilbert_basis ? hilbert_basis(ntilde, options) : ntilde.generators();

  SupportResult result;
  result.minimality_guaranteed = mode == SupportMode::hilbert_basis;
  bool positive_height = false;
  std::vector<std::pair<SupportVector, LatticePolytope>> found;
  for (const auto& e : elements) {
    std::vector<Integer> b(s, Integer(0));
    for (std::size_t t = 0; t < m; ++t)
      for (std::size_t i = 0; i < s; ++i) b[i] += e[t] * k(t, i);
    if (sgn(e[m]) == 0) {
      result.recession.push_back(std::move(b));
      continue;
    }
    positive_height = true;
    if (e[m] != 1) continue;
    ++result.candidates;
    try {
      LatticePolytope p = support_polytope(fan, b);
      if (!fan_equals(normal_fan(p), fan)) {
        ++result.rejected;
        continue;
      }
      SupportVector sv{b, {}};
      for (std::size_t c = 0; c < fan.cones().size(); ++c) sv.vertex_map.push_back(*cone_vertex(fan, c, b));
      found.emplace_back(std::move(sv), std::move(p));
    } catch (const Error&) {
      ++result.rejected;
    }
  }
  for (std::size_t i = 0; i < found.size(); ++i) {
    bool minimal = true;
    for (std::size_t j = 0; j < found.size() && minimal; ++j) {
      if (i == j) continue;
      const auto& pi = found[i].second;
      const auto& pj = found[j].second;
      if (pi.contains(pj) && (!(pi == pj) || j < i)) minimal = false;
    }
    if (minimal) {
      result.vectors.push_back(found[i].first);
      result.polytopes.push_back(found[i].second);
    }
  }
  if (!result.polytopes.empty())
    result.verdict = Projectivity::projective;
  else if (positive_height)
    result.verdict = Projectivity::no_minimal_found;
  else
    result.verdict = Projectivity::non_projective;
  return result;
}

}  // namespace toriscope
