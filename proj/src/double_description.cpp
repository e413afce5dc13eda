#include "toriscope/double_description.hpp"

#include <algorithm>
#include <cstdint>
#include <set>

#include "toriscope/errors.hpp"

namespace toriscope {

namespace {

class Bits {
 public:
  explicit Bits(std::size_t n = 0) : words_((n + 63) / 64, 0) {}
  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(__builtin_popcountll(w));
    return c;
  }
  bool subset_of(const Bits& other) const {
    for (std::size_t w = 0; w < words_.size(); ++w)
      if (words_[w] & ~other.words_[w]) return false;
    return true;
  }
  friend Bits operator&(const Bits& a, const Bits& b) {
    Bits out = a;
    for (std::size_t w = 0; w < out.words_.size(); ++w) out.words_[w] &= b.words_[w];
    return out;
  }

 private:
  std::vector<std::uint64_t> words_;
};

struct Ray {
  LatVec v;
  Bits zero;
};

}  // namespace

DualDescription double_description(const std::vector<LatVec>& inequalities, std::size_t dim) {
  std::vector<LatVec> constraints;
  {
    std::set<LatVec> seen;
    for (const auto& a : inequalities) {
      if (a.dim() != dim) throw ContractViolation("inequality of wrong dimension");
      if (a.is_zero()) continue;
      LatVec p = primitive(a);
      if (seen.insert(p).second) constraints.push_back(std::move(p));
    }
  }
  const std::size_t m = constraints.size();

  std::vector<LatVec> lineality;
  for (std::size_t i = 0; i < dim; ++i) lineality.push_back(LatVec::unit(dim, i));
  std::vector<Ray> rays;

  // Constraints cutting the lineality space come first; afterwards the one
  // with the fewest (positive, negative) ray pairs.
  std::vector<bool> done(m, false);
  Bits processed(m);
  auto choose = [&]() {
    for (std::size_t k = 0; k < m; ++k)
      if (!done[k] && std::any_of(lineality.begin(), lineality.end(),
                                  [&](const LatVec& l) { return sgn(dot(constraints[k], l)) != 0; }))
        return k;
    std::size_t best = m, best_cost = 0;
    for (std::size_t k = 0; k < m; ++k) {
      if (done[k]) continue;
      std::size_t pos = 0, neg = 0;
      for (const auto& r : rays) {
        int sg = sgn(dot(constraints[k], r.v));
        pos += sg > 0;
        neg += sg < 0;
      }
      if (best == m || pos * neg < best_cost) {
        best = k;
        best_cost = pos * neg;
      }
    }
    return best;
  };

  for (std::size_t step = 0; step < m; ++step) {
    const std::size_t k = choose();
    done[k] = true;
    const LatVec& a = constraints[k];

    auto lin = std::find_if(lineality.begin(), lineality.end(), [&](const LatVec& l) { return sgn(dot(a, l)) != 0; });
    if (lin != lineality.end()) {
      LatVec l = *lin;
      lineality.erase(lin);
      Integer al = dot(a, l);
      if (sgn(al) < 0) {
        l = -l;
        al = -al;
      }
      for (auto& other : lineality) {
        Integer c = dot(a, other);
        if (sgn(c) != 0) other = primitive(al * other - c * l);
      }
      for (auto& r : rays) {
        Integer c = dot(a, r.v);
        if (sgn(c) != 0) r.v = primitive(al * r.v - c * l);
        r.zero.set(k);
      }
      rays.push_back({std::move(l), processed});
      processed.set(k);
      continue;
    }

    std::vector<Integer> val(rays.size());
    std::vector<std::size_t> pos, neg;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      val[i] = dot(a, rays[i].v);
      if (sgn(val[i]) > 0) pos.push_back(i);
      else if (sgn(val[i]) < 0) neg.push_back(i);
    }
    if (neg.empty()) {
      for (std::size_t i = 0; i < rays.size(); ++i)
        if (sgn(val[i]) == 0) rays[i].zero.set(k);
      continue;
    }

    // Adjacent rays share at least D - 2 tight constraints, D the dimension modulo lineality.
    const std::size_t need = dim - lineality.size() >= 2 ? dim - lineality.size() - 2 : 0;
    std::vector<Ray> next;
    for (std::size_t p : pos)
      for (std::size_t n : neg) {
        Bits common = rays[p].zero & rays[n].zero;
        if (common.count() < need) continue;
        bool adjacent = true;
        for (std::size_t r = 0; r < rays.size() && adjacent; ++r) {
          if (r == p || r == n) continue;
          if (common.subset_of(rays[r].zero)) adjacent = false;
        }
        if (!adjacent) continue;
        LatVec v = primitive(val[p] * rays[n].v - val[n] * rays[p].v);
        common.set(k);
        next.push_back({std::move(v), std::move(common)});
      }
    for (std::size_t i = 0; i < rays.size(); ++i) {
      if (sgn(val[i]) < 0) continue;
      if (sgn(val[i]) == 0) rays[i].zero.set(k);
      next.push_back(std::move(rays[i]));
    }
    rays = std::move(next);
  }

  DualDescription out;
  for (auto& r : rays) out.rays.push_back(std::move(r.v));
  std::sort(out.rays.begin(), out.rays.end());
  out.rays.erase(std::unique(out.rays.begin(), out.rays.end()), out.rays.end());
  if (!lineality.empty()) out.lineality = saturated_span(lineality, dim).row_vectors();
  return out;
}

}  // namespace toriscope
