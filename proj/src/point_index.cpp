#include "toriscope/point_index.hpp"

#include <algorithm>

#include "toriscope/errors.hpp"

namespace toriscope {

PointIndex::PointIndex(const std::vector<LatVec>& points, unsigned max_level) : n_(points.size()) {
  if (points.empty()) throw ContractViolation("point index of an empty set");
  if (max_level == 0) throw ContractViolation("point index level must be positive");
  d_ = points.front().dim();
  std::vector<std::int64_t> lo(d_), hi(d_);
  coords_.reserve(n_ * d_);
  for (std::size_t i = 0; i < n_; ++i) {
    auto c = points[i].to_int64();
    for (std::size_t j = 0; j < d_; ++j) {
      if (i == 0 || c[j] < lo[j]) lo[j] = c[j];
      if (i == 0 || c[j] > hi[j]) hi[j] = c[j];
      coords_.push_back(c[j]);
    }
  }
  const std::int64_t limit = std::int64_t{1} << 40;
  lo_.resize(d_);
  span_.resize(d_);
  stride_.resize(d_);
  unsigned __int128 total = 1;
  for (std::size_t j = 0; j < d_; ++j) {
    if (lo[j] < -limit || hi[j] > limit) throw LimitsExceeded("coordinates too large for a point index");
    const std::int64_t k = max_level;
    lo_[j] = std::min(lo[j], k * lo[j]);
    span_[j] = std::max(hi[j], k * hi[j]) - lo_[j] + 1;
    stride_[j] = static_cast<std::uint64_t>(total);
    total *= static_cast<std::uint64_t>(span_[j]);
    if (total > (static_cast<unsigned __int128>(1) << 62)) throw LimitsExceeded("bounding box too large for a point index");
  }
  index_.reserve(n_);
  for (std::size_t i = 0; i < n_; ++i) index_.emplace(*key({coords(i)}), i);
}

std::optional<std::uint64_t> PointIndex::key(std::initializer_list<const std::int64_t*> plus,
                                             std::initializer_list<const std::int64_t*> minus) const {
  std::uint64_t k = 0;
  for (std::size_t j = 0; j < d_; ++j) {
    std::int64_t y = -lo_[j];
    for (const auto* p : plus) y += p[j];
    for (const auto* m : minus) y -= m[j];
    if (y < 0 || y >= span_[j]) return std::nullopt;
    k += static_cast<std::uint64_t>(y) * stride_[j];
  }
  return k;
}

}  // namespace toriscope
