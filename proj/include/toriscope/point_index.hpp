#pragma once

// Hashed membership for the lattice points of a polytope and for sums of a
// bounded number of them, using int64 coordinates packed into one key over a
// box containing P, 2P, ..., kP.

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "toriscope/lattice.hpp"

namespace toriscope {

class PointIndex {
 public:
  /// Throws LimitsExceeded if coordinates or the box do not fit in 64 bits.
  PointIndex(const std::vector<LatVec>& points, unsigned max_level);

  std::size_t size() const { return n_; }
  std::size_t dim() const { return d_; }
  const std::int64_t* coords(std::size_t i) const { return &coords_[i * d_]; }
  std::vector<std::int64_t> to_coords(const LatVec& v) const { return v.to_int64(); }

  /// Packed key of y = sum of plus rows minus sum of minus rows of the given
  /// coordinate arrays; empty if y leaves the box.
  std::optional<std::uint64_t> key(std::initializer_list<const std::int64_t*> plus,
                                   std::initializer_list<const std::int64_t*> minus = {}) const;

  /// Index of the lattice point with the given key.
  std::optional<std::size_t> find(std::optional<std::uint64_t> k) const {
    if (!k) return std::nullopt;
    auto it = index_.find(*k);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

 private:
  std::size_t n_ = 0;
  std::size_t d_ = 0;
  std::vector<std::int64_t> coords_;
  std::vector<std::int64_t> lo_;
  std::vector<std::int64_t> span_;
  std::vector<std::uint64_t> stride_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
};

}  // namespace toriscope
