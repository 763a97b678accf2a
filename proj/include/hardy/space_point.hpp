#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>

#include "hardy/error.hpp"

namespace hardy {

// Fixed-capacity coordinate tuple. Points live in tight sampling loops, so the
// storage is inline rather than heap allocated.
class SpacePoint {
 public:
  static constexpr std::size_t kMaxDim = 16;

  SpacePoint() = default;
  explicit SpacePoint(std::size_t dim) : n_(dim) {
    require(dim <= kMaxDim, "point dimension exceeds " + std::to_string(kMaxDim));
  }
  SpacePoint(std::initializer_list<double> coords) : SpacePoint(coords.size()) {
    std::size_t i = 0;
    for (double c : coords) c_[i++] = c;
  }

  std::size_t dim() const { return n_; }
  double& operator[](std::size_t i) { return c_[i]; }
  double operator[](std::size_t i) const { return c_[i]; }
  std::span<const double> coords() const { return {c_.data(), n_}; }

  bool all_finite() const {
    for (std::size_t i = 0; i < n_; ++i)
      if (!std::isfinite(c_[i])) return false;
    return true;
  }

  friend bool operator==(const SpacePoint& a, const SpacePoint& b) {
    if (a.n_ != b.n_) return false;
    for (std::size_t i = 0; i < a.n_; ++i)
      if (a.c_[i] != b.c_[i]) return false;
    return true;
  }

 private:
  std::array<double, kMaxDim> c_{};
  std::size_t n_ = 0;
};

}  // namespace hardy
