#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <utility>

namespace entcost {

/// Largest integer count carried exactly; doubles represent every integer
/// up to this value.
inline constexpr std::uint64_t kExactCountLimit = std::uint64_t{1} << 53;

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// log2(2^a + 2^b) without overflow.
inline double log2_add(double a, double b) noexcept {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  if (a < b) std::swap(a, b);
  return a + std::log2(1.0 + std::exp2(b - a));
}

/// log2 of a sum of powers of two given their exponents.
inline double log2_sum(std::span<const double> exponents) noexcept {
  double top = kNegInf;
  for (double e : exponents) top = std::max(top, e);
  if (top == kNegInf) return kNegInf;
  double acc = 0.0;
  for (double e : exponents) acc += std::exp2(e - top);
  return top + std::log2(acc);
}

/// Neumaier compensated summation.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

inline std::optional<std::uint64_t> checked_add(std::optional<std::uint64_t> a,
                                                std::optional<std::uint64_t> b) noexcept {
  if (!a || !b) return std::nullopt;
  if (*a > kExactCountLimit - *b) return std::nullopt;
  return *a + *b;
}

inline std::optional<std::uint64_t> checked_mul(std::optional<std::uint64_t> a,
                                                std::optional<std::uint64_t> b) noexcept {
  if (!a || !b) return std::nullopt;
  std::uint64_t p = 0;
  if (__builtin_mul_overflow(*a, *b, &p) || p > kExactCountLimit) return std::nullopt;
  return p;
}

}  // namespace entcost
