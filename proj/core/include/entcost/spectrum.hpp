#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace entcost {

inline constexpr double kInputSumTolerance = 1e-6;
inline constexpr double kGroupTolerance = 1e-12;
inline constexpr std::size_t kDenseProductLimit = 1'000'000;

/// Schmidt spectrum of a bipartite pure state: strictly positive entries,
/// sorted nonincreasing, summing to one.
class Spectrum {
 public:
  /// Drops zeros, sorts descending and renormalizes. Without `normalize`
  /// the input sum must already be within kInputSumTolerance of one.
  static Spectrum from_probs(std::span<const double> raw, bool normalize = false);

  /// Adopts an already canonical vector (positive, nonincreasing, sum within
  /// 1e-9 of one) without rescaling it.
  static Spectrum from_sorted(std::vector<double> probs);

  std::span<const double> probs() const noexcept { return probs_; }
  std::size_t rank() const noexcept { return probs_.size(); }
  std::size_t size() const noexcept { return probs_.size(); }
  double max() const noexcept { return probs_.front(); }
  double operator[](std::size_t i) const noexcept { return probs_[i]; }

  friend bool operator==(const Spectrum&, const Spectrum&) = default;

 private:
  explicit Spectrum(std::vector<double> probs) : probs_(std::move(probs)) {}

  std::vector<double> probs_;
};

inline Spectrum spectrum_from_probs(std::span<const double> raw, bool normalize = false) {
  return Spectrum::from_probs(raw, normalize);
}

Spectrum uniform_spectrum(std::size_t d);

/// Entries proportional to 1/i, i = 1..n.
Spectrum embezzler_spectrum(std::size_t n);

/// (max(p, 1-p), min(p, 1-p)) for 0 < p < 1.
Spectrum two_level_spectrum(double p);

/// All pairwise products, sorted descending. Throws GuardError when
/// |a|*|b| exceeds kDenseProductLimit.
Spectrum tensor(const Spectrum& a, const Spectrum& b);

/// l1 distance between the sorted eigenvalue lists, zero-padding the shorter.
double trace_distance_diag(const Spectrum& a, const Spectrum& b);

/// One level of equal eigenvalues. `value` is the linear eigenvalue (it may
/// underflow to zero for very large tensor powers; log2_value is
/// authoritative). `mult` holds the exact multiplicity when it is at most
/// 2^53.
struct Group {
  double log2_value = 0.0;
  double value = 1.0;
  double log2_mult = 0.0;
  std::optional<std::uint64_t> mult = 1;
  double mass = 1.0;
};

/// Spectrum stored as levels of equal eigenvalues, strictly decreasing in
/// value. Represents tensor powers without materializing d^n entries.
class GroupedSpectrum {
 public:
  /// Validates ordering and multiplicities; total mass must be within 1e-6
  /// of one.
  static GroupedSpectrum from_groups(std::vector<Group> groups);

  std::span<const Group> groups() const noexcept { return groups_; }
  std::size_t size() const noexcept { return groups_.size(); }
  const Group& operator[](std::size_t i) const noexcept { return groups_[i]; }
  const Group& front() const noexcept { return groups_.front(); }
  const Group& back() const noexcept { return groups_.back(); }

  /// Compensated sum of group masses.
  double total_mass() const noexcept { return total_mass_; }
  /// log2 of the number of eigenvalues (the rank).
  double log2_count() const noexcept { return log2_count_; }
  /// Exact rank when every multiplicity is exact and the sum stays below 2^53.
  std::optional<std::uint64_t> exact_count() const noexcept { return exact_count_; }

 private:
  explicit GroupedSpectrum(std::vector<Group> groups);

  std::vector<Group> groups_;
  double total_mass_ = 0.0;
  double log2_count_ = 0.0;
  std::optional<std::uint64_t> exact_count_;
};

/// Merges adjacent values equal within relative tolerance `value_tol`.
GroupedSpectrum group(const Spectrum& s, double value_tol = kGroupTolerance);

/// Expands a grouped spectrum back into a dense one. Requires exact
/// multiplicities and at most kDenseProductLimit entries.
Spectrum ungroup(const GroupedSpectrum& g);

}  // namespace entcost
