#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "entcost/spectrum.hpp"

namespace entcost {

inline constexpr double kTypeCountLimit = 1e8;

/// Occupation counts of an n-type over d outcomes.
struct TypeVector {
  std::vector<std::uint32_t> counts;

  std::uint64_t n() const noexcept;
  std::size_t d() const noexcept { return counts.size(); }
  friend bool operator==(const TypeVector&, const TypeVector&) = default;
};

/// Number of n-types over d outcomes, C(n+d-1, d-1), as a double.
double type_count(std::uint64_t n, std::size_t d);

/// Streams all compositions of n into d parts, starting at (n, 0, ..., 0)
/// and descending lexicographically. Throws GuardError when the count
/// exceeds kTypeCountLimit.
class TypeEnumerator {
 public:
  TypeEnumerator(std::uint32_t n, std::size_t d);

  /// Next type, or nullopt once exhausted.
  std::optional<TypeVector> next();

 private:
  std::vector<std::uint32_t> current_;
  bool started_ = false;
  bool done_ = false;
};

std::vector<TypeVector> enumerate_types(std::uint32_t n, std::size_t d);

/// sum_i counts_i log2 r_i: log2 probability of any one sequence of type P.
double type_log_weight(const TypeVector& type, std::span<const double> r);
inline double type_log_weight(const TypeVector& type, const Spectrum& r) {
  return type_log_weight(type, r.probs());
}

/// log2 of the multinomial n! / prod counts_i!.
double type_log_cardinality(const TypeVector& type);

/// The multinomial itself when it is at most 2^53.
std::optional<std::uint64_t> type_cardinality_exact(const TypeVector& type);

/// Grouped spectrum of base^(tensor n): one group per type over the distinct
/// base values, identical weights merged.
GroupedSpectrum power_grouped_spectrum(const Spectrum& base, std::uint32_t n);
GroupedSpectrum power_grouped_spectrum(const GroupedSpectrum& base, std::uint32_t n);

/// Moments of X = -log2 r drawn with probability r.
struct CltParams {
  double mean_bits = 0.0;
  double sigma_bits = 0.0;
};

CltParams clt_params(const Spectrum& base);

/// sigma sqrt(n) (z(1 - delta) - z(delta)), the normal-approximation spread
/// between the delta-smoothed rank and min-entropy of base^(tensor n).
/// Throws DomainError for flat spectra.
double clt_delta_prediction(const Spectrum& base, std::uint64_t n, double delta);

/// Membership: |P_i - r_i| <= delta sqrt(r_i (1 - r_i)) / sqrt(n) for all i.
bool is_typical(const TypeVector& type, std::span<const double> r, double delta_param);

struct TypicalSetReport {
  std::uint32_t n = 0;
  double delta_param = 0.0;
  /// 1 - d / delta^2 (may be vacuous).
  double mass_lower_bound = 0.0;
  /// Exact mass of the member types.
  double exact_mass = 0.0;
  /// n H(r) + K d delta sqrt(n).
  double log_card_upper = 0.0;
  /// log2 of the exact number of typical sequences.
  double log_card_exact = 0.0;
  std::uint64_t member_types = 0;
  double k_constant = 1.0;
};

/// Typical-set quantities over the outcomes of `base`; `k_constant` only
/// scales the reported cardinality envelope.
TypicalSetReport typical_set_report(const Spectrum& base, std::uint32_t n, double delta_param,
                                    double k_constant = 1.0);

}  // namespace entcost
