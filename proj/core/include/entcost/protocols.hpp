#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>

#include "entcost/bounds.hpp"
#include "entcost/spectrum.hpp"
#include "entcost/tensor_power.hpp"

namespace entcost {

inline constexpr std::size_t kConcentrationMaxDim = 8;
inline constexpr std::uint64_t kConcentrationMaxN = 1'000'000;

/// Outcome of simulated entanglement concentration on base^(tensor n).
struct YieldStats {
  std::uint64_t n = 0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  double mean_yield_bits = 0.0;
  /// Sample standard deviation of the per-trial yield.
  double stddev_yield_bits = 0.0;
  double yield_rate = 0.0;
  /// Concentration uses local measurements only.
  double comm_bits = 0.0;
  /// yield (EPR pairs) -> number of trials.
  std::map<std::uint64_t, std::uint64_t> histogram;
  std::string yield_rule;
};

/// splitmix64-derived seed of trial `index`.
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t index) noexcept;

/// Type of n i.i.d. draws from `probs` via sequential binomial conditionals.
TypeVector sample_type(std::span<const double> probs, std::uint64_t n, std::uint64_t seed);

/// Each trial measures the type class P (multinomial outcome) and keeps
/// floor(log2 |T_P|) EPR pairs. Trials run on `threads` workers and give the
/// same histogram for any thread count.
YieldStats concentration_simulate(const Spectrum& base, std::uint64_t n, std::uint64_t trials,
                                  std::uint64_t seed, unsigned threads = 1);

/// Prepare-and-teleport dilution cost against the communication lower bound
/// for creating base^(tensor n) from EPR pairs at fidelity 1 - eps.
struct DilutionReport {
  std::uint32_t n = 0;
  double epsilon = 0.0;
  /// ceil(S_{0,eps}) of the target.
  double naive_ebits = 0.0;
  double naive_cbits = 0.0;
  double lower_bound_cbits = 0.0;
  double lower_bound_qubits = 0.0;
  double gap_ratio = 0.0;
  /// Smoothed quantities of the target at the bound's smoothing delta.
  double delta = 0.0;
  double s0_delta = 0.0;
  double sinf_delta = 0.0;
  double delta_delta = 0.0;
  /// Normal-approximation spread; absent for flat bases.
  std::optional<double> clt_prediction;
  /// Classical-channel report behind lower_bound_cbits.
  BoundReport bound;
};

DilutionReport dilution_accounting(const Spectrum& base, std::uint32_t n, double epsilon);

/// Smoothed spread of the n-level embezzling spectrum, computed from prefix
/// sums of 1/i without materializing the spectrum.
double embezzler_delta_eps(std::uint64_t n, double delta);

/// (1 - 2 delta) log2 n - 4 - log2 log2(n + 1).
double embezzler_floor(std::uint64_t n, double delta);

struct EmbezzlerCheck {
  std::uint64_t n = 0;
  double delta = 0.0;
  double delta_eps_exact = 0.0;
  double floor_bits = 0.0;
  bool holds = false;
};

EmbezzlerCheck embezzler_bound_check(std::uint64_t n, double delta);

struct EmbezzlerCost {
  std::uint64_t n = 0;
  BoundReport qubit;
  BoundReport classical;
};

/// Lower bound for creating the n-level embezzling state from EPR pairs.
EmbezzlerCost embezzler_creation_bound(std::uint64_t n, double epsilon);

/// Least-squares slope c of values ~ c*sqrt(n) + b. Needs two distinct n.
double fit_sqrt_coefficient(std::span<const double> ns, std::span<const double> values);

}  // namespace entcost
