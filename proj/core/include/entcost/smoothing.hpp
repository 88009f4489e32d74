#pragma once

#include <cstddef>

#include "entcost/spectrum.hpp"

namespace entcost {

/// Mass constraints are tested as sum >= (1 - eps) - kMassSlack.
inline constexpr double kMassSlack = 1e-12;
inline constexpr std::size_t kBruteForceMaxDim = 20;
inline constexpr std::size_t kWindowMaxGroups = 10'000;

/// Smoothing parameter eps in [0, 1).
class SmoothLevel {
 public:
  explicit SmoothLevel(double eps);
  double eps() const noexcept { return eps_; }

 private:
  double eps_;
};

/// Index set J realizing a smoothed quantity, described on the grouped
/// spectrum: groups [start_group, end_group], all copies of the interior
/// groups, and the stated copies of the two boundary groups (the same count
/// when start_group == end_group). Copy counts are integral and exact up to
/// 2^53; the log2 forms stay finite for counts beyond double range.
struct SmoothWitness {
  std::size_t start_group = 0;
  double copies_in_start = 0.0;
  double log2_copies_in_start = 0.0;
  std::size_t end_group = 0;
  double copies_in_end = 0.0;
  double log2_copies_in_end = 0.0;
  double mass = 0.0;
  double count_log2 = 0.0;
  double max_log2_value = 0.0;
};

struct SmoothResult {
  double bits = 0.0;
  SmoothWitness witness;
};

/// log2 of the fewest eigenvalues holding mass >= 1 - eps (largest first).
SmoothResult s0_eps(const GroupedSpectrum& g, SmoothLevel eps);

/// -log2 of the smallest v such that eigenvalues <= v hold mass >= 1 - eps.
SmoothResult sinf_eps(const GroupedSpectrum& g, SmoothLevel eps);

/// log2 min |J| * max_J r over index sets with mass >= 1 - eps.
///
/// Exact: for a fixed window maximum the smallest admissible J takes the
/// largest eigenvalues below it, so scanning every group as the window head
/// and extending greedily (partial copies only in the tail group) visits an
/// optimal set. Two pointers keep the scan linear in the number of groups
/// up to the range-count lookups.
SmoothResult delta_eps(const GroupedSpectrum& g, SmoothLevel eps);

/// Exhaustive minimum over all 2^d subsets; d <= kBruteForceMaxDim.
double delta_eps_bruteforce(const Spectrum& s, SmoothLevel eps);

/// Recomputed mass, log2 count and log2 max of the set a witness describes.
struct WitnessEvaluation {
  double mass = 0.0;
  double count_log2 = 0.0;
  double max_log2_value = 0.0;
};
WitnessEvaluation evaluate_witness(const GroupedSpectrum& g, const SmoothWitness& w);

enum class AlphaBetaMode { Exact, Window };

struct AlphaBetaSmoothResult {
  double bits = 0.0;
  AlphaBetaMode mode = AlphaBetaMode::Exact;
  /// Window results only bound the true minimum from above.
  bool upper_bound = false;
};

/// min over J with mass >= 1 - eps of S_alpha(J) - S_beta(J), where
/// S_a(J) = log2(sum_J r^a) / (1 - a) (and the usual limits at 0 and inf),
/// for 0 <= alpha < 1 < beta <= inf. Exact enumerates subsets (d <= 20);
/// Window scans contiguous runs of whole groups.
AlphaBetaSmoothResult delta_ab_eps(const Spectrum& s, double alpha, double beta, SmoothLevel eps,
                                   AlphaBetaMode mode);
AlphaBetaSmoothResult delta_ab_eps_window(const GroupedSpectrum& g, double alpha, double beta,
                                          SmoothLevel eps);

}  // namespace entcost
