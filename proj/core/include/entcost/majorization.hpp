#pragma once

#include <cstdint>
#include <vector>

#include "entcost/spectrum.hpp"

namespace entcost {

inline constexpr double kPrefixTolerance = 1e-12;

/// True iff every prefix sum of lambda is at most that of mu (shorter vector
/// zero-padded), up to kPrefixTolerance.
bool majorized_by(const Spectrum& lambda, const Spectrum& mu);

/// Exact LOCC convertibility of |phi> into |psi> from their Schmidt spectra.
bool locc_feasible(const Spectrum& phi, const Spectrum& psi);

/// Maximally entangled rank_from -> rank_to without communication: possible
/// iff rank_to divides rank_from.
bool zero_comm_max_entangled(std::uint64_t rank_from, std::uint64_t rank_to);

struct PrefixRow {
  std::size_t k = 0;
  double from = 0.0;
  double to = 0.0;
};

/// Prefix sums of both spectra, k = 1..max(|phi|, |psi|).
std::vector<PrefixRow> prefix_table(const Spectrum& phi, const Spectrum& psi);

}  // namespace entcost
