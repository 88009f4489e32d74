#include "entcost/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "entcost/errors.hpp"
#include "entcost/log_math.hpp"

namespace entcost {

namespace {

constexpr double kCanonicalSumTolerance = 1e-9;
constexpr double kGroupedMassTolerance = 1e-6;

double compensated_total(std::span<const double> xs) {
  CompensatedSum acc;
  for (double x : xs) acc.add(x);
  return acc.value();
}

}  // namespace

Spectrum Spectrum::from_probs(std::span<const double> raw, bool normalize) {
  if (raw.empty()) throw DomainError("spectrum: empty probability vector");
  std::vector<double> probs;
  probs.reserve(raw.size());
  for (double x : raw) {
    if (!std::isfinite(x)) throw DomainError("spectrum: non-finite entry");
    if (x < 0.0) throw DomainError("spectrum: negative entry " + std::to_string(x));
    if (x > 0.0) probs.push_back(x);
  }
  if (probs.empty()) throw DomainError("spectrum: all entries are zero");

  const double total = compensated_total(probs);
  if (!normalize && std::abs(total - 1.0) > kInputSumTolerance) {
    throw DomainError("spectrum: entries sum to " + std::to_string(total) +
                      ", expected 1 (pass normalize to rescale)");
  }
  std::sort(probs.begin(), probs.end(), std::greater<>());
  for (double& x : probs) x /= total;
  return Spectrum(std::move(probs));
}

Spectrum Spectrum::from_sorted(std::vector<double> probs) {
  if (probs.empty()) throw DomainError("spectrum: empty probability vector");
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (!(probs[i] > 0.0) || !std::isfinite(probs[i])) {
      throw DomainError("spectrum: entries must be positive and finite");
    }
    if (i > 0 && probs[i] > probs[i - 1]) throw DomainError("spectrum: entries not sorted");
  }
  if (std::abs(compensated_total(probs) - 1.0) > kCanonicalSumTolerance) {
    throw DomainError("spectrum: entries do not sum to 1");
  }
  return Spectrum(std::move(probs));
}

Spectrum uniform_spectrum(std::size_t d) {
  if (d == 0) throw DomainError("uniform spectrum needs d >= 1");
  if (d > kDenseProductLimit) throw GuardError("uniform spectrum dimension exceeds dense limit");
  return Spectrum::from_sorted(std::vector<double>(d, 1.0 / static_cast<double>(d)));
}

Spectrum embezzler_spectrum(std::size_t n) {
  if (n == 0) throw DomainError("embezzler spectrum needs n >= 1");
  if (n > kDenseProductLimit * 16) throw GuardError("embezzler dimension exceeds dense limit");
  // Smallest terms first keeps the harmonic sum accurate.
  long double harmonic = 0.0L;
  for (std::size_t i = n; i >= 1; --i) harmonic += 1.0L / static_cast<long double>(i);
  std::vector<double> probs(n);
  for (std::size_t i = 1; i <= n; ++i) {
    probs[i - 1] = static_cast<double>(1.0L / (static_cast<long double>(i) * harmonic));
  }
  return Spectrum::from_sorted(std::move(probs));
}

Spectrum two_level_spectrum(double p) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("two-level spectrum needs 0 < p < 1");
  return Spectrum::from_sorted({std::max(p, 1.0 - p), std::min(p, 1.0 - p)});
}

Spectrum tensor(const Spectrum& a, const Spectrum& b) {
  if (a.size() > kDenseProductLimit / b.size()) {
    throw GuardError("tensor: product dimension exceeds " + std::to_string(kDenseProductLimit));
  }
  std::vector<double> out;
  out.reserve(a.size() * b.size());
  for (double x : a.probs()) {
    for (double y : b.probs()) out.push_back(x * y);
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  return Spectrum::from_sorted(std::move(out));
}

double trace_distance_diag(const Spectrum& a, const Spectrum& b) {
  const std::size_t n = std::max(a.size(), b.size());
  CompensatedSum acc;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = i < a.size() ? a[i] : 0.0;
    const double y = i < b.size() ? b[i] : 0.0;
    acc.add(std::abs(x - y));
  }
  return acc.value();
}

GroupedSpectrum::GroupedSpectrum(std::vector<Group> groups) : groups_(std::move(groups)) {
  CompensatedSum mass;
  std::vector<double> log_mults;
  log_mults.reserve(groups_.size());
  std::optional<std::uint64_t> count = 0;
  for (const Group& g : groups_) {
    mass.add(g.mass);
    log_mults.push_back(g.log2_mult);
    count = checked_add(count, g.mult);
  }
  total_mass_ = mass.value();
  exact_count_ = count;
  log2_count_ = count ? std::log2(static_cast<double>(*count)) : log2_sum(log_mults);
}

GroupedSpectrum GroupedSpectrum::from_groups(std::vector<Group> groups) {
  if (groups.empty()) throw DomainError("grouped spectrum: no groups");
  for (std::size_t i = 0; i < groups.size(); ++i) {
    const Group& g = groups[i];
    if (!std::isfinite(g.log2_value) || !std::isfinite(g.log2_mult) || g.log2_mult < 0.0) {
      throw DomainError("grouped spectrum: invalid group");
    }
    if (g.mult && *g.mult == 0) throw DomainError("grouped spectrum: zero multiplicity");
    if (i > 0 && !(g.log2_value < groups[i - 1].log2_value)) {
      throw DomainError("grouped spectrum: values must be strictly decreasing");
    }
  }
  GroupedSpectrum out(std::move(groups));
  if (std::abs(out.total_mass() - 1.0) > kGroupedMassTolerance) {
    throw DomainError("grouped spectrum: total mass " + std::to_string(out.total_mass()));
  }
  return out;
}

GroupedSpectrum group(const Spectrum& s, double value_tol) {
  if (value_tol < 0.0) throw DomainError("group: negative tolerance");
  std::vector<Group> groups;
  std::size_t i = 0;
  const auto probs = s.probs();
  while (i < probs.size()) {
    const double head = probs[i];
    std::size_t j = i;
    CompensatedSum mass;
    while (j < probs.size() && head - probs[j] <= value_tol * head) {
      mass.add(probs[j]);
      ++j;
    }
    const auto count = static_cast<std::uint64_t>(j - i);
    groups.push_back(Group{std::log2(head), head, std::log2(static_cast<double>(count)), count,
                           mass.value()});
    i = j;
  }
  return GroupedSpectrum::from_groups(std::move(groups));
}

Spectrum ungroup(const GroupedSpectrum& g) {
  if (!g.exact_count() || *g.exact_count() > kDenseProductLimit) {
    throw GuardError("ungroup: spectrum too large to expand densely");
  }
  std::vector<double> probs;
  probs.reserve(*g.exact_count());
  for (const Group& grp : g.groups()) {
    const double v = grp.value > 0.0 ? grp.value : std::exp2(grp.log2_value);
    probs.insert(probs.end(), *grp.mult, v);
  }
  return Spectrum::from_sorted(std::move(probs));
}

}  // namespace entcost
