#include "entcost/tensor_power.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "entcost/entropy.hpp"
#include "entcost/errors.hpp"
#include "entcost/log_math.hpp"

namespace entcost {

namespace {

constexpr double kLn2 = 0.69314718055994530942;

double log2_factorial(std::uint64_t n) {
  return boost::math::lgamma(static_cast<double>(n) + 1.0) / kLn2;
}

__extension__ using u128 = unsigned __int128;

// C(m, k) when it is at most 2^53.
std::optional<std::uint64_t> binomial_exact(std::uint64_t m, std::uint64_t k) {
  k = std::min(k, m - k);
  u128 acc = 1;
  for (std::uint64_t j = 1; j <= k; ++j) {
    acc = acc * (m - k + j) / j;
    if (acc > kExactCountLimit) return std::nullopt;
  }
  return static_cast<std::uint64_t>(acc);
}

std::optional<std::uint64_t> checked_pow(std::optional<std::uint64_t> base, std::uint64_t e) {
  if (base && *base == 1) return 1;
  std::optional<std::uint64_t> acc = 1;
  // Any base >= 2 leaves the exact range within 54 steps.
  for (std::uint64_t i = 0; i < e && acc; ++i) acc = checked_mul(acc, base);
  return acc;
}

void check_type_guard(std::uint64_t n, std::size_t d) {
  if (type_count(n, d) > kTypeCountLimit) {
    throw GuardError("number of types C(n+d-1, d-1) exceeds " +
                     std::to_string(static_cast<std::uint64_t>(kTypeCountLimit)));
  }
}

struct Level {
  double log2_value;
  double log2_mult;
  std::optional<std::uint64_t> mult;
};

GroupedSpectrum merge_levels(std::vector<Level> levels) {
  std::sort(levels.begin(), levels.end(),
            [](const Level& a, const Level& b) { return a.log2_value > b.log2_value; });
  std::vector<Group> groups;
  groups.reserve(levels.size());
  for (const Level& lv : levels) {
    if (!groups.empty()) {
      Group& prev = groups.back();
      const double gap = prev.log2_value - lv.log2_value;
      if (gap <= kGroupTolerance * std::max(1.0, std::abs(prev.log2_value))) {
        prev.mult = checked_add(prev.mult, lv.mult);
        prev.log2_mult = prev.mult ? std::log2(static_cast<double>(*prev.mult))
                                   : log2_add(prev.log2_mult, lv.log2_mult);
        prev.mass += std::exp2(lv.log2_value + lv.log2_mult);
        continue;
      }
    }
    groups.push_back(Group{lv.log2_value, std::exp2(lv.log2_value), lv.log2_mult, lv.mult,
                           std::exp2(lv.log2_value + lv.log2_mult)});
  }
  return GroupedSpectrum::from_groups(std::move(groups));
}

}  // namespace

std::uint64_t TypeVector::n() const noexcept {
  return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

double type_count(std::uint64_t n, std::size_t d) {
  if (d == 0) return 0.0;
  double acc = 1.0;
  for (std::size_t j = 1; j < d; ++j) {
    acc = acc * static_cast<double>(n + j) / static_cast<double>(j);
  }
  return acc;
}

TypeEnumerator::TypeEnumerator(std::uint32_t n, std::size_t d) {
  if (n == 0 || d == 0) throw DomainError("type enumeration needs n >= 1 and d >= 1");
  check_type_guard(n, d);
  current_.assign(d, 0);
  current_[0] = n;
}

std::optional<TypeVector> TypeEnumerator::next() {
  if (done_) return std::nullopt;
  if (!started_) {
    started_ = true;
    return TypeVector{current_};
  }
  const std::size_t d = current_.size();
  // The rightmost nonzero slot before the last gives one unit to its right
  // neighbour, which also absorbs the last slot.
  std::size_t p = d - 1;
  while (p > 0 && current_[p - 1] == 0) --p;
  if (p == 0) {
    done_ = true;
    return std::nullopt;
  }
  --p;
  const std::uint32_t tail = current_[d - 1];
  current_[d - 1] = 0;
  --current_[p];
  current_[p + 1] = tail + 1;
  return TypeVector{current_};
}

std::vector<TypeVector> enumerate_types(std::uint32_t n, std::size_t d) {
  TypeEnumerator it(n, d);
  std::vector<TypeVector> out;
  out.reserve(static_cast<std::size_t>(type_count(n, d)));
  while (auto t = it.next()) out.push_back(std::move(*t));
  return out;
}

double type_log_weight(const TypeVector& type, std::span<const double> r) {
  if (type.counts.size() > r.size()) {
    for (std::size_t i = r.size(); i < type.counts.size(); ++i) {
      if (type.counts[i] > 0) throw DomainError("type has counts outside the support of r");
    }
  }
  CompensatedSum acc;
  for (std::size_t i = 0; i < std::min(type.counts.size(), r.size()); ++i) {
    if (type.counts[i] == 0) continue;
    if (!(r[i] > 0.0)) throw DomainError("type has counts outside the support of r");
    acc.add(static_cast<double>(type.counts[i]) * std::log2(r[i]));
  }
  return acc.value();
}

std::optional<std::uint64_t> type_cardinality_exact(const TypeVector& type) {
  std::optional<std::uint64_t> acc = 1;
  std::uint64_t running = 0;
  for (std::uint32_t c : type.counts) {
    running += c;
    acc = checked_mul(acc, binomial_exact(running, c));
    if (!acc) return std::nullopt;
  }
  return acc;
}

double type_log_cardinality(const TypeVector& type) {
  if (auto exact = type_cardinality_exact(type)) return std::log2(static_cast<double>(*exact));
  double acc = log2_factorial(type.n());
  for (std::uint32_t c : type.counts) acc -= log2_factorial(c);
  return std::max(0.0, acc);
}

GroupedSpectrum power_grouped_spectrum(const Spectrum& base, std::uint32_t n) {
  return power_grouped_spectrum(group(base), n);
}

GroupedSpectrum power_grouped_spectrum(const GroupedSpectrum& base, std::uint32_t n) {
  if (n == 0) throw DomainError("tensor power needs n >= 1");
  const std::size_t m = base.size();
  check_type_guard(n, m);
  for (const Group& g : base.groups()) {
    if (!g.mult) throw DomainError("tensor power base needs exact multiplicities");
  }

  std::vector<Level> levels;
  if (m == 1) {
    const Group& g = base[0];
    levels.push_back({n * g.log2_value, n * g.log2_mult, checked_pow(g.mult, n)});
    return merge_levels(std::move(levels));
  }

  if (m == 2) {
    // Types indexed by k = copies of the first value; C(n, k) exact from both
    // ends while it fits.
    const Group& a = base[0];
    const Group& b = base[1];
    std::vector<std::optional<std::uint64_t>> exact_binom;
    std::optional<std::uint64_t> c = 1;
    for (std::uint64_t k = 0; k <= n / 2 && c; ++k) {
      exact_binom.push_back(c);
      c = checked_mul(c, n - k);
      if (c) c = *c / (k + 1);
    }
    const double log_n_fact = log2_factorial(n);
    levels.reserve(n + 1);
    for (std::uint64_t k = 0; k <= n; ++k) {
      const std::uint64_t j = n - k;
      const std::uint64_t side = std::min(k, j);
      std::optional<std::uint64_t> binom =
          side < exact_binom.size() ? exact_binom[side] : std::nullopt;
      const double log_binom = binom ? std::log2(static_cast<double>(*binom))
                                     : log_n_fact - log2_factorial(k) - log2_factorial(j);
      auto mult = checked_mul(binom, checked_mul(checked_pow(a.mult, k), checked_pow(b.mult, j)));
      const double log_mult = mult ? std::log2(static_cast<double>(*mult))
                                   : log_binom + k * a.log2_mult + j * b.log2_mult;
      levels.push_back({k * a.log2_value + j * b.log2_value, log_mult, mult});
    }
    return merge_levels(std::move(levels));
  }

  TypeEnumerator it(n, m);
  while (auto t = it.next()) {
    double lv = 0.0;
    double lm = 0.0;
    std::optional<std::uint64_t> mult = type_cardinality_exact(*t);
    const double log_card = type_log_cardinality(*t);
    for (std::size_t i = 0; i < m; ++i) {
      const auto c = t->counts[i];
      lv += c * base[i].log2_value;
      lm += c * base[i].log2_mult;
      if (c > 0) mult = checked_mul(mult, checked_pow(base[i].mult, c));
    }
    lm = mult ? std::log2(static_cast<double>(*mult)) : lm + log_card;
    levels.push_back({lv, lm, mult});
  }
  return merge_levels(std::move(levels));
}

CltParams clt_params(const Spectrum& base) {
  CltParams p;
  p.mean_bits = shannon(base.probs());
  if (base.max() == base.probs().back()) return p;
  CompensatedSum var;
  for (double r : base.probs()) {
    const double x = -std::log2(r) - p.mean_bits;
    var.add(r * x * x);
  }
  p.sigma_bits = std::sqrt(var.value());
  return p;
}

double clt_delta_prediction(const Spectrum& base, std::uint64_t n, double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("CLT prediction needs 0 < delta < 1");
  const CltParams p = clt_params(base);
  if (p.sigma_bits == 0.0) {
    throw DomainError("CLT prediction undefined for a flat spectrum (sigma = 0)");
  }
  const boost::math::normal_distribution<double> normal;
  const double spread =
      boost::math::quantile(normal, 1.0 - delta) - boost::math::quantile(normal, delta);
  return p.sigma_bits * std::sqrt(static_cast<double>(n)) * spread;
}

bool is_typical(const TypeVector& type, std::span<const double> r, double delta_param) {
  if (type.counts.size() != r.size()) throw DomainError("type and distribution lengths differ");
  const double n = static_cast<double>(type.n());
  for (std::size_t i = 0; i < r.size(); ++i) {
    const double width = delta_param * std::sqrt(r[i] * (1.0 - r[i])) / std::sqrt(n);
    if (std::abs(type.counts[i] / n - r[i]) > width) return false;
  }
  return true;
}

TypicalSetReport typical_set_report(const Spectrum& base, std::uint32_t n, double delta_param,
                                    double k_constant) {
  if (!(delta_param > 0.0)) throw DomainError("typical set needs delta > 0");
  const auto r = base.probs();
  const double d = static_cast<double>(r.size());

  TypicalSetReport rep;
  rep.n = n;
  rep.delta_param = delta_param;
  rep.k_constant = k_constant;
  rep.mass_lower_bound = 1.0 - d / (delta_param * delta_param);
  rep.log_card_upper =
      n * shannon(r) + k_constant * d * delta_param * std::sqrt(static_cast<double>(n));

  CompensatedSum mass;
  double log_card = kNegInf;
  TypeEnumerator it(n, r.size());
  while (auto t = it.next()) {
    if (!is_typical(*t, r, delta_param)) continue;
    const double lc = type_log_cardinality(*t);
    mass.add(std::exp2(lc + type_log_weight(*t, r)));
    log_card = log2_add(log_card, lc);
    ++rep.member_types;
  }
  rep.exact_mass = mass.value();
  rep.log_card_exact = log_card;
  return rep;
}

}  // namespace entcost
