#include "entcost/protocols.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>
#include <thread>
#include <vector>

#include <boost/random/binomial_distribution.hpp>
#include <boost/random/mersenne_twister.hpp>

#include "entcost/entropy.hpp"
#include "entcost/errors.hpp"
#include "entcost/log_math.hpp"
#include "entcost/smoothing.hpp"

namespace entcost {

namespace {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t yield_of(const TypeVector& t) {
  if (auto exact = type_cardinality_exact(t)) {
    return static_cast<std::uint64_t>(std::bit_width(*exact)) - 1;
  }
  return static_cast<std::uint64_t>(std::floor(type_log_cardinality(t)));
}

}  // namespace

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  return splitmix64(splitmix64(seed) ^ index);
}

TypeVector sample_type(std::span<const double> probs, std::uint64_t n, std::uint64_t seed) {
  boost::random::mt19937_64 rng(seed);
  TypeVector t;
  t.counts.assign(probs.size(), 0);
  std::uint64_t remaining = n;
  double remaining_p = 1.0;
  for (std::size_t i = 0; i + 1 < probs.size() && remaining > 0; ++i) {
    const double q = std::clamp(probs[i] / remaining_p, 0.0, 1.0);
    boost::random::binomial_distribution<std::int64_t, double> draw(
        static_cast<std::int64_t>(remaining), q);
    const auto c = static_cast<std::uint64_t>(draw(rng));
    t.counts[i] = static_cast<std::uint32_t>(c);
    remaining -= c;
    remaining_p -= probs[i];
  }
  if (!probs.empty()) t.counts.back() += static_cast<std::uint32_t>(remaining);
  return t;
}

YieldStats concentration_simulate(const Spectrum& base, std::uint64_t n, std::uint64_t trials,
                                  std::uint64_t seed, unsigned threads) {
  if (base.size() > kConcentrationMaxDim) {
    throw GuardError("concentration supports at most " + std::to_string(kConcentrationMaxDim) +
                     " Schmidt coefficients");
  }
  if (n > kConcentrationMaxN) {
    throw GuardError("concentration supports n <= " + std::to_string(kConcentrationMaxN));
  }
  if (n == 0) throw DomainError("concentration needs n >= 1");
  if (trials == 0) throw DomainError("concentration needs at least one trial");

  std::vector<std::uint64_t> yields(trials);
  const auto probs = base.probs();
  auto work = [&](std::uint64_t first, std::uint64_t stride) {
    for (std::uint64_t i = first; i < trials; i += stride) {
      yields[i] = yield_of(sample_type(probs, n, trial_seed(seed, i)));
    }
  };
  const unsigned workers =
      static_cast<unsigned>(std::clamp<std::uint64_t>(threads, 1, trials));
  if (workers == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w, workers);
    for (auto& th : pool) th.join();
  }

  YieldStats st;
  st.n = n;
  st.trials = trials;
  st.seed = seed;
  st.yield_rule = "floor(log2 |T_P|) EPR pairs per trial; the log(1/eps) remainder slack is omitted";
  CompensatedSum sum;
  for (std::uint64_t y : yields) {
    sum.add(static_cast<double>(y));
    ++st.histogram[y];
  }
  st.mean_yield_bits = sum.value() / static_cast<double>(trials);
  if (trials > 1) {
    CompensatedSum sq;
    for (std::uint64_t y : yields) {
      const double dy = static_cast<double>(y) - st.mean_yield_bits;
      sq.add(dy * dy);
    }
    st.stddev_yield_bits = std::sqrt(sq.value() / static_cast<double>(trials - 1));
  }
  st.yield_rate = st.mean_yield_bits / static_cast<double>(n);
  return st;
}

DilutionReport dilution_accounting(const Spectrum& base, std::uint32_t n, double epsilon) {
  const double d = smoothing_delta(epsilon);
  const GroupedSpectrum target = power_grouped_spectrum(base, n);
  const GroupedSpectrum epr = group(uniform_spectrum(2));

  DilutionReport r;
  r.n = n;
  r.epsilon = epsilon;
  r.delta = d;
  // ceil with a little room so an exact power of two is not rounded up.
  r.naive_ebits = std::max(0.0, std::ceil(s0_eps(target, SmoothLevel(epsilon)).bits - 1e-9));
  r.naive_cbits = 2.0 * r.naive_ebits;
  r.bound = smoothed_bound(epr, target, epsilon, Channel::Classical);
  r.lower_bound_cbits = r.bound.bound_bits;
  r.lower_bound_qubits = smoothed_bound(epr, target, epsilon, Channel::Qubit).bound_bits;
  r.gap_ratio = r.naive_cbits / std::max(r.lower_bound_cbits, 1.0);
  r.s0_delta = s0_eps(target, SmoothLevel(d)).bits;
  r.sinf_delta = sinf_eps(target, SmoothLevel(d)).bits;
  r.delta_delta = r.bound.term_target;
  if (d > 0.0 && clt_params(base).sigma_bits > 0.0) {
    r.clt_prediction = clt_delta_prediction(base, n, d);
  }
  return r;
}

double embezzler_delta_eps(std::uint64_t n, double delta) {
  if (n == 0) throw DomainError("embezzler spectrum needs n >= 1");
  const SmoothLevel level(delta);
  long double harmonic = 0.0L;
  for (std::uint64_t i = 1; i <= n; ++i) harmonic += 1.0L / static_cast<long double>(i);

  // Window [k, t] of entries 1/(i H_n); its mass is (P(t) - P(k-1)) / H_n with
  // P the running harmonic sums, both accumulated in ascending order.
  const long double need = static_cast<long double>(std::min(1.0 - delta, 1.0) - kMassSlack);
  long double p_head = 0.0L;  // P(k - 1)
  long double p_tail = 0.0L;  // P(t)
  std::uint64_t t = 0;
  double best = std::numeric_limits<double>::infinity();
  for (std::uint64_t k = 1; k <= n; ++k) {
    if (t < k - 1) {
      t = k - 1;
      p_tail = p_head;
    }
    while (t < n && (p_tail - p_head) / harmonic < need) {
      ++t;
      p_tail += 1.0L / static_cast<long double>(t);
    }
    if ((p_tail - p_head) / harmonic < need) break;
    const double count = static_cast<double>(t - k + 1);
    best = std::min(best, std::log2(count) - std::log2(static_cast<double>(k)));
    p_head += 1.0L / static_cast<long double>(k);
  }
  return best - static_cast<double>(std::log2(harmonic));
}

double embezzler_floor(std::uint64_t n, double delta) {
  const double ln = std::log2(static_cast<double>(n));
  return (1.0 - 2.0 * delta) * ln - 4.0 - std::log2(std::log2(static_cast<double>(n) + 1.0));
}

EmbezzlerCheck embezzler_bound_check(std::uint64_t n, double delta) {
  if (n < 2) throw DomainError("embezzler check needs n >= 2");
  if (!(delta > 0.0 && delta < 0.5)) throw DomainError("embezzler check needs 0 < delta < 1/2");
  EmbezzlerCheck c;
  c.n = n;
  c.delta = delta;
  c.delta_eps_exact = embezzler_delta_eps(n, delta);
  c.floor_bits = embezzler_floor(n, delta);
  c.holds = c.delta_eps_exact >= c.floor_bits;
  return c;
}

EmbezzlerCost embezzler_creation_bound(std::uint64_t n, double epsilon) {
  const double d = smoothing_delta(epsilon);
  const double target = embezzler_delta_eps(n, d);
  const double slack = 2.0 * std::log2(1.0 - d);
  EmbezzlerCost c;
  c.n = n;
  c.qubit = make_bound_report(epsilon, d, target, 0.0, slack, Channel::Qubit);
  c.classical = make_bound_report(epsilon, d, target, 0.0, slack, Channel::Classical);
  return c;
}

double fit_sqrt_coefficient(std::span<const double> ns, std::span<const double> values) {
  if (ns.size() != values.size()) throw DomainError("fit needs one value per n");
  CompensatedSum sx, sy, sxx, sxy;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    const double x = std::sqrt(ns[i]);
    sx.add(x);
    sy.add(values[i]);
    sxx.add(x * x);
    sxy.add(x * values[i]);
  }
  const double m = static_cast<double>(ns.size());
  const double denom = m * sxx.value() - sx.value() * sx.value();
  if (!(denom > 0.0)) throw DomainError("fit needs at least two distinct n");
  return (m * sxy.value() - sx.value() * sy.value()) / denom;
}

}  // namespace entcost
