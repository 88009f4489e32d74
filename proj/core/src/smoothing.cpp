#include "entcost/smoothing.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "entcost/errors.hpp"
#include "entcost/log_math.hpp"

namespace entcost {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Below this, linear eigenvalues lose precision and the log path is used.
constexpr double kLinearValueFloor = -1000.0;

double effective_target(double total_mass, double eps) {
  return std::min(1.0 - eps, total_mass) - kMassSlack;
}

// Mass that may be left out: total - effective_target, without cancelling against 1.
// A total within kMassSlack of one is rounding noise and counts as exactly one.
long double drop_budget(long double total_mass, double eps) {
  long double excess = total_mass - 1.0L;
  if (std::abs(excess) <= kMassSlack) excess = 0.0L;
  return std::max(0.0L, excess + eps) + kMassSlack;
}

// Number of copies of one group needed to add `need` > 0 of mass.
struct Partial {
  double log2_copies = 0.0;
  std::optional<std::uint64_t> exact;
  double copies = 0.0;
};

Partial partial_copies(const Group& grp, double need) {
  Partial p;
  if (grp.log2_value > kLinearValueFloor && grp.value > 0.0) {
    const double k = std::max(1.0, std::ceil(need / grp.value));
    if (k < static_cast<double>(kExactCountLimit)) {
      auto copies = static_cast<std::uint64_t>(k);
      if (grp.mult) copies = std::min(copies, *grp.mult);
      p.exact = copies;
      p.copies = static_cast<double>(copies);
      p.log2_copies = std::log2(p.copies);
      return p;
    }
  }
  double lk = std::log2(need) - grp.log2_value;
  if (lk < 52.0) {
    auto copies = static_cast<std::uint64_t>(std::max(1.0, std::ceil(std::exp2(lk))));
    if (grp.mult) copies = std::min(copies, *grp.mult);
    p.exact = copies;
    p.copies = static_cast<double>(copies);
    p.log2_copies = std::log2(p.copies);
    return p;
  }
  lk = std::min(lk, grp.log2_mult);
  p.log2_copies = lk;
  p.copies = std::exp2(lk);
  return p;
}

double group_copies(const Group& grp) {
  return grp.mult ? static_cast<double>(*grp.mult) : std::exp2(grp.log2_mult);
}

// Fills boundary copy counts once start_group/end_group are set.
void set_boundaries(SmoothWitness& w, const GroupedSpectrum& g, const Partial& tail) {
  w.copies_in_end = tail.copies;
  w.log2_copies_in_end = tail.log2_copies;
  if (w.start_group == w.end_group) {
    w.copies_in_start = tail.copies;
    w.log2_copies_in_start = tail.log2_copies;
  } else {
    w.copies_in_start = group_copies(g[w.start_group]);
    w.log2_copies_in_start = g[w.start_group].log2_mult;
  }
}

// Prefix and suffix masses and range counts over a grouped spectrum. Window tests
// are phrased through the drop budget so that thin tails are resolved from suffix
// sums rather than by differencing masses close to one.
class WindowIndex {
 public:
  WindowIndex(const GroupedSpectrum& g, double eps) : groups_(g.groups()) {
    const std::size_t n = groups_.size();
    mass_prefix_.assign(n + 1, 0.0L);
    mass_suffix_.assign(n + 1, 0.0L);
    for (std::size_t i = 0; i < n; ++i) mass_prefix_[i + 1] = mass_prefix_[i] + groups_[i].mass;
    for (std::size_t i = n; i-- > 0;) mass_suffix_[i] = mass_suffix_[i + 1] + groups_[i].mass;
    budget_ = drop_budget(mass_prefix_.back(), eps);

    if (g.exact_count()) {
      count_prefix_.assign(n + 1, 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        count_prefix_[i + 1] = count_prefix_[i] + static_cast<double>(*groups_[i].mult);
      }
    } else {
      leaves_ = std::bit_ceil(n);
      tree_.assign(2 * leaves_, kNegInf);
      for (std::size_t i = 0; i < n; ++i) tree_[leaves_ + i] = groups_[i].log2_mult;
      for (std::size_t i = leaves_ - 1; i >= 1; --i) {
        tree_[i] = log2_add(tree_[2 * i], tree_[2 * i + 1]);
      }
    }
  }

  // Mass of groups [first, last).
  double mass(std::size_t first, std::size_t last) const {
    return static_cast<double>(mass_prefix_[last] - mass_prefix_[first]);
  }

  // Mass still missing from the target when groups [first, last) are kept in full.
  double need(std::size_t first, std::size_t last) const {
    return static_cast<double>(mass_prefix_[first] + mass_suffix_[last] - budget_);
  }

  bool reaches(std::size_t first, std::size_t last) const { return need(first, last) <= 0.0; }

  // log2 of the eigenvalue count in groups [first, last) plus a partial tail.
  double log2_count(std::size_t first, std::size_t last, const Partial& tail) const {
    if (!count_prefix_.empty() && tail.exact) {
      const double full = count_prefix_[last] - count_prefix_[first];
      const double total = full + static_cast<double>(*tail.exact);
      if (total < static_cast<double>(kExactCountLimit)) return std::log2(total);
    }
    return log2_add(range_log2(first, last), tail.log2_copies);
  }

  double range_log2(std::size_t first, std::size_t last) const {
    if (first >= last) return kNegInf;
    if (!count_prefix_.empty()) return std::log2(count_prefix_[last] - count_prefix_[first]);
    double acc = kNegInf;
    for (std::size_t lo = first + leaves_, hi = last + leaves_; lo < hi; lo >>= 1, hi >>= 1) {
      if (lo & 1) acc = log2_add(acc, tree_[lo++]);
      if (hi & 1) acc = log2_add(acc, tree_[--hi]);
    }
    return acc;
  }

 private:
  std::span<const Group> groups_;
  std::vector<long double> mass_prefix_;
  std::vector<long double> mass_suffix_;
  long double budget_ = 0.0L;
  std::vector<double> count_prefix_;
  std::size_t leaves_ = 0;
  std::vector<double> tree_;
};

// Smallest t >= from such that groups from..t reach the target; size() if none.
std::size_t first_reaching(const WindowIndex& idx, std::size_t from, std::size_t t,
                           std::size_t n) {
  while (t < n && !idx.reaches(from, t + 1)) ++t;
  return t;
}

void check_orders(double alpha, double beta) {
  if (!(alpha >= 0.0 && alpha < 1.0 && beta > 1.0)) {
    throw DomainError("smoothed alpha/beta spread needs 0 <= alpha < 1 < beta <= inf");
  }
}

}  // namespace

SmoothLevel::SmoothLevel(double eps) : eps_(eps) {
  if (!(eps >= 0.0 && eps < 1.0)) throw DomainError("smoothing level must satisfy 0 <= eps < 1");
}

SmoothResult s0_eps(const GroupedSpectrum& g, SmoothLevel eps) {
  const WindowIndex idx(g, eps.eps());
  const std::size_t n = g.size();
  std::size_t t = first_reaching(idx, 0, 0, n);
  if (t == n) t = n - 1;
  const Partial tail = partial_copies(g[t], idx.need(0, t));

  SmoothResult out;
  out.witness.start_group = 0;
  out.witness.end_group = t;
  set_boundaries(out.witness, g, tail);
  out.witness.count_log2 = idx.log2_count(0, t, tail);
  out.witness.max_log2_value = g[0].log2_value;
  out.witness.mass = idx.mass(0, t) + std::exp2(tail.log2_copies + g[t].log2_value);
  out.bits = out.witness.count_log2;
  return out;
}

SmoothResult sinf_eps(const GroupedSpectrum& g, SmoothLevel eps) {
  const WindowIndex idx(g, eps.eps());
  const std::size_t n = g.size();
  std::size_t u = n - 1;
  while (u > 0 && !idx.reaches(u, n)) --u;

  SmoothResult out;
  out.witness.start_group = u;
  out.witness.end_group = n - 1;
  out.witness.copies_in_start = group_copies(g[u]);
  out.witness.log2_copies_in_start = g[u].log2_mult;
  out.witness.copies_in_end = group_copies(g[n - 1]);
  out.witness.log2_copies_in_end = g[n - 1].log2_mult;
  out.witness.count_log2 = idx.range_log2(u, n);
  out.witness.max_log2_value = g[u].log2_value;
  out.witness.mass = idx.mass(u, n);
  out.bits = -g[u].log2_value;
  return out;
}

SmoothResult delta_eps(const GroupedSpectrum& g, SmoothLevel eps) {
  const WindowIndex idx(g, eps.eps());
  const std::size_t n = g.size();

  SmoothResult best;
  best.bits = kInf;
  std::size_t t = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if (k > 0 && !idx.reaches(k, n)) break;
    t = first_reaching(idx, k, std::max(t, k), n);
    if (t == n) t = n - 1;  // only reachable for k == 0 through rounding
    const Partial tail = partial_copies(g[t], idx.need(k, t));
    const double count_log2 = idx.log2_count(k, t, tail);
    const double objective = count_log2 + g[k].log2_value;
    if (objective < best.bits) {
      best.bits = objective;
      best.witness.start_group = k;
      best.witness.end_group = t;
      set_boundaries(best.witness, g, tail);
      best.witness.count_log2 = count_log2;
      best.witness.max_log2_value = g[k].log2_value;
      best.witness.mass = idx.mass(k, t) + std::exp2(tail.log2_copies + g[t].log2_value);
    }
  }
  return best;
}

double delta_eps_bruteforce(const Spectrum& s, SmoothLevel eps) {
  const std::size_t d = s.size();
  if (d > kBruteForceMaxDim) {
    throw GuardError("brute force limited to dimension " + std::to_string(kBruteForceMaxDim));
  }
  const auto r = s.probs();
  CompensatedSum total;
  for (double x : r) total.add(x);
  const double target = effective_target(total.value(), eps.eps());

  const std::size_t subsets = std::size_t{1} << d;
  std::vector<double> sums(subsets, 0.0);
  double best = kInf;
  for (std::size_t mask = 1; mask < subsets; ++mask) {
    const auto low = static_cast<std::size_t>(std::countr_zero(mask));
    sums[mask] = sums[mask & (mask - 1)] + r[low];
    if (sums[mask] < target) continue;
    const double count = static_cast<double>(std::popcount(mask));
    best = std::min(best, std::log2(count) + std::log2(r[low]));
  }
  return best;
}

WitnessEvaluation evaluate_witness(const GroupedSpectrum& g, const SmoothWitness& w) {
  if (w.start_group > w.end_group || w.end_group >= g.size()) {
    throw DomainError("witness: group range out of bounds");
  }
  WitnessEvaluation ev;
  CompensatedSum mass;
  std::vector<double> counts;
  for (std::size_t i = w.start_group; i <= w.end_group; ++i) {
    const Group& grp = g[i];
    double log2_copies = grp.log2_mult;
    if (i == w.end_group) {
      log2_copies = w.log2_copies_in_end;
    } else if (i == w.start_group) {
      log2_copies = w.log2_copies_in_start;
    }
    counts.push_back(log2_copies);
    mass.add(std::exp2(log2_copies + grp.log2_value));
  }
  ev.mass = mass.value();
  ev.count_log2 = log2_sum(counts);
  ev.max_log2_value = g[w.start_group].log2_value;
  return ev;
}

AlphaBetaSmoothResult delta_ab_eps(const Spectrum& s, double alpha, double beta, SmoothLevel eps,
                                   AlphaBetaMode mode) {
  check_orders(alpha, beta);
  if (mode == AlphaBetaMode::Window) return delta_ab_eps_window(group(s), alpha, beta, eps);

  const std::size_t d = s.size();
  if (d > kBruteForceMaxDim) {
    throw GuardError("exact alpha/beta smoothing limited to dimension " +
                     std::to_string(kBruteForceMaxDim));
  }
  const auto r = s.probs();
  CompensatedSum total;
  for (double x : r) total.add(x);
  const double target = effective_target(total.value(), eps.eps());
  const bool beta_inf = std::isinf(beta);

  std::vector<double> ra(d), rb(d);
  for (std::size_t i = 0; i < d; ++i) {
    ra[i] = std::pow(r[i], alpha);
    rb[i] = beta_inf ? 0.0 : std::pow(r[i], beta);
  }
  const std::size_t subsets = std::size_t{1} << d;
  std::vector<double> mass(subsets, 0.0), sa(subsets, 0.0), sb(subsets, 0.0);
  double best = kInf;
  for (std::size_t mask = 1; mask < subsets; ++mask) {
    const auto low = static_cast<std::size_t>(std::countr_zero(mask));
    const std::size_t rest = mask & (mask - 1);
    mass[mask] = mass[rest] + r[low];
    sa[mask] = sa[rest] + ra[low];
    sb[mask] = sb[rest] + rb[low];
    if (mass[mask] < target) continue;
    const double term_a = alpha == 0.0 ? std::log2(static_cast<double>(std::popcount(mask)))
                                       : std::log2(sa[mask]) / (1.0 - alpha);
    const double term_b = beta_inf ? -std::log2(r[low]) : std::log2(sb[mask]) / (1.0 - beta);
    best = std::min(best, term_a - term_b);
  }
  return {best, AlphaBetaMode::Exact, false};
}

AlphaBetaSmoothResult delta_ab_eps_window(const GroupedSpectrum& g, double alpha, double beta,
                                          SmoothLevel eps) {
  check_orders(alpha, beta);
  const std::size_t n = g.size();
  if (n > kWindowMaxGroups) {
    throw GuardError("window alpha/beta scan limited to " + std::to_string(kWindowMaxGroups) +
                     " groups");
  }
  const WindowIndex idx(g, eps.eps());
  const bool beta_inf = std::isinf(beta);

  double best = kInf;
  for (std::size_t i = 0; i < n; ++i) {
    if (!idx.reaches(i, n)) break;
    double la = kNegInf;
    double lb = kNegInf;
    for (std::size_t j = i; j < n; ++j) {
      la = log2_add(la, g[j].log2_mult + alpha * g[j].log2_value);
      if (!beta_inf) lb = log2_add(lb, g[j].log2_mult + beta * g[j].log2_value);
      if (!idx.reaches(i, j + 1)) continue;
      const double term_a = la / (1.0 - alpha);
      const double term_b = beta_inf ? -g[i].log2_value : lb / (1.0 - beta);
      best = std::min(best, term_a - term_b);
    }
  }
  return {best, AlphaBetaMode::Window, true};
}

}  // namespace entcost
