#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>
#include <vector>

#include "entcost/entropy.hpp"
#include "entcost/errors.hpp"
#include "entcost/log_math.hpp"
#include "entcost/smoothing.hpp"
#include "entcost/tensor_power.hpp"
#include "support/oracles.hpp"

using namespace entcost;

namespace {

Spectrum list(std::vector<double> v) { return Spectrum::from_probs(v); }

TypeVector tv(std::vector<std::uint32_t> c) { return TypeVector{std::move(c)}; }

}  // namespace

TEST(Types, CountAndEnumeration) {
  EXPECT_EQ(type_count(3, 2), 4.0);
  EXPECT_EQ(type_count(10, 3), 66.0);
  const auto all = enumerate_types(3, 3);
  ASSERT_EQ(all.size(), 10u);
  EXPECT_EQ(all.front(), tv({3, 0, 0}));
  EXPECT_EQ(all[1], tv({2, 1, 0}));
  EXPECT_EQ(all.back(), tv({0, 0, 3}));
  std::set<std::vector<std::uint32_t>> seen;
  for (const auto& t : all) {
    EXPECT_EQ(t.n(), 3u);
    seen.insert(t.counts);
  }
  EXPECT_EQ(seen.size(), all.size());
  // Descending lexicographic order.
  for (std::size_t i = 1; i < all.size(); ++i) EXPECT_GT(all[i - 1].counts, all[i].counts);
}

TEST(Types, EnumerationSizesMatchCount) {
  for (std::uint32_t n = 1; n <= 9; ++n) {
    for (std::size_t d = 1; d <= 5; ++d) {
      EXPECT_EQ(static_cast<double>(enumerate_types(n, d).size()), type_count(n, d));
    }
  }
}

TEST(Types, Guards) {
  EXPECT_THROW(TypeEnumerator(0, 2), DomainError);
  EXPECT_THROW(TypeEnumerator(3, 0), DomainError);
  EXPECT_THROW(TypeEnumerator(1000, 8), GuardError);
  EXPECT_THROW(power_grouped_spectrum(uniform_spectrum(3), 0), DomainError);
}

TEST(Types, WeightAndCardinality) {
  EXPECT_NEAR(type_log_weight(tv({2, 1}), two_level_spectrum(0.2)), -2.965784284662087, 1e-14);
  EXPECT_NEAR(type_log_cardinality(tv({5, 5})), 7.977279923499917, 1e-14);
  EXPECT_EQ(*type_cardinality_exact(tv({5, 5})), 252u);
  EXPECT_EQ(*type_cardinality_exact(tv({2, 1, 1})), 12u);
  EXPECT_FALSE(type_cardinality_exact(tv({100, 100})).has_value());
  EXPECT_THROW(type_log_weight(tv({1, 1}), list({1.0})), DomainError);
}

TEST(Types, CardinalityMatchesBigIntegers) {
  std::mt19937_64 rng(61);
  for (int i = 0; i < 400; ++i) {
    const std::size_t d = 1 + rng() % 5;
    std::vector<std::uint32_t> c(d);
    std::uint32_t n = 1 + rng() % 170;
    for (std::size_t j = 0; j + 1 < d; ++j) {
      c[j] = static_cast<std::uint32_t>(rng() % (n + 1));
      n -= c[j];
    }
    c[d - 1] = n;
    const auto big = oracle::multinomial_big(c);
    const double want = oracle::log2_big(big);
    EXPECT_NEAR(type_log_cardinality(tv(c)), want, 1e-9 * std::max(1.0, want));
    if (auto exact = type_cardinality_exact(tv(c))) {
      EXPECT_EQ(boost::multiprecision::cpp_int(*exact), big);
    } else {
      EXPECT_GT(big, boost::multiprecision::cpp_int(kExactCountLimit));
    }
  }
}

TEST(Power, MatchesDenseTensor) {
  std::mt19937_64 rng(62);
  for (int i = 0; i < 60; ++i) {
    const Spectrum base = oracle::random_spectrum(rng, 1 + rng() % 3, i % 4 == 0);
    const std::uint32_t n = 1 + rng() % 8;
    const GroupedSpectrum g = power_grouped_spectrum(base, n);
    const Spectrum dense = oracle::dense_power(base, n);
    EXPECT_EQ(*g.exact_count(), dense.size());
    EXPECT_NEAR(g.total_mass(), 1.0, 1e-12);
    EXPECT_LE(trace_distance_diag(ungroup(g), dense), 1e-12);
  }
}

TEST(Power, DegenerateBase) {
  const GroupedSpectrum g = power_grouped_spectrum(uniform_spectrum(3), 4);
  ASSERT_EQ(g.size(), 1u);
  EXPECT_EQ(*g[0].mult, 81u);
  const GroupedSpectrum h = power_grouped_spectrum(list({0.5, 0.25, 0.25}), 3);
  // Values 1/8 * 2^-k for k = number of quarter draws, k = 0..3.
  ASSERT_EQ(h.size(), 4u);
  EXPECT_EQ(*h[0].mult, 1u);
  EXPECT_EQ(*h[1].mult, 6u);
  EXPECT_EQ(*h[2].mult, 12u);
  EXPECT_EQ(*h[3].mult, 8u);
}

TEST(Power, MergesCoincidentWeights) {
  // (0.5, 0.25, 0.125, 0.125): many types share a value.
  const Spectrum base = list({0.5, 0.25, 0.125, 0.125});
  const GroupedSpectrum g = power_grouped_spectrum(base, 6);
  const Spectrum dense = oracle::dense_power(base, 6);
  EXPECT_EQ(g.size(), group(dense).size());
  EXPECT_LE(trace_distance_diag(ungroup(g), dense), 1e-12);
}

TEST(Power, HugeBinaryPowerStaysNormalized) {
  for (std::uint32_t n : {1000u, 25600u, 100000u}) {
    const GroupedSpectrum g = power_grouped_spectrum(two_level_spectrum(0.1), n);
    EXPECT_EQ(g.size(), n + 1);
    EXPECT_NEAR(g.total_mass(), 1.0, 1e-9);
    EXPECT_NEAR(g.log2_count(), static_cast<double>(n), 1e-9 * n);
    EXPECT_NEAR(renyi(g, RenyiOrder::infinity()), -static_cast<double>(n) * std::log2(0.9), 1e-9 * n);
  }
}

TEST(Power, SmoothedQuantitiesMatchDense) {
  std::mt19937_64 rng(63);
  for (int i = 0; i < 40; ++i) {
    const Spectrum base = oracle::random_spectrum(rng, 2 + rng() % 2, i % 3 == 0);
    const std::uint32_t n = 1 + rng() % 9;
    const GroupedSpectrum g = power_grouped_spectrum(base, n);
    const GroupedSpectrum dg = group(oracle::dense_power(base, n));
    for (double eps : {0.0, 0.05, 0.2, 0.5}) {
      EXPECT_NEAR(delta_eps(g, SmoothLevel(eps)).bits, delta_eps(dg, SmoothLevel(eps)).bits, 1e-9);
      EXPECT_NEAR(s0_eps(g, SmoothLevel(eps)).bits, s0_eps(dg, SmoothLevel(eps)).bits, 1e-9);
      EXPECT_NEAR(sinf_eps(g, SmoothLevel(eps)).bits, sinf_eps(dg, SmoothLevel(eps)).bits, 1e-9);
    }
  }
}

TEST(Clt, Params) {
  const CltParams p = clt_params(two_level_spectrum(0.3));
  EXPECT_NEAR(p.mean_bits, 0.8812908992306927, 1e-14);
  EXPECT_NEAR(p.sigma_bits, 0.5601705799714625, 1e-14);
  EXPECT_EQ(clt_params(uniform_spectrum(4)).sigma_bits, 0.0);
  EXPECT_NEAR(clt_params(two_level_spectrum(0.1)).sigma_bits, 0.9509775004326938, 1e-14);
}

TEST(Clt, Prediction) {
  EXPECT_NEAR(clt_delta_prediction(two_level_spectrum(0.1), 10000, 0.1), 243.74534089544193,
              1e-9);
  EXPECT_THROW(clt_delta_prediction(uniform_spectrum(2), 100, 0.1), DomainError);
  EXPECT_THROW(clt_delta_prediction(two_level_spectrum(0.1), 100, 0.0), DomainError);
  EXPECT_THROW(clt_delta_prediction(two_level_spectrum(0.1), 100, 1.0), DomainError);
}

TEST(Typical, Report) {
  const Spectrum base = two_level_spectrum(0.3);
  const TypicalSetReport r = typical_set_report(base, 200, 3.0);
  EXPECT_GT(r.member_types, 0u);
  EXPECT_GE(r.exact_mass, r.mass_lower_bound);
  EXPECT_LE(r.log_card_exact, r.log_card_upper);
  EXPECT_GT(r.exact_mass, 0.9);
  EXPECT_TRUE(is_typical(tv({140, 60}), std::vector<double>{0.7, 0.3}, 1.0));
  EXPECT_FALSE(is_typical(tv({200, 0}), std::vector<double>{0.7, 0.3}, 1.0));
}

TEST(Typical, ThreeOutcomes) {
  const Spectrum base = list({0.5, 0.3, 0.2});
  for (double dp : {2.0, 3.0, 4.0}) {
    const TypicalSetReport r = typical_set_report(base, 150, dp);
    EXPECT_GE(r.exact_mass, r.mass_lower_bound);
    EXPECT_LE(r.log_card_exact, r.log_card_upper);
  }
}

TEST(Types, DocumentedExamples) {
  EXPECT_EQ(enumerate_types(2, 2), (std::vector<TypeVector>{tv({2, 0}), tv({1, 1}), tv({0, 2})}));
  const auto units = enumerate_types(1, 4);
  ASSERT_EQ(units.size(), 4u);
  EXPECT_EQ(units[3], tv({0, 0, 0, 1}));
  EXPECT_NEAR(type_log_weight(tv({7, 0}), two_level_spectrum(0.3)), 7 * std::log2(0.7), 1e-14);
  EXPECT_EQ(type_log_weight(tv({1, 1}), uniform_spectrum(2)), -2.0);
  EXPECT_EQ(type_log_cardinality(tv({9, 0})), 0.0);
  EXPECT_EQ(type_log_cardinality(tv({1, 1})), 1.0);
}

TEST(Types, WeightIsRelativeEntropyForm) {
  const Spectrum r = list({0.5, 0.3, 0.2});
  for (const auto& t : enumerate_types(12, 3)) {
    std::vector<double> p;
    for (auto c : t.counts) p.push_back(c / 12.0);
    const double want = -12.0 * (kl_divergence(p, r.probs()) + shannon(p));
    EXPECT_NEAR(type_log_weight(t, r), want, 1e-9);
  }
}

TEST(Types, CardinalitySandwich) {
  for (std::uint32_t n : {5u, 40u, 150u}) {
    for (const auto& t : enumerate_types(n, 3)) {
      std::vector<double> p;
      for (auto c : t.counts) p.push_back(static_cast<double>(c) / n);
      const double nh = n * shannon(p);
      const double lc = type_log_cardinality(t);
      EXPECT_LE(lc, nh + 1e-9);
      EXPECT_GE(lc, nh - 3.0 * std::log2(n + 1.0) - 1e-9);
    }
  }
}

TEST(Types, DecompositionIsComplete) {
  const Spectrum r = list({0.45, 0.3, 0.15, 0.1});
  CompensatedSum total;
  for (const auto& t : enumerate_types(30, 4)) {
    total.add(std::exp2(type_log_cardinality(t) + type_log_weight(t, r)));
  }
  EXPECT_NEAR(total.value(), 1.0, 1e-6);
}

TEST(Power, DocumentedExamples) {
  const GroupedSpectrum u = power_grouped_spectrum(uniform_spectrum(2), 3);
  ASSERT_EQ(u.size(), 1u);
  EXPECT_EQ(u[0].log2_value, -3.0);
  EXPECT_EQ(*u[0].mult, 8u);
  const GroupedSpectrum g = power_grouped_spectrum(two_level_spectrum(0.2), 2);
  ASSERT_EQ(g.size(), 3u);
  EXPECT_NEAR(g[0].value, 0.64, 1e-15);
  EXPECT_NEAR(g[1].value, 0.16, 1e-15);
  EXPECT_EQ(*g[1].mult, 2u);
  EXPECT_NEAR(g[2].value, 0.04, 1e-15);
  const GroupedSpectrum g12 = power_grouped_spectrum(two_level_spectrum(0.2), 12);
  EXPECT_EQ(g12.size(), 13u);
  EXPECT_LE(trace_distance_diag(ungroup(g12), oracle::dense_power(two_level_spectrum(0.2), 12)),
            1e-12);
}

TEST(Clt, MedianGivesZero) {
  EXPECT_NEAR(clt_delta_prediction(two_level_spectrum(0.3), 100, 0.5), 0.0, 1e-12);
}

TEST(Typical, ChebyshevExample) {
  const TypicalSetReport r = typical_set_report(two_level_spectrum(0.2), 100, 5.0);
  EXPECT_NEAR(r.mass_lower_bound, 0.92, 1e-15);
  EXPECT_GE(r.exact_mass, 0.92);
  const TypicalSetReport vac = typical_set_report(two_level_spectrum(0.2), 100, 1.0);
  EXPECT_LE(vac.mass_lower_bound, 0.0);
  EXPECT_GT(vac.exact_mass, 0.0);
}

TEST(Typical, FlatBaseWindow) {
  const std::vector<double> r{0.5, 0.5};
  const std::uint32_t n = 64;
  const double dp = 2.0;
  for (std::uint32_t k = 0; k <= n; ++k) {
    const bool want = std::abs(static_cast<double>(k) / n - 0.5) <= dp / (2.0 * std::sqrt(n));
    EXPECT_EQ(is_typical(tv({k, n - k}), r, dp), want) << k;
  }
}

TEST(Power, ThinTailCutoffMatchesDense) {
  // Tail eigenvalues near 1e-15 straddle the mass slack at eps = 0.
  const Spectrum base =
      list({0.99088472328313049, 0.0066173536825401835, 0.0024979230343293254});
  for (std::uint32_t n : {9u, 12u}) {
    const GroupedSpectrum typed = power_grouped_spectrum(base, n);
    const GroupedSpectrum dense = group(oracle::dense_power(base, n));
    EXPECT_EQ(s0_eps(typed, SmoothLevel(0.0)).witness.copies_in_end,
              s0_eps(dense, SmoothLevel(0.0)).witness.copies_in_end);
    EXPECT_NEAR(delta_eps(typed, SmoothLevel(0.0)).bits, delta_eps(dense, SmoothLevel(0.0)).bits,
                1e-12);
  }
}
