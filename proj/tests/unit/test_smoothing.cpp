#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "entcost/entropy.hpp"
#include "entcost/errors.hpp"
#include "entcost/smoothing.hpp"
#include "entcost/tensor_power.hpp"
#include "support/oracles.hpp"

using namespace entcost;

namespace {

Spectrum list(std::vector<double> v) { return Spectrum::from_probs(v); }

const Spectrum kDyadic = Spectrum::from_probs(std::vector<double>{0.5, 0.25, 0.125, 0.125});
constexpr double kEpsGrid[] = {0.0, 0.05, 0.2, 0.5};

double d_eps(const Spectrum& s, double eps) { return delta_eps(group(s), SmoothLevel(eps)).bits; }

}  // namespace

TEST(SmoothLevel, Range) {
  EXPECT_THROW(SmoothLevel(-0.1), DomainError);
  EXPECT_THROW(SmoothLevel(1.0), DomainError);
  EXPECT_NO_THROW(SmoothLevel(0.0));
}

TEST(S0Eps, Examples) {
  EXPECT_DOUBLE_EQ(s0_eps(group(kDyadic), SmoothLevel(0.1)).bits, 2.0);
  EXPECT_NEAR(s0_eps(group(uniform_spectrum(8)), SmoothLevel(0.25)).bits, std::log2(6.0), 1e-15);
  const auto r = s0_eps(group(uniform_spectrum(8)), SmoothLevel(0.25));
  EXPECT_EQ(r.witness.copies_in_end, 6.0);
}

TEST(SinfEps, Examples) {
  EXPECT_DOUBLE_EQ(sinf_eps(group(kDyadic), SmoothLevel(0.6)).bits, 2.0);
  for (double eps : kEpsGrid) {
    EXPECT_NEAR(sinf_eps(group(uniform_spectrum(16)), SmoothLevel(eps)).bits, 4.0, 1e-15);
  }
}

TEST(DeltaEps, Examples) {
  EXPECT_NEAR(d_eps(kDyadic, 0.2), 0.5849625007211562, 1e-14);
  EXPECT_NEAR(delta_eps_bruteforce(kDyadic, SmoothLevel(0.2)), 0.5849625007211562, 1e-14);
  EXPECT_EQ(d_eps(uniform_spectrum(4), 0.0), 0.0);
  EXPECT_NEAR(d_eps(embezzler_spectrum(4), 0.0), 0.9411063109464314, 1e-14);
  EXPECT_NEAR(d_eps(list({0.9, 0.1}), 0.15), std::log2(0.9), 1e-15);
  EXPECT_NEAR(delta_eps_bruteforce(list({0.9, 0.1}), SmoothLevel(0.15)), std::log2(0.9), 1e-15);
}

TEST(DeltaEps, WitnessOfDyadicExample) {
  const GroupedSpectrum g = group(kDyadic);
  const auto r = delta_eps(g, SmoothLevel(0.2));
  EXPECT_EQ(r.witness.start_group, 0u);
  EXPECT_EQ(r.witness.end_group, 2u);
  EXPECT_EQ(r.witness.copies_in_end, 1.0);
  EXPECT_NEAR(r.witness.mass, 0.875, 1e-15);
}

TEST(DeltaEps, UniformPartialTail) {
  // ceil((1 - eps) d) copies of 1/d.
  for (std::size_t d : {3u, 7u, 10u, 64u}) {
    for (double eps : kEpsGrid) {
      const double want =
          std::log2(std::ceil((1.0 - eps) * static_cast<double>(d) - 1e-9) / static_cast<double>(d));
      EXPECT_NEAR(d_eps(uniform_spectrum(d), eps), want, 1e-12) << d << " " << eps;
    }
  }
}

TEST(DeltaEps, ZeroSmoothingIsDelta) {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 300; ++i) {
    const Spectrum s = oracle::random_spectrum(rng, 1 + rng() % 15, i % 2 == 0);
    EXPECT_NEAR(d_eps(s, 0.0), delta(s), 1e-12);
    EXPECT_NEAR(s0_eps(group(s), SmoothLevel(0.0)).bits, renyi(s, RenyiOrder::zero()), 1e-12);
    EXPECT_NEAR(sinf_eps(group(s), SmoothLevel(0.0)).bits, renyi(s, RenyiOrder::infinity()),
                1e-12);
  }
}

TEST(DeltaEps, MatchesBruteForce) {
  std::mt19937_64 rng(22);
  for (int i = 0; i < 400; ++i) {
    const Spectrum s = oracle::random_spectrum(rng, 1 + rng() % 12, i % 3 == 0);
    for (double eps : kEpsGrid) {
      EXPECT_NEAR(d_eps(s, eps), delta_eps_bruteforce(s, SmoothLevel(eps)), 1e-12);
    }
  }
}

TEST(DeltaEps, MatchesDenseScans) {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 200; ++i) {
    const Spectrum s = oracle::random_spectrum(rng, 1 + rng() % 40, i % 2 == 0);
    for (double eps : kEpsGrid) {
      const GroupedSpectrum g = group(s);
      EXPECT_NEAR(delta_eps(g, SmoothLevel(eps)).bits, oracle::delta_dense(s, eps), 1e-12);
      EXPECT_NEAR(s0_eps(g, SmoothLevel(eps)).bits, oracle::s0_dense(s, eps), 1e-12);
      EXPECT_NEAR(sinf_eps(g, SmoothLevel(eps)).bits, oracle::sinf_dense(s, eps), 1e-12);
    }
  }
}

TEST(DeltaEps, BruteForceGuard) {
  EXPECT_THROW(delta_eps_bruteforce(uniform_spectrum(21), SmoothLevel(0.1)), GuardError);
}

TEST(DeltaEps, Inequalities) {
  std::mt19937_64 rng(24);
  for (int i = 0; i < 500; ++i) {
    const Spectrum s = oracle::random_spectrum(rng, 1 + rng() % 20, i % 4 == 0);
    const GroupedSpectrum g = group(s);
    double prev_delta = INFINITY;
    double prev_s0 = INFINITY;
    double prev_sinf = -INFINITY;
    for (double eps : {0.0, 0.01, 0.05, 0.1, 0.2, 0.35, 0.5, 0.8}) {
      const SmoothLevel lv(eps);
      const double d = delta_eps(g, lv).bits;
      const double s0 = s0_eps(g, lv).bits;
      const double si = sinf_eps(g, lv).bits;
      EXPECT_GE(d, std::log2(1.0 - eps) - 1e-12);
      EXPECT_LE(d, prev_delta + 1e-12);
      EXPECT_LE(s0, prev_s0 + 1e-12);
      EXPECT_GE(si, prev_sinf - 1e-12);
      EXPECT_GE(d, s0 - si - 1e-12);
      if (eps == 0.0) EXPECT_NEAR(d, s0 - si, 1e-12);
      prev_delta = d;
      prev_s0 = s0;
      prev_sinf = si;
    }
  }
}

TEST(Witness, ReEvaluates) {
  std::mt19937_64 rng(25);
  for (int i = 0; i < 300; ++i) {
    const Spectrum s = oracle::random_spectrum(rng, 1 + rng() % 30, i % 2 == 0);
    const GroupedSpectrum g = group(s);
    for (double eps : kEpsGrid) {
      for (const SmoothResult& r : {delta_eps(g, SmoothLevel(eps)), s0_eps(g, SmoothLevel(eps))}) {
        const WitnessEvaluation ev = evaluate_witness(g, r.witness);
        EXPECT_GE(ev.mass, 1.0 - eps - 1e-9);
        EXPECT_NEAR(ev.mass, r.witness.mass, 1e-9);
        EXPECT_NEAR(ev.count_log2, r.witness.count_log2, 1e-9);
        EXPECT_NEAR(ev.max_log2_value, r.witness.max_log2_value, 1e-12);
      }
      const SmoothResult d = delta_eps(g, SmoothLevel(eps));
      const WitnessEvaluation ev = evaluate_witness(g, d.witness);
      EXPECT_NEAR(ev.count_log2 + ev.max_log2_value, d.bits, 1e-9);
    }
  }
}

TEST(Witness, LargeGroupedPower) {
  const GroupedSpectrum g = power_grouped_spectrum(two_level_spectrum(0.1), 20000);
  const SmoothResult r = delta_eps(g, SmoothLevel(0.2));
  const WitnessEvaluation ev = evaluate_witness(g, r.witness);
  EXPECT_TRUE(std::isfinite(r.bits));
  EXPECT_GE(ev.mass, 0.8 - 1e-9);
  EXPECT_NEAR(ev.count_log2 + ev.max_log2_value, r.bits, 1e-6);
}

TEST(SmoothingRelations, HighFidelityRelation) {
  // rho close to sigma in l1: Delta_0(rho) >= Delta_sqrt(e)(sigma) + log2(1 - sqrt(e)).
  std::mt19937_64 rng(26);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int checked = 0;
  for (int i = 0; i < 2000 && checked < 600; ++i) {
    const std::size_t d = 1 + rng() % 6;
    const Spectrum sigma = oracle::random_spectrum(rng, d);
    const double scale = 0.2 * u(rng);
    std::vector<double> raw(sigma.probs().begin(), sigma.probs().end());
    for (double& x : raw) x = std::max(0.0, x + scale * (u(rng) - 0.5) / static_cast<double>(d));
    for (std::size_t extra = rng() % 3; extra > 0; --extra) raw.push_back(scale * u(rng) / d);
    const Spectrum rho = Spectrum::from_probs(raw, true);
    const double e = trace_distance_diag(rho, sigma);
    if (!(e < 1.0)) continue;
    ++checked;
    EXPECT_GE(delta(rho) + 1e-9,
              d_eps(sigma, std::sqrt(e)) + std::log2(1.0 - std::sqrt(e)));
  }
  EXPECT_GE(checked, 500);
}

TEST(SmoothingRelations, ProductLowerBound) {
  std::mt19937_64 rng(27);
  for (int i = 0; i < 600; ++i) {
    const Spectrum tau = oracle::random_spectrum(rng, 1 + rng() % 6, i % 3 == 0);
    const Spectrum omega = oracle::random_spectrum(rng, 1 + rng() % 6);
    const double eps = std::vector<double>{0.001, 0.01, 0.05, 0.1, 0.2, 0.4}[rng() % 6];
    EXPECT_GE(d_eps(tensor(tau, omega), eps) + 1e-9,
              d_eps(tau, std::sqrt(eps)) + std::log2(1.0 - std::sqrt(eps)));
  }
}

TEST(SmoothingRelations, ReverseQuasiAdditivity) {
  std::mt19937_64 rng(28);
  for (int i = 0; i < 600; ++i) {
    const Spectrum tau = oracle::random_spectrum(rng, 1 + rng() % 6, i % 3 == 0);
    const Spectrum omega = oracle::random_spectrum(rng, 1 + rng() % 6, i % 5 == 0);
    const double eps = std::vector<double>{0.0, 0.01, 0.05, 0.1, 0.2, 0.45}[rng() % 6];
    EXPECT_LE(d_eps(tensor(tau, omega), 2.0 * eps), d_eps(tau, eps) + d_eps(omega, eps) + 1e-9);
  }
}

TEST(AlphaBeta, Examples) {
  EXPECT_NEAR(delta_ab_eps(kDyadic, 0.5, 2.0, SmoothLevel(0.2), AlphaBetaMode::Exact).bits,
              -0.3233697176584558, 1e-13);
  EXPECT_NEAR(
      delta_ab_eps(uniform_spectrum(4), 0.5, 2.0, SmoothLevel(0.0), AlphaBetaMode::Exact).bits,
      0.0, 1e-12);
  EXPECT_THROW(delta_ab_eps(kDyadic, 1.5, 2.0, SmoothLevel(0.1), AlphaBetaMode::Exact),
               DomainError);
  EXPECT_THROW(delta_ab_eps(kDyadic, 0.5, 0.9, SmoothLevel(0.1), AlphaBetaMode::Exact),
               DomainError);
  EXPECT_THROW(
      delta_ab_eps(uniform_spectrum(21), 0.5, 2.0, SmoothLevel(0.1), AlphaBetaMode::Exact),
      GuardError);
}

TEST(AlphaBeta, ExtremeOrdersMatchDeltaEps) {
  std::mt19937_64 rng(29);
  for (int i = 0; i < 300; ++i) {
    const Spectrum s = oracle::random_spectrum(rng, 1 + rng() % 10, i % 2 == 0);
    for (double eps : kEpsGrid) {
      EXPECT_NEAR(
          delta_ab_eps(s, 0.0, INFINITY, SmoothLevel(eps), AlphaBetaMode::Exact).bits,
          delta_eps_bruteforce(s, SmoothLevel(eps)), 1e-12);
    }
  }
}

TEST(AlphaBeta, ZeroSmoothingIsDeltaAb) {
  std::mt19937_64 rng(30);
  for (int i = 0; i < 200; ++i) {
    const Spectrum s = oracle::random_spectrum(rng, 1 + rng() % 10);
    // At eps = 0 every index set must hold all the mass.
    EXPECT_NEAR(delta_ab_eps(s, 0.5, 2.0, SmoothLevel(0.0), AlphaBetaMode::Exact).bits,
                delta_ab(s, 0.5, 2.0), 1e-12);
  }
}

TEST(AlphaBeta, WindowIsUpperBound) {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 300; ++i) {
    const Spectrum s = oracle::random_spectrum(rng, 1 + rng() % 10, i % 2 == 0);
    for (double eps : kEpsGrid) {
      const auto exact = delta_ab_eps(s, 0.5, 3.0, SmoothLevel(eps), AlphaBetaMode::Exact);
      const auto window = delta_ab_eps(s, 0.5, 3.0, SmoothLevel(eps), AlphaBetaMode::Window);
      EXPECT_TRUE(window.upper_bound);
      EXPECT_FALSE(exact.upper_bound);
      EXPECT_GE(window.bits, exact.bits - 1e-12);
    }
  }
}
