// Empirical search for counterexamples to a symmetric lower bound
//
//   Delta_eps(tau x omega) >= (1 - e1) Delta_e1(tau) + (1 - e1) Delta_e1(omega) + e2
//
// with e1 = sqrt(eps) and e2 = 2 log2(1 - sqrt(eps)). Whether any such bound holds
// is open, so this only reports margins; the exit status is 0 unless it crashes.

#include <CLI11.hpp>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "entcost/smoothing.hpp"
#include "entcost/spectrum.hpp"

using namespace entcost;

namespace {

double d_eps(const Spectrum& s, double eps) { return delta_eps(group(s), SmoothLevel(eps)).bits; }

Spectrum random_state(std::mt19937_64& rng, std::size_t max_dim) {
  std::uniform_int_distribution<std::size_t> dim(1, max_dim);
  const std::size_t d = dim(rng);
  std::vector<double> raw(d);
  switch (rng() % 4) {
    case 0: {  // flat body with a heavy head
      const double head = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
      for (double& x : raw) x = (1.0 - head) / static_cast<double>(d);
      raw[0] += head;
      break;
    }
    case 1: {  // harmonic
      for (std::size_t i = 0; i < d; ++i) raw[i] = 1.0 / static_cast<double>(i + 1);
      break;
    }
    case 2: {  // geometric
      const double r = std::uniform_real_distribution<double>(0.05, 1.0)(rng);
      for (std::size_t i = 0; i < d; ++i) raw[i] = std::pow(r, static_cast<double>(i));
      break;
    }
    default: {
      std::exponential_distribution<double> e(1.0);
      for (double& x : raw) x = e(rng);
    }
  }
  return Spectrum::from_probs(raw, true);
}

std::string show(const Spectrum& s) {
  std::string out = "(";
  for (std::size_t i = 0; i < s.size(); ++i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%s%.4g", i ? "," : "", s[i]);
    out += buf;
  }
  return out + ")";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Counterexample search for symmetric quasi-additivity of the smoothed spread"};
  std::uint64_t seed = 1;
  std::uint64_t trials = 20000;
  std::size_t max_dim = 6;
  app.add_option("--seed", seed);
  app.add_option("--trials", trials);
  app.add_option("--max-dim", max_dim)->check(CLI::Range(1, 64));
  CLI11_PARSE(app, argc, argv);

  std::mt19937_64 rng(seed);
  std::printf("eps,trials,violations,min_margin,worst_tau,worst_omega\n");
  for (double eps : {1e-4, 1e-3, 1e-2, 0.05, 0.1, 0.2}) {
    const double e1 = std::sqrt(eps);
    const double e2 = 2.0 * std::log2(1.0 - e1);
    std::uint64_t violations = 0;
    double worst = INFINITY;
    std::string worst_tau, worst_omega;
    for (std::uint64_t t = 0; t < trials; ++t) {
      const Spectrum tau = random_state(rng, max_dim);
      const Spectrum omega = random_state(rng, max_dim);
      const double lhs = d_eps(tensor(tau, omega), eps);
      const double rhs = (1.0 - e1) * (d_eps(tau, e1) + d_eps(omega, e1)) + e2;
      const double margin = lhs - rhs;
      violations += margin < -1e-9;
      if (margin < worst) {
        worst = margin;
        worst_tau = show(tau);
        worst_omega = show(omega);
      }
    }
    std::printf("%g,%llu,%llu,%.6g,\"%s\",\"%s\"\n", eps, static_cast<unsigned long long>(trials),
                static_cast<unsigned long long>(violations), worst, worst_tau.c_str(),
                worst_omega.c_str());
  }
  return 0;
}
