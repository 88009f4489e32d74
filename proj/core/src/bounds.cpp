#include "entcost/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "entcost/entropy.hpp"
#include "entcost/errors.hpp"
#include "entcost/smoothing.hpp"

namespace entcost {

std::string to_string(Channel c) { return c == Channel::Qubit ? "qubit" : "classical"; }

Channel parse_channel(const std::string& text) {
  if (text == "qubit" || text == "quantum") return Channel::Qubit;
  if (text == "classical") return Channel::Classical;
  throw ParseError("unknown channel '" + text + "' (expected qubit or classical)");
}

double smoothing_delta(double epsilon) {
  if (!(epsilon >= 0.0 && epsilon < 0.25)) {
    throw DomainError(
        "epsilon must satisfy 0 <= eps < 1/4: the target smoothing delta = (4 eps)^(1/8) must "
        "stay below 1 for log2(1 - delta) to exist");
  }
  return std::pow(4.0 * epsilon, 0.125);
}

double epsilon_for_delta(double delta) {
  if (!(delta >= 0.0 && delta < 1.0)) throw DomainError("delta must satisfy 0 <= delta < 1");
  return std::pow(delta, 8.0) / 4.0;
}

BoundReport make_bound_report(double epsilon, double delta, double term_target,
                              double term_source, double slack, Channel channel) {
  BoundReport r;
  r.channel = channel;
  r.epsilon = epsilon;
  r.delta = delta;
  r.term_target = term_target;
  r.term_source = term_source;
  r.slack = slack;
  r.raw_rhs = term_target - term_source + slack;
  r.bound_bits = channel == Channel::Qubit ? std::max(0.0, r.raw_rhs / 2.0)
                                           : std::max(0.0, r.raw_rhs);
  if (delta >= 0.5) {
    r.warnings.push_back("smoothing delta >= 1/2; the bound is likely vacuous");
  }
  return r;
}

double deterministic_bound(const Spectrum& phi, const Spectrum& psi) {
  return std::max(0.0, 0.5 * (delta(psi) - delta(phi)));
}

BoundReport smoothed_bound(const GroupedSpectrum& phi, const GroupedSpectrum& psi,
                           double epsilon, Channel channel) {
  const double d = smoothing_delta(epsilon);
  const double target = delta_eps(psi, SmoothLevel(d)).bits;
  const double source = delta(phi);
  return make_bound_report(epsilon, d, target, source, 2.0 * std::log2(1.0 - d), channel);
}

BoundReport smoothed_bound(const Spectrum& phi, const Spectrum& psi, double epsilon,
                           Channel channel) {
  return smoothed_bound(group(phi), group(psi), epsilon, channel);
}

BoundReport smoothed_bound(const Spectrum& phi, const GroupedSpectrum& psi, double epsilon,
                           Channel channel) {
  return smoothed_bound(group(phi), psi, epsilon, channel);
}

BoundReport alpha_beta_bound(const Spectrum& phi, const Spectrum& psi, double epsilon,
                             double alpha, double beta, Channel channel) {
  if (!(alpha >= 0.0 && alpha < 1.0 && beta > 1.0)) {
    throw DomainError("alpha/beta bound needs 0 <= alpha < 1 < beta <= inf");
  }
  const double d = smoothing_delta(epsilon);
  const double target =
      delta_ab_eps(psi, alpha, beta, SmoothLevel(d), AlphaBetaMode::Exact).bits;
  const double source = delta_ab(phi, alpha, beta);
  const double beta_coeff = std::isinf(beta) ? 2.0 : 2.0 * beta / (beta - 1.0);
  const double coeff = 2.0 * alpha / (1.0 - alpha) + beta_coeff;
  const double slack = coeff * std::log2(1.0 - std::sqrt(d));

  BoundReport r = make_bound_report(epsilon, d, target, source, slack, channel);
  r.alpha = alpha;
  r.beta = beta;
  if (alpha == 0.0 && std::isinf(beta)) {
    r.reference_slack = 2.0 * std::log2(1.0 - d);
    r.warnings.push_back(
        "alpha/beta slack at (0, inf) uses log2(1 - sqrt(delta)); the plain smoothed bound "
        "uses log2(1 - delta), see reference_slack");
  }
  return r;
}

}  // namespace entcost
