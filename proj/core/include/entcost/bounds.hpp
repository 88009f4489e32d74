#pragma once

#include <optional>
#include <string>
#include <vector>

#include "entcost/spectrum.hpp"

namespace entcost {

enum class Channel { Qubit, Classical };

std::string to_string(Channel c);
/// "qubit" or "classical".
Channel parse_channel(const std::string& text);

/// Lower bound on the communication for a transformation phi -> psi, with
/// every term that enters it.
///
/// raw_rhs = term_target - term_source + slack. A qubit channel reports
/// max(0, raw_rhs / 2), a classical channel max(0, raw_rhs).
struct BoundReport {
  Channel channel = Channel::Qubit;
  double epsilon = 0.0;
  /// Smoothing applied to the target, (4 eps)^(1/8).
  double delta = 0.0;
  double term_target = 0.0;
  double term_source = 0.0;
  double slack = 0.0;
  double raw_rhs = 0.0;
  double bound_bits = 0.0;
  /// The source term is unchanged by appending maximally entangled qubit
  /// pairs, so the bound holds with unlimited EPR supplement.
  bool epr_supplement_invariant = true;
  /// Set for the alpha/beta variant at (0, inf): the 2 log2(1 - delta) slack
  /// of the plain bound, next to the 2 log2(1 - sqrt(delta)) used there.
  std::optional<double> reference_slack;
  std::optional<double> alpha;
  std::optional<double> beta;
  std::vector<std::string> warnings;
};

/// (4 eps)^(1/8); requires 0 <= eps < 1/4.
double smoothing_delta(double epsilon);

/// Inverse of smoothing_delta: eps = delta^8 / 4, for 0 <= delta < 1.
double epsilon_for_delta(double delta);

/// Assembles a report from precomputed terms.
BoundReport make_bound_report(double epsilon, double delta, double term_target,
                              double term_source, double slack, Channel channel);

/// max(0, (Delta(psi) - Delta(phi)) / 2) qubits for exact transformations.
double deterministic_bound(const Spectrum& phi, const Spectrum& psi);

/// Fidelity 1 - eps bound: Delta_delta(psi) - Delta_0(phi) + 2 log2(1 - delta).
BoundReport smoothed_bound(const GroupedSpectrum& phi, const GroupedSpectrum& psi,
                           double epsilon, Channel channel);
BoundReport smoothed_bound(const Spectrum& phi, const Spectrum& psi, double epsilon,
                           Channel channel);
BoundReport smoothed_bound(const Spectrum& phi, const GroupedSpectrum& psi, double epsilon,
                           Channel channel);

/// Alpha/beta variant with slack (2a/(1-a) + 2b/(b-1)) log2(1 - sqrt(delta));
/// qubit channel. The target term is the exact subset minimum (|psi| <= 20).
BoundReport alpha_beta_bound(const Spectrum& phi, const Spectrum& psi, double epsilon,
                             double alpha, double beta, Channel channel = Channel::Qubit);

}  // namespace entcost
