#pragma once

#include <span>
#include <string>

#include "entcost/spectrum.hpp"

namespace entcost {

/// Order of a Renyi entropy. The limits 0, 1 and infinity have dedicated
/// branches; finite orders within 1e-6 of one are rejected.
class RenyiOrder {
 public:
  enum class Kind { Zero, One, Infinity, Finite };

  static RenyiOrder zero() noexcept { return RenyiOrder(Kind::Zero, 0.0); }
  static RenyiOrder one() noexcept { return RenyiOrder(Kind::One, 1.0); }
  static RenyiOrder infinity() noexcept;
  static RenyiOrder finite(double alpha);
  /// Routes 0, 1 and +inf to the limit kinds, anything else to finite().
  static RenyiOrder from_real(double alpha);
  /// Accepts "0", "1", "inf"/"infinity" or a decimal number.
  static RenyiOrder parse(const std::string& text);

  Kind kind() const noexcept { return kind_; }
  double alpha() const noexcept { return alpha_; }
  std::string to_string() const;

 private:
  RenyiOrder(Kind kind, double alpha) noexcept : kind_(kind), alpha_(alpha) {}

  Kind kind_;
  double alpha_;
};

// All entropies are in bits.
double renyi(const Spectrum& s, RenyiOrder order);
double renyi(const GroupedSpectrum& g, RenyiOrder order);

/// S_0 - S_inf.
double delta(const Spectrum& s);
double delta(const GroupedSpectrum& g);

/// S_alpha - S_beta for 0 <= alpha < beta <= inf.
double delta_ab(const Spectrum& s, double alpha, double beta);

double shannon(std::span<const double> p);
/// Throws DomainError when p has support outside r.
double kl_divergence(std::span<const double> p, std::span<const double> r);

}  // namespace entcost
