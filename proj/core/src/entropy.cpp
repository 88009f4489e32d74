#include "entcost/entropy.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "entcost/errors.hpp"
#include "entcost/log_math.hpp"

namespace entcost {

namespace {

constexpr double kNearOneGuard = 1e-6;
constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

RenyiOrder RenyiOrder::infinity() noexcept { return RenyiOrder(Kind::Infinity, kInf); }

RenyiOrder RenyiOrder::finite(double alpha) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    throw DomainError("Renyi order must be finite and >= 0");
  }
  if (std::abs(alpha - 1.0) < kNearOneGuard) {
    throw DomainError("finite Renyi order too close to 1; use order one explicitly");
  }
  return RenyiOrder(Kind::Finite, alpha);
}

RenyiOrder RenyiOrder::from_real(double alpha) {
  if (alpha == 0.0) return zero();
  if (alpha == 1.0) return one();
  if (alpha == kInf) return infinity();
  return finite(alpha);
}

RenyiOrder RenyiOrder::parse(const std::string& text) {
  if (text == "inf" || text == "infinity" || text == "Inf") return infinity();
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ParseError("cannot parse Renyi order '" + text + "'");
  }
  if (used != text.size()) throw ParseError("cannot parse Renyi order '" + text + "'");
  return from_real(value);
}

std::string RenyiOrder::to_string() const {
  switch (kind_) {
    case Kind::Zero: return "0";
    case Kind::One: return "1";
    case Kind::Infinity: return "inf";
    case Kind::Finite: break;
  }
  std::string s = std::to_string(alpha_);
  while (s.size() > 1 && s.back() == '0') s.pop_back();
  if (s.back() == '.') s.pop_back();
  return s;
}

double renyi(const Spectrum& s, RenyiOrder order) {
  const auto r = s.probs();
  switch (order.kind()) {
    case RenyiOrder::Kind::Zero:
      return std::log2(static_cast<double>(r.size()));
    case RenyiOrder::Kind::Infinity:
      return -std::log2(s.max());
    case RenyiOrder::Kind::One:
      return shannon(r);
    case RenyiOrder::Kind::Finite: {
      const double a = order.alpha();
      CompensatedSum acc;
      for (double x : r) acc.add(std::pow(x, a));
      return std::log2(acc.value()) / (1.0 - a);
    }
  }
  return 0.0;
}

double renyi(const GroupedSpectrum& g, RenyiOrder order) {
  switch (order.kind()) {
    case RenyiOrder::Kind::Zero:
      return g.log2_count();
    case RenyiOrder::Kind::Infinity:
      return -g.front().log2_value;
    case RenyiOrder::Kind::One: {
      CompensatedSum acc;
      for (const Group& grp : g.groups()) acc.add(-grp.mass * grp.log2_value);
      return acc.value();
    }
    case RenyiOrder::Kind::Finite: {
      const double a = order.alpha();
      std::vector<double> terms;
      terms.reserve(g.size());
      for (const Group& grp : g.groups()) terms.push_back(grp.log2_mult + a * grp.log2_value);
      return log2_sum(terms) / (1.0 - a);
    }
  }
  return 0.0;
}

double delta(const Spectrum& s) {
  return renyi(s, RenyiOrder::zero()) - renyi(s, RenyiOrder::infinity());
}

double delta(const GroupedSpectrum& g) {
  return renyi(g, RenyiOrder::zero()) - renyi(g, RenyiOrder::infinity());
}

double delta_ab(const Spectrum& s, double alpha, double beta) {
  if (!(alpha >= 0.0) || !(alpha < beta)) {
    throw DomainError("delta_ab needs 0 <= alpha < beta <= inf");
  }
  return renyi(s, RenyiOrder::from_real(alpha)) - renyi(s, RenyiOrder::from_real(beta));
}

double shannon(std::span<const double> p) {
  CompensatedSum acc;
  for (double x : p) {
    if (x > 0.0) acc.add(-x * std::log2(x));
  }
  return acc.value();
}

double kl_divergence(std::span<const double> p, std::span<const double> r) {
  if (p.size() != r.size()) throw DomainError("kl_divergence: length mismatch");
  CompensatedSum acc;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    if (r[i] <= 0.0) throw DomainError("kl_divergence: support of P exceeds support of r");
    acc.add(p[i] * std::log2(p[i] / r[i]));
  }
  return acc.value();
}

}  // namespace entcost
