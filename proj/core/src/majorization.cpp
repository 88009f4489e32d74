#include "entcost/majorization.hpp"

#include <algorithm>

#include "entcost/errors.hpp"

namespace entcost {

std::vector<PrefixRow> prefix_table(const Spectrum& phi, const Spectrum& psi) {
  const std::size_t n = std::max(phi.size(), psi.size());
  std::vector<PrefixRow> rows;
  rows.reserve(n);
  double a = 0.0;
  double b = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i < phi.size()) a += phi[i];
    if (i < psi.size()) b += psi[i];
    rows.push_back({i + 1, a, b});
  }
  return rows;
}

bool majorized_by(const Spectrum& lambda, const Spectrum& mu) {
  const std::size_t n = std::max(lambda.size(), mu.size());
  double a = 0.0;
  double b = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i < lambda.size()) a += lambda[i];
    if (i < mu.size()) b += mu[i];
    if (a > b + kPrefixTolerance) return false;
  }
  return true;
}

bool locc_feasible(const Spectrum& phi, const Spectrum& psi) { return majorized_by(phi, psi); }

bool zero_comm_max_entangled(std::uint64_t rank_from, std::uint64_t rank_to) {
  if (rank_from == 0 || rank_to == 0) throw DomainError("Schmidt ranks must be >= 1");
  return rank_from % rank_to == 0;
}

}  // namespace entcost
