#include "entcost/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace entcost {

using nlohmann::json;

json rounded(double x) {
  if (!std::isfinite(x)) return nullptr;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

json to_json(const BoundReport& r) {
  json j{{"channel", to_string(r.channel)},
         {"epsilon", rounded(r.epsilon)},
         {"delta", rounded(r.delta)},
         {"term_target", rounded(r.term_target)},
         {"term_source", rounded(r.term_source)},
         {"slack", rounded(r.slack)},
         {"raw_rhs", rounded(r.raw_rhs)},
         {"bound_bits", rounded(r.bound_bits)},
         {"epr_supplement_invariant", r.epr_supplement_invariant},
         {"warnings", r.warnings}};
  if (r.reference_slack) j["reference_slack"] = rounded(*r.reference_slack);
  if (r.alpha) j["alpha"] = rounded(*r.alpha);
  if (r.beta) j["beta"] = std::isinf(*r.beta) ? json("inf") : rounded(*r.beta);
  return j;
}

json to_json(const SmoothWitness& w) {
  return {{"start_group", w.start_group},
          {"copies_in_start", rounded(w.copies_in_start)},
          {"log2_copies_in_start", rounded(w.log2_copies_in_start)},
          {"end_group", w.end_group},
          {"copies_in_end", rounded(w.copies_in_end)},
          {"log2_copies_in_end", rounded(w.log2_copies_in_end)},
          {"mass", rounded(w.mass)},
          {"count_log2", rounded(w.count_log2)},
          {"max_log2_value", rounded(w.max_log2_value)}};
}

json to_json(const YieldStats& s) {
  json hist = json::object();
  for (const auto& [y, c] : s.histogram) hist[std::to_string(y)] = c;
  return {{"n", s.n},
          {"trials", s.trials},
          {"seed", s.seed},
          {"mean_yield_bits", rounded(s.mean_yield_bits)},
          {"stddev_yield_bits", rounded(s.stddev_yield_bits)},
          {"yield_rate", rounded(s.yield_rate)},
          {"comm_bits", rounded(s.comm_bits)},
          {"histogram", hist},
          {"metadata", {{"yield_rule", s.yield_rule}}}};
}

json to_json(const DilutionReport& r) {
  json j{{"n", r.n},
         {"epsilon", rounded(r.epsilon)},
         {"naive_ebits", rounded(r.naive_ebits)},
         {"naive_cbits", rounded(r.naive_cbits)},
         {"lower_bound_cbits", rounded(r.lower_bound_cbits)},
         {"lower_bound_qubits", rounded(r.lower_bound_qubits)},
         {"gap_ratio", rounded(r.gap_ratio)},
         {"delta", rounded(r.delta)},
         {"s0_delta", rounded(r.s0_delta)},
         {"sinf_delta", rounded(r.sinf_delta)},
         {"delta_delta", rounded(r.delta_delta)},
         {"bound", to_json(r.bound)}};
  j["clt_prediction"] = r.clt_prediction ? rounded(*r.clt_prediction) : json(nullptr);
  return j;
}

json to_json(const EmbezzlerCheck& c) {
  return {{"n", c.n},
          {"delta", rounded(c.delta)},
          {"delta_eps_exact", rounded(c.delta_eps_exact)},
          {"paper_floor", rounded(c.floor_bits)},
          {"holds", c.holds}};
}

json to_json(const EmbezzlerCost& c) {
  return {{"n", c.n}, {"qubit", to_json(c.qubit)}, {"classical", to_json(c.classical)}};
}

json to_json(const PrefixRow& row) {
  return {{"k", row.k}, {"from", rounded(row.from)}, {"to", rounded(row.to)}};
}

json to_json(const TypeVector& t) { return t.counts; }

}  // namespace entcost
