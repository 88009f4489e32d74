#include "commands.hpp"

#include <fmt/format.h>
#include <fmt/ranges.h>

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <nlohmann/json.hpp>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "entcost/bounds.hpp"
#include "entcost/entropy.hpp"
#include "entcost/errors.hpp"
#include "entcost/json_io.hpp"
#include "entcost/majorization.hpp"
#include "entcost/protocols.hpp"
#include "entcost/smoothing.hpp"
#include "entcost/state_descriptor.hpp"
#include "entcost/tensor_power.hpp"

namespace entcost::cli {

namespace {

using nlohmann::json;

struct Globals {
  std::string format;
  std::string out_path;
  std::uint64_t seed = 1;
  unsigned threads = 1;
};

// Formatted command output: either a JSON document or CSV text.
struct Output {
  std::optional<json> doc;
  std::string csv;
};

std::string num(double x) { return std::isfinite(x) ? fmt::format("{:.12g}", x) : std::string(); }

std::string opt_num(const std::optional<double>& x) { return x ? num(*x) : std::string(); }

const char* boolean(bool b) { return b ? "true" : "false"; }

json order_json(double alpha) { return std::isinf(alpha) ? json("inf") : rounded(alpha); }

Output make_csv(const std::vector<std::string>& header,
                const std::vector<std::vector<std::string>>& rows) {
  std::string text = fmt::format("{}\n", fmt::join(header, ","));
  for (const auto& r : rows) text += fmt::format("{}\n", fmt::join(r, ","));
  return {std::nullopt, std::move(text)};
}

bool want_csv(const Globals& g, bool csv_default = false) {
  return g.format.empty() ? csv_default : g.format == "csv";
}

// Runs f(i) for i in [0, count) across up to `threads` workers.
template <class F>
void parallel_for(std::size_t count, unsigned threads, F&& f) {
  const std::size_t workers = std::min<std::size_t>(std::max(1u, threads), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) f(i);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < count; i += workers) f(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

struct EntropyArgs {
  std::string state;
  std::string alpha = "1";
};

Output cmd_entropy(const EntropyArgs& a, const Globals& g) {
  const StateDescriptor desc = StateDescriptor::parse(a.state);
  const RenyiOrder order = RenyiOrder::parse(a.alpha);
  const double value = std::visit([&](const auto& s) { return renyi(s, order); }, resolve(desc));
  if (want_csv(g))
    return make_csv({"state", "alpha", "value_bits"}, {{a.state, order.to_string(), num(value)}});
  return {
      json{
          {"state", a.state}, {"alpha", order_json(order.alpha())}, {"value_bits", rounded(value)}},
      {}};
}

struct DeltaArgs {
  std::string state;
  double eps = 0.0;
  std::optional<std::string> alpha;
  std::optional<std::string> beta;
};

Output cmd_delta(const DeltaArgs& a, const Globals& g) {
  const StateDescriptor desc = StateDescriptor::parse(a.state);
  const SmoothLevel level(a.eps);
  if (a.alpha.has_value() != a.beta.has_value()) {
    throw ParseError("--alpha and --beta must be given together");
  }
  if (a.alpha) {
    const double alpha = RenyiOrder::parse(*a.alpha).alpha();
    const double beta = RenyiOrder::parse(*a.beta).alpha();
    const ResolvedState st = resolve(desc);
    AlphaBetaSmoothResult r;
    if (const auto* s = std::get_if<Spectrum>(&st); s && s->size() <= kBruteForceMaxDim) {
      r = delta_ab_eps(*s, alpha, beta, level, AlphaBetaMode::Exact);
    } else {
      r = delta_ab_eps_window(resolve_grouped(desc), alpha, beta, level);
    }
    const char* mode = r.mode == AlphaBetaMode::Exact ? "exact" : "window";
    if (want_csv(g)) {
      return make_csv(
          {"state", "eps", "alpha", "beta", "value_bits", "mode", "upper_bound"},
          {{a.state, num(a.eps), *a.alpha, *a.beta, num(r.bits), mode, boolean(r.upper_bound)}});
    }
    return {json{{"state", a.state},
                 {"eps", rounded(a.eps)},
                 {"alpha", order_json(alpha)},
                 {"beta", order_json(beta)},
                 {"value_bits", rounded(r.bits)},
                 {"mode", mode},
                 {"upper_bound", r.upper_bound}},
            {}};
  }
  const GroupedSpectrum gs = resolve_grouped(desc);
  const SmoothResult r = delta_eps(gs, level);
  if (want_csv(g)) {
    return make_csv(
        {"state", "eps", "value_bits", "start_group", "end_group", "mass", "count_log2"},
        {{a.state, num(a.eps), num(r.bits), std::to_string(r.witness.start_group),
          std::to_string(r.witness.end_group), num(r.witness.mass), num(r.witness.count_log2)}});
  }
  return {json{{"state", a.state},
               {"eps", rounded(a.eps)},
               {"value_bits", rounded(r.bits)},
               {"witness", to_json(r.witness)}},
          {}};
}

struct BoundArgs {
  std::string from;
  std::string to;
  double eps = 0.0;
  std::string channel = "qubit";
  std::optional<std::string> alpha;
  std::optional<std::string> beta;
};

Output cmd_bound(const BoundArgs& a, const Globals& g) {
  const StateDescriptor from = StateDescriptor::parse(a.from);
  const StateDescriptor to = StateDescriptor::parse(a.to);
  const Channel channel = parse_channel(a.channel);
  if (a.alpha.has_value() != a.beta.has_value()) {
    throw ParseError("--alpha and --beta must be given together");
  }
  BoundReport r;
  if (a.alpha) {
    r = alpha_beta_bound(from.spectrum(), to.spectrum(), a.eps, RenyiOrder::parse(*a.alpha).alpha(),
                         RenyiOrder::parse(*a.beta).alpha(), channel);
  } else {
    r = smoothed_bound(resolve_grouped(from), resolve_grouped(to), a.eps, channel);
  }
  if (want_csv(g)) {
    return make_csv(
        {"from", "to", "channel", "epsilon", "delta", "term_target", "term_source", "slack",
         "raw_rhs", "bound_bits"},
        {{a.from, a.to, to_string(r.channel), num(r.epsilon), num(r.delta), num(r.term_target),
          num(r.term_source), num(r.slack), num(r.raw_rhs), num(r.bound_bits)}});
  }
  json j = to_json(r);
  j["from"] = a.from;
  j["to"] = a.to;
  return {j, {}};
}

struct FeasibleArgs {
  std::string from;
  std::string to;
};

Output cmd_feasible(const FeasibleArgs& a, const Globals& g) {
  const Spectrum from = StateDescriptor::parse(a.from).spectrum();
  const Spectrum to = StateDescriptor::parse(a.to).spectrum();
  const bool ok = locc_feasible(from, to);
  const std::vector<PrefixRow> table = prefix_table(from, to);
  if (want_csv(g)) {
    std::vector<std::vector<std::string>> rows;
    for (const PrefixRow& row : table) {
      rows.push_back({std::to_string(row.k), num(row.from), num(row.to), boolean(ok)});
    }
    return make_csv({"k", "from_prefix", "to_prefix", "feasible"}, rows);
  }
  json prefix = json::array();
  for (const PrefixRow& row : table) prefix.push_back(to_json(row));
  return {json{{"from", a.from}, {"to", a.to}, {"feasible", ok}, {"prefix_sums", prefix}}, {}};
}

struct PowerArgs {
  std::string state;
  std::uint32_t n = 1;
  double eps = 0.0;
  std::optional<double> typical_delta;
  double k_constant = 1.0;
};

Output cmd_power(const PowerArgs& a, const Globals& g) {
  const StateDescriptor desc = StateDescriptor::parse(a.state);
  if (desc.is_power()) throw ParseError("power: --state must be a non-power base");
  const Spectrum base = desc.spectrum();
  const GroupedSpectrum gs = power_grouped_spectrum(base, a.n);
  if (want_csv(g)) {
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < gs.size(); ++i) {
      rows.push_back(
          {std::to_string(i), num(gs[i].log2_value), num(gs[i].log2_mult), num(gs[i].mass)});
    }
    return make_csv({"group", "log2_value", "log2_mult", "mass"}, rows);
  }
  const SmoothLevel level(a.eps);
  const CltParams clt = clt_params(base);
  json j{{"state", a.state},
         {"n", a.n},
         {"groups", gs.size()},
         {"log2_rank", rounded(renyi(gs, RenyiOrder::zero()))},
         {"eps", rounded(a.eps)},
         {"s0_eps", rounded(s0_eps(gs, level).bits)},
         {"sinf_eps", rounded(sinf_eps(gs, level).bits)},
         {"delta_eps", rounded(delta_eps(gs, level).bits)},
         {"clt", {{"mean_bits", rounded(clt.mean_bits)}, {"sigma_bits", rounded(clt.sigma_bits)}}}};
  j["clt"]["delta_eps_prediction"] =
      a.eps > 0.0 ? rounded(clt_delta_prediction(base, a.n, a.eps)) : json(nullptr);
  if (gs.exact_count()) j["count"] = *gs.exact_count();
  if (a.typical_delta) {
    const TypicalSetReport t = typical_set_report(base, a.n, *a.typical_delta, a.k_constant);
    j["typical"] = {{"delta_param", rounded(t.delta_param)},
                    {"mass_lower_bound", rounded(t.mass_lower_bound)},
                    {"exact_mass", rounded(t.exact_mass)},
                    {"log_card_upper", rounded(t.log_card_upper)},
                    {"log_card_exact", rounded(t.log_card_exact)},
                    {"member_types", t.member_types},
                    {"k_constant", rounded(t.k_constant)}};
  }
  return {j, {}};
}

struct ConcentrateArgs {
  std::string state;
  std::uint64_t n = 1;
  std::uint64_t trials = 1000;
};

Output cmd_concentrate(const ConcentrateArgs& a, const Globals& g) {
  const StateDescriptor desc = StateDescriptor::parse(a.state);
  const YieldStats s = concentration_simulate(desc.spectrum(), a.n, a.trials, g.seed, g.threads);
  if (want_csv(g)) {
    std::vector<std::vector<std::string>> rows;
    for (const auto& [y, c] : s.histogram) rows.push_back({std::to_string(y), std::to_string(c)});
    return make_csv({"yield_bits", "count"}, rows);
  }
  json j = to_json(s);
  j["state"] = a.state;
  return {j, {}};
}

struct ScanArgs {
  std::string experiment;
  std::optional<std::string> state;
  std::uint64_t n_min = 16;
  std::uint64_t n_max = 1024;
  double n_factor = 2.0;
  std::optional<std::uint64_t> n_step;
  std::optional<double> eps;
  std::optional<double> delta;
  std::uint64_t trials = 1000;
  double k_constant = 1.0;
};

std::vector<std::uint64_t> scan_points(const ScanArgs& a) {
  if (a.n_min < 1 || a.n_min > a.n_max) throw ParseError("scan needs 1 <= --n-min <= --n-max");
  std::vector<std::uint64_t> ns;
  if (a.n_step) {
    if (*a.n_step == 0) throw ParseError("--n-step must be positive");
    for (std::uint64_t n = a.n_min; n <= a.n_max; n += *a.n_step) {
      ns.push_back(n);
      if (a.n_max - n < *a.n_step) break;
    }
    return ns;
  }
  if (!(a.n_factor > 1.0)) throw ParseError("--n-factor must be greater than 1");
  for (std::uint64_t n = a.n_min; n <= a.n_max;) {
    ns.push_back(n);
    const double next = std::round(static_cast<double>(n) * a.n_factor);
    if (next > static_cast<double>(a.n_max)) break;
    n = std::max(n + 1, static_cast<std::uint64_t>(next));
  }
  return ns;
}

std::uint32_t as_u32(std::uint64_t n) {
  if (n > UINT32_MAX) throw GuardError("n exceeds the 32-bit tensor-power range");
  return static_cast<std::uint32_t>(n);
}

Output scan_dilution(const ScanArgs& a, const Globals& g, const std::vector<std::uint64_t>& ns) {
  const std::string state = a.state.value_or("twolevel:0.1");
  const StateDescriptor desc = StateDescriptor::parse(state);
  if (desc.is_power()) throw ParseError("scan: --state must be a non-power base");
  const Spectrum base = desc.spectrum();
  if (a.eps && a.delta) throw ParseError("dilution scan takes --eps or --delta, not both");
  const double eps = a.eps ? *a.eps : a.delta ? epsilon_for_delta(*a.delta) : 1e-6;

  std::vector<DilutionReport> reports(ns.size());
  parallel_for(ns.size(), g.threads,
               [&](std::size_t i) { reports[i] = dilution_accounting(base, as_u32(ns[i]), eps); });

  if (want_csv(g, true)) {
    std::vector<std::vector<std::string>> rows;
    for (const DilutionReport& r : reports) {
      rows.push_back({std::to_string(r.n), num(r.s0_delta), num(r.sinf_delta), num(r.delta_delta),
                      num(r.lower_bound_qubits), num(r.lower_bound_cbits), num(r.naive_cbits),
                      opt_num(r.clt_prediction)});
    }
    return make_csv({"n", "s0_eps", "sinf_eps", "delta_eps", "bound_qubits", "bound_cbits",
                     "naive_cbits", "clt_prediction"},
                    rows);
  }
  json rows = json::array();
  std::vector<double> xs, ys;
  for (const DilutionReport& r : reports) {
    rows.push_back(to_json(r));
    xs.push_back(static_cast<double>(r.n));
    ys.push_back(r.delta_delta);
  }
  const double dl = smoothing_delta(eps);
  json meta{{"epsilon", rounded(eps)}, {"delta", rounded(dl)}};
  meta["fitted_sqrt_coefficient"] =
      ns.size() >= 2 ? rounded(fit_sqrt_coefficient(xs, ys)) : json(nullptr);
  meta["clt_slope"] = clt_params(base).sigma_bits > 0.0 && dl > 0.0
                          ? rounded(clt_delta_prediction(base, 1, dl))
                          : json(nullptr);
  meta["improved_dilution_envelope"] = {
      {"form", "c*sqrt(n)"}, {"c", rounded(a.k_constant)}, {"simulated", false}};
  return {json{{"experiment", "dilution"}, {"state", state}, {"rows", rows}, {"metadata", meta}},
          {}};
}

Output scan_embezzler(const ScanArgs& a, const Globals& g, const std::vector<std::uint64_t>& ns) {
  const double dl = a.delta.value_or(0.1);
  const double eps = a.eps ? *a.eps : epsilon_for_delta(dl);
  std::vector<EmbezzlerCheck> checks(ns.size());
  std::vector<EmbezzlerCost> costs(ns.size());
  parallel_for(ns.size(), g.threads, [&](std::size_t i) {
    checks[i] = embezzler_bound_check(ns[i], dl);
    costs[i] = embezzler_creation_bound(ns[i], eps);
  });
  if (want_csv(g, true)) {
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < ns.size(); ++i) {
      rows.push_back({std::to_string(ns[i]), num(checks[i].delta_eps_exact),
                      num(checks[i].floor_bits), boolean(checks[i].holds),
                      num(costs[i].classical.bound_bits)});
    }
    return make_csv({"n", "delta_eps", "paper_floor", "holds", "bound_cbits"}, rows);
  }
  json rows = json::array();
  for (std::size_t i = 0; i < ns.size(); ++i) {
    json row = to_json(checks[i]);
    row["bound_cbits"] = rounded(costs[i].classical.bound_bits);
    rows.push_back(row);
  }
  return {json{{"experiment", "embezzler"},
               {"rows", rows},
               {"metadata", {{"delta", rounded(dl)}, {"epsilon", rounded(eps)}}}},
          {}};
}

Output scan_concentration(const ScanArgs& a, const Globals& g,
                          const std::vector<std::uint64_t>& ns) {
  const std::string state = a.state.value_or("twolevel:0.3");
  const Spectrum base = StateDescriptor::parse(state).spectrum();
  std::vector<YieldStats> stats;
  for (std::uint64_t n : ns)
    stats.push_back(concentration_simulate(base, n, a.trials, g.seed, g.threads));
  if (want_csv(g, true)) {
    std::vector<std::vector<std::string>> rows;
    for (const YieldStats& s : stats) {
      rows.push_back({std::to_string(s.n), std::to_string(s.trials), num(s.mean_yield_bits),
                      num(s.yield_rate), num(s.comm_bits)});
    }
    return make_csv({"n", "trials", "mean_yield", "yield_rate", "comm_bits"}, rows);
  }
  json rows = json::array();
  for (const YieldStats& s : stats) rows.push_back(to_json(s));
  return {json{{"experiment", "concentration"},
               {"state", state},
               {"rows", rows},
               {"metadata", {{"seed", g.seed}, {"yield_rule", stats.front().yield_rule}}}},
          {}};
}

Output cmd_scan(const ScanArgs& a, const Globals& g) {
  const std::vector<std::uint64_t> ns = scan_points(a);
  if (a.experiment == "dilution") return scan_dilution(a, g, ns);
  if (a.experiment == "embezzler") return scan_embezzler(a, g, ns);
  return scan_concentration(a, g, ns);
}

void emit(const Output& o, const Globals& g, std::ostream& out) {
  std::string text = o.doc ? o.doc->dump(2) + "\n" : o.csv;
  if (g.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(g.out_path, std::ios::binary);
  if (!f) throw ParseError("cannot open output file '" + g.out_path + "'");
  f << text;
  if (!f) throw ParseError("cannot write output file '" + g.out_path + "'");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Smoothed Renyi spreads of Schmidt spectra and communication-cost lower bounds",
               "entcost"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "entcost 0.1.0");

  Globals g;
  app.add_option("--format", g.format, "Output format (json or csv)")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", g.out_path, "Write output to PATH instead of stdout");
  app.add_option("--seed", g.seed, "Seed for sampled experiments");
  app.add_option("--threads", g.threads, "Worker threads")->check(CLI::Range(1u, 1024u));

  EntropyArgs ea;
  auto* entropy = app.add_subcommand("entropy", "Renyi entropy of a state");
  entropy->add_option("--state", ea.state, "State descriptor")->required();
  entropy->add_option("--alpha", ea.alpha, "Renyi order (0, 1, inf or a real)");

  DeltaArgs da;
  auto* delta = app.add_subcommand("delta", "Smoothed spread of a state with its witness");
  delta->add_option("--state", da.state, "State descriptor")->required();
  delta->add_option("--eps", da.eps, "Smoothing level");
  delta->add_option("--alpha", da.alpha, "Lower order for the alpha/beta spread");
  delta->add_option("--beta", da.beta, "Upper order for the alpha/beta spread");

  BoundArgs ba;
  auto* bound = app.add_subcommand("bound", "Communication lower bound for a transformation");
  bound->add_option("--from", ba.from, "Source state")->required();
  bound->add_option("--to", ba.to, "Target state")->required();
  bound->add_option("--eps", ba.eps, "Allowed infidelity");
  bound->add_option("--channel", ba.channel, "qubit or classical")
      ->check(CLI::IsMember({"qubit", "quantum", "classical"}));
  bound->add_option("--alpha", ba.alpha, "Lower order for the alpha/beta bound");
  bound->add_option("--beta", ba.beta, "Upper order for the alpha/beta bound");

  FeasibleArgs fa;
  auto* feasible = app.add_subcommand("feasible", "Exact transformation without communication");
  feasible->add_option("--from", fa.from, "Source state")->required();
  feasible->add_option("--to", fa.to, "Target state")->required();

  PowerArgs pa;
  auto* power = app.add_subcommand("power", "Grouped spectrum of a tensor power");
  power->add_option("--state", pa.state, "Base state")->required();
  power->add_option("--n", pa.n, "Number of copies")->required()->check(CLI::PositiveNumber);
  power->add_option("--eps", pa.eps, "Smoothing level");
  power->add_option("--typical-delta", pa.typical_delta, "Typical-set width parameter");
  power->add_option("--k-constant", pa.k_constant, "Constant in the typical cardinality envelope");

  ConcentrateArgs ca;
  auto* concentrate = app.add_subcommand("concentrate", "Simulate entanglement concentration");
  concentrate->add_option("--state", ca.state, "Base state")->required();
  concentrate->add_option("--n", ca.n, "Number of copies")->required();
  concentrate->add_option("--trials", ca.trials, "Number of trials");

  ScanArgs sa;
  auto* scan = app.add_subcommand("scan", "Parameter scan over n");
  scan->add_option("--experiment", sa.experiment, "dilution, embezzler or concentration")
      ->required()
      ->check(CLI::IsMember({"dilution", "embezzler", "concentration"}));
  scan->add_option("--state", sa.state, "Base state");
  scan->add_option("--n-min", sa.n_min, "Smallest n");
  scan->add_option("--n-max", sa.n_max, "Largest n");
  auto* factor = scan->add_option("--n-factor", sa.n_factor, "Geometric step (default 2)");
  scan->add_option("--n-step", sa.n_step, "Linear step")->excludes(factor);
  scan->add_option("--eps", sa.eps, "Allowed infidelity");
  scan->add_option("--delta", sa.delta, "Smoothing level of the target");
  scan->add_option("--trials", sa.trials, "Trials per n (concentration)");
  scan->add_option("--k-constant", sa.k_constant, "Envelope constant reported in metadata");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    Output o;
    if (*entropy) o = cmd_entropy(ea, g);
    if (*delta) o = cmd_delta(da, g);
    if (*bound) o = cmd_bound(ba, g);
    if (*feasible) o = cmd_feasible(fa, g);
    if (*power) o = cmd_power(pa, g);
    if (*concentrate) o = cmd_concentrate(ca, g);
    if (*scan) o = cmd_scan(sa, g);
    emit(o, g, out);
    return kExitOk;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const GuardError& e) {
    err << "error: " << e.what() << "\n";
    return kExitGuard;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace entcost::cli
