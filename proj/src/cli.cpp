#include "regenalloc/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "regenalloc/constraints.hpp"
#include "regenalloc/flowgraph.hpp"
#include "regenalloc/lp.hpp"
#include "regenalloc/rlnc.hpp"
#include "regenalloc/tradeoff.hpp"

namespace regenalloc::cli {
namespace {

using nlohmann::ordered_json;

struct ParamFlags {
  int n1 = 0;
  int n2 = 0;
  int k = 0;
  int d = 0;
  std::string file_size, beta = "0", c1 = "1", c2 = "1";
};

struct Options {
  ParamFlags params;
  std::string format;
  std::string output;
  int precision = 12;
  std::string seed;

  // constraints
  bool raw = false;
  bool ordered = false;

  // tradeoff
  std::string beta_lo, beta_hi, dbeta_lo, dbeta_hi;
  int steps = 17;

  // verify / simulate
  std::string alpha1, alpha2;
  std::string scale = "1";
  std::string scenario_path;
  int random_history = -1;
  std::string adversarial;
  std::string emit_scenario;
  int dc_samples = 0;
  std::string field = "gf256";
  int trials = 200;
  int repairs = 5;
  std::size_t payload = 0;
  std::int64_t packet_cap = 10'000;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Ratio parse_flag(const std::string& name, const std::string& text) {
  try {
    return Ratio::parse(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError("--" + name + ": " + e.what());
  }
}

void add_param_flags(CLI::App& sub, ParamFlags& p) {
  sub.add_option("--n1", p.n1, "number of type-1 nodes")->required();
  sub.add_option("--n2", p.n2, "number of type-2 nodes")->required();
  sub.add_option("--k", p.k, "nodes contacted by a data collector")->required();
  sub.add_option("--d", p.d, "helpers contacted by a newcomer")->required();
  sub.add_option("--file-size", p.file_size, "file size M (decimal or p/q)")->required();
  sub.add_option("--c1", p.c1, "cost per unit on type-1 nodes")->capture_default_str();
  sub.add_option("--c2", p.c2, "cost per unit on type-2 nodes")->capture_default_str();
}

void add_output_flags(CLI::App& sub, Options& o, const std::string& default_format,
                      const std::vector<std::string>& formats) {
  o.format = default_format;
  sub.add_option("--format", o.format, "output format")->check(CLI::IsMember(formats))->capture_default_str();
  sub.add_option("--output", o.output, "write output to this file instead of stdout");
  sub.add_option("--precision", o.precision, "significant digits in decimal output")
      ->check(CLI::Range(1, 30))
      ->capture_default_str();
}

SystemParams to_params(const ParamFlags& f) {
  SystemParams p;
  p.n1 = f.n1;
  p.n2 = f.n2;
  p.k = f.k;
  p.d = f.d;
  p.file_size = parse_flag("file-size", f.file_size);
  p.beta = parse_flag("beta", f.beta);
  p.c1 = parse_flag("c1", f.c1);
  p.c2 = parse_flag("c2", f.c2);
  auto report = validate(p);
  if (!report.ok()) throw UsageError("invalid parameters: " + report.message());
  return p;
}

std::uint64_t resolve_seed(const std::string& flag) {
  std::string text = flag;
  if (text.empty()) {
    const char* env = std::getenv("REGENALLOC_SEED");
    text = env ? env : "1";
  }
  try {
    std::size_t used = 0;
    auto v = std::stoull(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw UsageError("seed must be a non-negative integer, got '" + text + "'");
  }
}

std::string describe_row(const CompactRow& row, int precision) {
  std::ostringstream os;
  os << "m=" << row.m << ' ' << (row.kind == RowKind::MostType1 ? "most-type1" : "most-type2") << ": "
     << row.plane.coef1.to_decimal(precision) << "*alpha1 + " << row.plane.coef2.to_decimal(precision)
     << "*alpha2 >= " << row.plane.rhs.to_decimal(precision);
  return os.str();
}

std::string join(const std::vector<int>& v, char sep = ' ') {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << sep;
    os << v[i];
  }
  return os.str();
}

AlphaVector parse_vector(const std::string& text, const SystemParams& p) {
  AlphaVector vec;
  std::string tok;
  std::istringstream in(text);
  while (std::getline(in, tok, ',')) {
    if (tok == "1" || tok == "T1" || tok == "t1") {
      vec.push_back(NodeType::Type1);
    } else if (tok == "2" || tok == "T2" || tok == "t2") {
      vec.push_back(NodeType::Type2);
    } else {
      throw UsageError("--adversarial: expected comma-separated 1/2 entries, got '" + tok + "'");
    }
  }
  if (!is_admissible(vec, p)) {
    throw UsageError("--adversarial: vector must have k entries with at most n1 type-1 and n2 type-2");
  }
  return vec;
}

Allocation resolve_allocation(const Options& o, const SystemParams& p) {
  Allocation a;
  if (o.alpha1.empty() != o.alpha2.empty()) throw UsageError("--alpha1 and --alpha2 must be given together");
  if (!o.alpha1.empty()) {
    a = {parse_flag("alpha1", o.alpha1), parse_flag("alpha2", o.alpha2)};
    if (a.alpha1.sign() < 0 || a.alpha2.sign() < 0) throw UsageError("allocation must be non-negative");
  } else {
    a = solve(p).point;
  }
  Ratio s = parse_flag("scale", o.scale);
  if (s.sign() < 0) throw UsageError("--scale must be non-negative");
  return s * a;
}

DcPolicy resolve_policy(const Options& o, std::uint64_t seed) {
  if (o.dc_samples > 0) return SampledDcs{o.dc_samples, seed};
  return ExhaustiveDcs{};
}

// ---------------------------------------------------------------------------

int cmd_optimize(const Options& o, std::ostream& out) {
  const SystemParams p = to_params(o.params);
  const auto opt = solve(p);
  const auto rows = generate_rows(p);
  const int prec = o.precision;

  if (o.format == "json") {
    ordered_json j;
    j["alpha1"] = opt.point.alpha1.to_decimal(prec);
    j["alpha2"] = opt.point.alpha2.to_decimal(prec);
    j["cost"] = opt.cost.to_decimal(prec);
    j["alpha1_exact"] = opt.point.alpha1.to_string();
    j["alpha2_exact"] = opt.point.alpha2.to_string();
    j["cost_exact"] = opt.cost.to_string();
    j["case"] = std::string(1, to_char(opt.case_label));
    j["beta_min"] = min_beta(p).to_decimal(prec);
    auto binding = ordered_json::array();
    for (auto idx : opt.binding) binding.push_back(describe_row(rows[idx], prec));
    j["binding"] = binding;
    out << j.dump(2) << '\n';
  } else if (o.format == "csv") {
    out << "alpha1,alpha2,cost,case,binding\n";
    out << opt.point.alpha1.to_decimal(prec) << ',' << opt.point.alpha2.to_decimal(prec) << ','
        << opt.cost.to_decimal(prec) << ',' << to_char(opt.case_label) << ',';
    for (std::size_t i = 0; i < opt.binding.size(); ++i) out << (i ? ";" : "") << opt.binding[i];
    out << '\n';
  } else {
    out << "alpha1* = " << opt.point.alpha1.to_decimal(prec) << '\n'
        << "alpha2* = " << opt.point.alpha2.to_decimal(prec) << '\n'
        << "cost*   = " << opt.cost.to_decimal(prec) << '\n'
        << "case    = " << to_char(opt.case_label) << '\n'
        << "binding:\n";
    for (auto idx : opt.binding) out << "  [" << idx << "] " << describe_row(rows[idx], prec) << '\n';
  }
  return kOk;
}

int cmd_constraints(const Options& o, std::ostream& out) {
  const SystemParams p = to_params(o.params);
  const int prec = o.precision;
  if (o.raw) {
    RawOptions ro;
    ro.enumeration = o.ordered ? RawEnumeration::Ordered : RawEnumeration::Multiset;
    const auto planes = raw_constraint_set(p, ro);
    if (o.format == "json") {
      auto arr = ordered_json::array();
      for (const auto& hp : planes) {
        arr.push_back({{"coef1", hp.coef1.to_decimal(prec)},
                       {"coef2", hp.coef2.to_decimal(prec)},
                       {"rhs", hp.rhs.to_decimal(prec)}});
      }
      out << arr.dump(2) << '\n';
    } else {
      out << "coef1,coef2,rhs\n";
      for (const auto& hp : planes) {
        out << hp.coef1.to_decimal(prec) << ',' << hp.coef2.to_decimal(prec) << ',' << hp.rhs.to_decimal(prec)
            << '\n';
      }
    }
    return kOk;
  }
  const auto rows = generate_rows(p);
  if (o.format == "json") {
    auto arr = ordered_json::array();
    for (const auto& r : rows) {
      arr.push_back({{"m", r.m},
                     {"kind", r.kind == RowKind::MostType1 ? "most-type1" : "most-type2"},
                     {"coef1", r.plane.coef1.to_decimal(prec)},
                     {"coef2", r.plane.coef2.to_decimal(prec)},
                     {"rhs", r.plane.rhs.to_decimal(prec)}});
    }
    out << arr.dump(2) << '\n';
  } else {
    out << "m,kind,coef1,coef2,rhs\n";
    for (const auto& r : rows) {
      out << r.m << ',' << (r.kind == RowKind::MostType1 ? "most-type1" : "most-type2") << ','
          << r.plane.coef1.to_decimal(prec) << ',' << r.plane.coef2.to_decimal(prec) << ','
          << r.plane.rhs.to_decimal(prec) << '\n';
    }
  }
  return kOk;
}

int cmd_region(const Options& o, std::ostream& out) {
  const auto boundary = region_boundary(to_params(o.params));
  if (o.format == "json") {
    write_region_json(out, boundary, o.precision);
  } else {
    write_region_csv(out, boundary, o.precision);
  }
  return kOk;
}

int cmd_tradeoff(const Options& o, std::ostream& out) {
  const ParamFlags& flags = o.params;
  const bool by_beta = !o.beta_lo.empty() || !o.beta_hi.empty();
  const bool by_bw = !o.dbeta_lo.empty() || !o.dbeta_hi.empty();
  if (by_beta == by_bw) {
    throw UsageError("give either --beta-lo/--beta-hi or --repair-bw-lo/--repair-bw-hi");
  }
  Ratio lo, hi;
  if (by_beta) {
    if (o.beta_lo.empty() || o.beta_hi.empty()) throw UsageError("--beta-lo and --beta-hi are both required");
    lo = parse_flag("beta-lo", o.beta_lo);
    hi = parse_flag("beta-hi", o.beta_hi);
  } else {
    if (o.dbeta_lo.empty() || o.dbeta_hi.empty()) {
      throw UsageError("--repair-bw-lo and --repair-bw-hi are both required");
    }
    if (flags.d < 1) throw UsageError("--d must be >= 1");
    lo = parse_flag("repair-bw-lo", o.dbeta_lo) / flags.d;
    hi = parse_flag("repair-bw-hi", o.dbeta_hi) / flags.d;
  }
  SystemParams p = to_params(flags);
  p.beta = lo;
  if (o.steps < 2) throw UsageError("--steps must be >= 2");
  if (hi < lo) throw UsageError("sweep upper bound is below the lower bound");
  const auto points = sweep(p, lo, hi, o.steps);
  if (o.format == "json") {
    write_tradeoff_json(out, points, o.precision);
  } else {
    write_tradeoff_csv(out, points, o.precision);
  }
  return kOk;
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
  const SystemParams p = to_params(o.params);
  const std::uint64_t seed = resolve_seed(o.seed);
  const int sources = !o.scenario_path.empty() + (o.random_history >= 0) + !o.adversarial.empty();
  if (sources != 1) throw UsageError("give exactly one of --scenario, --random-history, --adversarial");
  const Allocation alloc = resolve_allocation(o, p);

  Scenario scenario;
  if (!o.scenario_path.empty()) {
    std::ifstream in(o.scenario_path);
    if (!in) throw UsageError("cannot open scenario file '" + o.scenario_path + "'");
    scenario = parse_scenario(in, &p);
  } else if (o.random_history >= 0) {
    for (auto& ev : random_history(p, o.random_history, seed)) scenario.steps.emplace_back(std::move(ev));
  } else {
    scenario = adversarial_scenario(p, parse_vector(o.adversarial, p));
  }
  if (!o.emit_scenario.empty()) {
    std::ofstream f(o.emit_scenario);
    if (!f) throw UsageError("cannot write '" + o.emit_scenario + "'");
    f << format_scenario(scenario);
  }

  VerificationReport report;
  try {
    report = verify_scenario(p, alloc, scenario, resolve_policy(o, seed));
  } catch (const RepairError& e) {
    throw UsageError(e.what());
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  const int prec = o.precision;
  if (o.format == "json") {
    ordered_json j;
    j["alpha1"] = alloc.alpha1.to_decimal(prec);
    j["alpha2"] = alloc.alpha2.to_decimal(prec);
    j["file_size"] = p.file_size.to_decimal(prec);
    j["min_flow"] = report.min_flow.to_decimal(prec);
    j["min_flow_exact"] = report.min_flow.to_string();
    j["passed"] = report.passed;
    j["worst_dc"] = report.worst_dc;
    j["worst_stage"] = report.worst_stage;
    j["collectors_checked"] = report.collectors_checked;
    out << j.dump(2) << '\n';
  } else {
    out << "allocation = (" << alloc.alpha1.to_decimal(prec) << ", " << alloc.alpha2.to_decimal(prec) << ")\n"
        << "repairs    = " << scenario.repairs().size() << '\n'
        << "collectors = " << report.collectors_checked << '\n'
        << "min_flow   = " << report.min_flow.to_decimal(prec) << '\n'
        << "file_size  = " << p.file_size.to_decimal(prec) << '\n'
        << "worst_dc   = {" << join(report.worst_dc, ',') << "} after stage " << report.worst_stage << '\n'
        << "result     = " << (report.passed ? "PASS" : "FAIL") << '\n';
  }
  if (!report.passed) {
    err << "verification failed: collector {" << join(report.worst_dc, ',') << "} after stage "
        << report.worst_stage << " has cut value " << report.min_flow.to_decimal(prec) << " < M = "
        << p.file_size.to_decimal(prec) << '\n';
    return kVerificationFailed;
  }
  return kOk;
}

int cmd_simulate(const Options& o, std::ostream& out) {
  SimulationConfig cfg;
  cfg.params = to_params(o.params);
  cfg.alloc = resolve_allocation(o, cfg.params);
  cfg.field = o.field == "gf2" ? FieldKind::GF2 : FieldKind::GF256;
  if (o.trials < 1) throw UsageError("--trials must be >= 1");
  if (o.repairs < 0) throw UsageError("--repairs must be >= 0");
  cfg.trials = o.trials;
  cfg.repairs = o.repairs;
  cfg.seed = resolve_seed(o.seed);
  cfg.collectors = resolve_policy(o, cfg.seed);
  cfg.payload_size = o.payload;
  cfg.packet_cap = o.packet_cap;

  SimulationReport report;
  try {
    report = simulate(cfg);
  } catch (const std::length_error& e) {
    throw UsageError(e.what());
  }

  if (o.format == "json") {
    ordered_json j;
    j["field"] = o.field;
    j["packets"] = {{"file", report.counts.file},
                    {"alpha1", report.counts.alpha1},
                    {"alpha2", report.counts.alpha2},
                    {"beta", report.counts.beta}};
    j["trials"] = report.trials;
    j["repairs"] = cfg.repairs;
    j["successful_trials"] = report.successful_trials;
    j["trial_rate"] = report.trial_rate();
    j["attempts"] = report.attempts;
    j["successes"] = report.successes;
    auto per = ordered_json::array();
    for (const auto& t : report.per_collector) {
      per.push_back({{"dc", t.nodes}, {"successes", t.successes}, {"attempts", t.attempts}});
    }
    j["collectors"] = per;
    out << j.dump(2) << '\n';
  } else {
    out << "field=" << o.field << " packets(M,a1,a2,b)=(" << report.counts.file << ',' << report.counts.alpha1
        << ',' << report.counts.alpha2 << ',' << report.counts.beta << ") trials=" << report.trials
        << " repairs=" << cfg.repairs << " successful_trials=" << report.successful_trials
        << " rate=" << Ratio(report.successful_trials, report.trials).to_decimal(6)
        << " collector_successes=" << report.successes << '/' << report.attempts << '\n';
    for (const auto& t : report.per_collector) {
      out << "dc {" << join(t.nodes, ',') << "} " << t.successes << '/' << t.attempts << '\n';
    }
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Minimum storage cost allocation for two-class regenerating-code storage", "regenalloc"};
  app.require_subcommand(1);
  Options o;

  auto* optimize = app.add_subcommand("optimize", "minimum-cost allocation (alpha1*, alpha2*)");
  add_param_flags(*optimize, o.params);
  optimize->add_option("--beta", o.params.beta, "download per helper")->required();
  add_output_flags(*optimize, o, "text", {"text", "csv", "json"});

  auto* constraints = app.add_subcommand("constraints", "list the min-cut half-planes");
  add_param_flags(*constraints, o.params);
  constraints->add_option("--beta", o.params.beta, "download per helper")->required();
  constraints->add_flag("--raw", o.raw, "full per-position expansion instead of the compact rows");
  constraints->add_flag("--ordered", o.ordered, "with --raw: expand ordered vectors literally");
  add_output_flags(*constraints, o, "csv", {"csv", "json"});

  auto* region = app.add_subcommand("region", "feasible-region boundary for plotting");
  add_param_flags(*region, o.params);
  region->add_option("--beta", o.params.beta, "download per helper")->required();
  add_output_flags(*region, o, "csv", {"csv", "json"});

  auto* tradeoff = app.add_subcommand("tradeoff", "sweep beta: storage cost vs repair bandwidth");
  add_param_flags(*tradeoff, o.params);
  tradeoff->add_option("--beta-lo", o.beta_lo, "first beta sample");
  tradeoff->add_option("--beta-hi", o.beta_hi, "last beta sample");
  tradeoff->add_option("--repair-bw-lo", o.dbeta_lo, "first d*beta sample");
  tradeoff->add_option("--repair-bw-hi", o.dbeta_hi, "last d*beta sample");
  tradeoff->add_option("--steps", o.steps, "number of samples, endpoints included")->capture_default_str();
  add_output_flags(*tradeoff, o, "csv", {"csv", "json"});

  auto add_alloc_flags = [&](CLI::App& sub) {
    sub.add_option("--alpha1", o.alpha1, "storage per type-1 node (default: optimum)");
    sub.add_option("--alpha2", o.alpha2, "storage per type-2 node (default: optimum)");
    sub.add_option("--scale", o.scale, "multiply the allocation by this factor")->capture_default_str();
    sub.add_option("--seed", o.seed, "random seed (default: $REGENALLOC_SEED or 1)");
    sub.add_option("--dc-samples", o.dc_samples, "sample this many collectors instead of all C(n,k)");
  };

  auto* verify = app.add_subcommand("verify", "max-flow check of an allocation over a repair history");
  add_param_flags(*verify, o.params);
  verify->add_option("--beta", o.params.beta, "download per helper")->required();
  add_alloc_flags(*verify);
  verify->add_option("--scenario", o.scenario_path, "scenario file (repair/dc lines)");
  verify->add_option("--random-history", o.random_history, "generate this many random repairs");
  verify->add_option("--adversarial", o.adversarial, "tightness scenario for a type vector, e.g. 1,2");
  verify->add_option("--emit-scenario", o.emit_scenario, "write the replayed scenario to this file");
  add_output_flags(*verify, o, "text", {"text", "json"});

  auto* simulate_cmd = app.add_subcommand("simulate", "random linear network coding trials");
  add_param_flags(*simulate_cmd, o.params);
  simulate_cmd->add_option("--beta", o.params.beta, "download per helper")->required();
  add_alloc_flags(*simulate_cmd);
  simulate_cmd->add_option("--field", o.field, "coding field")
      ->check(CLI::IsMember({"gf256", "gf2"}))
      ->capture_default_str();
  simulate_cmd->add_option("--trials", o.trials, "independent trials")->capture_default_str();
  simulate_cmd->add_option("--repairs", o.repairs, "random repairs per trial")->capture_default_str();
  simulate_cmd->add_option("--payload", o.payload, "payload bytes per packet (0: coefficients only)");
  simulate_cmd->add_option("--packet-cap", o.packet_cap, "largest packet count allowed")->capture_default_str();
  add_output_flags(*simulate_cmd, o, "text", {"text", "json"});

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();  // program name
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  std::ofstream file;
  std::ostringstream buffer;
  int code = kOk;
  try {
    if (optimize->parsed()) {
      code = cmd_optimize(o, buffer);
    } else if (constraints->parsed()) {
      code = cmd_constraints(o, buffer);
    } else if (region->parsed()) {
      code = cmd_region(o, buffer);
    } else if (tradeoff->parsed()) {
      code = cmd_tradeoff(o, buffer);
    } else if (verify->parsed()) {
      code = cmd_verify(o, buffer, err);
    } else {
      code = cmd_simulate(o, buffer);
    }
  } catch (const InfeasibleError& e) {
    err << "error: " << e.what() << " (beta_min=" << e.beta_min().to_decimal(o.precision) << ")\n";
    return kInfeasible;
  } catch (const ScenarioError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  if (!o.output.empty()) {
    file.open(o.output);
    if (!file) {
      err << "error: cannot write '" << o.output << "'\n";
      return kUsage;
    }
    file << buffer.str();
  } else {
    out << buffer.str();
  }
  return code;
}

}  // namespace regenalloc::cli
