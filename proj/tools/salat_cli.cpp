// salat: command-line front end. Every subcommand writes one JSON document
// (verify writes JSON lines) to --out or stdout.
//
// Exit codes: 0 success, 1 a check failed, 2 usage or mathematical error.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "salat/enumeration.hpp"
#include "salat/instance_gen.hpp"
#include "salat/json_io.hpp"
#include "salat/numtheory.hpp"
#include "salat/oracles.hpp"
#include "salat/reductions.hpp"
#include "salat/verify.hpp"

using namespace salat;

namespace {

struct RunConfig {
  std::string subcommand;
  std::size_t n = 8;
  std::string k = "2";
  std::uint64_t seed = 1;
  std::string norm = "l2";
  std::string gamma = "1/1";
  std::string mode = "strict";
  std::string oracle = "exact";
  std::uint64_t budget = EnumOptions{}.node_budget;
  std::string in;
  std::string out;
  bool with_target = false;
  bool enumerate = false;
  std::uint64_t samples = 1'000'000;
  unsigned bits = 32;
  std::size_t runs = 300;
};

Json config_json(const RunConfig& c) {
  Json j;
  j["subcommand"] = c.subcommand;
  j["n"] = c.n;
  j["k"] = c.k;
  j["seed"] = std::to_string(c.seed);
  j["norm"] = c.norm;
  j["gamma"] = c.gamma;
  j["mode"] = c.mode;
  j["oracle"] = c.oracle;
  j["budget"] = std::to_string(c.budget);
  j["in"] = c.in;
  j["out"] = c.out;
  j["with_target"] = c.with_target;
  return j;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorKind::Parse, "cannot open '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void emit(const RunConfig& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out);
  if (!f) throw Error(ErrorKind::Parse, "cannot write '" + c.out + "'");
  f << text;
}

void emit(const RunConfig& c, const Json& j) { emit(c, j.dump(2) + "\n"); }

/// The instance from --in (a plain instance or an approx document), else a
/// generated one. --gamma / --norm given on the command line override the file.
GeneralInstance load_instance(const RunConfig& c, const CLI::App& app, bool want_target) {
  GeneralInstance inst;
  if (!c.in.empty()) {
    const Json j = parse_json_text(read_file(c.in));
    inst = instance_from_json(j.contains("instance") ? j.at("instance") : j);
    if (app.count("--gamma")) inst.gamma = parse_gamma(c.gamma);
    if (app.count("--norm")) inst.norm = parse_norm(c.norm);
  } else {
    inst = generate_instance(c.n, parse_int(c.k), c.seed, want_target, parse_gamma(c.gamma), parse_norm(c.norm));
  }
  return inst;
}

EnumOptions enum_options(const RunConfig& c) {
  EnumOptions o;
  o.node_budget = c.budget;
  return o;
}

void add_instance_flags(CLI::App* s, RunConfig& c) {
  s->add_option("--n", c.n, "dimension")->capture_default_str();
  s->add_option("--k", c.k, "entry bound")->capture_default_str();
  s->add_option("--seed", c.seed, "PRNG seed")->capture_default_str();
  s->add_option("--norm", c.norm, "l1, l2 or linf")->capture_default_str();
  s->add_option("--gamma", c.gamma, "approximation factor a/b")->capture_default_str();
  s->add_option("--in", c.in, "instance JSON (overrides --n/--k/--seed)");
  s->add_option("--out", c.out, "output path (default stdout)");
}

int run_gen(const RunConfig& c, const CLI::App& app) {
  const GeneralInstance inst = load_instance(c, app, c.with_target);
  emit(c, instance_to_json(inst));
  return 0;
}

int run_approx(const RunConfig& c, const CLI::App& app) {
  const GeneralInstance inst = load_instance(c, app, false);
  const SAInstance sa = sa_approximate(inst, parse_mode(c.mode));
  Json j = sa_to_json(sa, inst);
  j["generation_check"] = generation_check(inst.m, sa);
  j["config"] = config_json(c);
  emit(c, j);
  return 0;
}

int run_reduce(const RunConfig& c, const CLI::App& app, const std::string& problem) {
  const GeneralInstance inst = load_instance(c, app, problem == "cvp");
  ReductionOptions opts;
  opts.mode = parse_mode(c.mode);
  opts.oracle = parse_oracle_mode(c.oracle);
  opts.enum_opts = enum_options(c);
  ReductionResult r;
  if (problem == "svp")
    r = reduce_svp(inst, opts);
  else if (problem == "sivp")
    r = reduce_sivp(inst, opts);
  else
    r = reduce_cvp(inst, opts);
  Json j = reduction_to_json(r, inst);
  j["config"] = config_json(c);
  emit(c, j);
  return 0;
}

int run_oracle(const RunConfig& c, const CLI::App& app, const std::string& problem) {
  const GeneralInstance inst = load_instance(c, app, problem == "cvp");
  const EnumOptions opts = enum_options(c);
  EnumStats stats;
  Json j;
  j["problem"] = problem;
  j["n"] = inst.n;
  j["k"] = to_json(inst.k);
  j["norm"] = std::string(to_string(inst.norm));
  if (problem == "svp") {
    const LatticePoint w = enum_shortest(inst.m, inst.norm, opts, &stats);
    j["coefficients"] = to_json(w.coeffs);
    j["v"] = to_json(w.vector);
    j["achieved"] = to_json(w.norm);
  } else if (problem == "cvp") {
    if (!inst.target) throw Error(ErrorKind::InvalidInstance, "cvp needs a target vector");
    const LatticePoint w = enum_closest(inst.m, *inst.target, inst.norm, opts, &stats);
    j["coefficients"] = to_json(w.coeffs);
    j["v"] = to_json(w.vector);
    j["achieved"] = to_json(w.norm);
  } else {
    const SuccessiveMinima sm = enum_successive(inst.m, inst.norm, opts, &stats);
    Json lam = Json::array(), vs = Json::array();
    for (std::size_t i = 0; i < sm.lambda.size(); ++i) {
      lam.push_back(to_json(sm.lambda[i]));
      vs.push_back(to_json(sm.witnesses[i].vector));
    }
    j["lambda"] = std::move(lam);
    j["v"] = std::move(vs);
    j["achieved"] = to_json(sm.lambda.back());
  }
  j["nodes"] = stats.nodes;
  j["config"] = config_json(c);
  emit(c, j);
  return 0;
}

int run_verify(const RunConfig& c, const CLI::App& app) {
  GeneralInstance inst;
  SAInstance sa;
  bool from_file = false;
  if (!c.in.empty()) {
    const Json j = parse_json_text(read_file(c.in));
    if (j.contains("m_tilde")) {
      sa = sa_from_json(j, inst);
      from_file = true;
    } else {
      inst = instance_from_json(j);
    }
    if (app.count("--gamma")) inst.gamma = parse_gamma(c.gamma);
    if (app.count("--norm")) inst.norm = parse_norm(c.norm);
  } else {
    inst = load_instance(c, app, false);
  }
  if (!from_file) sa = sa_approximate(inst, parse_mode(c.mode));

  std::vector<CheckReport> reports = run_checks(inst, sa, c.enumerate, enum_options(c));
  CheckReport gen;
  gen.name = "generation";
  const GenerationDetail d = generation_detail(inst.m, sa);
  gen.pass = d.unimodular_replacement && d.hnf_identity;
  gen.measured = {{"unimodular_replacement", d.unimodular_replacement ? "true" : "false"},
                  {"hnf_identity", d.hnf_identity ? "true" : "false"}};
  reports.insert(reports.begin(), gen);

  std::string text;
  bool all = true;
  for (const auto& r : reports) {
    Json j = report_to_json(r);
    j["config"] = config_json(c);
    text += j.dump() + "\n";
    all = all && r.pass;
  }
  emit(c, text);
  return all ? 0 : 1;
}

int run_stats(const RunConfig& c, const std::string& which) {
  Json j;
  j["experiment"] = which;
  if (which == "coprime-gap") {
    const GapHistogram h = coprime_gap_experiment(c.samples, c.bits, c.seed);
    j["bits"] = c.bits;
    j["freq_zero"] = to_json(h.frequency(0));
    j["histogram"] = histogram_to_json(h);
  } else {
    const GapHistogram h = perturbation_stats(c.runs, c.n, parse_int(c.k), c.seed, parse_mode(c.mode));
    j["runs"] = c.runs;
    j["freq_zero"] = to_json(h.frequency(0));
    j["histogram"] = histogram_to_json(h);
  }
  Json cfg = config_json(c);
  cfg["samples"] = std::to_string(c.samples);
  cfg["bits"] = c.bits;
  cfg["runs"] = c.runs;
  j["config"] = std::move(cfg);
  emit(c, j);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SA-lattice approximation, reductions and verification"};
  app.require_subcommand(1);
  RunConfig c;

  auto* gen = app.add_subcommand("gen", "generate a random instance");
  add_instance_flags(gen, c);
  gen->add_flag("--with-target", c.with_target, "also draw a rational target");

  auto* approx = app.add_subcommand("approx", "approximate M Z^n by an SA lattice");
  add_instance_flags(approx, c);
  approx->add_option("--mode", c.mode, "strict or small-n")->capture_default_str();

  auto* reduce = app.add_subcommand("reduce", "run a reduction through an SA oracle");
  reduce->require_subcommand(1);
  auto* oracle = app.add_subcommand("oracle", "solve on M directly by enumeration");
  oracle->require_subcommand(1);
  std::vector<std::pair<CLI::App*, std::string>> reduce_cmds, oracle_cmds;
  for (const char* p : {"svp", "sivp", "cvp"}) {
    auto* r = reduce->add_subcommand(p, std::string("reduce ") + p);
    add_instance_flags(r, c);
    r->add_option("--mode", c.mode, "strict or small-n")->capture_default_str();
    r->add_option("--oracle", c.oracle, "exact, direct or adversarial")->capture_default_str();
    r->add_option("--budget", c.budget, "enumeration node budget")->capture_default_str();
    reduce_cmds.emplace_back(r, p);
    auto* o = oracle->add_subcommand(p, std::string("reference ") + p + " on M");
    add_instance_flags(o, c);
    o->add_option("--budget", c.budget, "enumeration node budget")->capture_default_str();
    oracle_cmds.emplace_back(o, p);
  }

  auto* verify = app.add_subcommand("verify", "run the verification suite");
  add_instance_flags(verify, c);
  verify->add_option("--mode", c.mode, "strict or small-n")->capture_default_str();
  verify->add_option("--budget", c.budget, "enumeration node budget")->capture_default_str();
  verify->add_flag("--enumerate", c.enumerate, "also run the enumeration-based checks");

  auto* stats = app.add_subcommand("stats", "statistics experiments");
  stats->require_subcommand(1);
  auto* gap = stats->add_subcommand("coprime-gap", "smallest x with gcd(a + x, b) = 1");
  gap->add_option("--samples", c.samples, "number of (a, b) pairs")->capture_default_str();
  gap->add_option("--bits", c.bits, "pairs are uniform in [2^(bits-1), 2^bits)")->capture_default_str();
  gap->add_option("--seed", c.seed, "PRNG seed")->capture_default_str();
  gap->add_option("--out", c.out, "output path (default stdout)");
  auto* pert = stats->add_subcommand("perturbation", "shifts x_i of the SA approximation");
  pert->add_option("--runs", c.runs, "number of random instances")->capture_default_str();
  pert->add_option("--n", c.n, "dimension")->capture_default_str();
  pert->add_option("--k", c.k, "entry bound")->capture_default_str();
  pert->add_option("--seed", c.seed, "PRNG seed")->capture_default_str();
  pert->add_option("--mode", c.mode, "strict or small-n")->capture_default_str();
  pert->add_option("--out", c.out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*gen) {
      c.subcommand = "gen";
      return run_gen(c, *gen);
    }
    if (*approx) {
      c.subcommand = "approx";
      return run_approx(c, *approx);
    }
    for (auto& [sub, p] : reduce_cmds)
      if (*sub) {
        c.subcommand = "reduce " + p;
        return run_reduce(c, *sub, p);
      }
    for (auto& [sub, p] : oracle_cmds)
      if (*sub) {
        c.subcommand = "oracle " + p;
        return run_oracle(c, *sub, p);
      }
    if (*verify) {
      c.subcommand = "verify";
      return run_verify(c, *verify);
    }
    if (*gap) {
      c.subcommand = "stats coprime-gap";
      return run_stats(c, "coprime-gap");
    }
    if (*pert) {
      c.subcommand = "stats perturbation";
      return run_stats(c, "perturbation");
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
