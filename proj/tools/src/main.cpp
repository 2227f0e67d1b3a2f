// trivote: metric-voting toolbox.
//
// Subcommands:
//   eval    exact or Monte-Carlo distortion of a mechanism on an instance file
//   gen     emit an adversarial instance family in the instance file format
//   curve   CSV of favorite-only reference bounds vs the Random Oligarchy bound
//   search  exhaustive pessimistic-distortion grid search with certification
//   check   randomized property suites over random metric instances
//
// Exit codes: 0 success, 1 property violation, 2 usage/parse error,
// 3 work-budget refusal.

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "trivote/adversarial.hpp"
#include "trivote/analysis.hpp"
#include "trivote/check_suites.hpp"
#include "trivote/instance_io.hpp"
#include "trivote/search.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::ostream& open_output(const std::string& path, std::ofstream& file) {
  if (path.empty()) return std::cout;
  file.open(path);
  if (!file) throw std::runtime_error("cannot write '" + path + "'");
  return file;
}

struct EvalArgs {
  std::string file;
  std::string mechanism = "rd";
  int moment = 1;
  std::string mode = "exact";
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 12345;
};

int run_eval(const EvalArgs& args) {
  const trivote::MetricInstance inst = trivote::load_instance(args.file);
  const trivote::MechanismId id = trivote::parse_mechanism(args.mechanism);
  std::cout << "config: command=eval file=" << args.file << " mechanism=" << args.mechanism
            << " moment=" << args.moment << " mode=" << args.mode << " samples=" << args.samples
            << " seed=" << args.seed << "\n";
  std::cout << "instance: kind="
            << (inst.kind() == trivote::GeometryKind::Matrix ? "matrix" : "planar")
            << " agents=" << inst.agent_count() << " alternatives=" << inst.alternative_count()
            << "\n";

  if (args.mode == "exact") {
    if (inst.agent_count() > 300) {
      std::cerr << "exact mode enumerates n^3 triples and is limited to n <= 300 (got n="
                << inst.agent_count() << "); use --mode mc\n";
      return kExitBudget;
    }
    const trivote::ExactEvaluation eval = trivote::evaluate_exact(inst, id);
    std::cout << "optimal: alternative=" << eval.report.opt_alternative
              << " cost=" << fmt(eval.report.opt_cost) << "\n";
    std::cout << "distribution:";
    for (double p : eval.distribution.probs) std::cout << ' ' << fmt(p);
    std::cout << "\n";
    std::cout << "distortion=" << fmt(eval.report.distortion) << "\n";
    std::cout << "squared_distortion=" << fmt(eval.report.squared_distortion) << "\n";
    return kExitOk;
  }

  const std::uint64_t seed1 = trivote::Rng::derive_seed(args.seed, 1);
  const std::uint64_t seed2 = trivote::Rng::derive_seed(args.seed, 2);
  std::cout << "subseeds: moment1=" << seed1 << " moment2=" << seed2 << "\n";
  const auto [opt, opt_cost] = trivote::optimal_alternative(inst);
  std::cout << "optimal: alternative=" << opt << " cost=" << fmt(opt_cost) << "\n";
  const auto est1 = trivote::monte_carlo_distortion(inst, id, args.samples, seed1, 1);
  const auto est2 = trivote::monte_carlo_distortion(inst, id, args.samples, seed2, 2);
  std::cout << "distortion=" << fmt(est1.estimate) << " std_error=" << fmt(est1.std_error) << "\n";
  std::cout << "squared_distortion=" << fmt(est2.estimate) << " std_error=" << fmt(est2.std_error)
            << "\n";
  return kExitOk;
}

struct GenArgs {
  std::string family;
  std::string out;
  std::size_t agents = 10;
  std::size_t k = 1;
  double eps = -1.0;  // family default when negative
  double delta = 1e-3;
  std::string variant = "A";
  std::string geometry = "abstract";
};

int run_gen(const GenArgs& args) {
  double eps = args.eps;
  trivote::MetricInstance inst = [&] {
    if (args.family == "star") {
      trivote::StarFamily family;
      family.variant = args.variant == "A" ? trivote::StarVariant::A : trivote::StarVariant::B;
      if (eps < 0.0) eps = 1e-3;
      family.eps = eps;
      family.geometry = args.geometry == "circle" ? trivote::StarGeometry::EuclideanCircle
                                                  : trivote::StarGeometry::AbstractMetric;
      return trivote::build_star_instance(family);
    }
    if (args.family == "topk-squared") {
      if (eps < 0.0) eps = 0.5 / static_cast<double>(args.agents);
      return trivote::build_topk_squared_instance(args.agents, args.k, eps);
    }
    if (args.family == "circle") {
      if (eps < 0.0) eps = 1e-4;
      return trivote::build_circle_instance(args.agents, args.k, eps, args.delta);
    }
    throw CLI::ValidationError("--family must be star, topk-squared or circle");
  }();
  std::cout << "config: command=gen family=" << args.family << " agents=" << args.agents
            << " k=" << args.k << " eps=" << fmt(eps) << " delta=" << fmt(args.delta)
            << " variant=" << args.variant << " geometry=" << args.geometry << "\n";
  std::ofstream file;
  std::ostream& out = open_output(args.out, file);
  trivote::emit_instance(inst, out);
  return kExitOk;
}

struct CurveArgs {
  std::uint64_t m_max = 10;
  std::string out;
};

int run_curve(const CurveArgs& args) {
  if (args.m_max < 2 || args.m_max > 1'000'000)
    throw CLI::ValidationError("--m-max must lie in [2, 1000000]");
  std::cerr << "config: command=curve m_max=" << args.m_max << "\n";
  std::ofstream file;
  std::ostream& out = open_output(args.out, file);
  trivote::write_curve_csv(out, args.m_max);
  return kExitOk;
}

struct SearchArgs {
  std::uint64_t delta_inv = 10;
  std::string mode = "full";
  unsigned threads = 1;
  std::uint64_t budget = 50'000'000;
  bool long_run = false;
  std::string checkpoint;
  std::string summary;
};

int run_search(const SearchArgs& args) {
  trivote::SearchOptions options;
  options.delta_inverse = args.delta_inv;
  options.mode = trivote::parse_search_mode(args.mode);
  options.threads = args.threads;
  options.budget = args.budget;
  options.unlimited = args.long_run;
  options.checkpoint_path = args.checkpoint;

  std::cout << "config: command=search delta_inv=" << args.delta_inv << " mode=" << args.mode
            << " threads=" << args.threads << " budget=" << args.budget
            << " long=" << (args.long_run ? "true" : "false") << " checkpoint="
            << (args.checkpoint.empty() ? "-" : args.checkpoint) << "\n";
  std::cout << "estimated_configs=" << trivote::estimate_config_count(options) << "\n";

  const trivote::SearchReport report = trivote::grid_search(options);
  std::cout << trivote::render_summary(report);
  std::cout << "wall_seconds=" << fmt(report.wall_seconds) << "\n";
  std::cout << "threads=" << report.threads << "\n";
  if (!args.summary.empty()) {
    std::ofstream file(args.summary);
    if (!file) throw std::runtime_error("cannot write '" + args.summary + "'");
    file << trivote::render_summary(report);
  }
  return kExitOk;
}

struct CheckArgs {
  std::string suite = "all";
  std::uint64_t seed = 12345;
  std::uint64_t count = 200;
};

int run_check(const CheckArgs& args) {
  std::cout << "config: command=check suite=" << args.suite << " seed=" << args.seed
            << " count=" << args.count << "\n";
  const auto results =
      trivote::run_check_suites(trivote::parse_check_suite(args.suite), args.seed, args.count);
  bool ok = true;
  for (const auto& result : results) {
    std::cout << (result.passed() ? "[PASS] " : "[FAIL] ") << result.name
              << ": subseed=" << result.seed << " " << result.instances_checked << " instances, "
              << result.violations << " violations\n";
    for (const auto& message : result.messages) std::cout << "  " << message << "\n";
    ok = ok && result.passed();
  }
  return ok ? kExitOk : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"metric-voting mechanisms: exact distortion, adversarial instances, plane search"};
  app.require_subcommand(1);

  EvalArgs eval_args;
  auto* eval = app.add_subcommand("eval", "evaluate a mechanism on an instance file");
  eval->add_option("file", eval_args.file, "instance file")->required();
  eval->add_option("--mechanism", eval_args.mechanism, "rd | rr | ro")->required();
  eval->add_option("--moment", eval_args.moment, "1 or 2")->check(CLI::IsMember({1, 2}));
  eval->add_option("--mode", eval_args.mode, "exact | mc")
      ->check(CLI::IsMember({"exact", "mc"}));
  eval->add_option("--samples", eval_args.samples, "Monte-Carlo sample count");
  eval->add_option("--seed", eval_args.seed, "Monte-Carlo master seed");

  GenArgs gen_args;
  auto* gen = app.add_subcommand("gen", "generate an adversarial instance");
  gen->add_option("--family", gen_args.family, "star | topk-squared | circle")->required();
  gen->add_option("--out", gen_args.out, "output file (default stdout)");
  gen->add_option("--agents", gen_args.agents, "number of agents");
  gen->add_option("--k", gen_args.k, "private alternatives per agent");
  gen->add_option("--eps", gen_args.eps, "separation parameter (family default when omitted)");
  gen->add_option("--delta", gen_args.delta, "circle diameter (circle family)");
  gen->add_option("--variant", gen_args.variant, "star variant")->check(CLI::IsMember({"A", "B"}));
  gen->add_option("--geometry", gen_args.geometry, "star geometry: abstract | circle")
      ->check(CLI::IsMember({"abstract", "circle"}));

  CurveArgs curve_args;
  auto* curve = app.add_subcommand("curve", "emit the bound-curve CSV");
  curve->add_option("--m-max", curve_args.m_max, "largest |S|, in [2, 1e6]")->required();
  curve->add_option("--out", curve_args.out, "output file (default stdout)");

  SearchArgs search_args;
  auto* search = app.add_subcommand("search", "pessimistic-distortion grid search");
  search->add_option("--delta-inv", search_args.delta_inv, "grid fineness k, delta = 1/k")
      ->required();
  search->add_option("--mode", search_args.mode, "full | collinear")
      ->check(CLI::IsMember({"full", "collinear"}));
  search->add_option("--threads", search_args.threads, "worker threads");
  search->add_option("--budget", search_args.budget, "max configurations without --long");
  search->add_flag("--long", search_args.long_run, "lift the work budget");
  search->add_option("--checkpoint", search_args.checkpoint, "resumable checkpoint file");
  search->add_option("--summary", search_args.summary, "write the machine-readable summary here");

  CheckArgs check_args;
  auto* check = app.add_subcommand("check", "randomized property suites");
  check->add_option("--suite", check_args.suite, "lemma2 | jensen | theorem2 | all")
      ->check(CLI::IsMember({"lemma2", "jensen", "theorem2", "all"}));
  check->add_option("--seed", check_args.seed, "master seed");
  check->add_option("--count", check_args.count, "instances per suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*eval) return run_eval(eval_args);
    if (*gen) return run_gen(gen_args);
    if (*curve) return run_curve(curve_args);
    if (*search) return run_search(search_args);
    if (*check) return run_check(check_args);
  } catch (const trivote::BudgetError& e) {
    std::cerr << "error: " << e.what() << " (pass --long or raise --budget)\n";
    return kExitBudget;
  } catch (const trivote::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
