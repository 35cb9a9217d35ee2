#include "aot/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "aot/bounds.hpp"
#include "aot/channel_metrics.hpp"
#include "aot/class_counting.hpp"
#include "aot/formats.hpp"
#include "aot/inequality.hpp"
#include "aot/instruments.hpp"
#include "aot/maximize.hpp"
#include "aot/mindim.hpp"
#include "aot/parallel.hpp"
#include "aot/realization.hpp"

namespace aot {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw parse_error("cannot open input file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw parse_error("cannot open output file '" + path + "'");
  out << text;
}

std::vector<int> parse_input_sequence(const std::string& text) {
  std::istringstream in(text);
  std::vector<int> values;
  std::string token;
  while (in >> token) {
    try {
      std::size_t pos = 0;
      int v = std::stoi(token, &pos);
      if (pos != token.size()) throw std::invalid_argument(token);
      values.push_back(v);
    } catch (const std::exception&) {
      throw parse_error("--inputs: invalid integer '" + token + "'");
    }
  }
  if (values.empty()) throw parse_error("--inputs: empty sequence");
  return values;
}

void require_format(const std::string& format,
                    const std::vector<std::string>& allowed) {
  if (std::find(allowed.begin(), allowed.end(), format) == allowed.end()) {
    std::string list;
    for (const std::string& f : allowed) list += (list.empty() ? "" : ", ") + f;
    throw parse_error("unsupported --format '" + format +
                      "' here (expected one of: " + list + ")");
  }
}

struct EnumerateArgs {
  int outcomes = 2, settings = 2, length = 2;
  std::uint64_t start = 0, limit = 0;
  std::string format = "json", out;
};

int run_enumerate(const EnumerateArgs& a) {
  require_format(a.format, {"json", "csv", "aott"});
  Scenario sc(a.outcomes, a.settings, a.length);
  BigCount total = count_extreme_points(sc);
  BigCount first(a.start);
  if (first > total)
    throw parse_error("--start is past the last tree index " +
                      to_decimal(total - 1));
  BigCount remaining = total - first;
  BigCount selected =
      a.limit == 0 ? remaining : std::min(remaining, BigCount(a.limit));
  if (selected > 100000)
    throw resource_error("refusing to materialize " + to_decimal(selected) +
                         " trees; narrow the range with --limit");
  Enumeration e;
  e.scenario = sc;
  e.total = total;
  std::uint64_t n = to_uint64(selected);
  for (std::uint64_t i = 0; i < n; ++i)
    e.trees.push_back(tree_from_index(sc, first + i));
  if (a.format == "json") {
    write_output(a.out, enumeration_to_json(e));
  } else if (a.format == "csv") {
    write_output(a.out, enumeration_to_csv(e));
  } else {
    if (e.trees.size() != 1)
      throw parse_error(
          "--format aott needs exactly one tree; use --limit 1");
    write_output(a.out, write_aott(e.trees[0]));
  }
  return 0;
}

struct ClassifyArgs {
  int outcomes = 2, settings = 2, length = 2;
  std::string mode = "RE", variant = "per-setting";
  bool brute_force = false, representatives = false;
  std::uint64_t cap = 10000000;
  std::string format = "csv", out;
};

int run_classify(const ClassifyArgs& a) {
  require_format(a.format, {"json", "csv"});
  Scenario sc(a.outcomes, a.settings, a.length);
  Relabelings mode = mode_from_string(a.mode);
  GroupVariant variant = variant_from_string(a.variant);

  OrbitReport report;
  report.scenario = sc;
  report.mode = mode;
  report.variant = variant;
  if (variant == GroupVariant::PerSetting) {
    // Closed forms exist for two outcomes (full group also needs S <= 3);
    // fall back to counting distinct canonical forms elsewhere.
    try {
      if (mode == Relabelings::Full)
        report = count_re_classes(sc);
      else
        report.class_count = count_ore_classes(sc);
    } catch (const unsupported_scenario_error&) {
      report.class_count = distinct_canonical_count(sc, mode, variant, a.cap);
    }
  } else {
    report.class_count = distinct_canonical_count(sc, mode, variant, a.cap);
  }
  if (a.representatives)
    report.representatives = class_representatives(sc, mode, variant, a.cap);

  BigCount brute(0);
  bool match = true;
  if (a.brute_force) {
    brute = brute_force_class_count(sc, mode, variant, a.cap);
    match = brute == report.class_count;
  }

  if (a.format == "csv")
    write_output(a.out, classify_csv(report, brute, match));
  else
    write_output(a.out, classify_json(report, a.brute_force, brute, match));
  return match ? 0 : 1;
}

struct TreeArgs {
  std::string tree, mode = "RE", variant = "per-setting", format = "aott", out;
};

int run_canonicalize(const TreeArgs& a) {
  require_format(a.format, {"aott"});
  StrategyTree tree = parse_aott(read_file(a.tree));
  StrategyTree canon = canonical_form(tree, mode_from_string(a.mode),
                                      variant_from_string(a.variant));
  write_output(a.out, write_aott(canon));
  return 0;
}

int run_mindim(const TreeArgs& a) {
  require_format(a.format, {"json"});
  StrategyTree tree = parse_aott(read_file(a.tree));
  write_output(a.out, assignment_to_json(minimal_dimension(tree)));
  return 0;
}

int run_realize(const TreeArgs& a) {
  require_format(a.format, {"json"});
  StrategyTree tree = parse_aott(read_file(a.tree));
  write_output(a.out, realization_to_json(synthesize_realization(tree)));
  return 0;
}

struct SimulateArgs {
  std::string realization, inputs, format = "json", out;
};

int run_simulate(const SimulateArgs& a) {
  require_format(a.format, {"json"});
  Realization r = realization_from_json(read_file(a.realization));
  std::vector<int> xs = parse_input_sequence(a.inputs);
  for (int x : xs)
    if (x < 1 || x > r.scenario.settings)
      throw parse_error("--inputs: setting " + std::to_string(x) +
                        " outside 1.." + std::to_string(r.scenario.settings));
  Scenario step_scenario(r.scenario.outcomes, r.scenario.settings,
                         static_cast<int>(xs.size()));
  if (xs.size() * std::log2(double(r.scenario.outcomes)) > 20)
    throw resource_error("output space too large to sweep; shorten --inputs");
  std::uint64_t outputs = output_space_size(step_scenario);
  auto set = instruments_from_realization<Rational>(r);
  auto state = state_from_realization<Rational>(r);
  std::vector<std::pair<std::vector<int>, double>> distribution;
  for (std::uint64_t oa = 0; oa < outputs; ++oa) {
    std::vector<int> as = decode_outputs(step_scenario, oa);
    Rational p = sequence_probability(state, set, xs, as);
    if (p != Rational(0)) distribution.emplace_back(as, p.to_double());
  }
  write_output(a.out, distribution_to_json(xs, distribution));
  return 0;
}

struct AotCheckArgs {
  std::string table, format = "json", out;
  double tolerance = 1e-9;
};

int run_aot_check(const AotCheckArgs& a) {
  require_format(a.format, {"json"});
  CorrelationTable table = table_from_json(read_file(a.table));
  AotReport report = check_aot(table, a.tolerance);
  write_output(a.out, aot_report_to_json(report));
  return report.pass ? 0 : 1;
}

struct BoundsArgs {
  int outcomes = 2, settings = 2, length = 2;
  bool improved = false;
  std::string emit_witness, format = "json", out;
};

int run_bounds(const BoundsArgs& a) {
  require_format(a.format, {"json"});
  Scenario sc(a.outcomes, a.settings, a.length);
  BoundReport report = dimension_bounds(sc);
  write_output(a.out, bound_report_to_json(report));
  if (!a.emit_witness.empty()) {
    StrategyTree witness = a.improved ? construct_witness_improved(sc)
                                      : construct_witness_main(sc);
    write_output(a.emit_witness, write_aott(witness));
  }
  return 0;
}

struct ComposeArgs {
  std::string blocks, plan, format = "json", out;
};

int run_compose(const ComposeArgs& a) {
  require_format(a.format, {"json"});
  std::vector<CompositionBlock> blocks = blocks_from_json(read_file(a.blocks));
  CompositionPlan plan = plan_from_json(read_file(a.plan));
  write_output(a.out, composed_to_json(compose(blocks, plan)));
  return 0;
}

struct EvaluateArgs {
  std::string ineq, table, format = "json", out;
};

int run_evaluate(const EvaluateArgs& a) {
  require_format(a.format, {"json"});
  TemporalInequality ineq = inequality_from_json(read_file(a.ineq));
  CorrelationTable table = table_from_json(read_file(a.table));
  double value = evaluate(ineq, table);
  std::vector<std::string> violations;
  if (value > ineq.algebraic_bound + 1e-9) violations.push_back("algebraic");
  for (const auto& [dimension, cap] : ineq.dimension_caps)
    if (value > cap + 1e-9)
      violations.push_back("d=" + std::to_string(dimension));
  write_output(a.out, evaluation_to_json(value, ineq, violations));
  return violations.empty() ? 0 : 1;
}

struct RobustnessArgs {
  double eps = 0.01;
  std::uint64_t trials = 1000, seed = 1;
  int length = 3, dimension = 2, outcomes = 2, settings = 2, from_step = 2;
  std::string format = "json", out;
};

int run_robustness(const RobustnessArgs& a) {
  require_format(a.format, {"json"});
  if (a.trials == 0) throw parse_error("--trials must be positive");
  Scenario sc(a.outcomes, a.settings, a.length);
  std::mt19937_64 rng(a.seed);
  RobustnessRun run;
  run.scenario = sc;
  run.dimension = a.dimension;
  run.from_step = a.from_step;
  run.eps = a.eps;
  run.trials = a.trials;
  run.seed = a.seed;
  for (std::uint64_t t = 0; t < a.trials; ++t) {
    auto nominal = random_instrument_set(a.outcomes, a.settings, a.dimension,
                                         1, rng);
    auto alternative = random_instrument_set(a.outcomes, a.settings,
                                             a.dimension, 1, rng);
    auto state = random_pure_state(a.dimension, rng);
    PerturbedInstruments p = perturb_convex(nominal, a.eps, alternative);
    RobustnessReport report = robustness_check(
        state, nominal, p.instruments, p.certified_eps, sc, a.from_step);
    run.violations += report.violations;
    run.max_ratio = std::max(run.max_ratio, report.max_ratio);
    if (report.max_deviation >= run.max_deviation) {
      run.max_deviation = report.max_deviation;
      run.worst = report;
    }
  }
  write_output(a.out, robustness_run_to_json(run));
  return run.violations == 0 ? 0 : 1;
}

void add_format_option(CLI::App* cmd, std::string& target) {
  cmd->add_option("--format", target, "output format")
      ->check(CLI::IsMember({"json", "csv", "aott"}));
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"strategy trees, relabeling classes, memory bounds, and "
               "sequential quantum models for arrow-of-time correlations"};
  app.require_subcommand(1);
  app.fallthrough();  // lets --threads appear after the subcommand name
  int threads = 0;
  app.add_option("--threads", threads,
                 "worker threads (0 = all cores); AOTLAB_THREADS overrides");

  EnumerateArgs enumerate_args;
  CLI::App* enumerate_cmd =
      app.add_subcommand("enumerate", "list extreme points of a scenario");
  enumerate_cmd->add_option("--O", enumerate_args.outcomes, "outcomes per step")
      ->required();
  enumerate_cmd->add_option("--S", enumerate_args.settings, "settings per step")
      ->required();
  enumerate_cmd->add_option("--L", enumerate_args.length, "sequence length")
      ->required();
  enumerate_cmd->add_option("--start", enumerate_args.start,
                            "first tree index");
  enumerate_cmd->add_option("--limit", enumerate_args.limit,
                            "maximum number of trees (0 = all)");
  add_format_option(enumerate_cmd, enumerate_args.format);
  enumerate_cmd->add_option("--out", enumerate_args.out, "output file");

  ClassifyArgs classify_args;
  CLI::App* classify_cmd =
      app.add_subcommand("classify", "count relabeling classes");
  classify_cmd->add_option("--O", classify_args.outcomes, "outcomes per step")
      ->required();
  classify_cmd->add_option("--S", classify_args.settings, "settings per step")
      ->required();
  classify_cmd->add_option("--L", classify_args.length, "sequence length")
      ->required();
  classify_cmd->add_option("--mode", classify_args.mode,
                           "relabeling mode: RE (full) or ORE (outcomes only)")
      ->check(CLI::IsMember({"RE", "ORE"}));
  classify_cmd
      ->add_option("--variant", classify_args.variant,
                   "outcome permutations per setting or shared")
      ->check(CLI::IsMember({"per-setting", "uniform"}));
  classify_cmd->add_flag("--brute-force", classify_args.brute_force,
                         "cross-check with explicit orbit closure");
  classify_cmd->add_flag("--representatives", classify_args.representatives,
                         "include one canonical tree per class");
  classify_cmd->add_option("--cap", classify_args.cap,
                           "refuse scenarios with more trees than this");
  add_format_option(classify_cmd, classify_args.format);
  classify_cmd->add_option("--out", classify_args.out, "output file");

  TreeArgs canonicalize_args;
  CLI::App* canonicalize_cmd = app.add_subcommand(
      "canonicalize", "smallest tree in the relabeling orbit");
  canonicalize_cmd
      ->add_option("--tree", canonicalize_args.tree, "aott input file")
      ->required();
  canonicalize_cmd
      ->add_option("--mode", canonicalize_args.mode, "relabeling mode")
      ->check(CLI::IsMember({"RE", "ORE"}));
  canonicalize_cmd
      ->add_option("--variant", canonicalize_args.variant, "group variant")
      ->check(CLI::IsMember({"per-setting", "uniform"}));
  add_format_option(canonicalize_cmd, canonicalize_args.format);
  canonicalize_cmd->add_option("--out", canonicalize_args.out, "output file");

  TreeArgs mindim_args;
  mindim_args.format = "json";
  CLI::App* mindim_cmd = app.add_subcommand(
      "mindim", "minimal internal memory of a strategy tree");
  mindim_cmd->add_option("--tree", mindim_args.tree, "aott input file")
      ->required();
  add_format_option(mindim_cmd, mindim_args.format);
  mindim_cmd->add_option("--out", mindim_args.out, "output file");

  TreeArgs realize_args;
  realize_args.format = "json";
  CLI::App* realize_cmd = app.add_subcommand(
      "realize", "minimal-dimension instrument realization of a tree");
  realize_cmd->add_option("--tree", realize_args.tree, "aott input file")
      ->required();
  add_format_option(realize_cmd, realize_args.format);
  realize_cmd->add_option("--out", realize_args.out, "output file");

  SimulateArgs simulate_args;
  CLI::App* simulate_cmd = app.add_subcommand(
      "simulate", "output distribution of a realization on an input sequence");
  simulate_cmd
      ->add_option("--realization", simulate_args.realization,
                   "realization JSON file")
      ->required();
  simulate_cmd
      ->add_option("--inputs", simulate_args.inputs,
                   "space-separated settings, e.g. \"2 1\"")
      ->required();
  add_format_option(simulate_cmd, simulate_args.format);
  simulate_cmd->add_option("--out", simulate_args.out, "output file");

  AotCheckArgs aot_check_args;
  CLI::App* aot_check_cmd = app.add_subcommand(
      "aot-check", "verify the time-ordering marginal conditions of a table");
  aot_check_cmd
      ->add_option("--table", aot_check_args.table, "correlation table JSON")
      ->required();
  aot_check_cmd->add_option("--tolerance", aot_check_args.tolerance,
                            "marginal comparison tolerance");
  add_format_option(aot_check_cmd, aot_check_args.format);
  aot_check_cmd->add_option("--out", aot_check_args.out, "output file");

  BoundsArgs bounds_args;
  CLI::App* bounds_cmd = app.add_subcommand(
      "bounds", "dimension lower bounds and witness trees");
  bounds_cmd->add_option("--O", bounds_args.outcomes, "outcomes per step")
      ->required();
  bounds_cmd->add_option("--S", bounds_args.settings, "settings per step")
      ->required();
  bounds_cmd->add_option("--L", bounds_args.length, "sequence length")
      ->required();
  bounds_cmd->add_flag("--improved", bounds_args.improved,
                       "emit the level-sum witness instead of the single-level "
                       "one");
  bounds_cmd->add_option("--emit-witness", bounds_args.emit_witness,
                         "write the witness tree (aott) to this file");
  add_format_option(bounds_cmd, bounds_args.format);
  bounds_cmd->add_option("--out", bounds_args.out, "output file");

  ComposeArgs compose_args;
  CLI::App* compose_cmd = app.add_subcommand(
      "compose", "graft block inequalities into a longer one");
  compose_cmd->add_option("--blocks", compose_args.blocks, "blocks JSON file")
      ->required();
  compose_cmd->add_option("--plan", compose_args.plan, "plan JSON file")
      ->required();
  add_format_option(compose_cmd, compose_args.format);
  compose_cmd->add_option("--out", compose_args.out, "output file");

  EvaluateArgs evaluate_args;
  CLI::App* evaluate_cmd = app.add_subcommand(
      "evaluate", "apply an inequality to a correlation table");
  evaluate_cmd->add_option("--ineq", evaluate_args.ineq, "inequality JSON file")
      ->required();
  evaluate_cmd->add_option("--table", evaluate_args.table,
                           "correlation table JSON file")
      ->required();
  add_format_option(evaluate_cmd, evaluate_args.format);
  evaluate_cmd->add_option("--out", evaluate_args.out, "output file");

  RobustnessArgs robustness_args;
  CLI::App* robustness_cmd = app.add_subcommand(
      "robustness", "stress the perturbation bound on random instruments");
  robustness_cmd->add_option("--eps", robustness_args.eps, "mixing weight")
      ->required();
  robustness_cmd->add_option("--trials", robustness_args.trials,
                             "number of random draws");
  robustness_cmd->add_option("--length", robustness_args.length,
                             "sequence length");
  robustness_cmd->add_option("--seed", robustness_args.seed, "random seed");
  robustness_cmd->add_option("--dimension", robustness_args.dimension,
                             "system dimension");
  robustness_cmd->add_option("--outcomes", robustness_args.outcomes,
                             "outcomes per step");
  robustness_cmd->add_option("--settings", robustness_args.settings,
                             "settings per step");
  robustness_cmd->add_option("--from-step", robustness_args.from_step,
                             "first perturbed step");
  add_format_option(robustness_cmd, robustness_args.format);
  robustness_cmd->add_option("--out", robustness_args.out, "output file");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();  // drop the program name
  try {
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (const char* env = std::getenv("AOTLAB_THREADS")) {
    try {
      threads = std::stoi(env);
    } catch (const std::exception&) {
      std::cerr << "ignoring invalid AOTLAB_THREADS '" << env << "'\n";
    }
  }
  set_thread_count(std::max(threads, 0));

  try {
    if (app.got_subcommand(enumerate_cmd)) return run_enumerate(enumerate_args);
    if (app.got_subcommand(classify_cmd)) return run_classify(classify_args);
    if (app.got_subcommand(canonicalize_cmd))
      return run_canonicalize(canonicalize_args);
    if (app.got_subcommand(mindim_cmd)) return run_mindim(mindim_args);
    if (app.got_subcommand(realize_cmd)) return run_realize(realize_args);
    if (app.got_subcommand(simulate_cmd)) return run_simulate(simulate_args);
    if (app.got_subcommand(aot_check_cmd)) return run_aot_check(aot_check_args);
    if (app.got_subcommand(bounds_cmd)) return run_bounds(bounds_args);
    if (app.got_subcommand(compose_cmd)) return run_compose(compose_args);
    if (app.got_subcommand(evaluate_cmd)) return run_evaluate(evaluate_args);
    if (app.got_subcommand(robustness_cmd))
      return run_robustness(robustness_args);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  std::cerr << "error: no subcommand selected\n";
  return 2;
}

int run_cli(int argc, const char* const* argv) {
  return run_cli(std::vector<std::string>(argv, argv + argc));
}

}  // namespace aot
