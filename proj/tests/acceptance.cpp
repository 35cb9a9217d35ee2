// Release gate: every check below must print [PASS]. Each criterion is
// self-contained, prints exactly one line, and pins its own tolerances.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "aot/bounds.hpp"
#include "aot/channel_metrics.hpp"
#include "aot/class_counting.hpp"
#include "aot/correlation.hpp"
#include "aot/inequality.hpp"
#include "aot/instruments.hpp"
#include "aot/lambert.hpp"
#include "aot/mindim.hpp"
#include "aot/realization.hpp"
#include "oracles.hpp"

namespace {

using namespace aot;

int failures = 0;

void criterion(const std::string& name,
               const std::function<void(std::ostringstream&)>& body) {
  std::ostringstream problems;
  auto start = std::chrono::steady_clock::now();
  try {
    body(problems);
  } catch (const std::exception& e) {
    problems << "exception: " << e.what() << "; ";
  }
  double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  std::string detail = problems.str();
  std::printf("[%s] %-55s (%6.2fs)%s%s\n", detail.empty() ? "PASS" : "FAIL",
              name.c_str(), seconds, detail.empty() ? "" : " ",
              detail.c_str());
  std::fflush(stdout);
  if (!detail.empty()) ++failures;
}

template <class T>
void expect_eq(std::ostringstream& problems, const char* label, const T& got,
               const T& want) {
  if (!(got == want))
    problems << label << ": got " << got << ", want " << want << "; ";
}

void expect(std::ostringstream& problems, const char* label, bool ok) {
  if (!ok) problems << label << "; ";
}

StrategyTree worked_example_tree() {
  StrategyTree tree = all_zero_tree(Scenario(2, 3, 2));
  tree.tuple_at({2, 1}) = {0, 0, 0};
  tree.tuple_at({2, 2}) = {1, 1, 1};
  tree.tuple_at({2, 3}) = {0, 0, 1};
  return tree;
}

ExactCorrelationTable replay_exactly(const StrategyTree& tree) {
  Realization r = synthesize_realization(tree);
  auto set = instruments_from_realization<Rational>(r);
  auto state = state_from_realization<Rational>(r);
  return correlation_table(state, set, tree.scenario);
}

void check_full_group_count_2x2x2(std::ostringstream& problems) {
  Scenario sc(2, 2, 2);
  OrbitReport report = count_re_classes(sc);
  expect_eq(problems, "formula", report.class_count, BigCount(10));
  expect_eq(problems, "orbit closure",
            brute_force_class_count(sc, Relabelings::Full), BigCount(10));
}

void check_two_step_class_dimensions(std::ostringstream& problems) {
  Scenario sc(2, 2, 2);
  std::vector<StrategyTree> reps =
      class_representatives(sc, Relabelings::Full, GroupVariant::PerSetting);
  expect_eq(problems, "class count", reps.size(), std::size_t{10});
  std::vector<int> dims;
  for (const StrategyTree& tree : reps)
    dims.push_back(minimal_dimension(tree).dimension);
  std::sort(dims.begin(), dims.end());
  std::vector<int> want = {1, 2, 2, 2, 2, 2, 3, 3, 3, 3};
  if (dims != want) {
    problems << "dimension profile: got {";
    for (int d : dims) problems << d << " ";
    problems << "}; ";
  }
}

void check_larger_class_counts(std::ostringstream& problems) {
  {
    Scenario sc(2, 2, 3);
    OrbitReport report = count_re_classes(sc);
    expect_eq(problems, "2x2x3 formula", report.class_count, BigCount(2080));
    expect_eq(problems, "2x2x3 orbit closure",
              brute_force_class_count(sc, Relabelings::Full), BigCount(2080));
  }
  {
    Scenario sc(2, 3, 2);
    OrbitReport report = count_re_classes(sc);
    expect_eq(problems, "2x3x2 formula", report.class_count, BigCount(104));
    expect_eq(problems, "2x3x2 orbit closure",
              brute_force_class_count(sc, Relabelings::Full), BigCount(104));
    std::vector<std::pair<std::string, BigCount>> want = {
        {"invariant", BigCount(4)}, {"swap_total", BigCount(32)},
        {"cyclic_total", BigCount(8)}, {"swap", BigCount(28)},
        {"cyclic", BigCount(2)},    {"generic", BigCount(70)},
    };
    for (const auto& [name, value] : want) {
      bool found = false;
      for (const OrbitComponent& c : report.components)
        if (c.name == name) {
          found = true;
          if (c.value != value)
            problems << name << ": got " << to_decimal(c.value) << ", want "
                     << to_decimal(value) << "; ";
        }
      if (!found) problems << name << ": missing component; ";
    }
  }
}

void check_worst_case_memory(std::ostringstream& problems) {
  expect_eq(problems, "2x2x2 worst case",
            max_min_dimension(Scenario(2, 2, 2)).dimension, 3);
  expect_eq(problems, "2x3x2 worst case",
            max_min_dimension(Scenario(2, 3, 2)).dimension, 4);
}

void check_exact_replay(std::ostringstream& problems) {
  Scenario sc(2, 2, 2);
  for (std::uint64_t index = 0; index < 64; ++index) {
    StrategyTree tree = tree_from_index(sc, index);
    if (!(replay_exactly(tree) == tree_to_correlations(tree))) {
      problems << "tree " << index << " replays inexactly; ";
      return;
    }
  }
  StrategyTree worked = worked_example_tree();
  expect(problems, "three-setting worked example replays inexactly",
         replay_exactly(worked) == tree_to_correlations(worked));
}

void check_minimality_oracle(std::ostringstream& problems) {
  for (int length = 2; length <= 3; ++length) {
    Scenario sc(2, 2, length);
    std::uint64_t total = to_uint64(count_extreme_points(sc));
    for (std::uint64_t index = 0; index < total; ++index) {
      StrategyTree tree = tree_from_index(sc, index);
      int greedy = minimal_dimension(tree).dimension;
      int oracle = oracle::minimal_machine_states(tree);
      if (greedy != oracle) {
        problems << "L=" << length << " tree " << index << ": greedy "
                 << greedy << ", partition search " << oracle << "; ";
        return;
      }
    }
  }
}

void check_length_four_bounds(std::ostringstream& problems) {
  Scenario sc(2, 2, 4);
  BoundReport report = dimension_bounds(sc);
  expect_eq(problems, "max_j", report.max_j, 3);
  expect_eq(problems, "main bound", report.main_lower_bound, BigCount(4));
  expect_eq(problems, "improved_k", report.improved_k, 3);
  expect_eq(problems, "improved bound", report.improved_lower_bound,
            BigCount(7));
  expect(problems, "closed form not flagged",
         report.closed_form_consistent == false);
  expect(problems, "main witness too small",
         minimal_dimension(construct_witness_main(sc)).dimension >= 4);
  expect(problems, "improved witness too small",
         minimal_dimension(construct_witness_improved(sc)).dimension >= 7);
}

void check_composition_product_rule(std::ostringstream& problems) {
  BuiltinInequality b1 = builtin_inequality(1);
  std::vector<CompositionBlock> blocks = {
      {b1.inequality, b1.generator, b1.inequality.algebraic_bound}};
  ComposedResult composed =
      compose(blocks, uniform_plan(b1.inequality.scenario, 2));
  expect_eq(problems, "composed algebraic bound",
            composed.inequality.algebraic_bound, 16.0);
  expect_eq(problems, "composed product bound", composed.bound, 16.0);
  expect_eq(problems, "composed tree memory",
            minimal_dimension(composed.tree).dimension, 3);
  double replay_value =
      evaluate(composed.inequality, replay_exactly(composed.tree));
  expect_eq(problems, "synthesized machine value", replay_value, 16.0);

  // The block caps are the frozen machine maxima of the first witness; the
  // two-period composition must stay below their squares.
  const double caps[] = {2.0, 3.0};
  for (int states = 1; states <= 2; ++states) {
    double cap = caps[states - 1];
    expect_eq(problems, "block machine maximum",
              oracle::max_over_machines(b1.inequality, states), cap);
    double composed_max =
        oracle::max_over_machines(composed.inequality, states);
    if (composed_max > cap * cap + 1e-9)
      problems << states << "-state machines reach " << composed_max
               << " > " << cap * cap << "; ";
  }
}

void check_perturbation_bound(std::ostringstream& problems) {
  std::mt19937_64 rng(424242);
  std::uint64_t draws = 0;
  std::uint64_t violations = 0;
  for (double eps : {0.001, 0.01, 0.1})
    for (int length : {2, 3, 4})
      for (int dimension : {2, 3})
        for (int trial = 0; trial < 56; ++trial) {
          Scenario sc(2, 2, length);
          auto nominal = random_instrument_set(2, 2, dimension, 1, rng);
          auto alternative = random_instrument_set(2, 2, dimension, 1, rng);
          auto state = random_pure_state(dimension, rng);
          PerturbedInstruments p = perturb_convex(nominal, eps, alternative);
          RobustnessReport report = robustness_check(
              state, nominal, p.instruments, p.certified_eps, sc);
          violations += report.violations;
          ++draws;
        }
  expect(problems, "fewer than 1000 draws", draws >= 1000);
  if (violations != 0)
    problems << violations << " sequence probabilities moved beyond the "
             << "certified bound; ";
}

void check_lambert_accuracy(std::ostringstream& problems) {
  std::vector<double> grid = {-1.0 / std::exp(1.0) + 1e-6, -0.25, -1e-9};
  for (double t = -6.0; t <= 12.0; t += 0.5) grid.push_back(std::pow(10.0, t));
  for (double x : grid) {
    LambertResult r = lambert_w_principal(x);
    double budget = 1e-12 * std::max(1.0, std::abs(x));
    if (r.residual > budget) {
      problems << "residual " << r.residual << " at x=" << x << "; ";
      return;
    }
  }
  double e = std::exp(1.0);
  for (double t = 0.0; t <= 9.0; t += 0.5) {
    double x = std::min(e * std::pow(10.0, t), 1e9);
    if (hoorfar_lower(x) > lambert_w_principal(x).value + 1e-12) {
      problems << "logarithmic bound exceeds W at x=" << x << "; ";
      return;
    }
  }
}

}  // namespace

int main() {
  criterion("full-group class count, two settings, two steps",
            check_full_group_count_2x2x2);
  criterion("memory dimensions of the ten two-step classes",
            check_two_step_class_dimensions);
  criterion("closed-form class counts match orbit closure",
            check_larger_class_counts);
  criterion("worst-case memory over all extreme points",
            check_worst_case_memory);
  criterion("exact replay of synthesized machines", check_exact_replay);
  criterion("greedy minimality agrees with partition search",
            check_minimality_oracle);
  criterion("dimension bounds and witnesses at length four",
            check_length_four_bounds);
  criterion("composition product rule and machine ceilings",
            check_composition_product_rule);
  criterion("perturbation bound on random instrument sequences",
            check_perturbation_bound);
  criterion("Lambert accuracy and logarithmic lower bound",
            check_lambert_accuracy);
  if (failures != 0) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
