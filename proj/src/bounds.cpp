#include "aot/bounds.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "aot/lambert.hpp"

namespace aot {

namespace {

void require_bound_scenario(int outcomes, int settings, int length) {
  if (outcomes < 2 || settings < 2 || length < 2)
    throw unsupported_scenario_error(
        "dimension bounds need O >= 2, S >= 2, L >= 2, got O=" +
        std::to_string(outcomes) + " S=" + std::to_string(settings) +
        " L=" + std::to_string(length));
}

// (S^e - S) / (S - 1) as a machine integer; the geometric sum of
// S, S^2, ..., S^(e-1).
std::uint64_t geometric_tail(int settings, int e) {
  BigCount v = exact_div(big_pow(settings, static_cast<std::uint64_t>(e)) -
                             settings,
                         settings - 1);
  return to_uint64(v);
}

OutcomeTuple tuple_from_digit(const Scenario& sc, std::uint64_t digit) {
  OutcomeTuple t(static_cast<std::size_t>(sc.settings), 0);
  for (int s = sc.settings - 1; s >= 0; --s) {
    t[static_cast<std::size_t>(s)] =
        static_cast<int>(digit % static_cast<std::uint64_t>(sc.outcomes));
    digit /= static_cast<std::uint64_t>(sc.outcomes);
  }
  return t;
}

// Writes `value` in base D = O^S across the listed node offsets, most
// significant digit first.
void write_digits(StrategyTree& tree, const std::vector<std::uint64_t>& slots,
                  BigCount value) {
  BigCount base = big_pow(tree.scenario.outcomes,
                          static_cast<std::uint64_t>(tree.scenario.settings));
  for (std::size_t i = slots.size(); i-- > 0;) {
    std::uint64_t digit = to_uint64(value % base);
    value /= base;
    tree.nodes[slots[i]] = tuple_from_digit(tree.scenario, digit);
  }
  if (value != 0)
    throw std::logic_error("witness construction overflowed its subtree");
}

// Breadth-first offsets of the descendants of the level-`level` node at
// position `pos`, spanning relative depths from_depth..to_depth inclusive.
std::vector<std::uint64_t> subtree_slots(const Scenario& sc, int level,
                                         std::uint64_t pos, int from_depth,
                                         int to_depth) {
  std::vector<std::uint64_t> slots;
  std::uint64_t width = 1;
  for (int m = 0; m < from_depth; ++m)
    width *= static_cast<std::uint64_t>(sc.settings);
  for (int m = from_depth; m <= to_depth; ++m) {
    std::uint64_t first = (pos - 1) * width;
    std::uint64_t base = level_offset(sc, level + m);
    for (std::uint64_t i = 0; i < width; ++i) slots.push_back(base + first + i);
    width *= static_cast<std::uint64_t>(sc.settings);
  }
  return slots;
}

}  // namespace

int max_j_exact(int outcomes, int settings, int length) {
  require_bound_scenario(outcomes, settings, length);
  // S < 2^ceil and O >= 2, so the condition holds outright whenever the
  // right-hand exponent reaches ceil * (j - 1); materializing O^exponent is
  // then never needed for deep scenarios.
  std::uint64_t ceil_log_s =
      std::bit_width(static_cast<std::uint64_t>(settings));
  int best = 1;
  for (int j = 1; j <= length; ++j) {
    std::uint64_t exponent = geometric_tail(settings, length - j + 2);
    bool holds = exponent >= ceil_log_s * static_cast<std::uint64_t>(j - 1);
    if (!holds) {
      BigCount lhs = big_pow(settings, static_cast<std::uint64_t>(j - 1));
      holds = lhs <= big_pow(outcomes, exponent);
    }
    if (holds) best = j;
  }
  return best;
}

int improved_k_exact(int outcomes, int settings, int length) {
  require_bound_scenario(outcomes, settings, length);
  BigCount base = big_pow(outcomes, static_cast<std::uint64_t>(settings));
  // D^e1 - D^e2 >= D^(e1-1) >= 2^(floor * (e1-1)) because e2 <= e1 - 2, and
  // S^(k-1) < 2^(ceil * (k-1)); comparing those exponents settles deep cases
  // without materializing D^e1.
  std::uint64_t ceil_log_s =
      std::bit_width(static_cast<std::uint64_t>(settings));
  std::uint64_t floor_log_d = boost::multiprecision::msb(base);
  int best = 1;
  for (int k = 1; k <= length; ++k) {
    // e1 counts the body nodes of a depth-k subtree; e2 = e1 - S may be
    // negative, in which case the comparison is scaled by D^(-e2).
    std::int64_t e1 = static_cast<std::int64_t>(
        geometric_tail(settings, length - k + 1));
    std::int64_t e2 = e1 - settings;
    bool holds;
    if (e2 >= 0 && floor_log_d * static_cast<std::uint64_t>(e1 - 1) >=
                       ceil_log_s * static_cast<std::uint64_t>(k - 1)) {
      holds = true;
    } else if (e2 >= 0) {
      BigCount lhs = big_pow(settings, static_cast<std::uint64_t>(k - 1));
      holds = lhs <= big_pow(base, static_cast<std::uint64_t>(e1)) -
                         big_pow(base, static_cast<std::uint64_t>(e2));
    } else {
      BigCount lhs = big_pow(settings, static_cast<std::uint64_t>(k - 1));
      holds = lhs * big_pow(base, static_cast<std::uint64_t>(-e2)) <=
              big_pow(base, static_cast<std::uint64_t>(e1 - e2)) - 1;
    }
    if (holds) best = k;
  }
  return best;
}

double closed_form_j(int outcomes, int settings, int length) {
  require_bound_scenario(outcomes, settings, length);
  double s = settings;
  double log_s_o = std::log(static_cast<double>(outcomes)) / std::log(s);
  double ln_s = std::log(s);
  double shift = s * log_s_o / (s - 1.0);
  double a = std::pow(s, length) * log_s_o / (s - 1.0);
  double w = lambert_w_principal(a * std::pow(s, shift) * ln_s).value;
  return w / ln_s - shift + 2.0;
}

double corrected_closed_form_j(int outcomes, int settings, int length) {
  require_bound_scenario(outcomes, settings, length);
  double s = settings;
  double log_s_o = std::log(static_cast<double>(outcomes)) / std::log(s);
  double ln_s = std::log(s);
  double shift = s * log_s_o / (s - 1.0);
  double a = std::pow(s, length + 1) * log_s_o / (s - 1.0);
  double w = lambert_w_principal(a * std::pow(s, shift) * ln_s).value;
  return w / ln_s - shift + 1.0;
}

BoundReport dimension_bounds(const Scenario& sc) {
  require_bound_scenario(sc.outcomes, sc.settings, sc.length);
  BoundReport r;
  r.scenario = sc;
  r.max_j = max_j_exact(sc.outcomes, sc.settings, sc.length);
  r.main_lower_bound =
      big_pow(sc.settings, static_cast<std::uint64_t>(r.max_j - 1));
  r.improved_k = improved_k_exact(sc.outcomes, sc.settings, sc.length);
  r.improved_lower_bound = exact_div(
      big_pow(sc.settings, static_cast<std::uint64_t>(r.improved_k)) - 1,
      sc.settings - 1);
  r.closed_form_value = closed_form_j(sc.outcomes, sc.settings, sc.length);
  r.corrected_closed_form =
      corrected_closed_form_j(sc.outcomes, sc.settings, sc.length);
  r.closed_form_consistent =
      static_cast<int>(std::floor(r.closed_form_value)) == r.max_j;
  return r;
}

StrategyTree construct_witness_main(const Scenario& sc) {
  require_bound_scenario(sc.outcomes, sc.settings, sc.length);
  int j = max_j_exact(sc.outcomes, sc.settings, sc.length);
  StrategyTree tree = all_zero_tree(sc);
  std::uint64_t roots = level_node_count(sc, j);
  for (std::uint64_t p = 0; p < roots; ++p) {
    // Depth-j subtree number p becomes the tree with index p, so the S^(j-1)
    // futures are the lexicographically first distinct ones.
    std::vector<std::uint64_t> slots =
        subtree_slots(sc, j, p + 1, 0, sc.length - j);
    write_digits(tree, slots, BigCount(p));
  }
  validate_tree(tree);
  return tree;
}

StrategyTree construct_witness_improved(const Scenario& sc) {
  require_bound_scenario(sc.outcomes, sc.settings, sc.length);
  int k = improved_k_exact(sc.outcomes, sc.settings, sc.length);
  StrategyTree tree = all_zero_tree(sc);
  BigCount base = big_pow(sc.outcomes, static_cast<std::uint64_t>(sc.settings));
  std::uint64_t body_nodes = geometric_tail(sc.settings, sc.length - k + 1);
  BigCount rest_count = big_pow(
      base, static_cast<std::uint64_t>(body_nodes) -
                static_cast<std::uint64_t>(sc.settings));
  std::uint64_t roots = level_node_count(sc, k);
  for (std::uint64_t p = 0; p < roots; ++p) {
    // Body p splits into a nonzero first sub-level (value 1 + p / rest_count)
    // and an arbitrary remainder, keeping all bodies distinct while every
    // subtree root stays all-zero.
    BigCount v = 1 + BigCount(p) / rest_count;
    BigCount rest = BigCount(p) % rest_count;
    write_digits(tree, subtree_slots(sc, k, p + 1, 1, 1), v);
    if (body_nodes > static_cast<std::uint64_t>(sc.settings))
      write_digits(tree, subtree_slots(sc, k, p + 1, 2, sc.length - k), rest);
  }
  validate_tree(tree);
  return tree;
}

}  // namespace aot
