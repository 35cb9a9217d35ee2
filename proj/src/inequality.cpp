#include "aot/inequality.hpp"

#include <algorithm>
#include <string>

namespace aot {

void add_term(TemporalInequality& ineq, const std::vector<int>& inputs,
              const std::vector<int>& outputs, double coeff) {
  std::uint64_t ix = encode_inputs(ineq.scenario, inputs);
  std::uint64_t oa = encode_outputs(ineq.scenario, outputs);
  auto key = std::make_pair(ix, oa);
  auto it = ineq.terms.find(key);
  double value = (it == ineq.terms.end() ? 0.0 : it->second) + coeff;
  if (value == 0.0) {
    if (it != ineq.terms.end()) ineq.terms.erase(it);
  } else {
    ineq.terms[key] = value;
  }
  ineq.algebraic_bound += coeff;
}

TemporalInequality from_extreme_point(const StrategyTree& tree) {
  validate_tree(tree);
  TemporalInequality ineq;
  ineq.scenario = tree.scenario;
  for (std::uint64_t ix = 0; ix < input_space_size(tree.scenario); ++ix) {
    std::vector<int> xs = decode_inputs(tree.scenario, ix);
    add_term(ineq, xs, tree_outputs(tree, xs), 1.0);
  }
  return ineq;
}

BuiltinInequality builtin_inequality(int index) {
  static const std::vector<std::vector<OutcomeTuple>> generators = {
      {{0, 0}, {0, 1}, {1, 0}},
      {{0, 0}, {1, 0}, {0, 1}},
      {{0, 0}, {1, 1}, {1, 0}},
      {{0, 0}, {1, 1}, {0, 1}}};
  if (index < 1 || index > 4)
    throw structural_error("builtin inequality index must be 1..4, got " +
                           std::to_string(index));
  BuiltinInequality b;
  b.generator.scenario = Scenario(2, 2, 2);
  b.generator.nodes = generators[static_cast<std::size_t>(index - 1)];
  b.inequality = from_extreme_point(b.generator);
  return b;
}

namespace {

template <class P>
double evaluate_table(const TemporalInequality& ineq,
                      const BasicCorrelationTable<P>& table) {
  if (ineq.scenario != table.scenario)
    throw structural_error("inequality and table scenarios differ");
  double value = 0.0;
  for (const auto& [key, coeff] : ineq.terms) {
    P p = get_probability(table, key.first, key.second);
    value += coeff * detail::ProbOps<P>::to_double(p);
  }
  return value;
}

}  // namespace

double evaluate(const TemporalInequality& ineq, const CorrelationTable& table) {
  return evaluate_table(ineq, table);
}

double evaluate(const TemporalInequality& ineq,
                const ExactCorrelationTable& table) {
  return evaluate_table(ineq, table);
}

CompositionPlan uniform_plan(const Scenario& block_scenario, int periods,
                             int block_index) {
  if (periods < 1) throw structural_error("composition needs periods >= 1");
  CompositionPlan plan;
  plan.block_length = block_scenario.length;
  plan.periods = periods;
  std::uint64_t slots = 1;
  std::uint64_t per_period = 1;
  for (int m = 0; m < block_scenario.length; ++m)
    per_period *= static_cast<std::uint64_t>(block_scenario.settings);
  for (int j = 0; j < periods; ++j) {
    plan.assignment.emplace_back(slots, block_index);
    slots *= per_period;
  }
  return plan;
}

ComposedResult compose(const std::vector<CompositionBlock>& blocks,
                       const CompositionPlan& plan) {
  if (blocks.empty()) throw structural_error("composition needs blocks");
  const Scenario& bsc = blocks.front().tree.scenario;
  for (const auto& block : blocks) {
    validate_tree(block.tree);
    if (block.tree.scenario != bsc ||
        block.inequality.scenario != bsc)
      throw structural_error("composition blocks must share one scenario");
  }
  if (plan.block_length != bsc.length)
    throw structural_error("plan block length does not match the blocks");
  if (plan.periods < 1 ||
      plan.assignment.size() != static_cast<std::size_t>(plan.periods))
    throw structural_error("composition plan is incomplete");

  Scenario composed_sc(bsc.outcomes, bsc.settings, bsc.length * plan.periods);
  std::uint64_t slots = 1;
  std::uint64_t per_period = level_node_count(bsc, bsc.length) *
                             static_cast<std::uint64_t>(bsc.settings);
  for (int j = 0; j < plan.periods; ++j) {
    const auto& row = plan.assignment[static_cast<std::size_t>(j)];
    if (row.size() != slots)
      throw structural_error("period " + std::to_string(j + 1) + " needs " +
                             std::to_string(slots) + " branch assignments");
    for (int idx : row)
      if (idx < 0 || idx >= static_cast<int>(blocks.size()))
        throw structural_error("composition plan references a missing block");
    slots *= per_period;
  }

  ComposedResult result;
  result.tree.scenario = composed_sc;
  result.tree.nodes.resize(node_count(composed_sc));
  for (std::uint64_t n = 0; n < node_count(composed_sc); ++n) {
    NodeId id = node_at_offset(composed_sc, n);
    int j = (id.level - 1) / bsc.length;        // period, 0-based
    int m = (id.level - 1) % bsc.length + 1;    // level inside the block
    std::uint64_t within = level_node_count(bsc, m);
    std::uint64_t branch = (id.position - 1) / within;
    std::uint64_t inner = (id.position - 1) % within + 1;
    const StrategyTree& block =
        blocks[static_cast<std::size_t>(
                   plan.assignment[static_cast<std::size_t>(j)]
                                  [static_cast<std::size_t>(branch)])]
            .tree;
    result.tree.nodes[n] = block.tuple_at(NodeId{m, inner});
  }
  validate_tree(result.tree);

  result.bound = 1.0;
  for (int j = 0; j < plan.periods; ++j) {
    double period_max = 0.0;
    for (int idx : plan.assignment[static_cast<std::size_t>(j)])
      period_max = std::max(period_max,
                            blocks[static_cast<std::size_t>(idx)].bound);
    result.bound *= period_max;
  }
  result.inequality = from_extreme_point(result.tree);
  return result;
}

}  // namespace aot
