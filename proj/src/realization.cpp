#include "aot/realization.hpp"

#include <string>

namespace aot {

Realization realization_from_assignment(const StrategyTree& tree,
                                        const StateAssignment& assignment) {
  validate_tree(tree);
  const Scenario& sc = tree.scenario;
  if (assignment.state_of_node.size() != node_count(sc))
    throw structural_error("state assignment does not cover the tree");

  Realization r;
  r.scenario = sc;
  r.dimension = assignment.dimension;
  r.initial = assignment.state_of_node[0];

  for (int state = 1; state <= r.dimension; ++state) {
    std::uint64_t def =
        assignment.defining_node[static_cast<std::size_t>(state - 1)];
    NodeId id = node_at_offset(sc, def);
    const OutcomeTuple& t = tree.nodes[def];
    for (int x = 1; x <= sc.settings; ++x) {
      int output = outcome_at(t, x);
      int next = state;  // terminal states keep looping on themselves
      if (id.level < sc.length)
        next = assignment.state_of_node[node_offset(sc, child_of(sc, id, x))];
      r.transitions.push_back({state, x, output, next});
      r.kraus.push_back({x, output, state, next - 1, state - 1});
    }
  }

  for (int x = 1; x <= sc.settings; ++x) {
    for (int a = 0; a < sc.outcomes; ++a) {
      PovmEntry e;
      e.setting = x;
      e.output = a;
      e.diag.assign(static_cast<std::size_t>(r.dimension), 0);
      for (const auto& tr : r.transitions)
        if (tr.setting == x && tr.output == a)
          e.diag[static_cast<std::size_t>(tr.state - 1)] = 1;
      r.povm.push_back(std::move(e));
    }
  }
  return r;
}

Realization synthesize_realization(const StrategyTree& tree) {
  return realization_from_assignment(tree, minimal_dimension(tree));
}

void validate_realization(const Realization& r) {
  const Scenario& sc = r.scenario;
  Scenario(sc.outcomes, sc.settings, sc.length);
  if (r.dimension < 1)
    throw structural_error("realization dimension must be >= 1");
  if (r.initial < 1 || r.initial > r.dimension)
    throw structural_error("realization initial state out of range");

  std::size_t d = static_cast<std::size_t>(r.dimension);
  std::size_t slots = d * static_cast<std::size_t>(sc.settings);
  if (r.transitions.size() != slots)
    throw structural_error("realization needs one transition per (state, setting)");

  // seen[(state-1)*S + (setting-1)] guards completeness of the table.
  std::vector<bool> seen(slots, false);
  for (const auto& tr : r.transitions) {
    if (tr.state < 1 || tr.state > r.dimension)
      throw structural_error("transition state out of range");
    validate_setting(sc, tr.setting);
    validate_outcome(sc, tr.output);
    if (tr.next < 1 || tr.next > r.dimension)
      throw structural_error("transition successor out of range");
    std::size_t slot = static_cast<std::size_t>(tr.state - 1) *
                           static_cast<std::size_t>(sc.settings) +
                       static_cast<std::size_t>(tr.setting - 1);
    if (seen[slot])
      throw structural_error("duplicate transition for (state, setting)");
    seen[slot] = true;
  }

  if (r.kraus.size() != slots)
    throw structural_error("realization needs one Kraus entry per (state, setting)");
  // Per setting, every state must appear exactly once as a column: the sum
  // sum_j K^dagger K then equals the identity exactly.
  std::vector<bool> col_seen(slots, false);
  for (const auto& k : r.kraus) {
    validate_setting(sc, k.setting);
    validate_outcome(sc, k.output);
    if (k.state < 1 || k.state > r.dimension)
      throw structural_error("Kraus entry state out of range");
    if (k.row < 0 || k.row >= r.dimension || k.col < 0 || k.col >= r.dimension)
      throw structural_error("Kraus entry indices out of range");
    if (k.col != k.state - 1)
      throw structural_error("Kraus entry column must equal its state");
    std::size_t slot = static_cast<std::size_t>(k.setting - 1) * d +
                       static_cast<std::size_t>(k.col);
    if (col_seen[slot])
      throw structural_error("setting " + std::to_string(k.setting) +
                             " maps state " + std::to_string(k.state) +
                             " through two Kraus operators");
    col_seen[slot] = true;
  }
  for (bool b : col_seen)
    if (!b)
      throw structural_error("Kraus family does not preserve the trace");

  // Kraus entries must mirror the transition table.
  for (const auto& tr : r.transitions) {
    bool found = false;
    for (const auto& k : r.kraus) {
      if (k.setting == tr.setting && k.state == tr.state) {
        if (k.output != tr.output || k.row != tr.next - 1)
          throw structural_error("Kraus entry disagrees with transition table");
        found = true;
        break;
      }
    }
    if (!found)
      throw structural_error("transition without a Kraus entry");
  }

  // POVM: diagonal 0/1 elements summing to the identity per setting.
  if (r.povm.size() != static_cast<std::size_t>(sc.settings) *
                           static_cast<std::size_t>(sc.outcomes))
    throw structural_error("realization needs one POVM entry per (setting, output)");
  std::vector<int> diag_sum(static_cast<std::size_t>(sc.settings) * d, 0);
  for (const auto& e : r.povm) {
    validate_setting(sc, e.setting);
    validate_outcome(sc, e.output);
    if (e.diag.size() != d)
      throw structural_error("POVM diagonal has wrong dimension");
    for (std::size_t j = 0; j < d; ++j) {
      if (e.diag[j] != 0 && e.diag[j] != 1)
        throw structural_error("POVM diagonal entries must be 0 or 1");
      diag_sum[static_cast<std::size_t>(e.setting - 1) * d + j] += e.diag[j];
    }
  }
  for (int v : diag_sum)
    if (v != 1)
      throw structural_error("POVM elements do not sum to the identity");

  // POVM must match the outputs the transition table produces.
  for (const auto& tr : r.transitions) {
    for (const auto& e : r.povm) {
      if (e.setting != tr.setting) continue;
      int expected = e.output == tr.output ? 1 : 0;
      if (e.diag[static_cast<std::size_t>(tr.state - 1)] != expected)
        throw structural_error("POVM element disagrees with transition outputs");
    }
  }
}

std::vector<int> realization_outputs(const Realization& r,
                                     const std::vector<int>& inputs) {
  const Scenario& sc = r.scenario;
  // next_of[(state-1)*S + setting-1], output_of likewise.
  std::size_t d = static_cast<std::size_t>(r.dimension);
  std::vector<int> next_of(d * static_cast<std::size_t>(sc.settings), 0);
  std::vector<int> output_of(d * static_cast<std::size_t>(sc.settings), 0);
  for (const auto& tr : r.transitions) {
    std::size_t slot = static_cast<std::size_t>(tr.state - 1) *
                           static_cast<std::size_t>(sc.settings) +
                       static_cast<std::size_t>(tr.setting - 1);
    next_of[slot] = tr.next;
    output_of[slot] = tr.output;
  }
  std::vector<int> outputs;
  outputs.reserve(inputs.size());
  int state = r.initial;
  for (int x : inputs) {
    validate_setting(sc, x);
    std::size_t slot = static_cast<std::size_t>(state - 1) *
                           static_cast<std::size_t>(sc.settings) +
                       static_cast<std::size_t>(x - 1);
    outputs.push_back(output_of[slot]);
    state = next_of[slot];
  }
  return outputs;
}

}  // namespace aot
