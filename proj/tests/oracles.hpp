#pragma once

// Independent reference implementations used only by the tests. Each one
// re-derives a quantity through a different algorithm than the library so
// the two routes can be checked against each other.

#include <cstdint>
#include <functional>
#include <vector>

#include "aot/class_counting.hpp"
#include "aot/inequality.hpp"
#include "aot/strategy_tree.hpp"

namespace oracle {

// Smallest machine consistent with a strategy tree, found by enumerating set
// partitions of the tree nodes (restricted growth strings) and keeping those
// whose blocks agree on tuples and map children block-to-block. Exponential;
// refuses trees with more than 12 nodes.
int minimal_machine_states(const aot::StrategyTree& tree);

// Deterministic finite-state strategy, 0-based states.
struct DetMachine {
  int states = 1;
  int initial = 0;
  std::vector<std::vector<int>> output;  // [state][setting-1]
  std::vector<std::vector<int>> next;    // [state][setting-1]
};

std::vector<int> machine_outputs(const DetMachine& m,
                                 const std::vector<int>& inputs);

// Visits every machine with exactly `states` states, all initial states and
// all output/successor tables. Growth is explosive; keep states small.
void for_each_machine(int states, int settings, int outcomes,
                      const std::function<void(const DetMachine&)>& fn);

// Exact maximum of an inequality over all machines with exactly `states`
// states, by full enumeration; the reference for composed-bound soundness.
double max_over_machines(const aot::TemporalInequality& ineq, int states);

// Class count as the group average of fixed-tree counts, independent of the
// library's orbit closure and canonical forms.
aot::BigCount burnside_class_count(const aot::Scenario& sc,
                                   aot::Relabelings mode,
                                   aot::GroupVariant variant,
                                   std::uint64_t cap = 1000000);

// Principal branch of w e^w = x solved by bisection; x >= -1/e.
double lambert_w_bisect(double x);

}  // namespace oracle
