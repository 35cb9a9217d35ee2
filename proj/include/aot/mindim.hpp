#pragma once

// Minimal internal memory of a strategy tree: the smallest number of states
// a deterministic machine needs to walk the tree, computed by merging nodes
// whose futures agree up to the shorter horizon.

#include <cstdint>
#include <vector>

#include "aot/bigint.hpp"
#include "aot/futures.hpp"
#include "aot/strategy_tree.hpp"

namespace aot {

// Breadth-first pass: each node reuses the lowest-index state whose behavior
// truncates to the node's future, or opens a new state defined by that node.
struct StateAssignment {
  int dimension = 0;
  std::vector<int> state_of_node;            // per node offset, states 1-based
  std::vector<std::uint64_t> defining_node;  // per state, node offset
};

StateAssignment minimal_dimension(const StrategyTree& tree);

struct MaxMindimResult {
  int dimension = 0;
  BigCount witness_index;  // smallest tree index attaining the maximum
};

// Maximum of minimal_dimension over every tree of the scenario; refuses
// scenarios with more than `cap` trees.
MaxMindimResult max_min_dimension(const Scenario& sc,
                                  std::uint64_t cap = 10000000,
                                  int threads = 0);

}  // namespace aot
