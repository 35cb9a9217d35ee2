#pragma once

// Deterministic strategy trees: one outcome tuple per node, breadth-first
// storage, and the mixed-radix index that enumerates all trees of a scenario.
//
// A tuple lists the outcome produced for each setting at that node. The tree
// index treats each node's tuple as one digit in base O^S (root is the most
// significant digit, setting 1 the most significant position within a digit),
// so index 0 is the all-zero tree and index order is lexicographic order on
// the breadth-first tuple sequence.

#include <cstdint>
#include <string>
#include <vector>

#include "aot/bigint.hpp"
#include "aot/scenario.hpp"

namespace aot {

// One outcome per setting; entry x-1 answers setting x.
using OutcomeTuple = std::vector<int>;

inline int outcome_at(const OutcomeTuple& t, int setting) {
  return t[static_cast<std::size_t>(setting - 1)];
}

struct StrategyTree {
  Scenario scenario;
  std::vector<OutcomeTuple> nodes;  // breadth-first, nodes[node_offset(id)]

  const OutcomeTuple& tuple_at(const NodeId& id) const {
    return nodes[node_offset(scenario, id)];
  }
  OutcomeTuple& tuple_at(const NodeId& id) {
    return nodes[node_offset(scenario, id)];
  }

  friend bool operator==(const StrategyTree&, const StrategyTree&) = default;
};

StrategyTree all_zero_tree(const Scenario& sc);

// Throws structural_error if node count, tuple arity, or outcome ranges are
// inconsistent with the scenario.
void validate_tree(const StrategyTree& tree);

// Mixed-radix codec between trees and indices in [0, count_extreme_points).
// Out-of-range indices throw std::out_of_range.
StrategyTree tree_from_index(const Scenario& sc, const BigCount& index);
BigCount tree_index(const StrategyTree& tree);

// Deterministic outputs along an input sequence (settings, 1-based), walking
// from the root; the sequence may be shorter than the tree depth.
std::vector<int> tree_outputs(const StrategyTree& tree,
                              const std::vector<int>& inputs);

// Lexicographic comparison of the breadth-first tuple sequences; total order
// matching tree_index order. Returns <0, 0, >0.
int compare_trees(const StrategyTree& a, const StrategyTree& b);

// Text format, version 1:
//   aott 1
//   O=<int> S=<int> L=<int>
//   <l>,<k>: z_1 z_2 ... z_S     (one line per node, breadth-first)
std::string write_aott(const StrategyTree& tree);
StrategyTree parse_aott(const std::string& text);

}  // namespace aot
