#pragma once

// Measurement scenario parameters and the breadth-first indexing of strategy
// tree nodes.
//
// Conventions used throughout the library: settings are labeled 1..S,
// outcomes 0..O-1, levels 1..L. Node (l, k) has level l and position
// k in 1..S^(l-1); its child along setting x is (l+1, (k-1)*S + x).

#include <cstdint>

#include "aot/bigint.hpp"
#include "aot/errors.hpp"

namespace aot {

struct Scenario {
  int outcomes = 2;
  int settings = 2;
  int length = 2;

  Scenario() = default;
  Scenario(int num_outcomes, int num_settings, int sequence_length);

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

struct NodeId {
  int level = 1;
  std::uint64_t position = 1;

  friend bool operator==(const NodeId&, const NodeId&) = default;
};

// (S^L - 1)/(S - 1) nodes in the full tree; equals L when S = 1. Throws
// resource_error if the count does not fit in 64 bits.
std::uint64_t node_count(const Scenario& sc);

// Nodes at a given level: S^(level-1).
std::uint64_t level_node_count(const Scenario& sc, int level);

// Breadth-first offset of the first node at a level.
std::uint64_t level_offset(const Scenario& sc, int level);

// Zero-based breadth-first offset of a node, and its inverse.
std::uint64_t node_offset(const Scenario& sc, const NodeId& id);
NodeId node_at_offset(const Scenario& sc, std::uint64_t offset);

NodeId child_of(const Scenario& sc, const NodeId& id, int setting);
NodeId parent_of(const Scenario& sc, const NodeId& id);
bool is_leaf(const Scenario& sc, const NodeId& id);

void validate_node(const Scenario& sc, const NodeId& id);
void validate_setting(const Scenario& sc, int setting);
void validate_outcome(const Scenario& sc, int outcome);

// Number of deterministic strategies, (O^S)^node_count, exactly. Throws
// resource_error when the result would be astronomically large (beyond
// roughly 2^26 bits).
BigCount count_extreme_points(const Scenario& sc);

}  // namespace aot
