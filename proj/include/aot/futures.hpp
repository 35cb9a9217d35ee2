#pragma once

// Node futures: the subtree of outcome tuples hanging below a node, the
// truncation relation between futures of different horizons, and the
// equivalence "equal up to the shorter horizon".

#include <cstdint>
#include <vector>

#include "aot/strategy_tree.hpp"

namespace aot {

struct Future {
  int settings = 1;
  int horizon = 0;  // levels below the defining node; 0 means a single tuple
  // Breadth-first over the subtree: 1 + S + ... + S^horizon tuples.
  std::vector<OutcomeTuple> tuples;

  friend bool operator==(const Future&, const Future&) = default;
};

std::uint64_t future_node_count(int settings, int horizon);

Future future_of(const StrategyTree& tree, const NodeId& id);

// Keeps the first `horizon` levels below the top tuple; horizon must not
// exceed the future's own.
Future truncate_future(const Future& f, int horizon);

// Equal after truncating both to the shorter horizon. Futures from different
// setting counts cannot be compared (structural_error).
bool futures_equivalent(const Future& a, const Future& b);

void validate_future(const Future& f);

}  // namespace aot
