#pragma once

// Explicit minimal-dimension realization of a strategy tree: a classical
// machine on basis states written as a quantum instrument. POVM elements are
// diagonal 0/1 matrices given by their diagonals; each Kraus operator is a
// single-entry matrix |next><state| attached to the produced output.
//
// States are 1-based (matching the node-to-state assignment); Kraus row and
// col are 0-based matrix indices.

#include <vector>

#include "aot/mindim.hpp"
#include "aot/scenario.hpp"

namespace aot {

struct RealizationTransition {
  int state = 1;
  int setting = 1;
  int output = 0;
  int next = 1;

  friend bool operator==(const RealizationTransition&,
                         const RealizationTransition&) = default;
};

struct KrausEntry {
  int setting = 1;
  int output = 0;
  int state = 1;  // branch label j: which state this operator carries
  int row = 0;
  int col = 0;

  friend bool operator==(const KrausEntry&, const KrausEntry&) = default;
};

struct PovmEntry {
  int setting = 1;
  int output = 0;
  std::vector<int> diag;

  friend bool operator==(const PovmEntry&, const PovmEntry&) = default;
};

struct Realization {
  Scenario scenario;  // outcomes/settings of each step; length of the source
  int dimension = 1;
  int initial = 1;
  std::vector<RealizationTransition> transitions;  // one per (state, setting)
  std::vector<KrausEntry> kraus;                   // one per (state, setting)
  std::vector<PovmEntry> povm;                     // one per (setting, output)

  friend bool operator==(const Realization&, const Realization&) = default;
};

// Builds the machine over the tree's state assignment; terminal states
// self-loop.
Realization synthesize_realization(const StrategyTree& tree);
Realization realization_from_assignment(const StrategyTree& tree,
                                        const StateAssignment& assignment);

// Integer-exact structural checks: complete transition table, POVM
// completeness per setting, and trace preservation of each setting's Kraus
// family. Throws structural_error on any failure.
void validate_realization(const Realization& r);

// Deterministic outputs of the machine along an input sequence.
std::vector<int> realization_outputs(const Realization& r,
                                     const std::vector<int>& inputs);

}  // namespace aot
