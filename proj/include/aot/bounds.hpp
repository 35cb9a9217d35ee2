#pragma once

// Lower bounds on the internal dimension needed for worst-case extreme
// points. The authoritative quantities come from exact integer/rational
// scans; the Lambert-W closed forms are diagnostics reported next to them.
//
// max_j_exact: largest j in [1, L] with S^(j-1) <= O^((S^(L-j+2)-S)/(S-1)),
// giving the bound S^(j-1) (that many pairwise-distinct depth-j futures fit).
// improved_k_exact: largest k with S^(k-1) <= D^e1 - D^e2 for D = O^S,
// e1 = (S^(L-k+1)-S)/(S-1), e2 = e1 - S (rational when e2 < 0), giving the
// bound (S^k-1)/(S-1) (every node down to level k is pairwise inequivalent).

#include "aot/bigint.hpp"
#include "aot/scenario.hpp"
#include "aot/strategy_tree.hpp"

namespace aot {

struct BoundReport {
  Scenario scenario;
  int max_j = 0;
  BigCount main_lower_bound;      // S^(j-1)
  int improved_k = 0;
  BigCount improved_lower_bound;  // (S^k-1)/(S-1)
  double closed_form_value = 0.0;
  double corrected_closed_form = 0.0;
  // True when floor(closed_form_value) agrees with max_j.
  bool closed_form_consistent = false;
};

// All bound routines require O >= 2, S >= 2, L >= 2 and throw
// unsupported_scenario_error otherwise.
int max_j_exact(int outcomes, int settings, int length);
int improved_k_exact(int outcomes, int settings, int length);

// A W-based closed-form estimate of max_j that overshoots the exact scan in
// some scenarios, and a corrected substitution
// (a' = S^(L+1) * log_S(O) / (S-1), offset +1) that tracks the scan.
double closed_form_j(int outcomes, int settings, int length);
double corrected_closed_form_j(int outcomes, int settings, int length);

BoundReport dimension_bounds(const Scenario& sc);

// Witness extreme points: all-zero prefix levels, then lexicographically
// first distinct subtree choices; minimal_dimension(witness) is at least the
// corresponding bound.
StrategyTree construct_witness_main(const Scenario& sc);
StrategyTree construct_witness_improved(const Scenario& sc);

}  // namespace aot
