#pragma once

// Temporal inequalities: linear functionals on correlation tables with one
// coefficient per (input sequence, output sequence) pair. Extreme points
// induce indicator inequalities whose algebraic bound S^L is reached exactly
// by their own correlations; inequalities over blocks of length L compose
// into length n*L inequalities with multiplicative dimension bounds.

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "aot/correlation.hpp"
#include "aot/strategy_tree.hpp"

namespace aot {

struct TemporalInequality {
  Scenario scenario;
  // (input code, output code) -> coefficient; zeros are never stored.
  std::map<std::pair<std::uint64_t, std::uint64_t>, double> terms;
  // Optional externally supplied caps, keyed by internal dimension.
  std::map<int, double> dimension_caps;
  double algebraic_bound = 0.0;  // sum of coefficients

  friend bool operator==(const TemporalInequality&,
                         const TemporalInequality&) = default;
};

void add_term(TemporalInequality& ineq, const std::vector<int>& inputs,
              const std::vector<int>& outputs, double coeff);

// Indicator inequality of a tree: coefficient 1 on the tree's own output
// sequence for every input sequence; algebraic bound S^L.
TemporalInequality from_extreme_point(const StrategyTree& tree);

struct BuiltinInequality {
  TemporalInequality inequality;
  StrategyTree generator;
};

// The four two-step two-setting witnesses and their generating extreme
// points; index 1..4.
BuiltinInequality builtin_inequality(int index);

double evaluate(const TemporalInequality& ineq, const CorrelationTable& table);
double evaluate(const TemporalInequality& ineq,
                const ExactCorrelationTable& table);

struct CompositionBlock {
  TemporalInequality inequality;
  StrategyTree tree;
  double bound = 0.0;  // dimension-restricted cap fed into the product rule
};

struct CompositionPlan {
  int block_length = 2;
  int periods = 1;
  // assignment[j][b] picks the block (0-based) grafted onto branch b of
  // period j+1; period j+1 has S^(j * block_length) branch slots.
  std::vector<std::vector<int>> assignment;
};

// Every branch of every period uses the same block.
CompositionPlan uniform_plan(const Scenario& block_scenario, int periods,
                             int block_index = 0);

struct ComposedResult {
  TemporalInequality inequality;
  StrategyTree tree;
  double bound = 0.0;  // product over periods of the max branch cap
};

// Grafts the assigned block tree onto every branch slot of every period,
// producing a length periods*L extreme point, its indicator inequality, and
// the product bound.
ComposedResult compose(const std::vector<CompositionBlock>& blocks,
                       const CompositionPlan& plan);

}  // namespace aot
