#pragma once

// Persistent file formats: the "aott v1" strategy-tree text format, JSON
// documents for every object the command line reads or writes, and CSV rows
// for spreadsheet-bound listings. Exact counts travel as decimal strings so
// nothing truncates at 64 bits; every parser throws parse_error on malformed
// input; every writer emits output its parser maps back to an equal object.

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "aot/bounds.hpp"
#include "aot/channel_metrics.hpp"
#include "aot/class_counting.hpp"
#include "aot/correlation.hpp"
#include "aot/inequality.hpp"
#include "aot/instruments.hpp"
#include "aot/mindim.hpp"
#include "aot/realization.hpp"
#include "aot/strategy_tree.hpp"

namespace aot {

// "OxSxL", e.g. "2x2x2"; used in CSV cells and log lines.
std::string format_scenario(const Scenario& sc);

std::string mode_to_string(Relabelings mode);        // "RE" / "ORE"
Relabelings mode_from_string(const std::string& s);
std::string variant_to_string(GroupVariant variant);  // "per-setting" / "uniform"
GroupVariant variant_from_string(const std::string& s);

// The aott tree format itself lives with StrategyTree (write_aott and
// parse_aott in strategy_tree.hpp).

std::string realization_to_json(const Realization& r);
Realization realization_from_json(const std::string& text);

std::string inequality_to_json(const TemporalInequality& ineq);
TemporalInequality inequality_from_json(const std::string& text);

std::string table_to_json(const CorrelationTable& table);
CorrelationTable table_from_json(const std::string& text);

std::string orbit_report_to_json(const OrbitReport& report);
OrbitReport orbit_report_from_json(const std::string& text);

std::string bound_report_to_json(const BoundReport& report);
BoundReport bound_report_from_json(const std::string& text);

std::string plan_to_json(const CompositionPlan& plan);
CompositionPlan plan_from_json(const std::string& text);

std::string blocks_to_json(const std::vector<CompositionBlock>& blocks);
std::vector<CompositionBlock> blocks_from_json(const std::string& text);

std::string composed_to_json(const ComposedResult& composed);
ComposedResult composed_from_json(const std::string& text);

std::string instrument_set_to_json(
    const InstrumentSet<std::complex<double>>& set);
InstrumentSet<std::complex<double>> instrument_set_from_json(
    const std::string& text);

std::string state_to_json(const QuantumState<std::complex<double>>& state);
QuantumState<std::complex<double>> state_from_json(const std::string& text);

struct Enumeration {
  Scenario scenario;
  BigCount total;
  std::vector<StrategyTree> trees;  // possibly a truncated prefix of total
};

std::string enumeration_to_json(const Enumeration& e);
Enumeration enumeration_from_json(const std::string& text);

std::string aot_report_to_json(const AotReport& report);
std::string robustness_report_to_json(const RobustnessReport& report);

std::string assignment_to_json(const StateAssignment& assignment);

// Orbit report plus the optional brute-force cross-check, the `classify`
// output.
std::string classify_json(const OrbitReport& report, bool checked,
                          const BigCount& brute, bool match);

// Inequality value on a table with the caps it broke, the `evaluate` output.
std::string evaluation_to_json(double value, const TemporalInequality& ineq,
                               const std::vector<std::string>& violations);

// Aggregate of a seeded batch of robustness checks, the `robustness` output.
struct RobustnessRun {
  Scenario scenario;
  int dimension = 2;
  int from_step = 2;
  double eps = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::uint64_t violations = 0;
  double max_deviation = 0.0;
  double max_ratio = 0.0;
  RobustnessReport worst;  // the draw with the largest deviation
};

std::string robustness_run_to_json(const RobustnessRun& run);

// One (inputs, distribution over outputs) row, the `simulate` output.
std::string distribution_to_json(
    const std::vector<int>& inputs,
    const std::vector<std::pair<std::vector<int>, double>>& distribution);

// CSV emitters; header row first, locale-independent formatting.
std::string classify_csv(const OrbitReport& formula, const BigCount& brute,
                         bool match);
std::string enumeration_to_csv(const Enumeration& e);
std::string table_to_csv(const CorrelationTable& table);

}  // namespace aot
