#pragma once

// Counting relabeling classes of strategy trees: closed-form counts for two
// outcomes, an explicit orbit-closure oracle, and canonical-form based
// enumeration of class representatives.

#include <cstdint>
#include <string>
#include <vector>

#include "aot/relabeling.hpp"

namespace aot {

struct OrbitComponent {
  std::string name;
  BigCount value;

  friend bool operator==(const OrbitComponent&,
                         const OrbitComponent&) = default;
};

struct OrbitReport {
  Scenario scenario;
  Relabelings mode = Relabelings::Full;
  GroupVariant variant = GroupVariant::PerSetting;
  BigCount class_count;
  // Closed-form breakdown by symmetry type where available (see README).
  std::vector<OrbitComponent> components;
  // Optionally filled for small scenarios: one canonical tree per class,
  // sorted by tree index.
  std::vector<StrategyTree> representatives;
};

// Classes under outcome relabelings only, closed form: (2^S)^(node_count-1).
// Two outcomes only; otherwise unsupported_scenario_error.
BigCount count_ore_classes(const Scenario& sc);

// Classes under the full relabeling group, closed form with breakdown.
// Two outcomes and at most three settings; otherwise
// unsupported_scenario_error.
OrbitReport count_re_classes(const Scenario& sc);

// Counts of outcome-classes invariant under setting permutations, the
// ingredients of the full-group count. Two outcomes, S in {2, 3}.
std::vector<OrbitComponent> invariant_component_counts(const Scenario& sc);

// Explicit orbit closure over the materialized group with a visited bitmap.
// Exact but exponential; refuses scenarios beyond the cap.
BigCount brute_force_class_count(const Scenario& sc, Relabelings mode,
                                 GroupVariant variant = GroupVariant::PerSetting,
                                 std::uint64_t cap = 10000000);

// Number of distinct canonical forms over all trees; parallel over the index
// space.
BigCount distinct_canonical_count(const Scenario& sc, Relabelings mode,
                                  GroupVariant variant = GroupVariant::PerSetting,
                                  std::uint64_t cap = 10000000,
                                  int threads = 0);

// The distinct canonical forms themselves, sorted by tree index.
std::vector<StrategyTree> class_representatives(
    const Scenario& sc, Relabelings mode,
    GroupVariant variant = GroupVariant::PerSetting,
    std::uint64_t cap = 10000000, int threads = 0);

}  // namespace aot
