#pragma once

// Relabeling symmetries of strategy trees: a setting permutation combined
// with outcome permutations, acting on trees by rerouting branches and
// renaming outcomes.
//
// Convention: settings are permuted first, then outcome permutations apply,
// indexed by the new setting labels. For element g = (pi, tau) the relabeled
// tree T' = g*T satisfies, at corresponding nodes,
//   T'[x] = tau_x(T[pi^-1(x)])
// and the branch of T' along x continues inside the branch of T along
// pi^-1(x).

#include <cstdint>
#include <vector>

#include "aot/bigint.hpp"
#include "aot/strategy_tree.hpp"

namespace aot {

struct RelabelingElement {
  // Image form, 1-based: setting x is renamed to setting_perm[x-1].
  std::vector<int> setting_perm;
  // outcome_perms[x-1][z] is the new name of outcome z on new setting x.
  std::vector<std::vector<int>> outcome_perms;

  friend bool operator==(const RelabelingElement&,
                         const RelabelingElement&) = default;
};

// Which relabelings generate the equivalence.
enum class Relabelings {
  Outcomes,  // outcome permutations only, settings fixed
  Full       // setting permutations and outcome permutations
};

// Whether each setting carries its own outcome permutation or all settings
// share one.
enum class GroupVariant { PerSetting, Uniform };

RelabelingElement identity_element(int outcomes, int settings);
void validate_element(const RelabelingElement& g, int outcomes, int settings);

// compose(a, b) applies b first, then a.
RelabelingElement compose(const RelabelingElement& a,
                          const RelabelingElement& b);
RelabelingElement inverse(const RelabelingElement& g);

StrategyTree apply_relabeling(const RelabelingElement& g,
                              const StrategyTree& tree);

BigCount group_order(int outcomes, int settings, Relabelings mode,
                     GroupVariant variant = GroupVariant::PerSetting);

// Materializes the whole group; throws resource_error above the cap.
std::vector<RelabelingElement> all_relabelings(
    int outcomes, int settings, Relabelings mode,
    GroupVariant variant = GroupVariant::PerSetting,
    std::uint64_t cap = 1000000);

// Lexicographically smallest tree in the orbit (breadth-first tuple order,
// equivalently smallest tree index).
StrategyTree canonical_form(const StrategyTree& tree, Relabelings mode,
                            GroupVariant variant = GroupVariant::PerSetting);

}  // namespace aot
