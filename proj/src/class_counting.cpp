#include "aot/class_counting.hpp"

#include <algorithm>
#include <mutex>

#include "aot/parallel.hpp"

namespace aot {

namespace {

void require_two_outcomes(const Scenario& sc, const char* what) {
  if (sc.outcomes != 2)
    throw unsupported_scenario_error(
        std::string(what) + " is only available for two outcomes, got " +
        std::to_string(sc.outcomes));
}

// Exponent products for the three-setting breakdown. All counts are products
// of powers of two; exponents never leave 64 bits for any scenario whose
// trees are representable at all.
BigCount pow2(std::uint64_t e) { return big_pow(BigCount(2), e); }

std::uint64_t pow_u64(std::uint64_t base, int exp) {
  std::uint64_t r = 1;
  for (int i = 0; i < exp; ++i) {
    if (base != 0 && r > UINT64_MAX / base)
      throw resource_error("exponent arithmetic overflows 64 bits");
    r *= base;
  }
  return r;
}

}  // namespace

BigCount count_ore_classes(const Scenario& sc) {
  require_two_outcomes(sc, "outcome-class count");
  std::uint64_t free_nodes = node_count(sc) - 1;
  return big_pow(BigCount(pow_u64(2, sc.settings)), free_nodes);
}

std::vector<OrbitComponent> invariant_component_counts(const Scenario& sc) {
  require_two_outcomes(sc, "invariant component count");
  std::vector<OrbitComponent> components;
  if (sc.settings == 2) {
    // Classes whose canonical form is unchanged by swapping the settings:
    // one free choice per swap-symmetric node pair, 4^(2^(L-1) - 1).
    std::uint64_t e = pow_u64(2, sc.length - 1) - 1;
    components.push_back({"invariant", big_pow(BigCount(4), e)});
    return components;
  }
  if (sc.settings != 3)
    throw unsupported_scenario_error(
        "invariant component count needs 2 or 3 settings, got " +
        std::to_string(sc.settings));

  // Per-level ingredient: number of distinct branch-orbits at depth m under
  // the cyclic rotation, q_m = (1 + 3^(m-1))/2.
  BigCount n_invariant = 1, swap_total = 1, cyclic_total = 1;
  for (int m = 2; m <= sc.length; ++m) {
    std::uint64_t three = pow_u64(3, m - 1);
    std::uint64_t q_m = (1 + three) / 2;
    if ((1 + three) % 2 != 0)
      throw std::logic_error("cyclic orbit count must be an integer");
    components.push_back({"q_" + std::to_string(m), BigCount(q_m)});
    n_invariant *= pow2(q_m);
    swap_total *= pow2(3 * (three - 1) / 2 + 2);
    cyclic_total *= pow2(three);
  }
  components.push_back({"invariant", n_invariant});
  components.push_back({"swap_total", swap_total});
  components.push_back({"cyclic_total", cyclic_total});
  return components;
}

namespace {

const BigCount& find_component(const std::vector<OrbitComponent>& components,
                               const std::string& name) {
  for (const auto& c : components)
    if (c.name == name) return c.value;
  throw std::logic_error("missing orbit component " + name);
}

}  // namespace

OrbitReport count_re_classes(const Scenario& sc) {
  require_two_outcomes(sc, "full-class count");
  OrbitReport report;
  report.scenario = sc;
  report.mode = Relabelings::Full;
  report.variant = GroupVariant::PerSetting;

  BigCount n_outcome_classes = count_ore_classes(sc);
  if (sc.settings == 1) {
    report.class_count = n_outcome_classes;
    return report;
  }
  if (sc.settings == 2) {
    std::vector<OrbitComponent> inv = invariant_component_counts(sc);
    const BigCount& n_invariant = find_component(inv, "invariant");
    // Orbits under the two-element setting group: invariant classes sit in
    // singleton orbits, the rest pair up.
    BigCount n_generic = exact_div(n_outcome_classes - n_invariant, 2);
    report.class_count = n_invariant + n_generic;
    report.components = {{"invariant", n_invariant}, {"generic", n_generic}};
    return report;
  }
  if (sc.settings == 3) {
    std::vector<OrbitComponent> inv = invariant_component_counts(sc);
    const BigCount& n_invariant = find_component(inv, "invariant");
    const BigCount& swap_total = find_component(inv, "swap_total");
    const BigCount& cyclic_total = find_component(inv, "cyclic_total");
    // Stabilizer census over the six setting permutations: fully invariant
    // classes, classes fixed by one transposition only, classes fixed by the
    // three-cycles only, and free classes.
    BigCount n_swap = swap_total - n_invariant;
    BigCount n_cyclic = exact_div(cyclic_total - n_invariant, 2);
    BigCount n_generic = exact_div(
        n_outcome_classes - (n_invariant + 3 * n_swap + 2 * n_cyclic), 6);
    BigCount total = n_invariant + n_swap + n_cyclic + n_generic;
    // Same census, averaged orbit-count form; both must agree exactly.
    BigCount check =
        exact_div(n_outcome_classes + 3 * swap_total + 2 * cyclic_total, 6);
    if (total != check)
      throw std::logic_error("inconsistent three-setting class breakdown");
    report.class_count = total;
    report.components = {{"invariant", n_invariant},
                         {"swap_total", swap_total},
                         {"cyclic_total", cyclic_total},
                         {"swap", n_swap},
                         {"cyclic", n_cyclic},
                         {"generic", n_generic}};
    for (const auto& c : inv)
      if (c.name.rfind("q_", 0) == 0) report.components.push_back(c);
    return report;
  }
  throw unsupported_scenario_error(
      "full-class count needs at most three settings, got " +
      std::to_string(sc.settings));
}

BigCount brute_force_class_count(const Scenario& sc, Relabelings mode,
                                 GroupVariant variant, std::uint64_t cap) {
  BigCount total_big = count_extreme_points(sc);
  if (total_big > BigCount(cap))
    throw resource_error("brute-force class count refused: " +
                         to_decimal(total_big) + " trees exceed cap " +
                         std::to_string(cap));
  std::uint64_t total = to_uint64(total_big);
  std::vector<RelabelingElement> group =
      all_relabelings(sc.outcomes, sc.settings, mode, variant);

  std::vector<bool> visited(total, false);
  BigCount classes = 0;
  for (std::uint64_t seed = 0; seed < total; ++seed) {
    if (visited[seed]) continue;
    ++classes;
    StrategyTree tree = tree_from_index(sc, BigCount(seed));
    for (const RelabelingElement& g : group) {
      std::uint64_t image = to_uint64(tree_index(apply_relabeling(g, tree)));
      visited[image] = true;
    }
  }
  return classes;
}

namespace {

std::vector<std::uint64_t> canonical_indices(const Scenario& sc,
                                             Relabelings mode,
                                             GroupVariant variant,
                                             std::uint64_t cap, int threads) {
  BigCount total_big = count_extreme_points(sc);
  if (total_big > BigCount(cap))
    throw resource_error("canonical enumeration refused: " +
                         to_decimal(total_big) + " trees exceed cap " +
                         std::to_string(cap));
  std::uint64_t total = to_uint64(total_big);

  std::vector<std::uint64_t> indices;
  std::mutex merge_mutex;
  parallel_for(
      total,
      [&](std::size_t begin, std::size_t end) {
        std::vector<std::uint64_t> local;
        for (std::size_t i = begin; i < end; ++i) {
          StrategyTree tree = tree_from_index(sc, BigCount(i));
          local.push_back(
              to_uint64(tree_index(canonical_form(tree, mode, variant))));
        }
        std::sort(local.begin(), local.end());
        local.erase(std::unique(local.begin(), local.end()), local.end());
        std::lock_guard<std::mutex> lock(merge_mutex);
        indices.insert(indices.end(), local.begin(), local.end());
      },
      threads);
  std::sort(indices.begin(), indices.end());
  indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
  return indices;
}

}  // namespace

BigCount distinct_canonical_count(const Scenario& sc, Relabelings mode,
                                  GroupVariant variant, std::uint64_t cap,
                                  int threads) {
  return BigCount(
      canonical_indices(sc, mode, variant, cap, threads).size());
}

std::vector<StrategyTree> class_representatives(const Scenario& sc,
                                                Relabelings mode,
                                                GroupVariant variant,
                                                std::uint64_t cap,
                                                int threads) {
  std::vector<StrategyTree> reps;
  for (std::uint64_t idx : canonical_indices(sc, mode, variant, cap, threads))
    reps.push_back(tree_from_index(sc, BigCount(idx)));
  return reps;
}

}  // namespace aot
