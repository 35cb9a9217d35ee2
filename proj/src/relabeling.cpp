#include "aot/relabeling.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace aot {

namespace {

void validate_perm_1based(const std::vector<int>& perm, int n,
                          const char* what) {
  if (perm.size() != static_cast<std::size_t>(n))
    throw structural_error(std::string(what) + " has wrong size");
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (int v : perm) {
    if (v < 1 || v > n || seen[static_cast<std::size_t>(v - 1)])
      throw structural_error(std::string(what) + " is not a permutation");
    seen[static_cast<std::size_t>(v - 1)] = true;
  }
}

void validate_perm_0based(const std::vector<int>& perm, int n,
                          const char* what) {
  if (perm.size() != static_cast<std::size_t>(n))
    throw structural_error(std::string(what) + " has wrong size");
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (int v : perm) {
    if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)])
      throw structural_error(std::string(what) + " is not a permutation");
    seen[static_cast<std::size_t>(v)] = true;
  }
}

std::vector<int> invert_1based(const std::vector<int>& perm) {
  std::vector<int> inv(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i)
    inv[static_cast<std::size_t>(perm[i] - 1)] = static_cast<int>(i) + 1;
  return inv;
}

std::vector<int> invert_0based(const std::vector<int>& perm) {
  std::vector<int> inv(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i)
    inv[static_cast<std::size_t>(perm[i])] = static_cast<int>(i);
  return inv;
}

}  // namespace

RelabelingElement identity_element(int outcomes, int settings) {
  RelabelingElement g;
  g.setting_perm.resize(static_cast<std::size_t>(settings));
  std::iota(g.setting_perm.begin(), g.setting_perm.end(), 1);
  std::vector<int> id_outcome(static_cast<std::size_t>(outcomes));
  std::iota(id_outcome.begin(), id_outcome.end(), 0);
  g.outcome_perms.assign(static_cast<std::size_t>(settings), id_outcome);
  return g;
}

void validate_element(const RelabelingElement& g, int outcomes, int settings) {
  validate_perm_1based(g.setting_perm, settings, "setting permutation");
  if (g.outcome_perms.size() != static_cast<std::size_t>(settings))
    throw structural_error("element needs one outcome permutation per setting");
  for (const auto& tau : g.outcome_perms)
    validate_perm_0based(tau, outcomes, "outcome permutation");
}

RelabelingElement compose(const RelabelingElement& a,
                          const RelabelingElement& b) {
  if (a.setting_perm.size() != b.setting_perm.size() ||
      a.outcome_perms.size() != b.outcome_perms.size())
    throw structural_error("cannot compose elements of different shapes");
  std::size_t settings = a.setting_perm.size();
  std::vector<int> a_inv = invert_1based(a.setting_perm);

  RelabelingElement c;
  c.setting_perm.resize(settings);
  c.outcome_perms.resize(settings);
  for (std::size_t x = 0; x < settings; ++x) {
    // Setting x+1 goes through b then a.
    c.setting_perm[x] =
        a.setting_perm[static_cast<std::size_t>(b.setting_perm[x] - 1)];
    // Outcome permutation on new setting x+1: b's (indexed where a routed
    // from) followed by a's.
    const std::vector<int>& tau_b =
        b.outcome_perms[static_cast<std::size_t>(a_inv[x] - 1)];
    const std::vector<int>& tau_a = a.outcome_perms[x];
    std::vector<int> tau(tau_b.size());
    for (std::size_t z = 0; z < tau_b.size(); ++z)
      tau[z] = tau_a[static_cast<std::size_t>(tau_b[z])];
    c.outcome_perms[x] = std::move(tau);
  }
  return c;
}

RelabelingElement inverse(const RelabelingElement& g) {
  RelabelingElement inv;
  inv.setting_perm = invert_1based(g.setting_perm);
  inv.outcome_perms.resize(g.outcome_perms.size());
  for (std::size_t y = 0; y < inv.outcome_perms.size(); ++y) {
    // Outcome permutation on new setting y+1 of the inverse undoes the one
    // the original applied on setting g(y+1).
    const std::vector<int>& tau =
        g.outcome_perms[static_cast<std::size_t>(g.setting_perm[y] - 1)];
    inv.outcome_perms[y] = invert_0based(tau);
  }
  return inv;
}

StrategyTree apply_relabeling(const RelabelingElement& g,
                              const StrategyTree& tree) {
  const Scenario& sc = tree.scenario;
  validate_element(g, sc.outcomes, sc.settings);
  validate_tree(tree);

  std::vector<int> pi_inv = invert_1based(g.setting_perm);
  std::uint64_t total = node_count(sc);

  StrategyTree out;
  out.scenario = sc;
  out.nodes.resize(total);
  // source[n] is the node of the input tree feeding new node n.
  std::vector<std::uint64_t> source(total, 0);
  for (std::uint64_t n = 0; n < total; ++n) {
    NodeId id = node_at_offset(sc, n);
    NodeId src_id = node_at_offset(sc, source[n]);
    const OutcomeTuple& src_tuple = tree.nodes[source[n]];
    OutcomeTuple t(static_cast<std::size_t>(sc.settings), 0);
    for (int x = 1; x <= sc.settings; ++x) {
      int from = pi_inv[static_cast<std::size_t>(x - 1)];
      t[static_cast<std::size_t>(x - 1)] =
          g.outcome_perms[static_cast<std::size_t>(x - 1)]
                         [static_cast<std::size_t>(outcome_at(src_tuple, from))];
      if (id.level < sc.length) {
        std::uint64_t c = node_offset(sc, child_of(sc, id, x));
        source[c] = node_offset(sc, child_of(sc, src_id, from));
      }
    }
    out.nodes[n] = std::move(t);
  }
  return out;
}

BigCount group_order(int outcomes, int settings, Relabelings mode,
                     GroupVariant variant) {
  Scenario check(outcomes, settings, 1);
  BigCount outcome_fact = 1;
  for (int i = 2; i <= outcomes; ++i) outcome_fact *= i;
  BigCount order = variant == GroupVariant::PerSetting
                       ? big_pow(outcome_fact,
                                 static_cast<std::uint64_t>(settings))
                       : outcome_fact;
  if (mode == Relabelings::Full)
    for (int i = 2; i <= settings; ++i) order *= i;
  return order;
}

std::vector<RelabelingElement> all_relabelings(int outcomes, int settings,
                                               Relabelings mode,
                                               GroupVariant variant,
                                               std::uint64_t cap) {
  BigCount order = group_order(outcomes, settings, mode, variant);
  if (order > BigCount(cap))
    throw resource_error("relabeling group too large to materialize: " +
                         to_decimal(order));

  // All permutations of {0..outcomes-1}, lexicographic.
  std::vector<std::vector<int>> outcome_perms;
  std::vector<int> tau(static_cast<std::size_t>(outcomes));
  std::iota(tau.begin(), tau.end(), 0);
  do {
    outcome_perms.push_back(tau);
  } while (std::next_permutation(tau.begin(), tau.end()));
  std::uint64_t tau_count = outcome_perms.size();

  std::vector<std::vector<int>> setting_perms;
  std::vector<int> pi(static_cast<std::size_t>(settings));
  std::iota(pi.begin(), pi.end(), 1);
  if (mode == Relabelings::Full) {
    do {
      setting_perms.push_back(pi);
    } while (std::next_permutation(pi.begin(), pi.end()));
  } else {
    setting_perms.push_back(pi);
  }

  std::vector<RelabelingElement> group;
  group.reserve(to_uint64(order));
  for (const auto& sp : setting_perms) {
    if (variant == GroupVariant::Uniform) {
      for (std::uint64_t t = 0; t < tau_count; ++t) {
        RelabelingElement g;
        g.setting_perm = sp;
        g.outcome_perms.assign(static_cast<std::size_t>(settings),
                               outcome_perms[t]);
        group.push_back(std::move(g));
      }
      continue;
    }
    // Odometer over one outcome permutation per setting.
    std::vector<std::uint64_t> pick(static_cast<std::size_t>(settings), 0);
    while (true) {
      RelabelingElement g;
      g.setting_perm = sp;
      g.outcome_perms.resize(static_cast<std::size_t>(settings));
      for (int x = 0; x < settings; ++x)
        g.outcome_perms[static_cast<std::size_t>(x)] =
            outcome_perms[pick[static_cast<std::size_t>(x)]];
      group.push_back(std::move(g));
      int x = settings - 1;
      while (x >= 0 && ++pick[static_cast<std::size_t>(x)] == tau_count) {
        pick[static_cast<std::size_t>(x)] = 0;
        --x;
      }
      if (x < 0) break;
    }
  }
  return group;
}

namespace {

// Lexicographically smallest outcome renaming of a settings-permuted tree.
// Entries are scanned in breadth-first order; the first occurrence of each
// outcome value (per channel, or globally for the uniform variant) receives
// the smallest unused image, which is exactly the greedy choice that
// minimizes the tuple sequence.
StrategyTree greedy_outcome_min(const StrategyTree& tree,
                                GroupVariant variant) {
  const Scenario& sc = tree.scenario;
  int channels = variant == GroupVariant::PerSetting ? sc.settings : 1;
  std::vector<std::vector<int>> image(
      static_cast<std::size_t>(channels),
      std::vector<int>(static_cast<std::size_t>(sc.outcomes), -1));
  std::vector<int> next_free(static_cast<std::size_t>(channels), 0);

  StrategyTree out;
  out.scenario = sc;
  out.nodes.resize(tree.nodes.size());
  for (std::size_t n = 0; n < tree.nodes.size(); ++n) {
    OutcomeTuple t(static_cast<std::size_t>(sc.settings), 0);
    for (int x = 1; x <= sc.settings; ++x) {
      std::size_t ch = variant == GroupVariant::PerSetting
                           ? static_cast<std::size_t>(x - 1)
                           : 0;
      int z = outcome_at(tree.nodes[n], x);
      int& img = image[ch][static_cast<std::size_t>(z)];
      if (img < 0) img = next_free[ch]++;
      t[static_cast<std::size_t>(x - 1)] = img;
    }
    out.nodes[n] = std::move(t);
  }
  return out;
}

}  // namespace

StrategyTree canonical_form(const StrategyTree& tree, Relabelings mode,
                            GroupVariant variant) {
  const Scenario& sc = tree.scenario;
  validate_tree(tree);

  std::vector<std::vector<int>> setting_perms;
  std::vector<int> pi(static_cast<std::size_t>(sc.settings));
  std::iota(pi.begin(), pi.end(), 1);
  if (mode == Relabelings::Full) {
    do {
      setting_perms.push_back(pi);
    } while (std::next_permutation(pi.begin(), pi.end()));
  } else {
    setting_perms.push_back(pi);
  }

  StrategyTree best;
  bool have_best = false;
  for (const auto& sp : setting_perms) {
    RelabelingElement setting_only = identity_element(sc.outcomes, sc.settings);
    setting_only.setting_perm = sp;
    StrategyTree candidate =
        greedy_outcome_min(apply_relabeling(setting_only, tree), variant);
    if (!have_best || compare_trees(candidate, best) < 0) {
      best = std::move(candidate);
      have_best = true;
    }
  }
  return best;
}

}  // namespace aot
