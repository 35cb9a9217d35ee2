#include "aot/mindim.hpp"

#include <mutex>
#include <unordered_map>

#include "aot/parallel.hpp"

namespace aot {

namespace {

std::uint64_t mix64(std::uint64_t v) {
  v += 0x9e3779b97f4a7c15ULL;
  v = (v ^ (v >> 30)) * 0xbf58476d1ce4e5b9ULL;
  v = (v ^ (v >> 27)) * 0x94d049bb133111ebULL;
  return v ^ (v >> 31);
}

std::uint64_t hash_tuple(const OutcomeTuple& t) {
  std::uint64_t h = 1469598103934665603ULL;
  for (int z : t) {
    h ^= static_cast<std::uint64_t>(z) + 1;
    h *= 1099511628211ULL;
  }
  return mix64(h);
}

// Tuple-wise equality of the subtrees below a and b, down to `horizon`
// levels. Descendants per sub-level are contiguous breadth-first ranges.
bool equal_subtrees(const StrategyTree& tree, NodeId a, NodeId b,
                    int horizon) {
  const Scenario& sc = tree.scenario;
  std::uint64_t first_a = a.position - 1;
  std::uint64_t first_b = b.position - 1;
  std::uint64_t width = 1;
  for (int m = 0; m <= horizon; ++m) {
    std::uint64_t base_a = level_offset(sc, a.level + m) + first_a;
    std::uint64_t base_b = level_offset(sc, b.level + m) + first_b;
    for (std::uint64_t i = 0; i < width; ++i)
      if (tree.nodes[base_a + i] != tree.nodes[base_b + i]) return false;
    first_a *= static_cast<std::uint64_t>(sc.settings);
    first_b *= static_cast<std::uint64_t>(sc.settings);
    width *= static_cast<std::uint64_t>(sc.settings);
  }
  return true;
}

std::uint64_t horizon_key(int horizon, std::uint64_t subtree_hash) {
  return mix64(subtree_hash ^
               (0x517cc1b727220a95ULL *
                (static_cast<std::uint64_t>(horizon) + 1)));
}

}  // namespace

StateAssignment minimal_dimension(const StrategyTree& tree) {
  validate_tree(tree);
  const Scenario& sc = tree.scenario;
  std::uint64_t total = node_count(sc);

  // subtree_hash[n][s]: hash of the subtree below n truncated to s levels.
  std::vector<std::vector<std::uint64_t>> subtree_hash(total);
  for (int l = sc.length; l >= 1; --l) {
    std::uint64_t base = level_offset(sc, l);
    std::uint64_t width = level_node_count(sc, l);
    int horizon = sc.length - l;
    for (std::uint64_t i = 0; i < width; ++i) {
      std::uint64_t n = base + i;
      auto& h = subtree_hash[n];
      h.resize(static_cast<std::size_t>(horizon) + 1);
      h[0] = hash_tuple(tree.nodes[n]);
      std::uint64_t first_child =
          l < sc.length
              ? level_offset(sc, l + 1) + i * static_cast<std::uint64_t>(sc.settings)
              : 0;
      for (int s = 1; s <= horizon; ++s) {
        std::uint64_t acc = h[0];
        for (int x = 0; x < sc.settings; ++x) {
          acc *= 1099511628211ULL;
          acc ^= subtree_hash[first_child + static_cast<std::uint64_t>(x)]
                             [static_cast<std::size_t>(s - 1)];
        }
        h[static_cast<std::size_t>(s)] = mix64(acc);
      }
    }
  }

  StateAssignment out;
  out.state_of_node.resize(total, 0);
  // owner[key(s, hash)]: first state whose behavior has that s-truncation.
  std::unordered_map<std::uint64_t, int> owner;
  owner.reserve(2 * total);
  for (std::uint64_t n = 0; n < total; ++n) {
    NodeId id = node_at_offset(sc, n);
    int horizon = sc.length - id.level;
    std::uint64_t key =
        horizon_key(horizon, subtree_hash[n][static_cast<std::size_t>(horizon)]);
    int assigned = -1;
    auto it = owner.find(key);
    if (it != owner.end()) {
      NodeId def = node_at_offset(sc, out.defining_node[static_cast<std::size_t>(
                                          it->second)]);
      if (equal_subtrees(tree, def, id, horizon)) assigned = it->second;
      else {
        // Hash collision: fall back to an exact scan.
        for (std::size_t s = 0; s < out.defining_node.size(); ++s) {
          NodeId cand = node_at_offset(sc, out.defining_node[s]);
          if (sc.length - cand.level < horizon) continue;
          if (equal_subtrees(tree, cand, id, horizon)) {
            assigned = static_cast<int>(s);
            break;
          }
        }
      }
    }
    if (assigned < 0) {
      assigned = static_cast<int>(out.defining_node.size());
      out.defining_node.push_back(n);
      for (int s = 0; s <= horizon; ++s)
        owner.try_emplace(
            horizon_key(s, subtree_hash[n][static_cast<std::size_t>(s)]),
            assigned);
    }
    out.state_of_node[n] = assigned + 1;
  }
  out.dimension = static_cast<int>(out.defining_node.size());
  return out;
}

MaxMindimResult max_min_dimension(const Scenario& sc, std::uint64_t cap,
                                  int threads) {
  BigCount total_big = count_extreme_points(sc);
  if (total_big > BigCount(cap))
    throw resource_error("max_min_dimension refused: " + to_decimal(total_big) +
                         " trees exceed cap " + std::to_string(cap));
  std::uint64_t total = to_uint64(total_big);

  MaxMindimResult best;
  best.dimension = 0;
  best.witness_index = 0;
  std::mutex merge_mutex;
  parallel_for(
      total,
      [&](std::size_t begin, std::size_t end) {
        int local_dim = 0;
        std::uint64_t local_idx = 0;
        for (std::size_t i = begin; i < end; ++i) {
          int d = minimal_dimension(tree_from_index(sc, BigCount(i))).dimension;
          if (d > local_dim) {
            local_dim = d;
            local_idx = i;
          }
        }
        std::lock_guard<std::mutex> lock(merge_mutex);
        if (local_dim > best.dimension ||
            (local_dim == best.dimension &&
             BigCount(local_idx) < best.witness_index))
          best = {local_dim, BigCount(local_idx)};
      },
      threads);
  return best;
}

}  // namespace aot
