#include "aot/futures.hpp"

#include <string>

namespace aot {

std::uint64_t future_node_count(int settings, int horizon) {
  if (settings < 1) throw structural_error("future needs settings >= 1");
  if (horizon < 0) throw structural_error("future horizon must be >= 0");
  std::uint64_t total = 0;
  std::uint64_t level = 1;
  for (int m = 0; m <= horizon; ++m) {
    if (total > UINT64_MAX - level)
      throw resource_error("future size overflows 64 bits");
    total += level;
    if (m < horizon) {
      if (level > UINT64_MAX / static_cast<std::uint64_t>(settings))
        throw resource_error("future size overflows 64 bits");
      level *= static_cast<std::uint64_t>(settings);
    }
  }
  return total;
}

void validate_future(const Future& f) {
  if (f.tuples.size() != future_node_count(f.settings, f.horizon))
    throw structural_error("future has wrong tuple count for its horizon");
  for (const OutcomeTuple& t : f.tuples)
    if (t.size() != static_cast<std::size_t>(f.settings))
      throw structural_error("future tuple arity mismatch");
}

Future future_of(const StrategyTree& tree, const NodeId& id) {
  const Scenario& sc = tree.scenario;
  validate_node(sc, id);
  Future f;
  f.settings = sc.settings;
  f.horizon = sc.length - id.level;
  f.tuples.reserve(future_node_count(sc.settings, f.horizon));
  // Descendants at each sub-level are contiguous in breadth-first order.
  std::uint64_t first = id.position - 1;
  std::uint64_t width = 1;
  for (int m = 0; m <= f.horizon; ++m) {
    std::uint64_t base = level_offset(sc, id.level + m) + first;
    for (std::uint64_t i = 0; i < width; ++i)
      f.tuples.push_back(tree.nodes[base + i]);
    first *= static_cast<std::uint64_t>(sc.settings);
    width *= static_cast<std::uint64_t>(sc.settings);
  }
  return f;
}

Future truncate_future(const Future& f, int horizon) {
  validate_future(f);
  if (horizon < 0 || horizon > f.horizon)
    throw structural_error("truncation horizon " + std::to_string(horizon) +
                           " out of range for future of horizon " +
                           std::to_string(f.horizon));
  Future out;
  out.settings = f.settings;
  out.horizon = horizon;
  out.tuples.assign(f.tuples.begin(),
                    f.tuples.begin() +
                        static_cast<std::ptrdiff_t>(
                            future_node_count(f.settings, horizon)));
  return out;
}

bool futures_equivalent(const Future& a, const Future& b) {
  if (a.settings != b.settings)
    throw structural_error("cannot compare futures over different settings");
  validate_future(a);
  validate_future(b);
  int shared = a.horizon < b.horizon ? a.horizon : b.horizon;
  std::uint64_t count = future_node_count(a.settings, shared);
  for (std::uint64_t i = 0; i < count; ++i)
    if (a.tuples[i] != b.tuples[i]) return false;
  return true;
}

}  // namespace aot
