#include "oracles.hpp"

#include <cmath>
#include <stdexcept>

namespace oracle {

namespace {

struct PartitionSearch {
  const aot::StrategyTree& tree;
  std::size_t total;
  std::vector<int> block;  // restricted growth string over breadth-first nodes
  int best;

  explicit PartitionSearch(const aot::StrategyTree& t)
      : tree(t), total(t.nodes.size()), block(t.nodes.size(), 0),
        best(static_cast<int>(t.nodes.size())) {}

  bool consistent(int blocks) const {
    const aot::Scenario& sc = tree.scenario;
    // Blocks must agree on tuples.
    std::vector<int> first_node(static_cast<std::size_t>(blocks), -1);
    for (std::size_t n = 0; n < total; ++n) {
      int b = block[n];
      if (first_node[static_cast<std::size_t>(b)] < 0) {
        first_node[static_cast<std::size_t>(b)] = static_cast<int>(n);
        continue;
      }
      if (tree.nodes[n] !=
          tree.nodes[static_cast<std::size_t>(first_node[static_cast<std::size_t>(b)])])
        return false;
    }
    // Children of the non-leaf members of a block must share blocks per
    // setting.
    std::vector<std::vector<int>> child_block(
        static_cast<std::size_t>(blocks),
        std::vector<int>(static_cast<std::size_t>(sc.settings), -1));
    for (std::size_t n = 0; n < total; ++n) {
      aot::NodeId id = aot::node_at_offset(sc, n);
      if (id.level >= sc.length) continue;
      int b = block[n];
      for (int x = 1; x <= sc.settings; ++x) {
        int cb = block[aot::node_offset(sc, aot::child_of(sc, id, x))];
        int& expected = child_block[static_cast<std::size_t>(b)]
                                   [static_cast<std::size_t>(x - 1)];
        if (expected < 0)
          expected = cb;
        else if (expected != cb)
          return false;
      }
    }
    return true;
  }

  void recurse(std::size_t n, int used) {
    if (used >= best) return;  // already no better than the best found
    if (n == total) {
      if (consistent(used)) best = used;
      return;
    }
    for (int b = 0; b < used && b < best; ++b) {
      block[n] = b;
      recurse(n + 1, used);
    }
    if (used < best) {
      block[n] = used;
      recurse(n + 1, used + 1);
    }
  }
};

}  // namespace

int minimal_machine_states(const aot::StrategyTree& tree) {
  aot::validate_tree(tree);
  if (tree.nodes.size() > 12)
    throw aot::resource_error(
        "partition oracle refuses trees with more than 12 nodes");
  PartitionSearch search(tree);
  search.recurse(0, 0);
  return search.best;
}

std::vector<int> machine_outputs(const DetMachine& m,
                                 const std::vector<int>& inputs) {
  std::vector<int> outputs;
  outputs.reserve(inputs.size());
  int state = m.initial;
  for (int x : inputs) {
    outputs.push_back(m.output[static_cast<std::size_t>(state)]
                              [static_cast<std::size_t>(x - 1)]);
    state = m.next[static_cast<std::size_t>(state)]
                  [static_cast<std::size_t>(x - 1)];
  }
  return outputs;
}

void for_each_machine(int states, int settings, int outcomes,
                      const std::function<void(const DetMachine&)>& fn) {
  if (states < 1 || settings < 1 || outcomes < 1)
    throw std::invalid_argument("machine enumeration needs positive sizes");
  DetMachine m;
  m.states = states;
  m.output.assign(static_cast<std::size_t>(states),
                  std::vector<int>(static_cast<std::size_t>(settings), 0));
  m.next.assign(static_cast<std::size_t>(states),
                std::vector<int>(static_cast<std::size_t>(settings), 0));

  std::size_t cells = static_cast<std::size_t>(states) *
                      static_cast<std::size_t>(settings);
  // Odometer over all output tables, successor tables, and initial states.
  std::function<void(std::size_t)> fill_next = [&](std::size_t cell) {
    if (cell == cells) {
      for (int init = 0; init < states; ++init) {
        m.initial = init;
        fn(m);
      }
      return;
    }
    std::size_t s = cell / static_cast<std::size_t>(settings);
    std::size_t x = cell % static_cast<std::size_t>(settings);
    for (int v = 0; v < states; ++v) {
      m.next[s][x] = v;
      fill_next(cell + 1);
    }
  };
  std::function<void(std::size_t)> fill_output = [&](std::size_t cell) {
    if (cell == cells) {
      fill_next(0);
      return;
    }
    std::size_t s = cell / static_cast<std::size_t>(settings);
    std::size_t x = cell % static_cast<std::size_t>(settings);
    for (int v = 0; v < outcomes; ++v) {
      m.output[s][x] = v;
      fill_output(cell + 1);
    }
  };
  fill_output(0);
}

double max_over_machines(const aot::TemporalInequality& ineq, int states) {
  const aot::Scenario& sc = ineq.scenario;
  // Decode the sparse terms once; every machine replays against this list.
  struct Term {
    std::vector<int> inputs;
    std::vector<int> outputs;
    double coeff;
  };
  std::vector<Term> terms;
  for (const auto& [key, coeff] : ineq.terms)
    terms.push_back({aot::decode_inputs(sc, key.first),
                     aot::decode_outputs(sc, key.second), coeff});
  double best = 0.0;
  bool first = true;
  for_each_machine(states, sc.settings, sc.outcomes,
                   [&](const DetMachine& m) {
                     double value = 0.0;
                     for (const auto& term : terms)
                       if (machine_outputs(m, term.inputs) == term.outputs)
                         value += term.coeff;
                     if (first || value > best) {
                       best = value;
                       first = false;
                     }
                   });
  return best;
}

aot::BigCount burnside_class_count(const aot::Scenario& sc,
                                   aot::Relabelings mode,
                                   aot::GroupVariant variant,
                                   std::uint64_t cap) {
  aot::BigCount total_big = aot::count_extreme_points(sc);
  if (total_big > aot::BigCount(cap))
    throw aot::resource_error("Burnside oracle refused: too many trees");
  std::uint64_t total = aot::to_uint64(total_big);
  std::vector<aot::RelabelingElement> group =
      aot::all_relabelings(sc.outcomes, sc.settings, mode, variant);

  aot::BigCount fixed_sum = 0;
  for (const auto& g : group) {
    for (std::uint64_t i = 0; i < total; ++i) {
      aot::StrategyTree tree = aot::tree_from_index(sc, aot::BigCount(i));
      if (aot::apply_relabeling(g, tree) == tree) ++fixed_sum;
    }
  }
  return aot::exact_div(fixed_sum, aot::BigCount(group.size()));
}

double lambert_w_bisect(double x) {
  const double min_x = -std::exp(-1.0);
  if (!(x >= min_x))
    throw std::domain_error("lambert_w_bisect: x below -1/e");
  double lo = -1.0;
  double hi = x <= 0.0 ? 0.0 : std::max(1.0, std::log(x + 1.0) + 2.0);
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    double f = mid * std::exp(mid) - x;
    if (f <= 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace oracle
