#include <doctest.h>

#include <set>

#include "aot/class_counting.hpp"
#include "aot/correlation.hpp"
#include "aot/futures.hpp"
#include "aot/mindim.hpp"
#include "aot/realization.hpp"
#include "oracles.hpp"

using namespace aot;

namespace {

StrategyTree tree_l2(const Scenario& sc, const std::vector<OutcomeTuple>& nodes) {
  StrategyTree t;
  t.scenario = sc;
  t.nodes = nodes;
  validate_tree(t);
  return t;
}

// Number of distinct tuples among the root and its children; for two-level
// trees this is the expected minimal dimension.
int distinct_tuple_count_l2(const StrategyTree& t) {
  std::set<OutcomeTuple> seen(t.nodes.begin(), t.nodes.end());
  return static_cast<int>(seen.size());
}

}  // namespace

TEST_CASE("futures extract contiguous subtrees") {
  Scenario sc(2, 2, 3);
  StrategyTree t = tree_from_index(sc, parse_decimal("9246"));
  Future root = future_of(t, NodeId{1, 1});
  CHECK(root.horizon == 2);
  CHECK(root.tuples == t.nodes);

  Future left = future_of(t, NodeId{2, 1});
  CHECK(left.horizon == 1);
  REQUIRE(left.tuples.size() == 3);
  CHECK(left.tuples[0] == t.tuple_at(NodeId{2, 1}));
  CHECK(left.tuples[1] == t.tuple_at(NodeId{3, 1}));
  CHECK(left.tuples[2] == t.tuple_at(NodeId{3, 2}));

  Future leaf = future_of(t, NodeId{3, 4});
  CHECK(leaf.horizon == 0);
  CHECK(leaf.tuples == std::vector<OutcomeTuple>{t.tuple_at(NodeId{3, 4})});
}

TEST_CASE("future truncation and equivalence") {
  Scenario sc(2, 2, 3);
  StrategyTree t = all_zero_tree(sc);
  t.tuple_at(NodeId{3, 1}) = {1, 1};
  Future root = future_of(t, NodeId{1, 1});
  Future child = future_of(t, NodeId{2, 1});

  Future cut = truncate_future(root, 1);
  CHECK(cut.horizon == 1);
  CHECK(cut.tuples.size() == 3);
  CHECK_THROWS_AS(truncate_future(cut, 2), structural_error);

  // Both start from a zero tuple, but the child sees the flipped leaf one
  // step ahead of the root, so the min-horizon comparison separates them.
  CHECK(futures_equivalent(truncate_future(root, 0), truncate_future(child, 0)));
  CHECK_FALSE(futures_equivalent(root, child));
  CHECK(futures_equivalent(root, root));

  StrategyTree z = all_zero_tree(sc);
  CHECK(futures_equivalent(future_of(z, NodeId{1, 1}), future_of(z, NodeId{2, 2})));

  Future other;
  other.settings = 3;
  other.horizon = 0;
  other.tuples = {{0, 0, 0}};
  CHECK_THROWS_AS(futures_equivalent(root, other), structural_error);

  Future malformed = child;
  malformed.tuples.pop_back();
  CHECK_THROWS_AS(futures_equivalent(root, malformed), structural_error);
}

TEST_CASE("two-level dimension is the number of distinct tuples") {
  for (const Scenario& sc : {Scenario(2, 2, 2), Scenario(2, 3, 2)}) {
    std::uint64_t total = to_uint64(count_extreme_points(sc));
    for (std::uint64_t i = 0; i < total; ++i) {
      StrategyTree t = tree_from_index(sc, BigCount(i));
      CHECK(minimal_dimension(t).dimension == distinct_tuple_count_l2(t));
    }
  }
}

TEST_CASE("class representative dimensions for the smallest scenario") {
  Scenario sc(2, 2, 2);
  // One representative per relabeling class, root all zero, and its expected
  // dimension.
  const std::vector<std::pair<std::vector<OutcomeTuple>, int>> rows = {
      {{{0, 0}, {0, 0}, {0, 0}}, 1}, {{{0, 0}, {0, 0}, {1, 1}}, 2},
      {{{0, 0}, {0, 0}, {0, 1}}, 2}, {{{0, 0}, {0, 0}, {1, 0}}, 2},
      {{{0, 0}, {0, 1}, {0, 1}}, 2}, {{{0, 0}, {1, 1}, {1, 1}}, 2},
      {{{0, 0}, {0, 1}, {1, 0}}, 3}, {{{0, 0}, {1, 0}, {0, 1}}, 3},
      {{{0, 0}, {0, 1}, {1, 1}}, 3}, {{{0, 0}, {1, 1}, {0, 1}}, 3}};
  std::set<std::vector<OutcomeTuple>> canonical_forms;
  for (const auto& [nodes, expected] : rows) {
    StrategyTree t = tree_l2(sc, nodes);
    CHECK(minimal_dimension(t).dimension == expected);
    canonical_forms.insert(canonical_form(t, Relabelings::Full).nodes);
  }
  // The ten rows really are pairwise inequivalent.
  CHECK(canonical_forms.size() == 10);
}

TEST_CASE("dimension is a class invariant") {
  Scenario sc(2, 2, 2);
  auto group = all_relabelings(2, 2, Relabelings::Full);
  for (std::uint64_t i = 0; i < 64; ++i) {
    StrategyTree t = tree_from_index(sc, BigCount(i));
    int d = minimal_dimension(t).dimension;
    for (const auto& g : group)
      CHECK(minimal_dimension(apply_relabeling(g, t)).dimension == d);
  }
}

TEST_CASE("state assignment matches futures level by level") {
  for (std::uint64_t i = 0; i < 64; ++i) {
    StrategyTree t = tree_from_index(Scenario(2, 2, 2), BigCount(i));
    StateAssignment a = minimal_dimension(t);
    CHECK(a.state_of_node[0] == 1);
    CHECK(a.dimension >= 1);
    CHECK(a.defining_node.size() == static_cast<std::size_t>(a.dimension));
    for (std::uint64_t n = 0; n < node_count(t.scenario); ++n) {
      NodeId id = node_at_offset(t.scenario, n);
      std::uint64_t def =
          a.defining_node[static_cast<std::size_t>(a.state_of_node[n] - 1)];
      NodeId def_id = node_at_offset(t.scenario, def);
      // The assigned state's behavior truncates to this node's future, and
      // no earlier state does.
      Future behavior = future_of(t, def_id);
      Future here = future_of(t, id);
      CHECK(futures_equivalent(behavior, here));
      for (int s = 1; s < a.state_of_node[n]; ++s) {
        Future earlier =
            future_of(t, node_at_offset(t.scenario,
                                        a.defining_node[static_cast<std::size_t>(s - 1)]));
        CHECK_FALSE(futures_equivalent(earlier, here));
      }
    }
  }
}

TEST_CASE("partition oracle confirms minimality on two scenarios") {
  Scenario small(2, 2, 2);
  for (std::uint64_t i = 0; i < 64; ++i) {
    StrategyTree t = tree_from_index(small, BigCount(i));
    CHECK(minimal_dimension(t).dimension == oracle::minimal_machine_states(t));
  }
  // Deeper scenario, sampled here; the acceptance run covers it exhaustively.
  Scenario deep(2, 2, 3);
  for (std::uint64_t i = 0; i < 16384; i += 331) {
    StrategyTree t = tree_from_index(deep, BigCount(i));
    CHECK(minimal_dimension(t).dimension == oracle::minimal_machine_states(t));
  }
}

TEST_CASE("maximal dimension over whole scenarios") {
  MaxMindimResult r222 = max_min_dimension(Scenario(2, 2, 2));
  CHECK(r222.dimension == 3);
  CHECK(minimal_dimension(tree_from_index(Scenario(2, 2, 2), r222.witness_index))
            .dimension == 3);

  MaxMindimResult r232 = max_min_dimension(Scenario(2, 3, 2));
  CHECK(r232.dimension == 4);

  CHECK(max_min_dimension(Scenario(2, 2, 1)).dimension == 1);
  CHECK_THROWS_AS(max_min_dimension(Scenario(2, 2, 4), 1000), resource_error);
}

TEST_CASE("worked three-setting example synthesizes the published machine") {
  Scenario sc(2, 3, 2);
  StrategyTree t = tree_l2(sc, {{0, 0, 0}, {0, 0, 0}, {1, 1, 1}, {0, 0, 1}});
  StateAssignment a = minimal_dimension(t);
  CHECK(a.dimension == 3);
  CHECK(a.state_of_node == std::vector<int>{1, 1, 2, 3});

  Realization r = synthesize_realization(t);
  validate_realization(r);
  CHECK(r.dimension == 3);
  CHECK(r.initial == 1);

  // From the initial state, measuring x sends |1> to |x| and outputs 0.
  for (const auto& k : r.kraus) {
    if (k.state != 1) continue;
    CHECK(k.output == 0);
    CHECK(k.col == 0);
    CHECK(k.row == k.setting - 1);
  }
  // Output-1 effects: state 2 for every setting, state 3 only on setting 3.
  for (const auto& e : r.povm) {
    if (e.output != 1) continue;
    CHECK(e.diag[0] == 0);
    CHECK(e.diag[1] == 1);
    CHECK(e.diag[2] == (e.setting == 3 ? 1 : 0));
  }
}

TEST_CASE("synthesized machines replay their trees everywhere") {
  Scenario sc(2, 3, 2);
  for (std::uint64_t i = 0; i < 4096; ++i) {
    StrategyTree t = tree_from_index(sc, BigCount(i));
    Realization r = synthesize_realization(t);
    validate_realization(r);
    for (std::uint64_t ix = 0; ix < input_space_size(sc); ++ix) {
      std::vector<int> xs = decode_inputs(sc, ix);
      CHECK(realization_outputs(r, xs) == tree_outputs(t, xs));
    }
  }
}

TEST_CASE("machine replay beyond the tree depth stays consistent") {
  // Terminal states self-loop, so longer inputs keep producing the leaf
  // outputs.
  StrategyTree t = tree_l2(Scenario(2, 2, 2), {{0, 0}, {0, 1}, {1, 0}});
  Realization r = synthesize_realization(t);
  std::vector<int> out = realization_outputs(r, {1, 2, 2, 2});
  CHECK(out.size() == 4);
  CHECK(out[0] == 0);
  CHECK(out[1] == 1);
}

TEST_CASE("realization validation catches corrupted machines") {
  StrategyTree t = tree_l2(Scenario(2, 2, 2), {{0, 0}, {0, 1}, {1, 0}});
  Realization good = synthesize_realization(t);
  CHECK_NOTHROW(validate_realization(good));

  Realization broken = good;
  broken.transitions[0].next = 9;
  CHECK_THROWS_AS(validate_realization(broken), structural_error);

  broken = good;
  broken.kraus[0].row = (broken.kraus[0].row + 1) % broken.dimension;
  CHECK_THROWS_AS(validate_realization(broken), structural_error);

  broken = good;
  broken.povm[0].diag[0] ^= 1;
  CHECK_THROWS_AS(validate_realization(broken), structural_error);

  broken = good;
  broken.initial = 0;
  CHECK_THROWS_AS(validate_realization(broken), structural_error);

  broken = good;
  broken.kraus.pop_back();
  CHECK_THROWS_AS(validate_realization(broken), structural_error);
}
