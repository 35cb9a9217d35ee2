#include "aot/scenario.hpp"

#include <cmath>
#include <string>

namespace aot {

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > UINT64_MAX / a)
    throw resource_error("node index arithmetic overflows 64 bits");
  return a * b;
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  if (b > UINT64_MAX - a)
    throw resource_error("node index arithmetic overflows 64 bits");
  return a + b;
}

}  // namespace

Scenario::Scenario(int num_outcomes, int num_settings, int sequence_length)
    : outcomes(num_outcomes), settings(num_settings), length(sequence_length) {
  if (outcomes < 1)
    throw structural_error("scenario: outcomes must be >= 1");
  if (settings < 1)
    throw structural_error("scenario: settings must be >= 1");
  if (length < 1)
    throw structural_error("scenario: length must be >= 1");
}

std::uint64_t node_count(const Scenario& sc) {
  std::uint64_t total = 0;
  std::uint64_t level_size = 1;
  for (int l = 1; l <= sc.length; ++l) {
    total = checked_add(total, level_size);
    if (l < sc.length)
      level_size = checked_mul(level_size, static_cast<std::uint64_t>(sc.settings));
  }
  return total;
}

std::uint64_t level_node_count(const Scenario& sc, int level) {
  if (level < 1 || level > sc.length)
    throw structural_error("level out of range: " + std::to_string(level));
  std::uint64_t size = 1;
  for (int l = 1; l < level; ++l)
    size = checked_mul(size, static_cast<std::uint64_t>(sc.settings));
  return size;
}

std::uint64_t level_offset(const Scenario& sc, int level) {
  if (level < 1 || level > sc.length)
    throw structural_error("level out of range: " + std::to_string(level));
  std::uint64_t total = 0;
  std::uint64_t level_size = 1;
  for (int l = 1; l < level; ++l) {
    total = checked_add(total, level_size);
    level_size = checked_mul(level_size, static_cast<std::uint64_t>(sc.settings));
  }
  return total;
}

void validate_node(const Scenario& sc, const NodeId& id) {
  if (id.level < 1 || id.level > sc.length)
    throw structural_error("node level out of range: " + std::to_string(id.level));
  std::uint64_t width = level_node_count(sc, id.level);
  if (id.position < 1 || id.position > width)
    throw structural_error("node position out of range: " +
                           std::to_string(id.position));
}

void validate_setting(const Scenario& sc, int setting) {
  if (setting < 1 || setting > sc.settings)
    throw structural_error("setting out of range: " + std::to_string(setting));
}

void validate_outcome(const Scenario& sc, int outcome) {
  if (outcome < 0 || outcome >= sc.outcomes)
    throw structural_error("outcome out of range: " + std::to_string(outcome));
}

std::uint64_t node_offset(const Scenario& sc, const NodeId& id) {
  validate_node(sc, id);
  return level_offset(sc, id.level) + (id.position - 1);
}

NodeId node_at_offset(const Scenario& sc, std::uint64_t offset) {
  std::uint64_t remaining = offset;
  std::uint64_t level_size = 1;
  for (int l = 1; l <= sc.length; ++l) {
    if (remaining < level_size)
      return NodeId{l, remaining + 1};
    remaining -= level_size;
    level_size = checked_mul(level_size, static_cast<std::uint64_t>(sc.settings));
  }
  throw structural_error("node offset out of range: " + std::to_string(offset));
}

NodeId child_of(const Scenario& sc, const NodeId& id, int setting) {
  validate_node(sc, id);
  validate_setting(sc, setting);
  if (id.level >= sc.length)
    throw structural_error("leaf node has no children");
  std::uint64_t pos = checked_mul(id.position - 1,
                                  static_cast<std::uint64_t>(sc.settings));
  return NodeId{id.level + 1, pos + static_cast<std::uint64_t>(setting)};
}

NodeId parent_of(const Scenario& sc, const NodeId& id) {
  validate_node(sc, id);
  if (id.level <= 1)
    throw structural_error("root node has no parent");
  return NodeId{id.level - 1,
                (id.position - 1) / static_cast<std::uint64_t>(sc.settings) + 1};
}

bool is_leaf(const Scenario& sc, const NodeId& id) {
  validate_node(sc, id);
  return id.level == sc.length;
}

BigCount count_extreme_points(const Scenario& sc) {
  std::uint64_t nodes = node_count(sc);
  double bits_per_node =
      static_cast<double>(sc.settings) *
      std::log2(static_cast<double>(sc.outcomes == 1 ? 2 : sc.outcomes));
  if (sc.outcomes > 1 &&
      static_cast<double>(nodes) * bits_per_node > 67108864.0)
    throw resource_error("extreme point count too large to materialize");
  BigCount per_node = big_pow(BigCount(sc.outcomes),
                              static_cast<std::uint64_t>(sc.settings));
  return big_pow(per_node, nodes);
}

}  // namespace aot
