#include "aot/strategy_tree.hpp"

#include <sstream>
#include <stdexcept>

namespace aot {

StrategyTree all_zero_tree(const Scenario& sc) {
  StrategyTree tree;
  tree.scenario = sc;
  tree.nodes.assign(node_count(sc),
                    OutcomeTuple(static_cast<std::size_t>(sc.settings), 0));
  return tree;
}

void validate_tree(const StrategyTree& tree) {
  const Scenario& sc = tree.scenario;
  Scenario check(sc.outcomes, sc.settings, sc.length);
  std::uint64_t expected = node_count(sc);
  if (tree.nodes.size() != expected)
    throw structural_error("tree has " + std::to_string(tree.nodes.size()) +
                           " nodes, scenario requires " +
                           std::to_string(expected));
  for (const OutcomeTuple& t : tree.nodes) {
    if (t.size() != static_cast<std::size_t>(sc.settings))
      throw structural_error("outcome tuple arity mismatch");
    for (int z : t) validate_outcome(sc, z);
  }
}

StrategyTree tree_from_index(const Scenario& sc, const BigCount& index) {
  BigCount total = count_extreme_points(sc);
  if (index < 0 || index >= total)
    throw std::out_of_range("tree index out of range: " + to_decimal(index));

  std::uint64_t nodes = node_count(sc);
  BigCount digit_base = big_pow(BigCount(sc.outcomes),
                                static_cast<std::uint64_t>(sc.settings));
  StrategyTree tree = all_zero_tree(sc);
  BigCount rest = index;
  // Peel digits least significant first: last breadth-first node first.
  for (std::uint64_t i = nodes; i-- > 0;) {
    BigCount digit = rest % digit_base;
    rest /= digit_base;
    std::uint64_t d = digit.convert_to<std::uint64_t>();
    OutcomeTuple& t = tree.nodes[i];
    for (int x = sc.settings; x >= 1; --x) {
      t[static_cast<std::size_t>(x - 1)] =
          static_cast<int>(d % static_cast<std::uint64_t>(sc.outcomes));
      d /= static_cast<std::uint64_t>(sc.outcomes);
    }
  }
  return tree;
}

BigCount tree_index(const StrategyTree& tree) {
  validate_tree(tree);
  const Scenario& sc = tree.scenario;
  BigCount digit_base = big_pow(BigCount(sc.outcomes),
                                static_cast<std::uint64_t>(sc.settings));
  BigCount index = 0;
  for (const OutcomeTuple& t : tree.nodes) {
    std::uint64_t digit = 0;
    for (int x = 1; x <= sc.settings; ++x)
      digit = digit * static_cast<std::uint64_t>(sc.outcomes) +
              static_cast<std::uint64_t>(outcome_at(t, x));
    index = index * digit_base + digit;
  }
  return index;
}

std::vector<int> tree_outputs(const StrategyTree& tree,
                              const std::vector<int>& inputs) {
  const Scenario& sc = tree.scenario;
  if (inputs.size() > static_cast<std::size_t>(sc.length))
    throw structural_error("input sequence longer than tree depth");
  std::vector<int> outputs;
  outputs.reserve(inputs.size());
  NodeId node{1, 1};
  for (std::size_t t = 0; t < inputs.size(); ++t) {
    int x = inputs[t];
    validate_setting(sc, x);
    outputs.push_back(outcome_at(tree.tuple_at(node), x));
    if (t + 1 < inputs.size()) node = child_of(sc, node, x);
  }
  return outputs;
}

int compare_trees(const StrategyTree& a, const StrategyTree& b) {
  if (!(a.scenario == b.scenario))
    throw structural_error("cannot compare trees from different scenarios");
  if (a.nodes < b.nodes) return -1;
  if (b.nodes < a.nodes) return 1;
  return 0;
}

std::string write_aott(const StrategyTree& tree) {
  validate_tree(tree);
  const Scenario& sc = tree.scenario;
  std::ostringstream out;
  out << "aott 1\n";
  out << "O=" << sc.outcomes << " S=" << sc.settings << " L=" << sc.length
      << "\n";
  std::uint64_t nodes = node_count(sc);
  for (std::uint64_t i = 0; i < nodes; ++i) {
    NodeId id = node_at_offset(sc, i);
    out << id.level << "," << id.position << ":";
    for (int z : tree.nodes[i]) out << " " << z;
    out << "\n";
  }
  return out.str();
}

namespace {

// Reads the next nonempty line; returns false at end of input.
bool next_line(std::istringstream& in, std::string& line) {
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t pos = line.find_first_not_of(" \t");
    if (pos != std::string::npos) return true;
  }
  return false;
}

int parse_header_int(const std::string& line, std::size_t& pos,
                     const std::string& key) {
  std::size_t at = line.find(key + "=", pos);
  if (at == std::string::npos)
    throw parse_error("aott: missing '" + key + "=' in header");
  std::size_t start = at + key.size() + 1;
  std::size_t end = start;
  while (end < line.size() && std::isdigit(static_cast<unsigned char>(line[end])))
    ++end;
  if (end == start) throw parse_error("aott: bad value for '" + key + "'");
  pos = end;
  return std::stoi(line.substr(start, end - start));
}

}  // namespace

StrategyTree parse_aott(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!next_line(in, line)) throw parse_error("aott: empty input");
  {
    std::istringstream magic(line);
    std::string tag;
    int version = 0;
    magic >> tag >> version;
    if (tag != "aott" || magic.fail())
      throw parse_error("aott: bad magic line '" + line + "'");
    if (version != 1)
      throw parse_error("aott: unsupported version " + std::to_string(version));
  }
  if (!next_line(in, line)) throw parse_error("aott: missing scenario line");
  Scenario sc;
  try {
    std::size_t pos = 0;
    int O = parse_header_int(line, pos, "O");
    int S = parse_header_int(line, pos, "S");
    int L = parse_header_int(line, pos, "L");
    sc = Scenario(O, S, L);
  } catch (const structural_error& e) {
    throw parse_error(std::string("aott: ") + e.what());
  }

  StrategyTree tree;
  tree.scenario = sc;
  std::uint64_t nodes = node_count(sc);
  tree.nodes.reserve(nodes);
  for (std::uint64_t i = 0; i < nodes; ++i) {
    if (!next_line(in, line))
      throw parse_error("aott: expected " + std::to_string(nodes) +
                        " node lines, got " + std::to_string(i));
    NodeId expected = node_at_offset(sc, i);
    std::istringstream row(line);
    int level = 0;
    std::uint64_t position = 0;
    char comma = 0, colon = 0;
    row >> level >> comma >> position >> colon;
    if (row.fail() || comma != ',' || colon != ':')
      throw parse_error("aott: malformed node line '" + line + "'");
    if (level != expected.level || position != expected.position)
      throw parse_error("aott: node " + std::to_string(level) + "," +
                        std::to_string(position) +
                        " out of breadth-first order");
    OutcomeTuple t(static_cast<std::size_t>(sc.settings), 0);
    for (int x = 1; x <= sc.settings; ++x) {
      int z = 0;
      row >> z;
      if (row.fail())
        throw parse_error("aott: node line has fewer than " +
                          std::to_string(sc.settings) + " outcomes");
      if (z < 0 || z >= sc.outcomes)
        throw parse_error("aott: outcome " + std::to_string(z) +
                          " out of range");
      t[static_cast<std::size_t>(x - 1)] = z;
    }
    int trailing = 0;
    if (row >> trailing)
      throw parse_error("aott: node line has more than " +
                        std::to_string(sc.settings) + " outcomes");
    tree.nodes.push_back(std::move(t));
  }
  if (next_line(in, line))
    throw parse_error("aott: trailing content after last node");
  return tree;
}

}  // namespace aot
