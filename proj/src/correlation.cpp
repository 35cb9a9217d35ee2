#include "aot/correlation.hpp"

#include <sstream>

namespace aot {

namespace detail {

void check_table_bounds(const Scenario& sc) {
  Scenario check(sc.outcomes, sc.settings, sc.length);
  double input_bits = static_cast<double>(sc.length) *
                      std::log2(static_cast<double>(sc.settings < 2 ? 2 : sc.settings));
  double output_bits = static_cast<double>(sc.length) *
                       std::log2(static_cast<double>(sc.outcomes < 2 ? 2 : sc.outcomes));
  if (sc.settings > 1 && input_bits > 62.0)
    throw resource_error("input sequence space exceeds 64-bit codes");
  if (sc.outcomes > 1 && output_bits > 62.0)
    throw resource_error("output sequence space exceeds 64-bit codes");
  std::uint64_t inputs = input_space_size(sc);
  if (inputs > kDenseInputCap)
    throw resource_error("dense correlation table refused: " +
                         std::to_string(inputs) + " input sequences exceed " +
                         std::to_string(kDenseInputCap));
}

}  // namespace detail

std::uint64_t input_space_size(const Scenario& sc) {
  std::uint64_t n = 1;
  for (int i = 0; i < sc.length; ++i) n *= static_cast<std::uint64_t>(sc.settings);
  return n;
}

std::uint64_t output_space_size(const Scenario& sc) {
  std::uint64_t n = 1;
  for (int i = 0; i < sc.length; ++i) n *= static_cast<std::uint64_t>(sc.outcomes);
  return n;
}

std::uint64_t encode_inputs(const Scenario& sc, const std::vector<int>& xs) {
  if (xs.size() != static_cast<std::size_t>(sc.length))
    throw structural_error("input sequence has length " +
                           std::to_string(xs.size()) + ", expected " +
                           std::to_string(sc.length));
  std::uint64_t code = 0;
  for (int x : xs) {
    validate_setting(sc, x);
    code = code * static_cast<std::uint64_t>(sc.settings) +
           static_cast<std::uint64_t>(x - 1);
  }
  return code;
}

std::vector<int> decode_inputs(const Scenario& sc, std::uint64_t code) {
  std::vector<int> xs(static_cast<std::size_t>(sc.length), 1);
  for (int i = sc.length; i-- > 0;) {
    xs[static_cast<std::size_t>(i)] =
        static_cast<int>(code % static_cast<std::uint64_t>(sc.settings)) + 1;
    code /= static_cast<std::uint64_t>(sc.settings);
  }
  if (code != 0) throw structural_error("input code out of range");
  return xs;
}

std::uint64_t encode_outputs(const Scenario& sc, const std::vector<int>& as) {
  if (as.size() != static_cast<std::size_t>(sc.length))
    throw structural_error("output sequence has length " +
                           std::to_string(as.size()) + ", expected " +
                           std::to_string(sc.length));
  std::uint64_t code = 0;
  for (int a : as) {
    validate_outcome(sc, a);
    code = code * static_cast<std::uint64_t>(sc.outcomes) +
           static_cast<std::uint64_t>(a);
  }
  return code;
}

std::vector<int> decode_outputs(const Scenario& sc, std::uint64_t code) {
  std::vector<int> as(static_cast<std::size_t>(sc.length), 0);
  for (int i = sc.length; i-- > 0;) {
    as[static_cast<std::size_t>(i)] =
        static_cast<int>(code % static_cast<std::uint64_t>(sc.outcomes));
    code /= static_cast<std::uint64_t>(sc.outcomes);
  }
  if (code != 0) throw structural_error("output code out of range");
  return as;
}

ExactCorrelationTable tree_to_correlations(const StrategyTree& tree) {
  validate_tree(tree);
  const Scenario& sc = tree.scenario;
  ExactCorrelationTable table = make_table<Rational>(sc);
  std::uint64_t inputs = input_space_size(sc);
  for (std::uint64_t ix = 0; ix < inputs; ++ix) {
    std::vector<int> xs = decode_inputs(sc, ix);
    std::vector<int> as = tree_outputs(tree, xs);
    table.rows[ix][encode_outputs(sc, as)] = Rational(1);
  }
  return table;
}

CorrelationTable to_double_table(const ExactCorrelationTable& table) {
  CorrelationTable out;
  out.scenario = table.scenario;
  out.rows.resize(table.rows.size());
  for (std::size_t ix = 0; ix < table.rows.size(); ++ix)
    for (const auto& [oa, p] : table.rows[ix]) out.rows[ix][oa] = p.to_double();
  return out;
}

CorrelationTable uniform_table(const Scenario& sc) {
  CorrelationTable table = make_table<double>(sc);
  std::uint64_t outputs = output_space_size(sc);
  double p = 1.0 / static_cast<double>(outputs);
  for (auto& row : table.rows)
    for (std::uint64_t oa = 0; oa < outputs; ++oa) row[oa] = p;
  return table;
}

std::string format_sequence(const std::vector<int>& seq) {
  std::ostringstream out;
  out << "(";
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (i != 0) out << ",";
    out << seq[i];
  }
  out << ")";
  return out.str();
}

}  // namespace aot
