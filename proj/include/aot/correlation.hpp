#pragma once

// Correlation tables p(a_1..a_L | x_1..x_L) and the arrow-of-time check:
// positivity, normalization per input sequence, and independence of each
// output-prefix marginal from later settings.
//
// Tables are dense over input sequences and sparse over output sequences.
// The probability type is either double (tolerance-based checks) or Rational
// (exact checks, tolerance ignored).

#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "aot/rational.hpp"
#include "aot/strategy_tree.hpp"

namespace aot {

// Input sequences are settings (1-based), output sequences outcomes
// (0-based); both are encoded as mixed-radix integers, first step most
// significant.
std::uint64_t encode_inputs(const Scenario& sc, const std::vector<int>& xs);
std::vector<int> decode_inputs(const Scenario& sc, std::uint64_t code);
std::uint64_t encode_outputs(const Scenario& sc, const std::vector<int>& as);
std::vector<int> decode_outputs(const Scenario& sc, std::uint64_t code);
std::uint64_t input_space_size(const Scenario& sc);   // S^L
std::uint64_t output_space_size(const Scenario& sc);  // O^L

template <class P>
struct BasicCorrelationTable {
  Scenario scenario;
  // rows[input_code] maps output_code to probability; zeros are not stored.
  std::vector<std::map<std::uint64_t, P>> rows;

  friend bool operator==(const BasicCorrelationTable&,
                         const BasicCorrelationTable&) = default;
};

using CorrelationTable = BasicCorrelationTable<double>;
using ExactCorrelationTable = BasicCorrelationTable<Rational>;

inline constexpr std::uint64_t kDenseInputCap = 1000000;

// Validates the scenario and refuses dense construction beyond the input cap
// (resource_error) or output codes beyond 64 bits.
template <class P>
BasicCorrelationTable<P> make_table(const Scenario& sc);

template <class P>
void set_probability(BasicCorrelationTable<P>& table,
                     const std::vector<int>& xs, const std::vector<int>& as,
                     const P& p);

template <class P>
P get_probability(const BasicCorrelationTable<P>& table,
                  const std::vector<int>& xs, const std::vector<int>& as);

// Overloads on already-encoded sequence codes.
template <class P>
void set_probability(BasicCorrelationTable<P>& table, std::uint64_t ix,
                     std::uint64_t oa, const P& p);

template <class P>
P get_probability(const BasicCorrelationTable<P>& table, std::uint64_t ix,
                  std::uint64_t oa);

// Deterministic table of a strategy tree: exact, one unit entry per input.
ExactCorrelationTable tree_to_correlations(const StrategyTree& tree);

CorrelationTable to_double_table(const ExactCorrelationTable& table);

// p = 1/O^L everywhere.
CorrelationTable uniform_table(const Scenario& sc);

struct AotViolation {
  std::string kind;  // "positivity", "normalization", or "marginal"
  std::string detail;
  double lhs = 0.0;
  double rhs = 0.0;
};

struct AotReport {
  bool pass = true;
  std::vector<AotViolation> violations;
};

// tolerance applies to double tables; exact tables are checked exactly.
template <class P>
AotReport check_aot(const BasicCorrelationTable<P>& table,
                    double tolerance = 1e-9);

std::string format_sequence(const std::vector<int>& seq);

// ---- implementation ----

namespace detail {

template <class P>
struct ProbOps;

template <>
struct ProbOps<double> {
  static bool nonneg(double v, double tol) { return v >= -tol; }
  static bool close(double a, double b, double tol) {
    return std::abs(a - b) <= tol;
  }
  static double to_double(double v) { return v; }
  static bool is_zero(double v) { return v == 0.0; }
  static double one() { return 1.0; }
};

template <>
struct ProbOps<Rational> {
  static bool nonneg(const Rational& v, double) { return !(v < Rational(0)); }
  static bool close(const Rational& a, const Rational& b, double) {
    return a == b;
  }
  static double to_double(const Rational& v) { return v.to_double(); }
  static bool is_zero(const Rational& v) { return v.is_zero(); }
  static Rational one() { return Rational(1); }
};

void check_table_bounds(const Scenario& sc);

}  // namespace detail

template <class P>
BasicCorrelationTable<P> make_table(const Scenario& sc) {
  detail::check_table_bounds(sc);
  BasicCorrelationTable<P> table;
  table.scenario = sc;
  table.rows.resize(input_space_size(sc));
  return table;
}

template <class P>
void set_probability(BasicCorrelationTable<P>& table, std::uint64_t ix,
                     std::uint64_t oa, const P& p) {
  if (ix >= table.rows.size() || oa >= output_space_size(table.scenario))
    throw structural_error("sequence code out of range for this table");
  if (detail::ProbOps<P>::is_zero(p))
    table.rows[ix].erase(oa);
  else
    table.rows[ix][oa] = p;
}

template <class P>
P get_probability(const BasicCorrelationTable<P>& table, std::uint64_t ix,
                  std::uint64_t oa) {
  if (ix >= table.rows.size() || oa >= output_space_size(table.scenario))
    throw structural_error("sequence code out of range for this table");
  auto it = table.rows[ix].find(oa);
  return it == table.rows[ix].end() ? P(0) : it->second;
}

template <class P>
void set_probability(BasicCorrelationTable<P>& table,
                     const std::vector<int>& xs, const std::vector<int>& as,
                     const P& p) {
  set_probability(table, encode_inputs(table.scenario, xs),
                  encode_outputs(table.scenario, as), p);
}

template <class P>
P get_probability(const BasicCorrelationTable<P>& table,
                  const std::vector<int>& xs, const std::vector<int>& as) {
  return get_probability(table, encode_inputs(table.scenario, xs),
                         encode_outputs(table.scenario, as));
}

template <class P>
AotReport check_aot(const BasicCorrelationTable<P>& table, double tolerance) {
  using Ops = detail::ProbOps<P>;
  const Scenario& sc = table.scenario;
  detail::check_table_bounds(sc);
  std::uint64_t inputs = input_space_size(sc);
  if (table.rows.size() != inputs)
    throw structural_error("correlation table has wrong input dimension");

  AotReport report;
  constexpr std::size_t kMaxViolations = 1000;
  auto add = [&](AotViolation v) {
    report.pass = false;
    if (report.violations.size() < kMaxViolations)
      report.violations.push_back(std::move(v));
  };

  std::uint64_t output_range = output_space_size(sc);
  for (std::uint64_t ix = 0; ix < inputs; ++ix) {
    P total(0);
    for (const auto& [oa, p] : table.rows[ix]) {
      if (oa >= output_range)
        throw structural_error("output code out of range in table row");
      if (!Ops::nonneg(p, tolerance)) {
        add({"positivity",
             "p" + format_sequence(decode_outputs(sc, oa)) + "|" +
                 format_sequence(decode_inputs(sc, ix)) + " is negative",
             Ops::to_double(p), 0.0});
      }
      total += p;
    }
    if (!Ops::close(total, Ops::one(), tolerance)) {
      add({"normalization",
           "outputs for x=" + format_sequence(decode_inputs(sc, ix)) +
               " do not sum to 1",
           Ops::to_double(total), 1.0});
    }
  }

  // Prefix marginals: summing outputs after step t must give a distribution
  // that depends only on the first t settings.
  for (int t = 1; t < sc.length; ++t) {
    std::uint64_t input_tail = 1, output_tail = 1;
    for (int i = t; i < sc.length; ++i) {
      input_tail *= static_cast<std::uint64_t>(sc.settings);
      output_tail *= static_cast<std::uint64_t>(sc.outcomes);
    }
    std::uint64_t prefix_count = inputs / input_tail;
    Scenario prefix_sc(sc.outcomes, sc.settings, t);
    for (std::uint64_t px = 0; px < prefix_count; ++px) {
      std::map<std::uint64_t, P> reference;
      std::uint64_t reference_ix = 0;
      bool have_reference = false;
      for (std::uint64_t tail = 0; tail < input_tail; ++tail) {
        std::uint64_t ix = px * input_tail + tail;
        std::map<std::uint64_t, P> marginal;
        for (const auto& [oa, p] : table.rows[ix]) marginal[oa / output_tail] += p;
        for (auto it = marginal.begin(); it != marginal.end();)
          it = Ops::is_zero(it->second) ? marginal.erase(it) : std::next(it);
        if (!have_reference) {
          reference = std::move(marginal);
          reference_ix = ix;
          have_reference = true;
          continue;
        }
        auto keys = reference;
        for (const auto& [pa, p] : marginal) keys.try_emplace(pa, P(0));
        for (const auto& kv : keys) {
          const std::uint64_t pa = kv.first;
          P ref = reference.count(pa) ? reference.at(pa) : P(0);
          P cur = marginal.count(pa) ? marginal.at(pa) : P(0);
          if (!Ops::close(ref, cur, tolerance)) {
            add({"marginal",
                 "step-" + std::to_string(t) + " marginal of a-prefix " +
                     format_sequence(decode_outputs(prefix_sc, pa)) +
                     " differs between x=" +
                     format_sequence(decode_inputs(sc, reference_ix)) +
                     " and x=" + format_sequence(decode_inputs(sc, ix)),
                 Ops::to_double(ref), Ops::to_double(cur)});
          }
        }
      }
    }
  }
  return report;
}

}  // namespace aot
