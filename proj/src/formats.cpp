#include "aot/formats.hpp"

#include <json.hpp>

#include <cctype>
#include <cmath>
#include <sstream>
#include <string>

namespace aot {

namespace {

using nlohmann::json;
using Cx = std::complex<double>;

[[noreturn]] void fail(const std::string& what) { throw parse_error(what); }

template <class F>
auto guarded(const char* label, F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    fail(std::string(label) + ": " + e.what());
  } catch (const std::out_of_range& e) {
    fail(std::string(label) + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    fail(std::string(label) + ": " + e.what());
  }
}

json scenario_json(const Scenario& sc) {
  return json{{"outcomes", sc.outcomes},
              {"settings", sc.settings},
              {"length", sc.length}};
}

Scenario scenario_from(const json& j) {
  return Scenario(j.at("outcomes").get<int>(), j.at("settings").get<int>(),
                  j.at("length").get<int>());
}

json nodes_json(const StrategyTree& tree) {
  json nodes = json::array();
  for (const OutcomeTuple& t : tree.nodes) nodes.push_back(t);
  return nodes;
}

StrategyTree tree_from(const Scenario& sc, const json& nodes) {
  StrategyTree tree;
  tree.scenario = sc;
  for (const json& t : nodes)
    tree.nodes.push_back(t.get<OutcomeTuple>());
  validate_tree(tree);
  return tree;
}

json matrix_json(const DenseMatrix<Cx>& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      row.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
    rows.push_back(row);
  }
  return rows;
}

DenseMatrix<Cx> matrix_from(const json& j, int rows, int cols) {
  if (!j.is_array() || j.size() != static_cast<std::size_t>(rows))
    fail("matrix has the wrong row count");
  DenseMatrix<Cx> m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    const json& row = j.at(static_cast<std::size_t>(r));
    if (!row.is_array() || row.size() != static_cast<std::size_t>(cols))
      fail("matrix has the wrong column count");
    for (int c = 0; c < cols; ++c) {
      const json& entry = row.at(static_cast<std::size_t>(c));
      if (!entry.is_array() || entry.size() != 2)
        fail("matrix entries must be [re, im] pairs");
      m(r, c) = Cx(entry.at(0).get<double>(), entry.at(1).get<double>());
    }
  }
  return m;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json parse_json(const std::string& text, const char* label) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) fail(std::string(label) + ": invalid JSON");
  return j;
}

std::string format_double(double v) {
  json j = v;
  return j.dump();
}

int parse_int_token(const std::string& token, const char* label) {
  if (token.empty()) fail(std::string(label) + ": missing integer");
  std::size_t pos = 0;
  int value = 0;
  try {
    value = std::stoi(token, &pos);
  } catch (const std::exception&) {
    fail(std::string(label) + ": invalid integer '" + token + "'");
  }
  if (pos != token.size())
    fail(std::string(label) + ": invalid integer '" + token + "'");
  return value;
}

}  // namespace

std::string format_scenario(const Scenario& sc) {
  return std::to_string(sc.outcomes) + "x" + std::to_string(sc.settings) +
         "x" + std::to_string(sc.length);
}

std::string mode_to_string(Relabelings mode) {
  return mode == Relabelings::Full ? "RE" : "ORE";
}

Relabelings mode_from_string(const std::string& s) {
  if (s == "RE") return Relabelings::Full;
  if (s == "ORE") return Relabelings::Outcomes;
  fail("unknown relabeling mode '" + s + "' (expected RE or ORE)");
}

std::string variant_to_string(GroupVariant variant) {
  return variant == GroupVariant::PerSetting ? "per-setting" : "uniform";
}

GroupVariant variant_from_string(const std::string& s) {
  if (s == "per-setting") return GroupVariant::PerSetting;
  if (s == "uniform") return GroupVariant::Uniform;
  fail("unknown group variant '" + s + "' (expected per-setting or uniform)");
}

std::string realization_to_json(const Realization& r) {
  json transitions = json::array();
  for (const RealizationTransition& t : r.transitions)
    transitions.push_back(json{{"state", t.state},
                               {"setting", t.setting},
                               {"output", t.output},
                               {"next", t.next}});
  json kraus = json::array();
  for (const KrausEntry& k : r.kraus)
    kraus.push_back(json{{"setting", k.setting},
                         {"output", k.output},
                         {"index", k.state},
                         {"row", k.row},
                         {"col", k.col}});
  json povm = json::array();
  for (const PovmEntry& p : r.povm)
    povm.push_back(
        json{{"setting", p.setting}, {"output", p.output}, {"diag", p.diag}});
  return dump(json{{"scenario", scenario_json(r.scenario)},
                   {"dimension", r.dimension},
                   {"initial", r.initial},
                   {"transitions", transitions},
                   {"kraus", kraus},
                   {"povm", povm}});
}

Realization realization_from_json(const std::string& text) {
  return guarded("realization", [&] {
    json j = parse_json(text, "realization");
    Realization r;
    r.scenario = scenario_from(j.at("scenario"));
    r.dimension = j.at("dimension").get<int>();
    r.initial = j.at("initial").get<int>();
    for (const json& t : j.at("transitions"))
      r.transitions.push_back(RealizationTransition{
          t.at("state").get<int>(), t.at("setting").get<int>(),
          t.at("output").get<int>(), t.at("next").get<int>()});
    for (const json& k : j.at("kraus"))
      r.kraus.push_back(KrausEntry{
          k.at("setting").get<int>(), k.at("output").get<int>(),
          k.at("index").get<int>(), k.at("row").get<int>(),
          k.at("col").get<int>()});
    for (const json& p : j.at("povm"))
      r.povm.push_back(PovmEntry{p.at("setting").get<int>(),
                                 p.at("output").get<int>(),
                                 p.at("diag").get<std::vector<int>>()});
    try {
      validate_realization(r);
    } catch (const structural_error& e) {
      fail(std::string("realization: ") + e.what());
    }
    return r;
  });
}

namespace {

json inequality_object(const TemporalInequality& ineq) {
  json terms = json::array();
  for (const auto& [key, coeff] : ineq.terms)
    terms.push_back(
        json{{"inputs", decode_inputs(ineq.scenario, key.first)},
             {"outputs", decode_outputs(ineq.scenario, key.second)},
             {"coeff", coeff}});
  json caps = json::object();
  for (const auto& [dimension, value] : ineq.dimension_caps)
    caps[std::to_string(dimension)] = value;
  return json{{"scenario", scenario_json(ineq.scenario)},
              {"terms", terms},
              {"bounds", caps},
              {"algebraic_bound", ineq.algebraic_bound}};
}

TemporalInequality inequality_from_object(const json& j) {
  TemporalInequality ineq;
  ineq.scenario = scenario_from(j.at("scenario"));
  for (const json& t : j.at("terms")) {
    try {
      add_term(ineq, t.at("inputs").get<std::vector<int>>(),
               t.at("outputs").get<std::vector<int>>(),
               t.at("coeff").get<double>());
    } catch (const structural_error& e) {
      fail(std::string("inequality: ") + e.what());
    }
  }
  for (const auto& [key, value] : j.at("bounds").items()) {
    int dimension = parse_int_token(key, "inequality bound dimension");
    if (dimension < 1) fail("inequality: bound dimension must be positive");
    ineq.dimension_caps[dimension] = value.get<double>();
  }
  double declared = j.at("algebraic_bound").get<double>();
  if (std::abs(declared - ineq.algebraic_bound) > 1e-9)
    fail("inequality: algebraic_bound " + format_double(declared) +
         " does not match the coefficient sum " +
         format_double(ineq.algebraic_bound));
  return ineq;
}

}  // namespace

std::string inequality_to_json(const TemporalInequality& ineq) {
  return dump(inequality_object(ineq));
}

TemporalInequality inequality_from_json(const std::string& text) {
  return guarded("inequality", [&] {
    return inequality_from_object(parse_json(text, "inequality"));
  });
}

std::string table_to_json(const CorrelationTable& table) {
  json entries = json::array();
  for (std::uint64_t ix = 0; ix < table.rows.size(); ++ix)
    for (const auto& [oa, p] : table.rows[ix])
      entries.push_back(
          json{{"inputs", decode_inputs(table.scenario, ix)},
               {"outputs", decode_outputs(table.scenario, oa)},
               {"p", p}});
  return dump(
      json{{"scenario", scenario_json(table.scenario)}, {"entries", entries}});
}

CorrelationTable table_from_json(const std::string& text) {
  return guarded("table", [&] {
    json j = parse_json(text, "table");
    Scenario sc = scenario_from(j.at("scenario"));
    CorrelationTable table = make_table<double>(sc);
    for (const json& e : j.at("entries")) {
      try {
        set_probability(table, e.at("inputs").get<std::vector<int>>(),
                        e.at("outputs").get<std::vector<int>>(),
                        e.at("p").get<double>());
      } catch (const structural_error& err) {
        fail(std::string("table: ") + err.what());
      }
    }
    return table;
  });
}

json orbit_report_object(const OrbitReport& report) {
  json components = json::array();
  for (const OrbitComponent& c : report.components)
    components.push_back(json{{"name", c.name}, {"value", to_decimal(c.value)}});
  json representatives = json::array();
  for (const StrategyTree& tree : report.representatives)
    representatives.push_back(nodes_json(tree));
  return json{{"scenario", scenario_json(report.scenario)},
              {"mode", mode_to_string(report.mode)},
              {"variant", variant_to_string(report.variant)},
              {"class_count", to_decimal(report.class_count)},
              {"components", components},
              {"representatives", representatives}};
}

std::string orbit_report_to_json(const OrbitReport& report) {
  return dump(orbit_report_object(report));
}

std::string classify_json(const OrbitReport& report, bool checked,
                          const BigCount& brute, bool match) {
  json j = orbit_report_object(report);
  if (checked) {
    j["brute_force_count"] = to_decimal(brute);
    j["match"] = match;
  }
  return dump(j);
}

std::string evaluation_to_json(double value, const TemporalInequality& ineq,
                               const std::vector<std::string>& violations) {
  json caps = json::object();
  for (const auto& [dimension, cap] : ineq.dimension_caps)
    caps[std::to_string(dimension)] = cap;
  return dump(json{{"value", value},
                   {"algebraic_bound", ineq.algebraic_bound},
                   {"dimension_caps", caps},
                   {"violations", violations}});
}

OrbitReport orbit_report_from_json(const std::string& text) {
  return guarded("orbit report", [&] {
    json j = parse_json(text, "orbit report");
    OrbitReport report;
    report.scenario = scenario_from(j.at("scenario"));
    report.mode = mode_from_string(j.at("mode").get<std::string>());
    report.variant = variant_from_string(j.at("variant").get<std::string>());
    report.class_count = parse_decimal(j.at("class_count").get<std::string>());
    for (const json& c : j.at("components"))
      report.components.push_back(
          OrbitComponent{c.at("name").get<std::string>(),
                         parse_decimal(c.at("value").get<std::string>())});
    for (const json& nodes : j.at("representatives"))
      report.representatives.push_back(tree_from(report.scenario, nodes));
    return report;
  });
}

std::string bound_report_to_json(const BoundReport& report) {
  return dump(json{
      {"scenario", scenario_json(report.scenario)},
      {"max_j", report.max_j},
      {"main_lower_bound", to_decimal(report.main_lower_bound)},
      {"improved_k", report.improved_k},
      {"improved_lower_bound", to_decimal(report.improved_lower_bound)},
      {"closed_form_value", report.closed_form_value},
      {"corrected_closed_form", report.corrected_closed_form},
      {"closed_form_consistent", report.closed_form_consistent}});
}

BoundReport bound_report_from_json(const std::string& text) {
  return guarded("bound report", [&] {
    json j = parse_json(text, "bound report");
    BoundReport report;
    report.scenario = scenario_from(j.at("scenario"));
    report.max_j = j.at("max_j").get<int>();
    report.main_lower_bound =
        parse_decimal(j.at("main_lower_bound").get<std::string>());
    report.improved_k = j.at("improved_k").get<int>();
    report.improved_lower_bound =
        parse_decimal(j.at("improved_lower_bound").get<std::string>());
    report.closed_form_value = j.at("closed_form_value").get<double>();
    report.corrected_closed_form =
        j.at("corrected_closed_form").get<double>();
    report.closed_form_consistent =
        j.at("closed_form_consistent").get<bool>();
    return report;
  });
}

std::string plan_to_json(const CompositionPlan& plan) {
  return dump(json{{"block_length", plan.block_length},
                   {"periods", plan.periods},
                   {"assignment", plan.assignment}});
}

CompositionPlan plan_from_json(const std::string& text) {
  return guarded("plan", [&] {
    json j = parse_json(text, "plan");
    CompositionPlan plan;
    plan.block_length = j.at("block_length").get<int>();
    plan.periods = j.at("periods").get<int>();
    plan.assignment =
        j.at("assignment").get<std::vector<std::vector<int>>>();
    return plan;
  });
}

std::string blocks_to_json(const std::vector<CompositionBlock>& blocks) {
  json rows = json::array();
  for (const CompositionBlock& b : blocks)
    rows.push_back(json{{"inequality", inequality_object(b.inequality)},
                        {"tree", nodes_json(b.tree)},
                        {"bound", b.bound}});
  return dump(json{{"blocks", rows}});
}

std::vector<CompositionBlock> blocks_from_json(const std::string& text) {
  return guarded("blocks", [&] {
    json j = parse_json(text, "blocks");
    std::vector<CompositionBlock> blocks;
    for (const json& row : j.at("blocks")) {
      CompositionBlock b;
      b.inequality = inequality_from_object(row.at("inequality"));
      b.tree = tree_from(b.inequality.scenario, row.at("tree"));
      b.bound = row.at("bound").get<double>();
      blocks.push_back(std::move(b));
    }
    return blocks;
  });
}

std::string composed_to_json(const ComposedResult& composed) {
  return dump(json{{"inequality", inequality_object(composed.inequality)},
                   {"tree", nodes_json(composed.tree)},
                   {"bound", composed.bound}});
}

ComposedResult composed_from_json(const std::string& text) {
  return guarded("composed", [&] {
    json j = parse_json(text, "composed");
    ComposedResult composed;
    composed.inequality = inequality_from_object(j.at("inequality"));
    composed.tree = tree_from(composed.inequality.scenario, j.at("tree"));
    composed.bound = j.at("bound").get<double>();
    return composed;
  });
}

std::string instrument_set_to_json(const InstrumentSet<Cx>& set) {
  json instruments = json::array();
  for (const Instrument<Cx>& inst : set.instruments) {
    json lists = json::array();
    for (const auto& list : inst.kraus) {
      json operators = json::array();
      for (const DenseMatrix<Cx>& k : list) operators.push_back(matrix_json(k));
      lists.push_back(operators);
    }
    instruments.push_back(json{{"setting", inst.setting}, {"kraus", lists}});
  }
  return dump(json{{"outcomes", set.outcomes},
                   {"settings", set.settings},
                   {"dimension", set.dimension},
                   {"instruments", instruments}});
}

InstrumentSet<Cx> instrument_set_from_json(const std::string& text) {
  return guarded("instrument set", [&] {
    json j = parse_json(text, "instrument set");
    InstrumentSet<Cx> set;
    set.outcomes = j.at("outcomes").get<int>();
    set.settings = j.at("settings").get<int>();
    set.dimension = j.at("dimension").get<int>();
    for (const json& i : j.at("instruments")) {
      Instrument<Cx> inst;
      inst.setting = i.at("setting").get<int>();
      for (const json& operators : i.at("kraus")) {
        std::vector<DenseMatrix<Cx>> list;
        for (const json& m : operators)
          list.push_back(matrix_from(m, set.dimension, set.dimension));
        inst.kraus.push_back(std::move(list));
      }
      set.instruments.push_back(std::move(inst));
    }
    try {
      validate_instrument_set(set);
    } catch (const structural_error& e) {
      fail(std::string("instrument set: ") + e.what());
    }
    return set;
  });
}

std::string state_to_json(const QuantumState<Cx>& state) {
  return dump(json{{"dimension", static_cast<int>(state.rho.rows())},
                   {"rho", matrix_json(state.rho)}});
}

QuantumState<Cx> state_from_json(const std::string& text) {
  return guarded("state", [&] {
    json j = parse_json(text, "state");
    int dimension = j.at("dimension").get<int>();
    if (dimension < 1) fail("state: dimension must be positive");
    QuantumState<Cx> state;
    state.rho = matrix_from(j.at("rho"), dimension, dimension);
    try {
      validate_state(state, dimension);
    } catch (const structural_error& e) {
      fail(std::string("state: ") + e.what());
    }
    return state;
  });
}

std::string enumeration_to_json(const Enumeration& e) {
  json trees = json::array();
  for (const StrategyTree& tree : e.trees) trees.push_back(nodes_json(tree));
  return dump(json{{"scenario", scenario_json(e.scenario)},
                   {"total", to_decimal(e.total)},
                   {"trees", trees}});
}

Enumeration enumeration_from_json(const std::string& text) {
  return guarded("enumeration", [&] {
    json j = parse_json(text, "enumeration");
    Enumeration e;
    e.scenario = scenario_from(j.at("scenario"));
    e.total = parse_decimal(j.at("total").get<std::string>());
    for (const json& nodes : j.at("trees"))
      e.trees.push_back(tree_from(e.scenario, nodes));
    return e;
  });
}

std::string aot_report_to_json(const AotReport& report) {
  json violations = json::array();
  for (const AotViolation& v : report.violations)
    violations.push_back(json{{"kind", v.kind},
                              {"detail", v.detail},
                              {"lhs", v.lhs},
                              {"rhs", v.rhs}});
  return dump(json{{"pass", report.pass}, {"violations", violations}});
}

namespace {

json robustness_report_object(const RobustnessReport& report) {
  return json{{"length", report.length},
              {"from_step", report.from_step},
              {"certified_eps", report.certified_eps},
              {"sequences_checked", report.sequences_checked},
              {"violations", report.violations},
              {"max_deviation", report.max_deviation},
              {"max_ratio", report.max_ratio},
              {"worst_inputs", report.worst_inputs},
              {"worst_outputs", report.worst_outputs},
              {"worst_bound", report.worst_bound},
              {"worst_p", report.worst_p},
              {"worst_p_tilde", report.worst_p_tilde}};
}

}  // namespace

std::string robustness_report_to_json(const RobustnessReport& report) {
  return dump(robustness_report_object(report));
}

std::string assignment_to_json(const StateAssignment& assignment) {
  return dump(json{{"dimension", assignment.dimension},
                   {"states", assignment.state_of_node},
                   {"defining_nodes", assignment.defining_node}});
}

std::string robustness_run_to_json(const RobustnessRun& run) {
  return dump(json{{"scenario", scenario_json(run.scenario)},
                   {"dimension", run.dimension},
                   {"from_step", run.from_step},
                   {"eps", run.eps},
                   {"trials", run.trials},
                   {"seed", run.seed},
                   {"violations", run.violations},
                   {"max_deviation", run.max_deviation},
                   {"max_ratio", run.max_ratio},
                   {"worst", robustness_report_object(run.worst)}});
}

std::string distribution_to_json(
    const std::vector<int>& inputs,
    const std::vector<std::pair<std::vector<int>, double>>& distribution) {
  json rows = json::array();
  for (const auto& [outputs, p] : distribution)
    rows.push_back(json{{"outputs", outputs}, {"p", p}});
  return dump(json{{"inputs", inputs}, {"distribution", rows}});
}

std::string classify_csv(const OrbitReport& formula, const BigCount& brute,
                         bool match) {
  std::string out = "scenario,mode,formula_count,brute_force_count,match\n";
  out += format_scenario(formula.scenario) + "," +
         mode_to_string(formula.mode) + "," + to_decimal(formula.class_count) +
         "," + to_decimal(brute) + "," + (match ? "true" : "false") + "\n";
  return out;
}

std::string enumeration_to_csv(const Enumeration& e) {
  std::string out = "index,nodes\n";
  for (std::size_t i = 0; i < e.trees.size(); ++i) {
    out += to_decimal(tree_index(e.trees[i])) + ",";
    const StrategyTree& tree = e.trees[i];
    for (std::size_t n = 0; n < tree.nodes.size(); ++n) {
      if (n > 0) out += "|";
      const OutcomeTuple& t = tree.nodes[n];
      for (std::size_t s = 0; s < t.size(); ++s) {
        if (s > 0) out += " ";
        out += std::to_string(t[s]);
      }
    }
    out += "\n";
  }
  return out;
}

std::string table_to_csv(const CorrelationTable& table) {
  std::string out = "inputs,outputs,p\n";
  for (std::uint64_t ix = 0; ix < table.rows.size(); ++ix) {
    for (const auto& [oa, p] : table.rows[ix]) {
      std::vector<int> xs = decode_inputs(table.scenario, ix);
      std::vector<int> as = decode_outputs(table.scenario, oa);
      std::string xfield;
      for (std::size_t i = 0; i < xs.size(); ++i)
        xfield += (i ? " " : "") + std::to_string(xs[i]);
      std::string afield;
      for (std::size_t i = 0; i < as.size(); ++i)
        afield += (i ? " " : "") + std::to_string(as[i]);
      out += xfield + "," + afield + "," + format_double(p) + "\n";
    }
  }
  return out;
}

}  // namespace aot
