#include "aot/maximize.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "aot/parallel.hpp"

namespace aot {

namespace {

using Cplx = std::complex<double>;
using CMat = DenseMatrix<Cplx>;

std::uint64_t mix64(std::uint64_t v) {
  v += 0x9e3779b97f4a7c15ULL;
  v = (v ^ (v >> 30)) * 0xbf58476d1ce4e5b9ULL;
  v = (v ^ (v >> 27)) * 0x94d049bb133111ebULL;
  return v ^ (v >> 31);
}

// Deterministic d-state machine with flat tables indexed by
// state * S + (setting - 1); states are 0-based here.
struct Machine {
  int states = 1;
  int initial = 0;
  std::vector<int> output;
  std::vector<int> next;
};

double machine_value(const TemporalInequality& ineq, const Machine& m) {
  const Scenario& sc = ineq.scenario;
  double value = 0.0;
  for (const auto& [key, coeff] : ineq.terms) {
    std::vector<int> xs = decode_inputs(sc, key.first);
    std::vector<int> as = decode_outputs(sc, key.second);
    int state = m.initial;
    bool match = true;
    for (std::size_t t = 0; t < xs.size(); ++t) {
      std::size_t slot = static_cast<std::size_t>(state) *
                             static_cast<std::size_t>(sc.settings) +
                         static_cast<std::size_t>(xs[t] - 1);
      if (m.output[slot] != as[t]) {
        match = false;
        break;
      }
      state = m.next[slot];
    }
    if (match) value += coeff;
  }
  return value;
}

double machine_table_count(int outcomes, int states, int slots) {
  return std::pow(static_cast<double>(outcomes), slots) *
         std::pow(static_cast<double>(states), slots) *
         static_cast<double>(states);
}

Machine exhaustive_best_machine(const TemporalInequality& ineq, int states) {
  int settings = ineq.scenario.settings;
  int outcomes = ineq.scenario.outcomes;
  int slots = states * settings;
  Machine m;
  m.states = states;
  m.output.assign(static_cast<std::size_t>(slots), 0);
  m.next.assign(static_cast<std::size_t>(slots), 0);
  Machine best = m;
  double best_value = machine_value(ineq, best);

  // Odometer over output tables, successor tables, and the initial state.
  while (true) {
    for (m.initial = 0; m.initial < states; ++m.initial) {
      double v = machine_value(ineq, m);
      if (v > best_value) {
        best_value = v;
        best = m;
      }
    }
    int i = 0;
    while (i < slots && m.next[static_cast<std::size_t>(i)] == states - 1)
      m.next[static_cast<std::size_t>(i++)] = 0;
    if (i < slots) {
      ++m.next[static_cast<std::size_t>(i)];
      continue;
    }
    i = 0;
    while (i < slots && m.output[static_cast<std::size_t>(i)] == outcomes - 1)
      m.output[static_cast<std::size_t>(i++)] = 0;
    if (i >= slots) break;
    ++m.output[static_cast<std::size_t>(i)];
  }
  return best;
}

Machine climbed_machine(const TemporalInequality& ineq, int states,
                        std::mt19937_64& rng, int passes) {
  int settings = ineq.scenario.settings;
  int outcomes = ineq.scenario.outcomes;
  int slots = states * settings;
  Machine m;
  m.states = states;
  m.initial = static_cast<int>(rng() % static_cast<std::uint64_t>(states));
  m.output.resize(static_cast<std::size_t>(slots));
  m.next.resize(static_cast<std::size_t>(slots));
  for (int i = 0; i < slots; ++i) {
    m.output[static_cast<std::size_t>(i)] =
        static_cast<int>(rng() % static_cast<std::uint64_t>(outcomes));
    m.next[static_cast<std::size_t>(i)] =
        static_cast<int>(rng() % static_cast<std::uint64_t>(states));
  }
  double value = machine_value(ineq, m);
  for (int pass = 0; pass < passes; ++pass) {
    bool improved = false;
    auto try_field = [&](int& field, int range) {
      int keep = field;
      for (int candidate = 0; candidate < range; ++candidate) {
        if (candidate == keep) continue;
        field = candidate;
        double v = machine_value(ineq, m);
        if (v > value) {
          value = v;
          keep = candidate;
          improved = true;
        }
      }
      field = keep;
    };
    try_field(m.initial, states);
    for (int i = 0; i < slots; ++i) {
      try_field(m.output[static_cast<std::size_t>(i)], outcomes);
      try_field(m.next[static_cast<std::size_t>(i)], states);
    }
    if (!improved) break;
  }
  return m;
}

InstrumentSet<Cplx> machine_instruments(const Scenario& sc, const Machine& m) {
  InstrumentSet<Cplx> set;
  set.outcomes = sc.outcomes;
  set.settings = sc.settings;
  set.dimension = m.states;
  set.instruments.resize(static_cast<std::size_t>(sc.settings));
  for (int x = 1; x <= sc.settings; ++x) {
    auto& inst = set.instruments[static_cast<std::size_t>(x - 1)];
    inst.setting = x;
    inst.kraus.assign(static_cast<std::size_t>(sc.outcomes), {});
    for (int j = 0; j < m.states; ++j) {
      std::size_t slot = static_cast<std::size_t>(j) *
                             static_cast<std::size_t>(sc.settings) +
                         static_cast<std::size_t>(x - 1);
      CMat k = CMat::Zero(m.states, m.states);
      k(m.next[slot], j) = Cplx(1.0, 0.0);
      inst.kraus[static_cast<std::size_t>(m.output[slot])].push_back(
          std::move(k));
    }
  }
  return set;
}

double strategy_value(const TemporalInequality& ineq,
                      const QuantumState<Cplx>& state,
                      const InstrumentSet<Cplx>& set) {
  const Scenario& sc = ineq.scenario;
  double value = 0.0;
  for (const auto& [key, coeff] : ineq.terms) {
    value += coeff * sequence_probability(state, set,
                                          decode_inputs(sc, key.first),
                                          decode_outputs(sc, key.second));
  }
  return value;
}

// Hermitian operator H with tr[rho H] = value(rho, set): each term's POVM
// chain pulled back to the initial time.
CMat value_operator(const TemporalInequality& ineq,
                    const InstrumentSet<Cplx>& set) {
  const Scenario& sc = ineq.scenario;
  int d = set.dimension;
  CMat h = CMat::Zero(d, d);
  for (const auto& [key, coeff] : ineq.terms) {
    std::vector<int> xs = decode_inputs(sc, key.first);
    std::vector<int> as = decode_outputs(sc, key.second);
    CMat m = CMat::Identity(d, d);
    for (std::size_t t = xs.size(); t-- > 0;) {
      const auto& kraus = set.instruments[static_cast<std::size_t>(xs[t] - 1)]
                              .kraus[static_cast<std::size_t>(as[t])];
      CMat pulled = CMat::Zero(d, d);
      for (const auto& k : kraus) pulled += k.adjoint() * m * k;
      m = std::move(pulled);
    }
    h += coeff * m;
  }
  return (h + CMat(h.adjoint())) / 2.0;
}

QuantumState<Cplx> best_state_for(const CMat& h) {
  Eigen::SelfAdjointEigenSolver<CMat> solver(h);
  Eigen::Index top = h.rows() - 1;
  Eigen::Matrix<Cplx, Eigen::Dynamic, 1> v = solver.eigenvectors().col(top);
  QuantumState<Cplx> state;
  state.rho = v * v.adjoint();
  return state;
}

CMat stack_instrument(const Instrument<Cplx>& inst, int d) {
  Eigen::Index rows = 0;
  for (const auto& list : inst.kraus)
    rows += static_cast<Eigen::Index>(list.size()) * d;
  CMat v(rows, d);
  Eigen::Index at = 0;
  for (const auto& list : inst.kraus)
    for (const auto& k : list) {
      v.middleRows(at, d) = k;
      at += d;
    }
  return v;
}

void unstack_instrument(Instrument<Cplx>& inst, const CMat& v, int d) {
  Eigen::Index at = 0;
  for (auto& list : inst.kraus)
    for (auto& k : list) {
      k = v.middleRows(at, d);
      at += d;
    }
}

CMat reorthonormalize(const CMat& v, std::mt19937_64& rng, double sigma) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  CMat g(v.rows(), v.cols());
  for (Eigen::Index c = 0; c < v.cols(); ++c)
    for (Eigen::Index r = 0; r < v.rows(); ++r)
      g(r, c) = Cplx(gauss(rng), gauss(rng)) / std::sqrt(2.0);
  CMat candidate = v + sigma * g;
  Eigen::HouseholderQR<CMat> qr(candidate);
  CMat q = qr.householderQ() * CMat::Identity(v.rows(), v.cols());
  CMat r = qr.matrixQR().topRows(v.cols()).triangularView<Eigen::Upper>();
  for (Eigen::Index c = 0; c < v.cols(); ++c) {
    Cplx diag = r(c, c);
    double mag = std::abs(diag);
    q.col(c) *= mag > 0.0 ? std::conj(diag / mag) : Cplx(1.0, 0.0);
  }
  return q;
}

struct RestartResult {
  double value = 0.0;
  InstrumentSet<Cplx> instruments;
  QuantumState<Cplx> state;
};

RestartResult seesaw_restart(const TemporalInequality& ineq,
                             const MaximizeOptions& options,
                             std::uint64_t restart_seed) {
  std::mt19937_64 rng(restart_seed);
  RestartResult best;
  InstrumentSet<Cplx> set = random_instrument_set(
      ineq.scenario.outcomes, ineq.scenario.settings, options.dimension,
      options.kraus_per_outcome, rng);
  QuantumState<Cplx> state = best_state_for(value_operator(ineq, set));
  best.value = strategy_value(ineq, state, set);
  best.instruments = set;
  best.state = state;

  for (int it = 0; it < options.iterations; ++it) {
    double sigma = std::max(
        0.02, 0.5 * std::exp(-3.0 * it / std::max(1, options.iterations)));
    for (int x = 1; x <= ineq.scenario.settings; ++x) {
      auto& inst = set.instruments[static_cast<std::size_t>(x - 1)];
      CMat stacked = stack_instrument(inst, options.dimension);
      CMat proposal = reorthonormalize(stacked, rng, sigma);
      Instrument<Cplx> keep = inst;
      unstack_instrument(inst, proposal, options.dimension);
      double v = strategy_value(ineq, state, set);
      if (v < best.value) {
        inst = std::move(keep);
      }
    }
    state = best_state_for(value_operator(ineq, set));
    double v = strategy_value(ineq, state, set);
    if (v > best.value) {
      best.value = v;
      best.instruments = set;
      best.state = state;
    }
  }
  return best;
}

}  // namespace

MaximizeOutcome numeric_maximize(const TemporalInequality& ineq,
                                 const MaximizeOptions& options) {
  if (options.dimension < 1)
    throw structural_error("maximization dimension must be >= 1");
  detail::check_table_bounds(ineq.scenario);

  MaximizeOutcome outcome;
  int slots = options.dimension * ineq.scenario.settings;
  Machine best_machine;
  if (machine_table_count(ineq.scenario.outcomes, options.dimension, slots) <=
      static_cast<double>(options.machine_cap)) {
    best_machine = exhaustive_best_machine(ineq, options.dimension);
    outcome.classical_exhaustive = true;
  } else {
    std::mt19937_64 rng(mix64(options.seed));
    best_machine = climbed_machine(ineq, options.dimension, rng, 40);
    for (int r = 1; r < std::max(1, options.restarts); ++r) {
      Machine m = climbed_machine(ineq, options.dimension, rng, 40);
      if (machine_value(ineq, m) > machine_value(ineq, best_machine))
        best_machine = m;
    }
  }
  outcome.classical_value = machine_value(ineq, best_machine);

  outcome.instruments = machine_instruments(ineq.scenario, best_machine);
  outcome.state.rho = CMat::Zero(options.dimension, options.dimension);
  outcome.state.rho(best_machine.initial, best_machine.initial) =
      Cplx(1.0, 0.0);
  outcome.best_value = outcome.classical_value;

  std::vector<RestartResult> results(
      static_cast<std::size_t>(std::max(0, options.restarts)));
  parallel_for(
      results.size(),
      [&](std::size_t begin, std::size_t end) {
        for (std::size_t r = begin; r < end; ++r)
          results[r] = seesaw_restart(
              ineq, options, mix64(options.seed + 0x51ed2701u + r));
      },
      options.threads);
  for (const auto& r : results) {
    if (r.value > outcome.best_value) {
      outcome.best_value = r.value;
      outcome.instruments = r.instruments;
      outcome.state = r.state;
    }
  }
  return outcome;
}

}  // namespace aot
