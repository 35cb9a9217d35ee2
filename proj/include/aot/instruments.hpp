#pragma once

// Sequential-measurement simulator: quantum instruments (one list of Kraus
// operators per outcome), their action on density matrices, and the
// correlations they generate. Everything is templated on the scalar so the
// same code runs in floating point (std::complex<double>) and in exact
// rational arithmetic (aot::Rational) for the 0/1 machines that realize
// extreme points.

#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "aot/correlation.hpp"
#include "aot/errors.hpp"
#include "aot/rational.hpp"
#include "aot/realization.hpp"
#include "aot/scenario.hpp"

namespace aot {

template <class Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <class Scalar>
struct ScalarTraits;

template <>
struct ScalarTraits<std::complex<double>> {
  using Real = double;
  static constexpr bool exact = false;
  static Real real_part(const std::complex<double>& v) { return v.real(); }
  static double magnitude(const std::complex<double>& v) {
    return std::abs(v);
  }
};

template <>
struct ScalarTraits<Rational> {
  using Real = Rational;
  static constexpr bool exact = true;
  static Real real_part(const Rational& v) { return v; }
  static Rational magnitude(const Rational& v) { return abs(v); }
};

template <class Scalar>
struct Instrument {
  int setting = 1;
  std::vector<std::vector<DenseMatrix<Scalar>>> kraus;  // kraus[outcome][j]
};

template <class Scalar>
struct InstrumentSet {
  int outcomes = 2;
  int settings = 2;
  int dimension = 1;
  std::vector<Instrument<Scalar>> instruments;  // instruments[x - 1]
};

template <class Scalar>
struct QuantumState {
  DenseMatrix<Scalar> rho;
};

template <class Scalar>
bool matrix_is_zero(const DenseMatrix<Scalar>& m) {
  for (Eigen::Index c = 0; c < m.cols(); ++c)
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      if (m(r, c) != Scalar(0)) return false;
  return true;
}

template <class Scalar>
double max_abs_difference(const DenseMatrix<Scalar>& a,
                          const DenseMatrix<Scalar>& b) {
  double worst = 0.0;
  for (Eigen::Index c = 0; c < a.cols(); ++c)
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
      double d = static_cast<double>(
          ScalarTraits<Scalar>::magnitude(Scalar(a(r, c) - b(r, c))));
      if (d > worst) worst = d;
    }
  return worst;
}

template <class Scalar>
DenseMatrix<Scalar> apply_map(const std::vector<DenseMatrix<Scalar>>& kraus,
                              const DenseMatrix<Scalar>& rho) {
  DenseMatrix<Scalar> out =
      DenseMatrix<Scalar>::Zero(rho.rows(), rho.cols());
  for (const auto& k : kraus) out += k * rho * k.adjoint();
  return out;
}

template <class Scalar>
DenseMatrix<Scalar> instrument_effect(
    const std::vector<DenseMatrix<Scalar>>& kraus, int dimension) {
  DenseMatrix<Scalar> e = DenseMatrix<Scalar>::Zero(dimension, dimension);
  for (const auto& k : kraus) e += k.adjoint() * k;
  return e;
}

template <class Scalar>
void validate_state(const QuantumState<Scalar>& state, int dimension,
                    double tolerance = 1e-9) {
  if (state.rho.rows() != dimension || state.rho.cols() != dimension)
    throw structural_error("state dimension does not match the instruments");
  using Traits = ScalarTraits<Scalar>;
  Scalar tr = state.rho.trace();
  if constexpr (Traits::exact) {
    if (tr != Scalar(1)) throw structural_error("state trace is not one");
  } else {
    if (std::abs(Traits::real_part(tr) - 1.0) > tolerance ||
        max_abs_difference<Scalar>(state.rho, state.rho.adjoint()) > tolerance)
      throw structural_error("state is not a unit-trace Hermitian matrix");
    Eigen::SelfAdjointEigenSolver<DenseMatrix<Scalar>> solver(state.rho);
    if (solver.eigenvalues().minCoeff() < -tolerance)
      throw structural_error("state has a negative eigenvalue");
  }
}

template <class Scalar>
void validate_instrument_set(const InstrumentSet<Scalar>& set,
                             double tolerance = 1e-9) {
  if (set.outcomes < 1 || set.settings < 1 || set.dimension < 1)
    throw structural_error("instrument set shape must be positive");
  if (set.instruments.size() != static_cast<std::size_t>(set.settings))
    throw structural_error("instrument set needs one instrument per setting");
  int d = set.dimension;
  for (int x = 1; x <= set.settings; ++x) {
    const auto& inst = set.instruments[static_cast<std::size_t>(x - 1)];
    if (inst.setting != x)
      throw structural_error("instrument settings must be 1..S in order");
    if (inst.kraus.size() != static_cast<std::size_t>(set.outcomes))
      throw structural_error("instrument needs one Kraus list per outcome");
    DenseMatrix<Scalar> total = DenseMatrix<Scalar>::Zero(d, d);
    for (const auto& list : inst.kraus) {
      for (const auto& k : list) {
        if (k.rows() != d || k.cols() != d)
          throw structural_error("Kraus operator has the wrong dimension");
      }
      DenseMatrix<Scalar> effect = instrument_effect(list, d);
      if constexpr (!ScalarTraits<Scalar>::exact) {
        Eigen::SelfAdjointEigenSolver<DenseMatrix<Scalar>> solver(effect);
        if (solver.eigenvalues().minCoeff() < -tolerance)
          throw structural_error("instrument effect is not positive");
      }
      total += effect;
    }
    DenseMatrix<Scalar> identity = DenseMatrix<Scalar>::Identity(d, d);
    if constexpr (ScalarTraits<Scalar>::exact) {
      if (total != identity)
        throw structural_error("instrument maps do not sum to a channel");
    } else {
      if (max_abs_difference<Scalar>(total, identity) > tolerance)
        throw structural_error("instrument maps do not sum to a channel");
    }
  }
}

template <class Scalar>
typename ScalarTraits<Scalar>::Real sequence_probability(
    const QuantumState<Scalar>& state, const InstrumentSet<Scalar>& set,
    const std::vector<int>& inputs, const std::vector<int>& outputs) {
  if (inputs.size() != outputs.size())
    throw structural_error("input and output sequences differ in length");
  if (state.rho.rows() != set.dimension || state.rho.cols() != set.dimension)
    throw structural_error("state dimension does not match the instruments");
  DenseMatrix<Scalar> rho = state.rho;
  for (std::size_t t = 0; t < inputs.size(); ++t) {
    int x = inputs[t];
    int a = outputs[t];
    if (x < 1 || x > set.settings)
      throw structural_error("input " + std::to_string(x) +
                             " outside 1..S at step " + std::to_string(t + 1));
    if (a < 0 || a >= set.outcomes)
      throw structural_error("output " + std::to_string(a) +
                             " outside 0..O-1 at step " + std::to_string(t + 1));
    rho = apply_map(
        set.instruments[static_cast<std::size_t>(x - 1)]
            .kraus[static_cast<std::size_t>(a)],
        rho);
  }
  return ScalarTraits<Scalar>::real_part(rho.trace());
}

namespace detail {

template <class Scalar, class Table>
void correlation_walk(const InstrumentSet<Scalar>& set, const Scenario& sc,
                      std::uint64_t ix, const std::vector<int>& inputs, int t,
                      std::uint64_t ia, const DenseMatrix<Scalar>& rho,
                      Table& table) {
  if (t == sc.length) {
    set_probability(table, ix, ia,
                    ScalarTraits<Scalar>::real_part(rho.trace()));
    return;
  }
  int x = inputs[static_cast<std::size_t>(t)];
  const auto& inst = set.instruments[static_cast<std::size_t>(x - 1)];
  for (int a = 0; a < sc.outcomes; ++a) {
    DenseMatrix<Scalar> next =
        apply_map(inst.kraus[static_cast<std::size_t>(a)], rho);
    if (matrix_is_zero(next)) continue;
    correlation_walk(set, sc, ix, inputs, t + 1,
                     ia * static_cast<std::uint64_t>(sc.outcomes) +
                         static_cast<std::uint64_t>(a),
                     next, table);
  }
}

}  // namespace detail

// Dense sweep over all input sequences; zero-probability branches are pruned
// exactly and never stored.
template <class Scalar>
BasicCorrelationTable<typename ScalarTraits<Scalar>::Real> correlation_table(
    const QuantumState<Scalar>& state, const InstrumentSet<Scalar>& set,
    const Scenario& sc) {
  if (sc.outcomes != set.outcomes || sc.settings != set.settings)
    throw structural_error("scenario shape does not match the instruments");
  if (state.rho.rows() != set.dimension || state.rho.cols() != set.dimension)
    throw structural_error("state dimension does not match the instruments");
  auto table = make_table<typename ScalarTraits<Scalar>::Real>(sc);
  for (std::uint64_t ix = 0; ix < input_space_size(sc); ++ix) {
    std::vector<int> inputs = decode_inputs(sc, ix);
    detail::correlation_walk(set, sc, ix, inputs, 0, 0, state.rho, table);
  }
  return table;
}

// The synthesized machine as a literal instrument set: Kraus operator
// |next><state| for every transition, grouped under the produced output.
template <class Scalar>
InstrumentSet<Scalar> instruments_from_realization(const Realization& r) {
  validate_realization(r);
  InstrumentSet<Scalar> set;
  set.outcomes = r.scenario.outcomes;
  set.settings = r.scenario.settings;
  set.dimension = r.dimension;
  set.instruments.resize(static_cast<std::size_t>(set.settings));
  for (int x = 1; x <= set.settings; ++x) {
    auto& inst = set.instruments[static_cast<std::size_t>(x - 1)];
    inst.setting = x;
    inst.kraus.assign(static_cast<std::size_t>(set.outcomes), {});
  }
  for (const auto& k : r.kraus) {
    DenseMatrix<Scalar> m =
        DenseMatrix<Scalar>::Zero(r.dimension, r.dimension);
    m(k.row, k.col) = Scalar(1);
    set.instruments[static_cast<std::size_t>(k.setting - 1)]
        .kraus[static_cast<std::size_t>(k.output)]
        .push_back(std::move(m));
  }
  return set;
}

template <class Scalar>
QuantumState<Scalar> state_from_realization(const Realization& r) {
  QuantumState<Scalar> state;
  state.rho = DenseMatrix<Scalar>::Zero(r.dimension, r.dimension);
  state.rho(r.initial - 1, r.initial - 1) = Scalar(1);
  return state;
}

template <class Scalar>
QuantumState<Scalar> maximally_mixed_state(int dimension) {
  QuantumState<Scalar> state;
  state.rho = DenseMatrix<Scalar>::Identity(dimension, dimension);
  state.rho /= Scalar(dimension);
  return state;
}

// Haar-random isometry from C^d into (outcomes * kraus_per_outcome) blocks of
// C^d, via QR of a Ginibre matrix with the phase convention that makes R's
// diagonal real positive; splitting the blocks yields a valid instrument.
InstrumentSet<std::complex<double>> random_instrument_set(
    int outcomes, int settings, int dimension, int kraus_per_outcome,
    std::mt19937_64& rng);

QuantumState<std::complex<double>> random_pure_state(int dimension,
                                                     std::mt19937_64& rng);

}  // namespace aot
