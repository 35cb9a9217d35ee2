#pragma once

// Choi matrices, a trace-norm bracket on the diamond distance, convex
// perturbations with an analytically certified distance, and the empirical
// check that perturbing steps from_step..l of a sequence shifts every
// sequence probability by at most (l-1) * eps * p_first.

#include <complex>
#include <vector>

#include "aot/instruments.hpp"

namespace aot {

// (1/d) sum_K vec(K) vec(K)^dagger with vec(K)[r*d + c] = K(r, c); the Choi
// state of the map in the normalized maximally-entangled convention. Trace 1
// for channels, <= 1 for trace-nonincreasing CP maps.
template <class Scalar>
DenseMatrix<Scalar> choi_matrix(const std::vector<DenseMatrix<Scalar>>& kraus) {
  if (kraus.empty()) throw structural_error("Choi matrix of an empty map");
  Eigen::Index d = kraus.front().rows();
  for (const auto& k : kraus)
    if (k.rows() != d || k.cols() != d)
      throw structural_error("Choi matrix needs square same-size Kraus operators");
  DenseMatrix<Scalar> j = DenseMatrix<Scalar>::Zero(d * d, d * d);
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> v(d * d);
  for (const auto& k : kraus) {
    for (Eigen::Index r = 0; r < d; ++r)
      for (Eigen::Index c = 0; c < d; ++c) v(r * d + c) = k(r, c);
    j += v * v.adjoint();
  }
  return j / Scalar(static_cast<int>(d));
}

// Sum of absolute eigenvalues of a Hermitian matrix.
double trace_norm(const DenseMatrix<std::complex<double>>& hermitian);

struct DiamondBounds {
  double lower = 0.0;
  double upper = 0.0;  // dimension * lower
};

// Bracket on the diamond distance between two CP maps: the normalized Choi
// difference in trace norm from below, times the dimension from above.
DiamondBounds diamond_distance_bounds(
    const std::vector<DenseMatrix<std::complex<double>>>& map_a,
    const std::vector<DenseMatrix<std::complex<double>>>& map_b);

struct PerturbedInstruments {
  InstrumentSet<std::complex<double>> instruments;
  // Upper bound 2 * epsilon on the per-outcome diamond distance between the
  // nominal and perturbed maps (triangle inequality on the two scaled parts).
  double certified_eps = 0.0;
};

// Mixes each outcome map as (1 - eps) * nominal + eps * alternative by
// concatenating the Kraus lists scaled by sqrt(1 - eps) and sqrt(eps).
PerturbedInstruments perturb_convex(
    const InstrumentSet<std::complex<double>>& nominal, double epsilon,
    const InstrumentSet<std::complex<double>>& alternative);

struct RobustnessReport {
  int length = 0;
  int from_step = 2;
  double certified_eps = 0.0;
  std::uint64_t sequences_checked = 0;
  std::uint64_t violations = 0;
  double max_deviation = 0.0;
  double max_ratio = 0.0;  // deviation / bound over sequences with bound > 0
  std::vector<int> worst_inputs;
  std::vector<int> worst_outputs;
  double worst_bound = 0.0;
  double worst_p = 0.0;
  double worst_p_tilde = 0.0;
};

// Compares p (all steps nominal) against p~ (steps from_step..L perturbed)
// for every sequence of the scenario. For from_step >= 2 the asserted bound
// is (L-1) * certified_eps * p_first with the first step shared; from_step=1
// falls back to the weaker bound L * certified_eps.
RobustnessReport robustness_check(
    const QuantumState<std::complex<double>>& state,
    const InstrumentSet<std::complex<double>>& nominal,
    const InstrumentSet<std::complex<double>>& perturbed, double certified_eps,
    const Scenario& sc, int from_step = 2);

}  // namespace aot
