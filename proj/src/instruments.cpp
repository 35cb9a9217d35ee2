#include "aot/instruments.hpp"

namespace aot {

namespace {

using Cplx = std::complex<double>;
using CMat = DenseMatrix<Cplx>;

CMat ginibre(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  CMat g(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c)
    for (Eigen::Index r = 0; r < rows; ++r) {
      double re = gauss(rng);
      double im = gauss(rng);
      g(r, c) = Cplx(re, im) / std::sqrt(2.0);
    }
  return g;
}

// Thin QR with the R-diagonal phase fixed, so the column distribution is
// Haar and the result is deterministic for a given generator state.
CMat haar_isometry(int rows, int cols, std::mt19937_64& rng) {
  CMat g = ginibre(rows, cols, rng);
  Eigen::HouseholderQR<CMat> qr(g);
  CMat q = qr.householderQ() * CMat::Identity(rows, cols);
  CMat r = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
  for (int c = 0; c < cols; ++c) {
    Cplx d = r(c, c);
    double mag = std::abs(d);
    Cplx phase = mag > 0.0 ? d / mag : Cplx(1.0, 0.0);
    q.col(c) *= std::conj(phase);
  }
  return q;
}

}  // namespace

InstrumentSet<Cplx> random_instrument_set(int outcomes, int settings,
                                          int dimension, int kraus_per_outcome,
                                          std::mt19937_64& rng) {
  if (outcomes < 1 || settings < 1 || dimension < 1 || kraus_per_outcome < 1)
    throw structural_error("instrument shape must be positive");
  InstrumentSet<Cplx> set;
  set.outcomes = outcomes;
  set.settings = settings;
  set.dimension = dimension;
  set.instruments.resize(static_cast<std::size_t>(settings));
  int blocks = outcomes * kraus_per_outcome;
  for (int x = 1; x <= settings; ++x) {
    auto& inst = set.instruments[static_cast<std::size_t>(x - 1)];
    inst.setting = x;
    inst.kraus.assign(static_cast<std::size_t>(outcomes), {});
    CMat v = haar_isometry(blocks * dimension, dimension, rng);
    for (int b = 0; b < blocks; ++b) {
      inst.kraus[static_cast<std::size_t>(b / kraus_per_outcome)].push_back(
          v.middleRows(static_cast<Eigen::Index>(b) * dimension, dimension));
    }
  }
  return set;
}

QuantumState<Cplx> random_pure_state(int dimension, std::mt19937_64& rng) {
  if (dimension < 1) throw structural_error("state dimension must be positive");
  CMat v = haar_isometry(dimension, 1, rng);
  QuantumState<Cplx> state;
  state.rho = v * v.adjoint();
  return state;
}

}  // namespace aot
