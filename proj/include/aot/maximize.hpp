#pragma once

// Best-effort lower bound on the dimension-d maximum of a temporal
// inequality. Two passes feed one result: an enumeration (or hill climb, when
// enumeration is too large) over deterministic d-state machines, and see-saw
// restarts alternating an exact best-state eigenvector step with random
// isometry perturbations of the instruments. The returned strategy is always
// feasible, so the value is a valid lower bound.

#include <complex>
#include <cstdint>

#include "aot/inequality.hpp"
#include "aot/instruments.hpp"

namespace aot {

struct MaximizeOptions {
  int dimension = 2;
  int restarts = 8;
  int iterations = 60;
  std::uint64_t seed = 1;
  int kraus_per_outcome = 1;
  // Exhaustive machine pass runs only when the machine count stays below
  // this cap; otherwise seeded hill climbs take its place.
  std::uint64_t machine_cap = 2000000;
  int threads = 0;
};

struct MaximizeOutcome {
  double best_value = 0.0;
  double classical_value = 0.0;
  bool classical_exhaustive = false;
  InstrumentSet<std::complex<double>> instruments;
  QuantumState<std::complex<double>> state;
};

MaximizeOutcome numeric_maximize(const TemporalInequality& ineq,
                                 const MaximizeOptions& options);

}  // namespace aot
