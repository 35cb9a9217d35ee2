#pragma once

// Principal branch of the Lambert W function (solution of w * e^w = x for
// w >= -1) via damped Halley iteration, plus the Hoorfar-Hassani logarithmic
// lower bound used by the dimension-bound diagnostics.

#include <cstdint>

namespace aot {

struct LambertResult {
  double argument = 0.0;
  double value = 0.0;
  double residual = 0.0;  // |w * e^w - x|
  int iterations = 0;
};

// Defined for x >= -1/e; throws std::domain_error below that.
LambertResult lambert_w_principal(double x);

// ln(x) - ln(ln(x)) + ln(ln(x)) / (2 ln(x)), a lower bound on W(x) for
// x >= e; throws std::domain_error below e.
double hoorfar_lower(double x);

}  // namespace aot
