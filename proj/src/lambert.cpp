#include "aot/lambert.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace aot {

namespace {

double initial_guess(double x) {
  if (x >= std::exp(1.0) * (1.0 + 1e-12)) {
    double l1 = std::log(x);
    double l2 = std::log(l1);
    return l1 - l2 + l2 / (2.0 * l1);
  }
  if (x >= 0.0) return x / (1.0 + x);
  // Series around the branch point x = -1/e, w = -1.
  double p = std::sqrt(2.0 * (1.0 + std::exp(1.0) * x));
  return -1.0 + p - p * p / 3.0;
}

}  // namespace

LambertResult lambert_w_principal(double x) {
  double floor_x = -std::exp(-1.0);
  if (x < floor_x - 1e-15 * std::abs(floor_x))
    throw std::domain_error("lambert_w_principal: argument " +
                            std::to_string(x) + " is below -1/e");
  if (x < floor_x) x = floor_x;

  LambertResult r;
  r.argument = x;
  double target = 5e-13 * std::max(1.0, std::abs(x));
  double w = initial_guess(x);
  if (w < -1.0) w = -1.0;
  double f = w * std::exp(w) - x;
  for (int it = 0; it < 200 && std::abs(f) > target; ++it) {
    double ew = std::exp(w);
    double fp = ew * (1.0 + w);
    double fpp = ew * (2.0 + w);
    double denom = fp - f * fpp / (2.0 * fp);
    double step = denom != 0.0 ? f / denom : f / (fp != 0.0 ? fp : 1.0);
    double next = w - step;
    // Keep the iterate on the principal branch.
    if (next < -1.0) next = (w - 1.0) / 2.0;
    w = next;
    f = w * std::exp(w) - x;
    r.iterations = it + 1;
  }
  r.value = w;
  r.residual = std::abs(f);
  return r;
}

double hoorfar_lower(double x) {
  double e = std::exp(1.0);
  if (x < e * (1.0 - 1e-12))
    throw std::domain_error("hoorfar_lower: argument " + std::to_string(x) +
                            " is below e");
  if (x < e) x = e;
  double l1 = std::log(x);
  double l2 = std::log(l1);
  return l1 - l2 + l2 / (2.0 * l1);
}

}  // namespace aot
