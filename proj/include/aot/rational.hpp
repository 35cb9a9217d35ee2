#pragma once

// Exact rational scalar usable inside Eigen matrices.
//
// boost::multiprecision::cpp_rational cannot be used as an Eigen scalar
// directly: Eigen's operator overload resolution instantiates conversion
// traits that hard-error inside Boost's byte-container detection. This thin
// wrapper exposes only constrained constructors and the arithmetic Eigen
// needs, which sidesteps the problem.

#include <compare>
#include <concepts>
#include <cstdint>
#include <ostream>
#include <string>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

#include "aot/bigint.hpp"

namespace aot {

class Rational {
public:
  Rational() = default;
  template <std::integral I>
  Rational(I v) : v_(v) {}
  template <std::integral I>
  Rational(I num, I den) : v_(num, den) {}
  Rational(const BigCount& num, const BigCount& den)
      : v_(boost::multiprecision::cpp_rational(num, den)) {}
  explicit Rational(boost::multiprecision::cpp_rational v) : v_(std::move(v)) {}

  friend Rational operator+(const Rational& a, const Rational& b) {
    return Rational(a.v_ + b.v_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return Rational(a.v_ - b.v_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return Rational(a.v_ * b.v_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    return Rational(a.v_ / b.v_);
  }
  Rational operator-() const { return Rational(-v_); }
  Rational operator+() const { return *this; }
  Rational& operator+=(const Rational& o) {
    v_ += o.v_;
    return *this;
  }
  Rational& operator-=(const Rational& o) {
    v_ -= o.v_;
    return *this;
  }
  Rational& operator*=(const Rational& o) {
    v_ *= o.v_;
    return *this;
  }
  Rational& operator/=(const Rational& o) {
    v_ /= o.v_;
    return *this;
  }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.v_ == b.v_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    return a.v_.compare(b.v_) <=> 0;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.v_;
  }

  const boost::multiprecision::cpp_rational& value() const { return v_; }
  BigCount numerator() const {
    return boost::multiprecision::numerator(v_);
  }
  BigCount denominator() const {
    return boost::multiprecision::denominator(v_);
  }
  double to_double() const { return v_.convert_to<double>(); }
  bool is_zero() const { return v_.is_zero(); }
  std::string str() const { return v_.str(); }

private:
  boost::multiprecision::cpp_rational v_;
};

inline Rational abs(const Rational& r) { return r < Rational(0) ? -r : r; }

// Eigen hooks resolved by argument-dependent lookup.
inline const Rational& conj(const Rational& r) { return r; }
inline const Rational& real(const Rational& r) { return r; }
inline Rational imag(const Rational&) { return Rational(0); }
inline Rational abs2(const Rational& r) { return r * r; }

}  // namespace aot

namespace Eigen {

template <typename T>
struct NumTraits;

template <>
struct NumTraits<aot::Rational> {
  using Real = aot::Rational;
  using NonInteger = aot::Rational;
  using Literal = aot::Rational;
  using Nested = aot::Rational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 30,
    MulCost = 30
  };
  static aot::Rational epsilon() { return aot::Rational(0); }
  static aot::Rational dummy_precision() { return aot::Rational(0); }
  static int digits10() { return 0; }
};

}  // namespace Eigen
