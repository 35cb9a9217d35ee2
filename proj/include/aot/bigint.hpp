#pragma once

// Exact integer counting: arbitrary-precision counts, checked powers and
// divisions, decimal-string serialization for reports.

#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "aot/errors.hpp"

namespace aot {

using BigCount = boost::multiprecision::cpp_int;

inline BigCount big_pow(const BigCount& base, std::uint64_t exp) {
  BigCount result = 1;
  BigCount acc = base;
  while (exp != 0) {
    if (exp & 1u) result *= acc;
    exp >>= 1u;
    if (exp != 0) acc *= acc;
  }
  return result;
}

// Division that is known to be exact; a remainder means a broken invariant.
inline BigCount exact_div(const BigCount& num, const BigCount& den) {
  if (den == 0) throw std::logic_error("exact_div: zero divisor");
  BigCount q = num / den;
  if (q * den != num) throw std::logic_error("exact_div: nonzero remainder");
  return q;
}

inline std::string to_decimal(const BigCount& v) { return v.str(); }

inline BigCount parse_decimal(const std::string& text) {
  if (text.empty()) throw parse_error("parse_decimal: empty string");
  std::size_t i = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (i == text.size()) throw parse_error("parse_decimal: sign only");
  for (; i < text.size(); ++i) {
    if (text[i] < '0' || text[i] > '9')
      throw parse_error("parse_decimal: invalid digit in '" + text + "'");
  }
  return BigCount(text);
}

// Checked narrowing for loop bounds over enumerable index spaces.
inline std::uint64_t to_uint64(const BigCount& v) {
  if (v < 0 || v > BigCount(UINT64_MAX))
    throw resource_error("count does not fit in 64 bits: " + to_decimal(v));
  return v.convert_to<std::uint64_t>();
}

}  // namespace aot
