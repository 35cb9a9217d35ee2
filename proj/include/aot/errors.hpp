#pragma once

// Exception types shared across the library.

#include <stdexcept>
#include <string>

namespace aot {

// Malformed or mutually inconsistent data shapes: wrong tuple arity, node
// count mismatch, scenario mismatch between arguments.
class structural_error : public std::invalid_argument {
public:
  explicit structural_error(const std::string& what_arg)
      : std::invalid_argument(what_arg) {}
};

// Operation is only defined for a restricted scenario family (closed-form
// class counts, for instance, exist for two outcomes and at most three
// settings).
class unsupported_scenario_error : public std::domain_error {
public:
  explicit unsupported_scenario_error(const std::string& what_arg)
      : std::domain_error(what_arg) {}
};

// Requested computation exceeds an explicit enumeration or size cap.
class resource_error : public std::runtime_error {
public:
  explicit resource_error(const std::string& what_arg)
      : std::runtime_error(what_arg) {}
};

// Unreadable or syntactically invalid input text (tree files, JSON payloads).
class parse_error : public std::runtime_error {
public:
  explicit parse_error(const std::string& what_arg)
      : std::runtime_error(what_arg) {}
};

}  // namespace aot
