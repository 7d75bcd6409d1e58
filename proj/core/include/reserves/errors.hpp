#pragma once

#include <stdexcept>
#include <string>

namespace reserves {

// Malformed input documents (CSV rows, quota JSON).
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Structurally well-formed input that breaks an instance invariant.
struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// A caller violated a documented precondition (internal misuse, not bad data).
struct ContractError : std::logic_error {
  explicit ContractError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace reserves
