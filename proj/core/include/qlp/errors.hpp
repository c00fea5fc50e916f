#pragma once

#include <stdexcept>
#include <string>

namespace qlp {

// Malformed or ill-typed input: bad JSON, unknown labels, arity mismatches,
// tables with missing cells.  CLI maps this to exit code 2.
class StructuralError : public std::runtime_error {
 public:
  explicit StructuralError(const std::string& what) : std::runtime_error(what) {}
};

// A constructed object violates a quantitative requirement (negative point
// mass, total probability != 1).  CLI maps this to exit code 1.
class ModelError : public std::runtime_error {
 public:
  explicit ModelError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qlp
