#pragma once

#include <stdexcept>
#include <string>

namespace coxgalaxy {

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A matrix that is not a valid Coxeter matrix: asymmetric, bad diagonal,
// entries outside {1} ∪ {2,3,...} ∪ {∞}, or shape mismatch.
struct InvalidMatrixError : Error {
  using Error::Error;
};

// Unparseable or structurally wrong input (JSON, words, CLI files).
struct MalformedInputError : Error {
  using Error::Error;
};

// A move descriptor that does not satisfy its preconditions.
struct InvalidMoveError : Error {
  using Error::Error;
};

// An operation that requires an irreducible system got a reducible one.
struct NotIrreducibleError : Error {
  using Error::Error;
};

// An operation restricted to small ranks got a larger system.
struct RankTooLargeError : Error {
  using Error::Error;
};

// A parameter list that must be duplicate-free contained a repeat.
struct DuplicateParameterError : Error {
  using Error::Error;
};

}  // namespace coxgalaxy
