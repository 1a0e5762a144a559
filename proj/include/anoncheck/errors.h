#ifndef ANONCHECK_ERRORS_H_
#define ANONCHECK_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace anoncheck {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed text input: formulas, rationals, system/spec/trace files.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : Error(message + " (at offset " + std::to_string(position) + ")"),
        position_(position) {}
  explicit ParseError(const std::string& message)
      : Error(message), position_(0) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// Structurally invalid model or query: unknown agents, bad horizons,
// priors that do not sum to one, missing query parameters.
class ModelError : public Error {
 public:
  using Error::Error;
};

// Errors that arise while giving semantics to a well-formed query.
class SemanticError : public Error {
 public:
  using Error::Error;
};

// The agent's knowledge set has measure zero, so mu_{r,m,i} is undefined.
class ZeroProbabilityClass : public SemanticError {
 public:
  using SemanticError::SemanticError;
};

// The satisfying set inside a knowledge set is not a union of run fibers.
class NonMeasurableEvent : public SemanticError {
 public:
  using SemanticError::SemanticError;
};

// Conditioning on an event of probability zero.
class ZeroConditioningEvent : public SemanticError {
 public:
  using SemanticError::SemanticError;
};

// A precondition of a cross-formalism check does not hold (for instance an
// action performed by two agents in one run).
class HypothesisViolation : public SemanticError {
 public:
  using SemanticError::SemanticError;
};

}  // namespace anoncheck

#endif  // ANONCHECK_ERRORS_H_
