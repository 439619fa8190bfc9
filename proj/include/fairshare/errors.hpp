#ifndef FAIRSHARE_ERRORS_HPP_
#define FAIRSHARE_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace fairshare {

// Base class for everything this library throws.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input rejected by validate_instance or a schedule check.
struct ValidationError : Error {
  using Error::Error;
};

struct EmptyInstance : ValidationError {
  using ValidationError::ValidationError;
};

struct NegativeDemand : ValidationError {
  using ValidationError::ValidationError;
};

struct NonPositiveWork : ValidationError {
  using ValidationError::ValidationError;
};

struct RowNotNormalized : ValidationError {
  using ValidationError::ValidationError;
};

struct NonPositiveCost : ValidationError {
  using ValidationError::ValidationError;
};

struct LengthMismatch : ValidationError {
  using ValidationError::ValidationError;
};

// An agent's work is not completed by the end of the given segments.
struct UnfinishedAgent : Error {
  explicit UnfinishedAgent(int agent_index)
      : Error("agent " + std::to_string(agent_index + 1) +
              " never completes within the given segments"),
        agent(agent_index) {}
  int agent;
};

struct TieGroupTooLarge : Error {
  using Error::Error;
};

struct UnknownFixture : Error {
  using Error::Error;
};

struct ParseError : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

struct NotTwoAgents : Error {
  using Error::Error;
};

}  // namespace fairshare

#endif  // FAIRSHARE_ERRORS_HPP_
