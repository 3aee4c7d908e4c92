#ifndef QGRAPH_ERROR_HPP
#define QGRAPH_ERROR_HPP

#include <stdexcept>
#include <string>

namespace qgraph {

enum class ErrorCode {
  Disconnected,
  NonpositiveLength,
  MissingBoundaryCondition,
  InteriorConditionOnPendant,
  BoundaryConditionOnInterior,
  InvalidCondition,
  DuplicateId,
  EdgeIdsNotContiguous,
  SelfLoop,
  UnknownEdge,
  UnknownVertex,
  InvalidPotential,
  ToleranceNotMet,
  PortNotPendant,
  DeltaZero,
  MNotAtLeastTwo,
  SyntaxError,
  SchemaError,
  InvalidArgument,
};

const char* to_string(ErrorCode code) noexcept;

// All library failures surface as this exception; code() carries the kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace qgraph

#endif  // QGRAPH_ERROR_HPP
