#pragma once

#include <stdexcept>
#include <string>

namespace volent {

/// Base class for all toolkit errors.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct EmptyInputError : Error {
  using Error::Error;
};
struct DuplicateSimplexError : Error {
  using Error::Error;
};
struct QOutOfRangeError : Error {
  using Error::Error;
};
struct UnknownVertexError : Error {
  using Error::Error;
};
struct DisconnectedError : Error {
  using Error::Error;
};
struct DisconnectedSubcomplexError : Error {
  using Error::Error;
};
struct NotSimplicialError : Error {
  using Error::Error;
};
struct TOutOfRangeError : Error {
  using Error::Error;
};
struct DegenerateSimplexError : Error {
  using Error::Error;
};
struct EmptyFiberError : Error {
  using Error::Error;
};
struct FiberDisconnectedError : Error {
  using Error::Error;
};
struct SubdivisionTooCoarseError : Error {
  using Error::Error;
};
struct VertexUncoveredError : Error {
  using Error::Error;
};
struct MultiplicityTooHighError : Error {
  using Error::Error;
};
struct NotSmallCancellationError : Error {
  using Error::Error;
};
struct CensusTooShortError : Error {
  using Error::Error;
};
struct OracleMismatchError : Error {
  using Error::Error;
};
struct ParameterOutOfRangeError : Error {
  using Error::Error;
};
struct NonpositiveDiameterError : Error {
  using Error::Error;
};
struct BudgetExceededError : Error {
  using Error::Error;
};
struct IoError : Error {
  using Error::Error;
};

}  // namespace volent
