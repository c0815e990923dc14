#pragma once

#include <stdexcept>
#include <string>

namespace blockhh {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Enumeration or construction would exceed the configured element cap.
struct CapExceeded : Error {
  explicit CapExceeded(const std::string& msg) : Error(msg) {}
};

struct NotAMember : Error {
  explicit NotAMember(const std::string& msg) : Error(msg) {}
};

struct NotASubgroup : Error {
  explicit NotASubgroup(const std::string& msg) : Error(msg) {}
};

struct DimensionMismatch : Error {
  explicit DimensionMismatch(const std::string& msg) : Error(msg) {}
};

struct DimensionTooLarge : Error {
  explicit DimensionTooLarge(const std::string& msg) : Error(msg) {}
};

struct InvalidStructure : Error {
  explicit InvalidStructure(const std::string& msg) : Error(msg) {}
};

struct NotQFixed : Error {
  explicit NotQFixed(const std::string& msg) : Error(msg) {}
};

struct NotAnAutomorphism : Error {
  explicit NotAnAutomorphism(const std::string& msg) : Error(msg) {}
};

struct OrderDivisibleByP : Error {
  explicit OrderDivisibleByP(const std::string& msg) : Error(msg) {}
};

struct FrattiniRankOnNonPGroup : Error {
  explicit FrattiniRankOnNonPGroup(const std::string& msg) : Error(msg) {}
};

struct NonIntegerDimension : Error {
  explicit NonIntegerDimension(const std::string& msg) : Error(msg) {}
};

struct StrategyUnavailable : Error {
  explicit StrategyUnavailable(const std::string& msg) : Error(msg) {}
};

struct IncompleteTable : Error {
  explicit IncompleteTable(const std::string& msg) : Error(msg) {}
};

struct ParseError : Error {
  explicit ParseError(const std::string& msg) : Error(msg) {}
};

struct PreconditionUnmet : Error {
  explicit PreconditionUnmet(const std::string& msg) : Error(msg) {}
};

}  // namespace blockhh
