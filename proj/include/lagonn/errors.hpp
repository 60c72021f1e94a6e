#pragma once

#include <stdexcept>
#include <string>

namespace lagonn {

enum class ErrorKind {
  MalformedHeader,
  ClauseArity,
  DuplicateVarInClause,
  VarOutOfRange,
  ClauseCountMismatch,
  LengthMismatch,
  IndexOutOfRange,
  InvalidTypeId,
  DimensionMismatch,
  NonFiniteState,
  InvalidStateCount,
  InvalidParameter,
  InsufficientPoints,
  NonPositiveTts,
  NoTrials,
  Io,
};

struct Error : std::runtime_error {
  ErrorKind kind;
  Error(ErrorKind k, const std::string& what) : std::runtime_error(what), kind(k) {}
};

[[noreturn]] inline void fail(ErrorKind k, const std::string& what) { throw Error(k, what); }

} // namespace lagonn
