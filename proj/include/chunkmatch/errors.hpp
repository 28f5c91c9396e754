#pragma once

#include <stdexcept>
#include <string>

namespace chunkmatch {

/// Base class for all chunkmatch errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// File could not be opened, read, or written.
class IoError : public Error {
 public:
  explicit IoError(const std::string& msg) : Error(msg) {}
};

/// Index file has wrong magic bytes, is truncated, or is otherwise unreadable.
class CorruptFileError : public IoError {
 public:
  explicit CorruptFileError(const std::string& msg) : IoError(msg) {}
};

/// Index file was written by a newer format version than this build understands.
class VersionMismatchError : public IoError {
 public:
  explicit VersionMismatchError(const std::string& msg) : IoError(msg) {}
};

/// Caller supplied unsatisfiable or inconsistent parameters.
class ParameterError : public Error {
 public:
  explicit ParameterError(const std::string& msg) : Error(msg) {}
};

/// Web backend ran out of its per-run query budget.
class BudgetError : public Error {
 public:
  explicit BudgetError(const std::string& msg) : Error(msg) {}
};

/// Web backend could not reach the search endpoint.
class TransportError : public Error {
 public:
  explicit TransportError(const std::string& msg) : Error(msg) {}
};

}  // namespace chunkmatch
