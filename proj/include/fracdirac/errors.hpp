#ifndef FRACDIRAC_ERRORS_HPP
#define FRACDIRAC_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fracdirac {

// Every error thrown by the library derives from Error and carries a kind,
// which the C API maps one-to-one onto its status codes.
enum class ErrorKind {
  Argument,
  Domain,
  Parse,
  Evaluation,
  Capability,
  Divergence,
  Convergence,
  Consistency,
  DegenerateSlope,
  NotFound,
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

class ArgumentError : public Error {
public:
  explicit ArgumentError(const std::string& what) : Error(ErrorKind::Argument, what) {}
};

class DomainError : public Error {
public:
  explicit DomainError(const std::string& what) : Error(ErrorKind::Domain, what) {}
};

// Syntax errors carry the 0-based byte offset into the source text.
class ParseError : public Error {
public:
  ParseError(std::size_t offset, const std::string& what)
    : Error(ErrorKind::Parse, "at offset " + std::to_string(offset) + ": " + what),
      offset_(offset), message_(what) {}

  std::size_t offset() const noexcept { return offset_; }
  const std::string& message() const noexcept { return message_; }

private:
  std::size_t offset_;
  std::string message_;
};

class EvaluationError : public Error {
public:
  explicit EvaluationError(const std::string& what) : Error(ErrorKind::Evaluation, what) {}
};

class CapabilityError : public Error {
public:
  explicit CapabilityError(const std::string& what) : Error(ErrorKind::Capability, what) {}
};

class DivergenceError : public Error {
public:
  explicit DivergenceError(const std::string& what) : Error(ErrorKind::Divergence, what) {}
};

class ConvergenceError : public Error {
public:
  explicit ConvergenceError(const std::string& what) : Error(ErrorKind::Convergence, what) {}
};

class ConsistencyError : public Error {
public:
  explicit ConsistencyError(const std::string& what) : Error(ErrorKind::Consistency, what) {}
};

class DegenerateSlopeError : public Error {
public:
  explicit DegenerateSlopeError(const std::string& what) : Error(ErrorKind::DegenerateSlope, what) {}
};

class NotFoundError : public Error {
public:
  explicit NotFoundError(const std::string& what) : Error(ErrorKind::NotFound, what) {}
};

} // namespace fracdirac

#endif
