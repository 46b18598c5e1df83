#ifndef PDMGK_ERRORS_HPP
#define PDMGK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pdmgk {

// Numeric values are shared with the C API status codes.
enum class ErrorCode {
  invalid_argument = 1,
  domain = 2,
  overflow = 3,
  non_convergence = 4,
  truncation = 5,
  incompatible_moments = 6,
};

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string &what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

class InvalidArgument : public Error {
public:
  explicit InvalidArgument(const std::string &what)
      : Error(ErrorCode::invalid_argument, what) {}
};

class DomainError : public Error {
public:
  explicit DomainError(const std::string &what)
      : Error(ErrorCode::domain, what) {}
};

class OverflowError : public Error {
public:
  explicit OverflowError(const std::string &what)
      : Error(ErrorCode::overflow, what) {}
};

class NonConvergenceError : public Error {
public:
  explicit NonConvergenceError(const std::string &what)
      : Error(ErrorCode::non_convergence, what) {}
};

class TruncationError : public Error {
public:
  explicit TruncationError(const std::string &what)
      : Error(ErrorCode::truncation, what) {}
};

class IncompatibleMomentsError : public Error {
public:
  explicit IncompatibleMomentsError(const std::string &what)
      : Error(ErrorCode::incompatible_moments, what) {}
};

} // namespace pdmgk

#endif // PDMGK_ERRORS_HPP
