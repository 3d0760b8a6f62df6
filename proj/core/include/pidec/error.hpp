#pragma once

#include <stdexcept>
#include <string>

namespace pidec {

enum class ErrorKind {
  SyntaxError,
  MalformedSum,
  UniverseTooSmall,
  NotFinite,
  CyclicLts,
  Inconclusive,
  TooLarge,
  NormalizationIncomplete,
  UnknownDemo,
  Usage,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace pidec
