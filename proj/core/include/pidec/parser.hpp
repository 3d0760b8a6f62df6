#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "pidec/error.hpp"
#include "pidec/process.hpp"

namespace pidec {

struct SourceSpan {
  std::size_t start = 0;
  std::size_t end = 0;
};

class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& message, SourceSpan span, std::vector<std::string> expected);

  SourceSpan span() const { return span_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  SourceSpan span_;
  std::vector<std::string> expected_;
};

// Parses and validates; the result is alpha-canonical.
// Throws SyntaxError, or Error(MalformedSum) from validation.
Process parse(std::string_view text);

// Parses without validation or canonicalization.
Process parse_raw(std::string_view text);

// Deterministic text with minimal parentheses. Bound names get readable
// spellings that avoid the term's free names.
std::string pretty(const Process& p);

}  // namespace pidec
