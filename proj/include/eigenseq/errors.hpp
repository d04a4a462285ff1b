#pragma once

#include <stdexcept>
#include <string>

namespace eigenseq {

// Violated operation contract: bad dimensions, non-unitary/non-hermitian input,
// tolerance failures, internal consistency breaks.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed external input (JSON, gate names, flag values).
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace eigenseq
