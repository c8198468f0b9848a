// SPDX-License-Identifier: Apache-2.0

#ifndef DOT_CORE_ERROR_HPP
#define DOT_CORE_ERROR_HPP

#include <stdexcept>
#include <string>

namespace dot {

enum class ErrorCode {
  Parse,
  UnboundVariable,
  NonInertContext,
  InvalidInput,
  SubjectNotVarOrValue,
  XNotLast,
  Precondition,
};

const char* error_code_name(ErrorCode c);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace dot

#endif
