// SPDX-License-Identifier: Apache-2.0
//
// Helpers shared by the test binaries.

#ifndef DOT_TESTS_SUPPORT_HPP
#define DOT_TESTS_SUPPORT_HPP

#include <doctest.h>

#include <fstream>
#include <functional>
#include <sstream>
#include <string>

#include "core/derivation_io.hpp"
#include "core/error.hpp"
#include "core/rules.hpp"
#include "core/surface.hpp"

namespace dot::test {

// Parses several snippets against one scope, so a name means the same
// variable across them.
class Src {
 public:
  Type ty(const std::string& s) { return parse_type(s, scope_); }
  Term tm(const std::string& s) { return parse_term(s, scope_); }
  Def defs(const std::string& s) { return parse_defs(s, scope_); }
  Context ctx(const std::string& s) { return parse_context(s, scope_); }
  Var v(const std::string& name) { return scope_.free(name); }
  Derivation deriv(const std::string& doc) { return parse_derivation(doc, scope_); }
  Scope& scope() { return scope_; }

 private:
  Scope scope_;
};

inline std::string errors_text(const Derivation& d) {
  std::string out;
  for (const auto& e : validate(d))
    out += format_path(e.path) + " " + reason_name(e.reason) + ": " + e.detail + "\n";
  return out;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidInput;
}

inline bool uses(const Derivation& d, const std::string& rule) {
  std::vector<std::string> rules;
  collect_rules(d, rules);
  for (const auto& r : rules)
    if (r == rule) return true;
  return false;
}

}  // namespace dot::test

#endif
