// SPDX-License-Identifier: Apache-2.0
//
// Concrete syntax. Grammar, loosely:
//
//   type  ::= prim ('&' type)?
//   prim  ::= Top | Bot | all(x: type) prim | mu(x: type) | {a: type}
//           | {A: type .. type} | x.A | (type)
//   term  ::= let x = term in term | lambda(x: type) term | nu(x: type) defs
//           | x | x y | x.a | (term)
//   defs  ::= def ('/\' defs)?
//   def   ::= {a = term} | {A = type} | (defs)
//   ctx   ::= (x: type (';' x: type)* ';'?)?
//
// '#' starts a comment that runs to the end of the line.

#ifndef DOT_CORE_SURFACE_HPP
#define DOT_CORE_SURFACE_HPP

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "core/context.hpp"
#include "core/error.hpp"
#include "core/syntax.hpp"

namespace dot {

struct SourceSpan {
  std::size_t start = 0;
  std::size_t end = 0;
  int line = 1;
  int column = 1;
};

class ParseError : public Error {
 public:
  ParseError(SourceSpan span, std::string message, std::vector<std::string> expected);

  const SourceSpan& span() const { return span_; }
  const std::string& message() const { return message_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  SourceSpan span_;
  std::string message_;
  std::vector<std::string> expected_;
};

// Resolves names while parsing. Binders always get fresh variables; a free
// name resolves to the same variable every time it is seen through the
// same scope, so several parses can share free variables.
class Scope {
 public:
  Var free(const std::string& name);
  Var resolve(const std::string& name);
  Var push(const std::string& name);
  void pop();

  const std::map<std::string, Var>& free_names() const { return free_; }

 private:
  std::map<std::string, Var> free_;
  std::vector<std::pair<std::string, Var>> bound_;
};

Type parse_type(std::string_view src, Scope& scope);
Term parse_term(std::string_view src, Scope& scope);
Def parse_defs(std::string_view src, Scope& scope);
Context parse_context(std::string_view src, Scope& scope);

Type parse_type(std::string_view src);
Term parse_term(std::string_view src);

// Printing names for free variables. Distinct variables always receive
// distinct names, so printed text reparses to the same structure.
class Names {
 public:
  const std::string& name_of(const Var& v);
  bool taken(const std::string& n) const { return used_.count(n) != 0; }

 private:
  std::map<std::uint64_t, std::string> assigned_;
  std::set<std::string> used_;
};

std::string print(const Type& t, Names& names);
std::string print(const Term& t, Names& names);
std::string print(const Def& d, Names& names);
std::string print(const Context& g, Names& names);

std::string print(const Type& t);
std::string print(const Term& t);
std::string print(const Def& d);
std::string print(const Context& g);

bool is_keyword(std::string_view s);

}  // namespace dot

#endif
