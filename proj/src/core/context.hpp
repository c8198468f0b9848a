// SPDX-License-Identifier: Apache-2.0

#ifndef DOT_CORE_CONTEXT_HPP
#define DOT_CORE_CONTEXT_HPP

#include <optional>
#include <string>
#include <vector>

#include "core/syntax.hpp"

namespace dot {

struct Binding {
  Var var;
  Type type;
};

// Ordered binding list. Later bindings may refer to earlier ones.
class Context {
 public:
  Context() = default;
  explicit Context(std::vector<Binding> b) : bindings_(std::move(b)) {}

  const std::vector<Binding>& bindings() const { return bindings_; }
  std::size_t size() const { return bindings_.size(); }
  bool empty() const { return bindings_.empty(); }

  const Type* lookup(const Var& x) const;
  bool binds(const Var& x) const { return lookup(x) != nullptr; }
  std::optional<std::size_t> index_of(const Var& x) const;

  Context extended(Var x, Type t) const;
  // Γ[x: t]; x must be bound.
  Context with_type(const Var& x, Type t) const;
  // Prefix before x's binding.
  Context before(const Var& x) const;

  VarSet domain() const;

 private:
  std::vector<Binding> bindings_;
};

// Duplicate bindings, or a binding whose type mentions a variable bound
// later (or not at all). nullopt when well formed.
std::optional<std::string> context_issue(const Context& g);

// Same variables in the same order, alpha-equivalent types.
bool alpha_eq(const Context& a, const Context& b);

}  // namespace dot

#endif
