// SPDX-License-Identifier: Apache-2.0

#include "core/context.hpp"

#include "core/error.hpp"

namespace dot {

const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::Parse: return "parse-error";
    case ErrorCode::UnboundVariable: return "unbound-variable";
    case ErrorCode::NonInertContext: return "non-inert-context";
    case ErrorCode::InvalidInput: return "invalid-input";
    case ErrorCode::SubjectNotVarOrValue: return "subject-not-var-or-value";
    case ErrorCode::XNotLast: return "x-not-last";
    case ErrorCode::Precondition: return "precondition";
  }
  return "error";
}

const Type* Context::lookup(const Var& x) const {
  for (auto it = bindings_.rbegin(); it != bindings_.rend(); ++it)
    if (it->var == x) return &it->type;
  return nullptr;
}

std::optional<std::size_t> Context::index_of(const Var& x) const {
  for (std::size_t i = bindings_.size(); i-- > 0;)
    if (bindings_[i].var == x) return i;
  return std::nullopt;
}

Context Context::extended(Var x, Type t) const {
  auto b = bindings_;
  b.push_back(Binding{std::move(x), std::move(t)});
  return Context(std::move(b));
}

Context Context::with_type(const Var& x, Type t) const {
  auto i = index_of(x);
  if (!i) fail(ErrorCode::UnboundVariable, "variable " + x.name + " is not bound");
  auto b = bindings_;
  b[*i].type = std::move(t);
  return Context(std::move(b));
}

Context Context::before(const Var& x) const {
  auto i = index_of(x);
  if (!i) fail(ErrorCode::UnboundVariable, "variable " + x.name + " is not bound");
  return Context(std::vector<Binding>(bindings_.begin(), bindings_.begin() + *i));
}

VarSet Context::domain() const {
  VarSet out;
  for (const auto& b : bindings_) out.insert(b.var);
  return out;
}

std::optional<std::string> context_issue(const Context& g) {
  VarSet seen;
  for (const auto& b : g.bindings()) {
    if (seen.count(b.var)) return "variable " + b.var.name + " is bound twice";
    for (const auto& v : free_vars(b.type)) {
      if (v == b.var || seen.count(v)) continue;
      return "type of " + b.var.name + " mentions " + v.name + ", which is not bound before it";
    }
    seen.insert(b.var);
  }
  return std::nullopt;
}

bool alpha_eq(const Context& a, const Context& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto& x = a.bindings()[i];
    const auto& y = b.bindings()[i];
    if (x.var != y.var || !alpha_eq(x.type, y.type)) return false;
  }
  return true;
}

}  // namespace dot
