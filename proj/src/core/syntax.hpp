// SPDX-License-Identifier: Apache-2.0
//
// Abstract syntax of DOT: variables, types, terms, values and definitions.
// All nodes are immutable and shared; a handle is a cheap pointer copy.

#ifndef DOT_CORE_SYNTAX_HPP
#define DOT_CORE_SYNTAX_HPP

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace dot {

// A variable is identified by its uid; the name is only a display label.
struct Var {
  std::string name;
  std::uint64_t uid = 0;

  friend bool operator==(const Var& a, const Var& b) { return a.uid == b.uid; }
  friend auto operator<=>(const Var& a, const Var& b) { return a.uid <=> b.uid; }
};

Var fresh_var(std::string name);
inline Var fresh_like(const Var& v) { return fresh_var(v.name); }

using VarSet = std::set<Var>;

template <class Node, class Kind>
class Handle {
 public:
  Handle() = default;
  explicit Handle(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  explicit operator bool() const { return node_ != nullptr; }
  const auto& node() const { return node_->v; }
  Kind kind() const { return static_cast<Kind>(node_->v.index()); }
  template <class T>
  const T* as() const {
    return std::get_if<T>(&node_->v);
  }
  template <class T>
  bool is() const {
    return std::holds_alternative<T>(node_->v);
  }
  // Pointer identity; equal handles share the node.
  const void* id() const { return node_.get(); }

 private:
  std::shared_ptr<const Node> node_;
};

struct TypeNode;
struct TermNode;
struct ValueNode;
struct DefNode;

enum class TypeKind { Top, Bot, All, Rec, Fld, Typ, Sel, And };
enum class TermKind { Ref, Val, Sel, App, Let };
enum class ValueKind { Lambda, Nu };
enum class DefKind { Field, Alias, And };

using Type = Handle<TypeNode, TypeKind>;
using Term = Handle<TermNode, TermKind>;
using Value = Handle<ValueNode, ValueKind>;
using Def = Handle<DefNode, DefKind>;

namespace types {
struct Top {};
struct Bot {};
// all(param: domain) codomain; param is bound in codomain only.
struct All {
  Var param;
  Type domain;
  Type codomain;
};
// mu(self: body)
struct Rec {
  Var self;
  Type body;
};
// {label: type}
struct Fld {
  std::string label;
  Type type;
};
// {Label: lower .. upper}
struct Typ {
  std::string label;
  Type lower;
  Type upper;
};
// receiver.Label
struct Sel {
  Var receiver;
  std::string label;
};
struct And {
  Type left;
  Type right;
};
}  // namespace types

namespace terms {
struct Ref {
  Var var;
};
struct Val {
  Value value;
};
struct Sel {
  Var receiver;
  std::string label;
};
struct App {
  Var fun;
  Var arg;
};
struct Let {
  Var bound;
  Term rhs;
  Term body;
};
}  // namespace terms

namespace values {
struct Lambda {
  Var param;
  Type param_type;
  Term body;
};
// nu(self: self_type) defs; self is bound in both self_type and defs.
struct Nu {
  Var self;
  Type self_type;
  Def defs;
};
}  // namespace values

namespace defs {
struct Field {
  std::string label;
  Term rhs;
};
struct Alias {
  std::string label;
  Type alias;
};
struct And {
  Def left;
  Def right;
};
}  // namespace defs

struct TypeNode {
  std::variant<types::Top, types::Bot, types::All, types::Rec, types::Fld, types::Typ, types::Sel,
               types::And>
      v;
};
struct TermNode {
  std::variant<terms::Ref, terms::Val, terms::Sel, terms::App, terms::Let> v;
};
struct ValueNode {
  std::variant<values::Lambda, values::Nu> v;
};
struct DefNode {
  std::variant<defs::Field, defs::Alias, defs::And> v;
};

// Constructors.
namespace mk {
Type top();
Type bot();
Type all(Var param, Type domain, Type codomain);
Type mu(Var self, Type body);
Type fld(std::string label, Type type);
Type decl(std::string label, Type lower, Type upper);
Type sel(Var receiver, std::string label);
Type meet(Type left, Type right);

Term ref(Var v);
Term val(Value v);
Term select(Var receiver, std::string label);
Term app(Var fun, Var arg);
Term let(Var bound, Term rhs, Term body);

Value lambda(Var param, Type param_type, Term body);
Value nu(Var self, Type self_type, Def defs);
inline Term lambda_term(Var param, Type param_type, Term body) {
  return val(lambda(std::move(param), std::move(param_type), std::move(body)));
}
inline Term nu_term(Var self, Type self_type, Def d) {
  return val(nu(std::move(self), std::move(self_type), std::move(d)));
}

Def field(std::string label, Term rhs);
Def alias(std::string label, Type type);
// A single aggregate node, no flattening.
Def both(Def left, Def right);
// Aggregates definitions into a right-nested chain, flattening nested
// aggregates on both sides.
Def join(Def left, Def right);
Def join(const std::vector<Def>& parts);
}  // namespace mk

// Flattened leaves of an aggregate definition, left to right.
std::vector<Def> def_parts(const Def& d);
// Flattened conjuncts of an intersection, left to right.
std::vector<Type> conjuncts(const Type& t);

// Labels defined by d, in order (duplicates preserved).
std::vector<std::string> def_labels(const Def& d);

VarSet free_vars(const Type& t);
VarSet free_vars(const Term& t);
VarSet free_vars(const Value& v);
VarSet free_vars(const Def& d);

bool occurs_free(const Var& x, const Type& t);
bool occurs_free(const Var& x, const Term& t);
bool occurs_free(const Var& x, const Def& d);

// [from := to] target, capture-avoiding. Binders equal to `to` whose scope
// mentions `from` are renamed to fresh variables.
Type subst(const Type& t, const Var& from, const Var& to);
Term subst(const Term& t, const Var& from, const Var& to);
Value subst(const Value& v, const Var& from, const Var& to);
Def subst(const Def& d, const Var& from, const Var& to);

bool alpha_eq(const Type& a, const Type& b);
bool alpha_eq(const Term& a, const Term& b);
bool alpha_eq(const Value& a, const Value& b);
bool alpha_eq(const Def& a, const Def& b);

// Renames every binder in t to a fresh variable.
Term freshen_binders(const Term& t);

// A string that is equal for two types iff they are alpha-equivalent.
std::string canonical_key(const Type& t);
std::string canonical_key(const Term& t);
std::string canonical_key(const Def& d);

std::size_t size(const Type& t);
std::size_t size(const Term& t);

bool is_value(const Term& t);
bool is_var(const Term& t);

}  // namespace dot

#endif
