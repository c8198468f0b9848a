// SPDX-License-Identifier: Apache-2.0

#include "core/syntax.hpp"

#include <atomic>
#include <optional>
#include <utility>

#include "core/overloaded.hpp"

namespace dot {

namespace {
std::atomic<std::uint64_t> next_uid{1};
}

Var fresh_var(std::string name) { return Var{std::move(name), next_uid.fetch_add(1)}; }

namespace mk {

Type top() {
  static const Type t{std::make_shared<const TypeNode>(TypeNode{types::Top{}})};
  return t;
}
Type bot() {
  static const Type t{std::make_shared<const TypeNode>(TypeNode{types::Bot{}})};
  return t;
}
Type all(Var param, Type domain, Type codomain) {
  return Type{std::make_shared<const TypeNode>(
      TypeNode{types::All{std::move(param), std::move(domain), std::move(codomain)}})};
}
Type mu(Var self, Type body) {
  return Type{std::make_shared<const TypeNode>(TypeNode{types::Rec{std::move(self), std::move(body)}})};
}
Type fld(std::string label, Type type) {
  return Type{
      std::make_shared<const TypeNode>(TypeNode{types::Fld{std::move(label), std::move(type)}})};
}
Type decl(std::string label, Type lower, Type upper) {
  return Type{std::make_shared<const TypeNode>(
      TypeNode{types::Typ{std::move(label), std::move(lower), std::move(upper)}})};
}
Type sel(Var receiver, std::string label) {
  return Type{std::make_shared<const TypeNode>(
      TypeNode{types::Sel{std::move(receiver), std::move(label)}})};
}
Type meet(Type left, Type right) {
  return Type{
      std::make_shared<const TypeNode>(TypeNode{types::And{std::move(left), std::move(right)}})};
}

Term ref(Var v) { return Term{std::make_shared<const TermNode>(TermNode{terms::Ref{std::move(v)}})}; }
Term val(Value v) {
  return Term{std::make_shared<const TermNode>(TermNode{terms::Val{std::move(v)}})};
}
Term select(Var receiver, std::string label) {
  return Term{std::make_shared<const TermNode>(
      TermNode{terms::Sel{std::move(receiver), std::move(label)}})};
}
Term app(Var fun, Var arg) {
  return Term{
      std::make_shared<const TermNode>(TermNode{terms::App{std::move(fun), std::move(arg)}})};
}
Term let(Var bound, Term rhs, Term body) {
  return Term{std::make_shared<const TermNode>(
      TermNode{terms::Let{std::move(bound), std::move(rhs), std::move(body)}})};
}

Value lambda(Var param, Type param_type, Term body) {
  return Value{std::make_shared<const ValueNode>(
      ValueNode{values::Lambda{std::move(param), std::move(param_type), std::move(body)}})};
}
Value nu(Var self, Type self_type, Def d) {
  return Value{std::make_shared<const ValueNode>(
      ValueNode{values::Nu{std::move(self), std::move(self_type), std::move(d)}})};
}

Def field(std::string label, Term rhs) {
  return Def{
      std::make_shared<const DefNode>(DefNode{defs::Field{std::move(label), std::move(rhs)}})};
}
Def alias(std::string label, Type type) {
  return Def{
      std::make_shared<const DefNode>(DefNode{defs::Alias{std::move(label), std::move(type)}})};
}

Def both(Def left, Def right) {
  return Def{std::make_shared<const DefNode>(DefNode{defs::And{std::move(left), std::move(right)}})};
}

Def join(const std::vector<Def>& parts) {
  std::vector<Def> flat;
  for (const auto& p : parts) {
    auto leaves = def_parts(p);
    flat.insert(flat.end(), leaves.begin(), leaves.end());
  }
  if (flat.empty()) return Def{};
  Def acc = flat.back();
  for (auto it = flat.rbegin() + 1; it != flat.rend(); ++it)
    acc = both(*it, acc);
  return acc;
}

Def join(Def left, Def right) { return join(std::vector<Def>{std::move(left), std::move(right)}); }

}  // namespace mk

std::vector<Def> def_parts(const Def& d) {
  std::vector<Def> out;
  std::vector<Def> stack{d};
  while (!stack.empty()) {
    Def cur = stack.back();
    stack.pop_back();
    if (auto a = cur.as<defs::And>()) {
      stack.push_back(a->right);
      stack.push_back(a->left);
    } else {
      out.push_back(cur);
    }
  }
  return out;
}

std::vector<Type> conjuncts(const Type& t) {
  std::vector<Type> out;
  std::vector<Type> stack{t};
  while (!stack.empty()) {
    Type cur = stack.back();
    stack.pop_back();
    if (auto a = cur.as<types::And>()) {
      stack.push_back(a->right);
      stack.push_back(a->left);
    } else {
      out.push_back(cur);
    }
  }
  return out;
}

std::vector<std::string> def_labels(const Def& d) {
  std::vector<std::string> out;
  for (const auto& p : def_parts(d)) {
    if (auto f = p.as<defs::Field>()) out.push_back(f->label);
    if (auto a = p.as<defs::Alias>()) out.push_back(a->label);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Free variables

namespace {

struct FreeVarCollector {
  VarSet out;
  std::vector<Var> bound;

  bool is_bound(const Var& v) const {
    for (const auto& b : bound)
      if (b == v) return true;
    return false;
  }
  void use(const Var& v) {
    if (!is_bound(v)) out.insert(v);
  }
  template <class F>
  void under(const Var& b, F&& f) {
    bound.push_back(b);
    f();
    bound.pop_back();
  }

  void visit(const Type& t) {
    std::visit(overloaded{
                   [](const types::Top&) {},
                   [](const types::Bot&) {},
                   [&](const types::All& a) {
                     visit(a.domain);
                     under(a.param, [&] { visit(a.codomain); });
                   },
                   [&](const types::Rec& r) { under(r.self, [&] { visit(r.body); }); },
                   [&](const types::Fld& f) { visit(f.type); },
                   [&](const types::Typ& d) {
                     visit(d.lower);
                     visit(d.upper);
                   },
                   [&](const types::Sel& s) { use(s.receiver); },
                   [&](const types::And& a) {
                     visit(a.left);
                     visit(a.right);
                   },
               },
               t.node());
  }
  void visit(const Term& t) {
    std::visit(overloaded{
                   [&](const terms::Ref& r) { use(r.var); },
                   [&](const terms::Val& v) { visit(v.value); },
                   [&](const terms::Sel& s) { use(s.receiver); },
                   [&](const terms::App& a) {
                     use(a.fun);
                     use(a.arg);
                   },
                   [&](const terms::Let& l) {
                     visit(l.rhs);
                     under(l.bound, [&] { visit(l.body); });
                   },
               },
               t.node());
  }
  void visit(const Value& v) {
    std::visit(overloaded{
                   [&](const values::Lambda& l) {
                     visit(l.param_type);
                     under(l.param, [&] { visit(l.body); });
                   },
                   [&](const values::Nu& n) {
                     under(n.self, [&] {
                       visit(n.self_type);
                       visit(n.defs);
                     });
                   },
               },
               v.node());
  }
  void visit(const Def& d) {
    std::visit(overloaded{
                   [&](const defs::Field& f) { visit(f.rhs); },
                   [&](const defs::Alias& a) { visit(a.alias); },
                   [&](const defs::And& a) {
                     visit(a.left);
                     visit(a.right);
                   },
               },
               d.node());
  }
};

template <class T>
VarSet collect_free(const T& x) {
  FreeVarCollector c;
  c.visit(x);
  return std::move(c.out);
}

}  // namespace

VarSet free_vars(const Type& t) { return collect_free(t); }
VarSet free_vars(const Term& t) { return collect_free(t); }
VarSet free_vars(const Value& v) { return collect_free(v); }
VarSet free_vars(const Def& d) { return collect_free(d); }

bool occurs_free(const Var& x, const Type& t) { return free_vars(t).count(x) != 0; }
bool occurs_free(const Var& x, const Term& t) { return free_vars(t).count(x) != 0; }
bool occurs_free(const Var& x, const Def& d) { return free_vars(d).count(x) != 0; }

// ---------------------------------------------------------------------------
// Renaming traversal shared by substitution and binder freshening.

namespace {

class Renamer {
 public:
  // freshen_all: every binder gets a fresh variable.
  // Otherwise only binders equal to `capture` are renamed.
  Renamer(std::vector<std::pair<Var, Var>> env, bool freshen_all, std::optional<Var> capture)
      : env_(std::move(env)), freshen_all_(freshen_all), capture_(std::move(capture)) {}

  Var lookup(const Var& v) const {
    for (auto it = env_.rbegin(); it != env_.rend(); ++it)
      if (it->first == v) return it->second;
    return v;
  }

  template <class F>
  auto bind(const Var& b, F&& f) {
    Var nb = b;
    if (freshen_all_ || (capture_ && b == *capture_)) nb = fresh_like(b);
    env_.emplace_back(b, nb);
    auto result = f(nb);
    env_.pop_back();
    return result;
  }

  Type go(const Type& t) {
    return std::visit(
        overloaded{
            [&](const types::Top&) { return t; },
            [&](const types::Bot&) { return t; },
            [&](const types::All& a) {
              Type dom = go(a.domain);
              return bind(a.param, [&](const Var& p) { return mk::all(p, dom, go(a.codomain)); });
            },
            [&](const types::Rec& r) {
              return bind(r.self, [&](const Var& s) { return mk::mu(s, go(r.body)); });
            },
            [&](const types::Fld& f) { return mk::fld(f.label, go(f.type)); },
            [&](const types::Typ& d) { return mk::decl(d.label, go(d.lower), go(d.upper)); },
            [&](const types::Sel& s) { return mk::sel(lookup(s.receiver), s.label); },
            [&](const types::And& a) { return mk::meet(go(a.left), go(a.right)); },
        },
        t.node());
  }

  Term go(const Term& t) {
    return std::visit(
        overloaded{
            [&](const terms::Ref& r) { return mk::ref(lookup(r.var)); },
            [&](const terms::Val& v) { return mk::val(go(v.value)); },
            [&](const terms::Sel& s) { return mk::select(lookup(s.receiver), s.label); },
            [&](const terms::App& a) { return mk::app(lookup(a.fun), lookup(a.arg)); },
            [&](const terms::Let& l) {
              Term rhs = go(l.rhs);
              return bind(l.bound, [&](const Var& b) { return mk::let(b, rhs, go(l.body)); });
            },
        },
        t.node());
  }

  Value go(const Value& v) {
    return std::visit(overloaded{
                          [&](const values::Lambda& l) {
                            Type pt = go(l.param_type);
                            return bind(l.param, [&](const Var& p) {
                              return mk::lambda(p, pt, go(l.body));
                            });
                          },
                          [&](const values::Nu& n) {
                            return bind(n.self, [&](const Var& s) {
                              Type st = go(n.self_type);
                              return mk::nu(s, st, go(n.defs));
                            });
                          },
                      },
                      v.node());
  }

  Def go(const Def& d) {
    return std::visit(overloaded{
                          [&](const defs::Field& f) { return mk::field(f.label, go(f.rhs)); },
                          [&](const defs::Alias& a) { return mk::alias(a.label, go(a.alias)); },
                          [&](const defs::And& a) {
                            Def l = go(a.left);
                            Def r = go(a.right);
                            return mk::both(l, r);
                          },
                      },
                      d.node());
  }

 private:
  std::vector<std::pair<Var, Var>> env_;
  bool freshen_all_;
  std::optional<Var> capture_;
};

template <class T>
T subst_impl(const T& target, const Var& from, const Var& to) {
  if (from == to || !occurs_free(from, target)) return target;
  Renamer r({{from, to}}, false, to);
  return r.go(target);
}

}  // namespace

Type subst(const Type& t, const Var& from, const Var& to) { return subst_impl(t, from, to); }
Term subst(const Term& t, const Var& from, const Var& to) { return subst_impl(t, from, to); }
Def subst(const Def& d, const Var& from, const Var& to) { return subst_impl(d, from, to); }
Value subst(const Value& v, const Var& from, const Var& to) {
  if (from == to || free_vars(v).count(from) == 0) return v;
  Renamer r({{from, to}}, false, to);
  return r.go(v);
}

Term freshen_binders(const Term& t) {
  Renamer r({}, true, std::nullopt);
  return r.go(t);
}

// ---------------------------------------------------------------------------
// Alpha equivalence

namespace {

class AlphaEq {
 public:
  bool var(const Var& a, const Var& b) const {
    int ia = index(a, true);
    int ib = index(b, false);
    if (ia < 0 && ib < 0) return a == b;
    return ia == ib;
  }

  template <class F>
  bool bind(const Var& a, const Var& b, F&& f) {
    env_.emplace_back(a.uid, b.uid);
    bool r = f();
    env_.pop_back();
    return r;
  }

  bool eq(const Type& a, const Type& b) {
    if (a.id() == b.id() && env_.empty()) return true;
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
      case TypeKind::Top:
      case TypeKind::Bot:
        return true;
      case TypeKind::All: {
        auto x = a.as<types::All>();
        auto y = b.as<types::All>();
        return eq(x->domain, y->domain) &&
               bind(x->param, y->param, [&] { return eq(x->codomain, y->codomain); });
      }
      case TypeKind::Rec: {
        auto x = a.as<types::Rec>();
        auto y = b.as<types::Rec>();
        return bind(x->self, y->self, [&] { return eq(x->body, y->body); });
      }
      case TypeKind::Fld: {
        auto x = a.as<types::Fld>();
        auto y = b.as<types::Fld>();
        return x->label == y->label && eq(x->type, y->type);
      }
      case TypeKind::Typ: {
        auto x = a.as<types::Typ>();
        auto y = b.as<types::Typ>();
        return x->label == y->label && eq(x->lower, y->lower) && eq(x->upper, y->upper);
      }
      case TypeKind::Sel: {
        auto x = a.as<types::Sel>();
        auto y = b.as<types::Sel>();
        return x->label == y->label && var(x->receiver, y->receiver);
      }
      case TypeKind::And: {
        auto x = a.as<types::And>();
        auto y = b.as<types::And>();
        return eq(x->left, y->left) && eq(x->right, y->right);
      }
    }
    return false;
  }

  bool eq(const Term& a, const Term& b) {
    if (a.id() == b.id() && env_.empty()) return true;
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
      case TermKind::Ref:
        return var(a.as<terms::Ref>()->var, b.as<terms::Ref>()->var);
      case TermKind::Val:
        return eq(a.as<terms::Val>()->value, b.as<terms::Val>()->value);
      case TermKind::Sel: {
        auto x = a.as<terms::Sel>();
        auto y = b.as<terms::Sel>();
        return x->label == y->label && var(x->receiver, y->receiver);
      }
      case TermKind::App: {
        auto x = a.as<terms::App>();
        auto y = b.as<terms::App>();
        return var(x->fun, y->fun) && var(x->arg, y->arg);
      }
      case TermKind::Let: {
        auto x = a.as<terms::Let>();
        auto y = b.as<terms::Let>();
        return eq(x->rhs, y->rhs) && bind(x->bound, y->bound, [&] { return eq(x->body, y->body); });
      }
    }
    return false;
  }

  bool eq(const Value& a, const Value& b) {
    if (a.kind() != b.kind()) return false;
    if (auto x = a.as<values::Lambda>()) {
      auto y = b.as<values::Lambda>();
      return eq(x->param_type, y->param_type) &&
             bind(x->param, y->param, [&] { return eq(x->body, y->body); });
    }
    auto x = a.as<values::Nu>();
    auto y = b.as<values::Nu>();
    return bind(x->self, y->self,
                [&] { return eq(x->self_type, y->self_type) && eq(x->defs, y->defs); });
  }

  bool eq(const Def& a, const Def& b) {
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
      case DefKind::Field: {
        auto x = a.as<defs::Field>();
        auto y = b.as<defs::Field>();
        return x->label == y->label && eq(x->rhs, y->rhs);
      }
      case DefKind::Alias: {
        auto x = a.as<defs::Alias>();
        auto y = b.as<defs::Alias>();
        return x->label == y->label && eq(x->alias, y->alias);
      }
      case DefKind::And: {
        auto x = a.as<defs::And>();
        auto y = b.as<defs::And>();
        return eq(x->left, y->left) && eq(x->right, y->right);
      }
    }
    return false;
  }

 private:
  int index(const Var& v, bool left) const {
    for (int i = static_cast<int>(env_.size()) - 1; i >= 0; --i) {
      auto u = left ? env_[i].first : env_[i].second;
      if (u == v.uid) return i;
    }
    return -1;
  }

  std::vector<std::pair<std::uint64_t, std::uint64_t>> env_;
};

}  // namespace

bool alpha_eq(const Type& a, const Type& b) { return AlphaEq{}.eq(a, b); }
bool alpha_eq(const Term& a, const Term& b) { return AlphaEq{}.eq(a, b); }
bool alpha_eq(const Value& a, const Value& b) { return AlphaEq{}.eq(a, b); }
bool alpha_eq(const Def& a, const Def& b) { return AlphaEq{}.eq(a, b); }

// ---------------------------------------------------------------------------
// Canonical keys: binders become levels, free variables their uids.

namespace {

class KeyWriter {
 public:
  std::string out;

  void var(const Var& v) {
    for (int i = static_cast<int>(bound_.size()) - 1; i >= 0; --i) {
      if (bound_[i] == v.uid) {
        out += '#';
        out += std::to_string(i);
        return;
      }
    }
    out += '$';
    out += std::to_string(v.uid);
  }
  template <class F>
  void bind(const Var& b, F&& f) {
    bound_.push_back(b.uid);
    f();
    bound_.pop_back();
  }

  void go(const Type& t) {
    std::visit(overloaded{
                   [&](const types::Top&) { out += 'T'; },
                   [&](const types::Bot&) { out += 'B'; },
                   [&](const types::All& a) {
                     out += "A(";
                     go(a.domain);
                     out += ',';
                     bind(a.param, [&] { go(a.codomain); });
                     out += ')';
                   },
                   [&](const types::Rec& r) {
                     out += "M(";
                     bind(r.self, [&] { go(r.body); });
                     out += ')';
                   },
                   [&](const types::Fld& f) {
                     out += "F(" + f.label + ',';
                     go(f.type);
                     out += ')';
                   },
                   [&](const types::Typ& d) {
                     out += "D(" + d.label + ',';
                     go(d.lower);
                     out += ',';
                     go(d.upper);
                     out += ')';
                   },
                   [&](const types::Sel& s) {
                     out += "S(";
                     var(s.receiver);
                     out += '.' + s.label + ')';
                   },
                   [&](const types::And& a) {
                     out += "N(";
                     go(a.left);
                     out += ',';
                     go(a.right);
                     out += ')';
                   },
               },
               t.node());
  }

  void go(const Term& t) {
    std::visit(overloaded{
                   [&](const terms::Ref& r) { var(r.var); },
                   [&](const terms::Val& v) { go(v.value); },
                   [&](const terms::Sel& s) {
                     out += "s(";
                     var(s.receiver);
                     out += '.' + s.label + ')';
                   },
                   [&](const terms::App& a) {
                     out += "a(";
                     var(a.fun);
                     out += ',';
                     var(a.arg);
                     out += ')';
                   },
                   [&](const terms::Let& l) {
                     out += "l(";
                     go(l.rhs);
                     out += ',';
                     bind(l.bound, [&] { go(l.body); });
                     out += ')';
                   },
               },
               t.node());
  }

  void go(const Value& v) {
    if (auto l = v.as<values::Lambda>()) {
      out += "L(";
      go(l->param_type);
      out += ',';
      bind(l->param, [&] { go(l->body); });
      out += ')';
    } else {
      auto n = v.as<values::Nu>();
      out += "V(";
      bind(n->self, [&] {
        go(n->self_type);
        out += ',';
        go(n->defs);
      });
      out += ')';
    }
  }

  void go(const Def& d) {
    std::visit(overloaded{
                   [&](const defs::Field& f) {
                     out += "f(" + f.label + ',';
                     go(f.rhs);
                     out += ')';
                   },
                   [&](const defs::Alias& a) {
                     out += "t(" + a.label + ',';
                     go(a.alias);
                     out += ')';
                   },
                   [&](const defs::And& a) {
                     out += "n(";
                     go(a.left);
                     out += ',';
                     go(a.right);
                     out += ')';
                   },
               },
               d.node());
  }

 private:
  std::vector<std::uint64_t> bound_;
};

}  // namespace

std::string canonical_key(const Type& t) {
  KeyWriter w;
  w.go(t);
  return std::move(w.out);
}
std::string canonical_key(const Term& t) {
  KeyWriter w;
  w.go(t);
  return std::move(w.out);
}
std::string canonical_key(const Def& d) {
  KeyWriter w;
  w.go(d);
  return std::move(w.out);
}

std::size_t size(const Type& t) {
  return std::visit(overloaded{
                        [](const types::Top&) -> std::size_t { return 1; },
                        [](const types::Bot&) -> std::size_t { return 1; },
                        [](const types::All& a) { return 1 + size(a.domain) + size(a.codomain); },
                        [](const types::Rec& r) { return 1 + size(r.body); },
                        [](const types::Fld& f) { return 1 + size(f.type); },
                        [](const types::Typ& d) { return 1 + size(d.lower) + size(d.upper); },
                        [](const types::Sel&) -> std::size_t { return 1; },
                        [](const types::And& a) { return 1 + size(a.left) + size(a.right); },
                    },
                    t.node());
}

namespace {
std::size_t def_size(const Def& d);
std::size_t value_size(const Value& v) {
  if (auto l = v.as<values::Lambda>()) return 1 + size(l->param_type) + size(l->body);
  auto n = v.as<values::Nu>();
  return 1 + size(n->self_type) + def_size(n->defs);
}
std::size_t def_size(const Def& d) {
  return std::visit(overloaded{
                        [](const defs::Field& f) { return 1 + size(f.rhs); },
                        [](const defs::Alias& a) { return 1 + size(a.alias); },
                        [](const defs::And& a) { return 1 + def_size(a.left) + def_size(a.right); },
                    },
                    d.node());
}
}  // namespace

std::size_t size(const Term& t) {
  return std::visit(overloaded{
                        [](const terms::Ref&) -> std::size_t { return 1; },
                        [](const terms::Val& v) { return 1 + value_size(v.value); },
                        [](const terms::Sel&) -> std::size_t { return 1; },
                        [](const terms::App&) -> std::size_t { return 1; },
                        [](const terms::Let& l) { return 1 + size(l.rhs) + size(l.body); },
                    },
                    t.node());
}

bool is_value(const Term& t) { return t.is<terms::Val>(); }
bool is_var(const Term& t) { return t.is<terms::Ref>(); }

}  // namespace dot
