// SPDX-License-Identifier: Apache-2.0

#include "gen.hpp"

#include <cctype>
#include <functional>

#include "core/derive.hpp"
#include "core/precise.hpp"
#include "core/search.hpp"

namespace dot::gen {

namespace {

using K = JudgmentKind;

const std::vector<std::string> kTermLabels = {"a", "b", "c"};
const std::vector<std::string> kTypeLabels = {"A", "B", "C"};
const std::vector<std::string> kBinderNames = {"x", "y", "z", "s"};

bool fits(const Derivation& d, int budget) { return static_cast<int>(height(d)) <= budget; }

Judgment sub_j(const Context& g, const Type& l, const Type& r) {
  return Judgment::subtyping(K::Subtyp, g, l, r);
}

Judgment typ_j(const Context& g, const Term& t, const Type& ty) {
  return Judgment::typing(K::Typ, g, t, ty);
}

// Tries the options in random order until one produces a result.
template <class T>
std::optional<T> first_of(Rng& r, std::vector<std::function<std::optional<T>()>> options) {
  while (!options.empty()) {
    std::size_t i = r.below(options.size());
    if (auto out = options[i]()) return out;
    options.erase(options.begin() + static_cast<std::ptrdiff_t>(i));
  }
  return std::nullopt;
}

Type meet_all(const std::vector<Type>& parts) {
  Type acc = parts.back();
  for (std::size_t i = parts.size() - 1; i-- > 0;) acc = mk::meet(parts[i], acc);
  return acc;
}

// Γ ⊢ x : {A: L..U} obtained from the precise closure.
struct Member {
  Var x;
  std::string label;
  Type lower;
  Type upper;
  Derivation typing;
};

std::vector<Member> members(const Context& g) {
  std::vector<Member> out;
  for (const auto& b : g.bindings())
    for (const auto& p : precise_types_of_var(g, b.var))
      if (const auto* t = p.type.as<types::Typ>())
        out.push_back({b.var, t->label, t->lower, t->upper, precise_to_general(p.deriv)});
  return out;
}

std::vector<Derivation> precise_typings(const Context& g, const Var& x) {
  std::vector<Derivation> out;
  for (const auto& p : precise_types_of_var(g, x)) out.push_back(precise_to_general(p.deriv));
  return out;
}

Type any_type_in(Rng& r, std::vector<Var>& scope, const std::vector<Member>& mems, int depth) {
  auto leaf = [&]() -> Type {
    std::size_t n = r.below(3);
    if (n == 2 && !mems.empty() && r.chance(0.8)) {
      const Member& m = r.pick(mems);
      return mk::sel(m.x, m.label);
    }
    if (n == 2 && !scope.empty()) return mk::sel(r.pick(scope), r.pick(kTypeLabels));
    return n == 0 ? mk::top() : mk::bot();
  };
  if (depth <= 0 || r.chance(0.3)) return leaf();
  switch (r.below(6)) {
    case 0: {
      Var p = fresh_var(r.pick(kBinderNames));
      Type dom = any_type_in(r, scope, mems, depth - 1);
      scope.push_back(p);
      Type cod = any_type_in(r, scope, mems, depth - 1);
      scope.pop_back();
      return mk::all(p, dom, cod);
    }
    case 1: {
      Var s = fresh_var(r.pick(kBinderNames));
      scope.push_back(s);
      Type body = any_type_in(r, scope, mems, depth - 1);
      scope.pop_back();
      return mk::mu(s, body);
    }
    case 2:
      return mk::fld(r.pick(kTermLabels), any_type_in(r, scope, mems, depth - 1));
    case 3: {
      Type lo = any_type_in(r, scope, mems, depth - 1);
      Type hi = r.chance(0.4) ? lo : any_type_in(r, scope, mems, depth - 1);
      return mk::decl(r.pick(kTypeLabels), lo, hi);
    }
    case 4:
      return mk::meet(any_type_in(r, scope, mems, depth - 1), any_type_in(r, scope, mems, depth - 1));
    default:
      return leaf();
  }
}

Def any_defs(Rng& r, std::vector<Var>& scope, int depth) {
  std::size_t n = 1 + r.below(3);
  std::vector<Def> parts;
  for (std::size_t i = 0; i < n; ++i) {
    if (r.chance(0.5))
      parts.push_back(mk::field(r.pick(kTermLabels), any_term(r, scope, depth - 1)));
    else
      parts.push_back(mk::alias(r.pick(kTypeLabels), any_type(r, scope, depth - 1)));
  }
  return mk::join(parts);
}

Term any_value(Rng& r, std::vector<Var>& scope, int depth) {
  Var b = fresh_var(r.pick(kBinderNames));
  if (r.chance(0.5)) {
    Type t = any_type(r, scope, depth - 1);
    scope.push_back(b);
    Term body = any_term(r, scope, depth - 1);
    scope.pop_back();
    return mk::lambda_term(b, t, body);
  }
  scope.push_back(b);
  Type t = any_type(r, scope, depth - 1);
  Def d = any_defs(r, scope, depth);
  scope.pop_back();
  return mk::nu_term(b, t, d);
}

// big <: c_j where big is the right-nested intersection of cs.
Derivation project(const Context& g, const std::vector<Type>& cs, std::size_t from, std::size_t j) {
  Type big = meet_all({cs.begin() + static_cast<std::ptrdiff_t>(from), cs.end()});
  if (from + 1 == cs.size()) return refl(K::Subtyp, g, big);
  const auto* a = big.as<types::And>();
  if (j == from) return make("And1-<:", sub_j(g, big, a->left));
  Derivation step = make("And2-<:", sub_j(g, big, a->right));
  return trans(step, project(g, cs, from + 1, j));
}

// meet(cs) <: meet(cs[0..k)).
Derivation prefix_sub(const Context& g, const std::vector<Type>& cs, std::size_t k) {
  Type big = meet_all(cs);
  if (k == cs.size()) return refl(K::Subtyp, g, big);
  std::function<Derivation(std::size_t)> go = [&](std::size_t i) -> Derivation {
    if (i + 1 == k) return project(g, cs, 0, i);
    Derivation left = project(g, cs, 0, i);
    Derivation right = go(i + 1);
    return make("<:-And", sub_j(g, big, mk::meet(left.conclusion.rhs, right.conclusion.rhs)), {left, right});
  };
  return go(0);
}

std::optional<Derivation> typing_of(Rng& r, const Context& g, const Var& y, const Type& target) {
  for (const auto& d : precise_typings(g, y))
    if (alpha_eq(d.conclusion.type, target)) return d;
  if (target.is<types::Top>()) {
    Derivation v = make("Var", typ_j(g, mk::ref(y), *g.lookup(y)));
    return make("Sub", typ_j(g, mk::ref(y), target), {v, make("Top", sub_j(g, *g.lookup(y), target))});
  }
  if (!r.chance(0.5)) return std::nullopt;
  SearchConfig cfg;
  cfg.max_depth = 3;
  cfg.max_nodes = 3000;
  return bounded_search(g, mk::ref(y), target, cfg);
}

}  // namespace

std::size_t Rng::below(std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(eng_);
}

bool Rng::chance(double p) { return std::uniform_real_distribution<double>(0.0, 1.0)(eng_) < p; }

Type any_type(Rng& r, std::vector<Var>& scope, int depth) { return any_type_in(r, scope, {}, depth); }

Term any_term(Rng& r, std::vector<Var>& scope, int depth) {
  auto var = [&] { return scope.empty() ? fresh_var("w") : r.pick(scope); };
  if (depth <= 0 || r.chance(0.2)) {
    switch (r.below(4)) {
      case 0: return mk::ref(var());
      case 1: return mk::select(var(), r.pick(kTermLabels));
      case 2: return mk::app(var(), var());
      default: {
        Var p = fresh_var(r.pick(kBinderNames));
        return mk::lambda_term(p, mk::top(), mk::ref(p));
      }
    }
  }
  if (r.chance(0.6)) {
    Var x = fresh_var(r.pick(kBinderNames));
    Term rhs = r.chance(0.6) ? any_value(r, scope, depth - 1) : any_term(r, scope, depth - 1);
    scope.push_back(x);
    Term body = any_term(r, scope, depth - 1);
    scope.pop_back();
    return mk::let(x, rhs, body);
  }
  if (r.chance(0.5)) return any_value(r, scope, depth);
  return any_term(r, scope, 0);
}

Context inert_context(Rng& r, int n) {
  static const std::vector<std::string> names = {"f", "o", "p", "q", "h", "k"};
  std::vector<Binding> bs;
  std::vector<Var> scope;
  for (int i = 0; i < n; ++i) {
    Context sofar(bs);
    auto mems = members(sofar);
    Var v = fresh_var(r.pick(names));
    Type t;
    if (r.chance(0.35)) {
      Var p = fresh_var(r.pick(kBinderNames));
      Type dom = any_type_in(r, scope, mems, 2);
      scope.push_back(p);
      Type cod = any_type_in(r, scope, mems, 2);
      scope.pop_back();
      t = mk::all(p, dom, cod);
    } else {
      Var s = fresh_var("s");
      std::vector<std::string> labels;
      for (const auto& l : kTypeLabels)
        if (r.chance(0.45)) labels.push_back(l);
      for (const auto& l : kTermLabels)
        if (r.chance(0.45)) labels.push_back(l);
      if (labels.empty()) labels.push_back(r.chance(0.5) ? "A" : "a");
      std::vector<Type> parts;
      scope.push_back(s);
      std::vector<Member> self_mems = mems;
      std::vector<std::string> own;
      for (const auto& l : labels)
        if (std::isupper(static_cast<unsigned char>(l[0]))) own.push_back(l);
      for (const auto& l : labels) {
        bool is_type = std::isupper(static_cast<unsigned char>(l[0])) != 0;
        Type inner = (!is_type && !own.empty() && r.chance(0.4)) ? mk::sel(s, r.pick(own))
                                                                 : any_type_in(r, scope, self_mems, is_type ? 1 : 2);
        parts.push_back(is_type ? mk::decl(l, inner, inner) : mk::fld(l, inner));
      }
      scope.pop_back();
      t = mk::mu(s, meet_all(parts));
    }
    bs.push_back({v, t});
    scope.push_back(v);
  }
  return Context(bs);
}

Type wf_type(Rng& r, const Context& g, int depth) {
  std::vector<Var> scope;
  for (const auto& b : g.bindings()) scope.push_back(b.var);
  return any_type_in(r, scope, members(g), depth);
}

std::optional<Derivation> sub_up(Rng& r, const Context& g, const Type& s, int budget) {
  using Opt = std::optional<Derivation>;
  if (budget < 1) return std::nullopt;
  std::vector<std::function<Opt()>> opts;
  opts.push_back([&]() -> Opt { return refl(K::Subtyp, g, s); });
  opts.push_back([&]() -> Opt { return make("Top", sub_j(g, s, mk::top())); });
  if (s.is<types::Bot>())
    opts.push_back([&]() -> Opt { return make("Bot", sub_j(g, s, wf_type(r, g, 2))); });
  if (const auto* a = s.as<types::And>()) {
    opts.push_back([&, a]() -> Opt { return make("And1-<:", sub_j(g, s, a->left)); });
    opts.push_back([&, a]() -> Opt { return make("And2-<:", sub_j(g, s, a->right)); });
  }
  if (budget >= 2) {
    opts.push_back([&]() -> Opt {
      auto a = sub_up(r, g, s, budget - 1);
      auto b = sub_up(r, g, s, budget - 1);
      if (!a || !b) return std::nullopt;
      return make("<:-And", sub_j(g, s, mk::meet(a->conclusion.rhs, b->conclusion.rhs)), {*a, *b});
    });
    opts.push_back([&]() -> Opt {
      auto a = sub_up(r, g, s, budget - 1);
      if (!a) return std::nullopt;
      auto b = sub_up(r, g, a->conclusion.rhs, budget - 1);
      if (!b) return std::nullopt;
      return make("Trans", sub_j(g, s, b->conclusion.rhs), {*a, *b});
    });
    if (const auto* f = s.as<types::Fld>())
      opts.push_back([&, f]() -> Opt {
        auto p = sub_up(r, g, f->type, budget - 1);
        if (!p) return std::nullopt;
        return make("Fld-<:-Fld", sub_j(g, s, mk::fld(f->label, p->conclusion.rhs)), {*p});
      });
    if (const auto* t = s.as<types::Typ>())
      opts.push_back([&, t]() -> Opt {
        auto lo = sub_down(r, g, t->lower, budget - 1);
        auto hi = sub_up(r, g, t->upper, budget - 1);
        if (!lo || !hi) return std::nullopt;
        return make("Typ-<:-Typ", sub_j(g, s, mk::decl(t->label, lo->conclusion.lhs, hi->conclusion.rhs)),
                    {*lo, *hi});
      });
    if (const auto* a = s.as<types::All>())
      opts.push_back([&, a]() -> Opt {
        auto dom = sub_down(r, g, a->domain, budget - 1);
        if (!dom) return std::nullopt;
        Var y = fresh_like(a->param);
        Context gy = g.extended(y, dom->conclusion.lhs);
        auto cod = sub_up(r, gy, subst(a->codomain, a->param, y), budget - 1);
        if (!cod) return std::nullopt;
        return make("All-<:-All", sub_j(g, s, mk::all(y, dom->conclusion.lhs, cod->conclusion.rhs)),
                    {*dom, *cod});
      });
  }
  auto mems = members(g);
  for (const auto& m : mems) {
    if (static_cast<int>(height(m.typing)) + 1 > budget) continue;
    if (const auto* sel = s.as<types::Sel>(); sel && sel->receiver == m.x && sel->label == m.label)
      for (int w = 0; w < 3; ++w)
        opts.push_back([&, m]() -> Opt { return make("Sel-<:", sub_j(g, s, m.upper), {m.typing}); });
    if (alpha_eq(m.lower, s))
      opts.push_back([&, m]() -> Opt { return make("<:-Sel", sub_j(g, s, mk::sel(m.x, m.label)), {m.typing}); });
  }
  auto out = first_of<Derivation>(r, opts);
  if (out && !fits(*out, budget)) return refl(K::Subtyp, g, s);
  return out;
}

std::optional<Derivation> sub_down(Rng& r, const Context& g, const Type& u, int budget) {
  using Opt = std::optional<Derivation>;
  if (budget < 1) return std::nullopt;
  std::vector<std::function<Opt()>> opts;
  opts.push_back([&]() -> Opt { return refl(K::Subtyp, g, u); });
  opts.push_back([&]() -> Opt { return make("Bot", sub_j(g, mk::bot(), u)); });
  if (u.is<types::Top>())
    opts.push_back([&]() -> Opt { return make("Top", sub_j(g, wf_type(r, g, 2), u)); });
  opts.push_back([&]() -> Opt { return make("And1-<:", sub_j(g, mk::meet(u, wf_type(r, g, 1)), u)); });
  opts.push_back([&]() -> Opt { return make("And2-<:", sub_j(g, mk::meet(wf_type(r, g, 1), u), u)); });
  if (budget >= 2) {
    opts.push_back([&]() -> Opt {
      auto a = sub_down(r, g, u, budget - 1);
      if (!a) return std::nullopt;
      auto b = sub_down(r, g, a->conclusion.lhs, budget - 1);
      if (!b) return std::nullopt;
      return make("Trans", sub_j(g, b->conclusion.lhs, u), {*b, *a});
    });
    if (const auto* f = u.as<types::Fld>())
      opts.push_back([&, f]() -> Opt {
        auto p = sub_down(r, g, f->type, budget - 1);
        if (!p) return std::nullopt;
        return make("Fld-<:-Fld", sub_j(g, mk::fld(f->label, p->conclusion.lhs), u), {*p});
      });
    if (const auto* t = u.as<types::Typ>())
      opts.push_back([&, t]() -> Opt {
        auto lo = sub_up(r, g, t->lower, budget - 1);
        auto hi = sub_down(r, g, t->upper, budget - 1);
        if (!lo || !hi) return std::nullopt;
        return make("Typ-<:-Typ", sub_j(g, mk::decl(t->label, lo->conclusion.rhs, hi->conclusion.lhs), u),
                    {*lo, *hi});
      });
    if (const auto* a = u.as<types::All>())
      opts.push_back([&, a]() -> Opt {
        auto dom = sub_up(r, g, a->domain, budget - 1);
        if (!dom) return std::nullopt;
        Var y = fresh_like(a->param);
        Context gy = g.extended(y, a->domain);
        auto cod = sub_down(r, gy, subst(a->codomain, a->param, y), budget - 1);
        if (!cod) return std::nullopt;
        return make("All-<:-All", sub_j(g, mk::all(y, dom->conclusion.rhs, cod->conclusion.lhs), u),
                    {*dom, *cod});
      });
  }
  auto mems = members(g);
  for (const auto& m : mems) {
    if (static_cast<int>(height(m.typing)) + 1 > budget) continue;
    if (const auto* sel = u.as<types::Sel>(); sel && sel->receiver == m.x && sel->label == m.label)
      for (int w = 0; w < 3; ++w)
        opts.push_back([&, m]() -> Opt { return make("<:-Sel", sub_j(g, m.lower, u), {m.typing}); });
    if (alpha_eq(m.upper, u))
      opts.push_back([&, m]() -> Opt { return make("Sel-<:", sub_j(g, mk::sel(m.x, m.label), u), {m.typing}); });
  }
  auto out = first_of<Derivation>(r, opts);
  if (out && !fits(*out, budget)) return refl(K::Subtyp, g, u);
  return out;
}

std::optional<Derivation> var_typing(Rng& r, const Context& g, const Var& x, int budget) {
  using Opt = std::optional<Derivation>;
  if (budget < 1 || !g.binds(x)) return std::nullopt;
  auto base = [&]() -> Opt {
    std::vector<Derivation> fitting;
    for (auto& d : precise_typings(g, x))
      if (fits(d, budget)) fitting.push_back(std::move(d));
    if (fitting.empty()) return std::nullopt;
    return r.pick(fitting);
  };
  if (budget == 1 || r.chance(0.35)) return base();
  std::vector<std::function<Opt()>> opts;
  opts.push_back(base);
  opts.push_back([&]() -> Opt {
    auto d = var_typing(r, g, x, budget - 1);
    if (!d) return std::nullopt;
    auto s = sub_up(r, g, d->conclusion.type, budget - 1);
    if (!s) return std::nullopt;
    return make("Sub", typ_j(g, mk::ref(x), s->conclusion.rhs), {*d, *s});
  });
  opts.push_back([&]() -> Opt {
    auto d = var_typing(r, g, x, budget - 1);
    if (!d) return std::nullopt;
    Var z = fresh_var("z");
    return make("Rec-I", typ_j(g, mk::ref(x), mk::mu(z, subst(d->conclusion.type, x, z))), {*d});
  });
  opts.push_back([&]() -> Opt {
    auto a = var_typing(r, g, x, budget - 1);
    auto b = var_typing(r, g, x, budget - 1);
    if (!a || !b) return std::nullopt;
    return make("And-I", typ_j(g, mk::ref(x), mk::meet(a->conclusion.type, b->conclusion.type)), {*a, *b});
  });
  opts.push_back([&]() -> Opt {
    auto d = var_typing(r, g, x, budget - 1);
    if (!d || !d->conclusion.type.is<types::Rec>()) return std::nullopt;
    const auto* rec = d->conclusion.type.as<types::Rec>();
    return make("Rec-E", typ_j(g, mk::ref(x), subst(rec->body, rec->self, x)), {*d});
  });
  return first_of<Derivation>(r, opts);
}

std::optional<Derivation> lambda_typing(Rng& r, const Context& g, int budget) {
  if (budget < 2) return std::nullopt;
  Type dom = wf_type(r, g, 2);
  Var y = fresh_var(r.pick(std::vector<std::string>{"y", "z", "w"}));
  auto body = typing(r, g.extended(y, dom), budget - 1);
  if (!body) return std::nullopt;
  Term lam = mk::lambda_term(y, dom, body->conclusion.term);
  return make("All-I", typ_j(g, lam, mk::all(y, dom, body->conclusion.type)), {*body});
}

std::optional<Derivation> object_typing(Rng& r, const Context& g, int budget) {
  if (budget < 3) return std::nullopt;
  Var self = fresh_var(r.pick(std::vector<std::string>{"s", "o", "this"}));

  std::vector<std::string> aliases, fields;
  for (const auto& l : kTypeLabels)
    if (r.chance(0.35)) aliases.push_back(l);
  for (const auto& l : kTermLabels)
    if (r.chance(0.4)) fields.push_back(l);
  if (fields.empty()) fields.push_back(r.pick(kTermLabels));
  int parts_n = static_cast<int>(aliases.size() + fields.size());
  // {}-I, the aggregation chain and Def-Trm sit above each body.
  int body_budget = budget - 2 - (parts_n - 1);
  if (body_budget < 1) {
    aliases.clear();
    fields.resize(1);
    parts_n = 1;
    body_budget = budget - 2;
  }

  std::vector<Type> alias_types, conj;
  for (std::size_t i = 0; i < aliases.size(); ++i) {
    Type t = (i > 0 && r.chance(0.25)) ? mk::sel(self, aliases[i - 1]) : wf_type(r, g, 1);
    alias_types.push_back(t);
    conj.push_back(mk::decl(aliases[i], t, t));
  }
  Type t_alias = conj.empty() ? mk::top() : meet_all(conj);
  Context ga = g.extended(self, t_alias);

  std::vector<Derivation> bodies;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    auto d = typing(r, ga, body_budget);
    if (!d) return std::nullopt;
    conj.push_back(mk::fld(fields[i], d->conclusion.type));
    bodies.push_back(*d);
  }
  Type t_full = meet_all(conj);
  Context gf = g.extended(self, t_full);
  Derivation to_alias = aliases.empty() ? make("Top", sub_j(gf, t_full, mk::top()))
                                        : prefix_sub(gf, conj, aliases.size());

  std::vector<Derivation> leaves;
  std::vector<Def> defs;
  for (std::size_t i = 0; i < aliases.size(); ++i) {
    Def d = mk::alias(aliases[i], alias_types[i]);
    defs.push_back(d);
    leaves.push_back(make("Def-Typ", Judgment::definitions(gf, d, conj[i])));
  }
  for (std::size_t i = 0; i < fields.size(); ++i) {
    Derivation body = unchecked::narrow(bodies[i], self, t_full, to_alias);
    Def d = mk::field(fields[i], bodies[i].conclusion.term);
    defs.push_back(d);
    leaves.push_back(
        make("Def-Trm", Judgment::definitions(gf, d, conj[aliases.size() + i]), {body}));
  }
  Derivation acc = leaves.back();
  for (std::size_t i = leaves.size() - 1; i-- > 0;) {
    acc = make("AndDef-I",
               Judgment::definitions(gf, mk::both(defs[i], acc.conclusion.defs), mk::meet(conj[i], acc.conclusion.type)),
               {leaves[i], acc});
  }
  Term obj = mk::nu_term(self, t_full, mk::join(defs));
  Derivation out = make("{}-I", typ_j(g, obj, mk::mu(self, t_full)), {acc});
  if (!fits(out, budget)) return std::nullopt;
  return out;
}

std::optional<Derivation> var_or_value_typing(Rng& r, const Context& g, int budget) {
  using Opt = std::optional<Derivation>;
  std::vector<std::function<Opt()>> opts;
  if (!g.empty()) {
    opts.push_back([&]() -> Opt { return var_typing(r, g, r.pick(g.bindings()).var, budget); });
    opts.push_back([&]() -> Opt { return var_typing(r, g, r.pick(g.bindings()).var, budget); });
  }
  opts.push_back([&]() -> Opt { return lambda_typing(r, g, budget); });
  opts.push_back([&]() -> Opt { return object_typing(r, g, budget); });
  opts.push_back([&]() -> Opt {
    auto v = r.chance(0.5) ? lambda_typing(r, g, budget - 1) : object_typing(r, g, budget - 1);
    if (!v) return std::nullopt;
    auto s = sub_up(r, g, v->conclusion.type, budget - 1);
    if (!s) return std::nullopt;
    return make("Sub", typ_j(g, v->conclusion.term, s->conclusion.rhs), {*v, *s});
  });
  return first_of<Derivation>(r, opts);
}

std::optional<Derivation> typing(Rng& r, const Context& g, int budget) {
  using Opt = std::optional<Derivation>;
  if (budget < 1) return std::nullopt;
  std::vector<std::function<Opt()>> opts;
  if (!g.empty()) {
    opts.push_back([&]() -> Opt { return var_typing(r, g, r.pick(g.bindings()).var, budget); });
  }
  opts.push_back([&]() -> Opt { return lambda_typing(r, g, budget); });
  opts.push_back([&]() -> Opt { return object_typing(r, g, budget); });
  opts.push_back([&]() -> Opt {
    if (budget < 2) return std::nullopt;
    auto rhs = typing(r, g, budget - 1);
    if (!rhs) return std::nullopt;
    Var x = fresh_var(r.pick(std::vector<std::string>{"l", "m", "n"}));
    Context gx = g.extended(x, rhs->conclusion.type);
    auto body = typing(r, gx, budget - 1);
    if (!body) return std::nullopt;
    if (free_vars(body->conclusion.type).count(x)) {
      if (!fits(*body, budget - 2)) return std::nullopt;
      Derivation top = make("Top", sub_j(gx, body->conclusion.type, mk::top()));
      body = make("Sub", typ_j(gx, body->conclusion.term, mk::top()), {*body, top});
    }
    Term t = mk::let(x, rhs->conclusion.term, body->conclusion.term);
    return make("Let", typ_j(g, t, body->conclusion.type), {*rhs, *body});
  });
  opts.push_back([&]() -> Opt {
    if (budget < 2 || g.empty()) return std::nullopt;
    std::vector<Derivation> funs;
    for (const auto& b : g.bindings())
      for (auto& d : precise_typings(g, b.var))
        if (d.conclusion.type.is<types::All>() && fits(d, budget - 1)) funs.push_back(std::move(d));
    if (funs.empty()) return std::nullopt;
    Derivation f = r.pick(funs);
    if (r.chance(0.4)) {
      auto s = sub_up(r, g, f.conclusion.type, budget - 2);
      if (s && s->conclusion.rhs.is<types::All>())
        f = make("Sub", typ_j(g, f.conclusion.term, s->conclusion.rhs), {f, *s});
    }
    const auto* all = f.conclusion.type.as<types::All>();
    const Var& y = r.pick(g.bindings()).var;
    auto arg = typing_of(r, g, y, all->domain);
    if (!arg || !fits(*arg, budget - 1)) return std::nullopt;
    const Var& fv = f.conclusion.term.as<terms::Ref>()->var;
    return make("All-E", typ_j(g, mk::app(fv, y), subst(all->codomain, all->param, y)), {f, *arg});
  });
  opts.push_back([&]() -> Opt {
    if (budget < 2 || g.empty()) return std::nullopt;
    const Var& x = r.pick(g.bindings()).var;
    std::vector<Derivation> flds;
    for (auto& d : precise_typings(g, x))
      if (d.conclusion.type.is<types::Fld>() && fits(d, budget - 1)) flds.push_back(std::move(d));
    if (flds.empty()) return std::nullopt;
    Derivation d = r.pick(flds);
    if (r.chance(0.4)) {
      auto s = sub_up(r, g, d.conclusion.type, budget - 2);
      if (s && s->conclusion.rhs.is<types::Fld>())
        d = make("Sub", typ_j(g, d.conclusion.term, s->conclusion.rhs), {d, *s});
    }
    const auto* f = d.conclusion.type.as<types::Fld>();
    return make("{}-E", typ_j(g, mk::select(x, f->label), f->type), {d});
  });
  opts.push_back([&]() -> Opt {
    if (budget < 2) return std::nullopt;
    auto d = typing(r, g, budget - 1);
    if (!d) return std::nullopt;
    auto s = sub_up(r, g, d->conclusion.type, budget - 1);
    if (!s) return std::nullopt;
    return make("Sub", typ_j(g, d->conclusion.term, s->conclusion.rhs), {*d, *s});
  });
  // Into a selection: t : L <: x.A where Γ ⊢ x : {A: L..U}.
  opts.push_back([&]() -> Opt {
    if (budget < 3) return std::nullopt;
    auto mems = members(g);
    if (mems.empty()) return std::nullopt;
    const Member& m = r.pick(mems);
    if (!fits(m.typing, budget - 2)) return std::nullopt;
    auto d = typing(r, g, budget - 2);
    if (!d) return std::nullopt;
    Derivation into = make("<:-Sel", sub_j(g, m.lower, mk::sel(m.x, m.label)), {m.typing});
    Derivation s = into;
    if (!alpha_eq(d->conclusion.type, m.lower)) {
      if (!m.lower.is<types::Top>()) return std::nullopt;
      s = make("Trans", sub_j(g, d->conclusion.type, into.conclusion.rhs),
               {make("Top", sub_j(g, d->conclusion.type, m.lower)), into});
    }
    return make("Sub", typ_j(g, d->conclusion.term, s.conclusion.rhs), {*d, s});
  });
  // Out of a selection: a variable or field typed x.A, widened to U.
  opts.push_back([&]() -> Opt {
    if (budget < 3) return std::nullopt;
    auto mems = members(g);
    std::vector<Derivation> at_sel;
    for (const auto& b : g.bindings())
      for (auto& p : precise_typings(g, b.var)) {
        const Type& t = p.conclusion.type;
        if (t.is<types::Sel>() && fits(p, budget - 2)) at_sel.push_back(p);
        if (const auto* f = t.as<types::Fld>(); f && f->type.is<types::Sel>() && fits(p, budget - 3))
          at_sel.push_back(make("{}-E", typ_j(g, mk::select(b.var, f->label), f->type), {p}));
      }
    if (at_sel.empty()) return std::nullopt;
    Derivation d = r.pick(at_sel);
    const auto* sel = d.conclusion.type.as<types::Sel>();
    std::optional<Derivation> s;
    for (const auto& m : mems)
      if (m.x == sel->receiver && m.label == sel->label && fits(m.typing, budget - 2))
        s = make("Sel-<:", sub_j(g, d.conclusion.type, m.upper), {m.typing});
    if (!s) return std::nullopt;
    if (r.chance(0.3))
      if (auto more = sub_up(r, g, s->conclusion.rhs, budget - 2))
        s = make("Trans", sub_j(g, d.conclusion.type, more->conclusion.rhs), {*s, *more});
    return make("Sub", typ_j(g, d.conclusion.term, s->conclusion.rhs), {d, *s});
  });
  return first_of<Derivation>(r, opts);
}

}  // namespace dot::gen
