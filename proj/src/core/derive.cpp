// SPDX-License-Identifier: Apache-2.0

#include "core/derive.hpp"

#include <algorithm>

#include "core/error.hpp"
#include "core/rules.hpp"

namespace dot {

Derivation make(std::string rule, Judgment j, std::vector<Derivation> premises) {
  return Derivation{std::move(rule), std::move(j), std::move(premises)};
}

bool is_refl(const Derivation& d) { return d.rule == "Refl" || d.rule == "Refl-#"; }

Derivation refl(JudgmentKind k, const Context& g, const Type& t) {
  return make(k == JudgmentKind::Subtyp ? "Refl" : "Refl-#", Judgment::subtyping(k, g, t, t));
}

Derivation trans(Derivation a, Derivation b) {
  if (is_refl(a)) return b;
  if (is_refl(b)) return a;
  JudgmentKind k = a.conclusion.kind;
  Judgment j = Judgment::subtyping(k, a.conclusion.ctx, a.conclusion.lhs, b.conclusion.rhs);
  return make(k == JudgmentKind::Subtyp ? "Trans" : "Trans-#", std::move(j), {std::move(a), std::move(b)});
}

Derivation subsume(Derivation t, Derivation sub) {
  if (is_refl(sub)) return t;
  Judgment j = t.conclusion;
  j.type = sub.conclusion.rhs;
  return make(j.kind == JudgmentKind::Typ ? "Sub" : "Sub-#", std::move(j), {std::move(t), std::move(sub)});
}

namespace {
const char* const kHasTightForm[] = {
    "Var",  "All-I",      "All-E",   "{}-I",    "{}-E",   "Let",    "Rec-I",
    "Rec-E", "And-I",     "Sub",     "Top",     "Bot",    "Refl",   "Trans",
    "Fld-<:-Fld", "And1-<:", "And2-<:", "<:-And", "Typ-<:-Typ", "All-<:-All",
};
}

std::string tight_name(const std::string& general) {
  for (const char* n : kHasTightForm)
    if (general == n) return general + "-#";
  fail(ErrorCode::InvalidInput, "rule " + general + " has no tight form");
}

std::string general_name(const std::string& tight) {
  std::string base = tight.size() > 2 ? tight.substr(0, tight.size() - 2) : "";
  if (tight.size() > 2 && tight.compare(tight.size() - 2, 2, "-#") == 0)
    for (const char* n : kHasTightForm)
      if (base == n) return base;
  fail(ErrorCode::InvalidInput, "rule " + tight + " has no general form");
}

bool kinds_within(const Derivation& d, std::initializer_list<JudgmentKind> allowed) {
  if (std::find(allowed.begin(), allowed.end(), d.conclusion.kind) == allowed.end()) return false;
  for (const auto& p : d.premises)
    if (!kinds_within(p, allowed)) return false;
  return true;
}

namespace {
void collect_ext(const Derivation& d, std::size_t root, VarSet& out) {
  const auto& b = d.conclusion.ctx.bindings();
  for (std::size_t i = root; i < b.size(); ++i) out.insert(b[i].var);
  for (const auto& p : d.premises) collect_ext(p, root, out);
}

Judgment rename_judgment(const Judgment& j, const Var& from, const Var& to) {
  Judgment out = j;
  std::vector<Binding> bs;
  for (const auto& b : j.ctx.bindings())
    bs.push_back(Binding{b.var == from ? to : b.var, subst(b.type, from, to)});
  out.ctx = Context(std::move(bs));
  if (j.term) out.term = subst(j.term, from, to);
  if (j.defs) out.defs = subst(j.defs, from, to);
  if (j.type) out.type = subst(j.type, from, to);
  if (j.lhs) out.lhs = subst(j.lhs, from, to);
  if (j.rhs) out.rhs = subst(j.rhs, from, to);
  return out;
}
}  // namespace

VarSet extension_vars(const Derivation& d) {
  VarSet out;
  collect_ext(d, d.conclusion.ctx.size(), out);
  return out;
}

Derivation map_judgments(const Derivation& d, const std::function<Judgment(const Judgment&)>& f) {
  Derivation out{d.rule, f(d.conclusion), {}};
  out.premises.reserve(d.premises.size());
  for (const auto& p : d.premises) out.premises.push_back(map_judgments(p, f));
  return out;
}

namespace {
Derivation rename_raw(const Derivation& d, const Var& from, const Var& to) {
  return map_judgments(d, [&](const Judgment& j) { return rename_judgment(j, from, to); });
}
}  // namespace

Derivation freshen_extensions(const Derivation& d) {
  Derivation out = d;
  for (const auto& v : extension_vars(d)) out = rename_raw(out, v, fresh_like(v));
  return out;
}

Derivation rename_var(const Derivation& d, const Var& from, const Var& to) {
  if (from == to) return d;
  Derivation src = extension_vars(d).count(to) ? freshen_extensions(d) : d;
  return rename_raw(src, from, to);
}

Derivation weaken(const Derivation& d, const std::vector<Binding>& extra) {
  if (extra.empty()) return d;
  VarSet avoid;
  for (const auto& b : extra) {
    avoid.insert(b.var);
    for (const auto& v : free_vars(b.type)) avoid.insert(v);
  }
  Derivation src = d;
  for (const auto& v : extension_vars(d))
    if (avoid.count(v)) src = rename_raw(src, v, fresh_like(v));
  std::size_t root = d.conclusion.ctx.size();
  return map_judgments(src, [&](const Judgment& j) {
    Judgment out = j;
    auto bs = j.ctx.bindings();
    bs.insert(bs.begin() + static_cast<std::ptrdiff_t>(root), extra.begin(), extra.end());
    out.ctx = Context(std::move(bs));
    return out;
  });
}

// ---------------------------------------------------------------------------

Derivation precise_to_general(const Derivation& d) {
  Judgment j = d.conclusion;
  j.kind = JudgmentKind::Typ;
  if (d.rule == "Var!") return make("Var", j);
  if (d.rule == "Rec-E!") return make("Rec-E", j, {precise_to_general(d.premises[0])});
  if (d.rule == "And1-E!" || d.rule == "And2-E!") {
    Derivation inner = precise_to_general(d.premises[0]);
    Judgment s = Judgment::subtyping(JudgmentKind::Subtyp, j.ctx, inner.conclusion.type, j.type);
    return make("Sub", j, {inner, make(d.rule == "And1-E!" ? "And1-<:" : "And2-<:", s)});
  }
  if (d.rule == "All-I!") return make("All-I", j, d.premises);
  if (d.rule == "{}-I!") return make("{}-I", j, d.premises);
  fail(ErrorCode::InvalidInput, "not a precise rule: " + d.rule);
}

Derivation tight_to_general(const Derivation& d) {
  switch (d.conclusion.kind) {
    case JudgmentKind::Typ:
    case JudgmentKind::Subtyp:
    case JudgmentKind::Defs:
      return d;
    case JudgmentKind::TypPrecise:
      return precise_to_general(d);
    case JudgmentKind::TypTight:
    case JudgmentKind::SubtypTight:
      break;
    default:
      fail(ErrorCode::InvalidInput, "cannot embed " + std::string(kind_name(d.conclusion.kind)) +
                                        " derivations into general typing");
  }
  Judgment j = d.conclusion;
  j.kind = j.kind == JudgmentKind::TypTight ? JudgmentKind::Typ : JudgmentKind::Subtyp;
  if (d.rule == "<:-Sel-#") return make("<:-Sel", j, {precise_to_general(d.premises[0])});
  if (d.rule == "Sel-<:-#") return make("Sel-<:", j, {precise_to_general(d.premises[0])});
  Derivation out{general_name(d.rule), j, {}};
  for (const auto& p : d.premises) out.premises.push_back(tight_to_general(p));
  return out;
}

// ---------------------------------------------------------------------------
// Narrowing

namespace unchecked {

Derivation narrow(const Derivation& d, const Var& x, const Type& t_new, const Derivation& sub) {
  std::size_t root = sub.conclusion.ctx.size();
  std::function<Derivation(const Derivation&)> go = [&](const Derivation& n) -> Derivation {
    Judgment j = n.conclusion;
    j.ctx = j.ctx.with_type(x, t_new);
    if (n.rule == "Var") {
      auto r = j.term.as<terms::Ref>();
      if (r && r->var == x) {
        Derivation v = make("Var", Judgment::typing(JudgmentKind::Typ, j.ctx, j.term, t_new));
        std::vector<Binding> extra(j.ctx.bindings().begin() + static_cast<std::ptrdiff_t>(root),
                                   j.ctx.bindings().end());
        return make("Sub", j, {v, weaken(sub, extra)});
      }
    }
    Derivation out{n.rule, j, {}};
    for (const auto& p : n.premises) out.premises.push_back(go(p));
    return out;
  };
  // Keep the extension variables of d and sub apart.
  return go(freshen_extensions(d));
}

}  // namespace unchecked

Derivation narrow(const Derivation& d, const Var& x, const Type& t_new, const Derivation& sub) {
  if (!kinds_within(d, {JudgmentKind::Typ, JudgmentKind::Subtyp, JudgmentKind::Defs}))
    fail(ErrorCode::InvalidInput, "narrowing applies to general derivations only");
  const Context& g = d.conclusion.ctx;
  const Type* old = g.lookup(x);
  if (!old) fail(ErrorCode::InvalidInput, "variable " + x.name + " is not bound in the derivation");
  const Judgment& s = sub.conclusion;
  if (s.kind != JudgmentKind::Subtyp || !alpha_eq(s.ctx, g.with_type(x, t_new)) ||
      !alpha_eq(s.lhs, t_new) || !alpha_eq(s.rhs, *old))
    fail(ErrorCode::InvalidInput, "subtyping derivation must conclude Γ[x: T'] ⊢ T' <: Γ(x)");
  if (!is_valid(d)) fail(ErrorCode::InvalidInput, "input derivation does not validate");
  if (!is_valid(sub)) fail(ErrorCode::InvalidInput, "subtyping derivation does not validate");
  return unchecked::narrow(d, x, t_new, sub);
}

// ---------------------------------------------------------------------------
// Substitution

Derivation subst_deriv(const Derivation& d, const Var& x, const Derivation& dy) {
  if (!kinds_within(d, {JudgmentKind::Typ, JudgmentKind::Subtyp, JudgmentKind::Defs}))
    fail(ErrorCode::InvalidInput, "substitution applies to general derivations only");
  const Context& g = d.conclusion.ctx;
  if (!g.binds(x)) fail(ErrorCode::InvalidInput, "variable " + x.name + " is not bound");
  if (g.bindings().back().var != x)
    fail(ErrorCode::XNotLast, "variable " + x.name + " is not the last binding");
  const Type& s_type = g.bindings().back().type;
  Context base(std::vector<Binding>(g.bindings().begin(), g.bindings().end() - 1));
  const Judgment& yj = dy.conclusion;
  auto yref = yj.kind == JudgmentKind::Typ ? yj.term.as<terms::Ref>() : nullptr;
  if (!yref) fail(ErrorCode::InvalidInput, "argument derivation must type a variable");
  const Var y = yref->var;
  if (!alpha_eq(yj.ctx, base) || !alpha_eq(yj.type, subst(s_type, x, y)))
    fail(ErrorCode::InvalidInput, "argument derivation must conclude Γ ⊢ y : [x:=y]S");
  if (!is_valid(d)) fail(ErrorCode::InvalidInput, "input derivation does not validate");
  if (!is_valid(dy)) fail(ErrorCode::InvalidInput, "argument derivation does not validate");

  std::size_t root = base.size();
  std::function<Derivation(const Derivation&)> go = [&](const Derivation& n) -> Derivation {
    Judgment j = n.conclusion;
    std::vector<Binding> bs;
    for (const auto& b : j.ctx.bindings())
      if (b.var != x) bs.push_back(Binding{b.var, subst(b.type, x, y)});
    j.ctx = Context(std::move(bs));
    if (j.term) j.term = subst(j.term, x, y);
    if (j.defs) j.defs = subst(j.defs, x, y);
    if (j.type) j.type = subst(j.type, x, y);
    if (j.lhs) j.lhs = subst(j.lhs, x, y);
    if (j.rhs) j.rhs = subst(j.rhs, x, y);
    if (n.rule == "Var") {
      auto r = n.conclusion.term.as<terms::Ref>();
      if (r && r->var == x) {
        std::vector<Binding> extra(j.ctx.bindings().begin() + static_cast<std::ptrdiff_t>(root),
                                   j.ctx.bindings().end());
        return weaken(dy, extra);
      }
    }
    Derivation out{n.rule, j, {}};
    for (const auto& p : n.premises) out.premises.push_back(go(p));
    return out;
  };
  VarSet avoid = extension_vars(dy);
  avoid.insert(y);
  Derivation src = d;
  for (const auto& v : extension_vars(d))
    if (avoid.count(v)) src = rename_var(src, v, fresh_like(v));
  return go(src);
}

// ---------------------------------------------------------------------------

ValuePrecise value_precise(const Context& g, const Derivation& d) {
  const Judgment& c = d.conclusion;
  if (c.kind != JudgmentKind::Typ || !is_value(c.term))
    fail(ErrorCode::InvalidInput, "value_precise needs a general typing of a value");
  if (!alpha_eq(c.ctx, g)) fail(ErrorCode::InvalidInput, "derivation context differs from Γ");
  if (!is_valid(d)) fail(ErrorCode::InvalidInput, "input derivation does not validate");

  std::function<ValuePrecise(const Derivation&)> go = [&](const Derivation& n) -> ValuePrecise {
    if (n.rule == "Sub") {
      ValuePrecise inner = go(n.premises[0]);
      inner.sub = trans(inner.sub, n.premises[1]);
      return inner;
    }
    Judgment j = n.conclusion;
    j.kind = JudgmentKind::TypPrecise;
    Derivation p;
    if (n.rule == "All-I")
      p = make("All-I!", j, n.premises);
    else if (n.rule == "{}-I")
      p = make("{}-I!", j, n.premises);
    else
      fail(ErrorCode::InvalidInput, "unexpected rule " + n.rule + " typing a value");
    return ValuePrecise{j.type, p, refl(JudgmentKind::Subtyp, g, j.type)};
  };
  return go(d);
}

}  // namespace dot
