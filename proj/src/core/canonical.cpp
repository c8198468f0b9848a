// SPDX-License-Identifier: Apache-2.0

#include "core/canonical.hpp"

#include "core/derive.hpp"
#include "core/error.hpp"
#include "core/inert.hpp"
#include "core/rules.hpp"
#include "core/transform.hpp"

namespace dot {

namespace {

using K = JudgmentKind;

[[noreturn]] void bad(const std::string& what) { fail(ErrorCode::InvalidInput, what); }

// Shared preconditions; returns the invertible derivation.
Derivation to_invertible(const Context& g, const Derivation& d, bool want_var) {
  if (auto off = is_inert_context(g))
    fail(ErrorCode::NonInertContext, "context is not inert at " + off->var.name);
  const Judgment& j = d.conclusion;
  if (j.kind != K::Typ) bad("expected a general typing derivation");
  if (want_var ? !is_var(j.term) : !is_value(j.term))
    bad(want_var ? "subject must be a variable" : "subject must be a value");
  if (!alpha_eq(j.ctx, g)) bad("derivation context differs from the given context");
  if (!is_valid(d)) bad("input derivation does not validate");
  return unchecked::tight_to_invertible(unchecked::general_to_tight(d));
}

const std::vector<std::string> kFrontStages = {"⊢ to ⊢#", "⊢# to ⊢##", "Induction on ⊢##"};

struct FunStep {
  Derivation precise;  // Γ ⊢! s : all(x: T') U'
  Derivation dom;      // Γ ⊢# T <: T'
  Var y;
  Derivation cod;      // Γ, y: T ⊢ [x':=y]U' <: [x:=y]U
};

FunStep fun_ind(const Derivation& i) {
  const Judgment& j = i.conclusion;
  if (i.rule == "Var-##" || i.rule == "Val-##") {
    const Derivation& pp = i.premises[0];
    auto all = pp.conclusion.type.as<types::All>();
    if (!all) fail(ErrorCode::Precondition, "precise type is not a function type");
    Var y = fresh_like(all->param);
    return FunStep{pp, refl(K::SubtypTight, j.ctx, all->domain), y,
                   refl(K::Subtyp, j.ctx.extended(y, all->domain), subst(all->codomain, all->param, y))};
  }
  if (i.rule == "All-I-##" || i.rule == "All-v-##") {
    FunStep r = fun_ind(i.premises[0]);
    const Derivation& s1 = i.premises[1];  // Γ ⊢# T <: T0
    const Derivation& s2 = i.premises[2];  // Γ, y2: T ⊢ U0 <: U
    const Binding& b = s2.conclusion.ctx.bindings().back();
    Derivation c = rename_var(r.cod, r.y, b.var);
    Derivation widen = weaken(tight_to_general(s1), {b});
    Derivation n = unchecked::narrow(c, b.var, b.type, widen);
    return FunStep{r.precise, trans(s1, r.dom), b.var, trans(n, s2)};
  }
  fail(ErrorCode::Precondition, "no invertible function typing (rule " + i.rule + ")");
}

struct ObjStep {
  Derivation precise;  // Γ ⊢! x : {a: T'}
  Derivation sub;      // Γ ⊢# T' <: T
};

ObjStep obj_ind(const Derivation& i) {
  if (i.rule == "Var-##") {
    const Derivation& pp = i.premises[0];
    auto f = pp.conclusion.type.as<types::Fld>();
    if (!f) fail(ErrorCode::Precondition, "precise type is not a field declaration");
    return ObjStep{pp, refl(K::SubtypTight, pp.conclusion.ctx, f->type)};
  }
  if (i.rule == "Fld-<:-##") {
    ObjStep r = obj_ind(i.premises[0]);
    r.sub = trans(r.sub, i.premises[1]);
    return r;
  }
  fail(ErrorCode::Precondition, "no invertible field typing (rule " + i.rule + ")");
}

// The Var! leaf at the bottom of a chain of precise eliminations.
const Derivation& precise_root(const Derivation& pp) {
  const Derivation* cur = &pp;
  while (cur->rule != "Var!") {
    if (cur->premises.size() != 1) fail(ErrorCode::Precondition, "unexpected precise rule " + cur->rule);
    cur = &cur->premises[0];
  }
  return *cur;
}

const Derivation* find_field_def(const Derivation& d, const std::string& label) {
  if (d.rule == "Def-Trm") {
    auto f = d.conclusion.defs.as<defs::Field>();
    return f && f->label == label ? &d : nullptr;
  }
  for (const auto& p : d.premises)
    if (auto hit = find_field_def(p, label)) return hit;
  return nullptr;
}

}  // namespace

CanonicalFunResult canon_fun_var(const Context& g, const Derivation& d) {
  if (!d.conclusion.type || !d.conclusion.type.is<types::All>()) bad("type must be a function type");
  Derivation inv = to_invertible(g, d, true);
  FunStep r = fun_ind(inv);
  if (r.precise.rule != "Var!")
    fail(ErrorCode::Precondition, "function type does not come from the context");
  CanonicalFunResult out;
  out.context_type = r.precise.conclusion.type;
  out.precise = r.precise;
  out.domain_sub = tight_to_general(r.dom);
  out.param = r.y;
  out.codomain_sub = r.cod;
  out.stages = kFrontStages;
  out.stages.push_back("Narrowing");
  out.stages.push_back("Induction on ⊢!");
  return out;
}

CanonicalFunResult canon_fun_val(const Context& g, const Derivation& d) {
  if (!d.conclusion.type || !d.conclusion.type.is<types::All>()) bad("type must be a function type");
  const Term& v = d.conclusion.term;
  if (!v || !is_value(v) || !v.as<terms::Val>()->value.is<values::Lambda>())
    bad("subject must be a lambda");
  Derivation inv = to_invertible(g, d, false);
  FunStep r = fun_ind(inv);
  if (r.precise.rule != "All-I!") fail(ErrorCode::Precondition, "precise typing is not All-I!");
  auto lam = v.as<terms::Val>()->value.as<values::Lambda>();

  const Derivation& prem = r.precise.premises[0];  // Γ, y0: T' ⊢ t : U'
  Var y0 = prem.conclusion.ctx.bindings().back().var;
  Derivation opened = rename_var(prem, y0, r.y);
  Type t_new = r.cod.conclusion.ctx.bindings().back().type;
  Derivation widen = weaken(tight_to_general(r.dom), {Binding{r.y, t_new}});
  Derivation narrowed = unchecked::narrow(opened, r.y, t_new, widen);

  CanonicalFunResult out;
  out.context_type = r.precise.conclusion.type;
  out.precise = r.precise;
  out.domain_sub = tight_to_general(r.dom);
  out.param = r.y;
  out.codomain_sub = r.cod;
  out.lambda_param = lam->param;
  out.param_type = lam->param_type;
  out.body = subst(lam->body, lam->param, r.y);
  out.body_typing = subsume(narrowed, r.cod);
  out.stages = kFrontStages;
  out.stages.push_back("Induction on ⊢!");
  out.stages.push_back("Narrowing");
  out.stages.push_back("Sub");
  return out;
}

CanonicalObjResult canon_obj_var(const Context& g, const Derivation& d) {
  auto fld = d.conclusion.type ? d.conclusion.type.as<types::Fld>() : nullptr;
  if (!fld) bad("type must be a field declaration");
  Derivation inv = to_invertible(g, d, true);
  ObjStep r = obj_ind(inv);
  const Derivation& root = precise_root(r.precise);
  const Var x = d.conclusion.term.as<terms::Ref>()->var;
  const Type& gx = root.conclusion.type;
  auto rec = gx.as<types::Rec>();
  if (!rec) fail(ErrorCode::Precondition, "the context type is not a recursive type");
  auto members = record_members(gx);
  auto it = members.find(fld->label);
  auto got = r.precise.conclusion.type.as<types::Fld>();
  if (it == members.end() || !alpha_eq(subst(it->second, rec->self, x), r.precise.conclusion.type))
    fail(ErrorCode::Precondition, "the context type does not declare the field");

  CanonicalObjResult out;
  out.context_type = gx;
  out.precise = r.precise;
  out.label = fld->label;
  out.field_type = got->type;
  out.sub = tight_to_general(r.sub);
  out.stages = kFrontStages;
  out.stages.push_back("Induction on ⊢!");
  return out;
}

CanonicalObjResult canon_obj_val(const Context& g, const Derivation& d, const std::string& label) {
  const Term& v = d.conclusion.term;
  if (!v || !is_value(v) || !v.as<terms::Val>()->value.is<values::Nu>()) bad("subject must be an object");
  auto rec = d.conclusion.type ? d.conclusion.type.as<types::Rec>() : nullptr;
  if (!rec) bad("type must be a recursive type");
  std::string want = label;
  if (want.empty()) {
    for (const auto& c : conjuncts(rec->body))
      if (auto f = c.as<types::Fld>()) {
        want = f->label;
        break;
      }
    if (want.empty()) bad("the type declares no field");
  }
  Derivation inv = to_invertible(g, d, false);
  if (inv.rule != "Val-##" || inv.premises[0].rule != "{}-I!")
    fail(ErrorCode::Precondition, "no precise object typing");
  const Derivation& pp = inv.premises[0];
  const Derivation& defs_d = pp.premises[0];  // Γ, s: S ⊢ d : S
  const Derivation* def = find_field_def(defs_d, want);
  if (!def) bad("the object defines no field " + want);

  CanonicalObjResult out;
  out.context_type = pp.conclusion.type;
  out.precise = pp;
  out.label = want;
  out.field_type = def->conclusion.type.as<types::Fld>()->type;
  out.defs = defs_d.conclusion.defs;
  out.self = defs_d.conclusion.ctx.bindings().back().var;
  out.field_term = def->conclusion.defs.as<defs::Field>()->rhs;
  out.field_typing = def->premises[0];
  out.stages = kFrontStages;
  out.stages.push_back("Inversion of {}-I!");
  return out;
}

}  // namespace dot
