// SPDX-License-Identifier: Apache-2.0

#include "core/transform.hpp"

#include "core/derive.hpp"
#include "core/error.hpp"
#include "core/inert.hpp"
#include "core/precise.hpp"
#include "core/rules.hpp"

namespace dot {

namespace {

using K = JudgmentKind;

[[noreturn]] void bad(const std::string& what) { fail(ErrorCode::InvalidInput, what); }

void require_inert(const Context& g) {
  if (auto off = is_inert_context(g))
    fail(ErrorCode::NonInertContext, "context is not inert at " + off->var.name);
}

void require_valid(const Derivation& d, const Context& g) {
  if (!alpha_eq(d.conclusion.ctx, g)) bad("derivation context differs from the given context");
  auto errs = validate(d);
  if (!errs.empty())
    bad("input derivation does not validate: " + format_path(errs[0].path) + " " +
        reason_name(errs[0].reason) + ": " + errs[0].detail);
}

Judgment inv_judgment(const Judgment& j, Type t) {
  return Judgment::typing(K::TypInvertible, j.ctx, j.term, std::move(t));
}

Judgment precise_judgment(const Judgment& j, Type t) {
  return Judgment::typing(K::TypPrecise, j.ctx, j.term, std::move(t));
}

bool var_subject(const Judgment& j) { return is_var(j.term); }

// The ## judgment for i's subject at type u, by a rule with a variable and
// a value form.
Derivation inv_node(const char* var_rule, const char* val_rule, const Derivation& i, Type u,
                    std::vector<Derivation> premises) {
  const Judgment& j = i.conclusion;
  return make(var_subject(j) ? var_rule : val_rule, inv_judgment(j, std::move(u)), std::move(premises));
}

// i concludes t : T1 ∧ T2; the result concludes t : Tk.
Derivation invert_and(const Derivation& i, int side) {
  if (i.rule == "And-I-##" || i.rule == "And-v-##") return i.premises[side - 1];
  if (i.rule == "Var-##") {
    const Derivation& pp = i.premises[0];
    auto a = pp.conclusion.type.as<types::And>();
    Type part = side == 1 ? a->left : a->right;
    Derivation e = make(side == 1 ? "And1-E!" : "And2-E!", precise_judgment(pp.conclusion, part), {pp});
    return make("Var-##", inv_judgment(i.conclusion, part), {e});
  }
  fail(ErrorCode::Precondition, "no invertible intersection typing to split (rule " + i.rule + ")");
}

// i concludes t : T; s concludes Γ ⊢# T <: U. Inlines the subsumption.
Derivation close(const Derivation& i, const Derivation& s) {
  const Judgment& sj = s.conclusion;
  const std::string& r = s.rule;
  if (r == "Refl-#") return i;
  if (r == "Trans-#") return close(close(i, s.premises[0]), s.premises[1]);
  if (r == "Top-#") return inv_node("Top-##", "Top-v-##", i, sj.rhs, {i});
  if (r == "Bot-#")
    fail(ErrorCode::Precondition, "invertible typing at Bot cannot arise in an inert context");
  if (r == "And1-<:-#") return invert_and(i, 1);
  if (r == "And2-<:-#") return invert_and(i, 2);
  if (r == "<:-And-#")
    return inv_node("And-I-##", "And-v-##", i, sj.rhs,
                    {close(i, s.premises[0]), close(i, s.premises[1])});
  if (r == "Fld-<:-Fld-#") {
    if (!var_subject(i.conclusion))
      fail(ErrorCode::Precondition, "a value has no invertible field typing");
    return make("Fld-<:-##", inv_judgment(i.conclusion, sj.rhs), {i, s.premises[0]});
  }
  if (r == "Typ-<:-Typ-#") {
    if (!var_subject(i.conclusion))
      fail(ErrorCode::Precondition, "a value has no invertible type member typing");
    return make("Typ-<:-##", inv_judgment(i.conclusion, sj.rhs), {i, s.premises[0], s.premises[1]});
  }
  if (r == "All-<:-All-#") {
    Derivation cod = s.premises[1];
    const Var y = cod.conclusion.ctx.bindings().back().var;
    if (occurs_free(y, i.conclusion.term)) cod = rename_var(cod, y, fresh_like(y));
    return inv_node("All-I-##", "All-v-##", i, sj.rhs, {i, s.premises[0], cod});
  }
  if (r == "<:-Sel-#") return inv_node("Sel-##", "Sel-v-##", i, sj.rhs, {i, s.premises[0]});
  if (r == "Sel-<:-#") {
    // i concludes t : x.A, necessarily by Sel-## or Sel-v-##.
    if (i.rule != "Sel-##" && i.rule != "Sel-v-##")
      fail(ErrorCode::Precondition, "no invertible selection typing to invert (rule " + i.rule + ")");
    auto mine = s.premises[0].conclusion.type.as<types::Typ>();
    auto theirs = i.premises[1].conclusion.type.as<types::Typ>();
    // Precise member bounds are unique in an inert context.
    if (!alpha_eq(mine->upper, theirs->upper))
      fail(ErrorCode::Precondition, "precise type member bounds disagree");
    return i.premises[0];
  }
  bad("unexpected tight subtyping rule " + r);
}

Derivation to_inv(const Derivation& d) {
  const Judgment& j = d.conclusion;
  const std::string& r = d.rule;
  if (r == "Var-#")
    return make("Var-##", inv_judgment(j, j.type), {make("Var!", precise_judgment(j, j.type))});
  if (r == "All-I-#")
    return make("Val-##", inv_judgment(j, j.type), {make("All-I!", precise_judgment(j, j.type), d.premises)});
  if (r == "{}-I-#")
    return make("Val-##", inv_judgment(j, j.type), {make("{}-I!", precise_judgment(j, j.type), d.premises)});
  if (r == "Rec-I-#") return make("Rec-I-##", inv_judgment(j, j.type), {to_inv(d.premises[0])});
  if (r == "And-I-#")
    return make(var_subject(j) ? "And-I-##" : "And-v-##", inv_judgment(j, j.type),
                {to_inv(d.premises[0]), to_inv(d.premises[1])});
  if (r == "Rec-E-#") {
    Derivation i = to_inv(d.premises[0]);
    if (i.rule == "Rec-I-##") return i.premises[0];
    if (i.rule == "Var-##") {
      Derivation e = make("Rec-E!", precise_judgment(j, j.type), {i.premises[0]});
      return make("Var-##", inv_judgment(j, j.type), {e});
    }
    fail(ErrorCode::Precondition, "no invertible recursive typing to open (rule " + i.rule + ")");
  }
  if (r == "Sub-#") return close(to_inv(d.premises[0]), d.premises[1]);
  fail(ErrorCode::SubjectNotVarOrValue, "rule " + r + " does not type a variable or value");
}

SelPremise premise_from_inv(const Derivation& i) {
  if (i.rule == "Var-##") {
    const Derivation& pp = i.premises[0];
    auto dec = pp.conclusion.type.as<types::Typ>();
    if (!dec || !alpha_eq(dec->lower, dec->upper))
      fail(ErrorCode::Precondition, "precise type member is not tight");
    const Context& g = pp.conclusion.ctx;
    return SelPremise{dec->lower, pp, refl(K::SubtypTight, g, dec->lower),
                      refl(K::SubtypTight, g, dec->upper)};
  }
  if (i.rule == "Typ-<:-##") {
    SelPremise in = premise_from_inv(i.premises[0]);
    in.lower_leg = trans(i.premises[1], in.lower_leg);
    in.upper_leg = trans(in.upper_leg, i.premises[2]);
    return in;
  }
  fail(ErrorCode::Precondition, "no invertible type member typing (rule " + i.rule + ")");
}

Derivation sel_rule(const char* rule, const Derivation& precise, bool into) {
  const Judgment& pj = precise.conclusion;
  auto x = pj.term.as<terms::Ref>()->var;
  auto dec = pj.type.as<types::Typ>();
  Type sel = mk::sel(x, dec->label);
  Judgment j = into ? Judgment::subtyping(K::SubtypTight, pj.ctx, dec->lower, sel)
                    : Judgment::subtyping(K::SubtypTight, pj.ctx, sel, dec->upper);
  return make(rule, j, {precise});
}

std::pair<Derivation, Derivation> replacement_of(const Derivation& d) {
  SelPremise p = unchecked::sel_premise(d);
  Derivation first = trans(p.lower_leg, sel_rule("<:-Sel-#", p.precise, true));
  Derivation second = trans(sel_rule("Sel-<:-#", p.precise, false), p.upper_leg);
  return {first, second};
}

void require_member_typing(const Derivation& d) {
  const Judgment& j = d.conclusion;
  if (j.kind != K::TypTight || !is_var(j.term) || !j.type.is<types::Typ>())
    bad("expected a tight typing x : {A: S..U}");
}

}  // namespace

namespace unchecked {

Derivation general_to_tight(const Derivation& d) {
  const std::string& r = d.rule;
  if (r == "<:-Sel" || r == "Sel-<:") {
    auto [first, second] = replacement_of(general_to_tight(d.premises[0]));
    return r == "<:-Sel" ? first : second;
  }
  const RuleSchema* s = find_rule(r);
  Judgment j = d.conclusion;
  j.kind = j.kind == K::Typ ? K::TypTight : K::SubtypTight;
  Derivation out{tight_name(r), j, {}};
  const RuleSchema* ts = find_rule(out.rule);
  for (std::size_t i = 0; i < d.premises.size(); ++i) {
    // Premises kept general by the tight rule are copied.
    bool keep = ts->premises[i].kind == s->premises[i].kind;
    out.premises.push_back(keep ? d.premises[i] : general_to_tight(d.premises[i]));
  }
  return out;
}

SelPremise sel_premise(const Derivation& d) { return premise_from_inv(to_inv(d)); }

Derivation tight_to_invertible(const Derivation& d) { return to_inv(d); }

}  // namespace unchecked

Derivation general_to_tight(const Context& g, const Derivation& d) {
  require_inert(g);
  if (d.conclusion.kind != K::Typ && d.conclusion.kind != K::Subtyp)
    bad("expected a general typing or subtyping derivation");
  require_valid(d, g);
  return unchecked::general_to_tight(d);
}

SelPremise sel_premise(const Context& g, const Derivation& d) {
  require_inert(g);
  require_member_typing(d);
  require_valid(d, g);
  return unchecked::sel_premise(d);
}

std::pair<Derivation, Derivation> sel_replacement(const Context& g, const Derivation& d) {
  require_inert(g);
  require_member_typing(d);
  require_valid(d, g);
  return replacement_of(d);
}

Derivation tight_to_invertible(const Context& g, const Derivation& d) {
  require_inert(g);
  if (d.conclusion.kind != K::TypTight) bad("expected a tight typing derivation");
  if (!is_var(d.conclusion.term) && !is_value(d.conclusion.term))
    fail(ErrorCode::SubjectNotVarOrValue, "subject is neither a variable nor a value");
  require_valid(d, g);
  return unchecked::tight_to_invertible(d);
}

}  // namespace dot
