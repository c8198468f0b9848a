// SPDX-License-Identifier: Apache-2.0

#include "core/rules.hpp"

namespace dot {

namespace {

using K = JudgmentKind;
using S = RuleShape;
using F = SubjectForm;

PremiseSpec p(K k) { return PremiseSpec{k, false}; }
PremiseSpec ext(K k) { return PremiseSpec{k, true}; }

std::vector<RuleSchema> build() {
  std::vector<RuleSchema> r;
  auto add = [&](std::string name, K sys, S shape, F subj, std::vector<PremiseSpec> prem,
                 std::vector<std::string> side = {}) {
    r.push_back(RuleSchema{std::move(name), sys, shape, subj, std::move(prem), std::move(side)});
  };

  // General typing.
  add("Var", K::Typ, S::VarLookup, F::Var, {}, {"Γ(x) = T"});
  add("All-I", K::Typ, S::AllIntro, F::Value, {ext(K::Typ)}, {"x ∉ fv(T)"});
  add("All-E", K::Typ, S::AllElim, F::Any, {p(K::Typ), p(K::Typ)});
  add("{}-I", K::Typ, S::NewIntro, F::Value, {ext(K::Defs)});
  add("{}-E", K::Typ, S::FldElim, F::Any, {p(K::Typ)});
  add("Let", K::Typ, S::Let, F::Any, {p(K::Typ), ext(K::Typ)}, {"x ∉ fv(U)"});
  add("Rec-I", K::Typ, S::RecIntro, F::Var, {p(K::Typ)});
  add("Rec-E", K::Typ, S::RecElim, F::Var, {p(K::Typ)});
  add("And-I", K::Typ, S::AndIntro, F::Var, {p(K::Typ), p(K::Typ)});
  add("Sub", K::Typ, S::Sub, F::Any, {p(K::Typ), p(K::Subtyp)});

  // General subtyping. "<:-And" appears twice in the figure; one schema.
  add("Top", K::Subtyp, S::Top, F::Any, {});
  add("Bot", K::Subtyp, S::Bot, F::Any, {});
  add("Refl", K::Subtyp, S::Refl, F::Any, {});
  add("Trans", K::Subtyp, S::Trans, F::Any, {p(K::Subtyp), p(K::Subtyp)});
  add("Fld-<:-Fld", K::Subtyp, S::FldFld, F::Any, {p(K::Subtyp)});
  add("And1-<:", K::Subtyp, S::And1Sub, F::Any, {});
  add("And2-<:", K::Subtyp, S::And2Sub, F::Any, {});
  add("<:-And", K::Subtyp, S::SubAnd, F::Any, {p(K::Subtyp), p(K::Subtyp)});
  add("<:-Sel", K::Subtyp, S::SubSel, F::Any, {p(K::Typ)});
  add("Sel-<:", K::Subtyp, S::SelSub, F::Any, {p(K::Typ)});
  add("Typ-<:-Typ", K::Subtyp, S::TypTyp, F::Any, {p(K::Subtyp), p(K::Subtyp)});
  add("All-<:-All", K::Subtyp, S::AllAll, F::Any, {p(K::Subtyp), ext(K::Subtyp)});

  // Definitions.
  add("Def-Trm", K::Defs, S::DefTrm, F::Any, {p(K::Typ)});
  add("Def-Typ", K::Defs, S::DefTyp, F::Any, {}, {"bounds equal the alias"});
  add("AndDef-I", K::Defs, S::AndDef, F::Any, {p(K::Defs), p(K::Defs)},
      {"dom(d1), dom(d2) disjoint"});

  // Tight typing.
  add("Var-#", K::TypTight, S::VarLookup, F::Var, {}, {"Γ(x) = T"});
  add("All-I-#", K::TypTight, S::AllIntro, F::Value, {ext(K::Typ)}, {"x ∉ fv(T)"});
  add("All-E-#", K::TypTight, S::AllElim, F::Any, {p(K::TypTight), p(K::TypTight)});
  add("{}-I-#", K::TypTight, S::NewIntro, F::Value, {ext(K::Defs)});
  add("{}-E-#", K::TypTight, S::FldElim, F::Any, {p(K::TypTight)});
  add("Let-#", K::TypTight, S::Let, F::Any, {p(K::TypTight), ext(K::Typ)}, {"x ∉ fv(U)"});
  add("Rec-I-#", K::TypTight, S::RecIntro, F::Var, {p(K::TypTight)});
  add("Rec-E-#", K::TypTight, S::RecElim, F::Var, {p(K::TypTight)});
  add("And-I-#", K::TypTight, S::AndIntro, F::Var, {p(K::TypTight), p(K::TypTight)});
  add("Sub-#", K::TypTight, S::Sub, F::Any, {p(K::TypTight), p(K::SubtypTight)});

  // Tight subtyping.
  add("Top-#", K::SubtypTight, S::Top, F::Any, {});
  add("Bot-#", K::SubtypTight, S::Bot, F::Any, {});
  add("Refl-#", K::SubtypTight, S::Refl, F::Any, {});
  add("Trans-#", K::SubtypTight, S::Trans, F::Any, {p(K::SubtypTight), p(K::SubtypTight)});
  add("Fld-<:-Fld-#", K::SubtypTight, S::FldFld, F::Any, {p(K::SubtypTight)});
  add("And1-<:-#", K::SubtypTight, S::And1Sub, F::Any, {});
  add("And2-<:-#", K::SubtypTight, S::And2Sub, F::Any, {});
  add("<:-And-#", K::SubtypTight, S::SubAnd, F::Any, {p(K::SubtypTight), p(K::SubtypTight)});
  add("<:-Sel-#", K::SubtypTight, S::SubSelTight, F::Any, {p(K::TypPrecise)},
      {"precise bounds are equal"});
  add("Sel-<:-#", K::SubtypTight, S::SelSubTight, F::Any, {p(K::TypPrecise)},
      {"precise bounds are equal"});
  add("Typ-<:-Typ-#", K::SubtypTight, S::TypTyp, F::Any, {p(K::SubtypTight), p(K::SubtypTight)});
  add("All-<:-All-#", K::SubtypTight, S::AllAll, F::Any, {p(K::SubtypTight), ext(K::Subtyp)});

  // Precise typing.
  add("Var!", K::TypPrecise, S::VarLookup, F::Var, {}, {"Γ(x) = T"});
  add("Rec-E!", K::TypPrecise, S::RecElim, F::Var, {p(K::TypPrecise)});
  add("And1-E!", K::TypPrecise, S::AndElim1, F::Var, {p(K::TypPrecise)});
  add("And2-E!", K::TypPrecise, S::AndElim2, F::Var, {p(K::TypPrecise)});
  add("All-I!", K::TypPrecise, S::AllIntro, F::Value, {ext(K::Typ)}, {"x ∉ fv(T)"});
  add("{}-I!", K::TypPrecise, S::NewIntro, F::Value, {ext(K::Defs)});

  // Invertible typing, variables then values.
  add("Var-##", K::TypInvertible, S::Lift, F::Var, {p(K::TypPrecise)});
  add("Fld-<:-##", K::TypInvertible, S::InvFld, F::Var,
      {p(K::TypInvertible), p(K::SubtypTight)});
  add("Typ-<:-##", K::TypInvertible, S::InvTyp, F::Var,
      {p(K::TypInvertible), p(K::SubtypTight), p(K::SubtypTight)});
  add("Rec-I-##", K::TypInvertible, S::RecIntro, F::Var, {p(K::TypInvertible)});
  add("All-I-##", K::TypInvertible, S::InvAll, F::Var,
      {p(K::TypInvertible), p(K::SubtypTight), ext(K::Subtyp)});
  add("And-I-##", K::TypInvertible, S::AndIntro, F::Var,
      {p(K::TypInvertible), p(K::TypInvertible)});
  add("Sel-##", K::TypInvertible, S::InvSel, F::Var, {p(K::TypInvertible), p(K::TypPrecise)});
  add("Top-##", K::TypInvertible, S::InvTop, F::Var, {p(K::TypInvertible)});
  add("Val-##", K::TypInvertible, S::Lift, F::Value, {p(K::TypPrecise)});
  add("All-v-##", K::TypInvertible, S::InvAll, F::Value,
      {p(K::TypInvertible), p(K::SubtypTight), ext(K::Subtyp)});
  add("And-v-##", K::TypInvertible, S::AndIntro, F::Value,
      {p(K::TypInvertible), p(K::TypInvertible)});
  add("Sel-v-##", K::TypInvertible, S::InvSel, F::Value,
      {p(K::TypInvertible), p(K::TypPrecise)});
  add("Top-v-##", K::TypInvertible, S::InvTop, F::Value, {p(K::TypInvertible)});
  return r;
}

std::string normalize(std::string_view name) {
  std::string s(name);
  for (auto [from, to] : {std::pair<std::string_view, std::string_view>{"₁", "1"}, {"₂", "2"}}) {
    for (std::size_t i; (i = s.find(from)) != std::string::npos;) s.replace(i, from.size(), to);
  }
  return s;
}

}  // namespace

const std::vector<RuleSchema>& rule_registry() {
  static const std::vector<RuleSchema> registry = build();
  return registry;
}

const RuleSchema* find_rule(std::string_view name) {
  std::string n = normalize(name);
  for (const auto& r : rule_registry())
    if (r.name == n) return &r;
  return nullptr;
}

const char* reason_name(ValidationReason r) {
  switch (r) {
    case ValidationReason::UnknownRule: return "unknown-rule";
    case ValidationReason::SystemMismatch: return "system-mismatch";
    case ValidationReason::ShapeMismatch: return "shape-mismatch";
    case ValidationReason::SideConditionFailed: return "side-condition-failed";
    case ValidationReason::ContextMismatch: return "context-mismatch";
  }
  return "?";
}

std::string format_path(const std::vector<std::size_t>& path) {
  std::string out = "root";
  for (auto i : path) out += "." + std::to_string(i);
  return out;
}

}  // namespace dot
