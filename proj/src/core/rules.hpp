// SPDX-License-Identifier: Apache-2.0
//
// Rule schemas of the five systems (general, definitions, tight, precise,
// invertible) and the derivation validator.

#ifndef DOT_CORE_RULES_HPP
#define DOT_CORE_RULES_HPP

#include <string>
#include <string_view>
#include <vector>

#include "core/judgment.hpp"

namespace dot {

// What a rule checks; rules that differ only in their system share a shape.
enum class RuleShape {
  VarLookup,
  AllIntro,
  AllElim,
  NewIntro,
  FldElim,
  Let,
  RecIntro,
  RecElim,
  AndIntro,
  AndElim1,
  AndElim2,
  Sub,
  Top,
  Bot,
  Refl,
  Trans,
  FldFld,
  And1Sub,
  And2Sub,
  SubAnd,
  SubSel,
  SelSub,
  SubSelTight,
  SelSubTight,
  TypTyp,
  AllAll,
  DefTrm,
  DefTyp,
  AndDef,
  Lift,  // Var-## and Val-##: precise into invertible
  InvFld,
  InvTyp,
  InvAll,
  InvSel,
  InvTop,
};

enum class SubjectForm { Any, Var, Value };

struct PremiseSpec {
  JudgmentKind kind;
  // Premise context is the conclusion context plus one fresh binding.
  bool extends = false;
};

struct RuleSchema {
  std::string name;
  JudgmentKind system;
  RuleShape shape;
  SubjectForm subject = SubjectForm::Any;
  std::vector<PremiseSpec> premises;
  std::vector<std::string> side_conditions;
};

const std::vector<RuleSchema>& rule_registry();
// Accepts the subscript spellings "And₁"/"And₂" as aliases.
const RuleSchema* find_rule(std::string_view name);

enum class ValidationReason {
  UnknownRule,
  SystemMismatch,
  ShapeMismatch,
  SideConditionFailed,
  ContextMismatch,
};

const char* reason_name(ValidationReason r);

struct ValidationError {
  std::vector<std::size_t> path;
  ValidationReason reason;
  std::string detail;
};

// Checks every node; reports all failures, in preorder.
std::vector<ValidationError> validate(const Derivation& d);
inline bool is_valid(const Derivation& d) { return validate(d).empty(); }

std::string format_path(const std::vector<std::size_t>& path);

}  // namespace dot

#endif
