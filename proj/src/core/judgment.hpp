// SPDX-License-Identifier: Apache-2.0

#ifndef DOT_CORE_JUDGMENT_HPP
#define DOT_CORE_JUDGMENT_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "core/context.hpp"
#include "core/syntax.hpp"

namespace dot {

enum class JudgmentKind { Typ, Subtyp, TypTight, SubtypTight, TypPrecise, TypInvertible, Defs };

const char* kind_name(JudgmentKind k);
std::optional<JudgmentKind> kind_from_name(std::string_view s);

bool is_typing(JudgmentKind k);
bool is_subtyping(JudgmentKind k);

// Γ ⊢ term : type, Γ ⊢ lhs <: rhs, or Γ ⊢ defs : type, per kind.
struct Judgment {
  JudgmentKind kind = JudgmentKind::Typ;
  Context ctx;
  Term term;
  Def defs;
  Type type;
  Type lhs;
  Type rhs;

  static Judgment typing(JudgmentKind k, Context g, Term t, Type ty);
  static Judgment subtyping(JudgmentKind k, Context g, Type l, Type r);
  static Judgment definitions(Context g, Def d, Type ty);
};

bool alpha_eq(const Judgment& a, const Judgment& b);

// Same subject and types, ignoring the context and which system the
// judgment belongs to.
bool same_claim(const Judgment& a, const Judgment& b);

struct Derivation {
  std::string rule;
  Judgment conclusion;
  std::vector<Derivation> premises;
};

std::size_t node_count(const Derivation& d);
std::size_t height(const Derivation& d);

// Rule names used anywhere in the tree.
void collect_rules(const Derivation& d, std::vector<std::string>& out);

}  // namespace dot

#endif
