// SPDX-License-Identifier: Apache-2.0
//
// Derivation construction helpers and the structural lemmas: weakening,
// renaming, narrowing, substitution, and the value-precise lemma.

#ifndef DOT_CORE_DERIVE_HPP
#define DOT_CORE_DERIVE_HPP

#include <functional>
#include <initializer_list>
#include <string>
#include <vector>

#include "core/judgment.hpp"

namespace dot {

Derivation make(std::string rule, Judgment j, std::vector<Derivation> premises = {});

bool is_refl(const Derivation& d);
// Refl or Refl-# depending on k.
Derivation refl(JudgmentKind k, const Context& g, const Type& t);
// Trans or Trans-# of a: S <: T and b: T <: U, dropping reflexive legs.
Derivation trans(Derivation a, Derivation b);
// Sub or Sub-# of t: Γ ⊢ s : T and sub: T <: U; a reflexive sub is dropped.
Derivation subsume(Derivation t, Derivation sub);

// "Var" -> "Var-#" and back. Only for rules that have both forms.
std::string tight_name(const std::string& general);
std::string general_name(const std::string& tight);

bool kinds_within(const Derivation& d, std::initializer_list<JudgmentKind> allowed);

// Variables bound in node contexts beyond the root context.
VarSet extension_vars(const Derivation& d);

Derivation map_judgments(const Derivation& d, const std::function<Judgment(const Judgment&)>& f);

// Renames every extension variable to a fresh one.
Derivation freshen_extensions(const Derivation& d);

// Replaces variable `from` by `to` everywhere, including context binders.
Derivation rename_var(const Derivation& d, const Var& from, const Var& to);

// Inserts `extra` right after the root context in every node.
Derivation weaken(const Derivation& d, const std::vector<Binding>& extra);

// Tight (and the precise premises of tight Sel rules) to general.
Derivation tight_to_general(const Derivation& d);
Derivation precise_to_general(const Derivation& d);

// Γ ⊢ J  and  Γ[x: t_new] ⊢ t_new <: Γ(x)  give  Γ[x: t_new] ⊢ J.
// General typing, subtyping and definition derivations only.
Derivation narrow(const Derivation& d, const Var& x, const Type& t_new, const Derivation& sub);

// Γ, x: S ⊢ t : T  and  Γ ⊢ y : [x:=y]S  give  Γ ⊢ [x:=y]t : [x:=y]T.
// x must be the last binding of d's context.
Derivation subst_deriv(const Derivation& d, const Var& x, const Derivation& dy);

struct ValuePrecise {
  Type type;
  Derivation precise;  // Γ ⊢! v : type
  Derivation sub;      // Γ ⊢ type <: T
};

ValuePrecise value_precise(const Context& g, const Derivation& d);

// Unchecked variants used inside larger pipelines on inputs already known
// to be valid.
namespace unchecked {
Derivation narrow(const Derivation& d, const Var& x, const Type& t_new, const Derivation& sub);
}

}  // namespace dot

#endif
