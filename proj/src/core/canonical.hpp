// SPDX-License-Identifier: Apache-2.0
//
// Canonical forms for inert contexts: what a function or object type tells
// about a variable's binding or about a value.

#ifndef DOT_CORE_CANONICAL_HPP
#define DOT_CORE_CANONICAL_HPP

#include <optional>
#include <string>
#include <vector>

#include "core/judgment.hpp"

namespace dot {

// For d concluding Γ ⊢ s : all(x: T) U.
struct CanonicalFunResult {
  Type context_type;       // all(x: T') U', Γ(z) or the precise type of v
  Derivation precise;      // Γ ⊢! s : context_type
  Derivation domain_sub;   // Γ ⊢ T <: T'
  Var param;               // y below
  Derivation codomain_sub; // Γ, y: T ⊢ [x:=y]U' <: [x:=y]U
  // Value form only.
  std::optional<Var> lambda_param;
  Type param_type;         // T'
  Term body;               // lambda body opened with y
  Derivation body_typing;  // Γ, y: T ⊢ body : [x:=y]U
  std::vector<std::string> stages;
};

// For d concluding Γ ⊢ x : {a: T} (variable form) or Γ ⊢ v : mu(x: ...)
// (value form).
struct CanonicalObjResult {
  Type context_type;       // Γ(x) or the object's type
  Derivation precise;      // Γ ⊢! subject : ...
  std::string label;
  Type field_type;         // T'
  Derivation sub;          // Γ ⊢ T' <: T (variable form)
  // Value form only.
  Def defs;                // the object's definitions opened with self
  std::optional<Var> self;
  Term field_term;         // t in {a = t}
  Derivation field_typing; // Γ, self: S ⊢ t : T
  std::vector<std::string> stages;
};

CanonicalFunResult canon_fun_var(const Context& g, const Derivation& d);
CanonicalFunResult canon_fun_val(const Context& g, const Derivation& d);
CanonicalObjResult canon_obj_var(const Context& g, const Derivation& d);
// label picks the field; empty means the first field of the type.
CanonicalObjResult canon_obj_val(const Context& g, const Derivation& d, const std::string& label = "");

}  // namespace dot

#endif
