// SPDX-License-Identifier: Apache-2.0
//
// General to tight and tight to invertible typing, for inert contexts.

#ifndef DOT_CORE_TRANSFORM_HPP
#define DOT_CORE_TRANSFORM_HPP

#include <utility>

#include "core/judgment.hpp"

namespace dot {

// Γ ⊢ t : T  to  Γ ⊢# t : T, and likewise for subtyping.
Derivation general_to_tight(const Context& g, const Derivation& d);

struct SelPremise {
  Type bound;             // T
  Derivation precise;     // Γ ⊢! x : {A: T..T}
  Derivation lower_leg;   // Γ ⊢# S <: T
  Derivation upper_leg;   // Γ ⊢# T <: U
};

// d concludes Γ ⊢# x : {A: S..U}.
SelPremise sel_premise(const Context& g, const Derivation& d);

// (Γ ⊢# S <: x.A, Γ ⊢# x.A <: U) for d concluding Γ ⊢# x : {A: S..U}.
std::pair<Derivation, Derivation> sel_replacement(const Context& g, const Derivation& d);

// Γ ⊢# t : T  to  Γ ⊢## t : T for a variable or value t.
Derivation tight_to_invertible(const Context& g, const Derivation& d);

// Variants without the precondition checks, for inputs already checked.
namespace unchecked {
Derivation general_to_tight(const Derivation& d);
SelPremise sel_premise(const Derivation& d);
Derivation tight_to_invertible(const Derivation& d);
}  // namespace unchecked

}  // namespace dot

#endif
