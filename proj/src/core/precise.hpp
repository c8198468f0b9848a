// SPDX-License-Identifier: Apache-2.0

#ifndef DOT_CORE_PRECISE_HPP
#define DOT_CORE_PRECISE_HPP

#include <vector>

#include "core/judgment.hpp"

namespace dot {

struct PreciseType {
  Type type;
  Derivation deriv;  // Γ ⊢! x : type
};

// Closure of Γ(x) under opening a top-level mu with x and splitting a
// top-level intersection, in breadth-first order without alpha-duplicates.
std::vector<PreciseType> precise_types_of_var(const Context& g, const Var& x);

// Var! leaf.
Derivation precise_var(const Context& g, const Var& x);

}  // namespace dot

#endif
