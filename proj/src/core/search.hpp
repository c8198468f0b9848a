// SPDX-License-Identifier: Apache-2.0
//
// Bounded search for general typing derivations, by iterative deepening
// with memoisation; incomplete by design. The depth bound counts rule
// applications along a path, except that a variable lookup chain (Var,
// Rec-E, splitting an intersection) counts once and definition
// aggregation is free.

#ifndef DOT_CORE_SEARCH_HPP
#define DOT_CORE_SEARCH_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "core/judgment.hpp"

namespace dot {

const std::vector<std::string>& default_rule_order();

struct SearchConfig {
  int max_depth = 8;
  std::size_t max_nodes = 400000;
  // Typing and subtyping rules in the order they are tried. Rules left out
  // are never used.
  std::vector<std::string> rule_order = default_rule_order();
};

struct SearchStats {
  std::size_t nodes = 0;
  int depth = 0;  // iteration that succeeded, or the last one tried
  bool budget_exhausted = false;
};

// Γ ⊢ t : target, or Γ ⊢ t : T for some T when target is absent.
std::optional<Derivation> bounded_search(const Context& g, const Term& t,
                                         const std::optional<Type>& target,
                                         const SearchConfig& cfg = {}, SearchStats* stats = nullptr);

// Γ ⊢ s <: u.
std::optional<Derivation> bounded_subtype(const Context& g, const Type& s, const Type& u,
                                          const SearchConfig& cfg = {}, SearchStats* stats = nullptr);

}  // namespace dot

#endif
