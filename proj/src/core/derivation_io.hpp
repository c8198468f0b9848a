// SPDX-License-Identifier: Apache-2.0
//
// Derivation documents:
//
//   {"rule": "Sub",
//    "conclusion": {"kind": "typ", "ctx": ["x: Top"], "term": "x", "type": "Top"},
//    "premises": [ ... ]}
//
// Subtyping kinds carry "lhs"/"rhs"; the defs kind carries "defs"/"type".
// Types and terms are surface syntax. One scope covers the whole document,
// so the same context name denotes the same variable everywhere in it.

#ifndef DOT_CORE_DERIVATION_IO_HPP
#define DOT_CORE_DERIVATION_IO_HPP

#include <string>
#include <string_view>

#include "core/judgment.hpp"
#include "core/surface.hpp"

namespace dot {

struct LoadOptions {
  // Resolve rule names and check system and arity while loading.
  bool check_rules = true;
};

Derivation parse_derivation(std::string_view doc, Scope& scope, LoadOptions opts = {});
Derivation parse_derivation(std::string_view doc, LoadOptions opts = {});

std::string write_derivation(const Derivation& d, Names& names, int indent = 2);
std::string write_derivation(const Derivation& d, int indent = 2);

// One line per node: indentation, rule name, judgment.
std::string render_tree(const Derivation& d, Names& names);

std::string print(const Judgment& j, Names& names);

}  // namespace dot

#endif
