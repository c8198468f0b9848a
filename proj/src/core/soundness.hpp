// SPDX-License-Identifier: Apache-2.0
//
// Desk-scale progress and preservation: run a closed, typed program and
// re-derive its type after every step with bounded search.

#ifndef DOT_CORE_SOUNDNESS_HPP
#define DOT_CORE_SOUNDNESS_HPP

#include <optional>
#include <string>

#include "core/evaluator.hpp"
#include "core/judgment.hpp"
#include "core/search.hpp"

namespace dot {

struct SoundnessResult {
  bool pass = false;
  Trace trace;
  // Index into trace.states of the first state that could not be re-typed.
  std::optional<std::size_t> underived;
  std::string failure;  // empty when pass
};

// d must validate and conclude ⊢ t : T in the empty context.
SoundnessResult check_soundness(const Derivation& d, std::size_t fuel, const SearchConfig& cfg = {});

// The bad-bounds lambda and its hand-written derivation.
const char* bad_bounds_document();

struct BadBoundsReport {
  Term term;
  Derivation derivation;
  bool valid = false;
  Context body_context;         // x: {A: {a: Top} .. all(z: Top) Top}
  Var offender;                 // first non-inert binding of body_context
  std::string offender_reason;  // reason name
  Term body;                    // let y = ... in y y
  Trace body_trace;             // runs the body as a closed program
  bool inert_search_found = false;      // y y in [y: mu(y: {a: Top})]
  bool bad_bounds_search_found = false;  // y y with x in scope
  int bad_bounds_search_depth = 0;
};

BadBoundsReport bad_bounds_report(const SearchConfig& cfg = {});
std::string bad_bounds_text(const BadBoundsReport& r);

}  // namespace dot

#endif
