// SPDX-License-Identifier: Apache-2.0
//
// Fuzz properties shared by the unit tests (small counts) and the
// acceptance binary (full counts). Each runs until `n` instances have been
// checked or the attempt cap is hit, and reports what failed first.

#ifndef DOT_TESTS_HARNESS_HPP
#define DOT_TESTS_HARNESS_HPP

#include <cstdint>
#include <map>
#include <string>

namespace dot::harness {

struct Tally {
  std::size_t instances = 0;
  std::size_t failures = 0;
  std::size_t attempts = 0;
  std::string first_failure;
  std::map<std::string, std::size_t> rules;  // rule uses over checked outputs
  std::size_t max_height = 0;                 // over checked inputs

  bool ok(std::size_t want) const { return failures == 0 && instances >= want; }
  void fail(const std::string& why);
};

// Generated general typing and subtyping derivations of height <= budget in
// generated inert contexts: general_to_tight validates and keeps the claim.
Tally general_to_tight_property(std::uint64_t seed, std::size_t n, int budget = 6);

// Variable and value subjects: general_to_tight then tight_to_invertible.
Tally tight_to_invertible_property(std::uint64_t seed, std::size_t n, int budget = 6);

// Tight typings x : {A: S..U}: sel_premise yields a precise typing at
// {A: T..T} and legs S <: T, T <: U whose Trans-# validates.
Tally sel_premise_property(std::uint64_t seed, std::size_t n, int budget = 6);

enum class Canon { FunVar, FunVal, ObjVar, ObjVal };
const char* canon_name(Canon c);
// Every embedded derivation validates and the result has the expected
// final proof step.
Tally canonical_property(Canon c, std::uint64_t seed, std::size_t n, int budget = 5);

// Precise types of typed values are inert, strict mode.
Tally value_inert_property(std::uint64_t seed, std::size_t n, int budget = 5);

// Generated terms and every state of their runs: at most one reduction rule
// matches at the focus, decomposition recomposes, and is_answer agrees with
// step.
Tally evaluator_property(std::uint64_t seed, std::size_t n);

// print then parse gives back an alpha-equivalent type or term once free
// variables are mapped through their printed names.
Tally round_trip_property(std::uint64_t seed, std::size_t n);

}  // namespace dot::harness

#endif
