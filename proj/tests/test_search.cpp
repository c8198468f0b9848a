// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "core/search.hpp"
#include "support.hpp"

using namespace dot;
using dot::test::Src;
using dot::test::errors_text;

TEST_CASE("search finds the identity at its function type") {
  Src s;
  auto d = bounded_search(Context{}, s.tm("lambda(x: Top) x"), s.ty("all(x: Top) Top"));
  REQUIRE(d);
  CHECK(errors_text(*d) == "");
  CHECK(alpha_eq(d->conclusion.type, s.ty("all(x: Top) Top")));
}

TEST_CASE("y y is untypeable with an inert context") {
  Src s;
  Context g = s.ctx("y: mu(y: {a: Top})");
  Term t = s.tm("y y");
  SearchConfig cfg;
  cfg.max_depth = 8;
  CHECK_FALSE(bounded_search(g, t, std::nullopt, cfg));
  CHECK_FALSE(bounded_search(g, t, s.ty("Top"), cfg));
  CHECK_FALSE(bounded_search(g, t, s.ty("all(z: Top) Top"), cfg));
}

TEST_CASE("bad bounds make y y typeable") {
  Src s;
  Context g = s.ctx("x: {A: {a: Top} .. all(z: Top) Top}; y: mu(y: {a: Top})");
  Term t = s.tm("y y");
  SearchConfig cfg;
  cfg.max_depth = 6;
  auto d = bounded_search(g, t, s.ty("Top"), cfg);
  REQUIRE(d);
  CHECK(errors_text(*d) == "");
  std::vector<std::string> rules;
  collect_rules(*d, rules);
  for (const char* r : {"Sub", "<:-Sel", "Sel-<:", "Trans", "All-E"})
    CHECK(std::find(rules.begin(), rules.end(), r) != rules.end());

  auto synth = bounded_search(g, t, std::nullopt, cfg);
  REQUIRE(synth);
  CHECK(errors_text(*synth) == "");
}

TEST_CASE("search is deterministic") {
  Src s;
  Context g = s.ctx("x: {A: {a: Top} .. all(z: Top) Top}; y: mu(y: {a: Top})");
  Term t = s.tm("y y");
  auto a = bounded_search(g, t, s.ty("Top"));
  auto b = bounded_search(g, t, s.ty("Top"));
  REQUIRE(a);
  REQUIRE(b);
  Names n1, n2;
  CHECK(write_derivation(*a, n1) == write_derivation(*b, n2));
}

TEST_CASE("search types lets, objects and projections") {
  Src s;
  struct Case {
    const char* term;
    const char* type;
  } cases[] = {
      {"let f = lambda(z: Top) z in f f", "Top"},
      {"let o = nu(x: {a: Top}) {a = x} in o.a", "Top"},
      {"let x = (let y = lambda(z: Top) z in y) in x", "all(z: Top) Top"},
      {"let o = nu(s: {A: Top .. Top} & {a: s.A}) {A = Top} /\\ {a = s} in o.a", "Top"},
      {"lambda(x: Top) x", "all(y: Bot) Top"},
  };
  for (const auto& c : cases) {
    std::string term = c.term;
    CAPTURE(term);
    auto d = bounded_search(Context{}, s.tm(c.term), s.ty(c.type));
    REQUIRE(d);
    CHECK(errors_text(*d) == "");
  }
}

TEST_CASE("subtyping search") {
  Src s;
  Context g = s.ctx("x: mu(x: {A: Top .. Top})");
  auto d = bounded_subtype(g, s.ty("x.A"), s.ty("Top"));
  REQUIRE(d);
  CHECK(errors_text(*d) == "");
  CHECK_FALSE(bounded_subtype(g, s.ty("Top"), s.ty("Bot")));
}
