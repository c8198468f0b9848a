// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "core/canonical.hpp"
#include "core/derive.hpp"
#include "core/search.hpp"
#include "support.hpp"

using namespace dot;
using dot::test::code_of;
using dot::test::errors_text;
using dot::test::Src;
using K = JudgmentKind;

namespace {

void check_fun(const CanonicalFunResult& r) {
  CHECK(errors_text(r.precise) == "");
  CHECK(errors_text(r.domain_sub) == "");
  CHECK(errors_text(r.codomain_sub) == "");
  if (r.body_typing.rule != "") CHECK(errors_text(r.body_typing) == "");
}

Derivation var(const Context& g, const Var& x) {
  return make("Var", Judgment::typing(K::Typ, g, mk::ref(x), *g.lookup(x)));
}

}  // namespace

TEST_CASE("canonical forms: function variable") {
  Src s;
  Context g = s.ctx("f: all(y: Top) Top");
  Var f = s.v("f");

  SUBCASE("identity case") {
    auto r = canon_fun_var(g, var(g, f));
    check_fun(r);
    CHECK(alpha_eq(r.context_type, s.ty("all(y: Top) Top")));
    CHECK(r.domain_sub.rule == "Refl");
    CHECK(r.codomain_sub.rule == "Refl");
    CHECK(r.precise.rule == "Var!");
    CHECK(r.stages.back() == "Induction on ⊢!");
  }

  SUBCASE("widened domain") {
    Type target = s.ty("all(y: Bot) Top");
    auto sub = bounded_subtype(g, s.ty("all(y: Top) Top"), target);
    REQUIRE(sub);
    Derivation d = make("Sub", Judgment::typing(K::Typ, g, mk::ref(f), target), {var(g, f), *sub});
    REQUIRE(errors_text(d) == "");
    auto r = canon_fun_var(g, d);
    check_fun(r);
    CHECK(alpha_eq(r.domain_sub.conclusion.lhs, s.ty("Bot")));
    CHECK(alpha_eq(r.domain_sub.conclusion.rhs, s.ty("Top")));
    // The codomain judgment lives in Γ, y: T with T the target domain.
    CHECK(alpha_eq(r.codomain_sub.conclusion.ctx.bindings().back().type, s.ty("Bot")));
  }

  SUBCASE("recursive binding") {
    Context h = s.ctx("z: mu(z: {a: Top})");
    Var z = s.v("z");
    Derivation fake = make("Var", Judgment::typing(K::Typ, h, mk::ref(z), s.ty("all(y: Top) Top")));
    CHECK(code_of([&] { canon_fun_var(h, fake); }) == ErrorCode::InvalidInput);
  }
}

TEST_CASE("canonical forms: lambda") {
  Src s;
  Context g;
  Term v = s.tm("lambda(y: Top) y");

  SUBCASE("identity") {
    auto d = bounded_search(g, v, s.ty("all(y: Top) Top"));
    REQUIRE(d);
    auto r = canon_fun_val(g, *d);
    check_fun(r);
    REQUIRE(r.lambda_param);
    CHECK(alpha_eq(r.param_type, s.ty("Top")));
    CHECK(alpha_eq(r.body, mk::ref(r.param)));
    CHECK(r.domain_sub.rule == "Refl");
    CHECK(r.codomain_sub.rule == "Refl");
  }

  SUBCASE("narrowed parameter") {
    Type target = s.ty("all(y: Bot) Top");
    auto d = bounded_search(g, v, target);
    REQUIRE(d);
    REQUIRE(errors_text(*d) == "");
    auto r = canon_fun_val(g, *d);
    check_fun(r);
    CHECK(alpha_eq(r.param_type, s.ty("Top")));
    CHECK(alpha_eq(r.domain_sub.conclusion.lhs, s.ty("Bot")));
    CHECK(alpha_eq(r.body_typing.conclusion.ctx.bindings().back().type, s.ty("Bot")));
    CHECK(alpha_eq(r.body_typing.conclusion.type, s.ty("Top")));
  }

  SUBCASE("object subject") {
    Term o = s.tm("nu(x: {a: Top}) {a = x}");
    auto d = bounded_search(g, o, s.ty("mu(x: {a: Top})"));
    REQUIRE(d);
    CHECK(code_of([&] { canon_fun_val(g, *d); }) == ErrorCode::InvalidInput);
  }
}

TEST_CASE("canonical forms: object variable") {
  Src s;

  SUBCASE("identity") {
    Context g = s.ctx("o: mu(o: {a: Top})");
    Var o = s.v("o");
    Type fld = s.ty("{a: Top}");
    Derivation d = make("Rec-E", Judgment::typing(K::Typ, g, mk::ref(o), fld), {var(g, o)});
    auto r = canon_obj_var(g, d);
    CHECK(alpha_eq(r.field_type, s.ty("Top")));
    CHECK(r.sub.rule == "Refl");
    CHECK(alpha_eq(r.context_type, *g.lookup(o)));
    CHECK(errors_text(r.precise) == "");
  }

  SUBCASE("widened field") {
    Context g = s.ctx("p: mu(p: {a: Bot})");
    auto d = bounded_search(g, s.tm("p"), s.ty("{a: Top}"));
    REQUIRE(d);
    auto r = canon_obj_var(g, *d);
    CHECK(alpha_eq(r.field_type, s.ty("Bot")));
    CHECK(alpha_eq(r.sub.conclusion.lhs, s.ty("Bot")));
    CHECK(alpha_eq(r.sub.conclusion.rhs, s.ty("Top")));
    CHECK(errors_text(r.sub) == "");
  }

  SUBCASE("function binding") {
    Context g = s.ctx("q: all(y: Top) Top");
    Var q = s.v("q");
    Derivation fake = make("Var", Judgment::typing(K::Typ, g, mk::ref(q), s.ty("{a: Top}")));
    CHECK(code_of([&] { canon_obj_var(g, fake); }) == ErrorCode::InvalidInput);
  }
}

TEST_CASE("canonical forms: object value") {
  Src s;
  Context g;
  Term v = s.tm("nu(x: {a: Top}) {a = x}");
  auto d = bounded_search(g, v, s.ty("mu(x: {a: Top})"));
  REQUIRE(d);
  auto r = canon_obj_val(g, *d, "a");
  REQUIRE(r.self);
  CHECK(alpha_eq(r.field_term, mk::ref(*r.self)));
  CHECK(errors_text(r.field_typing) == "");
  CHECK(alpha_eq(r.field_typing.conclusion.type, s.ty("Top")));
  CHECK(r.field_typing.conclusion.ctx.binds(*r.self));
  CHECK(r.stages.back() == "Inversion of {}-I!");

  Term lam = s.tm("lambda(y: Top) y");
  auto dl = bounded_search(g, lam, s.ty("all(y: Top) Top"));
  REQUIRE(dl);
  CHECK(code_of([&] { canon_obj_val(g, *dl); }) == ErrorCode::InvalidInput);
  CHECK(code_of([&] { canon_obj_val(g, *d, "b"); }) == ErrorCode::InvalidInput);
}
