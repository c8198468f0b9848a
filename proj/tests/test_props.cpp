// SPDX-License-Identifier: Apache-2.0
//
// Small-count runs of the fuzz properties. The acceptance binary runs the
// same properties at full size.

#include <doctest.h>

#include "harness.hpp"

using namespace dot::harness;

namespace {

void expect(const Tally& t, std::size_t want) {
  INFO(t.first_failure);
  CHECK(t.failures == 0);
  CHECK(t.instances >= want);
}

}  // namespace

TEST_CASE("property: general to tight") {
  Tally t = general_to_tight_property(11, 60);
  expect(t, 60);
  CHECK(t.max_height <= 6);
}

TEST_CASE("property: tight to invertible") { expect(tight_to_invertible_property(12, 60), 60); }

TEST_CASE("property: sel premise") { expect(sel_premise_property(13, 20), 20); }

TEST_CASE("property: canonical forms") {
  for (Canon c : {Canon::FunVar, Canon::FunVal, Canon::ObjVar, Canon::ObjVal}) {
    CAPTURE(canon_name(c));
    expect(canonical_property(c, 14, 20), 20);
  }
}

TEST_CASE("property: precise value types are inert") { expect(value_inert_property(15, 100), 100); }

TEST_CASE("property: evaluator determinism") {
  Tally t = evaluator_property(16, 1000);
  expect(t, 1000);
  // The generator reaches every reduction rule.
  for (const char* rule : {"Apply", "Project", "Let-Var", "Let-Let"}) {
    CAPTURE(rule);
    CHECK(t.rules[rule] > 0);
  }
}

TEST_CASE("property: print and parse round trip") { expect(round_trip_property(17, 1000), 1000); }
