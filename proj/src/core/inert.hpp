// SPDX-License-Identifier: Apache-2.0

#ifndef DOT_CORE_INERT_HPP
#define DOT_CORE_INERT_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "core/context.hpp"

namespace dot {

enum class InertReason {
  NonTightBounds,
  DuplicateTypeLabel,
  DuplicateFieldLabel,  // strict mode only
  DisallowedConstructor,
  NonRecordBody,
};

const char* inert_reason_name(InertReason r);

struct InertViolation {
  // Child indices from the root: Rec body is 0, And sides are 0 and 1.
  std::vector<std::size_t> path;
  InertReason reason;
  std::string detail;
};

struct InertReport {
  bool verdict = true;
  std::optional<InertViolation> first_violation;
};

struct InertOptions {
  // Only type labels must be distinct; repeated field labels are accepted.
  bool loose = false;
};

InertReport is_inert_type(const Type& t, InertOptions opts = {});

struct ContextOffender {
  Var var;
  InertReport report;
};

std::optional<ContextOffender> is_inert_context(const Context& g, InertOptions opts = {});

// Conjuncts of an inert mu-type body keyed by label. Throws Precondition
// when t is not an inert recursive type.
std::map<std::string, Type> record_members(const Type& t);

}  // namespace dot

#endif
