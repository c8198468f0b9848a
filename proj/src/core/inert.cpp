// SPDX-License-Identifier: Apache-2.0

#include "core/inert.hpp"

#include <unordered_set>

#include "core/error.hpp"

namespace dot {

const char* inert_reason_name(InertReason r) {
  switch (r) {
    case InertReason::NonTightBounds: return "non-tight-bounds";
    case InertReason::DuplicateTypeLabel: return "duplicate-type-label";
    case InertReason::DuplicateFieldLabel: return "duplicate-field-label";
    case InertReason::DisallowedConstructor: return "disallowed-constructor";
    case InertReason::NonRecordBody: return "non-record-body";
  }
  return "?";
}

namespace {

InertReport violation(std::vector<std::size_t> path, InertReason r, std::string detail) {
  return InertReport{false, InertViolation{std::move(path), r, std::move(detail)}};
}

}  // namespace

InertReport is_inert_type(const Type& t, InertOptions opts) {
  if (t.is<types::All>()) return {};
  auto rec = t.as<types::Rec>();
  if (!rec)
    return violation({}, InertReason::DisallowedConstructor,
                     "an inert type is a function type or a recursive type");

  std::unordered_set<std::string> type_labels;
  std::unordered_set<std::string> field_labels;
  // Left-to-right walk of the conjunct tree, iterative so long chains are
  // fine. Paths are rebuilt from parent links only when reporting.
  struct Link {
    std::size_t parent;
    std::size_t side;
  };
  std::vector<Link> links{{0, 0}};
  auto path_of = [&](std::size_t id) {
    std::vector<std::size_t> path;
    for (; id != 0; id = links[id].parent) path.push_back(links[id].side);
    path.push_back(0);
    return std::vector<std::size_t>(path.rbegin(), path.rend());
  };
  std::vector<std::pair<Type, std::size_t>> stack{{rec->body, 0}};
  while (!stack.empty()) {
    auto [cur, id] = std::move(stack.back());
    stack.pop_back();
    if (auto a = cur.as<types::And>()) {
      links.push_back({id, 1});
      stack.emplace_back(a->right, links.size() - 1);
      links.push_back({id, 0});
      stack.emplace_back(a->left, links.size() - 1);
    } else if (auto d = cur.as<types::Typ>()) {
      if (!alpha_eq(d->lower, d->upper))
        return violation(path_of(id), InertReason::NonTightBounds,
                         "type member " + d->label + " has different bounds");
      if (!type_labels.insert(d->label).second)
        return violation(path_of(id), InertReason::DuplicateTypeLabel,
                         "type member " + d->label + " is declared twice");
    } else if (auto f = cur.as<types::Fld>()) {
      if (!opts.loose && !field_labels.insert(f->label).second)
        return violation(path_of(id), InertReason::DuplicateFieldLabel,
                         "field " + f->label + " is declared twice");
    } else {
      return violation(path_of(id), InertReason::NonRecordBody,
                       "recursive type body must be field and type member declarations");
    }
  }
  return {};
}

std::optional<ContextOffender> is_inert_context(const Context& g, InertOptions opts) {
  for (const auto& b : g.bindings()) {
    auto r = is_inert_type(b.type, opts);
    if (!r.verdict) return ContextOffender{b.var, std::move(r)};
  }
  return std::nullopt;
}

std::map<std::string, Type> record_members(const Type& t) {
  auto rec = t.as<types::Rec>();
  if (!rec || !is_inert_type(t).verdict)
    fail(ErrorCode::Precondition, "record_members needs an inert recursive type");
  std::map<std::string, Type> out;
  for (const auto& c : conjuncts(rec->body)) {
    if (auto f = c.as<types::Fld>()) out.emplace(f->label, c);
    if (auto d = c.as<types::Typ>()) out.emplace(d->label, c);
  }
  return out;
}

}  // namespace dot
