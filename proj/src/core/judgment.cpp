// SPDX-License-Identifier: Apache-2.0

#include "core/judgment.hpp"

#include <algorithm>

namespace dot {

namespace {
constexpr std::pair<JudgmentKind, const char*> kKindNames[] = {
    {JudgmentKind::Typ, "typ"},
    {JudgmentKind::Subtyp, "subtyp"},
    {JudgmentKind::TypTight, "typ_tight"},
    {JudgmentKind::SubtypTight, "subtyp_tight"},
    {JudgmentKind::TypPrecise, "typ_precise"},
    {JudgmentKind::TypInvertible, "typ_invertible"},
    {JudgmentKind::Defs, "defs"},
};
}

const char* kind_name(JudgmentKind k) {
  for (const auto& [kind, name] : kKindNames)
    if (kind == k) return name;
  return "?";
}

std::optional<JudgmentKind> kind_from_name(std::string_view s) {
  for (const auto& [kind, name] : kKindNames)
    if (s == name) return kind;
  return std::nullopt;
}

bool is_typing(JudgmentKind k) {
  return k == JudgmentKind::Typ || k == JudgmentKind::TypTight || k == JudgmentKind::TypPrecise ||
         k == JudgmentKind::TypInvertible;
}

bool is_subtyping(JudgmentKind k) {
  return k == JudgmentKind::Subtyp || k == JudgmentKind::SubtypTight;
}

Judgment Judgment::typing(JudgmentKind k, Context g, Term t, Type ty) {
  Judgment j;
  j.kind = k;
  j.ctx = std::move(g);
  j.term = std::move(t);
  j.type = std::move(ty);
  return j;
}

Judgment Judgment::subtyping(JudgmentKind k, Context g, Type l, Type r) {
  Judgment j;
  j.kind = k;
  j.ctx = std::move(g);
  j.lhs = std::move(l);
  j.rhs = std::move(r);
  return j;
}

Judgment Judgment::definitions(Context g, Def d, Type ty) {
  Judgment j;
  j.kind = JudgmentKind::Defs;
  j.ctx = std::move(g);
  j.defs = std::move(d);
  j.type = std::move(ty);
  return j;
}

bool same_claim(const Judgment& a, const Judgment& b) {
  if (is_subtyping(a.kind) != is_subtyping(b.kind) || is_typing(a.kind) != is_typing(b.kind)) return false;
  if (is_subtyping(a.kind)) return alpha_eq(a.lhs, b.lhs) && alpha_eq(a.rhs, b.rhs);
  if (a.kind == JudgmentKind::Defs) return alpha_eq(a.defs, b.defs) && alpha_eq(a.type, b.type);
  return alpha_eq(a.term, b.term) && alpha_eq(a.type, b.type);
}

bool alpha_eq(const Judgment& a, const Judgment& b) {
  return a.kind == b.kind && same_claim(a, b) && alpha_eq(a.ctx, b.ctx);
}

std::size_t node_count(const Derivation& d) {
  std::size_t n = 1;
  for (const auto& p : d.premises) n += node_count(p);
  return n;
}

std::size_t height(const Derivation& d) {
  std::size_t h = 0;
  for (const auto& p : d.premises) h = std::max(h, height(p));
  return h + 1;
}

void collect_rules(const Derivation& d, std::vector<std::string>& out) {
  out.push_back(d.rule);
  for (const auto& p : d.premises) collect_rules(p, out);
}

}  // namespace dot
