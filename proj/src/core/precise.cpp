// SPDX-License-Identifier: Apache-2.0

#include "core/precise.hpp"

#include <deque>
#include <set>

#include "core/error.hpp"

namespace dot {

Derivation precise_var(const Context& g, const Var& x) {
  const Type* t = g.lookup(x);
  if (!t) fail(ErrorCode::UnboundVariable, "variable " + x.name + " is not bound");
  return Derivation{"Var!", Judgment::typing(JudgmentKind::TypPrecise, g, mk::ref(x), *t), {}};
}

std::vector<PreciseType> precise_types_of_var(const Context& g, const Var& x) {
  std::vector<PreciseType> out;
  std::set<std::string> seen;
  std::deque<Derivation> queue{precise_var(g, x)};
  auto step = [&](const char* rule, const Derivation& from, Type t) {
    queue.push_back(Derivation{rule, Judgment::typing(JudgmentKind::TypPrecise, g, mk::ref(x), t), {from}});
  };
  while (!queue.empty()) {
    Derivation d = std::move(queue.front());
    queue.pop_front();
    const Type& t = d.conclusion.type;
    if (!seen.insert(canonical_key(t)).second) continue;
    if (auto r = t.as<types::Rec>()) step("Rec-E!", d, subst(r->body, r->self, x));
    if (auto a = t.as<types::And>()) {
      step("And1-E!", d, a->left);
      step("And2-E!", d, a->right);
    }
    out.push_back(PreciseType{t, std::move(d)});
  }
  return out;
}

}  // namespace dot
