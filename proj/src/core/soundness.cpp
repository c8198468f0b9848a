// SPDX-License-Identifier: Apache-2.0

#include "core/soundness.hpp"

#include <algorithm>
#include <set>

#include "core/derivation_io.hpp"
#include "core/error.hpp"
#include "core/inert.hpp"
#include "core/rules.hpp"

namespace dot {

SoundnessResult check_soundness(const Derivation& d, std::size_t fuel, const SearchConfig& cfg) {
  const Judgment& c = d.conclusion;
  if (c.kind != JudgmentKind::Typ || !c.ctx.empty())
    throw Error(ErrorCode::InvalidInput, "expected a general typing derivation in the empty context");
  if (!is_valid(d)) throw Error(ErrorCode::InvalidInput, "derivation does not validate");

  SoundnessResult out;
  Trace& tr = out.trace;
  tr.states.push_back(c.term);
  Context empty;
  for (std::size_t i = 0;; ++i) {
    StepResult r = step(tr.states.back());
    if (r.kind == StepResult::Kind::Answer) {
      tr.outcome = Outcome::Answer;
      out.pass = !out.underived;
      return out;
    }
    if (r.kind == StepResult::Kind::Stuck) {
      tr.outcome = Outcome::Stuck;
      tr.stuck_reason = r.reason;
      tr.stuck_focus = r.focus;
      out.failure = std::string("stuck: ") + stuck_reason_text(r.reason);
      return out;
    }
    if (i == fuel) {
      tr.outcome = Outcome::FuelExhausted;
      out.failure = "fuel exhausted";
      return out;
    }
    tr.states.push_back(r.next);
    tr.rules.push_back(r.rule);
    if (!out.underived && !bounded_search(empty, r.next, c.type, cfg)) {
      out.underived = tr.states.size() - 1;
      out.failure = "no derivation found after step " + std::to_string(tr.states.size() - 1);
    }
  }
}

BadBoundsReport bad_bounds_report(const SearchConfig& cfg) {
  BadBoundsReport r;
  Scope scope;
  r.derivation = parse_derivation(bad_bounds_document(), scope);
  r.valid = is_valid(r.derivation);
  r.term = r.derivation.conclusion.term;

  const auto& lam = *r.term.as<terms::Val>()->value.as<values::Lambda>();
  r.body_context = Context({{lam.param, lam.param_type}});
  if (auto off = is_inert_context(r.body_context)) {
    r.offender = off->var;
    r.offender_reason = inert_reason_name(off->report.first_violation->reason);
  }
  r.body = lam.body;
  r.body_trace = run(r.body, 1000);

  // y y under the binding the let introduces.
  const auto& let = *r.body.as<terms::Let>();
  Var y = let.bound;
  Type y_type = mk::mu(y, mk::fld("a", mk::top()));
  Term yy = mk::app(y, y);
  Context inert({{y, y_type}});
  SearchConfig fixed = cfg;
  r.inert_search_found = bounded_search(inert, yy, std::nullopt, fixed).has_value();
  Context bad({{lam.param, lam.param_type}, {y, y_type}});
  SearchStats stats;
  r.bad_bounds_search_found = bounded_search(bad, yy, mk::top(), fixed, &stats).has_value();
  r.bad_bounds_search_depth = stats.depth;
  return r;
}

std::string bad_bounds_text(const BadBoundsReport& r) {
  Names names;
  std::string out;
  out += "term: " + print(r.term, names) + "\n";
  out += "type: " + print(r.derivation.conclusion.type, names) + "\n";
  std::vector<std::string> rules;
  collect_rules(r.derivation, rules);
  std::set<std::string> distinct(rules.begin(), rules.end());
  out += "derivation: " + std::to_string(node_count(r.derivation)) + " nodes, height " +
         std::to_string(height(r.derivation)) + ", " + (r.valid ? "valid" : "INVALID") + "\n";
  out += "rules:";
  for (const auto& s : distinct) out += " " + s;
  out += "\n";
  out += "body context: " + print(r.body_context, names) + "\n";
  out += "non-inert binding: " + print(mk::ref(r.offender), names) + " (" + r.offender_reason + ")\n";
  out += "body: " + print(r.body, names) + "\n";
  out += "trace:\n" + trace_text(r.body_trace);
  out += std::string("search y y in the inert context: ") + (r.inert_search_found ? "found" : "not found") + "\n";
  out += std::string("search y y with x in scope: ") +
         (r.bad_bounds_search_found ? "found at depth " + std::to_string(r.bad_bounds_search_depth) : "not found") +
         "\n";
  return out;
}

}  // namespace dot
