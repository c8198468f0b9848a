// SPDX-License-Identifier: Apache-2.0

#include "core/evaluator.hpp"

#include <json.hpp>

#include "core/surface.hpp"

namespace dot {

std::optional<Decomposition> decompose(const Term& t) {
  EvalContext e;
  Term cur = t;
  for (;;) {
    if (auto l = cur.as<terms::Let>()) {
      if (auto v = l->rhs.as<terms::Val>()) {
        e.frames.push_back(LetVal{l->bound, v->value});
        cur = l->body;
        continue;
      }
      if (l->rhs.is<terms::Ref>() || l->rhs.is<terms::Let>()) return Decomposition{e, cur};
      e.hole = LetHole{l->bound, l->body};
      return Decomposition{e, l->rhs};
    }
    if (cur.is<terms::App>() || cur.is<terms::Sel>()) return Decomposition{e, cur};
    return std::nullopt;  // a variable or a value under value bindings
  }
}

Term plug(const EvalContext& e, const Term& t) {
  Term out = e.hole ? mk::let(e.hole->bound, t, e.hole->body) : t;
  for (auto it = e.frames.rbegin(); it != e.frames.rend(); ++it)
    out = mk::let(it->bound, mk::val(it->value), out);
  return out;
}

bool is_answer(const Term& t) {
  Term cur = t;
  for (;;) {
    if (cur.is<terms::Ref>() || cur.is<terms::Val>()) return true;
    auto l = cur.as<terms::Let>();
    if (!l || !l->rhs.is<terms::Val>()) return false;
    cur = l->body;
  }
}

const char* stuck_reason_text(StuckReason r) {
  switch (r) {
    case StuckReason::ApplyToObject: return "application head is an object";
    case StuckReason::SelectOnFunction: return "selection receiver is a function";
    case StuckReason::MissingField: return "object has no such field";
    case StuckReason::UnboundVariable: return "variable has no value binding";
  }
  return "?";
}

const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Answer: return "answer";
    case Outcome::Stuck: return "stuck";
    case Outcome::FuelExhausted: return "fuel-exhausted";
  }
  return "?";
}

namespace {

const Value* value_of(const EvalContext& e, const Var& x) {
  for (auto it = e.frames.rbegin(); it != e.frames.rend(); ++it)
    if (it->bound == x) return &it->value;
  return nullptr;
}

std::optional<Term> field_body(const values::Nu& obj, const std::string& label) {
  for (const auto& d : def_parts(obj.defs))
    if (auto f = d.as<defs::Field>(); f && f->label == label) return f->rhs;
  return std::nullopt;
}

StepResult stuck(StuckReason r, const Term& focus) {
  StepResult s;
  s.kind = StepResult::Kind::Stuck;
  s.reason = r;
  s.focus = focus;
  return s;
}

StepResult stepped(const char* rule, Term next) {
  StepResult s;
  s.kind = StepResult::Kind::Stepped;
  s.rule = rule;
  s.next = std::move(next);
  return s;
}

}  // namespace

StepResult step(const Term& t) {
  auto dec = decompose(t);
  if (!dec) return StepResult{};
  const EvalContext& e = dec->ctx;
  const Term& r = dec->redex;

  if (auto app = r.as<terms::App>()) {
    const Value* v = value_of(e, app->fun);
    if (!v) return stuck(StuckReason::UnboundVariable, r);
    auto lam = v->as<values::Lambda>();
    if (!lam) return stuck(StuckReason::ApplyToObject, r);
    // Copies of the body get fresh binders so no binder is duplicated.
    Term body = subst(freshen_binders(lam->body), lam->param, app->arg);
    return stepped("Apply", plug(e, body));
  }
  if (auto sel = r.as<terms::Sel>()) {
    const Value* v = value_of(e, sel->receiver);
    if (!v) return stuck(StuckReason::UnboundVariable, r);
    auto obj = v->as<values::Nu>();
    if (!obj) return stuck(StuckReason::SelectOnFunction, r);
    auto body = field_body(*obj, sel->label);
    if (!body) return stuck(StuckReason::MissingField, r);
    // The self variable is identified with the let-bound receiver.
    return stepped("Project", plug(e, subst(freshen_binders(*body), obj->self, sel->receiver)));
  }
  auto let = r.as<terms::Let>();
  if (auto y = let->rhs.as<terms::Ref>()) return stepped("Let-Var", plug(e, subst(let->body, let->bound, y->var)));

  auto inner = let->rhs.as<terms::Let>();
  Var y = inner->bound;
  Term t_in = inner->body;
  if (occurs_free(y, let->body)) {
    Var y2 = fresh_like(y);
    t_in = subst(t_in, y, y2);
    y = y2;
  }
  return stepped("Let-Let", plug(e, mk::let(y, inner->rhs, mk::let(let->bound, t_in, let->body))));
}

std::vector<std::string> matching_rules(const Term& t) {
  std::vector<std::string> out;
  auto dec = decompose(t);
  if (!dec) return out;
  const EvalContext& e = dec->ctx;
  const Term& r = dec->redex;
  if (auto app = r.as<terms::App>()) {
    const Value* v = value_of(e, app->fun);
    if (v && v->is<values::Lambda>()) out.push_back("Apply");
  }
  if (auto sel = r.as<terms::Sel>()) {
    const Value* v = value_of(e, sel->receiver);
    if (v && v->is<values::Nu>() && field_body(*v->as<values::Nu>(), sel->label))
      out.push_back("Project");
  }
  if (auto let = r.as<terms::Let>()) {
    if (let->rhs.is<terms::Ref>()) out.push_back("Let-Var");
    if (let->rhs.is<terms::Let>()) out.push_back("Let-Let");
  }
  return out;
}

Trace run(const Term& t, std::size_t fuel) {
  Trace tr;
  tr.states.push_back(t);
  for (;;) {
    StepResult s = step(tr.states.back());
    if (s.kind == StepResult::Kind::Answer) {
      tr.outcome = Outcome::Answer;
      return tr;
    }
    if (s.kind == StepResult::Kind::Stuck) {
      tr.outcome = Outcome::Stuck;
      tr.stuck_reason = s.reason;
      tr.stuck_focus = s.focus;
      return tr;
    }
    if (fuel == 0) {
      tr.outcome = Outcome::FuelExhausted;
      return tr;
    }
    --fuel;
    tr.rules.push_back(s.rule);
    tr.states.push_back(s.next);
  }
}

std::string trace_text(const Trace& tr) {
  Names names;
  std::string out;
  for (std::size_t i = 0; i < tr.states.size(); ++i)
    out += (i == 0 ? std::string("Start") : tr.rules[i - 1]) + " " + print(tr.states[i], names) + "\n";
  out += outcome_name(tr.outcome);
  if (tr.stuck_reason)
    out += std::string(": ") + stuck_reason_text(*tr.stuck_reason) + " at " + print(tr.stuck_focus, names);
  out += "\n";
  return out;
}

std::string trace_json(const Trace& tr) {
  Names names;
  nlohmann::json j;
  j["states"] = nlohmann::json::array();
  for (const auto& s : tr.states) j["states"].push_back(print(s, names));
  j["rules"] = tr.rules;
  j["outcome"] = outcome_name(tr.outcome);
  if (tr.stuck_reason) {
    j["stuck"] = {{"reason", stuck_reason_text(*tr.stuck_reason)},
                  {"focus", print(tr.stuck_focus, names)}};
  }
  return j.dump(2);
}

}  // namespace dot
