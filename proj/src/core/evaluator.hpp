// SPDX-License-Identifier: Apache-2.0
//
// Small-step reduction with evaluation contexts
//   e ::= [] | let x = [] in t | let x = v in e

#ifndef DOT_CORE_EVALUATOR_HPP
#define DOT_CORE_EVALUATOR_HPP

#include <optional>
#include <string>
#include <vector>

#include "core/syntax.hpp"

namespace dot {

struct LetVal {
  Var bound;
  Value value;
};

struct LetHole {
  Var bound;
  Term body;
};

// let x1 = v1 in ... let xn = vn in H, where H is [] or let y = [] in t.
struct EvalContext {
  std::vector<LetVal> frames;
  std::optional<LetHole> hole;
};

struct Decomposition {
  EvalContext ctx;
  Term redex;
};

// nullopt when t is an answer.
std::optional<Decomposition> decompose(const Term& t);
Term plug(const EvalContext& e, const Term& t);

bool is_answer(const Term& t);

enum class StuckReason { ApplyToObject, SelectOnFunction, MissingField, UnboundVariable };
const char* stuck_reason_text(StuckReason r);

struct StepResult {
  enum class Kind { Stepped, Answer, Stuck };
  Kind kind = Kind::Answer;
  std::string rule;  // Apply, Project, Let-Var or Let-Let
  Term next;
  StuckReason reason = StuckReason::UnboundVariable;
  Term focus;
};

StepResult step(const Term& t);

// Every reduction rule whose shape matches at the decomposition focus.
std::vector<std::string> matching_rules(const Term& t);

enum class Outcome { Answer, Stuck, FuelExhausted };
const char* outcome_name(Outcome o);

struct Trace {
  std::vector<Term> states;
  std::vector<std::string> rules;
  Outcome outcome = Outcome::Answer;
  std::optional<StuckReason> stuck_reason;
  Term stuck_focus;
};

Trace run(const Term& t, std::size_t fuel);

std::string trace_text(const Trace& tr);
std::string trace_json(const Trace& tr);

}  // namespace dot

#endif
