// SPDX-License-Identifier: Apache-2.0

#include "dot/dot.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <set>
#include <string>

#include <json.hpp>

#include "core/canonical.hpp"
#include "core/derivation_io.hpp"
#include "core/derive.hpp"
#include "core/evaluator.hpp"
#include "core/inert.hpp"
#include "core/precise.hpp"
#include "core/rules.hpp"
#include "core/search.hpp"
#include "core/soundness.hpp"
#include "core/surface.hpp"
#include "core/transform.hpp"
#include "core/overloaded.hpp"

using nlohmann::json;

struct dot_session {
  dot::Scope scope;
};
struct dot_type {
  dot::Type t;
};
struct dot_term {
  dot::Term t;
};
struct dot_context {
  dot::Context g;
};
struct dot_deriv {
  dot::Derivation d;
};

namespace {

thread_local std::string last_error;

struct ArgError {
  std::string what;
};

dot_status status_of(dot::ErrorCode c) {
  using dot::ErrorCode;
  switch (c) {
    case ErrorCode::Parse: return DOT_ERR_PARSE;
    case ErrorCode::UnboundVariable: return DOT_ERR_UNBOUND_VARIABLE;
    case ErrorCode::NonInertContext: return DOT_ERR_NON_INERT_CONTEXT;
    case ErrorCode::InvalidInput: return DOT_ERR_INVALID_INPUT;
    case ErrorCode::SubjectNotVarOrValue: return DOT_ERR_SUBJECT_NOT_VAR_OR_VALUE;
    case ErrorCode::XNotLast: return DOT_ERR_X_NOT_LAST;
    case ErrorCode::Precondition: return DOT_ERR_PRECONDITION;
  }
  return DOT_ERR_INTERNAL;
}

template <class F>
dot_status guard(F&& f) {
  try {
    return f();
  } catch (const dot::ParseError& e) {
    last_error = std::to_string(e.span().line) + ":" + std::to_string(e.span().column) + ": " + e.message();
    if (!e.expected().empty()) {
      last_error += " (expected";
      for (const auto& x : e.expected()) last_error += " " + x;
      last_error += ")";
    }
    return DOT_ERR_PARSE;
  } catch (const dot::Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const ArgError& e) {
    last_error = e.what;
    return DOT_ERR_ARGUMENT;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return DOT_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return DOT_ERR_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  if (!p) throw ArgError{std::string(what) + " is NULL"};
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string path_text(const std::vector<std::size_t>& path) {
  std::string out = "[";
  for (std::size_t i = 0; i < path.size(); ++i) out += (i ? "," : "") + std::to_string(path[i]);
  return out + "]";
}

dot::Var var_named(const dot::Context& g, const char* name) {
  need(name, "var");
  const auto& bs = g.bindings();
  for (auto it = bs.rbegin(); it != bs.rend(); ++it)
    if (it->var.name == name) return it->var;
  throw dot::Error(dot::ErrorCode::UnboundVariable, std::string("no binding for ") + name + " in the context");
}

dot_deriv* wrap(dot::Derivation d) { return new dot_deriv{std::move(d)}; }

std::string inert_text(const dot::InertReport& r) {
  if (r.verdict) return "inert\n";
  const auto& v = *r.first_violation;
  std::string out = std::string("not inert: ") + dot::inert_reason_name(v.reason) + " at " + path_text(v.path);
  if (!v.detail.empty()) out += ": " + v.detail;
  return out + "\n";
}

json inert_json(const dot::InertReport& r) {
  json j{{"inert", r.verdict}};
  if (r.first_violation) {
    const auto& v = *r.first_violation;
    j["reason"] = dot::inert_reason_name(v.reason);
    j["path"] = v.path;
    j["detail"] = v.detail;
  }
  return j;
}

const char* type_ctor(const dot::Type& t) {
  using namespace dot::types;
  return std::visit(dot::overloaded{[](const Top&) { return "Top"; }, [](const Bot&) { return "Bot"; },
                                    [](const All&) { return "All"; }, [](const Rec&) { return "Rec"; },
                                    [](const Fld&) { return "Fld"; }, [](const Typ&) { return "Typ"; },
                                    [](const Sel&) { return "Sel"; }, [](const And&) { return "And"; }},
                    t.node());
}

const char* term_ctor(const dot::Term& t) {
  using namespace dot::terms;
  return std::visit(dot::overloaded{[](const Ref&) { return "Ref"; },
                                    [](const Val& v) { return v.value.is<dot::values::Lambda>() ? "Lambda" : "Nu"; },
                                    [](const Sel&) { return "Sel"; }, [](const App&) { return "App"; },
                                    [](const Let&) { return "Let"; }},
                    t.node());
}

template <class Node>
std::string describe(const char* ctor, const Node& n, std::size_t size, int json_out) {
  dot::Names names;
  std::string printed = dot::print(n, names);
  std::vector<std::string> fv;
  for (const auto& v : dot::free_vars(n)) fv.push_back(names.name_of(v));
  if (json_out) return dump({{"constructor", ctor}, {"free", fv}, {"size", size}, {"printed", printed}});
  std::string out = std::string("constructor: ") + ctor + "\nfree:";
  for (const auto& f : fv) out += " " + f;
  out += "\nsize: " + std::to_string(size) + "\nprinted: " + printed + "\n";
  return out;
}

std::size_t size_of(const dot::Type& t);
std::size_t size_of(const dot::Term& t);
std::size_t size_of(const dot::Def& d);

std::size_t size_of(const dot::Type& t) {
  using namespace dot::types;
  return std::visit(dot::overloaded{[](const All& a) { return 1 + size_of(a.domain) + size_of(a.codomain); },
                                    [](const Rec& r) { return 1 + size_of(r.body); },
                                    [](const Fld& f) { return 1 + size_of(f.type); },
                                    [](const Typ& d) { return 1 + size_of(d.lower) + size_of(d.upper); },
                                    [](const And& a) { return 1 + size_of(a.left) + size_of(a.right); },
                                    [](const auto&) -> std::size_t { return 1; }},
                    t.node());
}

std::size_t size_of(const dot::Def& d) {
  using namespace dot::defs;
  return std::visit(dot::overloaded{[](const Field& f) { return 1 + size_of(f.rhs); },
                                    [](const Alias& a) { return 1 + size_of(a.alias); },
                                    [](const And& a) { return 1 + size_of(a.left) + size_of(a.right); }},
                    d.node());
}

std::size_t size_of(const dot::Term& t) {
  using namespace dot::terms;
  return std::visit(
      dot::overloaded{[](const Val& v) -> std::size_t {
                        if (const auto* l = v.value.as<dot::values::Lambda>())
                          return 1 + size_of(l->param_type) + size_of(l->body);
                        const auto& n = *v.value.as<dot::values::Nu>();
                        return 1 + size_of(n.self_type) + size_of(n.defs);
                      },
                      [](const Let& l) { return 1 + size_of(l.rhs) + size_of(l.body); },
                      [](const auto&) -> std::size_t { return 1; }},
      t.node());
}

std::string judgment_text(const dot::Derivation& d, dot::Names& names) { return dot::print(d.conclusion, names); }

std::string canon_text(const dot::CanonicalFunResult& r, dot::Names& n) {
  std::string out = "stages:\n";
  for (const auto& s : r.stages) out += "  " + s + "\n";
  out += "context type: " + dot::print(r.context_type, n) + "\n";
  out += "precise: " + judgment_text(r.precise, n) + "\n";
  out += "domain: " + judgment_text(r.domain_sub, n) + "\n";
  out += "codomain: " + judgment_text(r.codomain_sub, n) + "\n";
  if (r.lambda_param) {
    out += "lambda: " + n.name_of(*r.lambda_param) + ": " + dot::print(r.param_type, n) + "\n";
    out += "body: " + judgment_text(r.body_typing, n) + "\n";
  }
  return out;
}

json canon_json(const dot::CanonicalFunResult& r, dot::Names& n) {
  json j{{"stages", r.stages},
         {"context_type", dot::print(r.context_type, n)},
         {"precise", judgment_text(r.precise, n)},
         {"domain", judgment_text(r.domain_sub, n)},
         {"codomain", judgment_text(r.codomain_sub, n)}};
  if (r.lambda_param) {
    j["lambda_param"] = n.name_of(*r.lambda_param);
    j["param_type"] = dot::print(r.param_type, n);
    j["body"] = judgment_text(r.body_typing, n);
  }
  return j;
}

std::string canon_text(const dot::CanonicalObjResult& r, dot::Names& n) {
  std::string out = "stages:\n";
  for (const auto& s : r.stages) out += "  " + s + "\n";
  out += "context type: " + dot::print(r.context_type, n) + "\n";
  out += "precise: " + judgment_text(r.precise, n) + "\n";
  out += "field: " + r.label + ": " + dot::print(r.field_type, n) + "\n";
  if (r.self) {
    out += "self: " + n.name_of(*r.self) + "\n";
    out += "definitions: " + dot::print(r.defs, n) + "\n";
    out += "field typing: " + judgment_text(r.field_typing, n) + "\n";
  } else {
    out += "sub: " + judgment_text(r.sub, n) + "\n";
  }
  return out;
}

json canon_json(const dot::CanonicalObjResult& r, dot::Names& n) {
  json j{{"stages", r.stages},
         {"context_type", dot::print(r.context_type, n)},
         {"precise", judgment_text(r.precise, n)},
         {"label", r.label},
         {"field_type", dot::print(r.field_type, n)}};
  if (r.self) {
    j["self"] = n.name_of(*r.self);
    j["definitions"] = dot::print(r.defs, n);
    j["field_typing"] = judgment_text(r.field_typing, n);
  } else {
    j["sub"] = judgment_text(r.sub, n);
  }
  return j;
}

}  // namespace

extern "C" {

const char* dot_version(void) { return "0.1.0"; }

const char* dot_status_name(dot_status s) {
  switch (s) {
    case DOT_OK: return "ok";
    case DOT_ERR_PARSE: return "parse";
    case DOT_ERR_UNBOUND_VARIABLE: return "unbound-variable";
    case DOT_ERR_NON_INERT_CONTEXT: return "non-inert-context";
    case DOT_ERR_INVALID_INPUT: return "invalid-input";
    case DOT_ERR_SUBJECT_NOT_VAR_OR_VALUE: return "subject-not-var-or-value";
    case DOT_ERR_X_NOT_LAST: return "x-not-last";
    case DOT_ERR_PRECONDITION: return "precondition";
    case DOT_ERR_NOT_FOUND: return "not-found";
    case DOT_ERR_ARGUMENT: return "argument";
    case DOT_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* dot_last_error(void) { return last_error.c_str(); }

void dot_string_free(char* s) { std::free(s); }

dot_status dot_session_new(dot_session** out) {
  return guard([&] {
    need(out, "out");
    *out = new dot_session{};
    return DOT_OK;
  });
}

void dot_session_free(dot_session* s) { delete s; }
void dot_type_free(dot_type* t) { delete t; }
void dot_term_free(dot_term* t) { delete t; }
void dot_context_free(dot_context* g) { delete g; }
void dot_deriv_free(dot_deriv* d) { delete d; }

dot_status dot_type_parse(dot_session* s, const char* src, dot_type** out) {
  return guard([&] {
    need(s, "session"), need(src, "src"), need(out, "out");
    *out = new dot_type{dot::parse_type(src, s->scope)};
    return DOT_OK;
  });
}

dot_status dot_term_parse(dot_session* s, const char* src, dot_term** out) {
  return guard([&] {
    need(s, "session"), need(src, "src"), need(out, "out");
    *out = new dot_term{dot::parse_term(src, s->scope)};
    return DOT_OK;
  });
}

dot_status dot_context_parse(dot_session* s, const char* src, dot_context** out) {
  return guard([&] {
    need(s, "session"), need(src, "src"), need(out, "out");
    dot::Context g = dot::parse_context(src, s->scope);
    if (auto issue = dot::context_issue(g)) throw dot::Error(dot::ErrorCode::InvalidInput, *issue);
    *out = new dot_context{std::move(g)};
    return DOT_OK;
  });
}

dot_status dot_deriv_parse(dot_session* s, const char* doc, dot_deriv** out) {
  return guard([&] {
    need(s, "session"), need(doc, "doc"), need(out, "out");
    *out = wrap(dot::parse_derivation(doc, s->scope));
    return DOT_OK;
  });
}

dot_status dot_type_print(const dot_type* t, char** out) {
  return guard([&] {
    need(t, "type"), need(out, "out");
    *out = dup(dot::print(t->t));
    return DOT_OK;
  });
}

dot_status dot_term_print(const dot_term* t, char** out) {
  return guard([&] {
    need(t, "term"), need(out, "out");
    *out = dup(dot::print(t->t));
    return DOT_OK;
  });
}

dot_status dot_context_print(const dot_context* g, char** out) {
  return guard([&] {
    need(g, "context"), need(out, "out");
    *out = dup(dot::print(g->g));
    return DOT_OK;
  });
}

dot_status dot_deriv_print(const dot_deriv* d, int json_out, char** out) {
  return guard([&] {
    need(d, "derivation"), need(out, "out");
    dot::Names names;
    *out = dup(json_out ? dot::write_derivation(d->d, names) + "\n" : dot::render_tree(d->d, names));
    return DOT_OK;
  });
}

dot_status dot_type_describe(const dot_type* t, int json_out, char** out) {
  return guard([&] {
    need(t, "type"), need(out, "out");
    *out = dup(describe(type_ctor(t->t), t->t, size_of(t->t), json_out));
    return DOT_OK;
  });
}

dot_status dot_term_describe(const dot_term* t, int json_out, char** out) {
  return guard([&] {
    need(t, "term"), need(out, "out");
    *out = dup(describe(term_ctor(t->t), t->t, size_of(t->t), json_out));
    return DOT_OK;
  });
}

dot_status dot_inert_type(const dot_type* t, int loose, int json_out, int* inert, char** report) {
  return guard([&] {
    need(t, "type"), need(inert, "inert"), need(report, "report");
    dot::InertReport r = dot::is_inert_type(t->t, {.loose = loose != 0});
    *report = dup(json_out ? dump(inert_json(r)) : inert_text(r));
    *inert = r.verdict;
    return DOT_OK;
  });
}

dot_status dot_inert_context(const dot_context* g, int loose, int json_out, int* inert, char** report) {
  return guard([&] {
    need(g, "context"), need(inert, "inert"), need(report, "report");
    auto off = dot::is_inert_context(g->g, {.loose = loose != 0});
    if (!off) {
      *report = dup(json_out ? dump({{"inert", true}}) : std::string("inert\n"));
    } else {
      dot::Names names;
      std::string x = names.name_of(off->var);
      if (json_out) {
        json j = inert_json(off->report);
        j["var"] = x;
        *report = dup(dump(j));
      } else {
        *report = dup(x + ": " + inert_text(off->report));
      }
    }
    *inert = !off;
    return DOT_OK;
  });
}

dot_status dot_precise(const dot_context* g, const char* var, int json_out, char** report) {
  return guard([&] {
    need(g, "context"), need(report, "report");
    dot::Var x = var_named(g->g, var);
    dot::Names names;
    std::string xs = names.name_of(x);
    json arr = json::array();
    std::string text;
    for (const auto& p : dot::precise_types_of_var(g->g, x)) {
      std::string ty = dot::print(p.type, names);
      std::vector<std::string> rules;
      dot::collect_rules(p.deriv, rules);
      arr.push_back({{"type", ty}, {"rules", rules}});
      text += xs + " : " + ty + "\n";
    }
    *report = dup(json_out ? dump(arr) : text);
    return DOT_OK;
  });
}

dot_status dot_validate(const dot_deriv* d, int json_out, int* valid, char** report) {
  return guard([&] {
    need(d, "derivation"), need(valid, "valid"), need(report, "report");
    auto errs = dot::validate(d->d);
    dot::Names names;
    std::string concl = dot::print(d->d.conclusion, names);
    std::size_t nodes = dot::node_count(d->d), h = dot::height(d->d);
    if (json_out) {
      json e = json::array();
      for (const auto& x : errs)
        e.push_back({{"path", x.path}, {"reason", dot::reason_name(x.reason)}, {"detail", x.detail}});
      *report = dup(dump({{"valid", errs.empty()}, {"conclusion", concl}, {"nodes", nodes}, {"height", h},
                          {"errors", e}}));
    } else {
      std::string out = (errs.empty() ? "valid: " : "invalid: ") + concl + "\n";
      out += "nodes: " + std::to_string(nodes) + ", height: " + std::to_string(h) + "\n";
      for (const auto& x : errs)
        out += "error at " + path_text(x.path) + " " + dot::reason_name(x.reason) + ": " + x.detail + "\n";
      *report = dup(out);
    }
    *valid = errs.empty();
    return DOT_OK;
  });
}

dot_status dot_search(const dot_context* g, const dot_term* t, const dot_type* target, int depth,
                      dot_deriv** out) {
  return guard([&] {
    need(g, "context"), need(t, "term"), need(out, "out");
    if (depth < 0) throw ArgError{"depth must be non-negative"};
    dot::SearchConfig cfg;
    cfg.max_depth = depth;
    dot::SearchStats stats;
    std::optional<dot::Type> want;
    if (target) want = target->t;
    auto d = dot::bounded_search(g->g, t->t, want, cfg, &stats);
    if (!d) {
      last_error = "no derivation within depth " + std::to_string(depth) + " (" + std::to_string(stats.nodes) +
                   " nodes" + (stats.budget_exhausted ? ", node budget exhausted" : "") + ")";
      return DOT_ERR_NOT_FOUND;
    }
    *out = wrap(std::move(*d));
    return DOT_OK;
  });
}

dot_status dot_to_tight(const dot_deriv* d, dot_deriv** out) {
  return guard([&] {
    need(d, "derivation"), need(out, "out");
    *out = wrap(dot::general_to_tight(d->d.conclusion.ctx, d->d));
    return DOT_OK;
  });
}

dot_status dot_to_invertible(const dot_deriv* d, dot_deriv** out) {
  return guard([&] {
    need(d, "derivation"), need(out, "out");
    const dot::Context& g = d->d.conclusion.ctx;
    dot::Derivation tight =
        d->d.conclusion.kind == dot::JudgmentKind::Typ ? dot::general_to_tight(g, d->d) : d->d;
    *out = wrap(dot::tight_to_invertible(g, tight));
    return DOT_OK;
  });
}

dot_status dot_canon(const dot_deriv* d, dot_canon_kind kind, const char* label, int json_out, char** report) {
  return guard([&] {
    need(d, "derivation"), need(report, "report");
    const dot::Context& g = d->d.conclusion.ctx;
    dot::Names names;
    switch (kind) {
      case DOT_CANON_FUN_VAR:
      case DOT_CANON_FUN_VAL: {
        auto r = kind == DOT_CANON_FUN_VAR ? dot::canon_fun_var(g, d->d) : dot::canon_fun_val(g, d->d);
        *report = dup(json_out ? dump(canon_json(r, names)) : canon_text(r, names));
        return DOT_OK;
      }
      case DOT_CANON_OBJ_VAR:
      case DOT_CANON_OBJ_VAL: {
        auto r = kind == DOT_CANON_OBJ_VAR ? dot::canon_obj_var(g, d->d)
                                           : dot::canon_obj_val(g, d->d, label ? label : "");
        *report = dup(json_out ? dump(canon_json(r, names)) : canon_text(r, names));
        return DOT_OK;
      }
    }
    throw ArgError{"unknown canonical form"};
  });
}

dot_status dot_narrow(const dot_deriv* d, const char* var, const dot_deriv* sub, dot_deriv** out) {
  return guard([&] {
    need(d, "derivation"), need(sub, "sub"), need(out, "out");
    dot::Var x = var_named(d->d.conclusion.ctx, var);
    *out = wrap(dot::narrow(d->d, x, sub->d.conclusion.lhs, sub->d));
    return DOT_OK;
  });
}

dot_status dot_subst(const dot_deriv* d, const char* var, const dot_deriv* arg, dot_deriv** out) {
  return guard([&] {
    need(d, "derivation"), need(arg, "arg"), need(out, "out");
    dot::Var x = var_named(d->d.conclusion.ctx, var);
    *out = wrap(dot::subst_deriv(d->d, x, arg->d));
    return DOT_OK;
  });
}

dot_status dot_step(const dot_term* t, int json_out, dot_step_kind* kind, char** report) {
  return guard([&] {
    need(t, "term"), need(kind, "kind"), need(report, "report");
    dot::StepResult r = dot::step(t->t);
    dot::Names names;
    json j;
    std::string text;
    switch (r.kind) {
      case dot::StepResult::Kind::Stepped:
        *kind = DOT_STEPPED;
        j = {{"result", "stepped"}, {"rule", r.rule}, {"next", dot::print(r.next, names)}};
        text = r.rule + " " + dot::print(r.next, names) + "\n";
        break;
      case dot::StepResult::Kind::Answer:
        *kind = DOT_ANSWER;
        j = {{"result", "answer"}};
        text = "answer\n";
        break;
      case dot::StepResult::Kind::Stuck:
        *kind = DOT_STUCK;
        j = {{"result", "stuck"}, {"reason", dot::stuck_reason_text(r.reason)}, {"focus", dot::print(r.focus, names)}};
        text = std::string("stuck: ") + dot::stuck_reason_text(r.reason) + " at " + dot::print(r.focus, names) + "\n";
        break;
    }
    *report = dup(json_out ? dump(j) : text);
    return DOT_OK;
  });
}

dot_status dot_run(const dot_term* t, size_t fuel, int json_out, dot_outcome* outcome, char** report) {
  return guard([&] {
    need(t, "term"), need(outcome, "outcome"), need(report, "report");
    dot::Trace tr = dot::run(t->t, fuel);
    switch (tr.outcome) {
      case dot::Outcome::Answer: *outcome = DOT_OUTCOME_ANSWER; break;
      case dot::Outcome::Stuck: *outcome = DOT_OUTCOME_STUCK; break;
      case dot::Outcome::FuelExhausted: *outcome = DOT_OUTCOME_FUEL; break;
    }
    *report = dup(json_out ? dot::trace_json(tr) : dot::trace_text(tr));
    return DOT_OK;
  });
}

dot_status dot_soundness(const dot_deriv* d, size_t fuel, int depth, int json_out, int* pass, char** report) {
  return guard([&] {
    need(d, "derivation"), need(pass, "pass"), need(report, "report");
    if (depth < 0) throw ArgError{"depth must be non-negative"};
    dot::SearchConfig cfg;
    cfg.max_depth = depth;
    dot::SoundnessResult r = dot::check_soundness(d->d, fuel, cfg);
    std::size_t steps = r.trace.rules.size();
    if (json_out) {
      json j{{"pass", r.pass}, {"steps", steps}, {"outcome", dot::outcome_name(r.trace.outcome)},
             {"trace", json::parse(dot::trace_json(r.trace))}};
      if (!r.pass) j["failure"] = r.failure;
      if (r.underived) j["underived"] = *r.underived;
      *report = dup(dump(j));
    } else {
      std::string n = std::to_string(steps) + (steps == 1 ? " step" : " steps");
      std::string out = r.pass ? "PASS " + n + "\n" : "FAIL " + r.failure + "\n";
      *report = dup(out + dot::trace_text(r.trace));
    }
    *pass = r.pass;
    return DOT_OK;
  });
}

dot_status dot_demo_bad_bounds(int depth, int json_out, char** report) {
  return guard([&] {
    need(report, "report");
    if (depth < 0) throw ArgError{"depth must be non-negative"};
    dot::SearchConfig cfg;
    cfg.max_depth = depth;
    dot::BadBoundsReport r = dot::bad_bounds_report(cfg);
    if (!json_out) {
      *report = dup(dot::bad_bounds_text(r));
      return DOT_OK;
    }
    dot::Names names;
    std::vector<std::string> rules;
    dot::collect_rules(r.derivation, rules);
    std::set<std::string> distinct(rules.begin(), rules.end());
    json j{{"term", dot::print(r.term, names)},
           {"type", dot::print(r.derivation.conclusion.type, names)},
           {"valid", r.valid},
           {"nodes", dot::node_count(r.derivation)},
           {"height", dot::height(r.derivation)},
           {"rules", distinct},
           {"body_context", dot::print(r.body_context, names)},
           {"offender", names.name_of(r.offender)},
           {"offender_reason", r.offender_reason},
           {"body", dot::print(r.body, names)},
           {"trace", json::parse(dot::trace_json(r.body_trace))},
           {"inert_search_found", r.inert_search_found},
           {"bad_bounds_search_found", r.bad_bounds_search_found},
           {"bad_bounds_search_depth", r.bad_bounds_search_depth}};
    *report = dup(dump(j));
    return DOT_OK;
  });
}

}  // extern "C"
