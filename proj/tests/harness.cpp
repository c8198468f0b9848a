// SPDX-License-Identifier: Apache-2.0

#include "harness.hpp"

#include <functional>

#include "core/canonical.hpp"
#include "core/derivation_io.hpp"
#include "core/derive.hpp"
#include "core/evaluator.hpp"
#include "core/inert.hpp"
#include "core/rules.hpp"
#include "core/surface.hpp"
#include "core/transform.hpp"
#include "gen.hpp"

namespace dot::harness {

namespace {

using K = JudgmentKind;

// Attempts allowed per wanted instance before giving up.
constexpr std::size_t kAttemptsPer = 200;

std::string first_error(const Derivation& d) {
  auto errs = validate(d);
  if (errs.empty()) return "";
  std::string path;
  for (auto i : errs[0].path) path += "." + std::to_string(i);
  return std::string(reason_name(errs[0].reason)) + " at " + (path.empty() ? "root" : path) + ": " +
         errs[0].detail;
}

void count_rules(Tally& t, const Derivation& d) {
  std::vector<std::string> rs;
  collect_rules(d, rs);
  for (const auto& r : rs) ++t.rules[r];
}

std::string show(const Judgment& j) {
  Names n;
  return print(j, n);
}

bool same_conclusion(const Judgment& a, const Judgment& b) { return same_claim(a, b) && alpha_eq(a.ctx, b.ctx); }

// Runs body, turning a thrown Error into a recorded failure.
void guarded(Tally& t, const std::function<void()>& body) {
  try {
    body();
  } catch (const Error& e) {
    t.fail(std::string(error_code_name(e.code())) + ": " + e.what());
  }
}

Context some_context(gen::Rng& r) { return gen::inert_context(r, 1 + static_cast<int>(r.below(4))); }

// A general derivation: mostly typings, some subtypings.
std::optional<Derivation> general(gen::Rng& r, const Context& g, int budget) {
  if (r.chance(0.8)) return gen::typing(r, g, budget);
  Type s = gen::wf_type(r, g, 2);
  return r.chance(0.5) ? gen::sub_up(r, g, s, budget) : gen::sub_down(r, g, s, budget);
}

// Accepts generator output that validates and fits the height budget.
bool admissible(Tally& t, const std::optional<Derivation>& d, int budget) {
  if (!d) return false;
  if (height(*d) > static_cast<std::size_t>(budget)) return false;
  if (!is_valid(*d)) {
    t.fail("generator produced an invalid derivation: " + first_error(*d));
    return false;
  }
  t.max_height = std::max(t.max_height, height(*d));
  return true;
}

template <class Shape>
std::optional<Var> var_of_shape(gen::Rng& r, const Context& g) {
  std::vector<Var> vs;
  for (const auto& b : g.bindings())
    if (b.type.is<Shape>()) vs.push_back(b.var);
  if (vs.empty()) return std::nullopt;
  return r.pick(vs);
}

}  // namespace

void Tally::fail(const std::string& why) {
  if (failures++ == 0) first_failure = why;
}

Tally general_to_tight_property(std::uint64_t seed, std::size_t n, int budget) {
  gen::Rng r(seed);
  Tally t;
  while (t.instances < n && t.attempts < n * kAttemptsPer) {
    ++t.attempts;
    Context g = some_context(r);
    auto d = general(r, g, budget);
    if (!admissible(t, d, budget)) continue;
    ++t.instances;
    guarded(t, [&] {
      Derivation out = general_to_tight(g, *d);
      std::string e = first_error(out);
      if (!e.empty()) return t.fail("tight output invalid: " + e);
      if (out.conclusion.kind != K::TypTight && out.conclusion.kind != K::SubtypTight)
        return t.fail("output is not a tight judgment");
      if (!same_conclusion(out.conclusion, d->conclusion))
        return t.fail("conclusion changed: " + show(d->conclusion));
      count_rules(t, out);
    });
  }
  return t;
}

Tally tight_to_invertible_property(std::uint64_t seed, std::size_t n, int budget) {
  gen::Rng r(seed);
  Tally t;
  while (t.instances < n && t.attempts < n * kAttemptsPer) {
    ++t.attempts;
    Context g = some_context(r);
    auto d = gen::var_or_value_typing(r, g, budget);
    if (!admissible(t, d, budget)) continue;
    ++t.instances;
    guarded(t, [&] {
      Derivation tight = general_to_tight(g, *d);
      Derivation inv = tight_to_invertible(g, tight);
      std::string e = first_error(inv);
      if (!e.empty()) return t.fail("invertible output invalid: " + e);
      if (inv.conclusion.kind != K::TypInvertible) return t.fail("output is not an invertible judgment");
      if (!same_conclusion(inv.conclusion, d->conclusion))
        return t.fail("conclusion changed: " + show(d->conclusion));
      count_rules(t, inv);
    });
  }
  return t;
}

Tally sel_premise_property(std::uint64_t seed, std::size_t n, int budget) {
  gen::Rng r(seed);
  Tally t;
  while (t.instances < n && t.attempts < n * kAttemptsPer) {
    ++t.attempts;
    Context g = some_context(r);
    auto x = var_of_shape<types::Rec>(r, g);
    if (!x) continue;
    auto d = gen::var_typing(r, g, *x, budget);
    if (!d || !d->conclusion.type.is<types::Typ>()) continue;
    if (!admissible(t, d, budget)) continue;
    ++t.instances;
    guarded(t, [&] {
      Derivation tight = general_to_tight(g, *d);
      SelPremise p = sel_premise(g, tight);
      for (const Derivation* part : {&p.precise, &p.lower_leg, &p.upper_leg}) {
        std::string e = first_error(*part);
        if (!e.empty()) return t.fail("sel_premise part invalid: " + e);
      }
      const auto* want = d->conclusion.type.as<types::Typ>();
      const auto* got = p.precise.conclusion.type.as<types::Typ>();
      if (p.precise.conclusion.kind != K::TypPrecise || !got || got->label != want->label ||
          !alpha_eq(got->lower, p.bound) || !alpha_eq(got->upper, p.bound))
        return t.fail("precise typing is not at {A: T..T}");
      Derivation chain = trans(p.lower_leg, p.upper_leg);
      std::string e = first_error(chain);
      if (!e.empty()) return t.fail("recomposed chain invalid: " + e);
      if (chain.rule != "Trans-#" && !(is_refl(p.lower_leg) || is_refl(p.upper_leg)))
        return t.fail("legs did not recompose through Trans-#");
      if (!alpha_eq(chain.conclusion.lhs, want->lower) || !alpha_eq(chain.conclusion.rhs, want->upper))
        return t.fail("recomposed chain has the wrong ends");
      count_rules(t, chain);
    });
  }
  return t;
}

const char* canon_name(Canon c) {
  switch (c) {
    case Canon::FunVar: return "fun-var";
    case Canon::FunVal: return "fun-val";
    case Canon::ObjVar: return "obj-var";
    case Canon::ObjVal: return "obj-val";
  }
  return "?";
}

namespace {

std::optional<Derivation> canon_input(Canon c, gen::Rng& r, const Context& g, int budget) {
  std::optional<Derivation> d;
  switch (c) {
    case Canon::FunVar: {
      auto x = r.chance(0.7) ? var_of_shape<types::All>(r, g) : var_of_shape<types::Rec>(r, g);
      if (x) d = gen::var_typing(r, g, *x, budget);
      if (d && !d->conclusion.type.is<types::All>()) d.reset();
      break;
    }
    case Canon::FunVal:
      d = gen::lambda_typing(r, g, budget);
      if (d && r.chance(0.5)) {
        // Widen to another function type now and then.
        auto s = gen::sub_up(r, g, d->conclusion.type, 3);
        if (s && s->conclusion.rhs.is<types::All>()) d = subsume(*d, *s);
      }
      break;
    case Canon::ObjVar: {
      auto x = var_of_shape<types::Rec>(r, g);
      if (x) d = gen::var_typing(r, g, *x, budget);
      if (d && !d->conclusion.type.is<types::Fld>()) d.reset();
      break;
    }
    case Canon::ObjVal:
      d = gen::object_typing(r, g, budget);
      if (d && !d->conclusion.type.is<types::Rec>()) d.reset();
      break;
  }
  return d;
}

void check_parts(Tally& t, std::initializer_list<const Derivation*> parts) {
  for (const Derivation* p : parts) {
    if (p->rule.empty()) continue;
    std::string e = first_error(*p);
    if (!e.empty()) return t.fail("embedded derivation invalid: " + e);
  }
}

}  // namespace

Tally canonical_property(Canon c, std::uint64_t seed, std::size_t n, int budget) {
  gen::Rng r(seed);
  Tally t;
  while (t.instances < n && t.attempts < n * kAttemptsPer) {
    ++t.attempts;
    Context g = some_context(r);
    auto d = canon_input(c, r, g, budget);
    if (!admissible(t, d, budget + 2)) continue;
    ++t.instances;
    std::size_t before = t.failures;
    guarded(t, [&] {
      if (c == Canon::FunVar || c == Canon::FunVal) {
        CanonicalFunResult res = c == Canon::FunVar ? canon_fun_var(g, *d) : canon_fun_val(g, *d);
        check_parts(t, {&res.precise, &res.domain_sub, &res.codomain_sub, &res.body_typing});
        if (t.failures != before) return;
        if (c == Canon::FunVar) {
          Var x = d->conclusion.term.as<terms::Ref>()->var;
          if (res.stages.back() != "Induction on ⊢!" || res.precise.rule != "Var!" ||
              !alpha_eq(res.context_type, *g.lookup(x)))
            return t.fail("final step does not yield Γ(x) = all(...)");
        } else {
          if (res.precise.rule != "All-I!" || !res.lambda_param || res.body_typing.rule.empty())
            return t.fail("no lambda inversion");
          if (!alpha_eq(res.body_typing.conclusion.type, res.codomain_sub.conclusion.rhs))
            return t.fail("body typing does not reach the codomain");
        }
        count_rules(t, res.precise);
      } else {
        CanonicalObjResult res = c == Canon::ObjVar ? canon_obj_var(g, *d) : canon_obj_val(g, *d);
        check_parts(t, {&res.precise, &res.sub, &res.field_typing});
        if (t.failures != before) return;
        if (c == Canon::ObjVar) {
          Var x = d->conclusion.term.as<terms::Ref>()->var;
          if (res.stages.back() != "Induction on ⊢!" || !alpha_eq(res.context_type, *g.lookup(x)))
            return t.fail("final step does not yield Γ(x) = mu(...)");
        } else {
          if (res.stages.back() != "Inversion of {}-I!" || res.precise.rule != "{}-I!" || !res.self)
            return t.fail("no object inversion");
          if (!alpha_eq(res.field_typing.conclusion.term, res.field_term))
            return t.fail("field typing is about another term");
        }
        count_rules(t, res.precise);
      }
    });
  }
  return t;
}

Tally value_inert_property(std::uint64_t seed, std::size_t n, int budget) {
  gen::Rng r(seed);
  Tally t;
  while (t.instances < n && t.attempts < n * kAttemptsPer) {
    ++t.attempts;
    Context g = some_context(r);
    auto d = r.chance(0.5) ? gen::lambda_typing(r, g, budget) : gen::object_typing(r, g, budget);
    if (!admissible(t, d, budget + 2)) continue;
    ++t.instances;
    guarded(t, [&] {
      ValuePrecise p = value_precise(g, *d);
      std::string e = first_error(p.precise);
      if (!e.empty()) return t.fail("precise typing invalid: " + e);
      InertReport rep = is_inert_type(p.type);
      if (!rep.verdict) {
        Names names;
        return t.fail(std::string("not inert: ") + inert_reason_name(rep.first_violation->reason) + " in " +
                      print(p.type, names));
      }
      count_rules(t, p.precise);
    });
  }
  return t;
}

Tally evaluator_property(std::uint64_t seed, std::size_t n) {
  gen::Rng r(seed);
  Tally t;
  auto check_state = [&](const Term& s) {
    ++t.instances;
    auto matches = matching_rules(s);
    if (matches.size() > 1) return t.fail("several rules match: " + print(s));
    StepResult st = step(s);
    bool answer = is_answer(s);
    if (answer != (st.kind == StepResult::Kind::Answer)) return t.fail("is_answer disagrees with step: " + print(s));
    auto dec = decompose(s);
    if (answer != !dec) return t.fail("decompose disagrees with is_answer: " + print(s));
    if (dec && !alpha_eq(plug(dec->ctx, dec->redex), s)) return t.fail("decomposition does not recompose: " + print(s));
    if (st.kind == StepResult::Kind::Stepped) {
      if (matches.size() != 1 || (matches[0] != st.rule && st.rule != "Term"))
        return t.fail("stepped by " + st.rule + " without a unique match: " + print(s));
      ++t.rules[st.rule];
    } else if (st.kind == StepResult::Kind::Stuck) {
      ++t.rules[std::string("stuck: ") + stuck_reason_text(st.reason)];
    } else {
      ++t.rules["answer"];
    }
  };
  while (t.instances < n) {
    ++t.attempts;
    std::vector<Var> scope;
    Term s = gen::any_term(r, scope, 1 + static_cast<int>(r.below(5)));
    Trace tr = run(s, 8);
    for (const auto& state : tr.states) {
      check_state(state);
      if (t.instances >= n) break;
    }
  }
  return t;
}

Tally round_trip_property(std::uint64_t seed, std::size_t n) {
  gen::Rng r(seed);
  Tally t;
  while (t.instances < n) {
    ++t.attempts;
    ++t.instances;
    std::vector<Var> scope;
    bool as_type = r.chance(0.5);
    Names names;
    Scope sc;
    try {
      if (as_type) {
        Type ty = gen::any_type(r, scope, 1 + static_cast<int>(r.below(5)));
        std::string text = print(ty, names);
        Type back = parse_type(text, sc);
        for (const auto& v : free_vars(ty)) ty = subst(ty, v, sc.free(names.name_of(v)));
        if (!alpha_eq(ty, back)) t.fail("type changed: " + text);
        else if (print(back) != print(ty)) t.fail("printing not stable: " + text);
      } else {
        Term tm = gen::any_term(r, scope, 1 + static_cast<int>(r.below(5)));
        std::string text = print(tm, names);
        Term back = parse_term(text, sc);
        for (const auto& v : free_vars(tm)) tm = subst(tm, v, sc.free(names.name_of(v)));
        if (!alpha_eq(tm, back)) t.fail("term changed: " + text);
        else if (print(back) != print(tm)) t.fail("printing not stable: " + text);
      }
    } catch (const Error& e) {
      t.fail(std::string("reparse failed: ") + e.what());
    }
  }
  return t;
}

}  // namespace dot::harness
