// SPDX-License-Identifier: Apache-2.0

#include <optional>

#include "core/rules.hpp"
#include "core/surface.hpp"

namespace dot {

namespace {

using R = ValidationReason;

bool complete(const Judgment& j) {
  if (is_subtyping(j.kind)) return j.lhs && j.rhs;
  if (j.kind == JudgmentKind::Defs) return j.defs && j.type;
  return j.term && j.type;
}

const Var* subject_var(const Judgment& j) {
  if (auto r = j.term.as<terms::Ref>()) return &r->var;
  return nullptr;
}

const Value* subject_value(const Judgment& j) {
  if (auto v = j.term.as<terms::Val>()) return &v->value;
  return nullptr;
}

bool disjoint(const VarSet& a, const Var& y) { return a.count(y) == 0; }

class Validator {
 public:
  std::vector<ValidationError> errors;

  void walk(const Derivation& d) {
    check(d);
    for (std::size_t i = 0; i < d.premises.size(); ++i) {
      path_.push_back(i);
      walk(d.premises[i]);
      path_.pop_back();
    }
  }

 private:
  void report(R reason, std::string detail) {
    errors.push_back(ValidationError{path_, reason, std::move(detail)});
  }

  // Records a failure when cond is false; returns cond.
  bool need(bool cond, R reason, const char* detail) {
    if (!cond) report(reason, detail);
    return cond;
  }

  void check(const Derivation& d) {
    const Judgment& c = d.conclusion;
    if (!complete(c)) {
      report(R::ShapeMismatch, "judgment is missing fields for its kind");
      return;
    }
    if (auto issue = context_issue(c.ctx)) report(R::ContextMismatch, *issue);
    if ((c.kind == JudgmentKind::TypPrecise || c.kind == JudgmentKind::TypInvertible) &&
        !is_var(c.term) && !is_value(c.term))
      report(R::ShapeMismatch, std::string(kind_name(c.kind)) +
                                   " subject must be a variable or a value");

    const RuleSchema* s = find_rule(d.rule);
    if (!s) {
      report(R::UnknownRule, "no rule named '" + d.rule + "'");
      return;
    }
    if (s->system != c.kind) {
      report(R::SystemMismatch, "rule " + s->name + " concludes " + kind_name(s->system) +
                                    ", node is " + kind_name(c.kind));
      return;
    }
    if (d.premises.size() != s->premises.size()) {
      report(R::ShapeMismatch, "rule " + s->name + " takes " + std::to_string(s->premises.size()) +
                                   " premises, node has " + std::to_string(d.premises.size()));
      return;
    }
    bool ok = true;
    for (std::size_t i = 0; i < d.premises.size(); ++i) {
      const Judgment& pj = d.premises[i].conclusion;
      if (pj.kind != s->premises[i].kind) {
        report(R::ShapeMismatch, "premise " + std::to_string(i) + " must be " +
                                     kind_name(s->premises[i].kind) + ", found " +
                                     kind_name(pj.kind));
        ok = false;
      } else if (!complete(pj)) {
        ok = false;  // reported at the premise itself
      } else if (!s->premises[i].extends && !alpha_eq(pj.ctx, c.ctx)) {
        report(R::ContextMismatch, "premise " + std::to_string(i) + " context differs");
        ok = false;
      }
    }
    if (!ok) return;
    if (s->subject == SubjectForm::Var && !is_var(c.term)) {
      report(R::ShapeMismatch, "rule " + s->name + " needs a variable subject");
      return;
    }
    if (s->subject == SubjectForm::Value && !is_value(c.term)) {
      report(R::ShapeMismatch, "rule " + s->name + " needs a value subject");
      return;
    }
    check_shape(*s, d);
  }

  // The binding a context-extending premise adds, if its context is the
  // conclusion context plus exactly one binding.
  std::optional<Binding> extension(const Derivation& d, std::size_t i) {
    const Context& g = d.conclusion.ctx;
    const Context& h = d.premises[i].conclusion.ctx;
    bool ok = h.size() == g.size() + 1;
    for (std::size_t k = 0; ok && k < g.size(); ++k) {
      ok = g.bindings()[k].var == h.bindings()[k].var &&
           alpha_eq(g.bindings()[k].type, h.bindings()[k].type);
    }
    if (!ok) {
      report(R::ContextMismatch,
             "premise " + std::to_string(i) + " context must extend the conclusion context by one binding");
      return std::nullopt;
    }
    if (g.binds(h.bindings().back().var)) {
      report(R::SideConditionFailed, "premise binder is already bound");
      return std::nullopt;
    }
    return h.bindings().back();
  }

  bool same_subject(const Judgment& a, const Judgment& b) {
    return need(alpha_eq(a.term, b.term), R::ShapeMismatch, "premise subject differs from the conclusion");
  }

  void check_shape(const RuleSchema& s, const Derivation& d) {
    const Judgment& c = d.conclusion;
    auto prem = [&](std::size_t i) -> const Judgment& { return d.premises[i].conclusion; };

    switch (s.shape) {
      case RuleShape::VarLookup: {
        const Type* t = c.ctx.lookup(*subject_var(c));
        if (!need(t != nullptr, R::SideConditionFailed, "variable is not bound in the context")) return;
        need(alpha_eq(*t, c.type), R::ShapeMismatch, "type differs from the context binding");
        return;
      }

      case RuleShape::AllIntro: {
        auto lam = subject_value(c)->as<values::Lambda>();
        auto all = c.type.as<types::All>();
        if (!need(lam && all, R::ShapeMismatch, "needs a lambda typed at a function type")) return;
        need(alpha_eq(lam->param_type, all->domain), R::ShapeMismatch,
             "parameter type differs from the domain");
        auto b = extension(d, 0);
        if (!b) return;
        const Var& y = b->var;
        need(alpha_eq(b->type, lam->param_type), R::ContextMismatch,
             "premise binding type differs from the parameter type");
        need(disjoint(free_vars(lam->param_type), y), R::SideConditionFailed, "x ∉ fv(T) fails");
        if (!need(disjoint(free_vars(c.term), y) && disjoint(free_vars(c.type), y),
                  R::SideConditionFailed, "premise binder occurs free in the conclusion"))
          return;
        need(alpha_eq(prem(0).term, subst(lam->body, lam->param, y)), R::ShapeMismatch,
             "premise term is not the lambda body");
        need(alpha_eq(prem(0).type, subst(all->codomain, all->param, y)), R::ShapeMismatch,
             "premise type is not the codomain");
        return;
      }

      case RuleShape::AllElim: {
        auto app = c.term.as<terms::App>();
        if (!need(app != nullptr, R::ShapeMismatch, "needs an application")) return;
        auto f = subject_var(prem(0));
        auto a = subject_var(prem(1));
        if (!need(f && *f == app->fun && a && *a == app->arg, R::ShapeMismatch,
                  "premise subjects must be the function and the argument"))
          return;
        auto all = prem(0).type.as<types::All>();
        if (!need(all != nullptr, R::ShapeMismatch, "function premise must have a function type"))
          return;
        need(alpha_eq(prem(1).type, all->domain), R::ShapeMismatch,
             "argument type differs from the domain");
        need(alpha_eq(c.type, subst(all->codomain, all->param, app->arg)), R::ShapeMismatch,
             "type is not the codomain with the argument substituted");
        return;
      }

      case RuleShape::NewIntro: {
        auto nu = subject_value(c)->as<values::Nu>();
        if (!need(nu && c.type.is<types::Rec>(), R::ShapeMismatch,
                  "needs an object typed at a recursive type"))
          return;
        need(alpha_eq(c.type, mk::mu(nu->self, nu->self_type)), R::ShapeMismatch,
             "type must be mu of the object's self type");
        auto b = extension(d, 0);
        if (!b) return;
        const Var& y = b->var;
        if (!need(disjoint(free_vars(c.term), y) && disjoint(free_vars(c.type), y),
                  R::SideConditionFailed, "premise binder occurs free in the conclusion"))
          return;
        Type self_t = subst(nu->self_type, nu->self, y);
        need(alpha_eq(b->type, self_t), R::ContextMismatch,
             "premise binding type differs from the self type");
        need(alpha_eq(prem(0).defs, subst(nu->defs, nu->self, y)), R::ShapeMismatch,
             "premise definitions differ from the object's");
        need(alpha_eq(prem(0).type, self_t), R::ShapeMismatch,
             "premise type differs from the self type");
        return;
      }

      case RuleShape::FldElim: {
        auto sel = c.term.as<terms::Sel>();
        if (!need(sel != nullptr, R::ShapeMismatch, "needs a field selection")) return;
        auto x = subject_var(prem(0));
        auto f = prem(0).type.as<types::Fld>();
        if (!need(x && *x == sel->receiver, R::ShapeMismatch, "premise subject must be the receiver"))
          return;
        if (!need(f && f->label == sel->label, R::ShapeMismatch,
                  "premise must give the receiver the selected field"))
          return;
        need(alpha_eq(f->type, c.type), R::ShapeMismatch, "type differs from the field type");
        return;
      }

      case RuleShape::Let: {
        auto let = c.term.as<terms::Let>();
        if (!need(let != nullptr, R::ShapeMismatch, "needs a let")) return;
        need(alpha_eq(prem(0).term, let->rhs), R::ShapeMismatch,
             "first premise subject must be the bound term");
        auto b = extension(d, 1);
        if (!b) return;
        const Var& y = b->var;
        need(disjoint(free_vars(c.type), y), R::SideConditionFailed, "x ∉ fv(U) fails");
        if (!need(disjoint(free_vars(c.term), y), R::SideConditionFailed,
                  "premise binder occurs free in the conclusion"))
          return;
        need(alpha_eq(b->type, prem(0).type), R::ContextMismatch,
             "premise binding type differs from the bound term's type");
        need(alpha_eq(prem(1).term, subst(let->body, let->bound, y)), R::ShapeMismatch,
             "second premise subject must be the body");
        need(alpha_eq(prem(1).type, c.type), R::ShapeMismatch, "body type differs");
        return;
      }

      case RuleShape::RecIntro: {
        auto rec = c.type.as<types::Rec>();
        if (!need(rec != nullptr, R::ShapeMismatch, "needs a recursive type")) return;
        if (!same_subject(prem(0), c)) return;
        need(alpha_eq(prem(0).type, subst(rec->body, rec->self, *subject_var(c))),
             R::ShapeMismatch, "premise type is not the opened recursive type");
        return;
      }

      case RuleShape::RecElim: {
        if (!same_subject(prem(0), c)) return;
        auto rec = prem(0).type.as<types::Rec>();
        if (!need(rec != nullptr, R::ShapeMismatch, "premise needs a recursive type")) return;
        need(alpha_eq(c.type, subst(rec->body, rec->self, *subject_var(c))), R::ShapeMismatch,
             "type is not the opened recursive type");
        return;
      }

      case RuleShape::AndIntro: {
        auto a = c.type.as<types::And>();
        if (!need(a != nullptr, R::ShapeMismatch, "needs an intersection type")) return;
        if (!same_subject(prem(0), c) || !same_subject(prem(1), c)) return;
        need(alpha_eq(prem(0).type, a->left), R::ShapeMismatch, "left premise type differs");
        need(alpha_eq(prem(1).type, a->right), R::ShapeMismatch, "right premise type differs");
        return;
      }

      case RuleShape::AndElim1:
      case RuleShape::AndElim2: {
        if (!same_subject(prem(0), c)) return;
        auto a = prem(0).type.as<types::And>();
        if (!need(a != nullptr, R::ShapeMismatch, "premise needs an intersection type")) return;
        const Type& part = s.shape == RuleShape::AndElim1 ? a->left : a->right;
        need(alpha_eq(c.type, part), R::ShapeMismatch, "type is not the selected conjunct");
        return;
      }

      case RuleShape::Sub: {
        if (!same_subject(prem(0), c)) return;
        need(alpha_eq(prem(1).lhs, prem(0).type), R::ShapeMismatch,
             "subtyping premise must start at the premise type");
        need(alpha_eq(prem(1).rhs, c.type), R::ShapeMismatch,
             "subtyping premise must end at the conclusion type");
        return;
      }

      case RuleShape::Top:
        need(c.rhs.is<types::Top>(), R::ShapeMismatch, "right side must be Top");
        return;
      case RuleShape::Bot:
        need(c.lhs.is<types::Bot>(), R::ShapeMismatch, "left side must be Bot");
        return;
      case RuleShape::Refl:
        need(alpha_eq(c.lhs, c.rhs), R::ShapeMismatch, "sides differ");
        return;

      case RuleShape::Trans:
        need(alpha_eq(prem(0).lhs, c.lhs), R::ShapeMismatch, "first premise must start at the left side");
        need(alpha_eq(prem(1).rhs, c.rhs), R::ShapeMismatch, "second premise must end at the right side");
        need(alpha_eq(prem(0).rhs, prem(1).lhs), R::ShapeMismatch, "premises do not meet");
        return;

      case RuleShape::FldFld: {
        auto l = c.lhs.as<types::Fld>();
        auto r = c.rhs.as<types::Fld>();
        if (!need(l && r && l->label == r->label, R::ShapeMismatch,
                  "needs field declarations with the same label"))
          return;
        need(alpha_eq(prem(0).lhs, l->type) && alpha_eq(prem(0).rhs, r->type), R::ShapeMismatch,
             "premise must relate the field types");
        return;
      }

      case RuleShape::And1Sub:
      case RuleShape::And2Sub: {
        auto a = c.lhs.as<types::And>();
        if (!need(a != nullptr, R::ShapeMismatch, "left side must be an intersection")) return;
        const Type& part = s.shape == RuleShape::And1Sub ? a->left : a->right;
        need(alpha_eq(c.rhs, part), R::ShapeMismatch, "right side is not the selected conjunct");
        return;
      }

      case RuleShape::SubAnd: {
        auto a = c.rhs.as<types::And>();
        if (!need(a != nullptr, R::ShapeMismatch, "right side must be an intersection")) return;
        need(alpha_eq(prem(0).lhs, c.lhs) && alpha_eq(prem(0).rhs, a->left), R::ShapeMismatch,
             "left premise must relate the left side to the left conjunct");
        need(alpha_eq(prem(1).lhs, c.lhs) && alpha_eq(prem(1).rhs, a->right), R::ShapeMismatch,
             "right premise must relate the left side to the right conjunct");
        return;
      }

      case RuleShape::SubSel:
      case RuleShape::SelSub:
      case RuleShape::SubSelTight:
      case RuleShape::SelSubTight: {
        bool into = s.shape == RuleShape::SubSel || s.shape == RuleShape::SubSelTight;
        bool tight = s.shape == RuleShape::SubSelTight || s.shape == RuleShape::SelSubTight;
        auto sel = (into ? c.rhs : c.lhs).as<types::Sel>();
        if (!need(sel != nullptr, R::ShapeMismatch, into ? "right side must be a type selection"
                                                          : "left side must be a type selection"))
          return;
        auto x = subject_var(prem(0));
        auto dec = prem(0).type.as<types::Typ>();
        if (!need(x && *x == sel->receiver, R::ShapeMismatch, "premise subject must be the receiver"))
          return;
        if (!need(dec && dec->label == sel->label, R::ShapeMismatch,
                  "premise must declare the selected type member"))
          return;
        if (tight &&
            !need(alpha_eq(dec->lower, dec->upper), R::SideConditionFailed,
                  "precise premise bounds must be equal"))
          return;
        if (into)
          need(alpha_eq(c.lhs, dec->lower), R::ShapeMismatch, "left side is not the lower bound");
        else
          need(alpha_eq(c.rhs, dec->upper), R::ShapeMismatch, "right side is not the upper bound");
        return;
      }

      case RuleShape::TypTyp: {
        auto l = c.lhs.as<types::Typ>();
        auto r = c.rhs.as<types::Typ>();
        if (!need(l && r && l->label == r->label, R::ShapeMismatch,
                  "needs type declarations with the same label"))
          return;
        need(alpha_eq(prem(0).lhs, r->lower) && alpha_eq(prem(0).rhs, l->lower), R::ShapeMismatch,
             "first premise must relate the lower bounds contravariantly");
        need(alpha_eq(prem(1).lhs, l->upper) && alpha_eq(prem(1).rhs, r->upper), R::ShapeMismatch,
             "second premise must relate the upper bounds");
        return;
      }

      case RuleShape::AllAll: {
        auto l = c.lhs.as<types::All>();
        auto r = c.rhs.as<types::All>();
        if (!need(l && r, R::ShapeMismatch, "needs function types on both sides")) return;
        need(alpha_eq(prem(0).lhs, r->domain) && alpha_eq(prem(0).rhs, l->domain),
             R::ShapeMismatch, "first premise must relate the domains contravariantly");
        auto b = extension(d, 1);
        if (!b) return;
        const Var& y = b->var;
        if (!need(disjoint(free_vars(c.lhs), y) && disjoint(free_vars(c.rhs), y),
                  R::SideConditionFailed, "premise binder occurs free in the conclusion"))
          return;
        need(alpha_eq(b->type, r->domain), R::ContextMismatch,
             "premise binding type must be the smaller domain");
        need(alpha_eq(prem(1).lhs, subst(l->codomain, l->param, y)) &&
                 alpha_eq(prem(1).rhs, subst(r->codomain, r->param, y)),
             R::ShapeMismatch, "second premise must relate the codomains");
        return;
      }

      case RuleShape::DefTrm: {
        auto f = c.defs.as<defs::Field>();
        auto t = c.type.as<types::Fld>();
        if (!need(f && t && f->label == t->label, R::ShapeMismatch,
                  "needs a field definition typed at a field declaration"))
          return;
        need(alpha_eq(prem(0).term, f->rhs), R::ShapeMismatch, "premise subject must be the field body");
        need(alpha_eq(prem(0).type, t->type), R::ShapeMismatch, "premise type differs");
        return;
      }

      case RuleShape::DefTyp: {
        auto a = c.defs.as<defs::Alias>();
        auto t = c.type.as<types::Typ>();
        if (!need(a && t && a->label == t->label, R::ShapeMismatch,
                  "needs a type definition typed at a type declaration"))
          return;
        need(alpha_eq(t->lower, a->alias) && alpha_eq(t->upper, a->alias), R::ShapeMismatch,
             "bounds must both equal the alias");
        return;
      }

      case RuleShape::AndDef: {
        auto dd = c.defs.as<defs::And>();
        auto tt = c.type.as<types::And>();
        if (!need(dd && tt, R::ShapeMismatch, "needs aggregate definitions at an intersection"))
          return;
        need(alpha_eq(prem(0).defs, dd->left) && alpha_eq(prem(0).type, tt->left),
             R::ShapeMismatch, "left premise differs");
        need(alpha_eq(prem(1).defs, dd->right) && alpha_eq(prem(1).type, tt->right),
             R::ShapeMismatch, "right premise differs");
        auto l = def_labels(dd->left);
        auto r = def_labels(dd->right);
        bool disjoint_labels = true;
        for (const auto& a : l)
          for (const auto& b : r) disjoint_labels = disjoint_labels && a != b;
        need(disjoint_labels, R::SideConditionFailed, "dom(d1), dom(d2) not disjoint");
        return;
      }

      case RuleShape::Lift:
        if (!same_subject(prem(0), c)) return;
        need(alpha_eq(prem(0).type, c.type), R::ShapeMismatch, "type differs from the precise type");
        return;

      case RuleShape::InvFld: {
        if (!same_subject(prem(0), c)) return;
        auto from = prem(0).type.as<types::Fld>();
        auto to = c.type.as<types::Fld>();
        if (!need(from && to && from->label == to->label, R::ShapeMismatch,
                  "needs field declarations with the same label"))
          return;
        need(alpha_eq(prem(1).lhs, from->type) && alpha_eq(prem(1).rhs, to->type),
             R::ShapeMismatch, "subtyping premise must relate the field types");
        return;
      }

      case RuleShape::InvTyp: {
        if (!same_subject(prem(0), c)) return;
        auto from = prem(0).type.as<types::Typ>();
        auto to = c.type.as<types::Typ>();
        if (!need(from && to && from->label == to->label, R::ShapeMismatch,
                  "needs type declarations with the same label"))
          return;
        need(alpha_eq(prem(1).lhs, to->lower) && alpha_eq(prem(1).rhs, from->lower),
             R::ShapeMismatch, "lower bound premise differs");
        need(alpha_eq(prem(2).lhs, from->upper) && alpha_eq(prem(2).rhs, to->upper),
             R::ShapeMismatch, "upper bound premise differs");
        return;
      }

      case RuleShape::InvAll: {
        if (!same_subject(prem(0), c)) return;
        auto from = prem(0).type.as<types::All>();
        auto to = c.type.as<types::All>();
        if (!need(from && to, R::ShapeMismatch, "needs function types")) return;
        need(alpha_eq(prem(1).lhs, to->domain) && alpha_eq(prem(1).rhs, from->domain),
             R::ShapeMismatch, "domain premise differs");
        auto b = extension(d, 2);
        if (!b) return;
        const Var& y = b->var;
        if (!need(disjoint(free_vars(c.term), y) && disjoint(free_vars(c.type), y) &&
                      disjoint(free_vars(prem(0).type), y),
                  R::SideConditionFailed, "premise binder occurs free in the conclusion"))
          return;
        need(alpha_eq(b->type, to->domain), R::ContextMismatch,
             "premise binding type must be the new domain");
        need(alpha_eq(prem(2).lhs, subst(from->codomain, from->param, y)) &&
                 alpha_eq(prem(2).rhs, subst(to->codomain, to->param, y)),
             R::ShapeMismatch, "codomain premise differs");
        return;
      }

      case RuleShape::InvSel: {
        if (!same_subject(prem(0), c)) return;
        auto sel = c.type.as<types::Sel>();
        if (!need(sel != nullptr, R::ShapeMismatch, "needs a type selection")) return;
        auto y = subject_var(prem(1));
        auto dec = prem(1).type.as<types::Typ>();
        if (!need(y && *y == sel->receiver && dec && dec->label == sel->label, R::ShapeMismatch,
                  "precise premise must declare the selected member"))
          return;
        need(alpha_eq(dec->lower, dec->upper), R::SideConditionFailed,
             "precise premise bounds must be equal");
        need(alpha_eq(dec->lower, prem(0).type), R::ShapeMismatch,
             "member bound differs from the premise type");
        return;
      }

      case RuleShape::InvTop:
        if (!same_subject(prem(0), c)) return;
        need(c.type.is<types::Top>(), R::ShapeMismatch, "type must be Top");
        return;
    }
  }

  std::vector<std::size_t> path_;
};

}  // namespace

std::vector<ValidationError> validate(const Derivation& d) {
  Validator v;
  v.walk(d);
  return std::move(v.errors);
}

}  // namespace dot
