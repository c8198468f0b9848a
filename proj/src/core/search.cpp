// SPDX-License-Identifier: Apache-2.0

#include "core/search.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>

#include "core/derive.hpp"
#include "core/precise.hpp"

namespace dot {

const std::vector<std::string>& default_rule_order() {
  static const std::vector<std::string> order = {
      "Var",        "All-I",      "{}-I",       "Let",     "{}-E",    "All-E",   "Rec-E",
      "Rec-I",      "And-I",      "Sub",        "Refl",    "Top",     "Bot",     "And1-<:",
      "And2-<:",    "<:-And",     "Fld-<:-Fld", "Typ-<:-Typ", "All-<:-All", "Sel-<:", "<:-Sel",
      "Trans",
  };
  return order;
}

namespace {

using K = JudgmentKind;

// Cap on synthesized types per goal; keeps nested lets from multiplying.
constexpr std::size_t kMaxCandidates = 8;

struct Ctx {
  Context g;
  std::string key;
};

std::string binding_key(const Var& x, const Type& t) {
  return "$" + std::to_string(x.uid) + ":" + canonical_key(t) + ";";
}

Ctx make_ctx(const Context& g) {
  std::string k;
  for (const auto& b : g.bindings()) k += binding_key(b.var, b.type);
  return Ctx{g, k};
}

// Open subjects have no derivation: every free variable must be bound.
bool closed_under(const Context& g, const VarSet& fv) {
  if (context_issue(g)) return false;
  VarSet dom = g.domain();
  return std::all_of(fv.begin(), fv.end(), [&](const Var& v) { return dom.count(v) > 0; });
}

Ctx extend(const Ctx& c, const Var& y, const Type& t) {
  return Ctx{c.g.extended(y, t), c.key + binding_key(y, t)};
}

struct BudgetExhausted {};

using Found = std::optional<Derivation>;
using Candidates = std::vector<std::pair<Type, Derivation>>;

struct MemoEntry {
  int failed_upto = 0;  // nothing found with budget <= failed_upto
  Found found;
  int found_at = 0;     // budget the derivation was found with
};

bool fv_within(const Type& t, const Context& g) {
  for (const auto& v : free_vars(t))
    if (!g.binds(v)) return false;
  return true;
}

void type_parts(const Type& t, std::vector<Type>& out) {
  out.push_back(t);
  if (auto a = t.as<types::All>()) {
    type_parts(a->domain, out);
    type_parts(a->codomain, out);
  } else if (auto r = t.as<types::Rec>()) {
    type_parts(r->body, out);
  } else if (auto f = t.as<types::Fld>()) {
    type_parts(f->type, out);
  } else if (auto d = t.as<types::Typ>()) {
    type_parts(d->lower, out);
    type_parts(d->upper, out);
  } else if (auto n = t.as<types::And>()) {
    type_parts(n->left, out);
    type_parts(n->right, out);
  }
}

void term_types(const Term& t, std::vector<Type>& out);

void def_types(const Def& d, std::vector<Type>& out) {
  for (const auto& p : def_parts(d)) {
    if (auto f = p.as<defs::Field>()) term_types(f->rhs, out);
    if (auto a = p.as<defs::Alias>()) type_parts(a->alias, out);
  }
}

void term_types(const Term& t, std::vector<Type>& out) {
  if (auto v = t.as<terms::Val>()) {
    if (auto lam = v->value.as<values::Lambda>()) {
      type_parts(lam->param_type, out);
      term_types(lam->body, out);
    } else if (auto nu = v->value.as<values::Nu>()) {
      type_parts(mk::mu(nu->self, nu->self_type), out);
      def_types(nu->defs, out);
    }
  } else if (auto l = t.as<terms::Let>()) {
    term_types(l->rhs, out);
    term_types(l->body, out);
  }
}

void push_unique(std::vector<Type>& out, std::set<std::string>& seen, const Type& t) {
  if (seen.insert(canonical_key(t)).second) out.push_back(t);
}

class Searcher {
 public:
  Searcher(const SearchConfig& cfg, std::vector<Type> extras) : cfg_(cfg), extras_(std::move(extras)) {}

  std::size_t nodes() const { return nodes_; }

  Found check(const Ctx& c, const Term& t, const Type& target, int b) {
    if (b < 1) return std::nullopt;
    std::string key = "T" + c.key + "|" + canonical_key(t) + "|" + canonical_key(target);
    return memoized(key, b, [&] { return check_rules(c, t, target, b); });
  }

  Found sub(const Ctx& c, const Type& s, const Type& u, int b, bool allow_trans) {
    if (b < 1) return std::nullopt;
    std::string key = std::string(allow_trans ? "U" : "u") + c.key + "|" + canonical_key(s) + "|" +
                      canonical_key(u);
    return memoized(key, b, [&] { return sub_rules(c, s, u, b, allow_trans); });
  }

  const Candidates& synth(const Ctx& c, const Term& t, int b) {
    static const Candidates none;
    if (b < 1) return none;
    std::string key = c.key + "|" + canonical_key(t) + "|" + std::to_string(b);
    auto it = synth_memo_.find(key);
    if (it != synth_memo_.end()) return it->second;
    tick();
    Candidates out = synth_rules(c, t, b);
    return synth_memo_.emplace(key, std::move(out)).first->second;
  }

 private:
  bool enabled(const std::string& rule) const {
    return std::find(cfg_.rule_order.begin(), cfg_.rule_order.end(), rule) != cfg_.rule_order.end();
  }

  void tick() {
    if (++nodes_ > cfg_.max_nodes) throw BudgetExhausted{};
  }

  template <class F>
  Found memoized(const std::string& key, int b, F&& compute) {
    MemoEntry& e = memo_[key];
    if (e.found && e.found_at <= b) return e.found;
    if (b <= e.failed_upto) return std::nullopt;
    tick();
    Found r = compute();
    MemoEntry& e2 = memo_[key];  // the map may have grown
    if (r) {
      e2.found = r;
      e2.found_at = b;
    } else {
      e2.failed_upto = std::max(e2.failed_upto, b);
    }
    return r;
  }

  // A variable for a premise binder: the preferred one unless it clashes.
  Var pick(const Ctx& c, const Var& preferred, std::initializer_list<const Type*> avoid) {
    bool clash = c.g.binds(preferred);
    for (const Type* t : avoid) clash = clash || (*t && occurs_free(preferred, *t));
    return clash ? fresh_like(preferred) : preferred;
  }

  const std::vector<Type>& pool(const Ctx& c) {
    auto it = pool_memo_.find(c.key);
    if (it != pool_memo_.end()) return it->second;
    std::vector<Type> out;
    std::set<std::string> seen;
    for (const auto& bnd : c.g.bindings()) {
      for (const auto& p : precise_types_of_var(c.g, bnd.var)) {
        push_unique(out, seen, p.type);
        if (auto d = p.type.as<types::Typ>()) {
          push_unique(out, seen, d->lower);
          push_unique(out, seen, d->upper);
          push_unique(out, seen, mk::sel(bnd.var, d->label));
        }
      }
    }
    push_unique(out, seen, mk::top());
    push_unique(out, seen, mk::bot());
    for (const auto& t : extras_)
      if (fv_within(t, c.g)) push_unique(out, seen, t);
    return pool_memo_.emplace(c.key, std::move(out)).first->second;
  }

  // Types x has by Var, Rec-E and conjunct splitting. A lookup chain
  // costs one level of budget whatever its height.
  Candidates var_types(const Ctx& c, const Var& x) {
    Candidates out;
    if (!c.g.binds(x)) return out;
    for (const auto& p : precise_types_of_var(c.g, x)) out.emplace_back(p.type, precise_to_general(p.deriv));
    return out;
  }

  Found check_rules(const Ctx& c, const Term& t, const Type& target, int b) {
    Judgment concl = Judgment::typing(K::Typ, c.g, t, target);
    auto x = t.as<terms::Ref>();
    for (const auto& rule : cfg_.rule_order) {
      if (rule == "Var") {
        if (!x) continue;
        const Type* gx = c.g.lookup(x->var);
        if (gx && alpha_eq(*gx, target)) return make("Var", concl);
      } else if (rule == "All-I") {
        auto v = t.as<terms::Val>();
        auto lam = v ? v->value.as<values::Lambda>() : nullptr;
        auto all = target.as<types::All>();
        if (!lam || !all || !alpha_eq(lam->param_type, all->domain)) continue;
        Var y = pick(c, lam->param, {&target, &lam->param_type});
        if (auto d = check(extend(c, y, lam->param_type), subst(lam->body, lam->param, y),
                           subst(all->codomain, all->param, y), b - 1))
          return make("All-I", concl, {*d});
      } else if (rule == "{}-I") {
        auto v = t.as<terms::Val>();
        auto nu = v ? v->value.as<values::Nu>() : nullptr;
        if (!nu || !alpha_eq(target, mk::mu(nu->self, nu->self_type))) continue;
        if (auto d = object_defs(c, *nu, b)) return make("{}-I", concl, {*d});
      } else if (rule == "Let") {
        auto l = t.as<terms::Let>();
        if (!l) continue;
        Var y = pick(c, l->bound, {&target});
        Term body = subst(l->body, l->bound, y);
        for (const auto& [s, ds] : synth(c, l->rhs, b - 1)) {
          if (auto d = check(extend(c, y, s), body, target, b - 1)) return make("Let", concl, {ds, *d});
        }
      } else if (rule == "{}-E") {
        auto sel = t.as<terms::Sel>();
        if (!sel) continue;
        if (auto d = check(c, mk::ref(sel->receiver), mk::fld(sel->label, target), b - 1))
          return make("{}-E", concl, {*d});
      } else if (rule == "All-E") {
        auto app = t.as<terms::App>();
        if (!app) continue;
        for (const auto& f : function_types(c, app->fun, b - 1)) {
          auto all = f.as<types::All>();
          if (!alpha_eq(subst(all->codomain, all->param, app->arg), target)) continue;
          auto df = check(c, mk::ref(app->fun), f, b - 1);
          if (!df) continue;
          if (auto da = check(c, mk::ref(app->arg), all->domain, b - 1))
            return make("All-E", concl, {*df, *da});
        }
      } else if (rule == "Rec-E") {
        if (!x) continue;
        for (auto& [s, d] : var_types(c, x->var))
          if (d.rule == "Rec-E" && alpha_eq(s, target)) return d;
      } else if (rule == "Rec-I") {
        auto rec = target.as<types::Rec>();
        if (!x || !rec) continue;
        if (auto d = check(c, t, subst(rec->body, rec->self, x->var), b - 1))
          return make("Rec-I", concl, {*d});
      } else if (rule == "And-I") {
        auto a = target.as<types::And>();
        if (!x || !a) continue;
        auto l = check(c, t, a->left, b - 1);
        if (!l) continue;
        if (auto r = check(c, t, a->right, b - 1)) return make("And-I", concl, {*l, *r});
      } else if (rule == "Sub") {
        for (const auto& [s, ds] : synth(c, t, b - 1)) {
          if (alpha_eq(s, target)) return ds;
          if (auto d = sub(c, s, target, b - 1, true)) return make("Sub", concl, {ds, *d});
        }
      }
    }
    return std::nullopt;
  }

  // Function types to try for the head of an application.
  std::vector<Type> function_types(const Ctx& c, const Var& f, int b) {
    std::vector<Type> out;
    std::set<std::string> seen;
    for (const auto& [s, d] : synth(c, mk::ref(f), b))
      if (s.is<types::All>()) push_unique(out, seen, s);
    for (const auto& t : pool(c))
      if (t.is<types::All>()) push_unique(out, seen, t);
    return out;
  }

  // Γ, y: S ⊢ defs : S for an object, with y the self binder.
  Found object_defs(const Ctx& c, const values::Nu& nu, int b) {
    Var y = pick(c, nu.self, {});
    Type self_t = subst(nu.self_type, nu.self, y);
    return defs(extend(c, y, self_t), subst(nu.defs, nu.self, y), self_t, b - 1);
  }

  Found defs(const Ctx& c, const Def& d, const Type& t, int b) {
    if (b < 1) return std::nullopt;
    Judgment concl = Judgment::definitions(c.g, d, t);
    if (auto f = d.as<defs::Field>()) {
      auto ft = t.as<types::Fld>();
      if (!ft || ft->label != f->label) return std::nullopt;
      if (auto p = check(c, f->rhs, ft->type, b - 1)) return make("Def-Trm", concl, {*p});
      return std::nullopt;
    }
    if (auto a = d.as<defs::Alias>()) {
      auto tt = t.as<types::Typ>();
      if (tt && tt->label == a->label && alpha_eq(tt->lower, a->alias) && alpha_eq(tt->upper, a->alias))
        return make("Def-Typ", concl);
      return std::nullopt;
    }
    auto dd = d.as<defs::And>();
    auto tt = t.as<types::And>();
    if (!tt) return std::nullopt;
    for (const auto& l : def_labels(dd->left))
      for (const auto& r : def_labels(dd->right))
        if (l == r) return std::nullopt;
    // Aggregation involves no choice and costs no budget.
    auto l = defs(c, dd->left, tt->left, b);
    if (!l) return std::nullopt;
    auto r = defs(c, dd->right, tt->right, b);
    if (!r) return std::nullopt;
    return make("AndDef-I", concl, {*l, *r});
  }

  Candidates synth_rules(const Ctx& c, const Term& t, int b) {
    Candidates out;
    std::set<std::string> seen;
    auto add = [&](Type ty, Derivation d) {
      if (out.size() < kMaxCandidates && seen.insert(canonical_key(ty)).second)
        out.emplace_back(std::move(ty), std::move(d));
    };
    auto typed = [&](const Type& ty) { return Judgment::typing(K::Typ, c.g, t, ty); };

    if (auto x = t.as<terms::Ref>()) {
      for (auto& [ty, d] : var_types(c, x->var)) add(ty, d);
    } else if (auto v = t.as<terms::Val>()) {
      if (auto lam = v->value.as<values::Lambda>()) {
        if (!enabled("All-I")) return out;
        Var y = pick(c, lam->param, {&lam->param_type});
        if (occurs_free(y, lam->param_type)) return out;
        Ctx inner = extend(c, y, lam->param_type);
        for (const auto& [u, du] : synth(inner, subst(lam->body, lam->param, y), b - 1)) {
          Type all = mk::all(y, lam->param_type, u);
          add(all, make("All-I", typed(all), {du}));
        }
      } else if (auto nu = v->value.as<values::Nu>()) {
        if (!enabled("{}-I")) return out;
        if (auto d = object_defs(c, *nu, b)) {
          Type mu = mk::mu(nu->self, nu->self_type);
          add(mu, make("{}-I", typed(mu), {*d}));
        }
      }
    } else if (auto sel = t.as<terms::Sel>()) {
      if (!enabled("{}-E")) return out;
      for (const auto& [f, df] : synth(c, mk::ref(sel->receiver), b - 1)) {
        auto fld = f.as<types::Fld>();
        if (fld && fld->label == sel->label) add(fld->type, make("{}-E", typed(fld->type), {df}));
      }
    } else if (auto app = t.as<terms::App>()) {
      if (!enabled("All-E")) return out;
      for (const auto& f : function_types(c, app->fun, b - 1)) {
        auto all = f.as<types::All>();
        auto df = check(c, mk::ref(app->fun), f, b - 1);
        if (!df) continue;
        auto da = check(c, mk::ref(app->arg), all->domain, b - 1);
        if (!da) continue;
        Type res = subst(all->codomain, all->param, app->arg);
        add(res, make("All-E", typed(res), {*df, *da}));
      }
    } else if (auto l = t.as<terms::Let>()) {
      if (!enabled("Let")) return out;
      Var y = pick(c, l->bound, {});
      Term body = subst(l->body, l->bound, y);
      for (const auto& [s, ds] : synth(c, l->rhs, b - 1)) {
        for (const auto& [u, du] : synth(extend(c, y, s), body, b - 1)) {
          if (occurs_free(y, u)) continue;
          add(u, make("Let", typed(u), {ds, du}));
        }
      }
    }
    return out;
  }

  Found sub_rules(const Ctx& c, const Type& s, const Type& u, int b, bool allow_trans) {
    Judgment concl = Judgment::subtyping(K::Subtyp, c.g, s, u);
    for (const auto& rule : cfg_.rule_order) {
      if (rule == "Refl") {
        if (alpha_eq(s, u)) return make("Refl", concl);
      } else if (rule == "Top") {
        if (u.is<types::Top>()) return make("Top", concl);
      } else if (rule == "Bot") {
        if (s.is<types::Bot>()) return make("Bot", concl);
      } else if (rule == "And1-<:" || rule == "And2-<:") {
        auto a = s.as<types::And>();
        if (a && alpha_eq(rule == "And1-<:" ? a->left : a->right, u)) return make(rule, concl);
      } else if (rule == "<:-And") {
        auto a = u.as<types::And>();
        if (!a) continue;
        auto l = sub(c, s, a->left, b - 1, true);
        if (!l) continue;
        if (auto r = sub(c, s, a->right, b - 1, true)) return make("<:-And", concl, {*l, *r});
      } else if (rule == "Fld-<:-Fld") {
        auto l = s.as<types::Fld>();
        auto r = u.as<types::Fld>();
        if (!l || !r || l->label != r->label) continue;
        if (auto d = sub(c, l->type, r->type, b - 1, true)) return make(rule, concl, {*d});
      } else if (rule == "Typ-<:-Typ") {
        auto l = s.as<types::Typ>();
        auto r = u.as<types::Typ>();
        if (!l || !r || l->label != r->label) continue;
        auto lo = sub(c, r->lower, l->lower, b - 1, true);
        if (!lo) continue;
        if (auto hi = sub(c, l->upper, r->upper, b - 1, true)) return make(rule, concl, {*lo, *hi});
      } else if (rule == "All-<:-All") {
        auto l = s.as<types::All>();
        auto r = u.as<types::All>();
        if (!l || !r) continue;
        auto dom = sub(c, r->domain, l->domain, b - 1, true);
        if (!dom) continue;
        Var y = pick(c, r->param, {&s, &u});
        if (auto cod = sub(extend(c, y, r->domain), subst(l->codomain, l->param, y),
                           subst(r->codomain, r->param, y), b - 1, true))
          return make(rule, concl, {*dom, *cod});
      } else if (rule == "Sel-<:" || rule == "<:-Sel") {
        bool into = rule == "<:-Sel";
        auto sel = (into ? u : s).as<types::Sel>();
        if (!sel) continue;
        for (const auto& [m, dm] : synth(c, mk::ref(sel->receiver), b - 1)) {
          auto dec = m.as<types::Typ>();
          if (!dec || dec->label != sel->label) continue;
          if (alpha_eq(into ? dec->lower : dec->upper, into ? s : u)) return make(rule, concl, {dm});
        }
      } else if (rule == "Trans") {
        if (!allow_trans) continue;
        for (const auto& m : middles(c, s, u, b)) {
          auto l = sub(c, s, m, b - 1, false);
          if (!l) continue;
          if (auto r = sub(c, m, u, b - 1, true)) return make("Trans", concl, {*l, *r});
        }
      }
    }
    return std::nullopt;
  }

  std::vector<Type> middles(const Ctx& c, const Type& s, const Type& u, int b) {
    std::vector<Type> out;
    std::set<std::string> seen{canonical_key(s), canonical_key(u)};
    if (auto a = s.as<types::And>()) {
      push_unique(out, seen, a->left);
      push_unique(out, seen, a->right);
    }
    for (const Type* side : {&s, &u}) {
      auto sel = side->as<types::Sel>();
      if (!sel) continue;
      for (const auto& [m, dm] : synth(c, mk::ref(sel->receiver), b - 1)) {
        auto dec = m.as<types::Typ>();
        if (dec && dec->label == sel->label) push_unique(out, seen, side == &s ? dec->upper : dec->lower);
      }
    }
    for (const auto& t : pool(c)) push_unique(out, seen, t);
    return out;
  }

  const SearchConfig& cfg_;
  std::vector<Type> extras_;
  std::size_t nodes_ = 0;
  std::unordered_map<std::string, MemoEntry> memo_;
  std::unordered_map<std::string, Candidates> synth_memo_;
  std::unordered_map<std::string, std::vector<Type>> pool_memo_;
};

template <class F>
std::optional<Derivation> deepen(const SearchConfig& cfg, SearchStats* stats, Searcher& s, F&& attempt) {
  SearchStats local;
  std::optional<Derivation> found;
  try {
    for (int d = 1; d <= cfg.max_depth && !found; ++d) {
      local.depth = d;
      found = attempt(d);
    }
  } catch (const BudgetExhausted&) {
    local.budget_exhausted = true;
  }
  local.nodes = s.nodes();
  if (stats) *stats = local;
  return found;
}

}  // namespace

std::optional<Derivation> bounded_search(const Context& g, const Term& t, const std::optional<Type>& target,
                                         const SearchConfig& cfg, SearchStats* stats) {
  VarSet fv = free_vars(t);
  if (target) fv.merge(free_vars(*target));
  if (!closed_under(g, fv)) return std::nullopt;
  std::vector<Type> extras;
  term_types(t, extras);
  if (target) type_parts(*target, extras);
  Searcher s(cfg, std::move(extras));
  Ctx c = make_ctx(g);
  return deepen(cfg, stats, s, [&](int d) -> std::optional<Derivation> {
    if (target) return s.check(c, t, *target, d);
    const auto& cands = s.synth(c, t, d);
    if (cands.empty()) return std::nullopt;
    return cands.front().second;
  });
}

std::optional<Derivation> bounded_subtype(const Context& g, const Type& s, const Type& u,
                                          const SearchConfig& cfg, SearchStats* stats) {
  VarSet fv = free_vars(s);
  fv.merge(free_vars(u));
  if (!closed_under(g, fv)) return std::nullopt;
  std::vector<Type> extras;
  type_parts(s, extras);
  type_parts(u, extras);
  Searcher sr(cfg, std::move(extras));
  Ctx c = make_ctx(g);
  return deepen(cfg, stats, sr, [&](int d) { return sr.sub(c, s, u, d, true); });
}

}  // namespace dot
