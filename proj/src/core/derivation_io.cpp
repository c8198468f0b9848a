// SPDX-License-Identifier: Apache-2.0

#include "core/derivation_io.hpp"

#include <json.hpp>
#include <type_traits>

#include "core/rules.hpp"

namespace dot {

using nlohmann::json;

namespace {

class Loader {
 public:
  Loader(Scope& scope, LoadOptions opts) : scope_(scope), opts_(opts) {}

  Derivation node(const json& j) {
    if (!j.is_object()) fail_here("node must be an object");
    Derivation d;
    d.rule = string_field(j, "rule");
    if (!j.contains("conclusion")) fail_here("missing field 'conclusion'");
    d.conclusion = judgment(j.at("conclusion"));
    if (j.contains("premises")) {
      const json& ps = j.at("premises");
      if (!ps.is_array()) fail_here("'premises' must be an array");
      for (std::size_t i = 0; i < ps.size(); ++i) {
        path_.push_back(i);
        d.premises.push_back(node(ps[i]));
        path_.pop_back();
      }
    }
    if (opts_.check_rules) {
      const RuleSchema* s = find_rule(d.rule);
      if (!s) fail_here("unknown rule '" + d.rule + "'");
      if (s->system != d.conclusion.kind)
        fail_here("system mismatch: rule " + s->name + " concludes " + kind_name(s->system) +
                  ", node kind is " + kind_name(d.conclusion.kind));
      if (s->premises.size() != d.premises.size())
        fail_here("rule " + s->name + " takes " + std::to_string(s->premises.size()) +
                  " premises, found " + std::to_string(d.premises.size()));
    }
    return d;
  }

 private:
  Judgment judgment(const json& j) {
    if (!j.is_object()) fail_here("conclusion must be an object");
    auto kind = kind_from_name(string_field(j, "kind"));
    if (!kind) fail_here("unknown judgment kind '" + j.at("kind").get<std::string>() + "'");
    Judgment out;
    out.kind = *kind;
    out.ctx = context(j);
    if (is_subtyping(*kind)) {
      out.lhs = type(j, "lhs");
      out.rhs = type(j, "rhs");
    } else if (*kind == JudgmentKind::Defs) {
      out.defs = guarded("defs", [&] { return parse_defs(string_field(j, "defs"), scope_); });
      out.type = type(j, "type");
    } else {
      out.term = guarded("term", [&] { return parse_term(string_field(j, "term"), scope_); });
      out.type = type(j, "type");
    }
    return out;
  }

  Context context(const json& j) {
    if (!j.contains("ctx")) return Context{};
    const json& c = j.at("ctx");
    if (c.is_string()) return guarded("ctx", [&] { return parse_context(c.get<std::string>(), scope_); });
    if (!c.is_array()) fail_here("'ctx' must be an array of bindings");
    std::vector<Binding> out;
    for (const auto& b : c) {
      if (!b.is_string()) fail_here("context bindings must be strings");
      Context one = guarded("ctx", [&] { return parse_context(b.get<std::string>(), scope_); });
      if (one.size() != 1) fail_here("each context entry must hold exactly one binding");
      out.push_back(one.bindings()[0]);
    }
    return Context(std::move(out));
  }

  Type type(const json& j, const char* field) {
    return guarded(field, [&] { return parse_type(string_field(j, field), scope_); });
  }

  template <class F>
  std::invoke_result_t<F&> guarded(const char* field, F&& f) {
    try {
      return f();
    } catch (const ParseError& e) {
      fail_here(std::string("field '") + field + "': " + e.what());
    }
  }

  std::string string_field(const json& j, const char* field) {
    if (!j.contains(field)) fail_here(std::string("missing field '") + field + "'");
    const json& v = j.at(field);
    if (!v.is_string()) fail_here(std::string("field '") + field + "' must be a string");
    return v.get<std::string>();
  }

  [[noreturn]] void fail_here(const std::string& msg) {
    fail(ErrorCode::Parse, "at " + format_path(path_) + ": " + msg);
  }

  Scope& scope_;
  LoadOptions opts_;
  std::vector<std::size_t> path_;
};

json to_json(const Derivation& d, Names& names) {
  const Judgment& c = d.conclusion;
  json concl = json::object();
  concl["kind"] = kind_name(c.kind);
  json ctx = json::array();
  for (const auto& b : c.ctx.bindings()) ctx.push_back(names.name_of(b.var) + ": " + print(b.type, names));
  concl["ctx"] = ctx;
  if (is_subtyping(c.kind)) {
    concl["lhs"] = print(c.lhs, names);
    concl["rhs"] = print(c.rhs, names);
  } else if (c.kind == JudgmentKind::Defs) {
    concl["defs"] = print(c.defs, names);
    concl["type"] = print(c.type, names);
  } else {
    concl["term"] = print(c.term, names);
    concl["type"] = print(c.type, names);
  }
  json out = json::object();
  out["rule"] = d.rule;
  out["conclusion"] = concl;
  json ps = json::array();
  for (const auto& p : d.premises) ps.push_back(to_json(p, names));
  out["premises"] = ps;
  return out;
}

void render(const Derivation& d, Names& names, int depth, std::string& out) {
  out += std::string(2 * depth, ' ') + d.rule + "  " + print(d.conclusion, names) + "\n";
  for (const auto& p : d.premises) render(p, names, depth + 1, out);
}

}  // namespace

Derivation parse_derivation(std::string_view doc, Scope& scope, LoadOptions opts) {
  json j;
  try {
    j = json::parse(doc.begin(), doc.end());
  } catch (const json::parse_error& e) {
    fail(ErrorCode::Parse, std::string("malformed document: ") + e.what());
  }
  return Loader(scope, opts).node(j);
}

Derivation parse_derivation(std::string_view doc, LoadOptions opts) {
  Scope s;
  return parse_derivation(doc, s, opts);
}

std::string write_derivation(const Derivation& d, Names& names, int indent) {
  return to_json(d, names).dump(indent);
}

std::string write_derivation(const Derivation& d, int indent) {
  Names n;
  return write_derivation(d, n, indent);
}

std::string print(const Judgment& j, Names& names) {
  std::string out = print(j.ctx, names);
  out += out.empty() ? "|- " : " |- ";
  switch (j.kind) {
    case JudgmentKind::Subtyp: return out + print(j.lhs, names) + " <: " + print(j.rhs, names);
    case JudgmentKind::SubtypTight: return out + print(j.lhs, names) + " <:# " + print(j.rhs, names);
    case JudgmentKind::Defs: return out + print(j.defs, names) + " : " + print(j.type, names);
    case JudgmentKind::Typ: return out + print(j.term, names) + " : " + print(j.type, names);
    case JudgmentKind::TypTight: return out + print(j.term, names) + " :# " + print(j.type, names);
    case JudgmentKind::TypPrecise: return out + print(j.term, names) + " :! " + print(j.type, names);
    case JudgmentKind::TypInvertible: return out + print(j.term, names) + " :## " + print(j.type, names);
  }
  return out;
}

std::string render_tree(const Derivation& d, Names& names) {
  std::string out;
  render(d, names, 0, out);
  return out;
}

}  // namespace dot
