// SPDX-License-Identifier: Apache-2.0

#include "core/surface.hpp"

#include <array>
#include <cctype>
#include <optional>

#include "core/overloaded.hpp"

namespace dot {

ParseError::ParseError(SourceSpan span, std::string message, std::vector<std::string> expected)
    : Error(ErrorCode::Parse, std::to_string(span.line) + ":" + std::to_string(span.column) +
                                  ": " + message),
      span_(span),
      message_(std::move(message)),
      expected_(std::move(expected)) {}

bool is_keyword(std::string_view s) {
  static constexpr std::array<std::string_view, 8> kw{"let", "in",  "lambda", "nu",
                                                      "mu",  "all", "Top",    "Bot"};
  for (auto k : kw)
    if (k == s) return true;
  return false;
}

Var Scope::free(const std::string& name) {
  auto it = free_.find(name);
  if (it != free_.end()) return it->second;
  Var v = fresh_var(name);
  free_.emplace(name, v);
  return v;
}

Var Scope::resolve(const std::string& name) {
  for (auto it = bound_.rbegin(); it != bound_.rend(); ++it)
    if (it->first == name) return it->second;
  return free(name);
}

Var Scope::push(const std::string& name) {
  Var v = fresh_var(name);
  bound_.emplace_back(name, v);
  return v;
}

void Scope::pop() { bound_.pop_back(); }

// ---------------------------------------------------------------------------
// Lexer

namespace {

enum class Tok { Ident, LParen, RParen, LBrace, RBrace, Colon, Semi, Dot, DotDot, Amp, Wedge, Eq, End };

const char* tok_desc(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::Colon: return "':'";
    case Tok::Semi: return "';'";
    case Tok::Dot: return "'.'";
    case Tok::DotDot: return "'..'";
    case Tok::Amp: return "'&'";
    case Tok::Wedge: return "'/\\'";
    case Tok::Eq: return "'='";
    case Tok::End: return "end of input";
  }
  return "?";
}

struct Token {
  Tok kind = Tok::End;
  std::string text;
  SourceSpan span;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}
bool is_upper_name(std::string_view s) {
  return !s.empty() && std::isupper(static_cast<unsigned char>(s[0]));
}

constexpr int kMaxDepth = 400;

class Parser {
 public:
  Parser(std::string_view src, Scope& scope) : src_(src), scope_(scope) { advance(); }

  Type type() {
    Guard g(*this);
    Type left = prim_type();
    if (cur_.kind == Tok::Amp) {
      advance();
      return mk::meet(left, type());
    }
    return left;
  }

  Term term() {
    Guard g(*this);
    if (is_kw("let")) {
      advance();
      std::string name = var_name();
      expect(Tok::Eq);
      Term rhs = term();
      expect_kw("in");
      Var b = scope_.push(name);
      Term body = term();
      scope_.pop();
      return mk::let(b, rhs, body);
    }
    if (is_kw("lambda")) {
      advance();
      expect(Tok::LParen);
      std::string name = var_name();
      expect(Tok::Colon);
      Type pt = type();
      expect(Tok::RParen);
      Var p = scope_.push(name);
      Term body = term();
      scope_.pop();
      return mk::lambda_term(p, pt, body);
    }
    if (is_kw("nu")) {
      advance();
      expect(Tok::LParen);
      std::string name = var_name();
      expect(Tok::Colon);
      Var s = scope_.push(name);
      Type st = type();
      expect(Tok::RParen);
      Def d = defs();
      scope_.pop();
      return mk::nu_term(s, st, d);
    }
    if (cur_.kind == Tok::LParen) {
      advance();
      Term inner = term();
      expect(Tok::RParen);
      no_operand_follows();
      return inner;
    }
    if (cur_.kind == Tok::Ident && !is_keyword(cur_.text)) {
      std::string name = var_name();
      Var x = scope_.resolve(name);
      if (cur_.kind == Tok::Dot) {
        advance();
        std::string label = label_name(false);
        no_operand_follows();
        return mk::select(x, label);
      }
      if (cur_.kind == Tok::Ident && !is_keyword(cur_.text)) {
        std::string arg = var_name();
        Var y = scope_.resolve(arg);
        no_operand_follows();
        return mk::app(x, y);
      }
      return mk::ref(x);
    }
    error("expected a term", {"'let'", "'lambda'", "'nu'", "variable", "'('"});
  }

  Def defs() {
    Guard g(*this);
    Def left = def();
    if (cur_.kind == Tok::Wedge) {
      advance();
      return mk::both(left, defs());
    }
    return left;
  }

  Context context() {
    std::vector<Binding> out;
    while (cur_.kind != Tok::End) {
      std::string name = var_name();
      Var x = scope_.free(name);
      expect(Tok::Colon);
      Type t = type();
      out.push_back(Binding{x, t});
      if (cur_.kind == Tok::Semi) {
        advance();
        continue;
      }
      if (cur_.kind != Tok::End) error("expected ';' between bindings", {"';'", "end of input"});
    }
    return Context(std::move(out));
  }

  void finish() {
    if (cur_.kind != Tok::End) error("unexpected trailing input", {"end of input"});
  }

 private:
  struct Guard {
    explicit Guard(Parser& p) : p(p) {
      if (++p.depth_ > kMaxDepth) p.error("nesting too deep", {});
    }
    ~Guard() { --p.depth_; }
    Parser& p;
  };

  Type prim_type() {
    Guard g(*this);
    if (is_kw("Top")) {
      advance();
      return mk::top();
    }
    if (is_kw("Bot")) {
      advance();
      return mk::bot();
    }
    if (is_kw("all")) {
      advance();
      expect(Tok::LParen);
      std::string name = var_name();
      expect(Tok::Colon);
      Type dom = type();
      expect(Tok::RParen);
      Var p = scope_.push(name);
      Type cod = prim_type();
      scope_.pop();
      return mk::all(p, dom, cod);
    }
    if (is_kw("mu")) {
      advance();
      expect(Tok::LParen);
      std::string name = var_name();
      expect(Tok::Colon);
      Var s = scope_.push(name);
      Type body = type();
      scope_.pop();
      expect(Tok::RParen);
      return mk::mu(s, body);
    }
    if (cur_.kind == Tok::LBrace) {
      advance();
      Token lab = cur_;
      std::string label = any_label();
      expect(Tok::Colon);
      Type first = type();
      if (is_upper_name(label)) {
        if (cur_.kind != Tok::DotDot)
          error("type member " + label + " needs bounds 'S .. U'", {"'..'"});
        advance();
        Type upper = type();
        expect(Tok::RBrace);
        return mk::decl(label, first, upper);
      }
      if (cur_.kind == Tok::DotDot) error_at(lab.span, "field " + label + " cannot have bounds", {"'}'"});
      expect(Tok::RBrace);
      return mk::fld(label, first);
    }
    if (cur_.kind == Tok::LParen) {
      advance();
      Type inner = type();
      expect(Tok::RParen);
      return inner;
    }
    if (cur_.kind == Tok::Ident && !is_keyword(cur_.text)) {
      std::string name = var_name();
      Var x = scope_.resolve(name);
      expect(Tok::Dot);
      std::string label = label_name(true);
      return mk::sel(x, label);
    }
    error("expected a type", {"'Top'", "'Bot'", "'all'", "'mu'", "'{'", "variable", "'('"});
  }

  Def def() {
    Guard g(*this);
    if (cur_.kind == Tok::LParen) {
      advance();
      Def inner = defs();
      expect(Tok::RParen);
      return inner;
    }
    expect(Tok::LBrace);
    std::string label = any_label();
    expect(Tok::Eq);
    Def out;
    if (is_upper_name(label))
      out = mk::alias(label, type());
    else
      out = mk::field(label, term());
    expect(Tok::RBrace);
    return out;
  }

  void no_operand_follows() {
    if (cur_.kind == Tok::Dot || (cur_.kind == Tok::Ident && !is_keyword(cur_.text)))
      error("selection and application take variables only", {});
  }

  bool is_kw(std::string_view k) const { return cur_.kind == Tok::Ident && cur_.text == k; }

  std::string var_name() {
    if (cur_.kind != Tok::Ident || is_keyword(cur_.text) || is_upper_name(cur_.text))
      error("expected a variable", {"variable"});
    std::string s = cur_.text;
    advance();
    return s;
  }

  std::string label_name(bool type_label) {
    if (cur_.kind != Tok::Ident || is_keyword(cur_.text) || is_upper_name(cur_.text) != type_label)
      error(type_label ? "expected a type label" : "expected a field label",
            {type_label ? "type label" : "field label"});
    std::string s = cur_.text;
    advance();
    return s;
  }

  std::string any_label() {
    if (cur_.kind != Tok::Ident || is_keyword(cur_.text)) error("expected a label", {"label"});
    std::string s = cur_.text;
    advance();
    return s;
  }

  void expect(Tok t) {
    if (cur_.kind != t) error(std::string("expected ") + tok_desc(t), {tok_desc(t)});
    advance();
  }

  void expect_kw(std::string_view k) {
    if (!is_kw(k)) error("expected '" + std::string(k) + "'", {"'" + std::string(k) + "'"});
    advance();
  }

  [[noreturn]] void error(const std::string& msg, std::vector<std::string> expected) {
    error_at(cur_.span, msg, std::move(expected));
  }
  [[noreturn]] void error_at(SourceSpan span, const std::string& msg,
                             std::vector<std::string> expected) {
    throw ParseError(span, msg, std::move(expected));
  }

  char peek(std::size_t off = 0) const {
    return pos_ + off < src_.size() ? src_[pos_ + off] : '\0';
  }
  void bump() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void advance() {
    for (;;) {
      while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) bump();
      if (peek() == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') bump();
        continue;
      }
      break;
    }
    Token t;
    t.span = SourceSpan{pos_, pos_, line_, col_};
    if (pos_ >= src_.size()) {
      t.kind = Tok::End;
      cur_ = t;
      return;
    }
    char c = peek();
    auto single = [&](Tok k) {
      t.kind = k;
      t.text = std::string(1, c);
      bump();
    };
    if (ident_start(c)) {
      t.kind = Tok::Ident;
      while (pos_ < src_.size() && ident_char(peek())) {
        t.text.push_back(peek());
        bump();
      }
    } else if (c == '(') {
      single(Tok::LParen);
    } else if (c == ')') {
      single(Tok::RParen);
    } else if (c == '{') {
      single(Tok::LBrace);
    } else if (c == '}') {
      single(Tok::RBrace);
    } else if (c == ':') {
      single(Tok::Colon);
    } else if (c == ';') {
      single(Tok::Semi);
    } else if (c == '&') {
      single(Tok::Amp);
    } else if (c == '=') {
      single(Tok::Eq);
    } else if (c == '.') {
      if (peek(1) == '.') {
        bump();
        bump();
        t.kind = Tok::DotDot;
        t.text = "..";
      } else {
        single(Tok::Dot);
      }
    } else if (c == '/' && peek(1) == '\\') {
      bump();
      bump();
      t.kind = Tok::Wedge;
      t.text = "/\\";
    } else {
      t.span.end = pos_ + 1;
      error_at(t.span, "unexpected character", {});
    }
    t.span.end = pos_;
    cur_ = t;
  }

  std::string_view src_;
  Scope& scope_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  int depth_ = 0;
  Token cur_;
};

}  // namespace

Type parse_type(std::string_view src, Scope& scope) {
  Parser p(src, scope);
  Type t = p.type();
  p.finish();
  return t;
}

Term parse_term(std::string_view src, Scope& scope) {
  Parser p(src, scope);
  Term t = p.term();
  p.finish();
  return t;
}

Def parse_defs(std::string_view src, Scope& scope) {
  Parser p(src, scope);
  Def d = p.defs();
  p.finish();
  return d;
}

Context parse_context(std::string_view src, Scope& scope) {
  Parser p(src, scope);
  return p.context();
}

Type parse_type(std::string_view src) {
  Scope s;
  return parse_type(src, s);
}

Term parse_term(std::string_view src) {
  Scope s;
  return parse_term(src, s);
}

// ---------------------------------------------------------------------------
// Printer

namespace {

bool valid_var_name(const std::string& n) {
  if (n.empty() || is_keyword(n) || is_upper_name(n) || !ident_start(n[0])) return false;
  for (char c : n)
    if (!ident_char(c)) return false;
  return true;
}

std::string base_name(const Var& v) { return valid_var_name(v.name) ? v.name : "v"; }

}  // namespace

const std::string& Names::name_of(const Var& v) {
  auto it = assigned_.find(v.uid);
  if (it != assigned_.end()) return it->second;
  std::string base = base_name(v);
  std::string cand = base;
  for (int k = 1; used_.count(cand); ++k) cand = base + "_" + std::to_string(k);
  used_.insert(cand);
  return assigned_.emplace(v.uid, cand).first->second;
}

namespace {

class Printer {
 public:
  explicit Printer(Names& names) : names_(names) {}

  std::string name(const Var& v) {
    for (auto it = local_.rbegin(); it != local_.rend(); ++it)
      if (it->first == v.uid) return it->second;
    return names_.name_of(v);
  }

  // Picks a printed name for binder b whose scope has free variables fv.
  template <class F>
  void bind(const Var& b, const VarSet& fv, F&& f) {
    std::set<std::string> avoid;
    for (const auto& v : fv)
      if (v != b) avoid.insert(name(v));
    std::string base = base_name(b);
    std::string cand = base;
    for (int k = 1; avoid.count(cand); ++k) cand = base + "_" + std::to_string(k);
    local_.emplace_back(b.uid, cand);
    f(cand);
    local_.pop_back();
  }

  void type(const Type& t, std::string& out) {
    if (auto a = t.as<types::And>()) {
      if (a->left.is<types::And>()) {
        out += '(';
        type(a->left, out);
        out += ')';
      } else {
        type(a->left, out);
      }
      out += " & ";
      type(a->right, out);
      return;
    }
    prim(t, out);
  }

  void prim(const Type& t, std::string& out) {
    std::visit(overloaded{
                   [&](const types::Top&) { out += "Top"; },
                   [&](const types::Bot&) { out += "Bot"; },
                   [&](const types::All& a) {
                     std::string dom;
                     type(a.domain, dom);
                     bind(a.param, free_vars(a.codomain), [&](const std::string& n) {
                       out += "all(" + n + ": " + dom + ") ";
                       if (a.codomain.is<types::And>()) {
                         out += '(';
                         type(a.codomain, out);
                         out += ')';
                       } else {
                         prim(a.codomain, out);
                       }
                     });
                   },
                   [&](const types::Rec& r) {
                     bind(r.self, free_vars(r.body), [&](const std::string& n) {
                       out += "mu(" + n + ": ";
                       type(r.body, out);
                       out += ')';
                     });
                   },
                   [&](const types::Fld& f) {
                     out += '{' + f.label + ": ";
                     type(f.type, out);
                     out += '}';
                   },
                   [&](const types::Typ& d) {
                     out += '{' + d.label + ": ";
                     type(d.lower, out);
                     out += " .. ";
                     type(d.upper, out);
                     out += '}';
                   },
                   [&](const types::Sel& s) { out += name(s.receiver) + '.' + s.label; },
                   [&](const types::And&) { type(t, out); },
               },
               t.node());
  }

  void term(const Term& t, std::string& out) {
    std::visit(overloaded{
                   [&](const terms::Ref& r) { out += name(r.var); },
                   [&](const terms::Val& v) { value(v.value, out); },
                   [&](const terms::Sel& s) { out += name(s.receiver) + '.' + s.label; },
                   [&](const terms::App& a) { out += name(a.fun) + ' ' + name(a.arg); },
                   [&](const terms::Let& l) {
                     std::string rhs;
                     term(l.rhs, rhs);
                     bind(l.bound, free_vars(l.body), [&](const std::string& n) {
                       out += "let " + n + " = " + rhs + " in ";
                       term(l.body, out);
                     });
                   },
               },
               t.node());
  }

  void value(const Value& v, std::string& out) {
    if (auto l = v.as<values::Lambda>()) {
      std::string pt;
      type(l->param_type, pt);
      bind(l->param, free_vars(l->body), [&](const std::string& n) {
        out += "lambda(" + n + ": " + pt + ") ";
        term(l->body, out);
      });
      return;
    }
    auto nv = v.as<values::Nu>();
    VarSet fv = free_vars(nv->self_type);
    VarSet fd = free_vars(nv->defs);
    fv.insert(fd.begin(), fd.end());
    bind(nv->self, fv, [&](const std::string& n) {
      out += "nu(" + n + ": ";
      type(nv->self_type, out);
      out += ") ";
      defs(nv->defs, out);
    });
  }

  void defs(const Def& d, std::string& out) {
    std::visit(overloaded{
                   [&](const defs::Field& f) {
                     out += '{' + f.label + " = ";
                     term(f.rhs, out);
                     out += '}';
                   },
                   [&](const defs::Alias& a) {
                     out += '{' + a.label + " = ";
                     type(a.alias, out);
                     out += '}';
                   },
                   [&](const defs::And& a) {
                     if (a.left.is<defs::And>()) {
                       out += '(';
                       defs(a.left, out);
                       out += ')';
                     } else {
                       defs(a.left, out);
                     }
                     out += " /\\ ";
                     defs(a.right, out);
                   },
               },
               d.node());
  }

 private:
  Names& names_;
  std::vector<std::pair<std::uint64_t, std::string>> local_;
};

}  // namespace

std::string print(const Type& t, Names& names) {
  std::string out;
  Printer(names).type(t, out);
  return out;
}
std::string print(const Term& t, Names& names) {
  std::string out;
  Printer(names).term(t, out);
  return out;
}
std::string print(const Def& d, Names& names) {
  std::string out;
  Printer(names).defs(d, out);
  return out;
}
std::string print(const Context& g, Names& names) {
  std::string out;
  for (const auto& b : g.bindings()) names.name_of(b.var);
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (i) out += "; ";
    const auto& b = g.bindings()[i];
    out += names.name_of(b.var) + ": " + print(b.type, names);
  }
  return out;
}

std::string print(const Type& t) {
  Names n;
  return print(t, n);
}
std::string print(const Term& t) {
  Names n;
  return print(t, n);
}
std::string print(const Def& d) {
  Names n;
  return print(d, n);
}
std::string print(const Context& g) {
  Names n;
  return print(g, n);
}

}  // namespace dot
