// SPDX-License-Identifier: Apache-2.0
//
// Batch front end. Links the C API only.
//
// Exit codes: 0 success, 1 domain failure (not inert, invalid derivation,
// no derivation found, stuck, a failed precondition), 2 usage or I/O.

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "dot/dot.h"

namespace fs = std::filesystem;

namespace {

constexpr int kOk = 0;
constexpr int kDomain = 1;
constexpr int kUsage = 2;

struct IoError {
  std::string what;
};

// Unwinds to main with an exit code; the message is already printed.
struct Exit {
  int code;
};

struct Str {
  char* p = nullptr;
  ~Str() { dot_string_free(p); }
  std::string get() const { return p ? p : ""; }
};

template <class T, void (*Free)(T*)>
struct Own {
  T* p = nullptr;
  Own() = default;
  Own(const Own&) = delete;
  Own& operator=(const Own&) = delete;
  ~Own() { Free(p); }
};

using Session = Own<dot_session, dot_session_free>;
using TypeH = Own<dot_type, dot_type_free>;
using TermH = Own<dot_term, dot_term_free>;
using CtxH = Own<dot_context, dot_context_free>;
using DerivH = Own<dot_deriv, dot_deriv_free>;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError{"cannot read " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// "@path" reads the argument from a file.
std::string arg_text(const std::string& v) { return !v.empty() && v[0] == '@' ? read_file(v.substr(1)) : v; }

int code_for(dot_status s) { return s == DOT_ERR_ARGUMENT || s == DOT_ERR_INTERNAL ? kUsage : kDomain; }

void check(dot_status s, const std::string& what) {
  if (s == DOT_OK) return;
  std::cerr << "dot: " << what << ": " << dot_status_name(s) << ": " << dot_last_error() << "\n";
  throw Exit{code_for(s)};
}

void emit(const Str& s) { std::cout << s.get(); }

struct Opts {
  std::string type, term, ctx_file, deriv_file, sub_file, arg_file, var, label, mode;
  std::vector<std::string> paths;
  int depth = 8;
  std::size_t fuel = 1000;
  bool json = false, loose = false;
  int jobs = 0;
};

void load_ctx(dot_session* s, const Opts& o, CtxH& g) {
  std::string src = o.ctx_file.empty() ? "" : read_file(o.ctx_file);
  check(dot_context_parse(s, src.c_str(), &g.p), "context");
}

void load_deriv(dot_session* s, const std::string& file, DerivH& d) {
  if (file.empty()) throw IoError{"missing derivation file"};
  std::string doc = read_file(file);
  check(dot_deriv_parse(s, doc.c_str(), &d.p), file);
}

void need_one(const Opts& o) {
  if (o.type.empty() == o.term.empty()) throw CLI::ValidationError("exactly one of --type and --term is required");
}

int cmd_parse(const Opts& o, bool describe) {
  need_one(o);
  Session s;
  check(dot_session_new(&s.p), "session");
  Str out;
  if (!o.type.empty()) {
    TypeH t;
    check(dot_type_parse(s.p, arg_text(o.type).c_str(), &t.p), "type");
    check(describe ? dot_type_describe(t.p, o.json, &out.p) : dot_type_print(t.p, &out.p), "print");
  } else {
    TermH t;
    check(dot_term_parse(s.p, arg_text(o.term).c_str(), &t.p), "term");
    check(describe ? dot_term_describe(t.p, o.json, &out.p) : dot_term_print(t.p, &out.p), "print");
  }
  emit(out);
  if (!describe) std::cout << "\n";
  return kOk;
}

int cmd_inert(const Opts& o) {
  Session s;
  check(dot_session_new(&s.p), "session");
  Str out;
  int inert = 0;
  if (!o.type.empty()) {
    TypeH t;
    check(dot_type_parse(s.p, arg_text(o.type).c_str(), &t.p), "type");
    check(dot_inert_type(t.p, o.loose, o.json, &inert, &out.p), "inert");
  } else if (!o.ctx_file.empty()) {
    CtxH g;
    load_ctx(s.p, o, g);
    check(dot_inert_context(g.p, o.loose, o.json, &inert, &out.p), "inert");
  } else {
    throw CLI::ValidationError("inert needs --type or --ctx");
  }
  emit(out);
  return inert ? kOk : kDomain;
}

int cmd_precise(const Opts& o) {
  Session s;
  check(dot_session_new(&s.p), "session");
  CtxH g;
  load_ctx(s.p, o, g);
  Str out;
  check(dot_precise(g.p, o.var.c_str(), o.json, &out.p), "precise");
  emit(out);
  return kOk;
}

int cmd_check(const Opts& o) {
  Session s;
  check(dot_session_new(&s.p), "session");
  DerivH d;
  load_deriv(s.p, o.deriv_file, d);
  Str out;
  int valid = 0;
  check(dot_validate(d.p, o.json, &valid, &out.p), "check");
  emit(out);
  return valid ? kOk : kDomain;
}

int print_deriv(const DerivH& d, const Opts& o) {
  Str out;
  check(dot_deriv_print(d.p, o.json, &out.p), "print");
  emit(out);
  return kOk;
}

int cmd_infer(const Opts& o) {
  if (o.term.empty()) throw CLI::ValidationError("infer needs --term");
  Session s;
  check(dot_session_new(&s.p), "session");
  CtxH g;
  load_ctx(s.p, o, g);
  TermH t;
  check(dot_term_parse(s.p, arg_text(o.term).c_str(), &t.p), "term");
  TypeH ty;
  if (!o.type.empty()) check(dot_type_parse(s.p, arg_text(o.type).c_str(), &ty.p), "type");
  DerivH d;
  dot_status st = dot_search(g.p, t.p, ty.p, o.depth, &d.p);
  if (st == DOT_ERR_NOT_FOUND) {
    std::cout << "not found: " << dot_last_error() << "\n";
    return kDomain;
  }
  check(st, "infer");
  return print_deriv(d, o);
}

int cmd_transform(const Opts& o) {
  Session s;
  check(dot_session_new(&s.p), "session");
  DerivH d, out;
  load_deriv(s.p, o.deriv_file, d);
  if (o.mode == "to-tight")
    check(dot_to_tight(d.p, &out.p), "transform");
  else
    check(dot_to_invertible(d.p, &out.p), "transform");
  return print_deriv(out, o);
}

int cmd_canon(const Opts& o) {
  dot_canon_kind k = o.mode == "fun-var"   ? DOT_CANON_FUN_VAR
                     : o.mode == "fun-val" ? DOT_CANON_FUN_VAL
                     : o.mode == "obj-var" ? DOT_CANON_OBJ_VAR
                                           : DOT_CANON_OBJ_VAL;
  Session s;
  check(dot_session_new(&s.p), "session");
  DerivH d;
  load_deriv(s.p, o.deriv_file, d);
  Str out;
  check(dot_canon(d.p, k, o.label.c_str(), o.json, &out.p), "canon");
  emit(out);
  return kOk;
}

int cmd_narrow(const Opts& o, bool subst) {
  Session s;
  check(dot_session_new(&s.p), "session");
  DerivH d, other, out;
  load_deriv(s.p, o.deriv_file, d);
  load_deriv(s.p, subst ? o.arg_file : o.sub_file, other);
  if (subst)
    check(dot_subst(d.p, o.var.c_str(), other.p, &out.p), "subst");
  else
    check(dot_narrow(d.p, o.var.c_str(), other.p, &out.p), "narrow");
  return print_deriv(out, o);
}

int cmd_step(const Opts& o) {
  if (o.term.empty()) throw CLI::ValidationError("step needs --term");
  Session s;
  check(dot_session_new(&s.p), "session");
  TermH t;
  check(dot_term_parse(s.p, arg_text(o.term).c_str(), &t.p), "term");
  Str out;
  dot_step_kind k;
  check(dot_step(t.p, o.json, &k, &out.p), "step");
  emit(out);
  return k == DOT_STUCK ? kDomain : kOk;
}

int cmd_run(const Opts& o) {
  if (o.term.empty()) throw CLI::ValidationError("run needs --term");
  Session s;
  check(dot_session_new(&s.p), "session");
  TermH t;
  check(dot_term_parse(s.p, arg_text(o.term).c_str(), &t.p), "term");
  Str out;
  dot_outcome oc;
  check(dot_run(t.p, o.fuel, o.json, &oc, &out.p), "run");
  emit(out);
  return oc == DOT_OUTCOME_ANSWER ? kOk : kDomain;
}

struct Program {
  std::string name;
  std::string deriv;
};

// A directory contributes every name.dot that has a name.deriv.json beside
// it; a file is taken as a derivation.
std::vector<Program> programs(const std::vector<std::string>& paths) {
  std::vector<Program> out;
  for (const auto& p : paths) {
    if (!fs::exists(p)) throw IoError{"no such file or directory: " + p};
    if (!fs::is_directory(p)) {
      out.push_back({fs::path(p).filename().string(), p});
      continue;
    }
    std::vector<Program> found;
    for (const auto& e : fs::recursive_directory_iterator(p)) {
      if (!e.is_regular_file() || e.path().extension() != ".dot") continue;
      fs::path d = e.path();
      d.replace_extension(".deriv.json");
      if (fs::exists(d)) found.push_back({fs::relative(e.path(), p).replace_extension().string(), d.string()});
    }
    std::sort(found.begin(), found.end(), [](const Program& a, const Program& b) { return a.name < b.name; });
    out.insert(out.end(), found.begin(), found.end());
  }
  return out;
}

struct Verdict {
  bool pass = false;
  std::string line;
  std::string detail;
};

Verdict check_program(const Program& p, const Opts& o) {
  Verdict v;
  Session s;
  DerivH d;
  Str out;
  int pass = 0;
  std::string doc;
  try {
    doc = read_file(p.deriv);
  } catch (const IoError& e) {
    v.line = "FAIL " + p.name + ": " + e.what;
    return v;
  }
  dot_status st = dot_session_new(&s.p);
  if (st == DOT_OK) st = dot_deriv_parse(s.p, doc.c_str(), &d.p);
  if (st == DOT_OK) st = dot_soundness(d.p, o.fuel, o.depth, o.json, &pass, &out.p);
  if (st != DOT_OK) {
    v.line = "FAIL " + p.name + ": " + dot_status_name(st) + ": " + dot_last_error();
    return v;
  }
  v.pass = pass;
  v.detail = out.get();
  std::string first = v.detail.substr(0, v.detail.find('\n'));
  v.line = o.json ? "" : (pass ? "PASS " : "FAIL ") + p.name + ": " + first.substr(5);
  return v;
}

int cmd_soundness(const Opts& o) {
  std::vector<Program> ps = programs(o.paths.empty() ? std::vector<std::string>{"corpus"} : o.paths);
  unsigned jobs = o.jobs > 0 ? unsigned(o.jobs) : std::max(1u, std::thread::hardware_concurrency());
  std::vector<Verdict> vs(ps.size());
  // Work-stealing by index; results land in input order.
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned i = 0; i < std::min<std::size_t>(jobs, ps.size()); ++i)
    pool.emplace_back([&] {
      for (std::size_t k; (k = next++) < ps.size();) vs[k] = check_program(ps[k], o);
    });
  for (auto& t : pool) t.join();

  std::size_t passed = 0;
  if (o.json) std::cout << "[\n";
  for (std::size_t i = 0; i < vs.size(); ++i) {
    passed += vs[i].pass;
    if (!o.json) {
      std::cout << vs[i].line << "\n";
      continue;
    }
    std::string body = vs[i].detail.empty() ? "{\"pass\": false, \"failure\": \"" + vs[i].line + "\"}\n" : vs[i].detail;
    std::cout << "{\"name\": \"" << ps[i].name << "\", \"result\": " << body.substr(0, body.size() - 1) << "}"
              << (i + 1 < vs.size() ? "," : "") << "\n";
  }
  if (o.json)
    std::cout << "]\n";
  else
    std::cout << passed << "/" << vs.size() << " passed\n";
  return passed == vs.size() ? kOk : kDomain;
}

int cmd_demo(const Opts& o) {
  Str out;
  check(dot_demo_bad_bounds(o.depth, o.json, &out.p), "demo");
  emit(out);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"DOT calculus workbench"};
  app.require_subcommand(1);
  app.set_version_flag("--version", dot_version());
  Opts o;

  auto common = [&](CLI::App* c) {
    c->add_flag("--json", o.json, "JSON output");
    return c;
  };
  auto subject = [&](CLI::App* c) {
    c->add_option("--type", o.type, "type in surface syntax, or @file");
    c->add_option("--term", o.term, "term in surface syntax, or @file");
  };
  auto ctx = [&](CLI::App* c) { c->add_option("--ctx", o.ctx_file, "context file: x: T; y: U"); };
  auto deriv = [&](CLI::App* c) { c->add_option("--deriv", o.deriv_file, "derivation document")->required(); };
  auto depth = [&](CLI::App* c) { c->add_option("--depth", o.depth, "search depth")->capture_default_str(); };
  auto fuel = [&](CLI::App* c) { c->add_option("--fuel", o.fuel, "evaluation steps")->capture_default_str(); };

  auto* parse = common(app.add_subcommand("parse", "parse and describe a type or term"));
  subject(parse);
  auto* print = common(app.add_subcommand("print", "print a type or term in normal layout"));
  subject(print);
  auto* inert = common(app.add_subcommand("inert", "decide inertness of a type or context"));
  subject(inert);
  ctx(inert);
  inert->add_flag("--loose-inert", o.loose, "allow repeated field labels");
  auto* precise = common(app.add_subcommand("precise", "precise types of a variable"));
  ctx(precise);
  precise->add_option("--var", o.var, "variable")->required();
  auto* chk = common(app.add_subcommand("check", "validate a derivation"));
  deriv(chk);
  auto* infer = common(app.add_subcommand("infer", "bounded derivation search"));
  subject(infer);
  ctx(infer);
  depth(infer);
  auto* transform = common(app.add_subcommand("transform", "general to tight, or to invertible"));
  transform->add_option("mode", o.mode)->required()->check(CLI::IsMember({"to-tight", "to-invertible"}));
  deriv(transform);
  auto* canon = common(app.add_subcommand("canon", "canonical forms"));
  canon->add_option("lemma", o.mode)->required()->check(CLI::IsMember({"fun-var", "fun-val", "obj-var", "obj-val"}));
  deriv(canon);
  canon->add_option("--label", o.label, "field label for obj-val");
  auto* narrow = common(app.add_subcommand("narrow", "narrow a binding by a subtyping derivation"));
  deriv(narrow);
  narrow->add_option("--var", o.var, "binding to narrow")->required();
  narrow->add_option("--sub", o.sub_file, "subtyping derivation")->required();
  auto* subst = common(app.add_subcommand("subst", "substitute a variable typing for the last binding"));
  deriv(subst);
  subst->add_option("--var", o.var, "last binding")->required();
  subst->add_option("--arg", o.arg_file, "typing of the replacement variable")->required();
  auto* step = common(app.add_subcommand("step", "one reduction step"));
  subject(step);
  auto* run = common(app.add_subcommand("run", "evaluate to an answer"));
  subject(run);
  fuel(run);
  auto* sound = common(app.add_subcommand("soundness", "run corpus programs and re-derive their types"));
  sound->add_option("paths", o.paths, "directories or derivation files");
  fuel(sound);
  depth(sound);
  sound->add_option("-j,--jobs", o.jobs, "worker threads (0: one per core)");
  auto* demo = common(app.add_subcommand("demo", "built-in demonstrations"));
  demo->add_option("name", o.mode)->required()->check(CLI::IsMember({"bad-bounds"}));
  depth(demo);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*parse) return cmd_parse(o, true);
    if (*print) return cmd_parse(o, false);
    if (*inert) return cmd_inert(o);
    if (*precise) return cmd_precise(o);
    if (*chk) return cmd_check(o);
    if (*infer) return cmd_infer(o);
    if (*transform) return cmd_transform(o);
    if (*canon) return cmd_canon(o);
    if (*narrow) return cmd_narrow(o, false);
    if (*subst) return cmd_narrow(o, true);
    if (*step) return cmd_step(o);
    if (*run) return cmd_run(o);
    if (*sound) return cmd_soundness(o);
    if (*demo) return cmd_demo(o);
  } catch (const Exit& e) {
    return e.code;
  } catch (const IoError& e) {
    std::cerr << "dot: " << e.what << "\n";
    return kUsage;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "dot: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
