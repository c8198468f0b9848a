// SPDX-License-Identifier: Apache-2.0
//
// Regenerates the derived parts of the corpus:
//
//   programs/NAME.deriv.json  bounded search on programs/NAME.dot at the type
//                             named by its "# type:" line, depth 8
//   rules/cover_NN.deriv.json a small set of derivations that together use
//                             every registered rule
//
// Output is deterministic for a fixed seed.
//
//   dot_corpus_gen CORPUS_DIR [--seed N]

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "core/derivation_io.hpp"
#include "core/rules.hpp"
#include "core/search.hpp"
#include "core/surface.hpp"
#include "core/transform.hpp"
#include "gen.hpp"

namespace fs = std::filesystem;
using namespace dot;

namespace {

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& p, const std::string& s) {
  std::ofstream out(p, std::ios::binary);
  out << s;
}

std::string type_line(const std::string& src) {
  std::istringstream in(src);
  for (std::string line; std::getline(in, line);)
    if (line.rfind("# type:", 0) == 0) return line.substr(7);
  return "";
}

std::set<std::string> rules_of(const Derivation& d) {
  std::vector<std::string> rs;
  collect_rules(d, rs);
  return {rs.begin(), rs.end()};
}

bool is_var_or_value(const Term& t) { return t.is<terms::Ref>() || t.is<terms::Val>(); }

int regen_programs(const fs::path& dir, std::vector<Derivation>& out) {
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.path().extension() == ".dot") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  int failures = 0;
  for (const auto& f : files) {
    std::string src = read_file(f);
    std::string ty = type_line(src);
    Scope scope;
    Term t = parse_term(src, scope);
    auto d = ty.empty() ? bounded_search({}, t, std::nullopt) : bounded_search({}, t, parse_type(ty, scope));
    fs::path target = f;
    target.replace_extension(".deriv.json");
    if (!d || !is_valid(*d)) {
      std::cerr << f.filename().string() << ": no derivation at depth 8\n";
      ++failures;
      continue;
    }
    write_file(target, write_derivation(*d) + "\n");
    out.push_back(*d);
  }
  return failures;
}

// Candidate pool: the programs, generated general derivations, and their
// tight and invertible images.
std::vector<Derivation> candidates(std::vector<Derivation> pool, std::uint64_t seed) {
  gen::Rng r(seed);
  std::size_t base = pool.size();
  for (int i = 0; i < 4000; ++i) {
    Context g = gen::inert_context(r, 1 + static_cast<int>(r.below(4)));
    auto d = i % 2 ? gen::typing(r, g, 5) : gen::var_or_value_typing(r, g, 5);
    if (i % 5 == 4) {
      Type s = gen::wf_type(r, g, 2);
      d = r.chance(0.5) ? gen::sub_up(r, g, s, 4) : gen::sub_down(r, g, s, 4);
    }
    if (d && is_valid(*d)) pool.push_back(*d);
  }
  std::size_t n = pool.size();
  for (std::size_t i = base; i < n; ++i) {
    Derivation d = pool[i];
    Context g = d.conclusion.ctx;
    Derivation t = general_to_tight(g, d);
    pool.push_back(t);
    if (d.conclusion.kind == JudgmentKind::Typ && is_var_or_value(d.conclusion.term))
      pool.push_back(tight_to_invertible(g, t));
  }
  return pool;
}

// Greedy set cover; ties go to the smaller derivation, then the earlier one.
std::vector<Derivation> cover(const std::vector<Derivation>& pool, std::set<std::string>& missing) {
  for (const auto& s : rule_registry()) missing.insert(s.name);
  std::vector<Derivation> chosen;
  while (!missing.empty()) {
    std::size_t best = pool.size(), best_gain = 0, best_size = 0;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      std::size_t gain = 0;
      for (const auto& x : rules_of(pool[i])) gain += missing.count(x);
      std::size_t size = node_count(pool[i]);
      if (gain > best_gain || (gain == best_gain && gain > 0 && size < best_size)) {
        best = i, best_gain = gain, best_size = size;
      }
    }
    if (best == pool.size()) break;
    for (const auto& x : rules_of(pool[best])) missing.erase(x);
    chosen.push_back(pool[best]);
  }
  return chosen;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: dot_corpus_gen CORPUS_DIR [--seed N]\n";
    return 2;
  }
  fs::path root = argv[1];
  std::uint64_t seed = 20240611;
  if (argc == 4 && std::string(argv[2]) == "--seed") seed = std::stoull(argv[3]);

  std::vector<Derivation> programs;
  int failures = regen_programs(root / "programs", programs);

  std::set<std::string> missing;
  auto chosen = cover(candidates(programs, seed), missing);
  fs::path rules_dir = root / "rules";
  fs::create_directories(rules_dir);
  for (const auto& e : fs::directory_iterator(rules_dir))
    if (e.path().string().ends_with(".deriv.json")) fs::remove(e.path());
  for (std::size_t i = 0; i < chosen.size(); ++i) {
    std::string num = std::to_string(i + 1);
    if (num.size() < 2) num.insert(0, "0");
    write_file(rules_dir / ("cover_" + num + ".deriv.json"), write_derivation(chosen[i]) + "\n");
  }
  std::cout << programs.size() << " programs, " << chosen.size() << " coverage derivations\n";
  for (const auto& m : missing) std::cout << "uncovered: " << m << "\n";
  return failures || !missing.empty() ? 1 : 0;
}
