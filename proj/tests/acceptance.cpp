// One PASS/FAIL line per acceptance criterion. Exit status is non-zero when
// any criterion fails, unless it is listed with --known-fail.
#define DOCTEST_CONFIG_IMPLEMENT
#include "doctest.h"

#include <chrono>
#include <cstring>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "oracles.hpp"
#include "selfsim/dynamics.hpp"
#include "selfsim/error.hpp"
#include "selfsim/ktheory.hpp"
#include "selfsim/schreier.hpp"

using namespace selfsim;

namespace {

// Tolerances.
constexpr double kAc1Seconds = 1e-3;
constexpr double kAc2Seconds = 1.0;
constexpr double kAc4Seconds = 5.0;
constexpr double kAc6Seconds = 0.1;
constexpr std::size_t kAc4Levels = 10;
constexpr std::size_t kAc7Fuzzed = 50;
constexpr std::size_t kAc7Depth = 10;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(double s) {
  std::ostringstream o;
  o.precision(3);
  o << s * 1000 << " ms";
  return o.str();
}

Verdict ac1() {
  const auto a = oracle::shipped("ex310.ss");
  ActionEngine e(a);
  const ClassId g = e.canonical(parse_element(a, "a"));
  const Path p = parse_finite_path(a.graph(), "2.4.2.3.1.2");
  double best = 1e9;
  std::string image;
  for (int k = 0; k < 50; ++k) {
    const auto t0 = Clock::now();
    const Path q = e.act(g, p);
    best = std::min(best, seconds_since(t0));
    image = format_path(a.graph(), q);
  }
  return {image == "3.2.3.1.1.2" && best < kAc1Seconds, "a . 2.4.2.3.1.2 = " + image + " in " + fmt(best)};
}

// Nucleus states matched one-to-one against `expected` under equal().
bool matches(ActionEngine& e, const Automaton& a, const Nucleus& n, const std::vector<std::string>& expected) {
  if (n.states.size() != expected.size()) return false;
  std::set<std::size_t> used;
  for (ClassId c : n.states) {
    bool hit = false;
    for (std::size_t i = 0; i < expected.size() && !hit; ++i) {
      if (used.count(i)) continue;
      if (e.equal(e.element(c), parse_element(a, expected[i]))) {
        used.insert(i);
        hit = true;
      }
    }
    if (!hit) return false;
  }
  return true;
}

Verdict ac2() {
  std::ostringstream d;
  bool pass = true;
  {
    const auto t0 = Clock::now();
    const auto a = oracle::shipped("ex310.ss");
    ActionEngine e(a);
    auto r = compute_nucleus(e);
    const double t = seconds_since(t0);
    auto* n = std::get_if<Nucleus>(&r);
    const bool ok = n && matches(e, a, *n, {"v", "w", "a", "b", "a^-1", "b^-1"}) && t < kAc2Seconds;
    pass &= ok;
    d << "ex310 " << (n ? n->states.size() : 0) << " states (" << fmt(t) << ")";
  }
  {
    const auto t0 = Clock::now();
    const auto a = oracle::shipped("basilica.ss");
    ActionEngine e(a);
    auto r = compute_nucleus(e);
    const double t = seconds_since(t0);
    auto* n = std::get_if<Nucleus>(&r);
    bool ok = n && n->states.size() == 12 && t < kAc2Seconds;
    if (n) {
      ok = ok && n->contains(e.canonical(parse_element(a, "b a"))) && n->contains(e.canonical(parse_element(a, "c a")));
      d << "; basilica " << n->states.size() << " states, want 12 (" << fmt(t) << ")";
      if (n->states.size() != 12) {
        d << ", extra:";
        for (ClassId c : n->states) {
          const auto name = e.name(c);
          if (name == "b c^-1" || name == "c b^-1") d << " " << name;
        }
      }
    } else {
      d << "; basilica not contracting";
    }
    pass &= ok;
  }
  return {pass, d.str()};
}

Verdict ac3() {
  const auto a = oracle::shipped("ex310.ss");
  ActionEngine e(a);
  const Graph& g = a.graph();
  auto cls = [&](const char* s) { return e.canonical(parse_element(a, s)); };
  auto res = [&](const char* s, const char* edge) { return e.restrict_edge(cls(s), *g.find_edge(edge)); };
  const bool ok = res("a b", "3") == cls("v") && res("a b", "4") == cls("b a") && res("b a", "1") == cls("a") &&
                  res("b a", "2") == cls("b");
  return {ok, "(ab)|3 = " + e.name(res("a b", "3")) + ", (ab)|4 = " + e.name(res("a b", "4")) +
                  ", (ba)|1 = " + e.name(res("b a", "1")) + ", (ba)|2 = " + e.name(res("b a", "2"))};
}

// Isomorphic to a cycle on all vertices plus one unit loop per vertex.
bool cycle_with_loops(const ActionEngine& e, const SchreierGraph& gamma) {
  const std::size_t N = gamma.vertices.size();
  std::vector<int> loops(N, 0), degree(N, 0);
  std::set<std::pair<std::uint32_t, std::uint32_t>> pairs;
  for (const auto& x : gamma.edges) {
    if (x.from == x.to) {
      if (!e.is_unit(x.label)) return false;
      ++loops[x.from];
    } else {
      pairs.insert({std::min(x.from, x.to), std::max(x.from, x.to)});
    }
  }
  if (pairs.size() != N) return false;
  for (auto [u, v] : pairs) ++degree[u], ++degree[v];
  for (std::size_t i = 0; i < N; ++i)
    if (degree[i] != 2 || loops[i] != 1) return false;
  const auto dist = distances_from(gamma, 0);
  return std::none_of(dist.begin(), dist.end(), [](std::uint32_t d) { return d == kNoVertex; });
}

Verdict ac4() {
  const auto a = oracle::shipped("ex310.ss");
  ActionEngine e(a);
  // generators and their inverses; units supply the loops
  std::vector<ClassId> labels;
  for (const char* s : {"a", "b", "a^-1", "b^-1", "v", "w"}) labels.push_back(e.canonical(parse_element(a, s)));
  const auto t0 = Clock::now();
  bool ok = true;
  std::size_t bad = 0;
  for (std::size_t n = 1; n <= kAc4Levels; ++n) {
    const auto gamma = build_schreier(e, labels, n);
    const bool level_ok = gamma.vertices.size() == (std::size_t{1} << (n + 1)) && cycle_with_loops(e, gamma);
    if (!level_ok && !bad) bad = n;
    ok &= level_ok;
  }
  const double t = seconds_since(t0);
  std::string d = "levels 1.." + std::to_string(kAc4Levels) + " are cycles on |E^n| = 2^(n+1) vertices with a unit loop "
                  "at each (the drawn 4- and 8-cycles; 2^n undercounts them) in " + fmt(t);
  if (bad) d += ", level " + std::to_string(bad) + " is not";
  return {ok && t < kAc4Seconds, d};
}

Verdict ac5() {
  const auto a = oracle::shipped("ex310.ss");
  ActionEngine e(a);
  auto n = std::get<Nucleus>(compute_nucleus(e));
  const auto labels = default_generating_set(e, &n);
  const auto g2 = build_schreier(e, labels, 2);
  const auto p = project_psi(e, g2);
  const Graph& g = a.graph();
  const auto u = g2.index_of(parse_finite_path(g, "2.4"));
  const auto v = g2.index_of(parse_finite_path(g, "3.2"));
  const ClassId A = e.canonical(parse_element(a, "a"));
  for (std::size_t i = 0; i < g2.edges.size(); ++i) {
    const auto& x = g2.edges[i];
    if (x.label != A || std::minmax(x.from, x.to) != std::minmax(u, v)) continue;
    const auto& y = p.image.edges[p.edge[i]];
    const std::string img = format_path(g, p.image.vertices[y.from]) + " -" + e.name(y.label) + "- " +
                            format_path(g, p.image.vertices[y.to]);
    const bool ok = e.name(y.label) == "b" &&
                    std::minmax(y.from, y.to) == std::minmax(p.image.index_of(parse_finite_path(g, "4")),
                                                             p.image.index_of(parse_finite_path(g, "2")));
    return {ok, "psi(2.4 -a- 3.2) = " + img};
  }
  return {false, "no a-edge between 2.4 and 3.2"};
}

Verdict ac6() {
  const auto t0 = Clock::now();
  const IntMatrix A{{2, 1}, {2, 2}}, B{{1, 0}, {1, 1}};
  const auto spec = katsura_spec(A, B);
  const auto k = katsura_ktheory(A, B);
  const double t = seconds_since(t0);
  std::vector<std::string> rules;
  for (const auto& gen : spec.generators)
    for (const auto& r : gen.rules) {
      rules.push_back(gen.name + "." + r.edge + "=" + r.image);
      rules.push_back(gen.name + "|" + r.edge + "=" + oracle::join(r.restriction));
    }
  const std::vector<std::string> expected{"a.0=1", "a|0=v", "a.1=0", "a|1=a", "a.2=2", "a|2=w", "b.3=4", "b|3=v",
                                       "b.4=3", "b|4=a", "b.5=6", "b|5=w", "b.6=5", "b|6=b"};
  const bool ok = rules == expected && format_group(k.K0) == "Z" && format_group(k.K1) == "Z" && t < kAc6Seconds;
  return {ok, std::to_string(expected.size() / 2) + " rules (" + std::to_string(expected.size()) +
                  " equations) match, K0 = " + format_group(k.K0) + ", K1 = " + format_group(k.K1) + " in " +
                  fmt(t)};
}

// A non-unit nucleus state fixing a path of length `depth` with no unit restriction along it.
bool brute_force_irregular(const ActionEngine& e, const Nucleus& n, std::size_t depth) {
  const Graph& g = e.graph();
  for (ClassId h : n.non_units(e)) {
    std::vector<std::pair<ClassId, std::size_t>> stack{{h, 0}};
    // depth-first over fixed edges; states are restrictions, so paths are never stored
    while (!stack.empty()) {
      auto [c, d] = stack.back();
      stack.pop_back();
      if (d == depth) return true;
      for (EdgeId x : g.edges_into(e.dom(c))) {
        if (e.act_edge(c, x) != x) continue;
        const ClassId r = e.restrict_edge(c, x);
        if (!e.is_unit(r)) stack.push_back({r, d + 1});
      }
    }
  }
  return false;
}

Verdict ac7() {
  std::ostringstream d;
  bool ok = true;
  for (const char* name : {"ex310.ss", "basilica.ss"}) {
    const auto a = oracle::shipped(name);
    ActionEngine e(a);
    auto n = std::get<Nucleus>(compute_nucleus(e));
    const bool r = is_regular(e, n).regular;
    ok &= r;
    d << name << (r ? " regular" : " irregular") << "; ";
  }
  std::size_t implications = 0, agree = 0, fuzzed = 0, irregular = 0;
  auto check_implication = [&](ActionEngine& e, const Nucleus& n) {
    const bool r = is_regular(e, n).regular;
    const bool h = is_hausdorff(e, n).hausdorff;
    implications += (!r || h);
    return r;
  };
  std::size_t total = 0;
  for (const char* name : {"ex310.ss", "basilica.ss", "odometer.ss", "katsura.ss"}) {
    const auto a = oracle::shipped(name);
    ActionEngine e(a);
    auto n = std::get<Nucleus>(compute_nucleus(e));
    check_implication(e, n);
    ++total;
  }
  std::mt19937 rng(7031);
  while (fuzzed < kAc7Fuzzed) {
    const auto a = build_automaton(oracle::random_spec(rng, 0.3));
    ActionEngine e(a);
    auto r = compute_nucleus(e, NucleusBounds{400, 32});
    auto* n = std::get_if<Nucleus>(&r);
    if (!n || n->non_units(e).size() > kAc7Depth) continue;
    ++fuzzed;
    ++total;
    const bool reg = check_implication(e, *n);
    const bool brute = !brute_force_irregular(e, *n, kAc7Depth);
    agree += (reg == brute);
    irregular += !reg;
  }
  ok &= implications == total && agree == kAc7Fuzzed;
  d << "regular => hausdorff on " << implications << "/" << total << "; brute force agrees on " << agree << "/"
    << kAc7Fuzzed << " fuzzed (" << irregular << " irregular)";
  return {ok, d.str()};
}

Verdict ac8() {
  doctest::Context ctx;
  ctx.setOption("test-suite", "properties");
  ctx.setOption("no-intro", true);
  ctx.setOption("no-version", true);
  std::ostringstream sink;
  ctx.setCout(&sink);
  const int rc = ctx.run();
  std::string last;
  std::istringstream lines(sink.str());
  for (std::string l; std::getline(lines, l);)
    if (l.find("test cases:") != std::string::npos) last = l;
  const std::string prefix = "[doctest] ";
  if (last.rfind(prefix, 0) == 0) last.erase(0, prefix.size());
  return {rc == 0, "property suite " + last};
}

Verdict ac9() {
  const auto a = oracle::shipped("noncontracting.ss");
  std::string first;
  bool ok = true;
  for (int run = 0; run < 3; ++run) {
    ActionEngine e(a);
    auto r = compute_nucleus(e, NucleusBounds{2000, 64});
    auto* f = std::get_if<NotContractingWithinBound>(&r);
    if (!f) return {false, "returned a nucleus"};
    const std::string s = f->bound + " | " + f->detail;
    if (run == 0) first = s;
    ok &= s == first;
  }
  return {ok, "NotContractingWithinBound (" + first + "), identical over 3 runs"};
}

}  // namespace

int main(int argc, char** argv) {
  std::set<std::string> known;
  for (int i = 1; i < argc; ++i)
    if (std::strcmp(argv[i], "--known-fail") == 0 && i + 1 < argc) known.insert(argv[++i]);

  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"AC1", ac1}, {"AC2", ac2}, {"AC3", ac3}, {"AC4", ac4}, {"AC5", ac5},
      {"AC6", ac6}, {"AC7", ac7}, {"AC8", ac8}, {"AC9", ac9}};
  int unexpected = 0;
  for (const auto& [id, run] : criteria) {
    Verdict v;
    try {
      v = run();
    } catch (const std::exception& ex) {
      v = {false, std::string("exception: ") + ex.what()};
    }
    std::cout << id << " " << (v.pass ? "PASS" : "FAIL") << "  " << v.detail;
    if (known.count(id)) std::cout << (v.pass ? "  [listed as known failure, now passing]" : "  [known failure]");
    std::cout << std::endl;
    if (v.pass == static_cast<bool>(known.count(id))) ++unexpected;
  }
  return unexpected ? 1 : 0;
}
