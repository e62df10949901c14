#include "doctest.h"

#include <set>

#include "oracles.hpp"
#include "selfsim/error.hpp"
#include "selfsim/nucleus.hpp"

using namespace selfsim;

namespace {

std::vector<std::string> state_names(const ActionEngine& e, const Nucleus& n) {
  std::vector<std::string> out;
  for (ClassId c : n.states) out.push_back(e.name(c));
  return out;
}

}  // namespace

TEST_SUITE("nucleus") {
  TEST_CASE("ex310") {
    const auto a = oracle::shipped("ex310.ss");
    ActionEngine e(a);
    auto r = compute_nucleus(e);
    auto* n = std::get_if<Nucleus>(&r);
    REQUIRE(n);
    CHECK(state_names(e, *n) == std::vector<std::string>{"v", "w", "a", "a^-1", "b", "b^-1"});
    CHECK_FALSE(certificate_failure(e, n->states).has_value());
    CHECK(is_core_shaped(e, n->states));
    CHECK(compute_Rk(e, *n, 1) == 0);
    CHECK(compute_Rk(e, *n, 2) == 2);
    CHECK(compute_Rk(e, *n, 3) == 2);
    CHECK(n->contains(e.canonical(parse_element(a, "a"))));
    CHECK_FALSE(n->contains(e.canonical(parse_element(a, "b a"))));
  }

  TEST_CASE("basilica") {
    const auto a = oracle::shipped("basilica.ss");
    ActionEngine e(a);
    auto r = compute_nucleus(e);
    auto* n = std::get_if<Nucleus>(&r);
    REQUIRE(n);
    const auto names = state_names(e, *n);
    const std::set<std::string> got(names.begin(), names.end());
    for (const char* s : {"v", "w", "a", "b", "c", "a^-1", "b^-1", "c^-1", "b a", "c a"}) CHECK(got.count(s));
    CHECK(n->contains(e.inverse(e.canonical(parse_element(a, "b a")))));
    // b c^-1 sits on its own restriction cycle: (b c^-1)|_0 = c b^-1, (c b^-1)|_1 = b c^-1.
    const ClassId bc = e.canonical(parse_element(a, "b c^-1"));
    const ClassId cb = e.canonical(parse_element(a, "c b^-1"));
    CHECK(e.restrict_edge(bc, *a.graph().find_edge("0")) == cb);
    CHECK(e.restrict_edge(cb, *a.graph().find_edge("1")) == bc);
    CHECK_FALSE(e.is_unit(bc));
    CHECK(n->contains(bc));
    CHECK(n->states.size() == 14);
  }

  TEST_CASE("odometer") {
    const auto a = oracle::shipped("odometer.ss");
    ActionEngine e(a);
    auto n = std::get<Nucleus>(compute_nucleus(e));
    CHECK(state_names(e, n) == std::vector<std::string>{"v", "a", "a^-1"});
    CHECK(compute_Rk(e, n, 2) == 1);
  }

  TEST_CASE("limit restrictions") {
    const auto a = oracle::shipped("ex310.ss");
    ActionEngine e(a);
    const auto lim = limit_restrictions(e, e.canonical(parse_element(a, "b a")));
    std::set<std::string> got;
    for (ClassId c : lim) got.insert(e.name(c));
    CHECK(got == std::set<std::string>{"v", "w", "a", "b"});
  }

  TEST_CASE("trivial action has only units") {
    const auto a = build_automaton(parse_spec("[graph]\nvertex v\nvertex w\nedge 1 : v -> w\nedge 2 : w -> v\n"));
    ActionEngine e(a);
    auto n = std::get<Nucleus>(compute_nucleus(e));
    CHECK(n.states.size() == 2);
  }

  TEST_CASE("non-contracting is reported, deterministically") {
    const auto a = oracle::shipped("noncontracting.ss");
    std::string first;
    for (int run = 0; run < 3; ++run) {
      ActionEngine e(a, EngineBounds{2000, 1024});
      auto r = compute_nucleus(e, NucleusBounds{2000, 64});
      auto* f = std::get_if<NotContractingWithinBound>(&r);
      REQUIRE(f);
      if (run == 0) first = f->bound + f->detail;
      CHECK(first == f->bound + f->detail);
    }
  }

  TEST_CASE("exports") {
    const auto a = oracle::shipped("ex310.ss");
    ActionEngine e(a);
    auto n = std::get<Nucleus>(compute_nucleus(e));
    compute_Rk(e, n, 2);
    const auto j = nucleus_json(e, n);
    CHECK(j.find("\"size\": 6") != std::string::npos);
    CHECK(j.find("\"R\"") != std::string::npos);
    CHECK(nucleus_dot(e, n).find("digraph") != std::string::npos);
  }

  TEST_CASE("discerning path") {
    const auto a = oracle::shipped("basilica.ss");
    ActionEngine e(a);
    auto n = std::get<Nucleus>(compute_nucleus(e));
    const auto mu = discerning_path(e, n);
    REQUIRE(mu.has_value());
    for (ClassId c : n.states) {
      if (e.dom(c) != range_of(a.graph(), *mu) || e.act(c, *mu) != *mu) continue;
      CHECK(e.is_unit(e.restrict(c, *mu)));
    }
  }
}
