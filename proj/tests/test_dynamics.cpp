#include "doctest.h"

#include "oracles.hpp"
#include "selfsim/dynamics.hpp"
#include "selfsim/error.hpp"

using namespace selfsim;

namespace {

struct Fixture {
  explicit Fixture(const std::string& name)
      : a(oracle::shipped(name)), e(a), n(std::get<Nucleus>(compute_nucleus(e))) {}
  const Graph& g() const { return a.graph(); }
  LeftInfinitePath L(const char* s) const { return parse_left_path(g(), s); }
  RightInfinitePath R(const char* s) const { return parse_right_path(g(), s); }
  BiInfinitePath B(const char* s) const { return parse_bi_path(g(), s); }
  ClassId el(const char* s) { return e.canonical(parse_element(a, s)); }
  Automaton a;
  ActionEngine e;
  Nucleus n;
};

Automaton from_text(const std::string& s) { return build_automaton(parse_spec(s)); }

}  // namespace

TEST_SUITE("dynamics") {
  TEST_CASE("ae on ex310") {
    Fixture f("ex310.ss");
    const auto x = f.L("(1)^inf");
    auto r = ae_equivalent(f.e, f.n, x, x);
    CHECK(r.equivalent);
    REQUIRE(r.witness);
    for (ClassId c : r.witness->run) CHECK(f.e.is_unit(c));
    CHECK(ae_class(f.e, f.n, x) == std::vector<LeftInfinitePath>{x});
    CHECK_FALSE(ae_equivalent(f.e, f.n, x, f.L("(1)^inf . 2.4")).equivalent);
    CHECK_FALSE(ae_equivalent(f.e, f.n, x, f.L("(2.3)^inf")).equivalent);
  }

  TEST_CASE("classes are bounded and contain x") {
    Fixture f("ex310.ss");
    for (const char* s : {"(2.3)^inf", "(2.4)^inf . 2", "(1)^inf . 2.3", "(1.2.3)^inf . 1", "(1.1.2.4)^inf . 2.3.1"}) {
      const auto x = f.L(s);
      const auto cls = ae_class(f.e, f.n, x);
      CHECK(cls.size() <= f.n.states.size());
      CHECK(std::find(cls.begin(), cls.end(), x) != cls.end());
      for (const auto& y : cls) CHECK(ae_equivalent(f.e, f.n, x, y).equivalent);
    }
  }

  TEST_CASE("odometer: the two fixed points of the adding machine are identified") {
    Fixture f("odometer.ss");
    CHECK(ae_equivalent(f.e, f.n, f.L("(0)^inf"), f.L("(1)^inf")).equivalent);
    CHECK(ae_class(f.e, f.n, f.L("(0)^inf")).size() == 2);
  }

  TEST_CASE("shift") {
    Fixture f("ex310.ss");
    CHECK(shift_class(f.g(), f.L("(1)^inf")) == f.L("(1)^inf"));
    CHECK(format(f.g(), shift_class(f.g(), f.L("(2.3)^inf"))) == "(3.2)^inf");
  }

  TEST_CASE("bi-infinite") {
    Fixture f("ex310.ss");
    const auto x = f.B("(1)^inf . 2 . (3.2)^inf @ 0");
    CHECK(ae_equivalent_bi(f.e, f.n, x, x));
    Fixture o("odometer.ss");
    CHECK(ae_equivalent_bi(o.e, o.n, o.B("(0)^inf . (0)^inf @ 0"), o.B("(1)^inf . (1)^inf @ 0")));
    CHECK_FALSE(ae_equivalent_bi(o.e, o.n, o.B("(0)^inf . (0)^inf @ 0"), o.B("(1)^inf . (0)^inf @ 0")));
  }

  TEST_CASE("regular and hausdorff on shipped automata") {
    for (const char* name : {"ex310.ss", "basilica.ss", "odometer.ss", "katsura.ss"}) {
      Fixture f(name);
      CHECK(is_regular(f.e, f.n).regular);
      CHECK(is_hausdorff(f.e, f.n).hausdorff);
    }
  }

  TEST_CASE("a loop that escapes to a unit breaks Hausdorffness") {
    // g fixes e with g|_e = g, fixes f with a unit restriction, swaps k and l.
    const auto a = from_text(
        "[graph]\nvertex v\nedge e : v -> v\nedge f : v -> v\nedge k : v -> v\nedge l : v -> v\n"
        "[generator g : v -> v]\ne -> e | g\nf -> f | v\nk -> l | v\nl -> k | v\n");
    ActionEngine e(a);
    auto n = std::get<Nucleus>(compute_nucleus(e));
    const auto reg = is_regular(e, n);
    CHECK_FALSE(reg.regular);
    REQUIRE(reg.witness);
    CHECK(format(a.graph(), reg.witness->y) == "(e)^inf");
    const auto h = is_hausdorff(e, n);
    CHECK_FALSE(h.hausdorff);
    REQUIRE(h.escape);
    CHECK(format_path(a.graph(), *h.escape) == "f");
  }

  TEST_CASE("a loop with no escape is irregular but Hausdorff") {
    // g.e = e, g|_e = g; g swaps f and k.
    const auto a = from_text(
        "[graph]\nvertex v\nedge e : v -> v\nedge f : v -> v\nedge k : v -> v\n"
        "[generator g : v -> v]\ne -> e | g\nf -> k | v\nk -> f | v\n");
    ActionEngine e(a);
    auto n = std::get<Nucleus>(compute_nucleus(e));
    CHECK_FALSE(is_regular(e, n).regular);
    CHECK(is_hausdorff(e, n).hausdorff);
  }

  TEST_CASE("recurrence") {
    Fixture o("odometer.ss");
    auto r = check_recurrent(o.e, 4);
    CHECK(r.recurrent);
    CHECK(r.missing.empty());
    Fixture f("ex310.ss");
    auto r2 = check_recurrent(f.e, 6);
    MESSAGE("ex310 recurrence at depth 6: " << std::string(r2.recurrent ? "recurrent" : "inconclusive"));
    Fixture b("basilica.ss");
    try {
      check_recurrent(b.e, 6);
      FAIL("expected NotStronglyConnected");
    } catch (const Error& err) {
      CHECK(err.code() == ErrorCode::NotStronglyConnected);
    }
  }

  TEST_CASE("germs") {
    Fixture f("ex310.ss");
    const auto x = f.R("(1)^inf");
    const ClassId v = f.el("v");
    CHECK(germ_equal(f.e, make_germ(f.e, x, 2, v, 2, x), make_germ(f.e, x, 5, v, 5, x)));
    CHECK_FALSE(germ_equal(f.e, make_germ(f.e, x, 2, v, 2, x), make_germ(f.e, x, 3, v, 2, x)));
    // a.(1^inf) = 4 1^inf and a|_1 = v, so [4 1^inf, 0, a, 0, 1^inf] = [4 1^inf, 1, v, 1, 1^inf].
    const auto y = f.R("4 . (1)^inf");
    CHECK(germ_equal(f.e, make_germ(f.e, y, 0, f.el("a"), 0, x), make_germ(f.e, y, 1, v, 1, x)));
    CHECK_THROWS_AS(make_germ(f.e, x, 0, f.el("a"), 0, x), Error);
  }

  TEST_CASE("stable and unstable") {
    Fixture f("ex310.ss");
    const auto x = f.B("(1)^inf . 2 . (3.2)^inf @ 0");
    CHECK(stable_equivalent(f.e, f.n, x, x));
    const auto y = f.B("(1)^inf . 2.3.2.4 . (1)^inf @ 0");
    CHECK(stable_equivalent(f.e, f.n, x, y));
    const auto u = unstable_equivalent(f.e, f.n, x, x);
    REQUIRE(u);
    CHECK(u->M == 0);
    CHECK(f.e.is_unit(u->g));
    // right tails 1 1^inf and 4 1^inf: a.1 = 4, a|_1 = v
    const auto p = f.B("(2.3)^inf . 1 . (1)^inf @ 1");
    const auto q = f.B("(3.2)^inf . 4 . (1)^inf @ 1");
    const auto w = unstable_equivalent(f.e, f.n, p, q);
    REQUIRE(w);
    CHECK(w->M == 0);
    CHECK(f.e.name(w->g) == "a");
    const auto back = unstable_equivalent(f.e, f.n, q, p);
    REQUIRE(back);
    CHECK(f.e.name(back->g) == "a^-1");
  }

  TEST_CASE("unstable family contains N and N^2") {
    Fixture f("ex310.ss");
    const auto fam = unstable_family(f.e, f.n);
    for (ClassId a : f.n.states)
      for (ClassId b : f.n.states)
        if (f.e.dom(a) == f.e.cod(b)) CHECK(std::find(fam.begin(), fam.end(), f.e.product(a, b)) != fam.end());
    for (std::size_t i = 0; i < f.n.states.size(); ++i) CHECK(fam[i] == f.n.states[i]);
  }
}
