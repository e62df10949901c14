#include "doctest.h"

#include "oracles.hpp"
#include "selfsim/error.hpp"

using namespace selfsim;

namespace {

const char* kGraph = R"([graph]
vertex v
vertex w
edge 1 : v -> v
edge 2 : w -> v
edge 3 : v -> w
edge 4 : v -> w
)";

Path path(const Automaton& a, const char* s) { return parse_finite_path(a.graph(), s); }
Element el(const Automaton& a, const char* s) { return parse_element(a, s); }
std::string fmt(const Automaton& a, const Path& p) { return format_path(a.graph(), p); }

std::string validation_message(const std::string& gens) {
  try {
    build_automaton(parse_spec(std::string(kGraph) + gens));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ValidationError) return e.what();
    return "other: " + std::string(e.what());
  }
  return "";
}

}  // namespace

TEST_SUITE("automaton") {
  TEST_CASE("shipped automata validate") {
    CHECK_NOTHROW(oracle::shipped("ex310.ss"));
    CHECK_NOTHROW(oracle::shipped("basilica.ss"));
    CHECK_NOTHROW(oracle::shipped("odometer.ss"));
    CHECK_NOTHROW(oracle::shipped("katsura.ss"));
  }

  TEST_CASE("violations") {
    auto msg = validation_message("[generator a : v -> w]\n1 -> 4 | v\n2 -> 4 | b\n[generator b : w -> v]\n3 -> 1 | v\n4 -> 2 | a\n");
    CHECK(msg.find("NotBijectiveOnEdges") != std::string::npos);
    msg = validation_message("[generator a : v -> w]\n1 -> 4 | v\n[generator b : w -> v]\n3 -> 1 | v\n4 -> 2 | a\n");
    CHECK(msg.find("MissingRule") != std::string::npos);
    msg = validation_message("[generator a : v -> w]\n1 -> 4 | w\n2 -> 3 | b\n[generator b : w -> v]\n3 -> 1 | v\n4 -> 2 | a\n");
    CHECK(msg.find("RestrictionVertexMismatch") != std::string::npos);
    msg = validation_message("[generator a : v -> w]\n1 -> 4 | v\n2 -> 3 | b\n3 -> 3 | v\n[generator b : w -> v]\n3 -> 1 | v\n4 -> 2 | a\n");
    CHECK(msg.find("RuleOutsideDomain") != std::string::npos);
  }

  TEST_CASE("action on finite paths") {
    const auto a = oracle::shipped("ex310.ss");
    CHECK(fmt(a, act(a, el(a, "a"), path(a, "2.4.2.3.1.2"))) == "3.2.3.1.1.2");
    CHECK(fmt(a, act(a, el(a, "b"), path(a, "3.2.3.1"))) == "1.2.3.1");
    CHECK(fmt(a, act(a, el(a, "v"), path(a, "1.2.4"))) == "1.2.4");
    CHECK(fmt(a, act(a, el(a, "b a"), path(a, "1"))) == "2");
    CHECK_THROWS_AS(act(a, el(a, "a"), path(a, "3")), Error);
  }

  TEST_CASE("inverse rules") {
    const auto a = oracle::shipped("ex310.ss");
    const auto ainv = inverse(a, el(a, "a"));
    const auto s4 = act_edge(a, ainv, *a.graph().find_edge("4"));
    CHECK(a.graph().edge_name(s4.image) == "1");
    CHECK(a.format(s4.restriction) == "v");
    const auto s3 = act_edge(a, ainv, *a.graph().find_edge("3"));
    CHECK(a.graph().edge_name(s3.image) == "2");
    CHECK(a.format(s3.restriction) == "b^-1");
    CHECK(a.format(inverse(a, el(a, "v"))) == "v");
  }

  TEST_CASE("compose and restrict at word level") {
    const auto a = oracle::shipped("ex310.ss");
    CHECK_THROWS_AS(compose(a, el(a, "a"), el(a, "a")), Error);
    CHECK(a.format(restrict(a, el(a, "a b"), path(a, "3"))) == "v");
    CHECK(a.format(restrict(a, el(a, "a b"), path(a, "4"))) == "b a");
    CHECK(a.format(restrict(a, el(a, "b a"), path(a, "1"))) == "a");
    CHECK(a.format(restrict(a, el(a, "b a"), path(a, "2"))) == "b");
    CHECK(a.format(restrict(a, el(a, "a"), empty_path(*a.graph().find_vertex("v")))) == "a");
  }

  TEST_CASE("generators are renumbered by name") {
    const auto spec = parse_spec(std::string(kGraph) +
                                 "[generator b : w -> v]\n3 -> 1 | v\n4 -> 2 | a\n[generator a : v -> w]\n1 -> 4 | v\n2 -> 3 | b\n");
    const auto a = build_automaton(spec);
    CHECK(a.generator(0).name == "a");
    CHECK(fmt(a, act(a, el(a, "a"), path(a, "2.4.2.3.1.2"))) == "3.2.3.1.1.2");
  }
}
