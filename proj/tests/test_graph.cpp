#include "doctest.h"

#include "oracles.hpp"
#include "selfsim/error.hpp"
#include "selfsim/graph.hpp"

using namespace selfsim;

namespace {

Graph ex310_graph() { return oracle::shipped("ex310.ss").graph(); }

Path p(const Graph& g, std::vector<std::string> names) {
  std::vector<EdgeId> ids;
  for (auto& n : names) ids.push_back(*g.find_edge(n));
  return make_path(g, ids);
}

}  // namespace

TEST_SUITE("graph") {
  TEST_CASE("ex310 structure") {
    const auto g = ex310_graph();
    const auto r = validate_graph(g);
    CHECK(r.no_sources);
    CHECK(r.strongly_connected);
    CHECK(r.finite);
    CHECK(g.source(*g.find_edge("2")) == *g.find_vertex("w"));
    CHECK(g.range(*g.find_edge("2")) == *g.find_vertex("v"));
  }

  TEST_CASE("single vertex without edges has a source") {
    const auto g = Graph::build({"v"}, {});
    CHECK_FALSE(validate_graph(g).no_sources);
  }

  TEST_CASE("basilica graph is not strongly connected") {
    // Only edge 2 joins the two vertices, and it points from v to w.
    const auto g = oracle::shipped("basilica.ss").graph();
    const auto r = validate_graph(g);
    CHECK(r.no_sources);
    CHECK_FALSE(r.strongly_connected);
  }

  TEST_CASE("primitive") {
    CHECK(validate_graph(ex310_graph()).primitive);
    const auto two_cycle = Graph::build({"v", "w"}, {{"x", "v", "w"}, {"y", "w", "v"}});
    CHECK(validate_graph(two_cycle).strongly_connected);
    CHECK_FALSE(validate_graph(two_cycle).primitive);
  }

  TEST_CASE("concat follows the function-composition order") {
    const auto g = ex310_graph();
    CHECK(concat(g, p(g, {"3"}), p(g, {"1"})) == p(g, {"3", "1"}));
    const auto e = empty_path(*g.find_vertex("v"));
    CHECK(concat(g, e, p(g, {"1", "2"})) == p(g, {"1", "2"}));
    CHECK_THROWS_AS(concat(g, p(g, {"1"}), p(g, {"3"})), Error);
    try {
      concat(g, p(g, {"1"}), p(g, {"3"}));
    } catch (const Error& err) {
      CHECK(err.code() == ErrorCode::NonComposable);
    }
  }

  TEST_CASE("enumerate") {
    const auto g = ex310_graph();
    const auto e1 = enumerate_paths(g, 1);
    REQUIRE(e1.size() == 4);
    CHECK(format_path(g, e1[0]) == "1");
    CHECK(format_path(g, e1[3]) == "4");
    CHECK(enumerate_paths(g, 0).size() == 2);
    for (std::size_t n = 1; n <= 8; ++n) CHECK(enumerate_paths(g, n).size() == (std::size_t{1} << (n + 1)));
    const auto v2 = enumerate_paths(g, 2, *g.find_vertex("w"));
    for (const auto& q : v2) CHECK(range_of(g, q) == *g.find_vertex("w"));
  }

  TEST_CASE("build errors") {
    auto code = [](auto f) {
      try {
        f();
      } catch (const Error& e) {
        return e.code();
      }
      return ErrorCode::InvalidArgument;
    };
    CHECK(code([] { Graph::build({"v", "v"}, {}); }) == ErrorCode::DuplicateId);
    CHECK(code([] { Graph::build({"v"}, {{"1", "v", "w"}}); }) == ErrorCode::DanglingEndpoint);
    CHECK(code([] { Graph::build({"v"}, {{"1", "v", "v"}, {"1", "v", "v"}}); }) == ErrorCode::DuplicateId);
  }
}
