#include "doctest.h"

#include <set>

#include "json.hpp"
#include "oracles.hpp"
#include "selfsim/error.hpp"
#include "selfsim/schreier.hpp"

using namespace selfsim;

namespace {

struct Fixture {
  explicit Fixture(const std::string& name)
      : a(oracle::shipped(name)), e(a), n(std::get<Nucleus>(compute_nucleus(e))), labels(default_generating_set(e, &n)) {}
  Path P(const char* s) const { return parse_finite_path(a.graph(), s); }
  Automaton a;
  ActionEngine e;
  Nucleus n;
  std::vector<ClassId> labels;
};

std::string edge_text(const Fixture& f, const SchreierGraph& g, const SchreierEdge& x) {
  return format_path(f.a.graph(), g.vertices[x.from]) + " -" + f.e.name(x.label) + "- " +
         format_path(f.a.graph(), g.vertices[x.to]);
}

std::set<std::string> proper_edges(const Fixture& f, const SchreierGraph& g) {
  std::set<std::string> out;
  for (const auto& x : g.edges)
    if (x.from != x.to) out.insert(edge_text(f, g, x));
  return out;
}

// Non-loop edges, as unordered vertex pairs, form one cycle through every vertex.
bool single_cycle(const SchreierGraph& g) {
  std::set<std::pair<std::uint32_t, std::uint32_t>> pairs;
  for (const auto& x : g.edges)
    if (x.from != x.to) pairs.insert({std::min(x.from, x.to), std::max(x.from, x.to)});
  std::vector<int> degree(g.vertices.size(), 0);
  for (auto [u, v] : pairs) ++degree[u], ++degree[v];
  for (int d : degree)
    if (d != 2) return false;
  const auto dist = distances_from(g, 0);
  return std::none_of(dist.begin(), dist.end(), [](std::uint32_t d) { return d == kNoVertex; });
}

}  // namespace

TEST_SUITE("schreier") {
  TEST_CASE("generating set") {
    Fixture f("ex310.ss");
    std::vector<std::string> names;
    for (ClassId c : f.labels) names.push_back(f.e.name(c));
    CHECK(names.size() == 6);
    for (ClassId s : f.n.states) CHECK(std::find(f.labels.begin(), f.labels.end(), s) != f.labels.end());
    bool added = true;
    close_generating_set(f.e, f.labels, &added);
    CHECK_FALSE(added);
  }

  TEST_CASE("level one of ex310") {
    Fixture f("ex310.ss");
    const auto g1 = build_schreier(f.e, f.labels, 1);
    CHECK(g1.vertices.size() == 4);
    CHECK(proper_edges(f, g1) == std::set<std::string>{"1 -a- 4", "2 -a- 3", "3 -b- 1", "4 -b- 2"});
    CHECK(single_cycle(g1));
    std::size_t loops = 0;
    for (const auto& x : g1.edges) loops += (x.from == x.to);
    CHECK(loops == 4);
  }

  TEST_CASE("level zero joins d(a) and c(a)") {
    Fixture f("ex310.ss");
    const auto g0 = build_schreier(f.e, f.labels, 0);
    CHECK(g0.vertices.size() == 2);
    CHECK(proper_edges(f, g0).size() == 2);
  }

  TEST_CASE("levels are single cycles of length |E^n|") {
    Fixture f("ex310.ss");
    for (std::size_t n = 1; n <= 8; ++n) {
      const auto g = build_schreier(f.e, f.labels, n);
      CHECK(g.vertices.size() == (std::size_t{1} << (n + 1)));
      CHECK(single_cycle(g));
    }
  }

  TEST_CASE("psi") {
    Fixture f("ex310.ss");
    const auto g2 = build_schreier(f.e, f.labels, 2);
    const auto p = project_psi(f.e, g2);
    bool seen = false;
    for (std::size_t i = 0; i < g2.edges.size(); ++i) {
      if (edge_text(f, g2, g2.edges[i]) != "2.4 -a- 3.2") continue;
      seen = true;
      CHECK(edge_text(f, p.image, p.image.edges[p.edge[i]]) == "4 -b- 2");
    }
    CHECK(seen);
    CHECK_THROWS_AS(project_psi(f.e, build_schreier(f.e, f.labels, 0)), Error);
  }

  TEST_CASE("psi is a graph morphism onto the level below") {
    for (const char* name : {"ex310.ss", "basilica.ss", "odometer.ss"}) {
      Fixture f(name);
      for (std::size_t n = 1; n <= 5; ++n) {
        const auto g = build_schreier(f.e, f.labels, n);
        const auto below = build_schreier(f.e, f.labels, n - 1);
        const auto p = project_psi(f.e, g);
        REQUIRE(p.edge.size() == g.edges.size());
        for (std::size_t i = 0; i < g.edges.size(); ++i) {
          const auto& img = p.image.edges[p.edge[i]];
          const auto ends = std::minmax(img.from, img.to);
          const auto want = std::minmax(p.vertex[g.edges[i].from], p.vertex[g.edges[i].to]);
          CHECK(ends == want);
          CHECK(std::binary_search(below.edges.begin(), below.edges.end(), img));
        }
      }
    }
  }

  TEST_CASE("distances") {
    Fixture f("ex310.ss");
    const auto g2 = build_schreier(f.e, f.labels, 2);
    CHECK(geodesic_distance(g2, f.P("1.1"), f.P("1.1")) == 0u);
    std::size_t far = 0;
    const auto d = distances_from(g2, 0);
    for (auto x : d) far = std::max<std::size_t>(far, x);
    CHECK(far == 4);
    CHECK_THROWS_AS(geodesic_distance(g2, f.P("1"), f.P("1.1")), Error);
  }

  TEST_CASE("unreachable vertices") {
    const auto a = build_automaton(parse_spec(
        "[graph]\nvertex v\nedge e : v -> v\nedge f : v -> v\n[generator g : v -> v]\ne -> e | v\nf -> f | v\n"));
    ActionEngine e(a);
    const auto labels = default_generating_set(e);
    const auto g1 = build_schreier(e, labels, 1);
    CHECK_FALSE(geodesic_distance(g1, parse_finite_path(a.graph(), "e"), parse_finite_path(a.graph(), "f")));
    CHECK_FALSE(level_transitive(e, 1));
    CHECK_FALSE(level_transitive_serial(e, 1));
  }

  TEST_CASE("parallel table matches the serial one") {
    for (const char* name : {"ex310.ss", "basilica.ss", "odometer.ss"}) {
      Fixture f(name);
      for (std::size_t n = 0; n <= 9; ++n) {
        const auto v = level_vertices(f.a.graph(), n);
        CHECK(action_table(f.e, f.labels, v) == action_table_serial(f.e, f.labels, v));
      }
    }
  }

  TEST_CASE("level transitivity") {
    Fixture f("ex310.ss");
    Fixture o("odometer.ss");
    for (std::size_t n = 1; n <= 10; ++n) {
      CHECK(level_transitive(f.e, n));
      CHECK(level_transitive(o.e, n));
      CHECK(level_transitive(f.e, n) == level_transitive_serial(f.e, n));
    }
  }

  TEST_CASE("exports") {
    Fixture f("ex310.ss");
    const auto g1 = build_schreier(f.e, f.labels, 1);
    const auto dot = schreier_dot(f.e, g1);
    CHECK(dot.rfind("graph schreier_1 {", 0) == 0);
    CHECK(dot.find("\"1\" -- \"4\" [label=\"a\"]") != std::string::npos);
    const auto j = nlohmann::json::parse(schreier_json(f.e, g1));
    CHECK(j["level"] == 1);
    CHECK(j["vertices"].size() == 4);
    CHECK(j["edges"].size() == g1.edges.size());
  }
}
