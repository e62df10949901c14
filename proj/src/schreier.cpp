#include "selfsim/schreier.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>

#include "json.hpp"

#include "selfsim/error.hpp"

namespace selfsim {

namespace {

bool path_less(const Path& a, const Path& b) {
  if (a.edges != b.edges) return a.edges < b.edges;
  return a.base < b.base;
}

std::uint32_t find_vertex(const std::vector<Path>& vertices, const Path& p) {
  auto it = std::lower_bound(vertices.begin(), vertices.end(), p, path_less);
  if (it == vertices.end() || *it != p) return kNoVertex;
  return static_cast<std::uint32_t>(it - vertices.begin());
}

std::uint32_t image_of(const ActionEngine& engine, ClassId c, const std::vector<Path>& vertices, std::size_t i) {
  const Path& p = vertices[i];
  if (range_of(engine.graph(), p) != engine.dom(c)) return kNoVertex;
  return find_vertex(vertices, engine.act(c, p));
}

SchreierEdge orient(const ActionEngine& engine, ClassId a, ClassId a_inv, std::uint32_t u, std::uint32_t v) {
  if (a == a_inv) return SchreierEdge{std::min(u, v), std::max(u, v), a};
  const std::string na = engine.name(a);
  const std::string nb = engine.name(a_inv);
  if (nb < na || (nb == na && a_inv < a)) return SchreierEdge{v, u, a_inv};
  return SchreierEdge{u, v, a};
}

std::vector<std::vector<std::uint32_t>> adjacency(const SchreierGraph& gamma) {
  std::vector<std::vector<std::uint32_t>> adj(gamma.vertices.size());
  for (const auto& e : gamma.edges) {
    if (e.from == e.to) continue;
    adj[e.from].push_back(e.to);
    adj[e.to].push_back(e.from);
  }
  return adj;
}

std::uint32_t find_root(std::vector<std::uint32_t>& parent, std::uint32_t x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

bool one_orbit(const ActionTable& table, std::size_t size) {
  if (size == 0) return true;
  std::vector<std::uint32_t> parent(size);
  std::iota(parent.begin(), parent.end(), 0u);
  std::size_t components = size;
  for (const auto& row : table) {
    for (std::size_t i = 0; i < size; ++i) {
      if (row[i] == kNoVertex) continue;
      auto a = find_root(parent, static_cast<std::uint32_t>(i));
      auto b = find_root(parent, row[i]);
      if (a != b) {
        parent[std::max(a, b)] = std::min(a, b);
        --components;
      }
    }
  }
  return components == 1;
}

std::vector<ClassId> generator_labels(ActionEngine& engine) {
  std::vector<ClassId> out;
  for (Symbol s : engine.automaton().symbols()) out.push_back(engine.symbol(s));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

std::uint32_t SchreierGraph::index_of(const Path& p) const { return find_vertex(vertices, p); }

std::vector<ClassId> close_generating_set(ActionEngine& engine, std::vector<ClassId> labels, bool* added) {
  std::set<ClassId> in(labels.begin(), labels.end());
  const std::size_t before = in.size();
  std::deque<ClassId> queue(in.begin(), in.end());
  while (!queue.empty()) {
    ClassId c = queue.front();
    queue.pop_front();
    std::vector<ClassId> next(engine.info(c).succ.begin(), engine.info(c).succ.end());
    next.push_back(engine.inverse(c));
    for (ClassId d : next)
      if (in.insert(d).second) queue.push_back(d);
  }
  if (added) *added = in.size() != before;
  return {in.begin(), in.end()};
}

std::vector<ClassId> default_generating_set(ActionEngine& engine, const Nucleus* n) {
  std::vector<ClassId> seeds = generator_labels(engine);
  for (VertexId v = 0; v < engine.graph().vertex_count(); ++v) seeds.push_back(engine.unit(v));
  if (n) seeds.insert(seeds.end(), n->states.begin(), n->states.end());
  return close_generating_set(engine, std::move(seeds));
}

std::vector<Path> level_vertices(const Graph& g, std::size_t n) {
  auto out = enumerate_paths(g, n);
  std::sort(out.begin(), out.end(), path_less);
  return out;
}

ActionTable action_table(const ActionEngine& engine, const std::vector<ClassId>& labels,
                         const std::vector<Path>& vertices) {
  ActionTable table(labels.size(), std::vector<std::uint32_t>(vertices.size(), kNoVertex));
  const auto count = static_cast<std::int64_t>(vertices.size());
  for (std::size_t k = 0; k < labels.size(); ++k) {
    auto& row = table[k];
    const ClassId c = labels[k];
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < count; ++i) row[static_cast<std::size_t>(i)] = image_of(engine, c, vertices, static_cast<std::size_t>(i));
  }
  return table;
}

ActionTable action_table_serial(const ActionEngine& engine, const std::vector<ClassId>& labels,
                                const std::vector<Path>& vertices) {
  ActionTable table(labels.size(), std::vector<std::uint32_t>(vertices.size(), kNoVertex));
  for (std::size_t k = 0; k < labels.size(); ++k)
    for (std::size_t i = 0; i < vertices.size(); ++i) table[k][i] = image_of(engine, labels[k], vertices, i);
  return table;
}

SchreierGraph build_schreier(ActionEngine& engine, const std::vector<ClassId>& labels, std::size_t n) {
  SchreierGraph gamma;
  gamma.level = n;
  gamma.vertices = level_vertices(engine.graph(), n);
  std::vector<ClassId> inv;
  for (ClassId c : labels) inv.push_back(engine.inverse(c));
  const auto table = action_table(engine, labels, gamma.vertices);
  std::set<SchreierEdge> edges;
  for (std::size_t k = 0; k < labels.size(); ++k)
    for (std::size_t i = 0; i < gamma.vertices.size(); ++i)
      if (table[k][i] != kNoVertex)
        edges.insert(orient(engine, labels[k], inv[k], static_cast<std::uint32_t>(i), table[k][i]));
  gamma.edges.assign(edges.begin(), edges.end());
  return gamma;
}

Projection project_psi(ActionEngine& engine, const SchreierGraph& gamma) {
  if (gamma.level == 0) throw Error(ErrorCode::InvalidArgument, "psi needs level >= 1");
  const Graph& g = engine.graph();
  Projection out;
  out.image.level = gamma.level - 1;
  out.image.vertices = level_vertices(g, gamma.level - 1);
  auto drop_first = [&](const Path& p) {
    Path q;
    q.edges.assign(p.edges.begin() + 1, p.edges.end());
    q.base = q.edges.empty() ? g.source(p.edges.front()) : g.range(q.edges.front());
    return q;
  };
  for (const Path& p : gamma.vertices) out.vertex.push_back(out.image.index_of(drop_first(p)));

  std::vector<SchreierEdge> images;
  for (const auto& e : gamma.edges) {
    const EdgeId first = gamma.vertices[e.from].edges.front();
    const ClassId r = engine.restrict_edge(e.label, first);
    images.push_back(orient(engine, r, engine.inverse(r), out.vertex[e.from], out.vertex[e.to]));
  }
  std::vector<SchreierEdge> sorted = images;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (const auto& e : images)
    out.edge.push_back(static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), e) - sorted.begin()));
  out.image.edges = std::move(sorted);
  return out;
}

std::vector<std::uint32_t> distances_from(const SchreierGraph& gamma, std::uint32_t source) {
  const auto adj = adjacency(gamma);
  std::vector<std::uint32_t> dist(gamma.vertices.size(), kNoVertex);
  std::deque<std::uint32_t> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    auto u = queue.front();
    queue.pop_front();
    for (auto v : adj[u]) {
      if (dist[v] != kNoVertex) continue;
      dist[v] = dist[u] + 1;
      queue.push_back(v);
    }
  }
  return dist;
}

std::optional<std::size_t> geodesic_distance(const SchreierGraph& gamma, const Path& mu, const Path& nu) {
  const auto a = gamma.index_of(mu);
  const auto b = gamma.index_of(nu);
  if (a == kNoVertex || b == kNoVertex) {
    throw Error(ErrorCode::VertexNotInLevel, "path is not a vertex of level " + std::to_string(gamma.level));
  }
  const auto d = distances_from(gamma, a)[b];
  if (d == kNoVertex) return std::nullopt;
  return d;
}

std::vector<std::optional<std::size_t>> distance_profile(ActionEngine& engine, const std::vector<ClassId>& labels,
                                                         const LeftInfinitePath& x, const LeftInfinitePath& y,
                                                         std::size_t max_level) {
  const Graph& g = engine.graph();
  std::vector<std::optional<std::size_t>> out;
  for (std::size_t n = 1; n <= max_level; ++n) {
    const auto gamma = build_schreier(engine, labels, n);
    out.push_back(geodesic_distance(gamma, last_edges(g, x, n), last_edges(g, y, n)));
  }
  return out;
}

bool level_transitive(ActionEngine& engine, std::size_t n) {
  auto labels = generator_labels(engine);
  const auto vertices = level_vertices(engine.graph(), n);
  return one_orbit(action_table(engine, labels, vertices), vertices.size());
}

bool level_transitive_serial(ActionEngine& engine, std::size_t n) {
  auto labels = generator_labels(engine);
  const auto vertices = level_vertices(engine.graph(), n);
  return one_orbit(action_table_serial(engine, labels, vertices), vertices.size());
}

std::string schreier_dot(const ActionEngine& engine, const SchreierGraph& gamma) {
  const Graph& g = engine.graph();
  std::string out = "graph schreier_" + std::to_string(gamma.level) + " {\n";
  for (const Path& p : gamma.vertices) out += "  \"" + format_path(g, p) + "\";\n";
  for (const auto& e : gamma.edges) {
    out += "  \"" + format_path(g, gamma.vertices[e.from]) + "\" -- \"" + format_path(g, gamma.vertices[e.to]) +
           "\" [label=\"" + engine.name(e.label) + "\"];\n";
  }
  out += "}\n";
  return out;
}

std::string schreier_json(const ActionEngine& engine, const SchreierGraph& gamma) {
  const Graph& g = engine.graph();
  nlohmann::ordered_json doc{{"schema", 1}, {"level", gamma.level}};
  auto vs = nlohmann::ordered_json::array();
  for (const Path& p : gamma.vertices) vs.push_back(format_path(g, p));
  doc["vertices"] = vs;
  auto es = nlohmann::ordered_json::array();
  for (const auto& e : gamma.edges) {
    es.push_back({{"from", format_path(g, gamma.vertices[e.from])},
                  {"to", format_path(g, gamma.vertices[e.to])},
                  {"label", engine.name(e.label)}});
  }
  doc["edges"] = es;
  return doc.dump(2);
}

}  // namespace selfsim
