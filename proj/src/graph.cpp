#include "selfsim/graph.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "selfsim/error.hpp"

namespace selfsim {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::DanglingEndpoint: return "DanglingEndpoint";
    case ErrorCode::NonComposable: return "NonComposable";
    case ErrorCode::DomainMismatch: return "DomainMismatch";
    case ErrorCode::UnknownSymbol: return "UnknownSymbol";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::JunctionMismatch: return "JunctionMismatch";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::ClosureLimitExceeded: return "ClosureLimitExceeded";
    case ErrorCode::Diverged: return "Diverged";
    case ErrorCode::NotStronglyConnected: return "NotStronglyConnected";
    case ErrorCode::VertexNotInLevel: return "VertexNotInLevel";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::ZeroBlockDivision: return "ZeroBlockDivision";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidGerm: return "InvalidGerm";
  }
  return "Unknown";
}

Graph Graph::build(std::vector<std::string> vertices, const std::vector<EdgeSpec>& edges) {
  Graph g;
  std::sort(vertices.begin(), vertices.end());
  if (auto it = std::adjacent_find(vertices.begin(), vertices.end()); it != vertices.end()) {
    throw Error(ErrorCode::DuplicateId, "vertex '" + *it + "' declared twice");
  }
  g.vertex_names_ = std::move(vertices);
  for (VertexId v = 0; v < g.vertex_names_.size(); ++v) {
    g.vertex_index_.emplace(g.vertex_names_[v], v);
  }

  std::vector<const EdgeSpec*> sorted;
  sorted.reserve(edges.size());
  for (const auto& e : edges) sorted.push_back(&e);
  std::sort(sorted.begin(), sorted.end(),
            [](const EdgeSpec* a, const EdgeSpec* b) { return a->name < b->name; });
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i]->name == sorted[i - 1]->name) {
      throw Error(ErrorCode::DuplicateId, "edge '" + sorted[i]->name + "' declared twice");
    }
  }
  for (const auto* e : sorted) {
    if (g.vertex_index_.count(e->name)) {
      throw Error(ErrorCode::DuplicateId, "'" + e->name + "' names both a vertex and an edge");
    }
  }

  g.into_.resize(g.vertex_count());
  g.from_.resize(g.vertex_count());
  for (const auto* e : sorted) {
    auto s = g.find_vertex(e->src);
    auto r = g.find_vertex(e->dst);
    if (!s || !r) {
      throw Error(ErrorCode::DanglingEndpoint,
                  "edge '" + e->name + "' references unknown vertex '" + (s ? e->dst : e->src) + "'");
    }
    auto id = static_cast<EdgeId>(g.edge_names_.size());
    g.edge_names_.push_back(e->name);
    g.edge_index_.emplace(e->name, id);
    g.source_.push_back(*s);
    g.range_.push_back(*r);
    g.into_[*r].push_back(id);
    g.from_[*s].push_back(id);
  }
  g.slot_.resize(g.edge_count());
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    for (std::size_t i = 0; i < g.into_[v].size(); ++i) g.slot_[g.into_[v][i]] = i;
  }
  return g;
}

std::optional<VertexId> Graph::find_vertex(std::string_view name) const {
  auto it = vertex_index_.find(std::string(name));
  if (it == vertex_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<EdgeId> Graph::find_edge(std::string_view name) const {
  auto it = edge_index_.find(std::string(name));
  if (it == edge_index_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::vector<std::uint64_t>> Graph::adjacency() const {
  std::vector<std::vector<std::uint64_t>> m(vertex_count(), std::vector<std::uint64_t>(vertex_count(), 0));
  for (EdgeId e = 0; e < edge_count(); ++e) ++m[range_[e]][source_[e]];
  return m;
}

VertexId range_of(const Graph& g, const Path& p) {
  return p.edges.empty() ? p.base : g.range(p.edges.front());
}

VertexId source_of(const Graph& g, const Path& p) {
  return p.edges.empty() ? p.base : g.source(p.edges.back());
}

bool is_path(const Graph& g, std::span<const EdgeId> edges) {
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    if (g.source(edges[i]) != g.range(edges[i + 1])) return false;
  }
  return true;
}

Path make_path(const Graph& g, std::vector<EdgeId> edges) {
  if (edges.empty()) throw Error(ErrorCode::InvalidArgument, "empty edge list needs a base vertex");
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    if (g.source(edges[i]) != g.range(edges[i + 1])) {
      throw Error(ErrorCode::NonComposable, "s(" + g.edge_name(edges[i]) + ") != r(" +
                                                g.edge_name(edges[i + 1]) + ")");
    }
  }
  Path p;
  p.base = g.range(edges.front());
  p.edges = std::move(edges);
  return p;
}

Path empty_path(VertexId v) { return Path{v, {}}; }

Path concat(const Graph& g, const Path& p, const Path& q) {
  if (source_of(g, p) != range_of(g, q)) {
    throw Error(ErrorCode::NonComposable, "s(" + format_path(g, p) + ") = " +
                                              g.vertex_name(source_of(g, p)) + " but r(" +
                                              format_path(g, q) + ") = " +
                                              g.vertex_name(range_of(g, q)));
  }
  Path out = p;
  out.edges.insert(out.edges.end(), q.edges.begin(), q.edges.end());
  return out;
}

std::vector<Path> enumerate_paths(const Graph& g, std::size_t n, std::optional<VertexId> at) {
  std::vector<Path> level;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (!at || *at == v) level.push_back(empty_path(v));
  }
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<Path> next;
    for (const auto& p : level) {
      // The first edge fixes the range; later edges must start where the path ends.
      std::span<const EdgeId> candidates =
          p.edges.empty() ? g.edges_into(p.base) : g.edges_into(g.source(p.edges.back()));
      for (EdgeId e : candidates) {
        Path q = p;
        q.edges.push_back(e);
        next.push_back(std::move(q));
      }
    }
    level = std::move(next);
  }
  std::sort(level.begin(), level.end(), [](const Path& a, const Path& b) {
    if (a.edges != b.edges) return a.edges < b.edges;
    return a.base < b.base;
  });
  return level;
}

std::string format_path(const Graph& g, const Path& p) {
  if (p.edges.empty()) return g.vertex_name(p.base);
  std::string out;
  for (std::size_t i = 0; i < p.edges.size(); ++i) {
    if (i) out += '.';
    out += g.edge_name(p.edges[i]);
  }
  return out;
}

namespace {

// reach[u] = vertices w with a path of length >= 1 from u to w, following
// edge direction s(e) -> r(e).
std::vector<std::vector<bool>> reachability(const Graph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (VertexId u = 0; u < n; ++u) {
    std::deque<VertexId> queue{u};
    std::vector<bool> seen(n, false);
    while (!queue.empty()) {
      VertexId x = queue.front();
      queue.pop_front();
      for (EdgeId e : g.edges_from(x)) {
        VertexId y = g.range(e);
        if (!seen[y]) {
          seen[y] = true;
          queue.push_back(y);
        }
      }
    }
    reach[u] = std::move(seen);
  }
  return reach;
}

}  // namespace

StructureReport validate_graph(const Graph& g) {
  StructureReport rep;
  const std::size_t n = g.vertex_count();
  rep.no_sources = n > 0;
  rep.no_sinks = n > 0;
  for (VertexId v = 0; v < n; ++v) {
    if (g.edges_into(v).empty()) rep.no_sources = false;
    if (g.edges_from(v).empty()) rep.no_sinks = false;
  }

  auto reach = reachability(g);
  rep.strongly_connected = n > 0 && g.edge_count() > 0;
  for (VertexId u = 0; u < n && rep.strongly_connected; ++u) {
    for (VertexId w = 0; w < n; ++w) {
      if (u != w && !reach[u][w]) {
        rep.strongly_connected = false;
        break;
      }
    }
  }

  // Primitive: some power of the 0/1 adjacency pattern is strictly positive.
  // Wielandt's bound (n-1)^2 + 1 <= n^2 + 1 limits the search.
  if (rep.strongly_connected) {
    std::vector<std::vector<bool>> base(n, std::vector<bool>(n, false));
    for (EdgeId e = 0; e < g.edge_count(); ++e) base[g.range(e)][g.source(e)] = true;
    auto power = base;
    for (std::size_t k = 1; k <= n * n + 1; ++k) {
      bool positive = true;
      for (const auto& row : power) {
        if (std::find(row.begin(), row.end(), false) != row.end()) {
          positive = false;
          break;
        }
      }
      if (positive) {
        rep.primitive = true;
        break;
      }
      std::vector<std::vector<bool>> next(n, std::vector<bool>(n, false));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (power[i][j])
            for (std::size_t l = 0; l < n; ++l)
              if (base[j][l]) next[i][l] = true;
      power = std::move(next);
    }
  }
  return rep;
}

}  // namespace selfsim
