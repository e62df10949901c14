#ifndef SELFSIM_GRAPH_HPP
#define SELFSIM_GRAPH_HPP

// Finite directed graphs and their finite paths.
//
// Convention: an edge e points from its source s(e) to its range r(e), and
// paths compose like functions, extending to the RIGHT towards the source:
//
//        e1        e2        e3
//   r  <----- . <----- . <-----  s        path e1 e2 e3
//
// so e1 e2 ... en is a path iff s(e_i) = r(e_{i+1}), r(path) = r(e1) and
// s(path) = s(en). Most graph libraries use the opposite order; everything in
// this project uses this one.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace selfsim {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;

inline constexpr EdgeId kNoEdge = static_cast<EdgeId>(-1);

struct EdgeSpec {
  std::string name;
  std::string src;  // s(e)
  std::string dst;  // r(e)
  friend bool operator==(const EdgeSpec&, const EdgeSpec&) = default;
};

// Immutable after construction. Vertex and edge ids are dense indices in
// lexicographic order of their names.
class Graph {
 public:
  Graph() = default;

  // Throws Error{DuplicateId | DanglingEndpoint}.
  static Graph build(std::vector<std::string> vertices, const std::vector<EdgeSpec>& edges);

  std::size_t vertex_count() const noexcept { return vertex_names_.size(); }
  std::size_t edge_count() const noexcept { return edge_names_.size(); }

  const std::string& vertex_name(VertexId v) const { return vertex_names_.at(v); }
  const std::string& edge_name(EdgeId e) const { return edge_names_.at(e); }
  std::optional<VertexId> find_vertex(std::string_view name) const;
  std::optional<EdgeId> find_edge(std::string_view name) const;

  VertexId source(EdgeId e) const { return source_[e]; }
  VertexId range(EdgeId e) const { return range_[e]; }

  // vE^1 = {e : r(e) = v}, sorted by edge id.
  std::span<const EdgeId> edges_into(VertexId v) const { return into_[v]; }
  // E^1 v = {e : s(e) = v}, sorted by edge id.
  std::span<const EdgeId> edges_from(VertexId v) const { return from_[v]; }
  // Position of e inside edges_into(r(e)).
  std::size_t slot(EdgeId e) const { return slot_[e]; }

  // adjacency[r][s] = number of edges e with r(e) = r and s(e) = s.
  std::vector<std::vector<std::uint64_t>> adjacency() const;

 private:
  std::vector<std::string> vertex_names_;
  std::vector<std::string> edge_names_;
  std::unordered_map<std::string, VertexId> vertex_index_;
  std::unordered_map<std::string, EdgeId> edge_index_;
  std::vector<VertexId> source_;
  std::vector<VertexId> range_;
  std::vector<std::vector<EdgeId>> into_;
  std::vector<std::vector<EdgeId>> from_;
  std::vector<std::size_t> slot_;
};

// A finite path. The empty path at v has base v; otherwise base = r(edges[0]).
struct Path {
  VertexId base = 0;
  std::vector<EdgeId> edges;

  std::size_t length() const noexcept { return edges.size(); }
  bool empty() const noexcept { return edges.empty(); }
  friend bool operator==(const Path&, const Path&) = default;
  friend auto operator<=>(const Path&, const Path&) = default;
};

VertexId range_of(const Graph& g, const Path& p);
VertexId source_of(const Graph& g, const Path& p);

// Builds a path from an edge sequence, checking composability.
// Throws NonComposable.
Path make_path(const Graph& g, std::vector<EdgeId> edges);
Path empty_path(VertexId v);
bool is_path(const Graph& g, std::span<const EdgeId> edges);

// p followed by q; requires s(p) = r(q). Throws NonComposable.
Path concat(const Graph& g, const Path& p, const Path& q);

// E^n, or vE^n when `at` is given, in lexicographic order of edge ids.
std::vector<Path> enumerate_paths(const Graph& g, std::size_t n,
                                  std::optional<VertexId> at = std::nullopt);

std::string format_path(const Graph& g, const Path& p);

struct StructureReport {
  bool finite = true;
  bool no_sources = false;
  bool no_sinks = false;
  bool strongly_connected = false;
  bool primitive = false;
};

StructureReport validate_graph(const Graph& g);

}  // namespace selfsim

#endif  // SELFSIM_GRAPH_HPP
