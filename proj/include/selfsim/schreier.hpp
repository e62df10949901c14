#ifndef SELFSIM_SCHREIER_HPP
#define SELFSIM_SCHREIER_HPP

// Level-n Schreier graphs over E^n and the projections psi_n : eu -> u.
//
// The heavy part is the action table over E^n (one row per label); it has an
// OpenMP kernel and a serial reference that must agree exactly.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "selfsim/nucleus.hpp"

namespace selfsim {

inline constexpr std::uint32_t kNoVertex = static_cast<std::uint32_t>(-1);

// Directed representative of an undirected labelled edge: label . from = to.
// Of (a: u -> v) and (a^-1: v -> u) the one with the smaller label name is
// kept; a self-inverse label keeps from <= to.
struct SchreierEdge {
  std::uint32_t from = 0;
  std::uint32_t to = 0;
  ClassId label = 0;
  friend bool operator==(const SchreierEdge&, const SchreierEdge&) = default;
  friend auto operator<=>(const SchreierEdge&, const SchreierEdge&) = default;
};

struct SchreierGraph {
  std::size_t level = 0;
  std::vector<Path> vertices;       // E^n, lexicographic
  std::vector<SchreierEdge> edges;  // sorted, no duplicates

  // kNoVertex when p is not in E^n.
  std::uint32_t index_of(const Path& p) const;
};

// Generators, inverses, units and (if given) the nucleus, closed under
// restriction. Sorted by class id.
std::vector<ClassId> default_generating_set(ActionEngine& engine, const Nucleus* n = nullptr);

// Adds inverses and restrictions until closed. `added` reports whether
// anything was missing.
std::vector<ClassId> close_generating_set(ActionEngine& engine, std::vector<ClassId> labels, bool* added = nullptr);

// table[k][i] = index of labels[k] . vertices[i], or kNoVertex when
// d(labels[k]) != r(vertices[i]).
using ActionTable = std::vector<std::vector<std::uint32_t>>;
ActionTable action_table(const ActionEngine& engine, const std::vector<ClassId>& labels,
                         const std::vector<Path>& vertices);
ActionTable action_table_serial(const ActionEngine& engine, const std::vector<ClassId>& labels,
                                const std::vector<Path>& vertices);

std::vector<Path> level_vertices(const Graph& g, std::size_t n);

SchreierGraph build_schreier(ActionEngine& engine, const std::vector<ClassId>& labels, std::size_t n);

struct Projection {
  SchreierGraph image;                  // level n-1, labels that occur
  std::vector<std::uint32_t> vertex;    // psi on vertices
  std::vector<std::size_t> edge;        // psi on edges, into image.edges
};

// Throws InvalidArgument at level 0.
Projection project_psi(ActionEngine& engine, const SchreierGraph& gamma);

// Breadth-first distance ignoring labels; nullopt when unreachable.
// Throws VertexNotInLevel.
std::optional<std::size_t> geodesic_distance(const SchreierGraph& gamma, const Path& mu, const Path& nu);

// All distances from one vertex, kNoVertex for unreachable.
std::vector<std::uint32_t> distances_from(const SchreierGraph& gamma, std::uint32_t source);

// d(x_{-n} ... x_{-1}, y_{-n} ... y_{-1}) for n = 1..max_level.
std::vector<std::optional<std::size_t>> distance_profile(ActionEngine& engine, const std::vector<ClassId>& labels,
                                                         const LeftInfinitePath& x, const LeftInfinitePath& y,
                                                         std::size_t max_level);

// One orbit of generators and inverses on E^n.
bool level_transitive(ActionEngine& engine, std::size_t n);
bool level_transitive_serial(ActionEngine& engine, std::size_t n);

std::string schreier_dot(const ActionEngine& engine, const SchreierGraph& gamma);
std::string schreier_json(const ActionEngine& engine, const SchreierGraph& gamma);

}  // namespace selfsim

#endif  // SELFSIM_SCHREIER_HPP
