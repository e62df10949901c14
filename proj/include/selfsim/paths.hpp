#ifndef SELFSIM_PATHS_HPP
#define SELFSIM_PATHS_HPP

// Eventually periodic infinite paths.
//
//   left-infinite   rho^inf lambda      ... x_{-2} x_{-1}
//   right-infinite  mu pi^inf           x_1 x_2 ...
//   bi-infinite     rho^inf mu pi^inf   with mu starting at index `anchor`
//
// Constructors check the junctions and return normal forms: primitive
// cycles, and every edge that can be absorbed into a cycle is absorbed. For
// one-sided paths the cycle rotation is then forced by position. A fully
// periodic bi-infinite path keeps its lexicographically least rotation with
// anchor in [0, period).

#include <cstdint>
#include <string>

#include "selfsim/graph.hpp"

namespace selfsim {

struct LeftInfinitePath {
  Path cycle;  // rho, s(rho) = r(rho)
  Path tail;   // lambda, r(lambda) = s(rho); base = s(rho) when empty
  friend bool operator==(const LeftInfinitePath&, const LeftInfinitePath&) = default;
  friend auto operator<=>(const LeftInfinitePath&, const LeftInfinitePath&) = default;
};

struct RightInfinitePath {
  Path head;   // mu, s(mu) = r(pi); base = r(pi) when empty
  Path cycle;  // pi
  friend bool operator==(const RightInfinitePath&, const RightInfinitePath&) = default;
  friend auto operator<=>(const RightInfinitePath&, const RightInfinitePath&) = default;
};

struct BiInfinitePath {
  Path left;
  Path center;
  Path right;
  std::int64_t anchor = 0;  // index of the first center edge
  friend bool operator==(const BiInfinitePath&, const BiInfinitePath&) = default;
  friend auto operator<=>(const BiInfinitePath&, const BiInfinitePath&) = default;
};

// Throw JunctionMismatch on bad seams, InvalidArgument on an empty cycle.
LeftInfinitePath make_left(const Graph& g, std::vector<EdgeId> cycle, std::vector<EdgeId> tail);
RightInfinitePath make_right(const Graph& g, std::vector<EdgeId> head, std::vector<EdgeId> cycle);
BiInfinitePath make_bi(const Graph& g, std::vector<EdgeId> left, std::vector<EdgeId> center,
                       std::vector<EdgeId> right, std::int64_t anchor);

// x_i; i <= -1 for left-infinite, i >= 1 for right-infinite.
EdgeId edge_at(const LeftInfinitePath& x, std::int64_t i);
EdgeId edge_at(const RightInfinitePath& x, std::int64_t i);
EdgeId edge_at(const BiInfinitePath& x, std::int64_t i);

VertexId source_of(const Graph& g, const LeftInfinitePath& x);
VertexId range_of(const Graph& g, const RightInfinitePath& x);

// x_{-n} ... x_{-1}
Path last_edges(const Graph& g, const LeftInfinitePath& x, std::size_t n);
// x_1 ... x_n
Path first_edges(const Graph& g, const RightInfinitePath& x, std::size_t n);

// Deletes the rightmost edge.
LeftInfinitePath shift(const Graph& g, const LeftInfinitePath& x);
// varsigma^n: deletes the first n edges.
RightInfinitePath drop(const Graph& g, const RightInfinitePath& x, std::size_t n);

// ... x_{k-1} x_k, re-indexed to end at -1.
LeftInfinitePath truncate_left(const Graph& g, const BiInfinitePath& x, std::int64_t k);
// x_k x_{k+1} ..., re-indexed to start at 1.
RightInfinitePath suffix_from(const Graph& g, const BiInfinitePath& x, std::int64_t k);
// (tau^d x)_i = x_{i+d}
BiInfinitePath shift_index(const Graph& g, const BiInfinitePath& x, std::int64_t d);

// Index past which both sides are periodic: x_i for i < left_boundary(x)
// follows the left cycle and x_i for i >= right_boundary(x) the right one.
std::int64_t left_boundary(const BiInfinitePath& x);
std::int64_t right_boundary(const BiInfinitePath& x);

std::string format(const Graph& g, const LeftInfinitePath& x);
std::string format(const Graph& g, const RightInfinitePath& x);
std::string format(const Graph& g, const BiInfinitePath& x);

}  // namespace selfsim

#endif  // SELFSIM_PATHS_HPP
