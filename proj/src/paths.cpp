#include "selfsim/paths.hpp"

#include <algorithm>

#include "selfsim/error.hpp"

namespace selfsim {

namespace {

std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

std::string dotted(const Graph& g, const std::vector<EdgeId>& edges) {
  std::string out;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (i) out += '.';
    out += g.edge_name(edges[i]);
  }
  return out;
}

void check_chain(const Graph& g, const std::vector<EdgeId>& edges, const char* what) {
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    if (g.source(edges[i]) != g.range(edges[i + 1])) {
      throw Error(ErrorCode::JunctionMismatch, std::string(what) + ": s(" + g.edge_name(edges[i]) +
                                                   ") != r(" + g.edge_name(edges[i + 1]) + ")");
    }
  }
}

void check_cycle(const Graph& g, const std::vector<EdgeId>& cycle) {
  if (cycle.empty()) throw Error(ErrorCode::InvalidArgument, "empty cycle");
  check_chain(g, cycle, "cycle");
  if (g.source(cycle.back()) != g.range(cycle.front())) {
    throw Error(ErrorCode::JunctionMismatch, "cycle seam: s(" + g.edge_name(cycle.back()) + ") != r(" +
                                                 g.edge_name(cycle.front()) + ")");
  }
}

void seam(const Graph& g, EdgeId left, EdgeId right) {
  if (g.source(left) != g.range(right)) {
    throw Error(ErrorCode::JunctionMismatch,
                "s(" + g.edge_name(left) + ") != r(" + g.edge_name(right) + ")");
  }
}

std::vector<EdgeId> primitive_root(std::vector<EdgeId> c) {
  const std::size_t k = c.size();
  for (std::size_t p = 1; p < k; ++p) {
    if (k % p) continue;
    bool ok = true;
    for (std::size_t i = p; i < k && ok; ++i) ok = c[i] == c[i - p];
    if (ok) {
      c.resize(p);
      break;
    }
  }
  return c;
}

void rotl(std::vector<EdgeId>& c) { std::rotate(c.begin(), c.begin() + 1, c.end()); }
void rotr(std::vector<EdgeId>& c) { std::rotate(c.rbegin(), c.rbegin() + 1, c.rend()); }

Path cycle_path(const Graph& g, std::vector<EdgeId> c) { return Path{g.range(c.front()), std::move(c)}; }

Path maybe_empty(const Graph& g, std::vector<EdgeId> edges, VertexId base) {
  if (edges.empty()) return empty_path(base);
  return Path{g.range(edges.front()), std::move(edges)};
}

}  // namespace

LeftInfinitePath make_left(const Graph& g, std::vector<EdgeId> cycle, std::vector<EdgeId> tail) {
  check_cycle(g, cycle);
  check_chain(g, tail, "tail");
  if (!tail.empty()) seam(g, cycle.back(), tail.front());

  cycle = primitive_root(std::move(cycle));
  std::size_t absorbed = 0;
  while (absorbed < tail.size() && tail[absorbed] == cycle.front()) {
    rotl(cycle);
    ++absorbed;
  }
  tail.erase(tail.begin(), tail.begin() + static_cast<std::ptrdiff_t>(absorbed));
  const VertexId s = g.source(cycle.back());
  return LeftInfinitePath{cycle_path(g, std::move(cycle)), maybe_empty(g, std::move(tail), s)};
}

RightInfinitePath make_right(const Graph& g, std::vector<EdgeId> head, std::vector<EdgeId> cycle) {
  check_cycle(g, cycle);
  check_chain(g, head, "head");
  if (!head.empty()) seam(g, head.back(), cycle.front());

  cycle = primitive_root(std::move(cycle));
  while (!head.empty() && head.back() == cycle.back()) {
    rotr(cycle);
    head.pop_back();
  }
  const VertexId r = g.range(cycle.front());
  return RightInfinitePath{maybe_empty(g, std::move(head), r), cycle_path(g, std::move(cycle))};
}

BiInfinitePath make_bi(const Graph& g, std::vector<EdgeId> left, std::vector<EdgeId> center,
                       std::vector<EdgeId> right, std::int64_t anchor) {
  check_cycle(g, left);
  check_cycle(g, right);
  check_chain(g, center, "center");
  if (center.empty()) {
    seam(g, left.back(), right.front());
  } else {
    seam(g, left.back(), center.front());
    seam(g, center.back(), right.front());
  }

  left = primitive_root(std::move(left));
  right = primitive_root(std::move(right));
  std::size_t absorbed = 0;
  while (absorbed < center.size() && center[absorbed] == left.front()) {
    rotl(left);
    ++absorbed;
    ++anchor;
  }
  center.erase(center.begin(), center.begin() + static_cast<std::ptrdiff_t>(absorbed));
  while (!center.empty() && center.back() == right.back()) {
    rotr(right);
    center.pop_back();
  }
  if (center.empty()) {
    // The left period may run on into the right cycle; push the anchor to
    // where it breaks. Two primitive cycles agreeing this long are equal.
    std::size_t guard = left.size() + right.size();
    while (left != right && left.front() == right.front() && guard-- > 0) {
      rotl(left);
      rotl(right);
      ++anchor;
    }
    if (left == right) {
      const auto p = static_cast<std::int64_t>(left.size());
      auto best = left;
      std::int64_t shift_by = 0;
      auto probe = left;
      for (std::int64_t k = 1; k < p; ++k) {
        rotl(probe);
        if (probe < best) {
          best = probe;
          shift_by = k;
        }
      }
      anchor = floor_mod(anchor + shift_by, p);
      left = best;
      right = best;
    }
  }
  const VertexId junction = g.range(right.front());
  return BiInfinitePath{cycle_path(g, std::move(left)), maybe_empty(g, std::move(center), junction),
                        cycle_path(g, std::move(right)), anchor};
}

EdgeId edge_at(const LeftInfinitePath& x, std::int64_t i) {
  if (i >= 0) throw Error(ErrorCode::InvalidArgument, "left-infinite index must be negative");
  const auto t = static_cast<std::int64_t>(x.tail.edges.size());
  if (i >= -t) return x.tail.edges[static_cast<std::size_t>(t + i)];
  const auto p = static_cast<std::int64_t>(x.cycle.edges.size());
  const std::int64_t j = -t - i;  // 1 = last cycle edge
  return x.cycle.edges[static_cast<std::size_t>(p - 1 - (j - 1) % p)];
}

EdgeId edge_at(const RightInfinitePath& x, std::int64_t i) {
  if (i <= 0) throw Error(ErrorCode::InvalidArgument, "right-infinite index must be positive");
  const auto h = static_cast<std::int64_t>(x.head.edges.size());
  if (i <= h) return x.head.edges[static_cast<std::size_t>(i - 1)];
  const auto q = static_cast<std::int64_t>(x.cycle.edges.size());
  return x.cycle.edges[static_cast<std::size_t>((i - 1 - h) % q)];
}

EdgeId edge_at(const BiInfinitePath& x, std::int64_t i) {
  const auto c = static_cast<std::int64_t>(x.center.edges.size());
  if (i >= x.anchor && i < x.anchor + c) return x.center.edges[static_cast<std::size_t>(i - x.anchor)];
  if (i < x.anchor) {
    const auto p = static_cast<std::int64_t>(x.left.edges.size());
    const std::int64_t j = x.anchor - i;
    return x.left.edges[static_cast<std::size_t>(p - 1 - (j - 1) % p)];
  }
  const auto q = static_cast<std::int64_t>(x.right.edges.size());
  return x.right.edges[static_cast<std::size_t>((i - x.anchor - c) % q)];
}

VertexId source_of(const Graph& g, const LeftInfinitePath& x) {
  return x.tail.edges.empty() ? g.source(x.cycle.edges.back()) : g.source(x.tail.edges.back());
}

VertexId range_of(const Graph& g, const RightInfinitePath& x) {
  return x.head.edges.empty() ? g.range(x.cycle.edges.front()) : g.range(x.head.edges.front());
}

Path last_edges(const Graph& g, const LeftInfinitePath& x, std::size_t n) {
  std::vector<EdgeId> out;
  out.reserve(n);
  for (auto i = -static_cast<std::int64_t>(n); i <= -1; ++i) out.push_back(edge_at(x, i));
  return maybe_empty(g, std::move(out), source_of(g, x));
}

Path first_edges(const Graph& g, const RightInfinitePath& x, std::size_t n) {
  std::vector<EdgeId> out;
  out.reserve(n);
  for (std::int64_t i = 1; i <= static_cast<std::int64_t>(n); ++i) out.push_back(edge_at(x, i));
  return maybe_empty(g, std::move(out), range_of(g, x));
}

LeftInfinitePath shift(const Graph& g, const LeftInfinitePath& x) {
  auto cycle = x.cycle.edges;
  auto tail = x.tail.edges;
  if (!tail.empty()) {
    tail.pop_back();
  } else {
    rotr(cycle);
  }
  return make_left(g, std::move(cycle), std::move(tail));
}

RightInfinitePath drop(const Graph& g, const RightInfinitePath& x, std::size_t n) {
  const auto h = x.head.edges.size();
  if (n <= h) {
    std::vector<EdgeId> head(x.head.edges.begin() + static_cast<std::ptrdiff_t>(n), x.head.edges.end());
    return make_right(g, std::move(head), x.cycle.edges);
  }
  auto cycle = x.cycle.edges;
  std::rotate(cycle.begin(), cycle.begin() + static_cast<std::ptrdiff_t>((n - h) % cycle.size()), cycle.end());
  return make_right(g, {}, std::move(cycle));
}

LeftInfinitePath truncate_left(const Graph& g, const BiInfinitePath& x, std::int64_t k) {
  const std::int64_t lo = std::min(k + 1, x.anchor);
  const auto p = static_cast<std::int64_t>(x.left.edges.size());
  std::vector<EdgeId> cycle, tail;
  for (std::int64_t i = lo - p; i < lo; ++i) cycle.push_back(edge_at(x, i));
  for (std::int64_t i = lo; i <= k; ++i) tail.push_back(edge_at(x, i));
  return make_left(g, std::move(cycle), std::move(tail));
}

RightInfinitePath suffix_from(const Graph& g, const BiInfinitePath& x, std::int64_t k) {
  const std::int64_t hi = std::max(k, right_boundary(x));
  const auto q = static_cast<std::int64_t>(x.right.edges.size());
  std::vector<EdgeId> head, cycle;
  for (std::int64_t i = k; i < hi; ++i) head.push_back(edge_at(x, i));
  for (std::int64_t i = hi; i < hi + q; ++i) cycle.push_back(edge_at(x, i));
  return make_right(g, std::move(head), std::move(cycle));
}

BiInfinitePath shift_index(const Graph& g, const BiInfinitePath& x, std::int64_t d) {
  return make_bi(g, x.left.edges, x.center.edges, x.right.edges, x.anchor - d);
}

std::int64_t left_boundary(const BiInfinitePath& x) { return x.anchor; }

std::int64_t right_boundary(const BiInfinitePath& x) {
  return x.anchor + static_cast<std::int64_t>(x.center.edges.size());
}

std::string format(const Graph& g, const LeftInfinitePath& x) {
  std::string out = "(" + dotted(g, x.cycle.edges) + ")^inf";
  if (!x.tail.edges.empty()) out += " . " + dotted(g, x.tail.edges);
  return out;
}

std::string format(const Graph& g, const RightInfinitePath& x) {
  std::string out;
  if (!x.head.edges.empty()) out = dotted(g, x.head.edges) + " . ";
  return out + "(" + dotted(g, x.cycle.edges) + ")^inf";
}

std::string format(const Graph& g, const BiInfinitePath& x) {
  std::string out = "(" + dotted(g, x.left.edges) + ")^inf . ";
  if (!x.center.edges.empty()) out += dotted(g, x.center.edges) + " . ";
  return out + "(" + dotted(g, x.right.edges) + ")^inf @ " + std::to_string(x.anchor);
}

}  // namespace selfsim
