#include "selfsim/dynamics.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>

#include "selfsim/error.hpp"

namespace selfsim {

namespace {

std::int64_t lcm64(std::int64_t a, std::int64_t b) { return a / std::gcd(a, b) * b; }

// Phases 0..P-1 of a periodic stretch of x (and optionally y). Returns, per
// phase, the nucleus states h with an infinite backward run ending at
// (phase, h): arcs (j, h) -> (j+1, h|x_j) whenever h.x_j = y_j.
std::vector<std::vector<ClassId>> live_states(const ActionEngine& engine, const std::vector<ClassId>& states,
                                              const std::vector<EdgeId>& xs, const std::vector<EdgeId>* ys) {
  const Graph& g = engine.graph();
  const std::size_t P = xs.size();
  auto emits = [&](std::size_t j, ClassId h) {
    return !ys || (engine.cod(h) == g.range((*ys)[j]) && engine.act_edge(h, xs[j]) == (*ys)[j]);
  };
  std::vector<std::set<ClassId>> alive(P);
  for (std::size_t j = 0; j < P; ++j)
    for (ClassId h : states)
      if (engine.dom(h) == g.range(xs[j])) alive[j].insert(h);

  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t j = 0; j < P; ++j) {
      const std::size_t pj = (j + P - 1) % P;
      std::set<ClassId> reached;
      for (ClassId h : alive[pj])
        if (emits(pj, h)) reached.insert(engine.restrict_edge(h, xs[pj]));
      for (auto it = alive[j].begin(); it != alive[j].end();) {
        if (!reached.count(*it)) {
          it = alive[j].erase(it);
          changed = true;
        } else {
          ++it;
        }
      }
    }
  }
  std::vector<std::vector<ClassId>> out(P);
  for (std::size_t j = 0; j < P; ++j) {
    // Keep nucleus order for deterministic witnesses.
    for (ClassId h : states)
      if (alive[j].count(h)) out[j].push_back(h);
  }
  return out;
}

bool on_fixed_arc(const ActionEngine& engine, ClassId h, EdgeId e) { return engine.act_edge(h, e) == e; }

// Fixed-edge arcs among non-units: h -e-> h|_e, h.e = e.
std::vector<std::pair<EdgeId, ClassId>> fixed_arcs(const ActionEngine& engine, ClassId h, bool units_too) {
  std::vector<std::pair<EdgeId, ClassId>> out;
  for (EdgeId e : engine.graph().edges_into(engine.dom(h))) {
    if (!on_fixed_arc(engine, h, e)) continue;
    ClassId r = engine.restrict_edge(h, e);
    if (units_too || !engine.is_unit(r)) out.emplace_back(e, r);
  }
  return out;
}

// Shortest nonempty fixed-edge loop from h back to h among non-units.
std::optional<std::vector<EdgeId>> loop_through(const ActionEngine& engine, ClassId h) {
  std::map<ClassId, std::pair<ClassId, EdgeId>> parent;
  std::deque<ClassId> queue;
  for (auto [e, r] : fixed_arcs(engine, h, false)) {
    if (r == h) return std::vector<EdgeId>{e};
    if (!parent.count(r)) {
      parent.emplace(r, std::make_pair(h, e));
      queue.push_back(r);
    }
  }
  while (!queue.empty()) {
    ClassId u = queue.front();
    queue.pop_front();
    for (auto [e, r] : fixed_arcs(engine, u, false)) {
      if (r == h) {
        std::vector<EdgeId> path{e};
        for (ClassId c = u; c != h;) {
          auto [p, pe] = parent.at(c);
          path.push_back(pe);
          c = p;
        }
        std::reverse(path.begin(), path.end());
        return path;
      }
      if (!parent.count(r) && r != h) {
        parent.emplace(r, std::make_pair(u, e));
        queue.push_back(r);
      }
    }
  }
  return std::nullopt;
}

}  // namespace

AeResult ae_equivalent(const ActionEngine& engine, const Nucleus& n, const LeftInfinitePath& x,
                       const LeftInfinitePath& y) {
  const auto T = static_cast<std::int64_t>(std::max(x.tail.length(), y.tail.length()));
  const auto P = lcm64(static_cast<std::int64_t>(x.cycle.length()), static_cast<std::int64_t>(y.cycle.length()));
  std::vector<EdgeId> xs, ys;
  for (std::int64_t j = 0; j < P; ++j) {
    xs.push_back(edge_at(x, -T - P + j));
    ys.push_back(edge_at(y, -T - P + j));
  }
  auto live = live_states(engine, n.states, xs, &ys);
  const Graph& g = engine.graph();
  for (ClassId h0 : live.back()) {
    std::vector<ClassId> run{h0};
    ClassId h = h0;
    bool ok = true;
    for (std::int64_t i = -T - 1; i <= -1 && ok; ++i) {
      const EdgeId xe = edge_at(x, i);
      const EdgeId ye = edge_at(y, i);
      if (engine.cod(h) != g.range(ye) || engine.act_edge(h, xe) != ye) {
        ok = false;
        break;
      }
      h = engine.restrict_edge(h, xe);
      if (i < -1) run.push_back(h);
    }
    if (ok) return AeResult{true, AeWitness{-T - 1, std::move(run)}};
  }
  return AeResult{false, std::nullopt};
}

std::vector<LeftInfinitePath> ae_class(const ActionEngine& engine, const Nucleus& n, const LeftInfinitePath& x) {
  const Graph& g = engine.graph();
  const auto T = static_cast<std::int64_t>(x.tail.length());
  const auto P = static_cast<std::int64_t>(x.cycle.length());
  std::vector<EdgeId> xs;
  for (std::int64_t j = 0; j < P; ++j) xs.push_back(edge_at(x, -T - P + j));
  auto live = live_states(engine, n.states, xs, nullptr);

  struct Group {
    std::vector<EdgeId> out_rev;  // y_{-1}, y_{-2}, ...
    std::vector<ClassId> states;  // sorted
  };
  std::vector<Group> groups;
  {
    std::map<std::vector<EdgeId>, std::vector<ClassId>> by_output;
    Path suffix = last_edges(g, x, static_cast<std::size_t>(T + 1));
    for (ClassId h : live.back()) by_output[engine.act(h, suffix).edges].push_back(h);
    for (auto& [out, hs] : by_output) {
      std::sort(hs.begin(), hs.end());
      groups.push_back({std::vector<EdgeId>(out.rbegin(), out.rend()), hs});
    }
  }

  std::int64_t phase = P - 1;
  std::map<std::pair<std::int64_t, std::vector<std::vector<ClassId>>>, std::size_t> seen;
  std::size_t last_count = groups.size();
  for (;;) {
    std::vector<std::vector<ClassId>> config;
    for (const auto& gr : groups) config.push_back(gr.states);
    const std::size_t len = groups.front().out_rev.size();
    auto [it, fresh] = seen.emplace(std::make_pair(phase, std::move(config)), len);
    if (!fresh) {
      const std::size_t l1 = it->second;
      std::vector<LeftInfinitePath> out;
      for (const auto& gr : groups) {
        std::vector<EdgeId> tail(gr.out_rev.rend() - static_cast<std::ptrdiff_t>(l1), gr.out_rev.rend());
        std::vector<EdgeId> cycle(gr.out_rev.rbegin(), gr.out_rev.rend() - static_cast<std::ptrdiff_t>(l1));
        out.push_back(make_left(g, std::move(cycle), std::move(tail)));
      }
      std::sort(out.begin(), out.end());
      out.erase(std::unique(out.begin(), out.end()), out.end());
      return out;
    }
    const std::int64_t prev = (phase + P - 1) % P;
    const EdgeId xe = xs[static_cast<std::size_t>(prev)];
    std::vector<Group> next;
    for (const auto& gr : groups) {
      std::map<EdgeId, std::vector<ClassId>> children;
      for (ClassId h : live[static_cast<std::size_t>(prev)]) {
        if (std::binary_search(gr.states.begin(), gr.states.end(), engine.restrict_edge(h, xe))) {
          children[engine.act_edge(h, xe)].push_back(h);
        }
      }
      for (auto& [e, hs] : children) {
        std::sort(hs.begin(), hs.end());
        Group child{gr.out_rev, std::move(hs)};
        child.out_rev.push_back(e);
        next.push_back(std::move(child));
      }
    }
    groups = std::move(next);
    phase = prev;
    if (groups.size() != last_count) {
      seen.clear();
      last_count = groups.size();
    }
  }
}

bool ae_equivalent_bi(const ActionEngine& engine, const Nucleus& n, const BiInfinitePath& x,
                      const BiInfinitePath& y) {
  const std::int64_t B = std::min(left_boundary(x), left_boundary(y)) - 1;
  const auto P = lcm64(static_cast<std::int64_t>(x.left.length()), static_cast<std::int64_t>(y.left.length()));
  std::vector<EdgeId> xs, ys;
  for (std::int64_t j = 0; j < P; ++j) {
    xs.push_back(edge_at(x, B - P + 1 + j));
    ys.push_back(edge_at(y, B - P + 1 + j));
  }
  auto live = live_states(engine, n.states, xs, &ys);
  const Graph& g = engine.graph();
  const auto xr = suffix_from(g, x, B);
  const auto yr = suffix_from(g, y, B);
  for (ClassId h : live.back()) {
    if (engine.act_infinite(h, xr) == yr) return true;
  }
  return false;
}

RegularReport is_regular(const ActionEngine& engine, const Nucleus& n) {
  for (ClassId h : n.non_units(engine)) {
    if (auto loop = loop_through(engine, h)) {
      return RegularReport{false, FixedCycle{h, make_right(engine.graph(), {}, *loop)}};
    }
  }
  // No non-unit state lies on a fixed cycle, so the digraph is acyclic.
  return RegularReport{true, std::nullopt};
}

HausdorffReport is_hausdorff(const ActionEngine& engine, const Nucleus& n) {
  const Graph& g = engine.graph();
  for (ClassId h : n.non_units(engine)) {
    auto loop = loop_through(engine, h);
    if (!loop) continue;
    // Breadth-first search for a strongly fixed path of h.
    std::map<ClassId, std::pair<ClassId, EdgeId>> parent;
    std::deque<ClassId> queue{h};
    parent.emplace(h, std::make_pair(h, kNoEdge));
    std::optional<ClassId> found;
    while (!queue.empty() && !found) {
      ClassId u = queue.front();
      queue.pop_front();
      for (auto [e, r] : fixed_arcs(engine, u, true)) {
        if (parent.count(r)) continue;
        parent.emplace(r, std::make_pair(u, e));
        if (engine.is_unit(r)) {
          found = r;
          break;
        }
        queue.push_back(r);
      }
    }
    if (!found) continue;
    std::vector<EdgeId> mu;
    for (ClassId c = *found; c != h;) {
      auto [p, e] = parent.at(c);
      mu.push_back(e);
      c = p;
    }
    std::reverse(mu.begin(), mu.end());
    return HausdorffReport{false, FixedCycle{h, make_right(g, {}, *loop)}, make_path(g, mu)};
  }
  return HausdorffReport{true, std::nullopt, std::nullopt};
}

RecurrenceReport check_recurrent(ActionEngine& engine, int depth) {
  const Graph& g = engine.graph();
  if (!validate_graph(g).strongly_connected) {
    throw Error(ErrorCode::NotStronglyConnected, "recurrence check needs a strongly connected graph");
  }
  const Automaton& a = engine.automaton();
  std::vector<ClassId> targets;
  for (VertexId v = 0; v < g.vertex_count(); ++v) targets.push_back(engine.unit(v));
  std::vector<ClassId> symbols;
  for (Symbol s : a.symbols()) symbols.push_back(engine.symbol(s));
  targets.insert(targets.end(), symbols.begin(), symbols.end());
  std::sort(targets.begin(), targets.end());
  targets.erase(std::unique(targets.begin(), targets.end()), targets.end());

  // Outstanding (e, f, h) with d(h) = s(e), c(h) = s(f), r(e), r(f) joined by g.
  std::set<std::tuple<EdgeId, EdgeId, ClassId>> open;
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    for (EdgeId f = 0; f < g.edge_count(); ++f)
      for (ClassId h : targets)
        if (engine.dom(h) == g.source(e) && engine.cod(h) == g.source(f)) open.emplace(e, f, h);

  RecurrenceReport rep;
  rep.depth = depth;
  std::set<ClassId> seen;
  std::vector<ClassId> frontier;
  auto visit = [&](ClassId c) {
    if (!seen.insert(c).second) return;
    frontier.push_back(c);
    for (EdgeId e : g.edges_into(engine.dom(c))) open.erase({e, engine.act_edge(c, e), engine.restrict_edge(c, e)});
  };
  try {
    for (VertexId v = 0; v < g.vertex_count(); ++v) visit(engine.unit(v));
    for (ClassId s : symbols) visit(s);
    for (int k = 1; k < depth && !open.empty(); ++k) {
      auto layer = std::move(frontier);
      frontier.clear();
      for (ClassId c : layer)
        for (ClassId s : symbols)
          if (engine.dom(s) == engine.cod(c)) visit(engine.product(s, c));
    }
  } catch (const Error& err) {
    if (err.code() != ErrorCode::ClosureLimitExceeded) throw;
  }
  for (const auto& [e, f, h] : open) {
    rep.missing.push_back(g.edge_name(e) + " -> " + g.edge_name(f) + " | " + engine.name(h));
  }
  rep.recurrent = open.empty();
  return rep;
}

Germ make_germ(const ActionEngine& engine, RightInfinitePath x, std::size_t m, ClassId g, std::size_t n,
               RightInfinitePath y) {
  const Graph& gr = engine.graph();
  auto yn = drop(gr, y, n);
  if (engine.dom(g) != range_of(gr, yn)) {
    throw Error(ErrorCode::InvalidGerm, "d(" + engine.name(g) + ") != r(varsigma^n(y))");
  }
  if (engine.act_infinite(g, yn) != drop(gr, x, m)) {
    throw Error(ErrorCode::InvalidGerm, "varsigma^m(x) != g . varsigma^n(y)");
  }
  return Germ{std::move(x), m, g, n, std::move(y)};
}

bool germ_equal(const ActionEngine& engine, const Germ& a, const Germ& b) {
  if (a.x != b.x || a.y != b.y) return false;
  if (static_cast<std::int64_t>(a.m) - static_cast<std::int64_t>(a.n) !=
      static_cast<std::int64_t>(b.m) - static_cast<std::int64_t>(b.n)) {
    return false;
  }
  const auto& y = a.y;
  const std::size_t start = std::max(a.n, b.n);
  ClassId p = a.g, q = b.g;
  for (std::size_t i = a.n + 1; i <= start; ++i) p = engine.restrict_edge(p, edge_at(y, static_cast<std::int64_t>(i)));
  for (std::size_t i = b.n + 1; i <= start; ++i) q = engine.restrict_edge(q, edge_at(y, static_cast<std::int64_t>(i)));
  const std::size_t head = y.head.length();
  const std::size_t period = y.cycle.length();
  std::set<std::tuple<ClassId, ClassId, std::size_t>> seen;
  for (std::size_t l = start;; ++l) {
    if (p == q) return true;
    if (l >= head && !seen.emplace(p, q, (l - head) % period).second) return false;
    const EdgeId e = edge_at(y, static_cast<std::int64_t>(l + 1));
    p = engine.restrict_edge(p, e);
    q = engine.restrict_edge(q, e);
  }
}

bool stable_equivalent(const ActionEngine& engine, const Nucleus& n, const BiInfinitePath& x,
                       const BiInfinitePath& y) {
  const Graph& g = engine.graph();
  const auto P = lcm64(static_cast<std::int64_t>(x.left.length()), static_cast<std::int64_t>(y.left.length()));
  const std::int64_t top = std::max<std::int64_t>(0, 1 - std::min(left_boundary(x), left_boundary(y))) + P;
  // Holding at m forces it at every m' > m, since the shift descends to classes.
  for (std::int64_t m = 0; m <= top; ++m) {
    if (ae_equivalent(engine, n, truncate_left(g, x, -m), truncate_left(g, y, -m)).equivalent) return true;
  }
  return false;
}

std::vector<ClassId> unstable_family(ActionEngine& engine, const Nucleus& n) {
  std::vector<ClassId> seeds = n.states;
  for (ClassId a : n.states)
    for (ClassId b : n.states)
      if (engine.dom(a) == engine.cod(b)) seeds.push_back(engine.product(a, b));
  auto all = engine.closure(seeds);
  std::vector<ClassId> rest;
  for (ClassId c : all)
    if (!n.contains(c)) rest.push_back(c);
  std::sort(rest.begin(), rest.end(), [&](ClassId p, ClassId q) {
    const auto& a = engine.info(p).rep;
    const auto& b = engine.info(q).rep;
    if (a.size() != b.size()) return a.size() < b.size();
    if (a != b) return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    return p < q;
  });
  std::vector<ClassId> out = n.states;
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

std::optional<UnstableWitness> unstable_equivalent(ActionEngine& engine, const Nucleus& n,
                                                   const BiInfinitePath& x, const BiInfinitePath& y) {
  const Graph& g = engine.graph();
  const auto family = unstable_family(engine, n);
  const auto Q = lcm64(static_cast<std::int64_t>(x.right.length()), static_cast<std::int64_t>(y.right.length()));
  const std::int64_t top = std::max<std::int64_t>(0, std::max(right_boundary(x), right_boundary(y)) - 1) + Q;
  // F is restriction closed, so a witness at M yields one at M + 1.
  for (std::int64_t M = 0; M <= top; ++M) {
    const auto xr = suffix_from(g, x, M + 1);
    const auto yr = suffix_from(g, y, M + 1);
    for (ClassId c : family) {
      if (engine.dom(c) != range_of(g, xr) || engine.cod(c) != range_of(g, yr)) continue;
      if (engine.act_infinite(c, xr) == yr) return UnstableWitness{M, c};
    }
  }
  return std::nullopt;
}

}  // namespace selfsim
