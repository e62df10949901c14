#include "selfsim/nucleus.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "json.hpp"

#include "selfsim/error.hpp"

namespace selfsim {

bool Nucleus::contains(ClassId c) const { return std::find(states.begin(), states.end(), c) != states.end(); }

std::vector<ClassId> Nucleus::non_units(const ActionEngine& engine) const {
  std::vector<ClassId> out;
  for (ClassId c : states)
    if (!engine.is_unit(c)) out.push_back(c);
  return out;
}

std::vector<ClassId> limit_restrictions(const ActionEngine& engine, ClassId c) {
  const auto nodes = engine.closure({c});
  std::vector<ClassId> on_cycle;
  for (ClassId u : nodes) {
    // u lies on a cycle iff it is reachable from one of its own successors.
    const auto& succ = engine.info(u).succ;
    std::vector<ClassId> from(succ.begin(), succ.end());
    auto reach = engine.closure(from);
    if (std::find(reach.begin(), reach.end(), u) != reach.end()) on_cycle.push_back(u);
  }
  auto out = engine.closure(on_cycle);
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

std::vector<ClassId> sorted_states(const ActionEngine& engine, std::vector<ClassId> s) {
  std::sort(s.begin(), s.end(), [&](ClassId a, ClassId b) {
    const auto& x = engine.info(a);
    const auto& y = engine.info(b);
    if (x.unit != y.unit) return x.unit;
    if (x.rep.size() != y.rep.size()) return x.rep.size() < y.rep.size();
    if (x.rep != y.rep) return std::lexicographical_compare(x.rep.begin(), x.rep.end(), y.rep.begin(), y.rep.end());
    return x.dom < y.dom;
  });
  return s;
}

class LimitCache {
 public:
  explicit LimitCache(const ActionEngine& engine) : engine_(engine) {}
  const std::vector<ClassId>& operator()(ClassId c) {
    auto it = cache_.find(c);
    if (it == cache_.end()) it = cache_.emplace(c, limit_restrictions(engine_, c)).first;
    return it->second;
  }

 private:
  const ActionEngine& engine_;
  std::map<ClassId, std::vector<ClassId>> cache_;
};

}  // namespace

NucleusResult compute_nucleus(ActionEngine& engine, NucleusBounds bounds) {
  const Automaton& a = engine.automaton();
  std::size_t round = 0;
  try {
    std::vector<ClassId> seeds;
    for (VertexId v = 0; v < engine.graph().vertex_count(); ++v) seeds.push_back(engine.unit(v));
    for (Symbol s : a.symbols()) seeds.push_back(engine.symbol(s));
    std::vector<ClassId> S = engine.closure(seeds);
    std::set<ClassId> in_s(S.begin(), S.end());
    LimitCache limit(engine);

    std::size_t fresh_from = 0;
    for (;;) {
      if (S.size() > bounds.max_states) {
        return NotContractingWithinBound{"max_states", std::to_string(S.size()) + " candidate states", round};
      }
      if (round >= bounds.max_rounds) {
        return NotContractingWithinBound{"max_rounds", "no fixpoint after " + std::to_string(round) + " rounds",
                                         round};
      }
      ++round;
      const std::size_t size = S.size();
      for (std::size_t i = 0; i < size; ++i) {
        if (engine.is_unit(S[i])) continue;
        for (std::size_t j = 0; j < size; ++j) {
          if (i < fresh_from && j < fresh_from) continue;
          if (engine.is_unit(S[j]) || engine.dom(S[i]) != engine.cod(S[j])) continue;
          for (ClassId x : limit(engine.product(S[i], S[j]))) {
            if (in_s.insert(x).second) S.push_back(x);
          }
        }
      }
      if (S.size() == size) break;
      fresh_from = size;
    }

    std::set<ClassId> core;
    for (ClassId s : S) {
      const auto& l = limit(s);
      core.insert(l.begin(), l.end());
    }
    Nucleus n;
    n.states = sorted_states(engine, {core.begin(), core.end()});
    n.rounds = round;
    if (auto why = certificate_failure(engine, n.states)) {
      throw Error(ErrorCode::Diverged, "nucleus certificate failed: " + *why);
    }
    n.machine = machine_of(engine, n.states);
    n.r_k[1] = 0;
    return n;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::ClosureLimitExceeded) throw;
    const std::string what = e.what();
    const bool words = what.find("word") != std::string::npos;
    return NotContractingWithinBound{words ? "max_word_length" : "max_states", what, round};
  }
}

std::optional<std::string> certificate_failure(ActionEngine& engine, const std::vector<ClassId>& states) {
  const std::set<ClassId> in(states.begin(), states.end());
  LimitCache limit(engine);
  auto check = [&](ClassId p, const std::string& label) -> std::optional<std::string> {
    for (ClassId x : limit(p)) {
      if (!in.count(x)) return "limit(" + label + ") contains " + engine.name(x);
    }
    return std::nullopt;
  };
  for (Symbol s : engine.automaton().symbols()) {
    if (auto f = check(engine.symbol(s), engine.automaton().symbol_name(s))) return f;
  }
  for (ClassId x : states) {
    for (ClassId y : states) {
      if (engine.dom(x) != engine.cod(y)) continue;
      if (auto f = check(engine.product(x, y), engine.name(x) + " * " + engine.name(y))) return f;
    }
  }
  return std::nullopt;
}

bool is_core_shaped(ActionEngine& engine, const std::vector<ClassId>& states) {
  const std::set<ClassId> in(states.begin(), states.end());
  for (ClassId c : states) {
    if (!in.count(engine.inverse(c))) return false;
    for (ClassId s : engine.info(c).succ)
      if (!in.count(s)) return false;
  }
  return true;
}

int compute_Rk(ActionEngine& engine, Nucleus& nucleus, int k, int max_depth) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "k must be at least 1");
  if (auto it = nucleus.r_k.find(k); it != nucleus.r_k.end()) return it->second;

  std::set<ClassId> level(nucleus.states.begin(), nucleus.states.end());
  for (int i = 1; i < k; ++i) {
    std::set<ClassId> next;
    for (ClassId x : level)
      for (ClassId n : nucleus.states)
        if (engine.dom(x) == engine.cod(n)) next.insert(engine.product(x, n));
    level = std::move(next);
  }
  const std::set<ClassId> in(nucleus.states.begin(), nucleus.states.end());
  std::set<std::set<ClassId>> seen;
  for (int j = 0; j <= max_depth; ++j) {
    if (std::includes(in.begin(), in.end(), level.begin(), level.end())) {
      nucleus.r_k[k] = j;
      return j;
    }
    if (!seen.insert(level).second) break;
    std::set<ClassId> next;
    for (ClassId x : level)
      for (ClassId s : engine.info(x).succ) next.insert(s);
    level = std::move(next);
  }
  throw Error(ErrorCode::Diverged, "restrictions of N^" + std::to_string(k) + " never enter the nucleus");
}

std::string nucleus_json(const ActionEngine& engine, const Nucleus& n) {
  auto doc = nlohmann::ordered_json::parse(machine_json(engine, n.machine));
  nlohmann::ordered_json out{{"schema", 1}, {"size", n.states.size()}, {"rounds", n.rounds}};
  out["states"] = doc["states"];
  if (!n.r_k.empty()) {
    nlohmann::ordered_json rk = nlohmann::ordered_json::object();
    for (auto [k, v] : n.r_k) rk[std::to_string(k)] = v;
    out["R"] = rk;
  }
  return out.dump(2);
}

std::string nucleus_dot(const ActionEngine& engine, const Nucleus& n) { return machine_dot(engine, n.machine); }

std::optional<Path> discerning_path(const ActionEngine& engine, const Nucleus& n, std::size_t max_length) {
  const Graph& g = engine.graph();
  struct Item {
    Path mu;
    std::vector<ClassId> fixing;  // g|_mu for g in N fixing mu
  };
  std::deque<Item> queue;
  std::set<std::pair<VertexId, std::vector<ClassId>>> seen;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    std::vector<ClassId> f;
    for (ClassId c : n.states)
      if (engine.dom(c) == v && engine.cod(c) == v) f.push_back(c);
    std::sort(f.begin(), f.end());
    if (seen.emplace(v, f).second) queue.push_back({empty_path(v), std::move(f)});
  }
  while (!queue.empty()) {
    Item it = std::move(queue.front());
    queue.pop_front();
    if (std::all_of(it.fixing.begin(), it.fixing.end(), [&](ClassId c) { return engine.is_unit(c); })) {
      return it.mu;
    }
    if (it.mu.length() >= max_length) continue;
    const VertexId s = source_of(g, it.mu);
    for (EdgeId e : g.edges_into(s)) {
      std::vector<ClassId> f;
      for (ClassId c : it.fixing)
        if (engine.act_edge(c, e) == e) f.push_back(engine.restrict_edge(c, e));
      std::sort(f.begin(), f.end());
      f.erase(std::unique(f.begin(), f.end()), f.end());
      if (!seen.emplace(g.source(e), f).second) continue;
      Path next = it.mu;
      next.edges.push_back(e);
      queue.push_back({std::move(next), std::move(f)});
    }
  }
  return std::nullopt;
}

}  // namespace selfsim
