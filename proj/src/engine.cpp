#include "selfsim/engine.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "json.hpp"

#include "selfsim/error.hpp"

namespace selfsim {

std::size_t ActionEngine::KeyHash::operator()(const Key& k) const noexcept {
  std::size_t h = 1469598103934665603ULL;
  for (auto x : k) {
    h ^= x;
    h *= 1099511628211ULL;
  }
  return h;
}

namespace {

std::vector<std::uint32_t> key_of(const Element& e) {
  std::vector<std::uint32_t> k;
  k.reserve(e.word.size() + 1);
  k.push_back(e.dom);
  for (const auto& s : e.word) k.push_back(s.code());
  return k;
}

std::vector<std::uint32_t> signature(VertexId dom, VertexId cod, const std::vector<EdgeId>& image) {
  std::vector<std::uint32_t> k{dom, cod};
  k.insert(k.end(), image.begin(), image.end());
  return k;
}

bool shorter_lex(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

ActionEngine::ActionEngine(Automaton automaton, EngineBounds bounds)
    : automaton_(std::move(automaton)), bounds_(bounds) {
  std::vector<Element> units;
  for (VertexId v = 0; v < graph().vertex_count(); ++v) units.push_back(unit_element(v));
  canonicalize(units);
}

ClassId ActionEngine::canonical(const Element& g) {
  if (g.canonical && *g.canonical < classes_.size()) return *g.canonical;
  Element e = g.word.empty() ? unit_element(g.dom) : make_element(automaton_, g.word);
  return canonicalize({std::move(e)}).front();
}

ClassId ActionEngine::symbol(Symbol s) { return canonical(make_element(automaton_, {s})); }

bool ActionEngine::equal(const Element& g, const Element& h) { return canonical(g) == canonical(h); }

ClassId ActionEngine::product(ClassId h, ClassId g) {
  if (auto it = products_.find({h, g}); it != products_.end()) return it->second;
  const auto& hi = info(h);
  const auto& gi = info(g);
  if (hi.dom != gi.cod) {
    throw Error(ErrorCode::NonComposable, "d(" + name(h) + ") != c(" + name(g) + ")");
  }
  Element e;
  e.dom = gi.dom;
  e.word = hi.rep;
  e.word.insert(e.word.end(), gi.rep.begin(), gi.rep.end());
  ClassId c = canonicalize({free_reduce(automaton_, std::move(e))}).front();
  products_.emplace(std::make_pair(h, g), c);
  return c;
}

ClassId ActionEngine::inverse(ClassId c) {
  if (inverse_.at(c)) return *inverse_[c];
  ClassId inv = canonical(selfsim::inverse(automaton_, element(c)));
  inverse_[c] = inv;
  if (inverse_.size() > inv) inverse_[inv] = c;
  return inv;
}

std::vector<ClassId> ActionEngine::canonicalize(const std::vector<Element>& elems) {
  const auto known = static_cast<std::uint32_t>(classes_.size());
  struct Node {
    Element elem;
    Key key;
    VertexId cod;
    std::vector<EdgeId> image;
    std::vector<std::uint32_t> succ;  // < known: class, else known + node index
  };
  std::vector<Node> nodes;
  std::unordered_map<Key, std::uint32_t, KeyHash> local;

  auto lookup = [&](Element el) -> std::uint32_t {
    Key k = key_of(el);
    if (auto it = memo_.find(k); it != memo_.end()) return it->second;
    if (auto it = local.find(k); it != local.end()) return known + it->second;
    if (el.word.size() > bounds_.max_word_length) {
      throw Error(ErrorCode::ClosureLimitExceeded,
                  "restriction word longer than " + std::to_string(bounds_.max_word_length));
    }
    if (known + nodes.size() + 1 > bounds_.max_states) {
      throw Error(ErrorCode::ClosureLimitExceeded, "more than " + std::to_string(bounds_.max_states) + " states");
    }
    auto idx = static_cast<std::uint32_t>(nodes.size());
    local.emplace(k, idx);
    VertexId cod = cod_of(automaton_, el);
    nodes.push_back(Node{std::move(el), std::move(k), cod, {}, {}});
    return known + idx;
  };

  std::vector<std::uint32_t> result;
  result.reserve(elems.size());
  for (const auto& e : elems) result.push_back(lookup(free_reduce(automaton_, e)));

  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const VertexId d = nodes[i].elem.dom;
    for (EdgeId e : graph().edges_into(d)) {
      auto step = selfsim::act_edge(automaton_, nodes[i].elem, e);
      std::uint32_t s = lookup(std::move(step.restriction));
      nodes[i].image.push_back(step.image);
      nodes[i].succ.push_back(s);
    }
  }
  if (nodes.empty()) return result;

  // Universe for refinement: new nodes, then the known classes sharing a
  // signature with one of them. Known classes are pairwise distinct, so any
  // other known class is its own fixed block, labelled total + id.
  const std::size_t n = nodes.size();
  std::vector<ClassId> reached;
  std::unordered_map<ClassId, std::uint32_t> reached_index;
  for (const auto& node : nodes) {
    auto it = by_signature_.find(signature(node.elem.dom, node.cod, node.image));
    if (it == by_signature_.end()) continue;
    for (ClassId c : it->second)
      if (reached_index.emplace(c, static_cast<std::uint32_t>(n + reached.size())).second) reached.push_back(c);
  }
  const std::size_t total = n + reached.size();
  auto local_of = [&](std::uint32_t s) -> std::uint32_t {
    if (s >= known) return s - known;
    auto it = reached_index.find(s);
    return it == reached_index.end() ? static_cast<std::uint32_t>(total + s) : it->second;
  };
  auto block_of = [&](const std::vector<std::uint32_t>& block, std::uint32_t s) { return s < total ? block[s] : s; };
  std::vector<std::vector<std::uint32_t>> succ(total);
  std::vector<std::uint32_t> block(total);
  {
    std::map<std::vector<std::uint32_t>, std::uint32_t> ids;
    for (std::size_t i = 0; i < total; ++i) {
      std::vector<std::uint32_t> sig;
      if (i < n) {
        sig = {nodes[i].elem.dom, nodes[i].cod};
        sig.insert(sig.end(), nodes[i].image.begin(), nodes[i].image.end());
        for (auto s : nodes[i].succ) succ[i].push_back(local_of(s));
      } else {
        const auto& c = classes_[reached[i - n]];
        sig = {c.dom, c.cod};
        sig.insert(sig.end(), c.image.begin(), c.image.end());
        for (auto s : c.succ) succ[i].push_back(local_of(s));
      }
      block[i] = ids.emplace(std::move(sig), static_cast<std::uint32_t>(ids.size())).first->second;
    }
    std::size_t count = ids.size();
    for (;;) {
      std::map<std::vector<std::uint32_t>, std::uint32_t> next_ids;
      std::vector<std::uint32_t> next(total);
      for (std::size_t i = 0; i < total; ++i) {
        std::vector<std::uint32_t> sig{block[i]};
        for (auto s : succ[i]) sig.push_back(block_of(block, s));
        next[i] = next_ids.emplace(std::move(sig), static_cast<std::uint32_t>(next_ids.size())).first->second;
      }
      block = std::move(next);
      if (next_ids.size() == count) break;
      count = next_ids.size();
    }
  }

  // Blocks holding a known class resolve to it; the rest become new classes
  // numbered by their first node.
  std::unordered_map<std::uint32_t, ClassId> block_class;
  for (std::size_t i = n; i < total; ++i) {
    auto [it, fresh] = block_class.emplace(block[i], reached[i - n]);
    if (!fresh && it->second != reached[i - n]) {
      throw Error(ErrorCode::Diverged, "class table lost minimality");
    }
  }
  std::vector<ClassId> node_class(n);
  std::vector<std::size_t> first_node;
  auto next_id = known;
  for (std::size_t i = 0; i < n; ++i) {
    auto [it, fresh] = block_class.emplace(block[i], next_id);
    if (fresh) {
      ++next_id;
      first_node.push_back(i);
    }
    node_class[i] = it->second;
  }
  auto resolve = [&](std::uint32_t s) -> ClassId { return s < known ? s : node_class[s - known]; };

  for (std::size_t f : first_node) {
    ClassInfo ci;
    ci.dom = nodes[f].elem.dom;
    ci.cod = nodes[f].cod;
    ci.image = nodes[f].image;
    for (auto s : nodes[f].succ) ci.succ.push_back(resolve(s));
    ci.rep = nodes[f].elem.word;
    by_signature_[signature(ci.dom, ci.cod, ci.image)].push_back(static_cast<ClassId>(classes_.size()));
    classes_.push_back(std::move(ci));
  }
  for (std::size_t i = 0; i < n; ++i) {
    ClassId c = node_class[i];
    if (c >= known && shorter_lex(nodes[i].elem.word, classes_[c].rep)) classes_[c].rep = nodes[i].elem.word;
    memo_.emplace(std::move(nodes[i].key), c);
  }
  for (ClassId c = known; c < classes_.size(); ++c) classes_[c].unit = classes_[c].rep.empty();
  inverse_.resize(classes_.size());

  for (auto& r : result) r = resolve(r);
  return result;
}

void ActionEngine::check_domain(ClassId c, EdgeId e) const {
  if (graph().range(e) != info(c).dom) {
    throw Error(ErrorCode::DomainMismatch, "r(" + graph().edge_name(e) + ") != d(" + name(c) + ")");
  }
}

EdgeId ActionEngine::act_edge(ClassId c, EdgeId e) const {
  check_domain(c, e);
  return classes_[c].image[graph().slot(e)];
}

ClassId ActionEngine::restrict_edge(ClassId c, EdgeId e) const {
  check_domain(c, e);
  return classes_[c].succ[graph().slot(e)];
}

Path ActionEngine::act(ClassId c, const Path& p) const {
  if (range_of(graph(), p) != dom(c)) {
    throw Error(ErrorCode::DomainMismatch, "r(" + format_path(graph(), p) + ") != d(" + name(c) + ")");
  }
  Path out{cod(c), {}};
  out.edges.reserve(p.edges.size());
  for (EdgeId e : p.edges) {
    const auto slot = graph().slot(e);
    out.edges.push_back(classes_[c].image[slot]);
    c = classes_[c].succ[slot];
  }
  return out;
}

ClassId ActionEngine::restrict(ClassId c, const Path& p) const {
  if (range_of(graph(), p) != dom(c)) {
    throw Error(ErrorCode::DomainMismatch, "r(" + format_path(graph(), p) + ") != d(" + name(c) + ")");
  }
  for (EdgeId e : p.edges) c = classes_[c].succ[graph().slot(e)];
  return c;
}

RightInfinitePath ActionEngine::act_infinite(ClassId c, const RightInfinitePath& x) const {
  if (range_of(graph(), x) != dom(c)) {
    throw Error(ErrorCode::DomainMismatch, "r(" + format(graph(), x) + ") != d(" + name(c) + ")");
  }
  const auto h = static_cast<std::int64_t>(x.head.edges.size());
  const auto q = static_cast<std::int64_t>(x.cycle.edges.size());
  std::vector<EdgeId> out;
  std::map<std::pair<ClassId, std::int64_t>, std::size_t> seen;
  for (std::int64_t i = 1;; ++i) {
    if (i > h) {
      auto [it, fresh] = seen.emplace(std::make_pair(c, (i - 1 - h) % q), out.size());
      if (!fresh) {
        std::vector<EdgeId> head(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(it->second));
        std::vector<EdgeId> cycle(out.begin() + static_cast<std::ptrdiff_t>(it->second), out.end());
        return make_right(graph(), std::move(head), std::move(cycle));
      }
    }
    const EdgeId e = edge_at(x, i);
    const auto slot = graph().slot(e);
    out.push_back(classes_[c].image[slot]);
    c = classes_[c].succ[slot];
  }
}

Element ActionEngine::element(ClassId c) const {
  const auto& ci = info(c);
  return Element{ci.dom, ci.rep, c};
}

std::string ActionEngine::name(ClassId c) const {
  const auto& ci = info(c);
  return automaton_.format_word(ci.rep, ci.dom);
}

std::vector<ClassId> ActionEngine::closure(const std::vector<ClassId>& seeds) const {
  std::vector<ClassId> order;
  std::vector<bool> seen(classes_.size(), false);
  std::deque<ClassId> queue;
  for (ClassId s : seeds) {
    if (!seen.at(s)) {
      seen[s] = true;
      order.push_back(s);
      queue.push_back(s);
    }
  }
  while (!queue.empty()) {
    ClassId c = queue.front();
    queue.pop_front();
    for (ClassId s : classes_[c].succ) {
      if (!seen[s]) {
        seen[s] = true;
        order.push_back(s);
        queue.push_back(s);
      }
    }
  }
  return order;
}

std::optional<std::uint32_t> StateMachine::index_of(ClassId c) const {
  for (std::uint32_t i = 0; i < states.size(); ++i) {
    if (states[i].cls == c) return i;
  }
  return std::nullopt;
}

StateMachine machine_of(const ActionEngine& engine, const std::vector<ClassId>& seeds) {
  const Graph& g = engine.graph();
  StateMachine m;
  auto order = engine.closure(seeds);
  std::unordered_map<ClassId, std::uint32_t> index;
  for (std::uint32_t i = 0; i < order.size(); ++i) index.emplace(order[i], i);
  for (ClassId c : order) {
    const auto& ci = engine.info(c);
    MachineState st;
    st.cls = c;
    st.name = engine.name(c);
    st.dom = ci.dom;
    st.cod = ci.cod;
    st.unit = ci.unit;
    auto into = g.edges_into(ci.dom);
    st.edges.assign(into.begin(), into.end());
    st.images = ci.image;
    for (ClassId s : ci.succ) st.next.push_back(index.at(s));
    m.states.push_back(std::move(st));
  }
  return m;
}

StateMachine reachable_closure(ActionEngine& engine, const std::vector<Element>& seeds) {
  std::vector<ClassId> ids;
  for (const auto& s : seeds) ids.push_back(engine.canonical(s));
  return machine_of(engine, ids);
}

std::string machine_json(const ActionEngine& engine, const StateMachine& m) {
  const Graph& g = engine.graph();
  nlohmann::ordered_json states = nlohmann::ordered_json::array();
  for (std::uint32_t i = 0; i < m.states.size(); ++i) {
    const auto& st = m.states[i];
    nlohmann::ordered_json arcs = nlohmann::ordered_json::array();
    for (std::size_t k = 0; k < st.edges.size(); ++k) {
      arcs.push_back({{"edge", g.edge_name(st.edges[k])},
                      {"image", g.edge_name(st.images[k])},
                      {"next", st.next[k]}});
    }
    states.push_back({{"id", i},
                      {"name", st.name},
                      {"dom", g.vertex_name(st.dom)},
                      {"cod", g.vertex_name(st.cod)},
                      {"unit", st.unit},
                      {"transitions", std::move(arcs)}});
  }
  nlohmann::ordered_json out{{"schema", 1}, {"states", std::move(states)}};
  return out.dump(2);
}

std::string machine_dot(const ActionEngine& engine, const StateMachine& m) {
  const Graph& g = engine.graph();
  std::ostringstream os;
  os << "digraph machine {\n";
  for (std::uint32_t i = 0; i < m.states.size(); ++i) {
    os << "  s" << i << " [label=\"" << m.states[i].name << "\"" << (m.states[i].unit ? ", shape=box" : "")
       << "];\n";
  }
  for (std::uint32_t i = 0; i < m.states.size(); ++i) {
    const auto& st = m.states[i];
    for (std::size_t k = 0; k < st.edges.size(); ++k) {
      os << "  s" << i << " -> s" << st.next[k] << " [label=\"" << g.edge_name(st.edges[k]) << "/"
         << g.edge_name(st.images[k]) << "\"];\n";
    }
  }
  os << "}\n";
  return os.str();
}

}  // namespace selfsim
