#include "selfsim/automaton.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "selfsim/error.hpp"

namespace selfsim {

Element unit_element(VertexId v) { return Element{v, {}, std::nullopt}; }

std::string_view to_string(Violation::Kind kind) {
  switch (kind) {
    case Violation::Kind::NotBijectiveOnEdges: return "NotBijectiveOnEdges";
    case Violation::Kind::RestrictionVertexMismatch: return "RestrictionVertexMismatch";
    case Violation::Kind::MissingRule: return "MissingRule";
    case Violation::Kind::RuleOutsideDomain: return "RuleOutsideDomain";
    case Violation::Kind::WordNotComposable: return "WordNotComposable";
  }
  return "Unknown";
}

namespace {

VertexId sym_dom(const std::vector<GeneratorDef>& gens, Symbol s) {
  return s.inverse ? gens[s.gen].cod : gens[s.gen].dom;
}
VertexId sym_cod(const std::vector<GeneratorDef>& gens, Symbol s) {
  return s.inverse ? gens[s.gen].dom : gens[s.gen].cod;
}

Word inverse_word(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(it->inverted());
  return out;
}

}  // namespace

std::vector<Violation> validate_automaton(const Graph& graph, const std::vector<GeneratorDef>& gens) {
  using K = Violation::Kind;
  std::vector<Violation> out;
  for (const auto& g : gens) {
    std::map<EdgeId, const Rule*> by_edge;
    bool bijective = true;
    for (const auto& [e, rule] : g.rules) {
      if (e >= graph.edge_count() || graph.range(e) != g.dom) {
        out.push_back({K::RuleOutsideDomain, g.name, e < graph.edge_count() ? graph.edge_name(e) : "?",
                       "r(e) != d(" + g.name + ")"});
        continue;
      }
      if (!by_edge.emplace(e, &rule).second) bijective = false;
    }
    for (EdgeId e : graph.edges_into(g.dom)) {
      if (!by_edge.count(e)) out.push_back({K::MissingRule, g.name, graph.edge_name(e), "no rule"});
    }

    std::set<EdgeId> images;
    for (const auto& [e, rule] : by_edge) {
      if (rule->image >= graph.edge_count() || graph.range(rule->image) != g.cod) {
        bijective = false;
        continue;
      }
      if (!images.insert(rule->image).second) bijective = false;
    }
    if (images.size() != graph.edges_into(g.cod).size()) bijective = false;
    if (!bijective) {
      out.push_back({K::NotBijectiveOnEdges, g.name, "",
                     "e -> " + g.name + ".e is not a bijection d(g)E^1 -> c(g)E^1"});
    }

    for (const auto& [e, rule] : by_edge) {
      if (rule->image >= graph.edge_count()) continue;
      const VertexId want_dom = graph.source(e);
      const VertexId want_cod = graph.source(rule->image);
      const auto& w = rule->restriction;
      bool symbols_ok = true;
      for (const auto& s : w) {
        if (s.gen >= gens.size()) symbols_ok = false;
      }
      if (!symbols_ok) {
        out.push_back({K::WordNotComposable, g.name, graph.edge_name(e), "unknown generator in restriction"});
        continue;
      }
      bool composable = true;
      for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        if (sym_dom(gens, w[i]) != sym_cod(gens, w[i + 1])) composable = false;
      }
      if (!composable) {
        out.push_back({K::WordNotComposable, g.name, graph.edge_name(e), "restriction word is not composable"});
        continue;
      }
      VertexId d = w.empty() ? rule->unit.value_or(want_dom) : sym_dom(gens, w.back());
      VertexId c = w.empty() ? rule->unit.value_or(want_dom) : sym_cod(gens, w.front());
      if (w.empty() && want_dom != want_cod) {
        // A unit restriction needs s(e) = s(g.e).
        c = want_dom;
        d = want_dom;
        out.push_back({K::RestrictionVertexMismatch, g.name, graph.edge_name(e),
                       "unit restriction but s(e) = " + graph.vertex_name(want_dom) +
                           " != s(g.e) = " + graph.vertex_name(want_cod)});
        continue;
      }
      if (d != want_dom || c != want_cod) {
        out.push_back({K::RestrictionVertexMismatch, g.name, graph.edge_name(e),
                       "restriction must run " + graph.vertex_name(want_dom) + " -> " +
                           graph.vertex_name(want_cod)});
      }
    }
  }
  return out;
}

Automaton Automaton::build(Graph graph, std::vector<GeneratorDef> gens) {
  {
    std::set<std::string> names;
    for (const auto& g : gens) {
      if (!names.insert(g.name).second) {
        throw Error(ErrorCode::DuplicateId, "generator '" + g.name + "' declared twice");
      }
      if (graph.find_vertex(g.name) || graph.find_edge(g.name)) {
        throw Error(ErrorCode::DuplicateId, "generator '" + g.name + "' clashes with a vertex or edge");
      }
    }
  }
  if (auto violations = validate_automaton(graph, gens); !violations.empty()) {
    std::string msg;
    for (const auto& v : violations) {
      msg += std::string(to_string(v.kind)) + "(" + v.generator + (v.edge.empty() ? "" : "," + v.edge) +
             "): " + v.detail + "; ";
    }
    throw Error(ErrorCode::ValidationError, msg);
  }

  // Generators are renumbered in name order; restriction words follow.
  std::vector<std::uint32_t> order(gens.size());
  for (std::uint32_t i = 0; i < gens.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](auto x, auto y) { return gens[x].name < gens[y].name; });
  std::vector<std::uint32_t> renumber(gens.size());
  for (std::uint32_t i = 0; i < order.size(); ++i) renumber[order[i]] = i;
  std::vector<GeneratorDef> sorted;
  sorted.reserve(gens.size());
  for (auto i : order) {
    GeneratorDef g = std::move(gens[i]);
    for (auto& [e, rule] : g.rules) {
      for (auto& s : rule.restriction) s.gen = renumber[s.gen];
    }
    std::sort(g.rules.begin(), g.rules.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    sorted.push_back(std::move(g));
  }

  Automaton a;
  a.graph_ = std::move(graph);
  a.gens_ = std::move(sorted);
  a.tables_.assign(a.gens_.size() * 2, std::vector<Rule>(a.graph_.edge_count()));
  for (std::uint32_t gi = 0; gi < a.gens_.size(); ++gi) {
    auto& fwd = a.tables_[Symbol{gi, false}.code()];
    auto& inv = a.tables_[Symbol{gi, true}.code()];
    for (const auto& [e, rule] : a.gens_[gi].rules) {
      fwd[e] = Rule{rule.image, rule.restriction, std::nullopt};
      inv[rule.image] = Rule{e, inverse_word(rule.restriction), std::nullopt};
    }
  }
  return a;
}

std::optional<std::uint32_t> Automaton::find_generator(std::string_view name) const {
  for (std::uint32_t i = 0; i < gens_.size(); ++i) {
    if (gens_[i].name == name) return i;
  }
  return std::nullopt;
}

const Rule& Automaton::rule(Symbol s, EdgeId e) const {
  const Rule& r = tables_.at(s.code()).at(e);
  if (r.image == kNoEdge) {
    throw Error(ErrorCode::DomainMismatch, "edge " + graph_.edge_name(e) + " is not in d(" + symbol_name(s) + ")E^1");
  }
  return r;
}

std::string Automaton::symbol_name(Symbol s) const {
  return gens_.at(s.gen).name + (s.inverse ? "^-1" : "");
}

std::string Automaton::format_word(const Word& w, VertexId unit_vertex) const {
  if (w.empty()) return graph_.vertex_name(unit_vertex);
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += symbol_name(w[i]);
  }
  return out;
}

std::string Automaton::format(const Element& g) const { return format_word(g.word, g.dom); }

std::vector<Symbol> Automaton::symbols() const {
  std::vector<Symbol> out;
  for (std::uint32_t i = 0; i < gens_.size(); ++i) {
    out.push_back({i, false});
    out.push_back({i, true});
  }
  return out;
}

bool is_composable(const Automaton& a, const Word& w) {
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    if (a.dom(w[i]) != a.cod(w[i + 1])) return false;
  }
  return true;
}

VertexId dom_of(const Automaton& a, const Element& g) {
  return g.word.empty() ? g.dom : a.dom(g.word.back());
}

VertexId cod_of(const Automaton& a, const Element& g) {
  return g.word.empty() ? g.dom : a.cod(g.word.front());
}

Element make_element(const Automaton& a, Word w, std::optional<VertexId> unit_dom) {
  if (w.empty()) {
    if (!unit_dom) throw Error(ErrorCode::InvalidArgument, "a unit needs its vertex");
    return unit_element(*unit_dom);
  }
  for (const auto& s : w) {
    if (s.gen >= a.generator_count()) throw Error(ErrorCode::UnknownSymbol, "generator index out of range");
  }
  if (!is_composable(a, w)) {
    throw Error(ErrorCode::NonComposable, "word " + a.format_word(w, 0) + " is not composable");
  }
  Element g;
  g.dom = a.dom(w.back());
  g.word = std::move(w);
  return g;
}

Element free_reduce(const Automaton& a, Element g) {
  Word out;
  out.reserve(g.word.size());
  for (const auto& s : g.word) {
    if (!out.empty() && out.back() == s.inverted()) {
      out.pop_back();
    } else {
      out.push_back(s);
    }
  }
  // s s^-1 collapses to the unit at c(s), which is the dom of what remains.
  g.dom = dom_of(a, g);
  g.word = std::move(out);
  g.canonical.reset();
  return g;
}

EdgeStep act_edge(const Automaton& a, const Element& g, EdgeId e) {
  const Graph& graph = a.graph();
  if (graph.range(e) != dom_of(a, g)) {
    throw Error(ErrorCode::DomainMismatch, "r(" + graph.edge_name(e) + ") != d(" + a.format(g) + ")");
  }
  if (g.word.empty()) return {e, unit_element(graph.source(e))};

  // (s1 ... sk)|_e = s1|_{(s2..sk).e} ... sk|_e, with sk acting first.
  std::vector<const Word*> pieces(g.word.size());
  EdgeId cur = e;
  for (std::size_t i = g.word.size(); i-- > 0;) {
    const Rule& r = a.rule(g.word[i], cur);
    pieces[i] = &r.restriction;
    cur = r.image;
  }
  Element rest;
  rest.dom = graph.source(e);
  for (const auto* p : pieces) rest.word.insert(rest.word.end(), p->begin(), p->end());
  return {cur, free_reduce(a, std::move(rest))};
}

Path act(const Automaton& a, const Element& g, const Path& p) {
  const Graph& graph = a.graph();
  if (range_of(graph, p) != dom_of(a, g)) {
    throw Error(ErrorCode::DomainMismatch, "r(" + format_path(graph, p) + ") != d(" + a.format(g) + ")");
  }
  Path out{cod_of(a, g), {}};
  out.edges.reserve(p.edges.size());
  Element cur = g;
  for (EdgeId e : p.edges) {
    auto step = act_edge(a, cur, e);
    out.edges.push_back(step.image);
    cur = std::move(step.restriction);
  }
  return out;
}

Element restrict(const Automaton& a, const Element& g, const Path& p) {
  const Graph& graph = a.graph();
  if (range_of(graph, p) != dom_of(a, g)) {
    throw Error(ErrorCode::DomainMismatch, "r(" + format_path(graph, p) + ") != d(" + a.format(g) + ")");
  }
  Element cur = g;
  cur.canonical.reset();
  for (EdgeId e : p.edges) cur = act_edge(a, cur, e).restriction;
  return cur;
}

Element compose(const Automaton& a, const Element& h, const Element& g) {
  if (dom_of(a, h) != cod_of(a, g)) {
    throw Error(ErrorCode::NonComposable, "d(" + a.format(h) + ") != c(" + a.format(g) + ")");
  }
  Element out;
  out.dom = dom_of(a, g);
  out.word = h.word;
  out.word.insert(out.word.end(), g.word.begin(), g.word.end());
  return out;
}

Element inverse(const Automaton& a, const Element& g) {
  Element out;
  out.dom = cod_of(a, g);
  out.word = inverse_word(g.word);
  return out;
}

}  // namespace selfsim
