#ifndef SELFSIM_AUTOMATON_HPP
#define SELFSIM_AUTOMATON_HPP

// E-automata: finite rule tables g.e = f, g|_e = w generating a self-similar
// groupoid action on the finite paths of a graph, plus the word-level action
// and restriction calculus.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "selfsim/graph.hpp"

namespace selfsim {

// A signed generator symbol, g or g^-1.
struct Symbol {
  std::uint32_t gen = 0;
  bool inverse = false;

  std::uint32_t code() const noexcept { return gen * 2 + (inverse ? 1 : 0); }
  Symbol inverted() const noexcept { return {gen, !inverse}; }
  friend bool operator==(const Symbol&, const Symbol&) = default;
  friend bool operator<(const Symbol& a, const Symbol& b) { return a.code() < b.code(); }
};

// s1 s2 ... sk denotes the composite s1 o s2 o ... o sk: the rightmost
// symbol acts first, so d(word) = d(sk) and c(word) = c(s1).
using Word = std::vector<Symbol>;

// A groupoid element: a composable word, or the unit at `dom` when the word
// is empty. `canonical` caches the class id assigned by an ActionEngine.
struct Element {
  VertexId dom = 0;
  Word word;
  std::optional<std::uint32_t> canonical;

  bool is_unit_word() const noexcept { return word.empty(); }
};

Element unit_element(VertexId v);

// Raw rule as declared: image edge and restriction word. A restriction that
// is a unit is an empty word; its vertex is then s(e).
struct Rule {
  EdgeId image = kNoEdge;
  Word restriction;
  // Vertex named for a unit restriction, when one was declared explicitly.
  std::optional<VertexId> unit;
  friend bool operator==(const Rule&, const Rule&) = default;
};

struct GeneratorDef {
  std::string name;
  VertexId dom = 0;  // d(g)
  VertexId cod = 0;  // c(g)
  // Keyed by the edge acted upon; unordered, validated separately.
  std::vector<std::pair<EdgeId, Rule>> rules;
};

struct Violation {
  enum class Kind {
    NotBijectiveOnEdges,
    RestrictionVertexMismatch,
    MissingRule,
    RuleOutsideDomain,
    WordNotComposable,
  };
  Kind kind;
  std::string generator;
  std::string edge;  // empty when not edge-specific
  std::string detail;
};

std::string_view to_string(Violation::Kind kind);

// Checks both automaton invariants: e -> g.e is a bijection d(g)E^1 -> c(g)E^1,
// and each restriction word w is composable with d(w) = s(e), c(w) = s(g.e).
std::vector<Violation> validate_automaton(const Graph& graph, const std::vector<GeneratorDef>& gens);

// Immutable once built. Holds the graph, the declared generators and the
// rule tables of every signed symbol (inverse tables derived once).
class Automaton {
 public:
  // Throws Error{ValidationError} listing every violation.
  static Automaton build(Graph graph, std::vector<GeneratorDef> gens);

  const Graph& graph() const noexcept { return graph_; }
  std::size_t generator_count() const noexcept { return gens_.size(); }
  const GeneratorDef& generator(std::uint32_t i) const { return gens_.at(i); }
  std::optional<std::uint32_t> find_generator(std::string_view name) const;

  VertexId dom(Symbol s) const { return s.inverse ? gens_[s.gen].cod : gens_[s.gen].dom; }
  VertexId cod(Symbol s) const { return s.inverse ? gens_[s.gen].dom : gens_[s.gen].cod; }

  // Rule of a signed symbol on an edge e with r(e) = dom(s).
  const Rule& rule(Symbol s, EdgeId e) const;

  std::string symbol_name(Symbol s) const;
  // Space separated symbols, or the vertex name for a unit.
  std::string format(const Element& g) const;
  std::string format_word(const Word& w, VertexId unit_vertex) const;

  // All signed symbols in code order: g0, g0^-1, g1, g1^-1, ...
  std::vector<Symbol> symbols() const;

 private:
  Graph graph_;
  std::vector<GeneratorDef> gens_;
  // tables_[symbol code][edge id]; image == kNoEdge outside the domain.
  std::vector<std::vector<Rule>> tables_;
};

// Word-level calculus. None of these canonicalize; they follow the rule
// tables directly.

bool is_composable(const Automaton& a, const Word& w);
VertexId dom_of(const Automaton& a, const Element& g);
VertexId cod_of(const Automaton& a, const Element& g);
Element make_element(const Automaton& a, Word w, std::optional<VertexId> unit_dom = std::nullopt);

// Cancels adjacent s s^-1 pairs. Keeps dom when the word collapses to a unit.
Element free_reduce(const Automaton& a, Element g);

struct EdgeStep {
  EdgeId image;
  Element restriction;
};

// g.e and g|_e for a single edge with r(e) = d(g).
EdgeStep act_edge(const Automaton& a, const Element& g, EdgeId e);

// g.p by left-to-right recursion carrying the current restriction.
// Throws DomainMismatch when r(p) != d(g).
Path act(const Automaton& a, const Element& g, const Path& p);
Element restrict(const Automaton& a, const Element& g, const Path& p);

// h g (apply g first). Throws NonComposable when d(h) != c(g).
Element compose(const Automaton& a, const Element& h, const Element& g);
Element inverse(const Automaton& a, const Element& g);

}  // namespace selfsim

#endif  // SELFSIM_AUTOMATON_HPP
