#ifndef SELFSIM_ENGINE_HPP
#define SELFSIM_ENGINE_HPP

// Canonical classes of groupoid elements.
//
// Two elements are equal iff they are bisimilar: same d, c, same image on
// every edge of d(g)E^1 and equal restrictions there. The engine keeps a
// growing table of minimized classes. Each query explores the restriction
// closure of its words, refines the new nodes against the classes already
// known, and commits. Existing class ids never change.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "selfsim/automaton.hpp"
#include "selfsim/paths.hpp"

namespace selfsim {

using ClassId = std::uint32_t;

struct EngineBounds {
  std::size_t max_states = 10000;       // total classes
  std::size_t max_word_length = 1024;   // longest word explored
};

struct ClassInfo {
  VertexId dom = 0;
  VertexId cod = 0;
  bool unit = false;
  Word rep;                    // shortest, then lexicographically least, word seen
  std::vector<EdgeId> image;   // by slot of e in edges_into(dom)
  std::vector<ClassId> succ;   // restriction class, same indexing
};

class ActionEngine {
 public:
  explicit ActionEngine(Automaton automaton, EngineBounds bounds = {});

  const Automaton& automaton() const noexcept { return automaton_; }
  const Graph& graph() const noexcept { return automaton_.graph(); }
  const EngineBounds& bounds() const noexcept { return bounds_; }

  // Throws ClosureLimitExceeded (nothing is committed then), NonComposable.
  ClassId canonical(const Element& g);
  ClassId unit(VertexId v) const { return v; }  // units are seeded first
  ClassId symbol(Symbol s);
  ClassId product(ClassId h, ClassId g);  // h g, g acts first
  ClassId inverse(ClassId c);
  bool equal(const Element& g, const Element& h);

  std::size_t class_count() const noexcept { return classes_.size(); }
  const ClassInfo& info(ClassId c) const { return classes_.at(c); }
  bool is_unit(ClassId c) const { return classes_.at(c).unit; }
  VertexId dom(ClassId c) const { return classes_.at(c).dom; }
  VertexId cod(ClassId c) const { return classes_.at(c).cod; }

  EdgeId act_edge(ClassId c, EdgeId e) const;
  ClassId restrict_edge(ClassId c, EdgeId e) const;
  Path act(ClassId c, const Path& p) const;
  ClassId restrict(ClassId c, const Path& p) const;
  RightInfinitePath act_infinite(ClassId c, const RightInfinitePath& x) const;

  Element element(ClassId c) const;
  std::string name(ClassId c) const;

  // Classes reachable from the seeds by restriction, seeds included.
  std::vector<ClassId> closure(const std::vector<ClassId>& seeds) const;

 private:
  using Key = std::vector<std::uint32_t>;
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept;
  };

  std::vector<ClassId> canonicalize(const std::vector<Element>& elems);
  void check_domain(ClassId c, EdgeId e) const;

  Automaton automaton_;
  EngineBounds bounds_;
  std::vector<ClassInfo> classes_;
  std::unordered_map<Key, ClassId, KeyHash> memo_;
  std::unordered_map<Key, std::vector<ClassId>, KeyHash> by_signature_;  // (dom, cod, image) -> classes
  std::vector<std::optional<ClassId>> inverse_;
  std::map<std::pair<ClassId, ClassId>, ClassId> products_;
};

// Finite presentation of a restriction-closed set of classes. States are
// numbered in BFS order from the seeds, edges visited in id order.
struct MachineState {
  ClassId cls = 0;
  std::string name;
  VertexId dom = 0;
  VertexId cod = 0;
  bool unit = false;
  std::vector<EdgeId> edges;    // d(state)E^1
  std::vector<EdgeId> images;   // state . e
  std::vector<std::uint32_t> next;  // index of state|_e
};

struct StateMachine {
  std::vector<MachineState> states;
  std::optional<std::uint32_t> index_of(ClassId c) const;
};

StateMachine reachable_closure(ActionEngine& engine, const std::vector<Element>& seeds);
StateMachine machine_of(const ActionEngine& engine, const std::vector<ClassId>& seeds);

std::string machine_json(const ActionEngine& engine, const StateMachine& m);
std::string machine_dot(const ActionEngine& engine, const StateMachine& m);

}  // namespace selfsim

#endif  // SELFSIM_ENGINE_HPP
