#ifndef SELFSIM_NUCLEUS_HPP
#define SELFSIM_NUCLEUS_HPP

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "selfsim/engine.hpp"

namespace selfsim {

struct NucleusBounds {
  std::size_t max_states = 10000;
  std::size_t max_rounds = 64;
};

struct Nucleus {
  // Units first (by vertex), then by representative length, then by word.
  std::vector<ClassId> states;
  StateMachine machine;
  std::size_t rounds = 0;
  std::map<int, int> r_k;

  bool contains(ClassId c) const;
  std::vector<ClassId> non_units(const ActionEngine& engine) const;
};

struct NotContractingWithinBound {
  std::string bound;   // "max_states", "max_rounds" or "max_word_length"
  std::string detail;
  std::size_t rounds = 0;
};

using NucleusResult = std::variant<Nucleus, NotContractingWithinBound>;

// Nodes of the restriction digraph of c reachable from a directed cycle.
std::vector<ClassId> limit_restrictions(const ActionEngine& engine, ClassId c);

NucleusResult compute_nucleus(ActionEngine& engine, NucleusBounds bounds = {});

// limit(n1 n2) inside `states` for all composable n1, n2 in `states` and
// limit(s) inside `states` for every signed generator s. Returns the first
// failure, or nullopt.
std::optional<std::string> certificate_failure(ActionEngine& engine, const std::vector<ClassId>& states);
// Restriction closed and closed under inverses.
bool is_core_shaped(ActionEngine& engine, const std::vector<ClassId>& states);

// Throws Diverged when no j <= max_depth works.
int compute_Rk(ActionEngine& engine, Nucleus& nucleus, int k, int max_depth = 4096);

std::string nucleus_json(const ActionEngine& engine, const Nucleus& n);
std::string nucleus_dot(const ActionEngine& engine, const Nucleus& n);

// Shortest mu (lexicographically least among those) such that every g in the
// nucleus fixing mu has g|_mu a unit. Searched up to max_length.
std::optional<Path> discerning_path(const ActionEngine& engine, const Nucleus& n, std::size_t max_length = 12);

}  // namespace selfsim

#endif  // SELFSIM_NUCLEUS_HPP
