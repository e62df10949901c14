#ifndef SELFSIM_SPEC_FORMAT_HPP
#define SELFSIM_SPEC_FORMAT_HPP

// Text formats: automaton spec files and path literals.
//
//   [graph]
//   vertex v
//   edge 1 : v -> v        # src = s(e), dst = r(e)
//   [generator a : v -> w] # d(a) = v, c(a) = w
//   1 -> 4 | v             # a.1 = 4, a|_1 = unit at v
//   2 -> 3 | b a^-1
//   [options]
//   max_states 500
//
// Path literals: `1.2.3`, `(1)^inf . 2.3`, `2.3 . (1)^inf`,
// `(rho)^inf . mid . (pi)^inf @ n0`. An undotted run that is not itself an
// edge name is read one character per edge.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "selfsim/automaton.hpp"
#include "selfsim/paths.hpp"

namespace selfsim {

struct SpecRule {
  std::string edge;
  std::string image;
  std::vector<std::string> restriction;  // symbols, or one vertex name
  friend bool operator==(const SpecRule&, const SpecRule&) = default;
};

struct SpecGenerator {
  std::string name;
  std::string dom;
  std::string cod;
  std::vector<SpecRule> rules;
  friend bool operator==(const SpecGenerator&, const SpecGenerator&) = default;
};

struct SpecOptions {
  std::optional<std::size_t> max_states;
  std::optional<std::size_t> max_rounds;
  std::vector<std::string> generating_set;
  friend bool operator==(const SpecOptions&, const SpecOptions&) = default;
};

struct SpecFile {
  std::vector<std::string> vertices;
  std::vector<EdgeSpec> edges;
  std::vector<SpecGenerator> generators;
  SpecOptions options;
  friend bool operator==(const SpecFile&, const SpecFile&) = default;
};

// Throws SyntaxError with line and column.
SpecFile parse_spec(std::string_view text);
std::string format_spec(const SpecFile& spec);

// Throws DuplicateId, DanglingEndpoint, UnknownSymbol, ValidationError.
Automaton build_automaton(const SpecFile& spec);
SpecFile spec_of(const Automaton& a);

SpecFile load_spec_file(const std::string& path);

// Throw SyntaxError, UnknownSymbol, JunctionMismatch.
Path parse_finite_path(const Graph& g, std::string_view text);
LeftInfinitePath parse_left_path(const Graph& g, std::string_view text);
RightInfinitePath parse_right_path(const Graph& g, std::string_view text);
BiInfinitePath parse_bi_path(const Graph& g, std::string_view text);

// Space separated symbols or a vertex name.
Element parse_element(const Automaton& a, std::string_view text);

}  // namespace selfsim

#endif  // SELFSIM_SPEC_FORMAT_HPP
