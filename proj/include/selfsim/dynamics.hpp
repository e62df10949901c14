#ifndef SELFSIM_DYNAMICS_HPP
#define SELFSIM_DYNAMICS_HPP

// Deciders on eventually periodic infinite paths, all driven by the nucleus
// as a transducer: a state h reading x_n writes h.x_n and moves to h|_{x_n}.
//
// Conventions: left-infinite paths end at index -1, right-infinite paths
// start at index 1. For bi-infinite x, x(M+1, inf) = x_{M+1} x_{M+2} ...
// and x(-inf, -m) = ... x_{-m-1} x_{-m}.

#include <optional>
#include <string>
#include <vector>

#include "selfsim/nucleus.hpp"

namespace selfsim {

struct AeWitness {
  std::int64_t index = -1;      // where the periodic run hands over
  std::vector<ClassId> run;     // h_index, ..., h_{-1}
};

struct AeResult {
  bool equivalent = false;
  std::optional<AeWitness> witness;
};

AeResult ae_equivalent(const ActionEngine& engine, const Nucleus& n, const LeftInfinitePath& x,
                       const LeftInfinitePath& y);

// Every y asymptotically equivalent to x, sorted.
std::vector<LeftInfinitePath> ae_class(const ActionEngine& engine, const Nucleus& n, const LeftInfinitePath& x);

inline LeftInfinitePath shift_class(const Graph& g, const LeftInfinitePath& x) { return shift(g, x); }

bool ae_equivalent_bi(const ActionEngine& engine, const Nucleus& n, const BiInfinitePath& x,
                      const BiInfinitePath& y);

// A fixed-edge cycle h0 -e0-> h1 -e1-> ... -> h0 among non-unit nucleus
// states, read as g = h0 fixing y = (e0 e1 ...)^inf.
struct FixedCycle {
  ClassId g = 0;
  RightInfinitePath y;
};

struct RegularReport {
  bool regular = true;
  std::optional<FixedCycle> witness;
};

struct HausdorffReport {
  bool hausdorff = true;
  std::optional<FixedCycle> witness;
  std::optional<Path> escape;  // strongly fixed by g: g.escape = escape, g|_escape a unit
};

RegularReport is_regular(const ActionEngine& engine, const Nucleus& n);
HausdorffReport is_hausdorff(const ActionEngine& engine, const Nucleus& n);

struct RecurrenceReport {
  bool recurrent = false;
  int depth = 0;
  std::vector<std::string> missing;  // "e -> f | h" triples not realized
};

// Throws NotStronglyConnected.
RecurrenceReport check_recurrent(ActionEngine& engine, int depth = 6);

struct Germ {
  RightInfinitePath x;
  std::size_t m = 0;
  ClassId g = 0;
  std::size_t n = 0;
  RightInfinitePath y;
};

// Checks d(g) = r(varsigma^n y) and varsigma^m x = g . varsigma^n y.
// Throws InvalidGerm.
Germ make_germ(const ActionEngine& engine, RightInfinitePath x, std::size_t m, ClassId g, std::size_t n,
               RightInfinitePath y);
bool germ_equal(const ActionEngine& engine, const Germ& a, const Germ& b);

bool stable_equivalent(const ActionEngine& engine, const Nucleus& n, const BiInfinitePath& x,
                       const BiInfinitePath& y);

struct UnstableWitness {
  std::int64_t M = 0;
  ClassId g = 0;
};

// Smallest restriction-closed set containing N and N^2, nucleus order first.
std::vector<ClassId> unstable_family(ActionEngine& engine, const Nucleus& n);

std::optional<UnstableWitness> unstable_equivalent(ActionEngine& engine, const Nucleus& n,
                                                   const BiInfinitePath& x, const BiInfinitePath& y);

}  // namespace selfsim

#endif  // SELFSIM_DYNAMICS_HPP
