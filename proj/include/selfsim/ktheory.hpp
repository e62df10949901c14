#ifndef SELFSIM_KTHEORY_HPP
#define SELFSIM_KTHEORY_HPP

// Exact integer matrices, Smith normal form, and the Katsura pipeline.

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <string_view>
#include <vector>

#include "selfsim/spec_format.hpp"

namespace selfsim {

using Integer = boost::multiprecision::cpp_int;

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long long>> rows);

  static IntMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  Integer& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> a_;
};

// Throw ShapeMismatch.
IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);

// Bareiss elimination. Throws ShapeMismatch on non-square input.
Integer determinant(const IntMatrix& m);

// "2 1; 2 2", "[[2,1],[2,2]]" or one row per line. Throws SyntaxError.
IntMatrix parse_matrix(std::string_view text);
std::string format_matrix(const IntMatrix& m);

struct SNFResult {
  IntMatrix U, D, V;  // U * M * V = D
};

// Pivot: smallest nonzero |entry| of the remaining block, row-major on ties.
SNFResult smith_normal_form(const IntMatrix& m);

struct AbelianGroup {
  std::size_t rank = 0;
  std::vector<Integer> torsion;  // each > 1, each divides the next
  friend bool operator==(const AbelianGroup&, const AbelianGroup&) = default;
};

AbelianGroup cokernel(const IntMatrix& m);
AbelianGroup kernel(const IntMatrix& m);
AbelianGroup direct_sum(const AbelianGroup& a, const AbelianGroup& b);
std::string format_group(const AbelianGroup& g);  // "Z^2 + Z/2", "0"

// Vertices v, w, x, ... (v1, v2, ... past five), generators a, b, c, ...
// (a1, a2, ... past 26), edges numbered in (i, j, m) order. Edge e_{i,j,m}
// has r = i, s = j.
// Throws ShapeMismatch, ZeroBlockDivision, InvalidArgument.
SpecFile katsura_spec(const IntMatrix& A, const IntMatrix& B);
Automaton katsura_automaton(const IntMatrix& A, const IntMatrix& B);

struct KGroups {
  AbelianGroup K0;
  AbelianGroup K1;
};

// K0 = coker(I-A) + ker(I-B), K1 = coker(I-B) + ker(I-A).
KGroups katsura_ktheory(const IntMatrix& A, const IntMatrix& B);

}  // namespace selfsim

#endif  // SELFSIM_KTHEORY_HPP
