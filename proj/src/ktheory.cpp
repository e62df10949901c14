#include "selfsim/ktheory.hpp"

#include <algorithm>
#include <cctype>

#include "selfsim/error.hpp"

namespace selfsim {

namespace {

using boost::multiprecision::abs;

void require_same_shape(const IntMatrix& a, const IntMatrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error(ErrorCode::ShapeMismatch, what);
}

void require_square(const IntMatrix& a, const char* what) {
  if (a.rows() != a.cols()) throw Error(ErrorCode::ShapeMismatch, std::string(what) + " must be square");
}

// Floor division and the matching nonnegative remainder, b > 0.
std::pair<Integer, Integer> floor_divmod(const Integer& a, const Integer& b) {
  Integer q = a / b;
  Integer r = a % b;
  if (r < 0) {
    r += b;
    q -= 1;
  }
  return {q, r};
}

class Reducer {
 public:
  explicit Reducer(const IntMatrix& m)
      : R(m), U(IntMatrix::identity(m.rows())), V(IntMatrix::identity(m.cols())) {}

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < R.cols(); ++k) std::swap(R(i, k), R(j, k));
    for (std::size_t k = 0; k < U.cols(); ++k) std::swap(U(i, k), U(j, k));
  }
  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < R.rows(); ++k) std::swap(R(k, i), R(k, j));
    for (std::size_t k = 0; k < V.rows(); ++k) std::swap(V(k, i), V(k, j));
  }
  // row dst += q * row src
  void add_row(std::size_t dst, std::size_t src, const Integer& q) {
    for (std::size_t k = 0; k < R.cols(); ++k) R(dst, k) += q * R(src, k);
    for (std::size_t k = 0; k < U.cols(); ++k) U(dst, k) += q * U(src, k);
  }
  void add_col(std::size_t dst, std::size_t src, const Integer& q) {
    for (std::size_t k = 0; k < R.rows(); ++k) R(k, dst) += q * R(k, src);
    for (std::size_t k = 0; k < V.rows(); ++k) V(k, dst) += q * V(k, src);
  }
  void negate_row(std::size_t i) {
    for (std::size_t k = 0; k < R.cols(); ++k) R(i, k) = -R(i, k);
    for (std::size_t k = 0; k < U.cols(); ++k) U(i, k) = -U(i, k);
  }

  IntMatrix R, U, V;
};

}  // namespace

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long long>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error(ErrorCode::ShapeMismatch, "ragged matrix literal");
    for (long long x : r) a_.emplace_back(x);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorCode::ShapeMismatch, "matrix product shapes");
  IntMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
  require_same_shape(a, b, "matrix difference shapes");
  IntMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) - b(i, j);
  return out;
}

Integer determinant(const IntMatrix& m) {
  require_square(m, "determinant argument");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

IntMatrix parse_matrix(std::string_view text) {
  std::vector<std::vector<Integer>> rows;
  std::vector<Integer> row;
  std::size_t line = 1, col = 0;
  auto end_row = [&] {
    if (!row.empty()) rows.push_back(std::move(row));
    row.clear();
  };
  for (std::size_t i = 0; i < text.size();) {
    const char c = text[i];
    ++col;
    if (c == '-' || std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i + 1;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      if (c == '-' && j == i + 1) throw SyntaxError(line, col, "lone '-'");
      row.emplace_back(std::string(text.substr(i, j - i)));
      col += j - i - 1;
      i = j;
      continue;
    }
    if (c == ';' || c == ']') {
      end_row();
    } else if (c == '\n') {
      end_row();
      ++line;
      col = 0;
    } else if (c != '[' && c != ',' && !std::isspace(static_cast<unsigned char>(c))) {
      throw SyntaxError(line, col, std::string("unexpected '") + c + "' in matrix");
    }
    ++i;
  }
  end_row();
  if (rows.empty()) throw SyntaxError(line, col, "empty matrix");
  IntMatrix m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols()) throw SyntaxError(i + 1, 1, "rows have different lengths");
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

std::string format_matrix(const IntMatrix& m) {
  std::string out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) out += "; ";
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out += ' ';
      out += m(i, j).str();
    }
  }
  return out;
}

SNFResult smith_normal_form(const IntMatrix& m) {
  Reducer r(m);
  auto& R = r.R;
  const std::size_t rows = m.rows(), cols = m.cols();
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    bool empty = false;
    for (;;) {
      std::size_t pi = rows, pj = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (R(i, j) != 0 && (pi == rows || abs(R(i, j)) < abs(R(pi, pj)))) {
            pi = i;
            pj = j;
          }
      if (pi == rows) {
        empty = true;
        break;
      }
      r.swap_rows(t, pi);
      r.swap_cols(t, pj);
      bool dirty = false;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (R(i, t) == 0) continue;
        r.add_row(i, t, -(R(i, t) / R(t, t)));
        dirty = dirty || R(i, t) != 0;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (R(t, j) == 0) continue;
        r.add_col(j, t, -(R(t, j) / R(t, t)));
        dirty = dirty || R(t, j) != 0;
      }
      if (dirty) continue;
      std::size_t bad = rows;
      for (std::size_t i = t + 1; i < rows && bad == rows; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (R(i, j) % R(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad == rows) break;
      r.add_row(t, bad, 1);
    }
    if (empty) break;
    if (R(t, t) < 0) r.negate_row(t);
  }

  SNFResult out{std::move(r.U), std::move(r.R), std::move(r.V)};
  // Self-check; a failure here is a bug, not bad input.
  bool ok = out.U * m * out.V == out.D && abs(determinant(out.U)) == 1 && abs(determinant(out.V)) == 1;
  for (std::size_t i = 0; ok && i < rows; ++i)
    for (std::size_t j = 0; ok && j < cols; ++j)
      if (i != j && out.D(i, j) != 0) ok = false;
  for (std::size_t i = 0; ok && i < std::min(rows, cols); ++i) {
    if (out.D(i, i) < 0) ok = false;
    if (ok && i + 1 < std::min(rows, cols)) {
      const Integer& d = out.D(i, i);
      const Integer& e = out.D(i + 1, i + 1);
      ok = d == 0 ? e == 0 : e % d == 0;
    }
  }
  if (!ok) throw Error(ErrorCode::Diverged, "Smith normal form self-check failed for " + format_matrix(m));
  return out;
}

AbelianGroup cokernel(const IntMatrix& m) {
  const auto snf = smith_normal_form(m);
  AbelianGroup g;
  std::size_t nonzero = 0;
  for (std::size_t i = 0; i < std::min(m.rows(), m.cols()); ++i) {
    const Integer& d = snf.D(i, i);
    if (d == 0) continue;
    ++nonzero;
    if (d > 1) g.torsion.push_back(d);
  }
  g.rank = m.rows() - nonzero;
  return g;
}

AbelianGroup kernel(const IntMatrix& m) {
  const auto snf = smith_normal_form(m);
  std::size_t nonzero = 0;
  for (std::size_t i = 0; i < std::min(m.rows(), m.cols()); ++i)
    if (snf.D(i, i) != 0) ++nonzero;
  return AbelianGroup{m.cols() - nonzero, {}};
}

AbelianGroup direct_sum(const AbelianGroup& a, const AbelianGroup& b) {
  // Re-normalize the torsion through the Smith form of the diagonal.
  std::vector<Integer> t = a.torsion;
  t.insert(t.end(), b.torsion.begin(), b.torsion.end());
  AbelianGroup out{a.rank + b.rank, {}};
  if (t.empty()) return out;
  IntMatrix d(t.size(), t.size());
  for (std::size_t i = 0; i < t.size(); ++i) d(i, i) = t[i];
  for (const auto& x : cokernel(d).torsion) out.torsion.push_back(x);
  return out;
}

std::string format_group(const AbelianGroup& g) {
  std::vector<std::string> parts;
  if (g.rank == 1) parts.push_back("Z");
  if (g.rank > 1) parts.push_back("Z^" + std::to_string(g.rank));
  for (const auto& t : g.torsion) parts.push_back("Z/" + t.str());
  if (parts.empty()) return "0";
  std::string out = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) out += " + " + parts[i];
  return out;
}

SpecFile katsura_spec(const IntMatrix& A, const IntMatrix& B) {
  require_square(A, "A");
  require_same_shape(A, B, "A and B must have the same shape");
  const std::size_t N = A.rows();
  if (N == 0) throw Error(ErrorCode::InvalidArgument, "empty matrices");
  Integer total = 0;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) {
      if (A(i, j) < 0) throw Error(ErrorCode::InvalidArgument, "A has a negative entry");
      if (A(i, j) == 0 && B(i, j) != 0) {
        throw Error(ErrorCode::ZeroBlockDivision,
                    "a_" + std::to_string(i + 1) + std::to_string(j + 1) + " = 0 but b_" + std::to_string(i + 1) +
                        std::to_string(j + 1) + " != 0");
      }
      total += A(i, j);
    }
  if (total > 100000) throw Error(ErrorCode::InvalidArgument, "too many edges");

  auto vertex = [&](std::size_t i) {
    static const char* small[] = {"v", "w", "x", "y", "z"};
    return N <= 5 ? std::string(small[i]) : "v" + std::to_string(i + 1);
  };
  auto gen = [&](std::size_t i) {
    return N <= 26 ? std::string(1, static_cast<char>('a' + i)) : "a" + std::to_string(i + 1);
  };
  const std::size_t width = Integer(total - 1).str().size();
  auto edge = [&](std::size_t k) {
    std::string s = std::to_string(k);
    return std::string(width - std::min(width, s.size()), '0') + s;
  };

  SpecFile spec;
  for (std::size_t i = 0; i < N; ++i) spec.vertices.push_back(vertex(i));
  std::size_t k = 0;
  for (std::size_t i = 0; i < N; ++i) {
    SpecGenerator g{gen(i), vertex(i), vertex(i), {}};
    for (std::size_t j = 0; j < N; ++j) {
      const std::size_t first = k;
      const auto a = static_cast<std::size_t>(A(i, j));
      for (std::size_t m = 0; m < a; ++m, ++k) spec.edges.push_back({edge(k), vertex(j), vertex(i)});
      for (std::size_t m = 0; m < a; ++m) {
        auto [l, n] = floor_divmod(B(i, j) + m, A(i, j));
        if (abs(l) > 4096) throw Error(ErrorCode::InvalidArgument, "restriction exponent too large");
        SpecRule rule{edge(first + m), edge(first + static_cast<std::size_t>(n)), {}};
        if (l == 0) rule.restriction.push_back(vertex(j));
        for (Integer c = 0; c < abs(l); ++c) rule.restriction.push_back(l > 0 ? gen(j) : gen(j) + "^-1");
        g.rules.push_back(std::move(rule));
      }
    }
    spec.generators.push_back(std::move(g));
  }
  return spec;
}

Automaton katsura_automaton(const IntMatrix& A, const IntMatrix& B) { return build_automaton(katsura_spec(A, B)); }

KGroups katsura_ktheory(const IntMatrix& A, const IntMatrix& B) {
  require_square(A, "A");
  require_same_shape(A, B, "A and B must have the same shape");
  const auto I = IntMatrix::identity(A.rows());
  const auto IA = I - A;
  const auto IB = I - B;
  return KGroups{direct_sum(cokernel(IA), kernel(IB)), direct_sum(cokernel(IB), kernel(IA))};
}

}  // namespace selfsim
