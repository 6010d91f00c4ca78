#pragma once

#include <optional>
#include <vector>

#include "qqbethe/error.hpp"
#include "qqbethe/scalar.hpp"

namespace qqb {

template <class S>
struct DenseMatrix {
  int rows = 0, cols = 0;
  std::vector<S> a;

  DenseMatrix() = default;
  DenseMatrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, S(0L)) {}
  S& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  const S& operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }
};

template <class S>
Real max_abs(const DenseMatrix<S>& m) {
  Real best(0L);
  for (const auto& x : m.a) {
    Real v = ScalarTraits<S>::magnitude(x);
    if (best < v) best = v;
  }
  return best;
}

// Row reduction of [A | b] with partial pivoting. Free unknowns are set to 0.
// Returns nullopt when a zero row meets a nonzero right-hand side (exact), or
// when the reduced right-hand side exceeds tolerance (numeric).
template <class S>
std::optional<std::vector<S>> solve_least_rows(DenseMatrix<S> A, std::vector<S> b, const Tolerances& t) {
  const int m = A.rows, n = A.cols;
  Real scale = max_abs(A);
  for (const auto& x : b) scale = max(scale, ScalarTraits<S>::magnitude(x));
  std::vector<int> pivcol;
  int row = 0;
  for (int c = 0; c < n && row < m; ++c) {
    int piv = -1;
    Real best(0L);
    for (int r = row; r < m; ++r) {
      Real v = ScalarTraits<S>::magnitude(A(r, c));
      if (ScalarTraits<S>::negligible(A(r, c), scale, t)) continue;
      if (piv < 0 || best < v) {
        piv = r;
        best = v;
        if constexpr (is_exact_v<S>) break;
      }
    }
    if (piv < 0) continue;
    if (piv != row) {
      for (int j = 0; j < n; ++j) std::swap(A(piv, j), A(row, j));
      std::swap(b[piv], b[row]);
    }
    for (int r = row + 1; r < m; ++r) {
      if (ScalarTraits<S>::is_zero(A(r, c))) continue;
      S f = A(r, c) / A(row, c);
      for (int j = c; j < n; ++j) A(r, j) -= f * A(row, j);
      b[r] -= f * b[row];
    }
    pivcol.push_back(c);
    ++row;
  }
  for (int r = row; r < m; ++r)
    if (!ScalarTraits<S>::negligible(b[r], scale, t)) return std::nullopt;
  std::vector<S> x(n, S(0L));
  for (int r = row; r-- > 0;) {
    int c = pivcol[r];
    S acc = b[r];
    for (int j = c + 1; j < n; ++j) acc -= A(r, j) * x[j];
    x[c] = acc / A(r, c);
  }
  return x;
}

// Square solve for Newton steps. Throws SingularJacobian on a vanishing pivot.
template <class S>
std::vector<S> solve_square(DenseMatrix<S> A, std::vector<S> b, const Tolerances& t) {
  const int n = A.rows;
  Real scale = max_abs(A);
  for (int c = 0; c < n; ++c) {
    int piv = c;
    Real best = ScalarTraits<S>::magnitude(A(c, c));
    for (int r = c + 1; r < n; ++r) {
      Real v = ScalarTraits<S>::magnitude(A(r, c));
      if (best < v) {
        best = v;
        piv = r;
      }
    }
    if (ScalarTraits<S>::negligible(A(piv, c), scale, t) || ScalarTraits<S>::is_zero(A(piv, c)))
      throw SingularJacobian("singular Jacobian at column " + std::to_string(c));
    if (piv != c) {
      for (int j = 0; j < n; ++j) std::swap(A(piv, j), A(c, j));
      std::swap(b[piv], b[c]);
    }
    for (int r = c + 1; r < n; ++r) {
      S f = A(r, c) / A(c, c);
      for (int j = c; j < n; ++j) A(r, j) -= f * A(c, j);
      b[r] -= f * b[c];
    }
  }
  std::vector<S> x(n, S(0L));
  for (int r = n; r-- > 0;) {
    S acc = b[r];
    for (int j = r + 1; j < n; ++j) acc -= A(r, j) * x[j];
    x[r] = acc / A(r, r);
  }
  return x;
}

}  // namespace qqb
