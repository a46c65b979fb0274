#ifndef MUMCL_ABELIAN_HPP
#define MUMCL_ABELIAN_HPP

#include <cstdlib>
#include <optional>
#include <vector>

#include "mumcl/field.hpp"

namespace mumcl {

// Dense integer matrix, row major.  Sizes stay small (incidence matrices of
// gluing data), so plain int64 arithmetic is plenty.
struct IntMatrix {
  int rows = 0, cols = 0;
  std::vector<i64> a;

  IntMatrix() = default;
  IntMatrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0) {
    if (r < 0 || c < 0) throw internal_error("IntMatrix: negative size");
  }

  static IntMatrix identity(int n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  i64& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
  i64 at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }

  bool operator==(const IntMatrix& o) const {
    return rows == o.rows && cols == o.cols && a == o.a;
  }
};

inline IntMatrix mat_mul(const IntMatrix& A, const IntMatrix& B) {
  if (A.cols != B.rows) throw internal_error("mat_mul: shape mismatch");
  IntMatrix C(A.rows, B.cols);
  for (int i = 0; i < A.rows; ++i)
    for (int k = 0; k < A.cols; ++k) {
      i64 aik = A.at(i, k);
      if (aik == 0) continue;
      for (int j = 0; j < B.cols; ++j) C.at(i, j) += aik * B.at(k, j);
    }
  return C;
}

inline std::vector<i64> mat_apply(const IntMatrix& A,
                                  const std::vector<i64>& v) {
  if (A.cols != static_cast<int>(v.size()))
    throw internal_error("mat_apply: shape mismatch");
  std::vector<i64> out(static_cast<size_t>(A.rows), 0);
  for (int i = 0; i < A.rows; ++i)
    for (int j = 0; j < A.cols; ++j)
      out[static_cast<size_t>(i)] += A.at(i, j) * v[static_cast<size_t>(j)];
  return out;
}

// U * M * V = S with U, V unimodular and S diagonal, each diagonal entry
// nonnegative and dividing the next.
struct SmithForm {
  IntMatrix U, S, V;
};

inline SmithForm smith_normal_form(const IntMatrix& M) {
  SmithForm f{IntMatrix::identity(M.rows), M, IntMatrix::identity(M.cols)};
  IntMatrix& S = f.S;
  IntMatrix& U = f.U;
  IntMatrix& V = f.V;

  auto swap_rows = [&](int r1, int r2) {
    if (r1 == r2) return;
    for (int j = 0; j < S.cols; ++j) std::swap(S.at(r1, j), S.at(r2, j));
    for (int j = 0; j < U.cols; ++j) std::swap(U.at(r1, j), U.at(r2, j));
  };
  auto swap_cols = [&](int c1, int c2) {
    if (c1 == c2) return;
    for (int i = 0; i < S.rows; ++i) std::swap(S.at(i, c1), S.at(i, c2));
    for (int i = 0; i < V.rows; ++i) std::swap(V.at(i, c1), V.at(i, c2));
  };
  auto add_row = [&](int dst, int src, i64 q) {  // row dst += q * row src
    if (q == 0) return;
    for (int j = 0; j < S.cols; ++j) S.at(dst, j) += q * S.at(src, j);
    for (int j = 0; j < U.cols; ++j) U.at(dst, j) += q * U.at(src, j);
  };
  auto add_col = [&](int dst, int src, i64 q) {
    if (q == 0) return;
    for (int i = 0; i < S.rows; ++i) S.at(i, dst) += q * S.at(i, src);
    for (int i = 0; i < V.rows; ++i) V.at(i, dst) += q * V.at(i, src);
  };

  int steps = std::min(S.rows, S.cols);
  for (int k = 0; k < steps; ++k) {
    for (;;) {
      // locate entry of least absolute value in the trailing block
      int pi = -1, pj = -1;
      for (int i = k; i < S.rows; ++i)
        for (int j = k; j < S.cols; ++j)
          if (S.at(i, j) != 0 &&
              (pi < 0 || std::abs(S.at(i, j)) < std::abs(S.at(pi, pj)))) {
            pi = i;
            pj = j;
          }
      if (pi < 0) {
        k = steps;  // trailing block is zero, done
        break;
      }
      swap_rows(k, pi);
      swap_cols(k, pj);
      bool clean = true;
      for (int i = k + 1; i < S.rows; ++i) {
        add_row(i, k, -(S.at(i, k) / S.at(k, k)));
        if (S.at(i, k) != 0) clean = false;
      }
      for (int j = k + 1; j < S.cols; ++j) {
        add_col(j, k, -(S.at(k, j) / S.at(k, k)));
        if (S.at(k, j) != 0) clean = false;
      }
      if (!clean) continue;  // remainders became the new smaller pivots
      // pivot must divide every remaining entry for the divisor chain
      int bi = -1, bj = -1;
      for (int i = k + 1; i < S.rows && bi < 0; ++i)
        for (int j = k + 1; j < S.cols; ++j)
          if (S.at(i, j) % S.at(k, k) != 0) {
            bi = i;
            bj = j;
            break;
          }
      if (bi < 0) break;
      (void)bj;
      add_row(k, bi, 1);
    }
  }
  for (int k = 0; k < std::min(S.rows, S.cols); ++k) {
    if (S.at(k, k) < 0) {
      for (int j = 0; j < S.cols; ++j) S.at(k, j) = -S.at(k, j);
      for (int j = 0; j < U.cols; ++j) U.at(k, j) = -U.at(k, j);
    }
  }
  return f;
}

// Presentation of the finite abelian group (Z/n)^rows / image(M), kept with
// enough structure to compute canonical coordinates and lift preimages.
struct CokernelPresentation {
  i64 n = 1;        // ambient modulus
  IntMatrix M;      // original relation matrix (rows x cols)
  SmithForm snf;    // Smith form of [M | nI]
  std::vector<i64> moduli;  // diagonal entries s_1..s_rows, each divides n

  // invariant factors larger than one, in divisor-chain order
  std::vector<i64> invariant_factors() const {
    std::vector<i64> out;
    for (i64 s : moduli)
      if (s > 1) out.push_back(s);
    return out;
  }

  i64 order() const {
    i64 o = 1;
    for (i64 s : moduli) o *= s;
    return o;
  }

  bool is_trivial() const { return order() == 1; }
};

// The group (Z/n)^rows / (columns of M); computed through the Smith form of
// the augmented matrix [M | nI].
inline CokernelPresentation cokernel_mod(const IntMatrix& M, i64 n) {
  if (n < 1) throw internal_error("cokernel_mod: modulus must be positive");
  IntMatrix aug(M.rows, M.cols + M.rows);
  for (int i = 0; i < M.rows; ++i) {
    for (int j = 0; j < M.cols; ++j) aug.at(i, j) = M.at(i, j);
    aug.at(i, M.cols + i) = n;
  }
  CokernelPresentation pres;
  pres.n = n;
  pres.M = M;
  pres.snf = smith_normal_form(aug);
  pres.moduli.resize(static_cast<size_t>(M.rows));
  for (int i = 0; i < M.rows; ++i) {
    i64 s = pres.snf.S.at(i, i);
    if (s <= 0 || n % s != 0)
      throw internal_error("cokernel_mod: bad invariant factor");
    pres.moduli[static_cast<size_t>(i)] = s;
  }
  return pres;
}

// Canonical coordinates of v in the cokernel: entry i is (U v)_i mod s_i.
// Two vectors represent the same class exactly when coordinates agree.
inline std::vector<i64> class_in_cokernel(const CokernelPresentation& pres,
                                          const std::vector<i64>& v) {
  std::vector<i64> w = mat_apply(pres.snf.U, v);
  for (size_t i = 0; i < w.size(); ++i) {
    i64 s = pres.moduli[i];
    w[i] %= s;
    if (w[i] < 0) w[i] += s;
  }
  return w;
}

inline bool cokernel_class_is_zero(const CokernelPresentation& pres,
                                   const std::vector<i64>& v) {
  for (i64 x : class_in_cokernel(pres, v))
    if (x != 0) return false;
  return true;
}

// Solve M x = v over Z/n.  Succeeds exactly when the class of v vanishes;
// the solution entries are reduced into [0, n).
inline std::optional<std::vector<i64>> lift_solution(
    const CokernelPresentation& pres, const std::vector<i64>& v) {
  std::vector<i64> w = mat_apply(pres.snf.U, v);
  std::vector<i64> z(static_cast<size_t>(pres.snf.V.cols), 0);
  for (int i = 0; i < pres.M.rows; ++i) {
    i64 s = pres.moduli[static_cast<size_t>(i)];
    if (w[static_cast<size_t>(i)] % s != 0) return std::nullopt;
    z[static_cast<size_t>(i)] = w[static_cast<size_t>(i)] / s;
  }
  std::vector<i64> y = mat_apply(pres.snf.V, z);
  std::vector<i64> x(y.begin(), y.begin() + pres.M.cols);
  for (i64& e : x) {
    e %= pres.n;
    if (e < 0) e += pres.n;
  }
  // confirm M x = v mod n
  std::vector<i64> check = mat_apply(pres.M, x);
  for (int i = 0; i < pres.M.rows; ++i) {
    i64 diff = check[static_cast<size_t>(i)] - v[static_cast<size_t>(i)];
    if (diff % pres.n != 0)
      throw internal_error("lift_solution: verification failed");
  }
  return x;
}

}  // namespace mumcl

#endif  // MUMCL_ABELIAN_HPP
