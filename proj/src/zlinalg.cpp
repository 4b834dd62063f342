#include "bfk/zlinalg.hpp"

#include <algorithm>

namespace bfk {

IntMat IntMat::identity(std::size_t n) {
  IntMat I(n, n);
  for (std::size_t i = 0; i < n; ++i) I.at(i, i) = 1;
  return I;
}

IntMat mat_mul(const IntMat& A, const IntMat& B) {
  if (A.cols != B.rows) throw std::invalid_argument("mat_mul: shape mismatch");
  IntMat C(A.rows, B.cols);
  for (std::size_t i = 0; i < A.rows; ++i)
    for (std::size_t k = 0; k < A.cols; ++k) {
      const Int& aik = A.at(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < B.cols; ++j) C.at(i, j) += aik * B.at(k, j);
    }
  return C;
}

namespace {

void swap_rows(IntMat& M, std::size_t r, std::size_t s) {
  if (r == s) return;
  for (std::size_t j = 0; j < M.cols; ++j) std::swap(M.at(r, j), M.at(s, j));
}

// row_r -= q * row_s
void row_axpy(IntMat& M, std::size_t r, std::size_t s, const Int& q) {
  if (q == 0) return;
  for (std::size_t j = 0; j < M.cols; ++j) M.at(r, j) -= q * M.at(s, j);
}

}  // namespace

IntegerLattice hnf(const IntMat& M) {
  IntMat W = M;
  std::size_t row = 0;
  for (std::size_t col = 0; col < W.cols && row < W.rows; ++col) {
    // Euclidean elimination in this column, pivot row chosen as the
    // leftmost-lowest nonzero (smallest absolute value first for speed).
    while (true) {
      std::size_t piv = W.rows;
      for (std::size_t r = row; r < W.rows; ++r) {
        if (W.at(r, col) != 0 &&
            (piv == W.rows || mpz_cmpabs(W.at(r, col).get_mpz_t(),
                                     W.at(piv, col).get_mpz_t()) < 0))
          piv = r;
      }
      if (piv == W.rows) break;  // column is zero below `row`
      swap_rows(W, row, piv);
      bool clean = true;
      for (std::size_t r = row + 1; r < W.rows; ++r) {
        if (W.at(r, col) == 0) continue;
        Int q = W.at(r, col) / W.at(row, col);  // truncated division
        row_axpy(W, r, row, q);
        if (W.at(r, col) != 0) clean = false;
      }
      if (clean) break;
    }
    if (W.at(row, col) == 0) continue;
    if (W.at(row, col) < 0)
      for (std::size_t j = 0; j < W.cols; ++j) W.at(row, j) = -W.at(row, j);
    // Reduce entries above the pivot into [0, pivot).
    for (std::size_t r = 0; r < row; ++r) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), W.at(r, col).get_mpz_t(),
                 W.at(row, col).get_mpz_t());
      row_axpy(W, r, row, q);
    }
    ++row;
  }
  IntegerLattice L;
  L.ambient = W.cols;
  L.basis = IntMat(row, W.cols);
  for (std::size_t r = 0; r < row; ++r)
    for (std::size_t j = 0; j < W.cols; ++j) L.basis.at(r, j) = W.at(r, j);
  return L;
}

IntegerLattice lattice_from_rows(std::size_t ambient,
                                 const std::vector<std::vector<Int>>& rows) {
  IntMat M(rows.size(), ambient);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != ambient)
      throw std::invalid_argument("lattice_from_rows: dimension mismatch");
    for (std::size_t j = 0; j < ambient; ++j) M.at(r, j) = rows[r][j];
  }
  return hnf(M);
}

namespace {

std::vector<std::size_t> pivot_columns(const IntegerLattice& L) {
  std::vector<std::size_t> piv(L.rank());
  for (std::size_t r = 0; r < L.rank(); ++r) {
    std::size_t c = 0;
    while (c < L.ambient && L.basis.at(r, c) == 0) ++c;
    piv[r] = c;
  }
  return piv;
}

}  // namespace

bool lattice_contains(const IntegerLattice& L, const std::vector<Int>& v,
                      std::vector<Int>* coords) {
  if (v.size() != L.ambient)
    throw std::invalid_argument("lattice_contains: dimension mismatch");
  std::vector<Int> w = v;
  std::vector<Int> cs(L.rank());
  auto piv = pivot_columns(L);
  std::size_t r = 0;
  for (std::size_t c = 0; c < L.ambient; ++c) {
    if (r < L.rank() && piv[r] == c) {
      Int q = w[c] / L.basis.at(r, c);
      if (q * L.basis.at(r, c) != w[c]) return false;
      for (std::size_t j = c; j < L.ambient; ++j) w[j] -= q * L.basis.at(r, j);
      cs[r] = q;
      ++r;
    } else if (w[c] != 0) {
      return false;
    }
  }
  if (coords) *coords = cs;
  return true;
}

std::optional<Int> minimal_multiple(const IntegerLattice& L,
                                    const std::vector<Int>& v) {
  if (v.size() != L.ambient)
    throw std::invalid_argument("minimal_multiple: dimension mismatch");
  std::vector<Rat> w(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) w[j] = Rat(v[j]);
  auto piv = pivot_columns(L);
  Int denom_lcm = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < L.ambient; ++c) {
    if (r < L.rank() && piv[r] == c) {
      Rat q = w[c] / Rat(L.basis.at(r, c));
      q.canonicalize();
      for (std::size_t j = c; j < L.ambient; ++j)
        w[j] -= q * Rat(L.basis.at(r, j));
      mpz_lcm(denom_lcm.get_mpz_t(), denom_lcm.get_mpz_t(),
              q.get_den().get_mpz_t());
      ++r;
    } else if (w[c] != 0) {
      return std::nullopt;
    }
  }
  return denom_lcm;
}

std::vector<Int> SmithResult::diagonal() const {
  std::vector<Int> d;
  for (std::size_t i = 0; i < std::min(D.rows, D.cols); ++i)
    if (D.at(i, i) != 0) d.push_back(D.at(i, i));
  return d;
}

SmithResult snf(const IntMat& M) {
  SmithResult R;
  R.D = M;
  R.U = IntMat::identity(M.rows);
  R.V = IntMat::identity(M.cols);
  IntMat& D = R.D;

  auto col_axpy = [&](IntMat& X, std::size_t c, std::size_t s, const Int& q) {
    if (q == 0) return;
    for (std::size_t i = 0; i < X.rows; ++i) X.at(i, c) -= q * X.at(i, s);
  };
  auto swap_cols = [&](IntMat& X, std::size_t c, std::size_t s) {
    if (c == s) return;
    for (std::size_t i = 0; i < X.rows; ++i) std::swap(X.at(i, c), X.at(i, s));
  };

  std::size_t n = std::min(D.rows, D.cols);
  for (std::size_t t = 0; t < n; ++t) {
    // Move a nonzero entry of minimal absolute value to (t, t).
    bool any = false;
    std::size_t br = t, bc = t;
    for (std::size_t i = t; i < D.rows; ++i)
      for (std::size_t j = t; j < D.cols; ++j)
        if (D.at(i, j) != 0 &&
            (!any || mpz_cmpabs(D.at(i, j).get_mpz_t(), D.at(br, bc).get_mpz_t()) <
                         0)) {
          any = true;
          br = i;
          bc = j;
        }
    if (!any) break;
    swap_rows(D, t, br);
    swap_rows(R.U, t, br);
    swap_cols(D, t, bc);
    swap_cols(R.V, t, bc);

    bool again = true;
    while (again) {
      again = false;
      for (std::size_t i = t + 1; i < D.rows; ++i) {
        if (D.at(i, t) == 0) continue;
        Int q = D.at(i, t) / D.at(t, t);
        row_axpy(D, i, t, q);
        row_axpy(R.U, i, t, q);
        if (D.at(i, t) != 0) {
          swap_rows(D, t, i);
          swap_rows(R.U, t, i);
          again = true;
        }
      }
      for (std::size_t j = t + 1; j < D.cols; ++j) {
        if (D.at(t, j) == 0) continue;
        Int q = D.at(t, j) / D.at(t, t);
        col_axpy(D, j, t, q);
        col_axpy(R.V, j, t, q);
        if (D.at(t, j) != 0) {
          swap_cols(D, t, j);
          swap_cols(R.V, t, j);
          again = true;
        }
      }
    }
    if (D.at(t, t) < 0) {
      for (std::size_t j = t; j < D.cols; ++j) D.at(t, j) = -D.at(t, j);
      for (std::size_t j = 0; j < R.U.cols; ++j) R.U.at(t, j) = -R.U.at(t, j);
    }
  }

  // Enforce the divisibility chain d_t | d_{t+1}.
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t t = 0; t + 1 < n; ++t) {
      if (D.at(t, t) == 0 || D.at(t + 1, t + 1) == 0) continue;
      if (D.at(t + 1, t + 1) % D.at(t, t) == 0) continue;
      changed = true;
      // Classic trick: add column t+1 to column t, then re-eliminate the
      // 2x2 block.
      col_axpy(D, t, t + 1, Int(-1));
      col_axpy(R.V, t, t + 1, Int(-1));
      while (D.at(t + 1, t) != 0 || D.at(t, t + 1) != 0) {
        if (D.at(t + 1, t) != 0) {
          if (mpz_cmpabs(D.at(t + 1, t).get_mpz_t(), D.at(t, t).get_mpz_t()) < 0 ||
              D.at(t, t) == 0) {
            swap_rows(D, t, t + 1);
            swap_rows(R.U, t, t + 1);
          }
          Int q = D.at(t + 1, t) / D.at(t, t);
          row_axpy(D, t + 1, t, q);
          row_axpy(R.U, t + 1, t, q);
          if (D.at(t + 1, t) != 0) continue;
        }
        if (D.at(t, t + 1) != 0) {
          Int q = D.at(t, t + 1) / D.at(t, t);
          col_axpy(D, t + 1, t, q);
          col_axpy(R.V, t + 1, t, q);
          if (D.at(t, t + 1) != 0) {
            swap_cols(D, t, t + 1);
            swap_cols(R.V, t, t + 1);
          }
        }
      }
      if (D.at(t, t) < 0) {
        for (std::size_t j = 0; j < D.cols; ++j) D.at(t, j) = -D.at(t, j);
        for (std::size_t j = 0; j < R.U.cols; ++j) R.U.at(t, j) = -R.U.at(t, j);
      }
      if (D.at(t + 1, t + 1) < 0) {
        for (std::size_t j = 0; j < D.cols; ++j)
          D.at(t + 1, j) = -D.at(t + 1, j);
        for (std::size_t j = 0; j < R.U.cols; ++j)
          R.U.at(t + 1, j) = -R.U.at(t + 1, j);
      }
    }
  }
  return R;
}

bool QuotientStructure::is_trivial() const {
  if (free_rank != 0) return false;
  for (const Int& f : factors)
    if (f != 1) return false;
  return true;
}

std::vector<bool> QuotientStructure::f2_coords(
    const std::vector<Int>& x) const {
  if (!f2_dim) throw std::logic_error("f2_coords: quotient is not an F_2 space");
  if (x.size() != V.rows)
    throw std::invalid_argument("f2_coords: dimension mismatch");
  std::vector<bool> out;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (factors[i] != 2) continue;
    Int z = 0;
    for (std::size_t k = 0; k < V.rows; ++k) z += x[k] * V.at(k, i);
    Int m;
    mpz_mod(m.get_mpz_t(), z.get_mpz_t(), Int(2).get_mpz_t());
    out.push_back(m == 1);
  }
  return out;
}

std::vector<Int> QuotientStructure::f2_coset_rep(std::size_t i) const {
  if (!f2_dim || i >= *f2_dim)
    throw std::logic_error("f2_coset_rep: bad index");
  std::size_t slot = 0, seen = 0;
  for (; slot < factors.size(); ++slot) {
    if (factors[slot] == 2) {
      if (seen == i) break;
      ++seen;
    }
  }
  std::vector<Int> x(Vinv.cols);
  for (std::size_t j = 0; j < Vinv.cols; ++j) x[j] = Vinv.at(slot, j);
  return x;
}

QuotientStructure quotient_invariants(const IntegerLattice& L_big,
                                      const IntegerLattice& L_small) {
  if (L_big.ambient != L_small.ambient)
    throw std::invalid_argument("quotient_invariants: ambient mismatch");
  // Coordinates of each small basis vector in the big basis.
  IntMat A(L_small.rank(), L_big.rank());
  for (std::size_t r = 0; r < L_small.rank(); ++r) {
    std::vector<Int> v(L_small.ambient);
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = L_small.basis.at(r, j);
    std::vector<Int> coords;
    if (!lattice_contains(L_big, v, &coords))
      throw std::invalid_argument(
          "quotient_invariants: L_small not contained in L_big");
    for (std::size_t j = 0; j < coords.size(); ++j) A.at(r, j) = coords[j];
  }
  SmithResult S = snf(A);
  QuotientStructure Q;
  Q.factors = S.diagonal();
  Q.free_rank = L_big.rank() - Q.factors.size();
  Q.V = S.V;
  // Invert V by solving V * Vinv = I over the integers (V unimodular).
  {
    // Adjoint-free route: HNF-based solve would do, but V is small; use
    // Gauss-Jordan over rationals and verify integrality.
    std::size_t n = S.V.rows;
    std::vector<std::vector<Rat>> W(n, std::vector<Rat>(2 * n));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) W[i][j] = Rat(S.V.at(i, j));
      W[i][n + i] = 1;
    }
    for (std::size_t c = 0; c < n; ++c) {
      std::size_t p = c;
      while (p < n && W[p][c] == 0) ++p;
      if (p == n) throw std::logic_error("snf: V not invertible");
      std::swap(W[c], W[p]);
      Rat d = W[c][c];
      for (auto& x : W[c]) x /= d;
      for (std::size_t r = 0; r < n; ++r) {
        if (r == c || W[r][c] == 0) continue;
        Rat f = W[r][c];
        for (std::size_t j = 0; j < 2 * n; ++j) W[r][j] -= f * W[c][j];
      }
    }
    Q.Vinv = IntMat(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Rat x = W[i][n + j];
        x.canonicalize();
        if (x.get_den() != 1) throw std::logic_error("snf: V inverse not integral");
        Q.Vinv.at(i, j) = x.get_num();
      }
  }
  bool all12 = Q.free_rank == 0;
  std::size_t dim2 = 0;
  for (const Int& f : Q.factors) {
    if (f == 2)
      ++dim2;
    else if (f != 1)
      all12 = false;
  }
  if (all12) Q.f2_dim = dim2;
  return Q;
}

std::optional<std::vector<Int>> solve_integer_left(const IntMat& M,
                                                   const std::vector<Int>& v) {
  // x * M = v <=> M^T x^T = v^T; with U A V = D for A = M^T, put
  // w = V^{-1} x^T, so D w = U v^T componentwise.
  if (v.size() != M.cols) throw std::invalid_argument("solve: size mismatch");
  IntMat A(M.cols, M.rows);
  for (std::size_t i = 0; i < M.rows; ++i)
    for (std::size_t j = 0; j < M.cols; ++j) A.at(j, i) = M.at(i, j);
  SmithResult S = snf(A);
  std::vector<Int> ub(A.rows, 0);
  for (std::size_t i = 0; i < A.rows; ++i)
    for (std::size_t j = 0; j < A.rows; ++j) ub[i] += S.U.at(i, j) * v[j];
  std::vector<Int> w(A.cols, 0);
  for (std::size_t i = 0; i < A.rows; ++i) {
    Int d = i < A.cols ? S.D.at(i, i) : Int(0);
    if (d == 0) {
      if (ub[i] != 0) return std::nullopt;
      continue;
    }
    if (ub[i] % d != 0) return std::nullopt;
    w[i] = ub[i] / d;
  }
  std::vector<Int> x(A.cols, 0);
  for (std::size_t i = 0; i < A.cols; ++i)
    for (std::size_t j = 0; j < A.cols; ++j) x[i] += S.V.at(i, j) * w[j];
  return x;
}

}  // namespace bfk
