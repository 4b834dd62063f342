#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include <gmpxx.h>

namespace bfk {

using Int = mpz_class;
using Rat = mpq_class;

/// Dense matrix of arbitrary-precision integers, row major.
struct IntMat {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Int> a;

  IntMat() = default;
  IntMat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}

  Int& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
  const Int& at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }

  static IntMat identity(std::size_t n);
  bool operator==(const IntMat& o) const = default;
};

IntMat mat_mul(const IntMat& A, const IntMat& B);

/// Sublattice of Z^ambient. Basis rows are in Hermite normal form:
/// pivot columns strictly increasing, pivots positive, entries above a
/// pivot reduced into [0, pivot). HNF is unique for the row space, so
/// lattice equality is basis equality.
struct IntegerLattice {
  std::size_t ambient = 0;
  IntMat basis;  // rank x ambient, HNF

  std::size_t rank() const { return basis.rows; }
  bool operator==(const IntegerLattice& o) const = default;
};

/// HNF of the row space of M (zero rows dropped).
IntegerLattice hnf(const IntMat& M);

/// Lattice spanned by a list of vectors of common length.
IntegerLattice lattice_from_rows(std::size_t ambient,
                                 const std::vector<std::vector<Int>>& rows);

/// Exact membership; on success optionally yields the coordinates of v
/// in the HNF basis.
bool lattice_contains(const IntegerLattice& L, const std::vector<Int>& v,
                      std::vector<Int>* coords = nullptr);

/// Least m >= 1 with m*v in L, or nullopt if v is outside the Q-span.
std::optional<Int> minimal_multiple(const IntegerLattice& L,
                                    const std::vector<Int>& v);

/// Smith normal form with transform certificates: U * M * V = D,
/// U and V unimodular, D diagonal with d_1 | d_2 | ...
struct SmithResult {
  IntMat U, V, D;
  std::vector<Int> diagonal() const;
};

SmithResult snf(const IntMat& M);

/// Invariant factors of L_big / L_small together with the coordinate
/// change needed to read off quotient coordinates. The F_2-dimension is
/// only defined when the quotient is elementary abelian of exponent
/// dividing 2 (all factors in {1,2}, free rank 0).
struct QuotientStructure {
  std::vector<Int> factors;  // divisibility chain, multiplicity included
  std::size_t free_rank = 0;
  std::optional<std::size_t> f2_dim;

  // x (coords in L_big basis) maps to x*V; component i is then read
  // modulo factors[i] (components past factors.size() are free).
  IntMat V;
  IntMat Vinv;

  bool is_trivial() const;
  /// F_2-coordinates of a big-basis coordinate vector; only valid when
  /// f2_dim is defined. Components at factor-1 positions are checked to
  /// vanish mod 1 trivially; returned bits correspond to factor-2 slots.
  std::vector<bool> f2_coords(const std::vector<Int>& x) const;
  /// Big-basis coordinates of a coset representative for the i-th
  /// factor-2 slot.
  std::vector<Int> f2_coset_rep(std::size_t i) const;
};

/// Requires L_small subseteq L_big (verified; throws otherwise).
QuotientStructure quotient_invariants(const IntegerLattice& L_big,
                                      const IntegerLattice& L_small);

/// An integer solution x of x * M = v (rows of M spanning), or nullopt.
std::optional<std::vector<Int>> solve_integer_left(const IntMat& M,
                                                   const std::vector<Int>& v);

}  // namespace bfk
