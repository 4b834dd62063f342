#pragma once

#include <string>
#include <vector>

#include "bfk/char_table.hpp"

namespace bfk {

/// Coefficient field of a representation-ring lattice. K_of_p is
/// K = Q(mu_{p'}); rational_pgroup is the rational representation ring
/// of a p-group, generated by permutation characters (Ritter-Segal).
enum class FieldTag { complex_field, K_of_p, rational_valued, rational_pgroup };

struct FieldSpec {
  FieldTag tag = FieldTag::complex_field;
  int p = 0;  // used by K_of_p and rational_pgroup
  bool operator==(const FieldSpec& o) const = default;
};

struct RingLattice {
  GroupPtr group;
  FieldSpec spec;
  IntegerLattice lattice;  // in Irr coordinates
  std::vector<VirtualCharacter> generators;
  std::vector<std::string> provenance;  // one note per generator
};

/// The lattice of the virtual character ring over the given field:
/// all of Z^{|Irr|} for C, the span of Galois class sums for K and for
/// rational-valued characters, and the permutation-character span for
/// the rational ring of a p-group. Cached.
const RingLattice& ring_lattice(const GroupPtr& G, FieldSpec spec);

/// Schur index over Q of Irr row chi of the 2-group (or p-group) P:
/// least m with m * (Q-class sum of chi) inside the rational ring.
Int schur_index_Q(const GroupPtr& P, int chi);

/// Sum of the faithful irreducible characters of Q_{2^n}, n >= 3.
VirtualCharacter gamma_n(int n);
GroupPtr quaternion_group_n(int n);  // Q_{2^n}

/// Character of the unique faithful irreducible rational module of a
/// p-group with normal p-rank 1: m_Q(chi) times the Q-class sum of any
/// faithful irreducible chi.
VirtualCharacter phi_P(const GroupPtr& P);

}  // namespace bfk
