#pragma once

#include <string>
#include <vector>

#include "bfk/biset_ops.hpp"
#include "bfk/rep_rings.hpp"

namespace bfk {

/// A subgroup S of P whose module V(S) = Indinf of the faithful
/// rational irreducible of N_P(S)/S is again rationally irreducible.
struct GeneticRecord {
  GroupPtr P;
  Subgroup S;
  Subgroup normalizer_of_S;
  SectionModel section;    // H = N_P(S), N = S
  std::string type_tag;    // cyclic | quaternion | dihedral | semidihedral
  int quaternion_n = 0;    // section quotient = Q_{2^n} when quaternion
  VirtualCharacter V;      // Indinf(Phi) on P
};

struct GeneticBasis {
  GroupPtr P;
  std::vector<GeneticRecord> records;
};

/// True iff the endomorphism dimensions match:
/// <V(S), V(S)> = <Phi, Phi> on N_P(S)/S.
bool is_genetic(const GroupPtr& P, const Subgroup& S);

/// One record per equivalence class (V(S) character equality); the
/// cardinality is checked against |Irr_Q(P)| and a mismatch throws.
/// Cached per group.
const GeneticBasis& genetic_basis(const GroupPtr& P, int p);

/// The faithful Q-class sums of P.
std::vector<VirtualCharacter> faithful_part_basis(const GroupPtr& P);

/// Functors the genetic decomposition is exercised on: the rational
/// ring, the rational-valued ring, and their F_2 quotient.
enum class Functor { RQ, RQbar, CokerQ };

/// Basis of the faithful part of the functor at the record's section
/// quotient: faithful class sums for RQbar, their Schur-index multiples
/// for RQ, and the single gamma class (quaternion type only) for CokerQ.
std::vector<VirtualCharacter> faithful_component_basis(
    const GeneticRecord& rec, Functor f);

/// frak_I: sum over records of Indinf of the given component vectors
/// (coordinates in faithful_component_basis order).
VirtualCharacter frak_I(const GeneticBasis& B, Functor f,
                        const std::vector<std::vector<Int>>& comps);
/// frak_D: Defres to each section, projected onto the faithful
/// component coordinates (mod 2 for CokerQ).
std::vector<std::vector<Int>> frak_D(const GeneticBasis& B, Functor f,
                                     const VirtualCharacter& x);

struct RationalityReport {
  bool pass = false;
  std::string detail;
};
/// Checks frak_D after frak_I is the identity on every component basis
/// vector and that frak_I is bijective onto the functor's value at P.
RationalityReport verify_rational(const GroupPtr& P, Functor f);

/// Row-reduced F_2 span with ambient dimension; used for cokernel
/// subspaces.
struct F2Span {
  std::size_t ambient = 0;
  std::vector<std::vector<bool>> rows;  // reduced, nonzero

  std::size_t dim() const { return rows.size(); }
  /// Adds a vector; returns true when it enlarged the span.
  bool add(std::vector<bool> v);
  bool contains(std::vector<bool> v) const;
  bool operator==(const F2Span& o) const = default;
};

/// F_n(P) inside the cokernel RbarQ/RQ: span of the images of the
/// gamma classes of genetic records of quaternion type Q_{2^m}, m >= n.
F2Span F_n_eval_pgroup(const GroupPtr& P, int n);

}  // namespace bfk
