#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bfk/genetic.hpp"

namespace bfk {

/// Character induced from a linear character with values in mu_{p'};
/// the generators of the image of the trivial source ring.
struct MonomialGenerator {
  Subgroup H;              // up to conjugacy
  VirtualCharacter induced;
  std::string note;        // subgroup order and character index
};

struct MonomialLattice {
  GroupPtr group;
  int p = 2;
  IntegerLattice lattice;  // in Irr coordinates
  std::vector<MonomialGenerator> generators;
};

/// Span of Ind_H^G(phi) over subgroup class representatives H and all
/// linear phi: H -> mu_{p'}. Cached.
const MonomialLattice& im_kappa_lattice(const GroupPtr& G, int p = 2);

struct CokernelStructure {
  GroupPtr group;
  int p = 2;
  IntegerLattice RK;        // K-class-sum span
  IntegerLattice im_kappa;
  QuotientStructure quo;    // RK / im_kappa
  std::optional<std::size_t> f2_dim;
  std::vector<VirtualCharacter> coset_reps;  // lift a basis of the quotient
};

CokernelStructure cokernel(const GroupPtr& G, int p = 2);

/// chi constant on K-Galois orbits (i.e. chi lies in R_K).
bool is_K_valued(const VirtualCharacter& chi, int p = 2);

/// Exact membership of chi in im(kappa); throws unless chi is K-valued.
bool member_im_kappa(const VirtualCharacter& chi, int p = 2);

/// Restriction criterion: chi is in the image iff its restriction to
/// every elementary-for-2 subgroup with a Q8 subquotient is. The result
/// carries the witnesses and a cross-check against direct membership.
struct DetectWitness {
  Subgroup H;
  bool restriction_in_image = false;
};
struct DetectResult {
  bool in_image = false;
  std::vector<DetectWitness> witnesses;
  bool cross_check_ok = false;  // agrees with member_im_kappa
};
DetectResult detect(const VirtualCharacter& chi, int p = 2);

/// F_n(G) inside the cokernel. Sections mode spans indinf-transported
/// gamma classes over sections of G isomorphic to Q_{2^m}, m >= n;
/// exact mode spans the actions of all fibered standard basis elements
/// [G x Q_{2^n}/U, phi] on gamma_n, with U enumerated by Goursat pairs.
enum class FnMode { exact, sections };
F2Span F_n_eval(const GroupPtr& G, int n, FnMode mode, int p = 2);

/// Induction from the K_p-elementary subgroup classes spans R_K(G).
bool witt_berman_span_check(const GroupPtr& G, int p);

/// 1_G as an integer combination of monomials induced from
/// quasi-elementary subgroups with a normal Sylow p.
struct SolomonDressCertificate {
  bool pass = false;
  std::vector<std::pair<std::string, Int>> coefficients;  // (note, coeff)
};
SolomonDressCertificate solomon_dress_identity_check(const GroupPtr& G,
                                                     int p = 2);

/// Pairwise products of the monomial generators stay in im(kappa).
bool subring_check(const GroupPtr& G, int p = 2);

/// F_2-dim of cokernel(C_m x P) against m times that of P.
struct TensorReport {
  bool pass = false;
  std::size_t dim_product = 0;
  std::size_t dim_factor = 0;
};
TensorReport elementary_tensor_check(int m, const GroupPtr& P);

/// Whether a Sylow 2-subgroup has a subquotient isomorphic to Q8.
bool sylow2_has_quaternion_subquotient(const GroupPtr& G);

}  // namespace bfk
