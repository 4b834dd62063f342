#pragma once

#include "bfk/char_table.hpp"

namespace bfk {

/// chi lives on subgroup_model(G, H).grp; the result lives on G.
ClassFunction induce(const GroupPtr& G, const Subgroup& H,
                     const ClassFunction& chi);
/// chi lives on G; the result lives on subgroup_model(G, H).grp.
ClassFunction restrict_to(const GroupPtr& G, const Subgroup& H,
                          const ClassFunction& chi);
/// chi lives on Q.quo; the result lives on Q.parent.
ClassFunction inflate(const QuotientModel& Q, const ClassFunction& chi);
/// chi lives on Q.parent; the result is the N-average on Q.quo.
ClassFunction deflate(const QuotientModel& Q, const ClassFunction& chi);
/// Value transport along a bijective homomorphism.
ClassFunction iso_transport(const GroupHom& f, const ClassFunction& chi);
/// Pointwise product with a degree-1 character of the same group.
ClassFunction mult_linear(const ClassFunction& lin, const ClassFunction& chi);
/// Ind_H^G after Inf_{H/N}^H; chi lives on S.HmodN.quo.
ClassFunction indinf(const GroupPtr& G, const SectionModel& S,
                     const ClassFunction& chi);
/// Def_{H/N} after Res_H^G; chi lives on G.
ClassFunction defres(const GroupPtr& G, const SectionModel& S,
                     const ClassFunction& chi);

/// Transitive fibered basis element [GxH/U, phi]: U a subgroup of the
/// direct product, phi a linear character of U with values in mu_{p'}.
struct FiberedBasisElement {
  GroupPtr G, H;      // target and source
  ProductGroup prod;  // direct_product(G, H)
  Subgroup U;
  ClassFunction phi;  // on subgroup_model(prod.grp, U).grp, degree 1
};

FiberedBasisElement make_fibered(const GroupPtr& G, const GroupPtr& H,
                                 const Subgroup& U, const ClassFunction& phi,
                                 int p);

/// Character action of the element: with Theta = Ind_U^{GxH}(phi),
/// (e.chi)(g) = (1/|H|) sum_h Theta(g,h) chi(h). Throws when the result
/// fails to have integer Irr coordinates (a convention defect).
VirtualCharacter act_fibered(const FiberedBasisElement& e,
                             const ClassFunction& chi);

/// The diagonal subgroup {(f(h), h)} of GxH for a homomorphism given by
/// an element map on H (helper for the calibration elements).
Subgroup graph_subgroup(const ProductGroup& prod,
                        const std::vector<int>& f_of_h);
/// The subgroup {(g, f(g))} for a homomorphism out of G.
Subgroup graph_subgroup_left(const ProductGroup& prod,
                             const std::vector<int>& f_of_g);

}  // namespace bfk
