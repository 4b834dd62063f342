#include "bfk/biset_ops.hpp"

#include <algorithm>
#include <stdexcept>

namespace bfk {

ClassFunction induce(const GroupPtr& G, const Subgroup& H,
                     const ClassFunction& chi) {
  SubgroupModel M = subgroup_model(G, H);
  if (chi.group != M.grp)
    throw std::invalid_argument("induce: character not on the subgroup model");
  ClassFunction out{G, std::vector<Cyclo>(G->num_classes(), Cyclo(Rat(0)))};
  Cyclo inv_h{Rat(1, H.order())};
  for (int c = 0; c < G->num_classes(); ++c) {
    int g = G->cls(c).rep;
    Cyclo s = Cyclo::zero(1);
    for (int x = 0; x < G->order(); ++x) {
      int y = G->mul(G->mul(G->inv(x), g), x);
      int a = M.from_parent[y];
      if (a >= 0) s += chi.at_elem(a);
    }
    out.values[c] = s * inv_h;
  }
  return out;
}

ClassFunction restrict_to(const GroupPtr& G, const Subgroup& H,
                          const ClassFunction& chi) {
  if (chi.group != G)
    throw std::invalid_argument("restrict_to: character not on G");
  SubgroupModel M = subgroup_model(G, H);
  ClassFunction out{M.grp,
                    std::vector<Cyclo>(M.grp->num_classes(), Cyclo(Rat(0)))};
  for (int c = 0; c < M.grp->num_classes(); ++c)
    out.values[c] = chi.at_elem(M.to_parent[M.grp->cls(c).rep]);
  return out;
}

ClassFunction inflate(const QuotientModel& Q, const ClassFunction& chi) {
  if (chi.group != Q.quo)
    throw std::invalid_argument("inflate: character not on the quotient");
  const GroupPtr& G = Q.parent;
  ClassFunction out{G, std::vector<Cyclo>(G->num_classes(), Cyclo(Rat(0)))};
  for (int c = 0; c < G->num_classes(); ++c)
    out.values[c] = chi.at_elem(Q.proj[G->cls(c).rep]);
  return out;
}

ClassFunction deflate(const QuotientModel& Q, const ClassFunction& chi) {
  if (chi.group != Q.parent)
    throw std::invalid_argument("deflate: character not on the parent");
  const GroupPtr& G = Q.parent;
  ClassFunction out{Q.quo,
                    std::vector<Cyclo>(Q.quo->num_classes(), Cyclo(Rat(0)))};
  Cyclo inv_n{Rat(1, Q.N.order())};
  for (int c = 0; c < Q.quo->num_classes(); ++c) {
    int g = Q.section[Q.quo->cls(c).rep];
    Cyclo s = Cyclo::zero(1);
    for (int n : Q.N.elems) s += chi.at_elem(G->mul(g, n));
    out.values[c] = s * inv_n;
  }
  return out;
}

ClassFunction iso_transport(const GroupHom& f, const ClassFunction& chi) {
  if (chi.group != f.src)
    throw std::invalid_argument("iso_transport: character not on the source");
  if (!f.is_bijective())
    throw std::invalid_argument("iso_transport: not an isomorphism");
  std::vector<int> finv(f.dst->order());
  for (int x = 0; x < f.src->order(); ++x) finv[f.map[x]] = x;
  ClassFunction out{f.dst,
                    std::vector<Cyclo>(f.dst->num_classes(), Cyclo(Rat(0)))};
  for (int c = 0; c < f.dst->num_classes(); ++c)
    out.values[c] = chi.at_elem(finv[f.dst->cls(c).rep]);
  return out;
}

ClassFunction mult_linear(const ClassFunction& lin, const ClassFunction& chi) {
  if (lin.group != chi.group)
    throw std::invalid_argument("mult_linear: group mismatch");
  if (!(lin.values[0] == Cyclo(Rat(1))))
    throw std::invalid_argument("mult_linear: not a degree-1 character");
  return lin * chi;
}

ClassFunction indinf(const GroupPtr& G, const SectionModel& S,
                     const ClassFunction& chi) {
  return induce(G, S.H.sub, inflate(S.HmodN, chi));
}

ClassFunction defres(const GroupPtr& G, const SectionModel& S,
                     const ClassFunction& chi) {
  return deflate(S.HmodN, restrict_to(G, S.H.sub, chi));
}

FiberedBasisElement make_fibered(const GroupPtr& G, const GroupPtr& H,
                                 const Subgroup& U, const ClassFunction& phi,
                                 int p) {
  FiberedBasisElement e{G, H, direct_product(G, H), U, phi};
  SubgroupModel M = subgroup_model(e.prod.grp, U);
  if (phi.group != M.grp)
    throw std::invalid_argument("make_fibered: phi not on the U model");
  if (!(phi.values[0] == Cyclo(Rat(1))))
    throw std::invalid_argument("make_fibered: phi not degree 1");
  long podd = M.grp->exponent();
  while (podd % p == 0) podd /= p;
  for (const Cyclo& v : phi.values)
    if (!(v.pow(podd) == Cyclo(Rat(1))))
      throw std::invalid_argument("make_fibered: phi order not prime to p");
  return e;
}

VirtualCharacter act_fibered(const FiberedBasisElement& e,
                             const ClassFunction& chi) {
  if (chi.group != e.H)
    throw std::invalid_argument("act_fibered: character not on the source");
  ClassFunction theta = induce(e.prod.grp, e.U, e.phi);
  ClassFunction out{e.G, std::vector<Cyclo>(e.G->num_classes(), Cyclo(Rat(0)))};
  Cyclo inv_h{Rat(1, e.H->order())};
  for (int c = 0; c < e.G->num_classes(); ++c) {
    int g = e.G->cls(c).rep;
    Cyclo s = Cyclo::zero(1);
    for (int h = 0; h < e.H->order(); ++h)
      s += theta.at_elem(e.prod.pair(g, h)) * chi.at_elem(h);
    out.values[c] = s * inv_h;
  }
  auto vc = CharacterTable::of(e.G)->to_virtual(out);
  if (!vc)
    throw std::logic_error("act_fibered: non-integral result");
  return *vc;
}

Subgroup graph_subgroup(const ProductGroup& prod,
                        const std::vector<int>& f_of_h) {
  Subgroup U;
  for (int h = 0; h < prod.right->order(); ++h)
    U.elems.push_back(prod.pair(f_of_h[h], h));
  std::sort(U.elems.begin(), U.elems.end());
  return U;
}

Subgroup graph_subgroup_left(const ProductGroup& prod,
                             const std::vector<int>& f_of_g) {
  Subgroup U;
  for (int g = 0; g < prod.left->order(); ++g)
    U.elems.push_back(prod.pair(g, f_of_g[g]));
  std::sort(U.elems.begin(), U.elems.end());
  return U;
}

}  // namespace bfk
