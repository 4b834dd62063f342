#include "bfk/kappa.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>

namespace bfk {

namespace {

MonomialLattice build_im_kappa(const GroupPtr& G, int p) {
  MonomialLattice L;
  L.group = G;
  L.p = p;
  TablePtr t = CharacterTable::of(G);
  std::vector<std::vector<Int>> rows;
  for (const Subgroup& H : subgroup_class_reps(G)) {
    SubgroupModel M = subgroup_model(G, H);
    auto lins = linear_characters_into_mu_podd(M.grp, p);
    for (std::size_t k = 0; k < lins.size(); ++k) {
      ClassFunction ind = induce(G, H, lins[k]);
      auto vc = t->to_virtual(ind);
      if (!vc)
        throw std::logic_error("im_kappa: non-integral induced character");
      rows.push_back(vc->coeffs);
      L.generators.push_back(MonomialGenerator{
          H, *vc,
          "|H|=" + std::to_string(H.order()) + " phi#" + std::to_string(k)});
    }
  }
  L.lattice = lattice_from_rows(t->num_classes(), rows);
  return L;
}

}  // namespace

const MonomialLattice& im_kappa_lattice(const GroupPtr& G, int p) {
  static std::map<std::pair<const FiniteGroup*, int>, MonomialLattice> cache;
  static std::mutex mu;
  auto key = std::pair{G.get(), p};
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  MonomialLattice L = build_im_kappa(G, p);
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(std::move(key), std::move(L)).first->second;
}

CokernelStructure cokernel(const GroupPtr& G, int p) {
  CokernelStructure C;
  C.group = G;
  C.p = p;
  C.RK = ring_lattice(G, {FieldTag::K_of_p, p}).lattice;
  C.im_kappa = im_kappa_lattice(G, p).lattice;
  C.quo = quotient_invariants(C.RK, C.im_kappa);
  C.f2_dim = C.quo.f2_dim;
  if (C.f2_dim) {
    for (std::size_t i = 0; i < *C.f2_dim; ++i) {
      std::vector<Int> big = C.quo.f2_coset_rep(i);
      // expand big-basis coordinates to Irr coordinates
      std::vector<Int> irr(C.RK.ambient, 0);
      for (std::size_t r = 0; r < C.RK.rank(); ++r)
        for (std::size_t c = 0; c < C.RK.ambient; ++c)
          irr[c] += big[r] * C.RK.basis.at(r, c);
      C.coset_reps.push_back(VirtualCharacter{G, std::move(irr)});
    }
  }
  return C;
}

bool is_K_valued(const VirtualCharacter& chi, int p) {
  TablePtr t = CharacterTable::of(chi.group);
  for (const GaloisOrbit& o : galois_orbits(t, p))
    for (int m : o.members)
      if (chi.coeffs[m] != chi.coeffs[o.members[0]]) return false;
  return true;
}

bool member_im_kappa(const VirtualCharacter& chi, int p) {
  if (!is_K_valued(chi, p))
    throw std::invalid_argument("member_im_kappa: chi is not K-valued");
  return lattice_contains(im_kappa_lattice(chi.group, p).lattice, chi.coeffs);
}

DetectResult detect(const VirtualCharacter& chi, int p) {
  if (!is_K_valued(chi, p))
    throw std::invalid_argument("detect: chi is not K-valued");
  const GroupPtr& G = chi.group;
  TablePtr t = CharacterTable::of(G);
  ClassFunction cf = t->to_class_function(chi);
  DetectResult R;
  R.in_image = true;
  for (const Subgroup& H : subgroup_class_reps(G)) {
    SubgroupModel M = subgroup_model(G, H);
    if (!classify_elementary(M.grp, p).elementary_for.count(2)) continue;
    if (!quaternion_subquotient(M.grp, 3)) continue;
    ClassFunction res = restrict_to(G, H, cf);
    auto rvc = CharacterTable::of(M.grp)->to_virtual(res);
    if (!rvc) throw std::logic_error("detect: non-integral restriction");
    bool ok = member_im_kappa(*rvc, p);
    R.witnesses.push_back(DetectWitness{H, ok});
    if (!ok) R.in_image = false;
  }
  R.cross_check_ok = (R.in_image == member_im_kappa(chi, p));
  return R;
}

namespace {

// gamma class sum of a group isomorphic to Q_{2^m}
ClassFunction gamma_class_function(const GroupPtr& Q) {
  auto fb = faithful_part_basis(Q);
  if (fb.size() != 1)
    throw std::logic_error("gamma: expected a single faithful Q-class");
  return CharacterTable::of(Q)->to_class_function(fb[0]);
}

struct CokCoords {
  IntegerLattice RK;
  QuotientStructure quo;
  std::size_t dim;
};

CokCoords cok_coords(const GroupPtr& G, int p) {
  CokCoords c;
  c.RK = ring_lattice(G, {FieldTag::K_of_p, p}).lattice;
  c.quo = quotient_invariants(c.RK, im_kappa_lattice(G, p).lattice);
  if (!c.quo.f2_dim)
    throw std::logic_error("F_n_eval: cokernel not an F_2-space");
  c.dim = *c.quo.f2_dim;
  return c;
}

std::vector<bool> cok_bits(const CokCoords& c, const std::vector<Int>& irr) {
  std::vector<Int> coords;
  if (!lattice_contains(c.RK, irr, &coords))
    throw std::logic_error("F_n_eval: image outside R_K");
  return c.quo.f2_coords(coords);
}

F2Span fn_sections(const GroupPtr& G, int n, int p) {
  CokCoords c = cok_coords(G, p);
  F2Span span;
  span.ambient = c.dim;
  TablePtr t = CharacterTable::of(G);
  for (const auto& [H, N] : sections(G)) {
    int idx = H.order() / N.order();
    int m = 0;
    while ((1 << m) < idx) ++m;
    if ((1 << m) != idx || m < n) continue;
    SectionModel sm = section_model(G, H, N);
    if (is_generalized_quaternion(sm.HmodN.quo) != m) continue;
    ClassFunction g = gamma_class_function(sm.HmodN.quo);
    // the fibered elements factor through Ind o Mult(phi) o Inf, so the
    // inflated gamma is twisted by every linear phi: H -> mu_{p'}
    ClassFunction infl = inflate(sm.HmodN, g);
    for (const ClassFunction& phi :
         linear_characters_into_mu_podd(sm.H.grp, p)) {
      auto vc = t->to_virtual(induce(G, sm.H.sub, mult_linear(phi, infl)));
      if (!vc) throw std::logic_error("F_n_eval: non-integral image");
      span.add(cok_bits(c, vc->coeffs));
    }
  }
  return span;
}

F2Span fn_exact(const GroupPtr& G, int n, int p) {
  GroupPtr Q = quaternion_group_n(n);
  if (G->order() * Q->order() > 256)
    throw std::runtime_error("F_n_eval exact: product order bound exceeded");
  CokCoords c = cok_coords(G, p);
  F2Span span;
  span.ambient = c.dim;
  ProductGroup prod = direct_product(G, Q);
  ClassFunction gam = CharacterTable::of(Q)->to_class_function(gamma_n(n));

  // Goursat enumeration of subgroups U of G x Q
  std::set<std::vector<int>> seen;
  for (const Subgroup& P1 : subgroup_class_reps(G)) {
    SubgroupModel M1 = subgroup_model(G, P1);
    for (const Subgroup& K1 : normal_subgroups(M1.grp)) {
      QuotientModel Q1 = quotient(M1.grp, K1);
      for (const Subgroup& P2 : all_subgroups(Q)) {
        SubgroupModel M2 = subgroup_model(Q, P2);
        for (const Subgroup& K2 : normal_subgroups(M2.grp)) {
          if (K1.order() * P2.order() != K2.order() * P1.order())
            continue;  // quotients must have equal order
          QuotientModel Q2 = quotient(M2.grp, K2);
          for (const GroupHom& eta : all_isomorphisms(Q1.quo, Q2.quo)) {
            Subgroup U;
            for (int a : P1.elems) {
              int qa = eta.map[Q1.proj[M1.from_parent[a]]];
              for (int b : P2.elems)
                if (Q2.proj[M2.from_parent[b]] == qa)
                  U.elems.push_back(prod.pair(a, b));
            }
            std::sort(U.elems.begin(), U.elems.end());
            if (!seen.insert(U.elems).second) continue;
            SubgroupModel MU = subgroup_model(prod.grp, U);
            for (const ClassFunction& phi :
                 linear_characters_into_mu_podd(MU.grp, p)) {
              FiberedBasisElement e{G, Q, prod, U, phi};
              VirtualCharacter vc = act_fibered(e, gam);
              span.add(cok_bits(c, vc.coeffs));
            }
          }
        }
      }
    }
  }
  return span;
}

}  // namespace

F2Span F_n_eval(const GroupPtr& G, int n, FnMode mode, int p) {
  return mode == FnMode::sections ? fn_sections(G, n, p) : fn_exact(G, n, p);
}

bool witt_berman_span_check(const GroupPtr& G, int p) {
  TablePtr t = CharacterTable::of(G);
  std::vector<std::vector<Int>> rows;
  for (const Subgroup& H : subgroup_class_reps(G)) {
    SubgroupModel M = subgroup_model(G, H);
    if (classify_elementary(M.grp, p).Kp_elementary_for.empty()) continue;
    const RingLattice& RKH = ring_lattice(M.grp, {FieldTag::K_of_p, p});
    for (const VirtualCharacter& gen : RKH.generators) {
      ClassFunction cf = CharacterTable::of(M.grp)->to_class_function(gen);
      auto vc = t->to_virtual(induce(G, H, cf));
      if (!vc) throw std::logic_error("witt_berman: non-integral induction");
      rows.push_back(vc->coeffs);
    }
  }
  IntegerLattice span = lattice_from_rows(t->num_classes(), rows);
  return span == ring_lattice(G, {FieldTag::K_of_p, p}).lattice;
}

SolomonDressCertificate solomon_dress_identity_check(const GroupPtr& G,
                                                     int p) {
  TablePtr t = CharacterTable::of(G);
  std::vector<std::vector<Int>> rows;
  std::vector<std::string> notes;
  for (const Subgroup& H : subgroup_class_reps(G)) {
    SubgroupModel M = subgroup_model(G, H);
    ElementaryClassification cls = classify_elementary(M.grp, p);
    if (cls.quasi_elementary_for.empty()) continue;
    bool sylow_ok =
        H.order() % p != 0 || cls.normal_sylow.count(p) > 0;
    if (!sylow_ok) continue;
    auto lins = linear_characters_into_mu_podd(M.grp, p);
    for (std::size_t k = 0; k < lins.size(); ++k) {
      auto vc = t->to_virtual(induce(G, H, lins[k]));
      if (!vc) throw std::logic_error("solomon_dress: non-integral induction");
      rows.push_back(vc->coeffs);
      notes.push_back("|H|=" + std::to_string(H.order()) + " phi#" +
                      std::to_string(k));
    }
  }
  SolomonDressCertificate cert;
  if (rows.empty()) return cert;
  IntMat M(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) M.at(i, j) = rows[i][j];
  std::vector<Int> one(t->num_classes(), 0);
  auto triv = t->to_virtual(t->trivial_character());
  one = triv->coeffs;
  auto x = solve_integer_left(M, one);
  if (!x) return cert;
  // verify the certificate by direct evaluation
  std::vector<Int> check(one.size(), 0);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < one.size(); ++j)
      check[j] += (*x)[i] * rows[i][j];
  if (check != one) return cert;
  cert.pass = true;
  for (std::size_t i = 0; i < rows.size(); ++i)
    if ((*x)[i] != 0) cert.coefficients.emplace_back(notes[i], (*x)[i]);
  return cert;
}

bool subring_check(const GroupPtr& G, int p) {
  const MonomialLattice& L = im_kappa_lattice(G, p);
  TablePtr t = CharacterTable::of(G);
  std::vector<ClassFunction> cfs;
  for (const MonomialGenerator& g : L.generators)
    cfs.push_back(t->to_class_function(g.induced));
  for (std::size_t i = 0; i < cfs.size(); ++i)
    for (std::size_t j = i; j < cfs.size(); ++j) {
      auto vc = t->to_virtual(cfs[i] * cfs[j]);
      if (!vc) throw std::logic_error("subring_check: non-integral product");
      if (!lattice_contains(L.lattice, vc->coeffs)) return false;
    }
  return true;
}

TensorReport elementary_tensor_check(int m, const GroupPtr& P) {
  if (m % 2 == 0)
    throw std::invalid_argument("elementary_tensor_check: m must be odd");
  TensorReport rep;
  GroupPtr Cm = construct_named("C" + std::to_string(m));
  GroupPtr G = direct_product(Cm, P).grp;
  CokernelStructure big = cokernel(G, 2);
  CokernelStructure small = cokernel(P, 2);
  if (!big.f2_dim || !small.f2_dim) return rep;
  rep.dim_product = *big.f2_dim;
  rep.dim_factor = *small.f2_dim;
  rep.pass = rep.dim_product == static_cast<std::size_t>(m) * rep.dim_factor;
  return rep;
}

bool sylow2_has_quaternion_subquotient(const GroupPtr& G) {
  if (G->order() % 2 != 0) return false;
  Subgroup S = sylow_subgroup(G, 2);
  SubgroupModel M = subgroup_model(G, S);
  return quaternion_subquotient(M.grp, 3).has_value();
}

}  // namespace bfk
