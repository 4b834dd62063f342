#include "bfk/rep_rings.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

#include "bfk/biset_ops.hpp"

namespace bfk {

namespace {

RingLattice build_ring_lattice(const GroupPtr& G, FieldSpec spec) {
  TablePtr t = CharacterTable::of(G);
  int r = t->num_classes();
  RingLattice L;
  L.group = G;
  L.spec = spec;
  std::vector<std::vector<Int>> rows;
  switch (spec.tag) {
    case FieldTag::complex_field: {
      for (int i = 0; i < r; ++i) {
        std::vector<Int> row(r, 0);
        row[i] = 1;
        rows.push_back(row);
        L.generators.push_back(VirtualCharacter{G, row});
        L.provenance.push_back("irr(" + std::to_string(i) + ")");
      }
      break;
    }
    case FieldTag::K_of_p:
    case FieldTag::rational_valued: {
      int p = spec.tag == FieldTag::K_of_p ? spec.p : 0;
      for (const GaloisOrbit& o : galois_orbits(t, p)) {
        rows.push_back(o.class_sum.coeffs);
        L.generators.push_back(o.class_sum);
        std::string note =
            (p ? "K-class sum {" : "Q-class sum {");
        for (std::size_t k = 0; k < o.members.size(); ++k)
          note += (k ? "," : "") + std::to_string(o.members[k]);
        L.provenance.push_back(note + "}");
      }
      break;
    }
    case FieldTag::rational_pgroup: {
      if (!is_p_group(*G, spec.p))
        throw std::invalid_argument("ring_lattice: not a p-group");
      for (const Subgroup& Q : subgroup_class_reps(G)) {
        SubgroupModel M = subgroup_model(G, Q);
        ClassFunction one = CharacterTable::of(M.grp)->trivial_character();
        ClassFunction ind = induce(G, Q, one);
        auto vc = t->to_virtual(ind);
        if (!vc)
          throw std::logic_error("ring_lattice: non-integral permutation character");
        rows.push_back(vc->coeffs);
        L.generators.push_back(*vc);
        L.provenance.push_back("Ind from subgroup of order " +
                               std::to_string(Q.order()));
      }
      break;
    }
  }
  L.lattice = lattice_from_rows(r, rows);
  return L;
}

}  // namespace

const RingLattice& ring_lattice(const GroupPtr& G, FieldSpec spec) {
  static std::map<std::pair<const FiniteGroup*, std::pair<int, int>>,
                  RingLattice>
      cache;
  static std::mutex mu;
  auto key = std::pair{G.get(),
                       std::pair{static_cast<int>(spec.tag), spec.p}};
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  RingLattice L = build_ring_lattice(G, spec);
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(std::move(key), std::move(L)).first->second;
}

Int schur_index_Q(const GroupPtr& P, int chi) {
  int p = prime_divisors(P->order()).empty() ? 2
                                             : prime_divisors(P->order())[0];
  const RingLattice& RQ = ring_lattice(P, {FieldTag::rational_pgroup, p});
  TablePtr t = CharacterTable::of(P);
  for (const GaloisOrbit& o : galois_orbits(t, 0)) {
    bool mine = false;
    for (int m : o.members)
      if (m == chi) mine = true;
    if (!mine) continue;
    auto m = minimal_multiple(RQ.lattice, o.class_sum.coeffs);
    if (!m) throw std::logic_error("schur_index_Q: class sum outside Q-span");
    return *m;
  }
  throw std::invalid_argument("schur_index_Q: bad row index");
}

GroupPtr quaternion_group_n(int n) {
  if (n < 3) throw std::invalid_argument("quaternion_group_n: n >= 3");
  return construct_named("Q" + std::to_string(1 << n));
}

VirtualCharacter gamma_n(int n) {
  GroupPtr Q = quaternion_group_n(n);
  TablePtr t = CharacterTable::of(Q);
  VirtualCharacter g{Q, std::vector<Int>(t->num_classes(), 0)};
  for (int i = 0; i < t->num_classes(); ++i) {
    VirtualCharacter unit{Q, std::vector<Int>(t->num_classes(), 0)};
    unit.coeffs[i] = 1;
    if (is_faithful(unit)) g.coeffs[i] = 1;
  }
  return g;
}

VirtualCharacter phi_P(const GroupPtr& P) {
  TablePtr t = CharacterTable::of(P);
  if (P->order() == 1)
    return VirtualCharacter{P, std::vector<Int>(1, 1)};
  int p = prime_divisors(P->order())[0];
  if (!is_p_group(*P, p) || !has_normal_rank_one(P, p))
    throw std::invalid_argument("phi_P: group not of normal p-rank 1");
  for (const GaloisOrbit& o : galois_orbits(t, 0)) {
    if (!is_faithful(o.class_sum)) continue;
    Int m = schur_index_Q(P, o.members[0]);
    return scale(m, o.class_sum);
  }
  throw std::logic_error("phi_P: no faithful irreducible character");
}

}  // namespace bfk
