#include "bfk/genetic.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>

namespace bfk {

namespace {

int pivot_of(const std::vector<bool>& v) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i]) return static_cast<int>(i);
  return -1;
}

}  // namespace

bool F2Span::add(std::vector<bool> v) {
  for (const auto& row : rows) {
    int p = pivot_of(row);
    if (p >= 0 && v[p])
      for (std::size_t i = 0; i < v.size(); ++i) v[i] = v[i] ^ row[i];
  }
  int p = pivot_of(v);
  if (p < 0) return false;
  for (auto& row : rows)
    if (row[p])
      for (std::size_t i = 0; i < v.size(); ++i) row[i] = row[i] ^ v[i];
  rows.push_back(std::move(v));
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    return pivot_of(a) < pivot_of(b);
  });
  return true;
}

bool F2Span::contains(std::vector<bool> v) const {
  for (const auto& row : rows) {
    int p = pivot_of(row);
    if (p >= 0 && v[p])
      for (std::size_t i = 0; i < v.size(); ++i) v[i] = v[i] ^ row[i];
  }
  return pivot_of(v) < 0;
}

namespace {

struct SectionData {
  SectionModel section;
  GroupPtr Q;  // section.HmodN.quo
  ClassFunction phi_cf;
  Cyclo phi_norm;  // <Phi, Phi>
};

SectionData section_data(const GroupPtr& P, const Subgroup& S) {
  SectionData d;
  Subgroup N = normalizer(*P, S);
  d.section = section_model(P, N, S);
  d.Q = d.section.HmodN.quo;
  VirtualCharacter phi = phi_P(d.Q);
  d.phi_cf = CharacterTable::of(d.Q)->to_class_function(phi);
  d.phi_norm = inner_product(d.phi_cf, d.phi_cf);
  return d;
}

bool section_has_rank_one(const GroupPtr& Q) {
  if (Q->order() == 1) return true;
  int p = prime_divisors(Q->order())[0];
  return is_p_group(*Q, p) && has_normal_rank_one(Q, p);
}

}  // namespace

bool is_genetic(const GroupPtr& P, const Subgroup& S) {
  Subgroup N = normalizer(*P, S);
  SectionModel sm = section_model(P, N, S);
  if (!section_has_rank_one(sm.HmodN.quo)) return false;
  SectionData d = section_data(P, S);
  ClassFunction V = indinf(P, d.section, d.phi_cf);
  return inner_product(V, V) == d.phi_norm;
}

namespace {

GeneticRecord make_record(const GroupPtr& P, const Subgroup& S,
                          const SectionData& d) {
  GeneticRecord rec;
  rec.P = P;
  rec.S = S;
  rec.normalizer_of_S = d.section.H.sub;
  rec.section = d.section;
  const GroupPtr& Q = d.Q;
  if (auto n = is_generalized_quaternion(Q)) {
    rec.type_tag = "quaternion";
    rec.quaternion_n = *n;
  } else {
    bool cyclic = false;
    for (int e = 0; e < Q->order(); ++e)
      if (Q->element_order(e) == Q->order()) cyclic = true;
    if (cyclic) {
      rec.type_tag = "cyclic";
    } else if (Q->order() >= 16 &&
               is_isomorphic(Q, dihedral_group(Q->order()))) {
      rec.type_tag = "dihedral";
    } else if (Q->order() >= 16 &&
               is_isomorphic(Q, semidihedral_group(Q->order()))) {
      rec.type_tag = "semidihedral";
    } else {
      throw std::logic_error("genetic record: unexpected section type");
    }
  }
  ClassFunction V = indinf(P, d.section, d.phi_cf);
  auto vc = CharacterTable::of(P)->to_virtual(V);
  if (!vc) throw std::logic_error("genetic record: non-integral V(S)");
  rec.V = *vc;
  return rec;
}

GeneticBasis build_genetic_basis(const GroupPtr& P, int p) {
  if (!is_p_group(*P, p))
    throw std::invalid_argument("genetic_basis: not a p-group");
  GeneticBasis B;
  B.P = P;
  for (const Subgroup& S : subgroup_class_reps(P)) {
    SectionModel sm = section_model(P, normalizer(*P, S), S);
    if (!section_has_rank_one(sm.HmodN.quo)) continue;
    SectionData d = section_data(P, S);
    ClassFunction V = indinf(P, d.section, d.phi_cf);
    if (!(inner_product(V, V) == d.phi_norm)) continue;
    GeneticRecord rec = make_record(P, S, d);
    bool dup = false;
    for (const GeneticRecord& r : B.records)
      if (r.V == rec.V) dup = true;
    if (!dup) B.records.push_back(std::move(rec));
  }
  std::size_t nq = galois_orbits(CharacterTable::of(P), 0).size();
  if (B.records.size() != nq)
    throw std::logic_error("genetic_basis: cardinality mismatch (" +
                           std::to_string(B.records.size()) + " records vs " +
                           std::to_string(nq) + " rational irreducibles)");
  return B;
}

}  // namespace

const GeneticBasis& genetic_basis(const GroupPtr& P, int p) {
  static std::map<std::pair<const FiniteGroup*, int>, GeneticBasis> cache;
  static std::mutex mu;
  auto key = std::pair{P.get(), p};
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  GeneticBasis B = build_genetic_basis(P, p);
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(std::move(key), std::move(B)).first->second;
}

std::vector<VirtualCharacter> faithful_part_basis(const GroupPtr& P) {
  std::vector<VirtualCharacter> out;
  for (const GaloisOrbit& o : galois_orbits(CharacterTable::of(P), 0))
    if (is_faithful(o.class_sum)) out.push_back(o.class_sum);
  return out;
}

std::vector<VirtualCharacter> faithful_component_basis(
    const GeneticRecord& rec, Functor f) {
  const GroupPtr& Q = rec.section.HmodN.quo;
  if (f == Functor::CokerQ && rec.type_tag != "quaternion") return {};
  std::vector<VirtualCharacter> out;
  for (const GaloisOrbit& o : galois_orbits(CharacterTable::of(Q), 0)) {
    if (!is_faithful(o.class_sum)) continue;
    if (f == Functor::RQ)
      out.push_back(scale(schur_index_Q(Q, o.members[0]), o.class_sum));
    else
      out.push_back(o.class_sum);
  }
  return out;
}

VirtualCharacter frak_I(const GeneticBasis& B, Functor f,
                        const std::vector<std::vector<Int>>& comps) {
  TablePtr t = CharacterTable::of(B.P);
  VirtualCharacter acc{B.P, std::vector<Int>(t->num_classes(), 0)};
  for (std::size_t r = 0; r < B.records.size(); ++r) {
    auto basis = faithful_component_basis(B.records[r], f);
    for (std::size_t k = 0; k < basis.size(); ++k) {
      if (comps[r][k] == 0) continue;
      ClassFunction cf = CharacterTable::of(B.records[r].section.HmodN.quo)
                             ->to_class_function(basis[k]);
      ClassFunction img = indinf(B.P, B.records[r].section, cf);
      auto vc = t->to_virtual(img);
      if (!vc) throw std::logic_error("frak_I: non-integral image");
      acc = acc + scale(comps[r][k], *vc);
    }
  }
  return acc;
}

std::vector<std::vector<Int>> frak_D(const GeneticBasis& B, Functor f,
                                     const VirtualCharacter& x) {
  TablePtr t = CharacterTable::of(B.P);
  ClassFunction xcf = t->to_class_function(x);
  std::vector<std::vector<Int>> out;
  for (const GeneticRecord& rec : B.records) {
    const GroupPtr& Q = rec.section.HmodN.quo;
    ClassFunction d = defres(B.P, rec.section, xcf);
    auto dvc = CharacterTable::of(Q)->to_virtual(d);
    if (!dvc) throw std::logic_error("frak_D: non-integral defres");
    std::vector<Int> coords;
    for (const VirtualCharacter& b : faithful_component_basis(rec, f)) {
      std::size_t i = 0;
      while (b.coeffs[i] == 0) ++i;
      if (f == Functor::CokerQ) {
        Int c = dvc->coeffs[i] % 2;
        coords.push_back(c < 0 ? c + 2 : c);
      } else {
        if (dvc->coeffs[i] % b.coeffs[i] != 0)
          throw std::logic_error("frak_D: component not in the scaled basis");
        coords.push_back(dvc->coeffs[i] / b.coeffs[i]);
      }
    }
    out.push_back(std::move(coords));
  }
  return out;
}

RationalityReport verify_rational(const GroupPtr& P, Functor f) {
  RationalityReport rep;
  int p = P->order() == 1 ? 2 : prime_divisors(P->order())[0];
  const GeneticBasis& B = genetic_basis(P, p);
  std::vector<std::vector<Int>> zero;
  std::size_t total = 0;
  for (const GeneticRecord& rec : B.records) {
    zero.emplace_back(faithful_component_basis(rec, f).size(), 0);
    total += zero.back().size();
  }
  // frak_D of frak_I is the identity on unit vectors
  std::vector<std::vector<Int>> images;
  for (std::size_t r = 0; r < B.records.size(); ++r)
    for (std::size_t k = 0; k < zero[r].size(); ++k) {
      auto comps = zero;
      comps[r][k] = 1;
      VirtualCharacter x = frak_I(B, f, comps);
      images.push_back(x.coeffs);
      auto back = frak_D(B, f, x);
      if (back != comps) {
        rep.detail = "frak_D(frak_I) != id at record " + std::to_string(r);
        return rep;
      }
    }
  // bijectivity onto the functor's value at P
  if (f == Functor::CokerQ) {
    const RingLattice& rbar = ring_lattice(P, {FieldTag::rational_valued, 0});
    const RingLattice& rq = ring_lattice(P, {FieldTag::rational_pgroup, p});
    QuotientStructure qs = quotient_invariants(rbar.lattice, rq.lattice);
    if (!qs.f2_dim) {
      rep.detail = "cokernel is not an F_2-space";
      return rep;
    }
    F2Span span;
    span.ambient = *qs.f2_dim;
    for (const auto& img : images) {
      std::vector<Int> coords;
      if (!lattice_contains(rbar.lattice, img, &coords)) {
        rep.detail = "image outside RbarQ";
        return rep;
      }
      span.add(qs.f2_coords(coords));
    }
    if (span.dim() != *qs.f2_dim || total != *qs.f2_dim) {
      rep.detail = "F_2 dimension mismatch: span " +
                   std::to_string(span.dim()) + ", components " +
                   std::to_string(total) + ", cokernel " +
                   std::to_string(*qs.f2_dim);
      return rep;
    }
  } else {
    const RingLattice& target =
        f == Functor::RQ ? ring_lattice(P, {FieldTag::rational_pgroup, p})
                         : ring_lattice(P, {FieldTag::rational_valued, 0});
    IntegerLattice span =
        lattice_from_rows(CharacterTable::of(P)->num_classes(), images);
    if (!(span == target.lattice)) {
      rep.detail = "image lattice differs from the functor lattice";
      return rep;
    }
    if (total != target.lattice.rank()) {
      rep.detail = "component count differs from the functor rank";
      return rep;
    }
  }
  rep.pass = true;
  return rep;
}

F2Span F_n_eval_pgroup(const GroupPtr& P, int n) {
  const GeneticBasis& B = genetic_basis(P, 2);
  const RingLattice& rbar = ring_lattice(P, {FieldTag::rational_valued, 0});
  const RingLattice& rq = ring_lattice(P, {FieldTag::rational_pgroup, 2});
  QuotientStructure qs = quotient_invariants(rbar.lattice, rq.lattice);
  if (!qs.f2_dim)
    throw std::logic_error("F_n_eval_pgroup: cokernel not an F_2-space");
  F2Span span;
  span.ambient = *qs.f2_dim;
  TablePtr t = CharacterTable::of(P);
  for (const GeneticRecord& rec : B.records) {
    if (rec.type_tag != "quaternion" || rec.quaternion_n < n) continue;
    for (const VirtualCharacter& b :
         faithful_component_basis(rec, Functor::CokerQ)) {
      ClassFunction cf = CharacterTable::of(rec.section.HmodN.quo)
                             ->to_class_function(b);
      auto vc = t->to_virtual(indinf(P, rec.section, cf));
      if (!vc) throw std::logic_error("F_n_eval_pgroup: non-integral image");
      std::vector<Int> coords;
      if (!lattice_contains(rbar.lattice, vc->coeffs, &coords))
        throw std::logic_error("F_n_eval_pgroup: image outside RbarQ");
      span.add(qs.f2_coords(coords));
    }
  }
  return span;
}

}  // namespace bfk
