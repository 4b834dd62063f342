// Acceptance gate: one line per criterion, nonzero exit on any failure.
#include <cstdio>
#include <random>
#include <set>

#include "bfk/exprs.hpp"
#include "bfk/genetic.hpp"
#include "bfk/kappa.hpp"
#include "catalog.hpp"

using namespace bfk;

namespace {

int failures = 0;
int checks = 0;
std::vector<std::string> notes;

void expect(bool ok, const std::string& what) {
  ++checks;
  if (!ok) {
    ++failures;
    notes.push_back(what);
  }
}

ClassFunction gamma_cf(int n) {
  return CharacterTable::of(quaternion_group_n(n))
      ->to_class_function(gamma_n(n));
}

// ---- criterion 1: quaternion induction/restriction identities --------

bool criterion1() {
  int before = failures;
  for (int n : {3, 4}) {
    GroupPtr G = quaternion_group_n(n + 1);
    Subgroup H = resolve_subgroup(G, "Q" + std::to_string(1 << n));
    SubgroupModel sm = subgroup_model(G, H);
    auto iso = find_isomorphism(quaternion_group_n(n), sm.grp);
    expect(iso.has_value(), "q-subgroup iso");
    ClassFunction gam = iso_transport(*iso, gamma_cf(n));
    auto ind = CharacterTable::of(G)->to_virtual(induce(G, H, gam));
    expect(ind && *ind == gamma_n(n + 1), "Ind gamma_n = gamma_{n+1}");
    ClassFunction res =
        restrict_to(G, H, CharacterTable::of(G)->to_class_function(gamma_n(n + 1)));
    expect(res == scale(2, gam), "Res gamma_{n+1} = 2 gamma_n");
  }
  for (int n : {3, 4}) {
    GroupPtr G = quaternion_group_n(n);
    SectionModel S = section_model(G, center(*G), trivial_subgroup());
    TablePtr tz = CharacterTable::of(S.HmodN.quo);
    ClassFunction sign = tz->trivial_character();
    for (int i = 0; i < tz->num_classes(); ++i)
      if (!(tz->row(i) == tz->trivial_character())) sign = tz->row(i);
    auto v = CharacterTable::of(G)->to_virtual(indinf(G, S, sign));
    expect(v && *v == scale(2, gamma_n(n)), "Indinf central sign = 2 gamma_n");
  }
  return failures == before;
}

// ---- criterion 2: Schur indices --------------------------------------

bool criterion2() {
  int before = failures;
  for (const std::string& spec : catalog::two_groups_32()) {
    auto P = construct_named(spec);
    auto t = CharacterTable::of(P);
    for (int i = 0; i < t->num_classes(); ++i) {
      // The faithful quotient of the character decides the index: 2 for
      // generalized quaternion, 1 otherwise.
      Subgroup K = kernel_of(t->row(i));
      bool quat_quotient;
      if (K.order() == 1) {
        quat_quotient = is_generalized_quaternion(P).has_value();
      } else {
        QuotientModel qm = quotient(P, K);
        quat_quotient = is_generalized_quaternion(qm.quo).has_value();
      }
      Int want = quat_quotient ? 2 : 1;
      expect(schur_index_Q(P, i) == want, "schur index " + spec);
    }
    // Invariant factors of Rbar_Q/R_Q lie in {1, 2}.
    const RingLattice& rbar =
        ring_lattice(P, {FieldTag::rational_valued, 0});
    const RingLattice& rq = ring_lattice(P, {FieldTag::rational_pgroup, 2});
    QuotientStructure q = quotient_invariants(rbar.lattice, rq.lattice);
    bool ok = q.free_rank == 0;
    for (const Int& f : q.factors) ok = ok && (f == 1 || f == 2);
    expect(ok, "Rbar/RQ factors " + spec);
  }
  // Spot checks pinned to the named groups.
  for (int n : {3, 4, 5}) {
    auto Q = quaternion_group_n(n);
    auto t = CharacterTable::of(Q);
    for (int i = 0; i < t->num_classes(); ++i)
      expect(schur_index_Q(Q, i) == (is_faithful(t->row(i)) ? 2 : 1),
             "schur quaternion");
  }
  for (const char* spec : {"C9", "C27", "C3xC3"}) {
    auto P = construct_named(spec);
    const RingLattice& rbar =
        ring_lattice(P, {FieldTag::rational_valued, 0});
    const RingLattice& rq = ring_lattice(P, {FieldTag::rational_pgroup, 3});
    expect(quotient_invariants(rbar.lattice, rq.lattice).is_trivial(),
           std::string("trivial quotient ") + spec);
  }
  return failures == before;
}

// ---- criterion 3: cokernel structure ---------------------------------

bool criterion3() {
  int before = failures;
  struct Want {
    const char* spec;
    std::size_t dim;
  };
  for (const Want& w :
       {Want{"Q8", 1}, Want{"Q16", 1}, Want{"D16", 0}, Want{"SD16", 0},
        Want{"C2xC2", 0}, Want{"C2xC2xC2", 0}, Want{"C2xC2xC2xC2", 0},
        Want{"C3xQ8", 3}, Want{"C5xQ8", 5}, Want{"C3xQ16", 3}}) {
    CokernelStructure ck = cokernel(construct_named(w.spec), 2);
    expect(ck.f2_dim == w.dim, std::string("cokernel dim ") + w.spec);
  }
  std::vector<std::string> sweep = catalog::two_groups_32();
  for (const auto& s : catalog::odd_groups()) sweep.push_back(s);
  for (const auto& s : catalog::listed_products()) sweep.push_back(s);
  sweep.push_back(catalog::kS3);
  sweep.push_back(catalog::kA4);
  sweep.push_back(catalog::kSL23);
  for (const std::string& spec : sweep) {
    CokernelStructure ck = cokernel(construct_named(spec), 2);
    bool ok = ck.quo.free_rank == 0;
    for (const Int& f : ck.quo.factors) ok = ok && (f == 1 || f == 2);
    expect(ok, "cokernel factors " + spec);
  }
  return failures == before;
}

// ---- criterion 4: detection equals membership ------------------------

bool criterion4() {
  int before = failures;
  for (const std::string& spec : catalog::test_groups_48()) {
    auto G = construct_named(spec);
    auto orbits = galois_orbits(CharacterTable::of(G), 2);
    std::vector<VirtualCharacter> sweep;
    for (const auto& o : orbits) sweep.push_back(o.class_sum);
    for (std::size_t a = 0; a < orbits.size(); ++a)
      for (std::size_t b = a; b < orbits.size(); ++b)
        sweep.push_back(orbits[a].class_sum + orbits[b].class_sum);
    for (const auto& chi : sweep) {
      DetectResult d = detect(chi, 2);
      expect(d.cross_check_ok && d.in_image == member_im_kappa(chi, 2),
             "detection " + spec);
      if (failures > before) return false;  // stop flooding
    }
  }
  return failures == before;
}

// ---- criterion 5: subfunctor chain -----------------------------------

bool criterion5() {
  int before = failures;
  for (int m = 3; m <= 5; ++m) {
    auto Q = quaternion_group_n(m);
    for (int n = 3; n <= 5; ++n) {
      bool nonzero = F_n_eval(Q, n, FnMode::sections).dim() != 0;
      expect(nonzero == (m >= n), "F_n(Q_2^m) vanishing");
    }
  }
  // F_3 equals the full cokernel wherever the cokernel is nonzero.
  for (const std::string& spec : catalog::test_groups_48()) {
    auto G = construct_named(spec);
    CokernelStructure ck = cokernel(G, 2);
    if (ck.quo.is_trivial()) continue;
    expect(F_n_eval(G, 3, FnMode::sections).dim() == ck.f2_dim.value_or(0),
           "F_3 full " + spec);
  }
  // Exact and sections modes agree where exact runs.
  for (const char* spec : {"C1", "C2", "C4", "C8", "Q8", "D8", "C2xC4",
                           "C2xC2", "Q16", "D16", "SD16", "C2xQ8", "C12",
                           "C6", "C3xC3"}) {
    auto G = construct_named(spec);
    for (int n : {3, 4}) {
      if (G->order() * (1 << n) > 256) continue;
      expect(F_n_eval(G, n, FnMode::exact) ==
                 F_n_eval(G, n, FnMode::sections),
             std::string("mode agreement ") + spec);
    }
  }
  {
    auto G = construct_named("C3xQ8");
    expect(F_n_eval(G, 3, FnMode::exact) == F_n_eval(G, 3, FnMode::sections),
           "mode agreement C3xQ8");
  }
  return failures == before;
}

// ---- criterion 6: rationality ----------------------------------------

bool criterion6() {
  int before = failures;
  for (const std::string& spec : catalog::two_groups_32()) {
    auto P = construct_named(spec);
    expect(genetic_basis(P, 2).records.size() ==
               galois_orbits(CharacterTable::of(P), 0).size(),
           "genetic cardinality " + spec);
    for (Functor f : {Functor::RQ, Functor::RQbar, Functor::CokerQ}) {
      RationalityReport rep = verify_rational(P, f);
      expect(rep.pass, "rationality " + spec + ": " + rep.detail);
    }
  }
  return failures == before;
}

// ---- criterion 7: span identities ------------------------------------

bool criterion7() {
  int before = failures;
  for (const std::string& spec : catalog::test_groups_48())
    expect(witt_berman_span_check(construct_named(spec), 2),
           "witt-berman " + spec);
  for (const char* spec :
       {"Q8", "C12", "C3xQ8", "C5xQ8", catalog::kS3, catalog::kA4,
        catalog::kS4, catalog::kSL23}) {
    SolomonDressCertificate c =
        solomon_dress_identity_check(construct_named(spec), 2);
    expect(c.pass && !c.coefficients.empty(),
           std::string("solomon-dress ") + spec);
  }
  for (const char* spec : {"Q8", "Q16", "D16", "C12", "C3xQ8", catalog::kS3,
                           catalog::kSL23})
    expect(subring_check(construct_named(spec), 2),
           std::string("subring ") + spec);
  return failures == before;
}

// ---- criterion 8: fibered calibration --------------------------------

int calibrations = 0;

ClassFunction random_cf(std::mt19937& rng, const GroupPtr& G, bool genuine) {
  TablePtr t = CharacterTable::of(G);
  std::uniform_int_distribution<int> d(genuine ? 0 : -2, 2);
  VirtualCharacter v{G, std::vector<Int>(t->num_classes())};
  for (auto& c : v.coeffs) c = d(rng);
  return t->to_class_function(v);
}

ClassFunction trivial_fiber(const ProductGroup& prod, const Subgroup& U) {
  return CharacterTable::of(subgroup_model(prod.grp, U).grp)
      ->trivial_character();
}

bool criterion8() {
  int before = failures;
  std::mt19937 rng(424242);
  std::vector<std::string> groups = {"C4",   "C6",  "Q8",    "D8",   "C12",
                                     "Q16",  "D16", "C2xC4", "C3xC3"};
  groups.push_back(catalog::kS3);
  for (const std::string& spec : groups) {
    auto G = construct_named(spec);
    for (const Subgroup& S : subgroup_class_reps(G)) {
      SubgroupModel m = subgroup_model(G, S);
      std::vector<int> f(m.grp->order());
      for (int h = 0; h < m.grp->order(); ++h) f[h] = m.to_parent[h];
      {  // induction
        ProductGroup prod = direct_product(G, m.grp);
        Subgroup U = graph_subgroup(prod, f);
        FiberedBasisElement e =
            make_fibered(G, m.grp, U, trivial_fiber(prod, U), 2);
        ClassFunction chi = random_cf(rng, m.grp, false);
        auto want = CharacterTable::of(G)->to_virtual(induce(G, S, chi));
        expect(want && act_fibered(e, chi) == *want, "calibrate ind " + spec);
        ++calibrations;
      }
      {  // restriction
        ProductGroup prod = direct_product(m.grp, G);
        Subgroup U = graph_subgroup_left(prod, f);
        FiberedBasisElement e =
            make_fibered(m.grp, G, U, trivial_fiber(prod, U), 2);
        ClassFunction chi = random_cf(rng, G, false);
        auto want =
            CharacterTable::of(m.grp)->to_virtual(restrict_to(G, S, chi));
        expect(want && act_fibered(e, chi) == *want, "calibrate res " + spec);
        ++calibrations;
      }
    }
    for (const Subgroup& N : normal_subgroups(G)) {
      QuotientModel qm = quotient(G, N);
      {  // inflation
        ProductGroup prod = direct_product(G, qm.quo);
        Subgroup U = graph_subgroup_left(prod, qm.proj);
        FiberedBasisElement e =
            make_fibered(G, qm.quo, U, trivial_fiber(prod, U), 2);
        ClassFunction chi = random_cf(rng, qm.quo, false);
        auto want = CharacterTable::of(G)->to_virtual(inflate(qm, chi));
        expect(want && act_fibered(e, chi) == *want, "calibrate inf " + spec);
        ++calibrations;
      }
      {  // deflation (genuine characters keep the average integral often)
        ProductGroup prod = direct_product(qm.quo, G);
        Subgroup U = graph_subgroup(prod, qm.proj);
        FiberedBasisElement e =
            make_fibered(qm.quo, G, U, trivial_fiber(prod, U), 2);
        ClassFunction chi = random_cf(rng, G, true);
        auto want =
            CharacterTable::of(qm.quo)->to_virtual(deflate(qm, chi));
        if (want) {
          expect(act_fibered(e, chi) == *want, "calibrate def " + spec);
          ++calibrations;
        }
      }
    }
    {  // isomorphism transport (an automorphism suffices)
      auto iso = find_isomorphism(G, G);
      ProductGroup prod = direct_product(G, G);
      Subgroup U = graph_subgroup(prod, iso->map);
      FiberedBasisElement e = make_fibered(G, G, U, trivial_fiber(prod, U), 2);
      ClassFunction chi = random_cf(rng, G, false);
      auto want =
          CharacterTable::of(G)->to_virtual(iso_transport(*iso, chi));
      expect(want && act_fibered(e, chi) == *want, "calibrate iso " + spec);
      ++calibrations;
    }
    for (const ClassFunction& lam : linear_characters_into_mu_podd(G, 2)) {
      // multiplication by a linear p'-character via the diagonal
      ProductGroup prod = direct_product(G, G);
      std::vector<int> id(G->order());
      for (int x = 0; x < G->order(); ++x) id[x] = x;
      Subgroup U = graph_subgroup(prod, id);
      SubgroupModel um = subgroup_model(prod.grp, U);
      ClassFunction phi{um.grp, {}};
      phi.values.resize(um.grp->num_classes());
      for (int c = 0; c < um.grp->num_classes(); ++c)
        phi.values[c] =
            lam.at_elem(prod.left_of[um.to_parent[um.grp->cls(c).rep]]);
      FiberedBasisElement e = make_fibered(G, G, U, phi, 2);
      ClassFunction chi = random_cf(rng, G, false);
      auto want =
          CharacterTable::of(G)->to_virtual(mult_linear(lam, chi));
      expect(want && act_fibered(e, chi) == *want, "calibrate mult " + spec);
      ++calibrations;
    }
  }
  expect(calibrations >= 100, "calibration count");
  return failures == before;
}

// ---- criterion 9: table integrity ------------------------------------

bool criterion9() {
  int before = failures;
  std::vector<std::string> sweep = catalog::two_groups_64();
  for (const auto& s : catalog::odd_groups()) sweep.push_back(s);
  for (const auto& s : catalog::listed_products()) sweep.push_back(s);
  sweep.push_back(catalog::kS3);
  sweep.push_back(catalog::kA4);
  sweep.push_back(catalog::kS4);
  sweep.push_back(catalog::kSL23);
  for (const std::string& spec : sweep) {
    auto G = construct_named(spec);
    TablePtr t = CharacterTable::of(G);
    expect(verify_orthogonality(*t), "orthogonality " + spec);
    Int sum = 0;
    for (int i = 0; i < t->num_classes(); ++i)
      sum += t->degree(i) * t->degree(i);
    expect(sum == G->order(), "degree sum " + spec);
  }
  return failures == before;
}

void report(int idx, const char* what, bool ok) {
  std::printf("criterion %d (%s): %s\n", idx, what, ok ? "PASS" : "FAIL");
  std::fflush(stdout);
}

}  // namespace

int main() {
  report(1, "quaternion induction identities", criterion1());
  report(2, "Schur indices", criterion2());
  report(3, "cokernel structure", criterion3());
  report(4, "detection equals membership", criterion4());
  report(5, "subfunctor chain", criterion5());
  report(6, "rationality of the genetic decomposition", criterion6());
  report(7, "span identities", criterion7());
  report(8, "fibered action calibration", criterion8());
  report(9, "character table integrity", criterion9());
  std::printf("checks: %d, failures: %d\n", checks, failures);
  for (const auto& n : notes) std::printf("  failed: %s\n", n.c_str());
  return failures == 0 ? 0 : 1;
}
