#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "bfk/biset_ops.hpp"
#include "catalog.hpp"

using namespace bfk;

namespace {

ClassFunction random_virtual_cf(std::mt19937& rng, const GroupPtr& G) {
  TablePtr t = CharacterTable::of(G);
  std::uniform_int_distribution<int> d(-2, 2);
  VirtualCharacter v{G, std::vector<Int>(t->num_classes())};
  for (auto& c : v.coeffs) c = d(rng);
  return t->to_class_function(v);
}

// phi on the U-model pulled back from a linear character of G through
// the projection prod -> G (left factor).
ClassFunction pullback_left(const ProductGroup& prod, const Subgroup& U,
                            const ClassFunction& lam) {
  SubgroupModel um = subgroup_model(prod.grp, U);
  ClassFunction phi{um.grp, {}};
  phi.values.resize(um.grp->num_classes());
  for (int c = 0; c < um.grp->num_classes(); ++c) {
    int u = um.grp->cls(c).rep;
    int pe = um.to_parent[u];
    phi.values[c] = lam.at_elem(prod.left_of[pe]);
  }
  return phi;
}

}  // namespace

TEST_CASE("frobenius reciprocity (oracle for induce/restrict)") {
  std::mt19937 rng(11);
  for (const char* spec : {"Q16", "C3xQ8", catalog::kS4}) {
    auto G = construct_named(spec);
    for (const Subgroup& S : subgroup_class_reps(G)) {
      if (S.order() == 1 || S.order() == G->order()) continue;
      SubgroupModel m = subgroup_model(G, S);
      ClassFunction chi = random_virtual_cf(rng, m.grp);
      ClassFunction psi = random_virtual_cf(rng, G);
      CHECK(inner_product(induce(G, S, chi), psi) ==
            inner_product(chi, restrict_to(G, S, psi)));
    }
  }
}

TEST_CASE("induction degree and explicit small case") {
  auto S3 = construct_named(catalog::kS3);
  Subgroup A3;
  for (const Subgroup& S : subgroup_class_reps(S3))
    if (S.order() == 3) A3 = S;
  REQUIRE(A3.order() == 3);
  SubgroupModel m = subgroup_model(S3, A3);
  TablePtr t3 = CharacterTable::of(m.grp);
  // Inducing a nontrivial linear character of A3 gives the 2-dimensional
  // irreducible of S3.
  for (int i = 0; i < 3; ++i) {
    ClassFunction ind = induce(S3, A3, t3->row(i));
    CHECK(ind.values[0].as_rational() == Rat(2));
    if (!(t3->row(i) == t3->trivial_character())) {
      auto v = CharacterTable::of(S3)->to_virtual(ind);
      REQUIRE(v.has_value());
      CHECK(v->coeffs == std::vector<Int>{0, 0, 1});
    }
  }
}

TEST_CASE("inflate/deflate adjointness and composition") {
  std::mt19937 rng(23);
  for (const char* spec : {"Q16", "C2xQ8", "D16"}) {
    auto G = construct_named(spec);
    for (const Subgroup& N : normal_subgroups(G)) {
      if (N.order() == 1 || N.order() == G->order()) continue;
      QuotientModel qm = quotient(G, N);
      ClassFunction a = random_virtual_cf(rng, qm.quo);
      ClassFunction b = random_virtual_cf(rng, G);
      CHECK(inner_product(inflate(qm, a), b) ==
            inner_product(a, deflate(qm, b)));
      // Def after Inf is the identity.
      CHECK(deflate(qm, inflate(qm, a)) == a);
    }
  }
}

TEST_CASE("iso transport preserves inner products") {
  auto Q8a = construct_named("Q8");
  auto Q8b = construct_named("perm:[(1,2,3,4)(5,6,7,8);(1,5,3,7)(2,8,4,6)]");
  auto iso = find_isomorphism(Q8a, Q8b);
  REQUIRE(iso.has_value());
  std::mt19937 rng(3);
  for (int trial = 0; trial < 5; ++trial) {
    ClassFunction a = random_virtual_cf(rng, Q8a);
    ClassFunction b = random_virtual_cf(rng, Q8a);
    CHECK(inner_product(iso_transport(*iso, a), iso_transport(*iso, b)) ==
          inner_product(a, b));
  }
}

TEST_CASE("mult_linear twists and indinf/defres compose the parts") {
  auto G = construct_named("C3xQ8");
  TablePtr t = CharacterTable::of(G);
  auto lams = linear_characters_into_mu_podd(G, 2);
  CHECK(lams.size() == 3);
  ClassFunction chi = t->row(t->num_classes() - 1);
  for (const ClassFunction& lam : lams) {
    ClassFunction tw = mult_linear(lam, chi);
    CHECK(tw.values[0] == chi.values[0]);  // degree preserved
    auto v = t->to_virtual(tw);
    CHECK(v.has_value());
  }
  CHECK_THROWS(mult_linear(chi, chi));  // not degree 1 at identity

  // indinf over the section (G, 1) is plain induction.
  auto Q16 = construct_named("Q16");
  Subgroup H;
  for (const Subgroup& S : subgroup_class_reps(Q16))
    if (S.order() == 8 && is_generalized_quaternion(subgroup_model(Q16, S).grp))
      H = S;
  REQUIRE(H.order() == 8);
  SectionModel S1 = section_model(Q16, H, trivial_subgroup());
  std::mt19937 rng(9);
  ClassFunction a = random_virtual_cf(rng, S1.HmodN.quo);
  // Transport through the quotient-by-1 bookkeeping.
  auto isoH = find_isomorphism(S1.HmodN.quo, subgroup_model(Q16, H).grp);
  REQUIRE(isoH.has_value());
  CHECK(indinf(Q16, S1, a) == induce(Q16, H, iso_transport(*isoH, a)));
  // defres is adjoint to indinf.
  ClassFunction b = random_virtual_cf(rng, Q16);
  CHECK(inner_product(indinf(Q16, S1, a), b) ==
        inner_product(a, defres(Q16, S1, b)));
}

// ---------------------------------------------------------------------
// Calibration: the fibered action reproduces each elementary operation.
// ---------------------------------------------------------------------

namespace {

int calibrations = 0;

void calibrate_induce(std::mt19937& rng, const GroupPtr& G, const Subgroup& S) {
  SubgroupModel m = subgroup_model(G, S);
  ProductGroup prod = direct_product(G, m.grp);
  std::vector<int> f(m.grp->order());
  for (int h = 0; h < m.grp->order(); ++h) f[h] = m.to_parent[h];
  Subgroup U = graph_subgroup(prod, f);
  ClassFunction phi =
      CharacterTable::of(subgroup_model(prod.grp, U).grp)->trivial_character();
  FiberedBasisElement e = make_fibered(G, m.grp, U, phi, 2);
  ClassFunction chi = random_virtual_cf(rng, m.grp);
  auto got = act_fibered(e, chi);
  auto want = CharacterTable::of(G)->to_virtual(induce(G, S, chi));
  REQUIRE(want.has_value());
  CHECK(got == *want);
  ++calibrations;
}

void calibrate_restrict(std::mt19937& rng, const GroupPtr& G,
                        const Subgroup& S) {
  SubgroupModel m = subgroup_model(G, S);
  ProductGroup prod = direct_product(m.grp, G);
  std::vector<int> f(m.grp->order());
  for (int h = 0; h < m.grp->order(); ++h) f[h] = m.to_parent[h];
  Subgroup U = graph_subgroup_left(prod, f);
  ClassFunction phi =
      CharacterTable::of(subgroup_model(prod.grp, U).grp)->trivial_character();
  FiberedBasisElement e = make_fibered(m.grp, G, U, phi, 2);
  ClassFunction chi = random_virtual_cf(rng, G);
  auto got = act_fibered(e, chi);
  auto want = CharacterTable::of(m.grp)->to_virtual(restrict_to(G, S, chi));
  REQUIRE(want.has_value());
  CHECK(got == *want);
  ++calibrations;
}

void calibrate_inflate(std::mt19937& rng, const GroupPtr& G,
                       const Subgroup& N) {
  QuotientModel qm = quotient(G, N);
  ProductGroup prod = direct_product(G, qm.quo);
  Subgroup U = graph_subgroup_left(prod, qm.proj);
  ClassFunction phi =
      CharacterTable::of(subgroup_model(prod.grp, U).grp)->trivial_character();
  FiberedBasisElement e = make_fibered(G, qm.quo, U, phi, 2);
  ClassFunction chi = random_virtual_cf(rng, qm.quo);
  auto got = act_fibered(e, chi);
  auto want = CharacterTable::of(G)->to_virtual(inflate(qm, chi));
  REQUIRE(want.has_value());
  CHECK(got == *want);
  ++calibrations;
}

void calibrate_deflate(std::mt19937& rng, const GroupPtr& G,
                       const Subgroup& N) {
  QuotientModel qm = quotient(G, N);
  ProductGroup prod = direct_product(qm.quo, G);
  Subgroup U = graph_subgroup(prod, qm.proj);
  ClassFunction phi =
      CharacterTable::of(subgroup_model(prod.grp, U).grp)->trivial_character();
  FiberedBasisElement e = make_fibered(qm.quo, G, U, phi, 2);
  // Deflation of a virtual character need not be virtual; use genuine
  // characters (nonnegative small coefficients).
  TablePtr t = CharacterTable::of(G);
  std::uniform_int_distribution<int> d(0, 1);
  VirtualCharacter v{G, std::vector<Int>(t->num_classes())};
  for (auto& c : v.coeffs) c = d(rng);
  ClassFunction chi = t->to_class_function(v);
  ClassFunction defl = deflate(qm, chi);
  auto want = CharacterTable::of(qm.quo)->to_virtual(defl);
  if (!want.has_value()) return;  // N-average fell outside the ring
  auto got = act_fibered(e, chi);
  CHECK(got == *want);
  ++calibrations;
}

void calibrate_iso(std::mt19937& rng, const GroupPtr& A, const GroupPtr& B) {
  auto iso = find_isomorphism(A, B);
  REQUIRE(iso.has_value());
  ProductGroup prod = direct_product(B, A);
  Subgroup U = graph_subgroup(prod, iso->map);
  ClassFunction phi =
      CharacterTable::of(subgroup_model(prod.grp, U).grp)->trivial_character();
  FiberedBasisElement e = make_fibered(B, A, U, phi, 2);
  ClassFunction chi = random_virtual_cf(rng, A);
  auto got = act_fibered(e, chi);
  auto want = CharacterTable::of(B)->to_virtual(iso_transport(*iso, chi));
  REQUIRE(want.has_value());
  CHECK(got == *want);
  ++calibrations;
}

void calibrate_mult(std::mt19937& rng, const GroupPtr& G,
                    const ClassFunction& lam) {
  ProductGroup prod = direct_product(G, G);
  std::vector<int> id(G->order());
  for (int x = 0; x < G->order(); ++x) id[x] = x;
  Subgroup U = graph_subgroup(prod, id);
  ClassFunction phi = pullback_left(prod, U, lam);
  FiberedBasisElement e = make_fibered(G, G, U, phi, 2);
  ClassFunction chi = random_virtual_cf(rng, G);
  auto got = act_fibered(e, chi);
  auto want = CharacterTable::of(G)->to_virtual(mult_linear(lam, chi));
  REQUIRE(want.has_value());
  CHECK(got == *want);
  ++calibrations;
}

}  // namespace

TEST_CASE("fibered action calibration across the catalog, 100+ instances") {
  std::mt19937 rng(20240817);
  std::vector<const char*> groups = {"C4",  "C6",   "Q8",   "D8",
                                     "C12", "Q16",  "D16",  "C2xC4",
                                     "C3xC3", catalog::kS3};
  for (const char* spec : groups) {
    auto G = construct_named(spec);
    for (const Subgroup& S : subgroup_class_reps(G)) {
      calibrate_induce(rng, G, S);
      calibrate_restrict(rng, G, S);
    }
    for (const Subgroup& N : normal_subgroups(G)) {
      calibrate_inflate(rng, G, N);
      calibrate_deflate(rng, G, N);
    }
    for (const ClassFunction& lam : linear_characters_into_mu_podd(G, 2))
      calibrate_mult(rng, G, lam);
  }
  calibrate_iso(rng, construct_named("Q8"),
                construct_named("perm:[(1,2,3,4)(5,6,7,8);(1,5,3,7)(2,8,4,6)]"));
  calibrate_iso(rng, construct_named("C6"), construct_named("C2xC3"));
  calibrate_iso(rng, construct_named("D16"), construct_named("D16"));
  calibrate_iso(rng, construct_named(catalog::kS3),
                construct_named("perm:[(4,5);(4,5,6)]"));
  CHECK(calibrations >= 100);
  MESSAGE("calibration instances: " << calibrations);
}

TEST_CASE("fibered elements reject bad fibers") {
  auto G = construct_named("Q8");
  ProductGroup prod = direct_product(G, G);
  std::vector<int> id(8);
  for (int x = 0; x < 8; ++x) id[x] = x;
  Subgroup U = graph_subgroup(prod, id);
  SubgroupModel um = subgroup_model(prod.grp, U);
  TablePtr tu = CharacterTable::of(um.grp);
  // A degree-2 fiber character is rejected.
  for (int i = 0; i < tu->num_classes(); ++i)
    if (tu->degree(i) == 2) CHECK_THROWS(make_fibered(G, G, U, tu->row(i), 2));
  // A linear character of even order is rejected for p = 2.
  for (int i = 0; i < tu->num_classes(); ++i) {
    if (tu->degree(i) != 1 || tu->row(i) == tu->trivial_character()) continue;
    CHECK_THROWS(make_fibered(G, G, U, tu->row(i), 2));
  }
}
