#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "bfk/cyclotomic.hpp"

using namespace bfk;

namespace {

Cyclo random_elt(std::mt19937& rng, int n) {
  std::uniform_int_distribution<int> coef(-3, 3);
  std::uniform_int_distribution<int> exp(0, n - 1);
  Cyclo acc = Cyclo(Rat(coef(rng)));
  for (int t = 0; t < 3; ++t)
    acc += Cyclo(Rat(coef(rng))) * Cyclo::root_of_unity(n, exp(rng));
  return acc;
}

}  // namespace

TEST_CASE("cyclotomic polynomial oracle: product over divisors is x^n - 1") {
  for (int n : {1, 2, 3, 4, 6, 8, 12, 15, 24}) {
    // Multiply Phi_d over all d | n and compare with x^n - 1.
    std::vector<Int> prod{1};
    for (int d = 1; d <= n; ++d) {
      if (n % d) continue;
      std::vector<Int> phi = cyclotomic_polynomial(d);
      std::vector<Int> next(prod.size() + phi.size() - 1, 0);
      for (std::size_t i = 0; i < prod.size(); ++i)
        for (std::size_t j = 0; j < phi.size(); ++j)
          next[i + j] += prod[i] * phi[j];
      prod = next;
    }
    std::vector<Int> expect(n + 1, 0);
    expect[0] = -1;
    expect[n] = 1;
    CHECK(prod == expect);
  }
}

TEST_CASE("roots of unity satisfy their defining relations") {
  for (int n : {2, 3, 4, 5, 6, 8, 12, 20}) {
    Cyclo z = Cyclo::root_of_unity(n);
    CHECK(z.pow(n) == Cyclo(1L));
    if (n > 1) CHECK(!(z == Cyclo(1L)));
    // Sum of all n-th roots of unity is zero (n > 1).
    if (n > 1) {
      Cyclo s = Cyclo::zero(n);
      for (int k = 0; k < n; ++k) s += Cyclo::root_of_unity(n, k);
      CHECK(s.is_zero());
    }
  }
  CHECK(Cyclo::root_of_unity(4).pow(2) == Cyclo(-1L));
}

TEST_CASE("ring axioms on random elements, mixed conductors") {
  std::mt19937 rng(42);
  for (int trial = 0; trial < 25; ++trial) {
    Cyclo a = random_elt(rng, 12), b = random_elt(rng, 8),
          c = random_elt(rng, 6);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a - a).is_zero());
  }
}

TEST_CASE("inverse and conjugation") {
  std::mt19937 rng(1);
  int nonzero = 0;
  while (nonzero < 20) {
    Cyclo a = random_elt(rng, 12);
    if (a.is_zero()) continue;
    ++nonzero;
    CHECK(a * a.inverse() == Cyclo(1L));
    CHECK(a.conj().conj() == a);
    // Norm a * conj(a) of a root of unity is 1.
  }
  Cyclo z = Cyclo::root_of_unity(8, 3);
  CHECK(z * z.conj() == Cyclo(1L));
  CHECK(z.conj() == z.galois(-1));
  CHECK_THROWS(Cyclo::zero(4).inverse());
}

TEST_CASE("galois action is multiplicative and permutes roots") {
  Cyclo z = Cyclo::root_of_unity(12);
  for (long k : {1L, 5L, 7L, 11L}) {
    CHECK(z.galois(k) == Cyclo::root_of_unity(12, k));
    for (long l : {1L, 5L, 7L, 11L})
      CHECK(z.galois(k).galois(l) == z.galois(k * l % 12));
  }
  // Rationals are fixed.
  Cyclo r(Rat(7, 3));
  CHECK(r.galois(5) == r);
}

TEST_CASE("as_rational detects rational values") {
  CHECK(Cyclo(Rat(3, 2)).as_rational() == Rat(3, 2));
  CHECK(!Cyclo::root_of_unity(3).as_rational().has_value());
  // zeta_3 + zeta_3^2 = -1.
  Cyclo s = Cyclo::root_of_unity(3) + Cyclo::root_of_unity(3, 2);
  CHECK(s.as_rational() == Rat(-1));
  // zeta_8 + zeta_8^-1 = sqrt(2) is irrational.
  Cyclo t = Cyclo::root_of_unity(8) + Cyclo::root_of_unity(8, 7);
  CHECK(!t.as_rational().has_value());
}

TEST_CASE("compare is a total order") {
  std::mt19937 rng(5);
  std::vector<Cyclo> xs;
  for (int i = 0; i < 12; ++i) xs.push_back(random_elt(rng, 12));
  for (const auto& a : xs)
    for (const auto& b : xs) {
      int ab = Cyclo::compare(a, b), ba = Cyclo::compare(b, a);
      CHECK(ab == -ba);
      CHECK((ab == 0) == (a == b));
      for (const auto& c : xs) {
        if (ab < 0 && Cyclo::compare(b, c) < 0) CHECK(Cyclo::compare(a, c) < 0);
      }
    }
}

TEST_CASE("euler phi agrees with a gcd-counting oracle") {
  for (int n = 1; n <= 40; ++n) {
    int count = 0;
    for (int k = 1; k <= n; ++k)
      if (std::gcd(k, n) == 1) ++count;
    CHECK(euler_phi(n) == count);
  }
}

TEST_CASE("fixing exponents: k = 1 mod the p'-part of n") {
  CHECK(fixing_exponents(12, 2) == std::vector<long>{1, 7});
  CHECK(fixing_exponents(12, 3) == std::vector<long>{1, 5});
  // p = 0 means base field Q: every unit.
  CHECK(fixing_exponents(8, 0) == std::vector<long>{1, 3, 5, 7});
  CHECK(fixing_exponents(5, 2) == std::vector<long>{1});
  // 2-power conductor, p = 2: the p'-part is 1, all units fix K.
  CHECK(fixing_exponents(8, 2) == std::vector<long>{1, 3, 5, 7});
  // Semantics oracle: each listed automorphism fixes zeta_{n_{p'}}.
  for (int n : {12, 15, 24, 20}) {
    int np = n;
    while (np % 2 == 0) np /= 2;  // p = 2: odd part
    Cyclo z = Cyclo::root_of_unity(np);
    std::vector<long> ks = fixing_exponents(n, 2);
    for (long k = 1; k <= n; ++k) {
      if (std::gcd(k, static_cast<long>(n)) != 1) continue;
      bool listed = std::find(ks.begin(), ks.end(), k) != ks.end();
      Cyclo zk = Cyclo::root_of_unity(n, (static_cast<long>(n) / np) * k);
      CHECK(listed == (zk == z));
    }
  }
}
