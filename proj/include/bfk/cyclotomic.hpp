#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bfk/zlinalg.hpp"

namespace bfk {

/// Integer coefficients of the n-th cyclotomic polynomial, low degree
/// first, monic.
std::vector<Int> cyclotomic_polynomial(int n);

/// Exact element of Q(zeta_n) written in the power basis
/// 1, zeta, ..., zeta^{phi(n)-1} modulo Phi_n. Values keep the conductor
/// they were constructed with; mixed-conductor arithmetic embeds both
/// sides into the lcm.
class Cyclo {
 public:
  Cyclo() : conductor_(1), c_(1) {}
  explicit Cyclo(const Rat& r) : conductor_(1), c_{r} {}
  explicit Cyclo(long v) : conductor_(1), c_{Rat(v)} {}
  explicit Cyclo(const Int& v) : conductor_(1), c_{Rat(v)} {}

  /// zeta_n^k
  static Cyclo root_of_unity(int n, long k = 1);
  static Cyclo zero(int n);

  int conductor() const { return conductor_; }
  const std::vector<Rat>& coeffs() const { return c_; }

  bool is_zero() const;
  /// The rational value if this element lies in Q, else nullopt.
  std::optional<Rat> as_rational() const;

  /// Image under the automorphism zeta_n -> zeta_n^k, gcd(k, n) = 1.
  Cyclo galois(long k) const;
  Cyclo conj() const;  // complex conjugation, zeta -> zeta^{-1}
  Cyclo pow(long e) const;

  /// Rewrites the element over a conductor m with conductor() | m.
  Cyclo embed(int m) const;

  friend Cyclo operator+(const Cyclo& a, const Cyclo& b);
  friend Cyclo operator-(const Cyclo& a, const Cyclo& b);
  friend Cyclo operator*(const Cyclo& a, const Cyclo& b);
  Cyclo operator-() const;
  Cyclo inverse() const;  // throws on zero
  Cyclo& operator+=(const Cyclo& b) { return *this = *this + b; }
  Cyclo& operator*=(const Cyclo& b) { return *this = *this * b; }

  friend bool operator==(const Cyclo& a, const Cyclo& b);

  /// Total order used for canonical row sorting: compares conductors of
  /// the unified representation coefficientwise.
  static int compare(const Cyclo& a, const Cyclo& b);

  std::string to_string() const;

 private:
  int conductor_;
  std::vector<Rat> c_;  // length phi(conductor_)
};

int euler_phi(int n);

/// Exponents k (mod n), gcd(k,n)=1, of the automorphisms of Q(zeta_n)
/// fixing Q(mu_{p'}) \cap Q(zeta_n) pointwise: k = 1 mod the p'-part of
/// n. p = 0 means base field Q (all units).
std::vector<long> fixing_exponents(int n, int p);

}  // namespace bfk
