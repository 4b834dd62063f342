#include "bfk/cyclotomic.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace bfk {

int euler_phi(int n) {
  int result = n;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

namespace {

// Exact division of integer polynomials (low degree first); remainder
// must vanish.
std::vector<Int> poly_div_exact(std::vector<Int> num,
                                const std::vector<Int>& den) {
  std::vector<Int> q(num.size() - den.size() + 1);
  for (std::size_t i = q.size(); i-- > 0;) {
    Int lead = num[i + den.size() - 1];
    if (lead % den.back() != 0)
      throw std::logic_error("poly_div_exact: not divisible");
    Int f = lead / den.back();
    q[i] = f;
    for (std::size_t j = 0; j < den.size(); ++j) num[i + j] -= f * den[j];
  }
  for (const Int& x : num)
    if (x != 0) throw std::logic_error("poly_div_exact: nonzero remainder");
  return q;
}

struct ConductorData {
  int n;
  int degree;
  std::vector<Int> phi;                   // Phi_n, monic
  std::vector<std::vector<Rat>> powers;   // x^m mod Phi_n, m in [0, n)
};

const ConductorData& conductor_data(int n) {
  static std::map<int, ConductorData> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  ConductorData d;
  d.n = n;
  d.phi = cyclotomic_polynomial(n);
  d.degree = static_cast<int>(d.phi.size()) - 1;
  d.powers.assign(n, std::vector<Rat>(d.degree));
  // x^m mod Phi_n by repeated multiplication by x.
  std::vector<Rat> cur(d.degree);
  if (d.degree > 0) cur[0] = 1;
  for (int m = 0; m < n; ++m) {
    d.powers[m] = cur;
    // multiply by x
    Rat top = d.degree > 0 ? cur[d.degree - 1] : Rat(0);
    for (int i = d.degree - 1; i > 0; --i) cur[i] = cur[i - 1];
    if (d.degree > 0) cur[0] = 0;
    if (top != 0) {
      // x^degree = -(phi[0] + ... + phi[degree-1] x^{degree-1})
      for (int i = 0; i < d.degree; ++i) cur[i] -= top * Rat(d.phi[i]);
    }
  }
  auto [pos, ok] = cache.emplace(n, std::move(d));
  return pos->second;
}

}  // namespace

std::vector<Int> cyclotomic_polynomial(int n) {
  if (n < 1) throw std::invalid_argument("cyclotomic_polynomial: n >= 1");
  // (x^n - 1) / prod_{d | n, d < n} Phi_d
  std::vector<Int> num(n + 1);
  num[0] = -1;
  num[n] = 1;
  for (int d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    num = poly_div_exact(std::move(num), cyclotomic_polynomial(d));
  }
  return num;
}

Cyclo Cyclo::zero(int n) {
  Cyclo z;
  z.conductor_ = n;
  z.c_.assign(std::max(1, conductor_data(n).degree), Rat(0));
  return z;
}

Cyclo Cyclo::root_of_unity(int n, long k) {
  const ConductorData& d = conductor_data(n);
  long m = ((k % n) + n) % n;
  Cyclo z = zero(n);
  if (d.degree == 0) {  // n = 1
    z.c_[0] = 1;
    return z;
  }
  z.c_ = d.powers[m];
  return z;
}

bool Cyclo::is_zero() const {
  for (const Rat& x : c_)
    if (x != 0) return false;
  return true;
}

std::optional<Rat> Cyclo::as_rational() const {
  for (std::size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return std::nullopt;
  return c_[0];
}

Cyclo Cyclo::embed(int m) const {
  if (m == conductor_) return *this;
  if (m % conductor_ != 0)
    throw std::invalid_argument("Cyclo::embed: conductor must divide target");
  const ConductorData& d = conductor_data(m);
  int step = m / conductor_;
  Cyclo out = zero(m);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    const std::vector<Rat>& row = d.powers[(i * step) % m];
    for (int j = 0; j < d.degree; ++j) out.c_[j] += c_[i] * row[j];
  }
  if (d.degree == 0) out.c_[0] = c_[0];
  return out;
}

namespace {
int lcm_int(int a, int b) { return a / std::gcd(a, b) * b; }
}  // namespace

Cyclo operator+(const Cyclo& a, const Cyclo& b) {
  int m = lcm_int(a.conductor_, b.conductor_);
  Cyclo x = a.embed(m), y = b.embed(m);
  for (std::size_t i = 0; i < x.c_.size(); ++i) x.c_[i] += y.c_[i];
  return x;
}

Cyclo operator-(const Cyclo& a, const Cyclo& b) { return a + (-b); }

Cyclo Cyclo::operator-() const {
  Cyclo x = *this;
  for (Rat& v : x.c_) v = -v;
  return x;
}

Cyclo operator*(const Cyclo& a, const Cyclo& b) {
  int m = lcm_int(a.conductor_, b.conductor_);
  Cyclo x = a.embed(m), y = b.embed(m);
  const ConductorData& d = conductor_data(m);
  if (d.degree == 0) {
    Cyclo out = Cyclo::zero(m);
    out.c_[0] = x.c_[0] * y.c_[0];
    return out;
  }
  // Accumulate monomial products with exponent folded mod m (zeta^m = 1),
  // then push each monomial through the reduction table.
  std::vector<Rat> acc(m);
  for (std::size_t i = 0; i < x.c_.size(); ++i) {
    if (x.c_[i] == 0) continue;
    for (std::size_t j = 0; j < y.c_.size(); ++j) {
      if (y.c_[j] == 0) continue;
      acc[(i + j) % m] += x.c_[i] * y.c_[j];
    }
  }
  Cyclo out = Cyclo::zero(m);
  for (int e = 0; e < m; ++e) {
    if (acc[e] == 0) continue;
    if (e < d.degree) {
      out.c_[e] += acc[e];
      continue;
    }
    const std::vector<Rat>& row = d.powers[e];
    for (int j = 0; j < d.degree; ++j)
      if (row[j] != 0) out.c_[j] += acc[e] * row[j];
  }
  return out;
}

Cyclo Cyclo::galois(long k) const {
  long kk = ((k % conductor_) + conductor_) % conductor_;
  if (std::gcd(static_cast<long>(conductor_), kk) != 1)
    throw std::invalid_argument("Cyclo::galois: exponent not a unit");
  const ConductorData& d = conductor_data(conductor_);
  Cyclo out = zero(conductor_);
  if (d.degree == 0) {
    out.c_[0] = c_[0];
    return out;
  }
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    const std::vector<Rat>& row = d.powers[(i * kk) % conductor_];
    for (int j = 0; j < d.degree; ++j) out.c_[j] += c_[i] * row[j];
  }
  return out;
}

Cyclo Cyclo::conj() const {
  if (conductor_ <= 2) return *this;
  return galois(conductor_ - 1);
}

Cyclo Cyclo::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  Cyclo r(Rat(1));
  Cyclo base = *this;
  while (e > 0) {
    if (e & 1) r = r * base;
    base = base * base;
    e >>= 1;
  }
  return r.embed(lcm_int(r.conductor_, conductor_));
}

Cyclo Cyclo::inverse() const {
  if (is_zero()) throw std::domain_error("Cyclo::inverse: division by zero");
  const ConductorData& d = conductor_data(conductor_);
  if (d.degree <= 1) {
    Cyclo out = *this;
    out.c_[0] = Rat(1) / c_[0];
    for (std::size_t i = 1; i < out.c_.size(); ++i) out.c_[i] = 0;
    return out;
  }
  // Extended Euclid in Q[x] against Phi_n (irreducible over Q).
  using Poly = std::vector<Rat>;
  auto deg = [](const Poly& p) {
    int i = static_cast<int>(p.size()) - 1;
    while (i >= 0 && p[i] == 0) --i;
    return i;
  };
  // Invariants: a = s0 * this (mod Phi), b = s1 * this (mod Phi).
  Poly a(d.phi.size());
  for (std::size_t i = 0; i < d.phi.size(); ++i) a[i] = Rat(d.phi[i]);
  Poly b(c_.begin(), c_.end());
  Poly s0(1, Rat(0)), s1(1, Rat(1));
  while (deg(b) > 0) {
    // full polynomial division: a -> remainder of a by b
    int db = deg(b);
    while (deg(a) >= db) {
      int da = deg(a);
      Rat f = a[da] / b[db];
      int shift = da - db;
      for (int i = 0; i <= db; ++i) a[shift + i] -= f * b[i];
      if (s0.size() < s1.size() + shift) s0.resize(s1.size() + shift);
      for (std::size_t i = 0; i < s1.size(); ++i) s0[shift + i] -= f * s1[i];
    }
    std::swap(a, b);
    std::swap(s0, s1);
  }
  // Phi_n is irreducible over Q, so the gcd is a nonzero constant and
  // s1 * this = b (mod Phi).
  int db = deg(b);
  if (db != 0) throw std::logic_error("Cyclo::inverse: unexpected gcd");
  Cyclo out = zero(conductor_);
  for (std::size_t i = 0; i < s1.size() && i < out.c_.size(); ++i)
    out.c_[i] = s1[i] / b[0];
  // s1 may have degree >= phi-degree in principle; fold if necessary.
  for (std::size_t i = out.c_.size(); i < s1.size(); ++i) {
    if (s1[i] == 0) continue;
    const std::vector<Rat>& row = d.powers[i % conductor_];
    for (int j = 0; j < d.degree; ++j) out.c_[j] += (s1[i] / b[0]) * row[j];
  }
  return out;
}

bool operator==(const Cyclo& a, const Cyclo& b) {
  int m = lcm_int(a.conductor_, b.conductor_);
  Cyclo x = a.embed(m), y = b.embed(m);
  return x.c_ == y.c_;
}

int Cyclo::compare(const Cyclo& a, const Cyclo& b) {
  int m = lcm_int(a.conductor_, b.conductor_);
  Cyclo x = a.embed(m), y = b.embed(m);
  for (std::size_t i = 0; i < x.c_.size(); ++i) {
    int c = cmp(x.c_[i], y.c_[i]);
    if (c != 0) return c;
  }
  return 0;
}

std::string Cyclo::to_string() const {
  std::ostringstream os;
  if (auto q = as_rational()) {
    os << *q;
    return os.str();
  }
  bool first = true;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    if (!first) os << " + ";
    first = false;
    os << c_[i];
    if (i == 1)
      os << "*z" << conductor_;
    else if (i > 1)
      os << "*z" << conductor_ << "^" << i;
  }
  return os.str();
}

std::vector<long> fixing_exponents(int n, int p) {
  std::vector<long> ks;
  int podd = n;  // p'-part of n
  if (p > 1) {
    while (podd % p == 0) podd /= p;
  }
  for (long k = 1; k <= n; ++k) {
    if (std::gcd(k, static_cast<long>(n)) != 1) continue;
    if (p > 1 && k % podd != 1 % podd) continue;
    ks.push_back(k % n == 0 ? n : k % n);
  }
  // normalize representatives into [1, n]
  return ks;
}

}  // namespace bfk
