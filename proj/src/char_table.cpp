#include "bfk/char_table.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

namespace bfk {

namespace {

using u64 = unsigned long long;

long mod_pow(long b, long e, long m) {
  long r = 1 % m;
  b %= m;
  if (b < 0) b += m;
  while (e > 0) {
    if (e & 1) r = static_cast<long>(static_cast<u64>(r) * b % m);
    b = static_cast<long>(static_cast<u64>(b) * b % m);
    e >>= 1;
  }
  return r;
}

long mod_inv(long a, long m) { return mod_pow(a, m - 2, m); }

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Smallest prime l = 1 (mod e) with l > 2 sqrt(|G|) and l coprime to |G|.
long dixon_prime(int order, int exponent) {
  long lower = static_cast<long>(2 * std::sqrt(static_cast<double>(order))) + 1;
  for (long l = exponent + 1;; l += exponent) {
    if (l <= lower) continue;
    if (!is_prime(l)) continue;
    if (order % l == 0) continue;
    return l;
  }
}

long primitive_root(long l) {
  std::vector<long> qs;
  long m = l - 1;
  for (long q = 2; q * q <= m; ++q)
    if (m % q == 0) {
      qs.push_back(q);
      while (m % q == 0) m /= q;
    }
  if (m > 1) qs.push_back(m);
  for (long g = 2;; ++g) {
    bool ok = true;
    for (long q : qs)
      if (mod_pow(g, (l - 1) / q, l) == 1) {
        ok = false;
        break;
      }
    if (ok) return g;
  }
}

using Vec = std::vector<long>;   // column vector mod l
using Mat = std::vector<Vec>;    // list of columns

// Nullspace basis (as columns) of the square matrix A mod l.
Mat nullspace(Mat A, int d, long l) {
  // Gaussian elimination on rows; A is column-major: A[c][r].
  std::vector<int> pivot_col_of_row(d, -1);
  int rank = 0;
  for (int c = 0; c < d && rank < d; ++c) {
    int pr = -1;
    for (int r = rank; r < d; ++r)
      if (A[c][r] != 0) {
        pr = r;
        break;
      }
    if (pr == -1) continue;
    for (auto& col : A) std::swap(col[pr], col[rank]);
    long inv = mod_inv(A[c][rank], l);
    for (int cc = 0; cc < d; ++cc)
      A[cc][rank] = static_cast<long>(static_cast<u64>(A[cc][rank]) * inv % l);
    for (int r = 0; r < d; ++r) {
      if (r == rank || A[c][r] == 0) continue;
      long f = A[c][r];
      for (int cc = 0; cc < d; ++cc) {
        long v = A[cc][r] - static_cast<long>(static_cast<u64>(f) * A[cc][rank] % l);
        A[cc][r] = v < 0 ? v + l : v;
      }
    }
    pivot_col_of_row[rank] = c;
    ++rank;
  }
  std::vector<char> is_pivot(d, 0);
  for (int r = 0; r < rank; ++r) is_pivot[pivot_col_of_row[r]] = 1;
  Mat N;
  for (int c = 0; c < d; ++c) {
    if (is_pivot[c]) continue;
    Vec v(d, 0);
    v[c] = 1;
    for (int r = 0; r < rank; ++r) {
      long coef = A[c][r];
      if (coef != 0) v[pivot_col_of_row[r]] = l - coef;
    }
    N.push_back(std::move(v));
  }
  return N;
}

struct TableCacheSlot {
  std::map<const FiniteGroup*, TablePtr> m;
  std::mutex mu;
};
TableCacheSlot& table_cache() {
  static TableCacheSlot slot;
  return slot;
}

}  // namespace

TablePtr CharacterTable::of(const GroupPtr& G) {
  {
    std::lock_guard<std::mutex> lock(table_cache().mu);
    auto it = table_cache().m.find(G.get());
    if (it != table_cache().m.end()) return it->second;
  }
  int n = G->order();
  if (n > 1000) throw std::runtime_error("character_table: order bound exceeded");
  int r = G->num_classes();
  int e = G->exponent();
  long l = dixon_prime(n, e);

  // class algebra structure constants: c_i c_k = sum_j a[i][k][j] c_j
  std::vector<std::vector<std::vector<long>>> a(
      r, std::vector<std::vector<long>>(r, std::vector<long>(r, 0)));
  for (int i = 0; i < r; ++i)
    for (int x : G->cls(i).members) {
      int xi = G->inv(x);
      for (int j = 0; j < r; ++j) {
        int k = G->class_of(G->mul(xi, G->cls(j).rep));
        a[i][k][j] += 1;
      }
    }

  // split the class algebra into common eigenspaces of the M_i
  std::vector<Mat> spaces;
  {
    Mat full;
    for (int c = 0; c < r; ++c) {
      Vec v(r, 0);
      v[c] = 1;
      full.push_back(std::move(v));
    }
    spaces.push_back(std::move(full));
  }
  for (int i = 1; i < r; ++i) {
    bool all_split = true;
    for (const Mat& B : spaces)
      if (B.size() > 1) all_split = false;
    if (all_split) break;
    std::vector<Mat> next;
    for (Mat& B : spaces) {
      int d = static_cast<int>(B.size());
      if (d == 1) {
        next.push_back(std::move(B));
        continue;
      }
      // restriction R of M_i to span(B): solve B R = M_i B
      Mat MB(d, Vec(r, 0));
      for (int c = 0; c < d; ++c)
        for (int k = 0; k < r; ++k) {
          u64 s = 0;
          for (int j = 0; j < r; ++j)
            if (B[c][j] != 0)
              s += static_cast<u64>(a[i][k][j] % l) * B[c][j] % l;
          MB[c][k] = static_cast<long>(s % l);
        }
      // row-reduce [B | MB] together to read off coordinates
      Mat W = B;
      for (Vec& col : MB) W.push_back(col);
      std::vector<int> prow(d, -1);
      int rank = 0;
      for (int c = 0; c < d && rank < d; ++c) {
        int pr = -1;
        for (int rr = rank; rr < r; ++rr)
          if (W[c][rr] != 0) {
            pr = rr;
            break;
          }
        if (pr == -1) throw std::logic_error("char table: dependent basis");
        for (auto& col : W) std::swap(col[pr], col[rank]);
        long inv = mod_inv(W[c][rank], l);
        for (auto& col : W)
          col[rank] = static_cast<long>(static_cast<u64>(col[rank]) * inv % l);
        for (int rr = 0; rr < r; ++rr) {
          if (rr == rank || W[c][rr] == 0) continue;
          long f = W[c][rr];
          for (auto& col : W) {
            long v = col[rr] - static_cast<long>(static_cast<u64>(f) * col[rank] % l);
            col[rr] = v < 0 ? v + l : v;
          }
        }
        prow[rank] = c;
        ++rank;
      }
      Mat R(d, Vec(d, 0));
      for (int c = 0; c < d; ++c)
        for (int rr = 0; rr < d; ++rr) R[c][rr] = W[d + c][rr];
      // eigenvalue scan over F_l
      int found = 0;
      for (long lam = 0; lam < l && found < d; ++lam) {
        Mat Rl = R;
        for (int c = 0; c < d; ++c) {
          long v = Rl[c][c] - lam;
          Rl[c][c] = v < 0 ? v + l : v;
        }
        Mat N = nullspace(std::move(Rl), d, l);
        if (N.empty()) continue;
        found += static_cast<int>(N.size());
        Mat BN;
        for (const Vec& nv : N) {
          Vec col(r, 0);
          for (int c = 0; c < d; ++c) {
            if (nv[c] == 0) continue;
            for (int j = 0; j < r; ++j) {
              long v = col[j] + static_cast<long>(
                                    static_cast<u64>(nv[c]) * B[c][j] % l);
              col[j] = v >= l ? v - l : v;
            }
          }
          BN.push_back(std::move(col));
        }
        next.push_back(std::move(BN));
      }
      if (found != d)
        throw std::logic_error("char table: eigenspace split failed");
    }
    spaces = std::move(next);
  }
  for (const Mat& B : spaces)
    if (B.size() != 1)
      throw std::logic_error("char table: class matrices did not separate");

  // recover characters mod l and lift
  long w = primitive_root(l);
  long z = mod_pow(w, (l - 1) / e, l);
  std::vector<long> zinv_pow(e);
  long zi = mod_inv(z, l);
  zinv_pow[0] = 1;
  for (int t = 1; t < e; ++t)
    zinv_pow[t] = static_cast<long>(static_cast<u64>(zinv_pow[t - 1]) * zi % l);
  long einv = mod_inv(e % l, l);

  auto table = std::shared_ptr<CharacterTable>(new CharacterTable());
  table->group_ = G;
  table->conductor_ = e;
  std::vector<std::pair<int, std::vector<Cyclo>>> rows;  // (degree, values)
  int sqsum = 0;
  for (const Mat& B : spaces) {
    Vec u = B[0];
    if (u[0] == 0) throw std::logic_error("char table: eigenvector u_1 = 0");
    long norm = mod_inv(u[0], l);
    for (long& v : u) v = static_cast<long>(static_cast<u64>(v) * norm % l);
    // 1/d^2 = (1/|G|) sum_j u_j u_{j*} / |C_j|
    u64 s = 0;
    for (int j = 0; j < r; ++j) {
      int jbar = G->class_power(j, -1);
      long term = static_cast<long>(static_cast<u64>(u[j]) * u[jbar] % l);
      term = static_cast<long>(static_cast<u64>(term) *
                               mod_inv(G->cls(j).size % l, l) % l);
      s = (s + term) % l;
    }
    long dsq = static_cast<long>(static_cast<u64>(n % l) *
                                 mod_inv(static_cast<long>(s), l) % l);
    int deg = -1;
    for (int d0 = 1; d0 * d0 <= n; ++d0)
      if (static_cast<long>(d0) * d0 % l == dsq) {
        deg = d0;
        break;
      }
    if (deg < 0) throw std::logic_error("char table: degree recovery failed");
    sqsum += deg * deg;
    // chi(g_j) mod l
    std::vector<long> chit(r);
    for (int j = 0; j < r; ++j)
      chit[j] = static_cast<long>(
          static_cast<u64>(deg % l) * u[j] % l *
          mod_inv(G->cls(j).size % l, l) % l);
    // DFT lift: chi(g) = sum_t n_t zeta_e^t with
    // n_t = (1/e) sum_k chi~(g^k) z^{-tk}, 0 <= n_t <= deg < l
    std::vector<Cyclo> vals(r);
    for (int j = 0; j < r; ++j) {
      std::vector<long> on_powers(e);
      for (int k = 0; k < e; ++k) on_powers[k] = chit[G->class_power(j, k)];
      Cyclo val = Cyclo::zero(e);
      for (int t = 0; t < e; ++t) {
        u64 acc = 0;
        for (int k = 0; k < e; ++k)
          acc = (acc + static_cast<u64>(on_powers[k]) *
                           zinv_pow[static_cast<long>(t) * k % e] % l) %
                l;
        long nt = static_cast<long>(static_cast<u64>(acc) * einv % l);
        if (nt == 0) continue;
        val += Cyclo::root_of_unity(e, t) * Cyclo(nt);
      }
      vals[j] = val;
    }
    rows.emplace_back(deg, std::move(vals));
  }
  if (sqsum != n)
    throw std::logic_error("char table: sum of squared degrees mismatch");
  std::sort(rows.begin(), rows.end(),
            [](const auto& x, const auto& y) {
              if (x.first != y.first) return x.first < y.first;
              for (std::size_t j = 0; j < x.second.size(); ++j) {
                int c = Cyclo::compare(x.second[j], y.second[j]);
                if (c != 0) return c < 0;
              }
              return false;
            });
  for (auto& [deg, vals] : rows) table->irr_.push_back(std::move(vals));

  TablePtr out = table;
  std::lock_guard<std::mutex> lock(table_cache().mu);
  table_cache().m.emplace(G.get(), out);
  return out;
}

Int CharacterTable::degree(int chi) const {
  auto q = irr_[chi][0].as_rational();
  if (!q || q->get_den() != 1)
    throw std::logic_error("degree: non-integral value at identity");
  return q->get_num();
}

ClassFunction CharacterTable::row(int chi) const {
  return ClassFunction{group_, irr_[chi]};
}

ClassFunction CharacterTable::trivial_character() const {
  return ClassFunction{group_,
                       std::vector<Cyclo>(num_classes(), Cyclo(Rat(1)))};
}

ClassFunction CharacterTable::to_class_function(
    const VirtualCharacter& v) const {
  if (v.group != group_)
    throw std::invalid_argument("to_class_function: group mismatch");
  ClassFunction f{group_, std::vector<Cyclo>(num_classes(), Cyclo(Rat(0)))};
  for (int i = 0; i < num_classes(); ++i) {
    if (v.coeffs[i] == 0) continue;
    Cyclo c{Rat(v.coeffs[i])};
    for (int j = 0; j < num_classes(); ++j) f.values[j] += c * irr_[i][j];
  }
  return f;
}

std::optional<VirtualCharacter> CharacterTable::to_virtual(
    const ClassFunction& f) const {
  if (f.group != group_)
    throw std::invalid_argument("to_virtual: group mismatch");
  VirtualCharacter v{group_, std::vector<Int>(num_classes())};
  for (int i = 0; i < num_classes(); ++i) {
    Cyclo c = inner_product(f, row(i));
    auto q = c.as_rational();
    if (!q || q->get_den() != 1) return std::nullopt;
    v.coeffs[i] = q->get_num();
  }
  return v;
}

bool ClassFunction::operator==(const ClassFunction& o) const {
  if (group != o.group) return false;
  for (std::size_t i = 0; i < values.size(); ++i)
    if (!(values[i] == o.values[i])) return false;
  return true;
}

ClassFunction operator+(const ClassFunction& a, const ClassFunction& b) {
  if (a.group != b.group) throw std::invalid_argument("cf +: group mismatch");
  ClassFunction r = a;
  for (std::size_t i = 0; i < r.values.size(); ++i) r.values[i] += b.values[i];
  return r;
}

ClassFunction operator-(const ClassFunction& a, const ClassFunction& b) {
  return a + scale(-1, b);
}

ClassFunction operator*(const ClassFunction& a, const ClassFunction& b) {
  if (a.group != b.group) throw std::invalid_argument("cf *: group mismatch");
  ClassFunction r = a;
  for (std::size_t i = 0; i < r.values.size(); ++i) r.values[i] *= b.values[i];
  return r;
}

ClassFunction scale(const Int& k, const ClassFunction& a) {
  ClassFunction r = a;
  Cyclo c{Rat(k)};
  for (auto& v : r.values) v *= c;
  return r;
}

bool VirtualCharacter::is_zero() const {
  for (const Int& c : coeffs)
    if (c != 0) return false;
  return true;
}

VirtualCharacter operator+(const VirtualCharacter& a,
                           const VirtualCharacter& b) {
  if (a.group != b.group) throw std::invalid_argument("vc +: group mismatch");
  VirtualCharacter r = a;
  for (std::size_t i = 0; i < r.coeffs.size(); ++i) r.coeffs[i] += b.coeffs[i];
  return r;
}

VirtualCharacter operator-(const VirtualCharacter& a,
                           const VirtualCharacter& b) {
  return a + scale(-1, b);
}

VirtualCharacter scale(const Int& k, const VirtualCharacter& a) {
  VirtualCharacter r = a;
  for (auto& c : r.coeffs) c *= k;
  return r;
}

Cyclo inner_product(const ClassFunction& a, const ClassFunction& b) {
  if (a.group != b.group)
    throw std::invalid_argument("inner_product: group mismatch");
  const FiniteGroup& G = *a.group;
  Cyclo s{Rat(0)};
  for (int c = 0; c < G.num_classes(); ++c)
    s += Cyclo(Rat(G.cls(c).size)) * a.values[c] * b.values[c].conj();
  return s * Cyclo(Rat(1, G.order()));
}

Subgroup kernel_of(const ClassFunction& f) {
  const FiniteGroup& G = *f.group;
  Subgroup K;
  for (int c = 0; c < G.num_classes(); ++c)
    if (f.values[c] == f.values[0])
      K.elems.insert(K.elems.end(), G.cls(c).members.begin(),
                     G.cls(c).members.end());
  std::sort(K.elems.begin(), K.elems.end());
  return K;
}

Subgroup kernel_of(const VirtualCharacter& v) {
  for (const Int& c : v.coeffs)
    if (c < 0)
      throw std::invalid_argument("kernel_of: not a genuine character");
  return kernel_of(CharacterTable::of(v.group)->to_class_function(v));
}

bool is_faithful(const ClassFunction& f) { return kernel_of(f).order() == 1; }
bool is_faithful(const VirtualCharacter& v) {
  return kernel_of(v).order() == 1;
}

std::vector<ClassFunction> linear_characters_into_mu_podd(const GroupPtr& H,
                                                          int p) {
  TablePtr t = CharacterTable::of(H);
  long podd = H->exponent();
  while (podd % p == 0) podd /= p;
  std::vector<ClassFunction> out;
  for (int i = 0; i < t->num_classes(); ++i) {
    if (t->degree(i) != 1) continue;
    bool ok = true;
    for (const Cyclo& v : t->irr()[i])
      if (!(v.pow(podd) == Cyclo(Rat(1)))) {
        ok = false;
        break;
      }
    if (ok) out.push_back(t->row(i));
  }
  return out;
}

std::vector<GaloisOrbit> galois_orbits(const TablePtr& table, int p) {
  int r = table->num_classes();
  int e = table->conductor();
  std::vector<long> ks = fixing_exponents(e, p);
  std::vector<int> orbit_of(r, -1);
  std::vector<GaloisOrbit> orbits;
  for (int i = 0; i < r; ++i) {
    if (orbit_of[i] != -1) continue;
    int oid = static_cast<int>(orbits.size());
    std::vector<int> members;
    for (long k : ks) {
      std::vector<Cyclo> img;
      img.reserve(r);
      for (const Cyclo& v : table->irr()[i]) img.push_back(v.embed(e).galois(k));
      int hit = -1;
      for (int j = 0; j < r; ++j) {
        if (orbit_of[j] == oid) continue;
        bool same = true;
        for (int c = 0; c < r && same; ++c)
          if (!(table->value(j, c) == img[c])) same = false;
        if (same) {
          hit = j;
          break;
        }
      }
      if (hit < 0) continue;  // already collected
      if (orbit_of[hit] == -1) {
        orbit_of[hit] = oid;
        members.push_back(hit);
      }
    }
    std::sort(members.begin(), members.end());
    VirtualCharacter vc{table->group(), std::vector<Int>(r, 0)};
    for (int m : members) vc.coeffs[m] = 1;
    orbits.push_back(GaloisOrbit{std::move(members), std::move(vc)});
  }
  return orbits;
}

bool verify_orthogonality(const CharacterTable& t) {
  const FiniteGroup& G = *t.group();
  int r = t.num_classes();
  Int sq = 0;
  for (int i = 0; i < r; ++i) sq += t.degree(i) * t.degree(i);
  if (sq != G.order()) return false;
  for (int i = 0; i < r; ++i)
    for (int j = i; j < r; ++j) {
      Cyclo ip = inner_product(t.row(i), t.row(j));
      if (!(ip == Cyclo(Rat(i == j ? 1 : 0)))) return false;
    }
  for (int c = 0; c < r; ++c)
    for (int d = c; d < r; ++d) {
      Cyclo s{Rat(0)};
      for (int i = 0; i < r; ++i) s += t.value(i, c) * t.value(i, d).conj();
      Rat expect = c == d ? Rat(G.order(), G.cls(c).size) : Rat(0);
      expect.canonicalize();
      if (!(s == Cyclo(expect))) return false;
    }
  return true;
}

namespace {

nlohmann::json cyclo_json(const Cyclo& v, int conductor) {
  Cyclo w = v.embed(conductor);
  nlohmann::json arr = nlohmann::json::array();
  for (const Rat& c : w.coeffs()) arr.push_back(c.get_str());
  return arr;
}

}  // namespace

std::string table_to_json(const CharacterTable& t) {
  const FiniteGroup& G = *t.group();
  nlohmann::json j;
  j["group"] = G.name();
  j["order"] = G.order();
  j["conductor"] = t.conductor();
  j["classes"] = nlohmann::json::array();
  for (int c = 0; c < G.num_classes(); ++c)
    j["classes"].push_back({{"rep", G.cls(c).rep},
                            {"size", G.cls(c).size},
                            {"element_order", G.cls(c).element_order}});
  j["irr"] = nlohmann::json::array();
  for (int i = 0; i < t.num_classes(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int c = 0; c < t.num_classes(); ++c)
      row.push_back(cyclo_json(t.value(i, c), t.conductor()));
    j["irr"].push_back(row);
  }
  j["power_maps"] = nlohmann::json::array();
  for (int k = 0; k < G.exponent(); ++k) {
    nlohmann::json pm = nlohmann::json::array();
    for (int c = 0; c < G.num_classes(); ++c) pm.push_back(G.class_power(c, k));
    j["power_maps"].push_back(pm);
  }
  return j.dump(2);
}

bool json_matches_table(const std::string& json, const CharacterTable& t) {
  nlohmann::json j = nlohmann::json::parse(json);
  const FiniteGroup& G = *t.group();
  if (j["order"] != G.order() || j["conductor"] != t.conductor()) return false;
  if (static_cast<int>(j["irr"].size()) != t.num_classes()) return false;
  int e = t.conductor();
  for (int i = 0; i < t.num_classes(); ++i)
    for (int c = 0; c < t.num_classes(); ++c) {
      Cyclo v = Cyclo::zero(e);
      const auto& arr = j["irr"][i][c];
      for (std::size_t k = 0; k < arr.size(); ++k) {
        Rat coef(arr[k].template get<std::string>());
        coef.canonicalize();
        v += Cyclo(coef) * Cyclo::root_of_unity(e, static_cast<long>(k));
      }
      if (!(v == t.value(i, c))) return false;
    }
  for (int c = 0; c < G.num_classes(); ++c) {
    if (j["classes"][c]["size"] != G.cls(c).size) return false;
    if (j["classes"][c]["element_order"] != G.cls(c).element_order)
      return false;
  }
  return true;
}

}  // namespace bfk
