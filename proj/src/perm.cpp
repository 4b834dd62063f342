#include "bfk/perm.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <mutex>
#include <numeric>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace bfk {

Permutation Permutation::identity(int degree) {
  Permutation p;
  p.img.resize(degree);
  std::iota(p.img.begin(), p.img.end(), 0);
  return p;
}

Permutation Permutation::compose(const Permutation& other) const {
  Permutation r;
  r.img.resize(img.size());
  for (std::size_t i = 0; i < img.size(); ++i) r.img[i] = img[other.img[i]];
  return r;
}

Permutation Permutation::inverse() const {
  Permutation r;
  r.img.resize(img.size());
  for (std::size_t i = 0; i < img.size(); ++i) r.img[img[i]] = i;
  return r;
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < img.size(); ++i)
    if (img[i] != static_cast<int>(i)) return false;
  return true;
}

Permutation parse_cycles(const std::string& text, int degree_hint) {
  std::vector<std::vector<int>> cycles;
  std::size_t i = 0;
  int maxpt = degree_hint;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    if (text[i] != '(') throw std::invalid_argument("parse_cycles: expected (");
    std::size_t close = text.find(')', i);
    if (close == std::string::npos)
      throw std::invalid_argument("parse_cycles: missing )");
    std::string body = text.substr(i + 1, close - i - 1);
    std::vector<int> cyc;
    std::stringstream ss(body);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      int pt = std::stoi(tok);
      if (pt < 1) throw std::invalid_argument("parse_cycles: 1-based points");
      cyc.push_back(pt - 1);
      maxpt = std::max(maxpt, pt);
    }
    if (!cyc.empty()) cycles.push_back(cyc);
    i = close + 1;
  }
  Permutation p = Permutation::identity(maxpt);
  for (const auto& cyc : cycles)
    for (std::size_t j = 0; j < cyc.size(); ++j)
      p.img[cyc[j]] = cyc[(j + 1) % cyc.size()];
  // must be a bijection: duplicate points in cycles would break it
  std::vector<int> seen(maxpt, 0);
  for (int v : p.img) {
    if (v < 0 || v >= maxpt || seen[v]++)
      throw std::invalid_argument("parse_cycles: not a bijection");
  }
  return p;
}

namespace {

std::string pack_perm(const Permutation& p) {
  std::string s;
  s.resize(p.img.size() * 2);
  for (std::size_t i = 0; i < p.img.size(); ++i) {
    s[2 * i] = static_cast<char>(p.img[i] & 0xff);
    s[2 * i + 1] = static_cast<char>((p.img[i] >> 8) & 0xff);
  }
  return s;
}

}  // namespace

std::shared_ptr<FiniteGroup> FiniteGroup::from_generators(
    std::vector<Permutation> gens, std::string name) {
  if (gens.empty()) throw std::invalid_argument("from_generators: no generators");
  int degree = gens[0].degree();
  for (const auto& g : gens)
    if (g.degree() != degree)
      throw std::invalid_argument("from_generators: degree mismatch");

  auto G = std::shared_ptr<FiniteGroup>(new FiniteGroup());
  G->degree_ = degree;
  G->name_ = std::move(name);

  // BFS enumeration from the identity; deterministic given generator order.
  G->elems_.push_back(Permutation::identity(degree));
  G->index_[pack_perm(G->elems_[0])] = 0;
  G->bfs_parent_.push_back(-1);
  G->bfs_gen_.push_back(-1);
  for (std::size_t cur = 0; cur < G->elems_.size(); ++cur) {
    for (std::size_t gi = 0; gi < gens.size(); ++gi) {
      Permutation p = G->elems_[cur].compose(gens[gi]);
      std::string key = pack_perm(p);
      if (G->index_.count(key)) continue;
      G->index_[key] = static_cast<int>(G->elems_.size());
      G->elems_.push_back(std::move(p));
      G->bfs_parent_.push_back(static_cast<int>(cur));
      G->bfs_gen_.push_back(static_cast<int>(gi));
      if (G->elems_.size() > 65535)
        throw std::runtime_error("from_generators: group too large");
    }
  }
  G->n_ = static_cast<int>(G->elems_.size());
  for (const auto& g : gens) G->gen_idx_.push_back(G->index_of(g));

  G->mul_.resize(static_cast<std::size_t>(G->n_) * G->n_);
  for (int a = 0; a < G->n_; ++a)
    for (int b = 0; b < G->n_; ++b) {
      int idx = G->index_of(G->elems_[a].compose(G->elems_[b]));
      G->mul_[static_cast<std::size_t>(a) * G->n_ + b] =
          static_cast<uint16_t>(idx);
    }
  G->inv_.resize(G->n_);
  for (int a = 0; a < G->n_; ++a) G->inv_[a] = G->index_of(G->elems_[a].inverse());

  G->elem_order_.resize(G->n_);
  for (int a = 0; a < G->n_; ++a) {
    int x = a, k = 1;
    while (x != 0) {
      x = G->mul(x, a);
      ++k;
    }
    G->elem_order_[a] = k;
  }
  G->exponent_ = 1;
  for (int a = 0; a < G->n_; ++a)
    G->exponent_ = std::lcm(G->exponent_, G->elem_order_[a]);

  // Conjugacy classes; canonical order by (element order, size, min rep).
  G->class_of_.assign(G->n_, -1);
  std::vector<ConjClass> classes;
  for (int e = 0; e < G->n_; ++e) {
    if (G->class_of_[e] != -1) continue;
    ConjClass c;
    std::vector<int> orbit;
    std::vector<char> in(G->n_, 0);
    orbit.push_back(e);
    in[e] = 1;
    for (std::size_t i = 0; i < orbit.size(); ++i)
      for (int g = 0; g < G->n_; ++g) {
        int y = G->conjugate(orbit[i], g);
        if (!in[y]) {
          in[y] = 1;
          orbit.push_back(y);
        }
      }
    std::sort(orbit.begin(), orbit.end());
    c.members = orbit;
    c.rep = orbit[0];
    c.size = static_cast<int>(orbit.size());
    c.element_order = G->elem_order_[e];
    for (int y : orbit) G->class_of_[y] = -2;  // mark, renumbered below
    classes.push_back(std::move(c));
  }
  std::sort(classes.begin(), classes.end(),
            [](const ConjClass& a, const ConjClass& b) {
              return std::tie(a.element_order, a.size, a.rep) <
                     std::tie(b.element_order, b.size, b.rep);
            });
  G->classes_ = std::move(classes);
  for (std::size_t c = 0; c < G->classes_.size(); ++c)
    for (int y : G->classes_[c].members) G->class_of_[y] = static_cast<int>(c);
  return G;
}

int FiniteGroup::index_of(const Permutation& p) const {
  auto it = index_.find(pack_perm(p));
  return it == index_.end() ? -1 : it->second;
}

int FiniteGroup::power(int x, long k) const {
  int o = elem_order_[x];
  long m = ((k % o) + o) % o;
  int r = 0;
  for (long i = 0; i < m; ++i) r = mul(r, x);
  return r;
}

int FiniteGroup::class_power(int c, long k) const {
  return class_of_[power(classes_[c].rep, k)];
}

bool FiniteGroup::is_abelian() const {
  for (int a : gen_idx_)
    for (int b : gen_idx_)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

bool Subgroup::contains(int e) const {
  return std::binary_search(elems.begin(), elems.end(), e);
}

Subgroup whole_group(const FiniteGroup& G) {
  Subgroup S;
  S.elems.resize(G.order());
  std::iota(S.elems.begin(), S.elems.end(), 0);
  return S;
}

Subgroup trivial_subgroup() {
  Subgroup S;
  S.elems = {0};
  return S;
}

Subgroup closure(const FiniteGroup& G, std::vector<int> seed) {
  std::vector<char> in(G.order(), 0);
  std::vector<int> list;
  auto add = [&](int e) {
    if (!in[e]) {
      in[e] = 1;
      list.push_back(e);
    }
  };
  add(0);
  std::vector<int> gens;
  for (int s : seed) {
    gens.push_back(s);
    gens.push_back(G.inv(s));
  }
  for (std::size_t i = 0; i < list.size(); ++i)
    for (int g : gens) add(G.mul(list[i], g));
  std::sort(list.begin(), list.end());
  Subgroup S;
  S.elems = std::move(list);
  return S;
}

Subgroup conjugate_subgroup(const FiniteGroup& G, const Subgroup& S, int g) {
  Subgroup R;
  R.elems.reserve(S.elems.size());
  for (int x : S.elems) R.elems.push_back(G.conjugate(x, g));
  std::sort(R.elems.begin(), R.elems.end());
  return R;
}

bool is_subgroup_of(const Subgroup& small, const Subgroup& big) {
  return std::includes(big.elems.begin(), big.elems.end(), small.elems.begin(),
                       small.elems.end());
}

bool is_normal(const FiniteGroup& G, const Subgroup& S) {
  for (int g = 0; g < G.order(); ++g)
    for (int x : S.elems)
      if (!S.contains(G.conjugate(x, g))) return false;
  return true;
}

Subgroup normalizer(const FiniteGroup& G, const Subgroup& S) {
  Subgroup R;
  for (int g = 0; g < G.order(); ++g) {
    bool ok = true;
    for (int x : S.elems)
      if (!S.contains(G.conjugate(x, g))) {
        ok = false;
        break;
      }
    if (ok) R.elems.push_back(g);
  }
  return R;
}

Subgroup centralizer_of_set(const FiniteGroup& G, const std::vector<int>& set) {
  Subgroup R;
  for (int g = 0; g < G.order(); ++g) {
    bool ok = true;
    for (int x : set)
      if (G.mul(g, x) != G.mul(x, g)) {
        ok = false;
        break;
      }
    if (ok) R.elems.push_back(g);
  }
  return R;
}

Subgroup center(const FiniteGroup& G) {
  std::vector<int> all(G.order());
  std::iota(all.begin(), all.end(), 0);
  return centralizer_of_set(G, all);
}

Subgroup derived_subgroup(const FiniteGroup& G, const Subgroup& S) {
  std::vector<int> comms;
  for (int a : S.elems)
    for (int b : S.elems)
      comms.push_back(G.mul(G.mul(a, b), G.mul(G.inv(a), G.inv(b))));
  std::sort(comms.begin(), comms.end());
  comms.erase(std::unique(comms.begin(), comms.end()), comms.end());
  return closure(G, comms);
}

int order_bound() {
  if (const char* s = std::getenv("BFK_ORDER_BOUND")) {
    int v = std::atoi(s);
    if (v > 0) return v;
  }
  return 512;
}

namespace {

struct SubgroupCacheEntry {
  std::vector<Subgroup> all;
  SubgroupClasses classes;
};

std::map<const FiniteGroup*, std::shared_ptr<SubgroupCacheEntry>>&
subgroup_cache() {
  static std::map<const FiniteGroup*, std::shared_ptr<SubgroupCacheEntry>> m;
  return m;
}
std::mutex subgroup_cache_mu;

std::shared_ptr<SubgroupCacheEntry> compute_subgroups(const GroupPtr& G) {
  if (G->order() > order_bound())
    throw std::runtime_error("subgroup enumeration: order bound exceeded (" +
                             std::to_string(G->order()) + " > " +
                             std::to_string(order_bound()) + ")");
  auto entry = std::make_shared<SubgroupCacheEntry>();
  std::set<std::vector<int>> seen;
  std::vector<Subgroup>& all = entry->all;
  auto add = [&](Subgroup S) -> bool {
    if (seen.count(S.elems)) return false;
    seen.insert(S.elems);
    all.push_back(std::move(S));
    return true;
  };
  add(trivial_subgroup());
  // layer 1: cyclic subgroups, remembering one generator each
  std::vector<int> cyc_gen;
  std::vector<const Subgroup*> cyclics;
  for (int e = 1; e < G->order(); ++e) {
    Subgroup C = closure(*G, {e});
    if (add(C)) cyc_gen.push_back(e);
  }
  // joins until closed
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (int g : cyc_gen) {
      if (all[i].contains(g)) continue;
      std::vector<int> seed = all[i].elems;
      seed.push_back(g);
      add(closure(*G, std::move(seed)));
    }
  }
  std::sort(all.begin(), all.end(), [](const Subgroup& a, const Subgroup& b) {
    return std::tie(a.elems) < std::tie(b.elems);
  });

  // conjugacy classes of subgroups
  std::map<std::vector<int>, int> idx;
  for (std::size_t i = 0; i < all.size(); ++i) idx[all[i].elems] = i;
  SubgroupClasses& sc = entry->classes;
  sc.class_of.assign(all.size(), -1);
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (sc.class_of[i] != -1) continue;
    int cid = static_cast<int>(sc.rep_index.size());
    sc.rep_index.push_back(static_cast<int>(i));
    sc.members.emplace_back();
    std::vector<int> orbit{static_cast<int>(i)};
    sc.class_of[i] = cid;
    for (std::size_t k = 0; k < orbit.size(); ++k) {
      for (int g = 0; g < G->order(); ++g) {
        Subgroup T = conjugate_subgroup(*G, all[orbit[k]], g);
        int j = idx.at(T.elems);
        if (sc.class_of[j] == -1) {
          sc.class_of[j] = cid;
          orbit.push_back(j);
        }
      }
    }
    std::sort(orbit.begin(), orbit.end());
    sc.members[cid] = orbit;
  }
  return entry;
}

std::shared_ptr<SubgroupCacheEntry> get_subgroup_entry(const GroupPtr& G) {
  {
    std::lock_guard<std::mutex> lock(subgroup_cache_mu);
    auto it = subgroup_cache().find(G.get());
    if (it != subgroup_cache().end()) return it->second;
  }
  auto entry = compute_subgroups(G);
  std::lock_guard<std::mutex> lock(subgroup_cache_mu);
  subgroup_cache().emplace(G.get(), entry);
  return entry;
}

}  // namespace

const std::vector<Subgroup>& all_subgroups(const GroupPtr& G) {
  return get_subgroup_entry(G)->all;
}

const SubgroupClasses& subgroup_classes(const GroupPtr& G) {
  return get_subgroup_entry(G)->classes;
}

std::vector<Subgroup> subgroup_class_reps(const GroupPtr& G) {
  auto entry = get_subgroup_entry(G);
  std::vector<Subgroup> reps;
  for (int i : entry->classes.rep_index) reps.push_back(entry->all[i]);
  return reps;
}

std::vector<Subgroup> normal_subgroups(const GroupPtr& G) {
  auto entry = get_subgroup_entry(G);
  std::vector<Subgroup> out;
  for (std::size_t c = 0; c < entry->classes.rep_index.size(); ++c) {
    if (entry->classes.members[c].size() != 1) continue;
    out.push_back(entry->all[entry->classes.rep_index[c]]);
  }
  return out;
}

namespace {

// Extends generator images along BFS words without a multiplicativity
// check (callers that construct genuine homomorphisms).
std::vector<int> extend_images(const FiniteGroup& src, const FiniteGroup& dst,
                               const std::vector<int>& gen_images) {
  std::vector<int> map(src.order(), -1);
  map[0] = 0;
  for (int i = 1; i < src.order(); ++i) {
    int p = src.bfs_parent(i), g = src.bfs_gen(i);
    map[i] = dst.mul(map[p], gen_images[g]);
  }
  return map;
}

}  // namespace

namespace {
QuotientModel quotient_uncached(const GroupPtr& G, const Subgroup& N);
}  // namespace

// Models are memoized so repeated requests hand back the same abstract
// group object (downstream per-group caches key on the pointer).
QuotientModel quotient(const GroupPtr& G, const Subgroup& N) {
  static std::map<std::pair<const FiniteGroup*, std::vector<int>>,
                  QuotientModel>
      cache;
  static std::mutex mu;
  std::pair<const FiniteGroup*, std::vector<int>> key{G.get(), N.elems};
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  QuotientModel Q = quotient_uncached(G, N);
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(std::move(key), std::move(Q)).first->second;
}

namespace {
QuotientModel quotient_uncached(const GroupPtr& G, const Subgroup& N) {
  if (!is_normal(*G, N)) throw std::invalid_argument("quotient: N not normal");
  QuotientModel Q;
  Q.parent = G;
  Q.N = N;
  // cosets keyed by their minimal element
  std::vector<int> coset_min(G->order(), -1);
  std::vector<int> coset_reps;
  for (int e = 0; e < G->order(); ++e) {
    if (coset_min[e] != -1) continue;
    int mn = e;
    std::vector<int> mem;
    for (int x : N.elems) mem.push_back(G->mul(e, x));
    for (int y : mem) mn = std::min(mn, y);
    for (int y : mem) coset_min[y] = mn;
  }
  std::map<int, int> coset_index;  // min elem -> coset number
  for (int e = 0; e < G->order(); ++e)
    if (coset_index.find(coset_min[e]) == coset_index.end())
      coset_index.emplace(coset_min[e],
                          static_cast<int>(coset_index.size()));
  int m = static_cast<int>(coset_index.size());
  coset_reps.resize(m);
  for (auto& [rep, idx] : coset_index) coset_reps[idx] = rep;

  std::vector<Permutation> gens;
  for (int gi : G->generator_indices()) {
    Permutation p;
    p.img.resize(m);
    for (int c = 0; c < m; ++c)
      p.img[c] = coset_index.at(coset_min[G->mul(gi, coset_reps[c])]);
    gens.push_back(std::move(p));
  }
  Q.quo = FiniteGroup::from_generators(gens, G->name() + "/N");

  std::vector<int> gen_images;
  for (const auto& p : gens) gen_images.push_back(Q.quo->index_of(p));
  Q.proj = extend_images(*G, *Q.quo, gen_images);
  Q.section.assign(Q.quo->order(), -1);
  for (int e = G->order() - 1; e >= 0; --e) Q.section[Q.proj[e]] = e;
  return Q;
}

SubgroupModel subgroup_model_uncached(const GroupPtr& G, const Subgroup& S);
}  // namespace

SubgroupModel subgroup_model(const GroupPtr& G, const Subgroup& S) {
  static std::map<std::pair<const FiniteGroup*, std::vector<int>>,
                  SubgroupModel>
      cache;
  static std::mutex mu;
  std::pair<const FiniteGroup*, std::vector<int>> key{G.get(), S.elems};
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  SubgroupModel M = subgroup_model_uncached(G, S);
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(std::move(key), std::move(M)).first->second;
}

namespace {
SubgroupModel subgroup_model_uncached(const GroupPtr& G, const Subgroup& S) {
  SubgroupModel M;
  M.parent = G;
  M.sub = S;
  int s = S.order();
  std::vector<int> pos(G->order(), -1);
  for (int i = 0; i < s; ++i) pos[S.elems[i]] = i;
  // greedy generating set
  std::vector<int> gens;
  {
    Subgroup cur = trivial_subgroup();
    for (int e : S.elems) {
      if (cur.contains(e)) continue;
      gens.push_back(e);
      std::vector<int> seed = cur.elems;
      seed.push_back(e);
      cur = closure(*G, std::move(seed));
      if (cur.order() == s) break;
    }
    if (gens.empty()) gens.push_back(0);  // trivial subgroup
  }
  std::vector<Permutation> perms;
  for (int g : gens) {
    Permutation p;
    p.img.resize(s);
    for (int i = 0; i < s; ++i) p.img[i] = pos[G->mul(g, S.elems[i])];
    perms.push_back(std::move(p));
  }
  M.grp = FiniteGroup::from_generators(perms);
  M.to_parent.resize(s);
  for (int a = 0; a < s; ++a)
    M.to_parent[a] = S.elems[M.grp->perm(a).img[0]];
  M.from_parent.assign(G->order(), -1);
  for (int a = 0; a < s; ++a) M.from_parent[M.to_parent[a]] = a;
  return M;
}
}  // namespace

SectionModel section_model(const GroupPtr& G, const Subgroup& H,
                           const Subgroup& N) {
  SectionModel S;
  S.H = subgroup_model(G, H);
  Subgroup Nabs;
  for (int x : N.elems) {
    int a = S.H.from_parent[x];
    if (a < 0) throw std::invalid_argument("section_model: N not inside H");
    Nabs.elems.push_back(a);
  }
  std::sort(Nabs.elems.begin(), Nabs.elems.end());
  S.HmodN = quotient(S.H.grp, Nabs);
  return S;
}

std::vector<std::pair<Subgroup, Subgroup>> sections(const GroupPtr& G) {
  std::vector<std::pair<Subgroup, Subgroup>> out;
  for (const Subgroup& H : subgroup_class_reps(G)) {
    for (const Subgroup& S : all_subgroups(G)) {
      if (!is_subgroup_of(S, H)) continue;
      bool normal_in_H = true;
      for (int g : H.elems) {
        for (int x : S.elems)
          if (!S.contains(G->conjugate(x, g))) {
            normal_in_H = false;
            break;
          }
        if (!normal_in_H) break;
      }
      if (normal_in_H) out.emplace_back(H, S);
    }
  }
  return out;
}

bool GroupHom::is_bijective() const {
  if (src->order() != dst->order()) return false;
  std::vector<char> seen(dst->order(), 0);
  for (int v : map) {
    if (seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

std::optional<GroupHom> hom_from_generator_images(
    const GroupPtr& src, const GroupPtr& dst, const std::vector<int>& images) {
  if (images.size() != src->generator_indices().size())
    throw std::invalid_argument("hom_from_generator_images: arity mismatch");
  std::vector<int> map = extend_images(*src, *dst, images);
  for (int a = 0; a < src->order(); ++a)
    for (int b = 0; b < src->order(); ++b)
      if (map[src->mul(a, b)] != dst->mul(map[a], map[b])) return std::nullopt;
  GroupHom h;
  h.src = src;
  h.dst = dst;
  h.map = std::move(map);
  return h;
}

namespace {

// Partial-map closure for isomorphism backtracking: assigns images for
// the subgroup generated by the seeded pairs, propagating products.
// Returns false on inconsistency.
bool close_partial(const FiniteGroup& A, const FiniteGroup& B,
                   std::vector<int>& pmap, std::vector<int>& mapped) {
  std::size_t head = 0;
  // mapped acts as the worklist; newly assigned entries get appended.
  for (head = 0; head < mapped.size(); ++head) {
    int y = mapped[head];
    for (std::size_t k = 0; k < mapped.size(); ++k) {
      int x = mapped[k];
      for (auto [c, d] : {std::pair{A.mul(x, y), B.mul(pmap[x], pmap[y])},
                          std::pair{A.mul(y, x), B.mul(pmap[y], pmap[x])}}) {
        if (pmap[c] == -1) {
          pmap[c] = d;
          mapped.push_back(c);
        } else if (pmap[c] != d) {
          return false;
        }
      }
    }
  }
  return true;
}

bool iso_search(const FiniteGroup& A, const FiniteGroup& B,
                const std::vector<int>& gens, std::size_t next,
                std::vector<int>& pmap, std::vector<int>& mapped,
                std::vector<int>& out) {
  if (next == gens.size()) {
    if (static_cast<int>(mapped.size()) != A.order()) return false;
    std::vector<char> seen(B.order(), 0);
    for (int x : mapped) {
      if (seen[pmap[x]]) return false;
      seen[pmap[x]] = 1;
    }
    out = pmap;
    return true;
  }
  int a = gens[next];
  for (int b = 0; b < B.order(); ++b) {
    if (A.element_order(a) != B.element_order(b)) continue;
    if (A.cls(A.class_of(a)).size != B.cls(B.class_of(b)).size) continue;
    std::vector<int> pmap2 = pmap;
    std::vector<int> mapped2 = mapped;
    if (pmap2[a] == -1) {
      pmap2[a] = b;
      mapped2.push_back(a);
    } else if (pmap2[a] != b) {
      continue;
    }
    if (!close_partial(A, B, pmap2, mapped2)) continue;
    if (iso_search(A, B, gens, next + 1, pmap2, mapped2, out)) {
      pmap = pmap2;
      return true;
    }
  }
  return false;
}

}  // namespace

std::optional<GroupHom> find_isomorphism(const GroupPtr& A, const GroupPtr& B) {
  if (A->order() != B->order()) return std::nullopt;
  if (A->num_classes() != B->num_classes()) return std::nullopt;
  if (A->exponent() != B->exponent()) return std::nullopt;
  auto profile = [](const FiniteGroup& G) {
    std::vector<std::pair<int, int>> p;
    for (int c = 0; c < G.num_classes(); ++c)
      p.emplace_back(G.cls(c).element_order, G.cls(c).size);
    std::sort(p.begin(), p.end());
    return p;
  };
  if (profile(*A) != profile(*B)) return std::nullopt;

  // greedy generating set of A
  std::vector<int> gens;
  {
    Subgroup cur = trivial_subgroup();
    for (int e = 0; e < A->order(); ++e) {
      if (cur.contains(e)) continue;
      gens.push_back(e);
      std::vector<int> seed = cur.elems;
      seed.push_back(e);
      cur = closure(*A, std::move(seed));
      if (cur.order() == A->order()) break;
    }
  }
  std::vector<int> pmap(A->order(), -1);
  std::vector<int> mapped;
  pmap[0] = 0;
  mapped.push_back(0);
  std::vector<int> out;
  if (!iso_search(*A, *B, gens, 0, pmap, mapped, out)) return std::nullopt;
  GroupHom h;
  h.src = A;
  h.dst = B;
  h.map = std::move(out);
  return h;
}

bool is_isomorphic(const GroupPtr& A, const GroupPtr& B) {
  return find_isomorphism(A, B).has_value();
}

namespace {

void iso_search_all(const FiniteGroup& A, const FiniteGroup& B,
                    const std::vector<int>& gens, std::size_t next,
                    std::vector<int>& pmap, std::vector<int>& mapped,
                    std::vector<std::vector<int>>& out) {
  if (next == gens.size()) {
    if (static_cast<int>(mapped.size()) != A.order()) return;
    std::vector<char> seen(B.order(), 0);
    for (int x : mapped) {
      if (seen[pmap[x]]) return;
      seen[pmap[x]] = 1;
    }
    out.push_back(pmap);
    return;
  }
  int a = gens[next];
  for (int b = 0; b < B.order(); ++b) {
    if (A.element_order(a) != B.element_order(b)) continue;
    if (A.cls(A.class_of(a)).size != B.cls(B.class_of(b)).size) continue;
    std::vector<int> pmap2 = pmap;
    std::vector<int> mapped2 = mapped;
    if (pmap2[a] == -1) {
      pmap2[a] = b;
      mapped2.push_back(a);
    } else if (pmap2[a] != b) {
      continue;
    }
    if (!close_partial(A, B, pmap2, mapped2)) continue;
    iso_search_all(A, B, gens, next + 1, pmap2, mapped2, out);
  }
}

}  // namespace

std::vector<GroupHom> all_isomorphisms(const GroupPtr& A, const GroupPtr& B) {
  std::vector<GroupHom> res;
  if (A->order() != B->order() || A->num_classes() != B->num_classes() ||
      A->exponent() != B->exponent())
    return res;
  std::vector<int> gens;
  {
    Subgroup cur = trivial_subgroup();
    for (int e = 0; e < A->order(); ++e) {
      if (cur.contains(e)) continue;
      gens.push_back(e);
      std::vector<int> seed = cur.elems;
      seed.push_back(e);
      cur = closure(*A, std::move(seed));
      if (cur.order() == A->order()) break;
    }
  }
  std::vector<int> pmap(A->order(), -1);
  std::vector<int> mapped{0};
  pmap[0] = 0;
  std::vector<std::vector<int>> maps;
  iso_search_all(*A, *B, gens, 0, pmap, mapped, maps);
  for (auto& m : maps) res.push_back(GroupHom{A, B, std::move(m)});
  return res;
}

namespace {
ProductGroup direct_product_uncached(const GroupPtr& A, const GroupPtr& B);
}  // namespace

ProductGroup direct_product(const GroupPtr& A, const GroupPtr& B) {
  static std::map<std::pair<const FiniteGroup*, const FiniteGroup*>,
                  ProductGroup>
      cache;
  static std::mutex mu;
  std::pair<const FiniteGroup*, const FiniteGroup*> key{A.get(), B.get()};
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  ProductGroup P = direct_product_uncached(A, B);
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(key, std::move(P)).first->second;
}

namespace {
ProductGroup direct_product_uncached(const GroupPtr& A, const GroupPtr& B) {
  int dA = A->degree(), dB = B->degree();
  std::vector<Permutation> gens;
  for (int gi : A->generator_indices()) {
    Permutation p = Permutation::identity(dA + dB);
    for (int i = 0; i < dA; ++i) p.img[i] = A->perm(gi).img[i];
    gens.push_back(std::move(p));
  }
  for (int gi : B->generator_indices()) {
    Permutation p = Permutation::identity(dA + dB);
    for (int i = 0; i < dB; ++i) p.img[dA + i] = B->perm(gi).img[i] + dA;
    gens.push_back(std::move(p));
  }
  ProductGroup P;
  P.left = A;
  P.right = B;
  std::string nm = A->name() + "x" + B->name();
  P.grp = FiniteGroup::from_generators(gens, nm);
  if (P.grp->order() != A->order() * B->order())
    throw std::logic_error("direct_product: order mismatch");
  P.pair_idx.assign(static_cast<std::size_t>(A->order()) * B->order(), -1);
  P.left_of.assign(P.grp->order(), -1);
  P.right_of.assign(P.grp->order(), -1);
  for (int e = 0; e < P.grp->order(); ++e) {
    const Permutation& p = P.grp->perm(e);
    Permutation pa, pb;
    pa.img.assign(p.img.begin(), p.img.begin() + dA);
    pb.img.resize(dB);
    for (int i = 0; i < dB; ++i) pb.img[i] = p.img[dA + i] - dA;
    int a = A->index_of(pa), b = B->index_of(pb);
    P.left_of[e] = a;
    P.right_of[e] = b;
    P.pair_idx[static_cast<std::size_t>(a) * B->order() + b] = e;
  }
  return P;
}
}  // namespace

GroupPtr cyclic_group(int n) {
  if (n < 1) throw std::invalid_argument("cyclic_group: n >= 1");
  Permutation p;
  p.img.resize(n);
  for (int i = 0; i < n; ++i) p.img[i] = (i + 1) % n;
  return FiniteGroup::from_generators({p}, "C" + std::to_string(n));
}

namespace {

// Group of order 2m with presentation a^m = 1, b^2 = a^t, a^b = a^s,
// realized by its left regular representation on pairs (i, j) -> i + m*j.
GroupPtr bi_presentation_group(int m, int t, int s, const std::string& name) {
  auto smod = [&](long x) { return static_cast<int>(((x % m) + m) % m); };
  Permutation a, b;
  a.img.resize(2 * m);
  b.img.resize(2 * m);
  for (int j = 0; j < 2; ++j)
    for (int i = 0; i < m; ++i) {
      a.img[i + m * j] = smod(i + 1) + m * j;
      // b * a^i b^j = a^{s i} b^{1+j}; fold b^2 = a^t when j = 1
      int pt;
      if (j == 0)
        pt = smod(static_cast<long>(s) * i) + m;
      else
        pt = smod(static_cast<long>(s) * i + t);
      b.img[i + m * j] = pt;
    }
  auto G = FiniteGroup::from_generators({a, b}, name);
  if (G->order() != 2 * m)
    throw std::logic_error("bi_presentation_group: wrong order for " + name);
  return G;
}

bool is_power_of_two(int n) { return n >= 1 && (n & (n - 1)) == 0; }

}  // namespace

GroupPtr dihedral_group(int order) {
  if (order < 4 || order % 2 != 0)
    throw std::invalid_argument("dihedral_group: even order >= 4 required");
  return bi_presentation_group(order / 2, 0, -1, "D" + std::to_string(order));
}

GroupPtr semidihedral_group(int order) {
  if (!is_power_of_two(order) || order < 16)
    throw std::invalid_argument("semidihedral_group: order 2^k >= 16 required");
  int m = order / 2;
  return bi_presentation_group(m, 0, m / 2 - 1, "SD" + std::to_string(order));
}

GroupPtr quaternion_group(int order) {
  if (!is_power_of_two(order) || order < 8)
    throw std::invalid_argument("quaternion_group: order 2^k >= 8 required");
  int m = order / 2;
  return bi_presentation_group(m, m / 2, -1, "Q" + std::to_string(order));
}

namespace {

GroupPtr construct_atom(const std::string& atom) {
  if (atom.rfind("perm:", 0) == 0) {
    std::string body = atom.substr(5);
    if (body.size() < 2 || body.front() != '[' || body.back() != ']')
      throw std::invalid_argument("group spec: perm:[...] expected");
    body = body.substr(1, body.size() - 2);
    std::vector<std::string> parts;
    std::stringstream ss(body);
    std::string tok;
    while (std::getline(ss, tok, ';')) parts.push_back(tok);
    if (parts.empty()) throw std::invalid_argument("group spec: no generators");
    int deg = 0;
    std::vector<Permutation> gens;
    for (const auto& p : parts) {
      Permutation q = parse_cycles(p);
      deg = std::max(deg, q.degree());
      gens.push_back(std::move(q));
    }
    for (auto& q : gens)
      while (q.degree() < deg) q.img.push_back(q.degree());
    return FiniteGroup::from_generators(gens, atom);
  }
  auto num_after = [&](std::size_t k) {
    if (atom.size() <= k) throw std::invalid_argument("group spec: " + atom);
    for (std::size_t i = k; i < atom.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(atom[i])))
        throw std::invalid_argument("group spec: " + atom);
    return std::stoi(atom.substr(k));
  };
  if (atom.rfind("SD", 0) == 0) return semidihedral_group(num_after(2));
  if (atom[0] == 'C') return cyclic_group(num_after(1));
  if (atom[0] == 'D') return dihedral_group(num_after(1));
  if (atom[0] == 'Q') return quaternion_group(num_after(1));
  throw std::invalid_argument("group spec: " + atom);
}

}  // namespace

GroupPtr construct_named(const std::string& spec) {
  std::string key;
  for (char c : spec)
    if (!std::isspace(static_cast<unsigned char>(c))) key.push_back(c);
  if (key.empty()) throw std::invalid_argument("group spec: empty");

  static std::map<std::string, GroupPtr> registry;
  static std::mutex mu;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = registry.find(key);
    if (it != registry.end()) return it->second;
  }
  // split on top-level 'x'; perm atoms contain no 'x'
  std::vector<std::string> atoms;
  if (key.rfind("perm:", 0) == 0) {
    atoms.push_back(key);
  } else {
    std::stringstream ss(key);
    std::string tok;
    while (std::getline(ss, tok, 'x')) {
      if (tok.empty()) throw std::invalid_argument("group spec: " + spec);
      atoms.push_back(tok);
    }
  }
  GroupPtr G = construct_atom(atoms[0]);
  for (std::size_t i = 1; i < atoms.size(); ++i)
    G = direct_product(G, construct_atom(atoms[i])).grp;
  {
    std::lock_guard<std::mutex> lock(mu);
    registry.emplace(key, G);
  }
  return G;
}

std::optional<int> is_generalized_quaternion(const GroupPtr& G) {
  int n = G->order();
  if (n < 8 || !is_power_of_two(n)) return std::nullopt;
  if (!is_p_group(*G, 2)) return std::nullopt;
  int involutions = 0;
  bool cyclic = false;
  for (int e = 0; e < n; ++e) {
    if (G->element_order(e) == 2) ++involutions;
    if (G->element_order(e) == n) cyclic = true;
  }
  if (cyclic || involutions != 1) return std::nullopt;
  int k = 0;
  while ((1 << k) < n) ++k;
  return k;
}

std::optional<std::pair<Subgroup, Subgroup>> quaternion_subquotient(
    const GroupPtr& G, int n) {
  int target = 1 << n;
  for (const auto& [H, N] : sections(G)) {
    if (H.order() / N.order() != target) continue;
    SectionModel S = section_model(G, H, N);
    if (is_generalized_quaternion(S.HmodN.quo) == n) return std::pair{H, N};
  }
  return std::nullopt;
}

std::vector<int> prime_divisors(int n) {
  std::vector<int> ps;
  for (int p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      ps.push_back(p);
      while (n % p == 0) n /= p;
    }
  if (n > 1) ps.push_back(n);
  return ps;
}

bool is_p_group(const FiniteGroup& G, int p) {
  int n = G.order();
  if (n == 1) return true;
  while (n % p == 0) n /= p;
  return n == 1;
}

ElementaryClassification classify_elementary(const GroupPtr& G, int p) {
  ElementaryClassification R;
  int n = G->order();
  auto part = [&](int q) {
    int v = 1;
    int m = n;
    while (m % q == 0) {
      m /= q;
      v *= q;
    }
    return v;
  };
  bool cyclic = false;
  for (int e = 0; e < n; ++e)
    if (G->element_order(e) == n) cyclic = true;

  std::vector<int> qs = prime_divisors(n);
  // q = 0 stands for any prime not dividing |G|; the conditions then
  // degenerate to "G is cyclic".
  if (cyclic) {
    R.quasi_elementary_for.insert(0);
    R.elementary_for.insert(0);
    R.Kp_elementary_for.insert(0);
  }
  for (int q : qs) {
    int qpart = part(q);
    int copart = n / qpart;
    // cyclic normal subgroup of order = q'-part
    for (const Subgroup& N : normal_subgroups(G)) {
      if (N.order() != copart) continue;
      bool is_cyc = false;
      for (int x : N.elems)
        if (G->element_order(x) == copart) is_cyc = true;
      if (!is_cyc && copart > 1) continue;
      R.quasi_elementary_for.insert(q);
      // elementary: a full Sylow q-subgroup centralizes N
      Subgroup C = centralizer_of_set(*G, N.elems);
      if (part(q) == 1 || C.order() % qpart == 0) {
        int cq = 1, co = C.order();
        while (co % q == 0) {
          co /= q;
          cq *= q;
        }
        if (cq == qpart) R.elementary_for.insert(q);
      }
      // K_p-elementary: Sylow q centralizes the p-complement of N
      std::vector<int> podd_part;
      int nco = N.order();
      int pc = nco;
      if (p > 1)
        while (pc % p == 0) pc /= p;  // order of p-complement of N
      for (int x : N.elems)
        if (pc % G->element_order(x) == 0) podd_part.push_back(x);
      // p-complement of the cyclic group N: elements of order dividing pc
      Subgroup C2 = centralizer_of_set(*G, podd_part);
      int cq = 1, co = C2.order();
      while (co % q == 0) {
        co /= q;
        cq *= q;
      }
      if (cq == qpart) R.Kp_elementary_for.insert(q);
    }
    for (const Subgroup& N : normal_subgroups(G))
      if (N.order() == qpart) R.normal_sylow.insert(q);
  }
  return R;
}

bool has_normal_rank_one(const GroupPtr& P, int p) {
  if (!is_p_group(*P, p)) throw std::invalid_argument("has_normal_rank_one: not a p-group");
  for (const Subgroup& N : normal_subgroups(P)) {
    if (N.order() != p * p) continue;
    bool elem_ab = true;
    for (int x : N.elems)
      if (x != 0 && P->element_order(x) != p) elem_ab = false;
    if (elem_ab) return false;  // witness C_p x C_p
  }
  return true;
}

Subgroup sylow_subgroup(const GroupPtr& G, int p) {
  int qpart = 1, n = G->order();
  while (n % p == 0) {
    n /= p;
    qpart *= p;
  }
  for (const Subgroup& S : all_subgroups(G))
    if (S.order() == qpart) return S;
  throw std::logic_error("sylow_subgroup: not found");
}

}  // namespace bfk
