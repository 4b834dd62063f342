#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

namespace bfk {

/// Bijection on {0, ..., degree-1}.
struct Permutation {
  std::vector<int> img;

  int degree() const { return static_cast<int>(img.size()); }
  int operator()(int x) const { return img[x]; }
  static Permutation identity(int degree);
  Permutation compose(const Permutation& other) const;  // this after other
  Permutation inverse() const;
  bool is_identity() const;
  bool operator==(const Permutation& o) const = default;
  auto operator<=>(const Permutation& o) const = default;
};

/// Parses disjoint-cycle notation with 1-based points, e.g. "(1,2,3)(4,5)".
Permutation parse_cycles(const std::string& text, int degree_hint = 0);

struct ConjClass {
  int rep;                  // element index
  int size;
  int element_order;
  std::vector<int> members;  // sorted element indices
};

/// Concrete finite group given by permutation generators. Elements are
/// enumerated canonically (BFS from the identity over the generator list),
/// and the multiplication table, inverses, conjugacy classes and power
/// maps are precomputed at construction. Immutable afterwards.
class FiniteGroup : public std::enable_shared_from_this<FiniteGroup> {
 public:
  static std::shared_ptr<FiniteGroup> from_generators(
      std::vector<Permutation> gens, std::string name = "");

  int order() const { return n_; }
  int degree() const { return degree_; }
  const std::string& name() const { return name_; }

  const Permutation& perm(int i) const { return elems_[i]; }
  int mul(int a, int b) const { return mul_[a * n_ + b]; }
  int inv(int a) const { return inv_[a]; }
  int identity() const { return 0; }
  int index_of(const Permutation& p) const;  // -1 if absent
  int conjugate(int x, int g) const {        // g x g^-1
    return mul(mul(g, x), inv_[g]);
  }
  int power(int x, long k) const;
  int element_order(int x) const { return elem_order_[x]; }

  const std::vector<int>& generator_indices() const { return gen_idx_; }
  /// BFS word data: element i > 0 satisfies i = bfs_parent(i) * generator
  /// bfs_gen(i). Used to extend generator images to homomorphisms.
  int bfs_parent(int i) const { return bfs_parent_[i]; }
  int bfs_gen(int i) const { return bfs_gen_[i]; }

  int num_classes() const { return static_cast<int>(classes_.size()); }
  const ConjClass& cls(int c) const { return classes_[c]; }
  int class_of(int elem) const { return class_of_[elem]; }
  int exponent() const { return exponent_; }
  /// Class of rep^k for the representative of class c (well defined).
  int class_power(int c, long k) const;

  bool is_abelian() const;

 private:
  FiniteGroup() = default;
  int n_ = 0;
  int degree_ = 0;
  std::string name_;
  std::vector<Permutation> elems_;
  std::vector<uint16_t> mul_;
  std::vector<int> inv_;
  std::vector<int> elem_order_;
  std::vector<int> gen_idx_;
  std::vector<int> bfs_parent_, bfs_gen_;
  std::unordered_map<std::string, int> index_;  // packed image bytes -> idx
  std::vector<ConjClass> classes_;
  std::vector<int> class_of_;
  int exponent_ = 1;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// Subgroup of a fixed parent group, stored by its sorted element list.
struct Subgroup {
  std::vector<int> elems;

  int order() const { return static_cast<int>(elems.size()); }
  bool contains(int e) const;
  bool operator==(const Subgroup& o) const = default;
  bool operator<(const Subgroup& o) const { return elems < o.elems; }
};

Subgroup closure(const FiniteGroup& G, std::vector<int> seed);
Subgroup conjugate_subgroup(const FiniteGroup& G, const Subgroup& S, int g);
bool is_subgroup_of(const Subgroup& small, const Subgroup& big);
bool is_normal(const FiniteGroup& G, const Subgroup& S);
Subgroup normalizer(const FiniteGroup& G, const Subgroup& S);
Subgroup centralizer_of_set(const FiniteGroup& G, const std::vector<int>& set);
Subgroup center(const FiniteGroup& G);
Subgroup derived_subgroup(const FiniteGroup& G, const Subgroup& S);
Subgroup whole_group(const FiniteGroup& G);
Subgroup trivial_subgroup();

/// All subgroups (exhaustive layered closure; error beyond the order
/// bound). The result is cached per group object.
const std::vector<Subgroup>& all_subgroups(const GroupPtr& G);

struct SubgroupClasses {
  std::vector<int> rep_index;               // into all_subgroups
  std::vector<std::vector<int>> members;    // class -> subgroup indices
  std::vector<int> class_of;                // subgroup index -> class
};
const SubgroupClasses& subgroup_classes(const GroupPtr& G);
std::vector<Subgroup> subgroup_class_reps(const GroupPtr& G);
std::vector<Subgroup> normal_subgroups(const GroupPtr& G);

/// Order bound for exhaustive enumeration; BFK_ORDER_BOUND overrides.
int order_bound();

/// Quotient G/N acting faithfully (regularly) on the cosets of N.
struct QuotientModel {
  GroupPtr parent;
  Subgroup N;
  GroupPtr quo;
  std::vector<int> proj;     // parent element -> quotient element
  std::vector<int> section;  // quotient element -> coset representative
};
QuotientModel quotient(const GroupPtr& G, const Subgroup& N);

/// Abstract model of a subgroup (regular representation) together with
/// the embedding into the parent.
struct SubgroupModel {
  GroupPtr parent;
  Subgroup sub;
  GroupPtr grp;
  std::vector<int> to_parent;    // grp element -> parent element
  std::vector<int> from_parent;  // parent element -> grp element (-1 outside)
};
SubgroupModel subgroup_model(const GroupPtr& G, const Subgroup& S);

/// Section H/N of G: abstract H with a distinguished normal subgroup and
/// the associated quotient.
struct SectionModel {
  SubgroupModel H;
  QuotientModel HmodN;  // quotient of H.grp by the image of N
};
SectionModel section_model(const GroupPtr& G, const Subgroup& H,
                           const Subgroup& N);

/// All sections (H, N), H over subgroup-conjugacy class representatives,
/// N over normal subgroups of H.
std::vector<std::pair<Subgroup, Subgroup>> sections(const GroupPtr& G);

struct GroupHom {
  GroupPtr src, dst;
  std::vector<int> map;

  int operator()(int x) const { return map[x]; }
  bool is_bijective() const;
};
/// Extends generator images multiplicatively; nullopt if not a hom.
std::optional<GroupHom> hom_from_generator_images(
    const GroupPtr& src, const GroupPtr& dst, const std::vector<int>& images);
std::optional<GroupHom> find_isomorphism(const GroupPtr& A, const GroupPtr& B);
bool is_isomorphic(const GroupPtr& A, const GroupPtr& B);
/// Every isomorphism A -> B (empty when none).
std::vector<GroupHom> all_isomorphisms(const GroupPtr& A, const GroupPtr& B);

/// Direct product with coordinate bookkeeping (acts on the disjoint
/// union of the factors' points).
struct ProductGroup {
  GroupPtr grp;
  GroupPtr left, right;
  std::vector<int> pair_idx;  // a * |right| + b -> product element
  std::vector<int> left_of, right_of;

  int pair(int a, int b) const { return pair_idx[a * right->order() + b]; }
};
ProductGroup direct_product(const GroupPtr& A, const GroupPtr& B);

// Named constructions.
GroupPtr cyclic_group(int n);
GroupPtr dihedral_group(int order);        // order = 2m, m >= 2
GroupPtr semidihedral_group(int order);    // order = 2^k >= 16
GroupPtr quaternion_group(int order);      // order = 2^k >= 8
/// Group-spec grammar: C<n>, D<n>, SD<n>, Q<n>, infix x for direct
/// products, or perm:[(cycles);(cycles);...] with 1-based points.
/// Results are cached by normalized spec.
GroupPtr construct_named(const std::string& spec);

std::optional<int> is_generalized_quaternion(const GroupPtr& G);
/// Witness section (H, N) with H/N isomorphic to Q_{2^n}, if any.
std::optional<std::pair<Subgroup, Subgroup>> quaternion_subquotient(
    const GroupPtr& G, int n);

struct ElementaryClassification {
  std::set<int> quasi_elementary_for;
  std::set<int> elementary_for;
  std::set<int> Kp_elementary_for;
  std::set<int> normal_sylow;
};
ElementaryClassification classify_elementary(const GroupPtr& G, int p);

bool is_p_group(const FiniteGroup& G, int p);
/// True iff no normal subgroup of P is elementary abelian of rank 2.
bool has_normal_rank_one(const GroupPtr& P, int p);
Subgroup sylow_subgroup(const GroupPtr& G, int p);

std::vector<int> prime_divisors(int n);

}  // namespace bfk
