#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bfk/cyclotomic.hpp"
#include "bfk/perm.hpp"
#include "bfk/zlinalg.hpp"

namespace bfk {

class CharacterTable;
using TablePtr = std::shared_ptr<const CharacterTable>;

/// Class function on a group, one exact cyclotomic value per conjugacy
/// class in the canonical class order.
struct ClassFunction {
  GroupPtr group;
  std::vector<Cyclo> values;

  const Cyclo& at_class(int c) const { return values[c]; }
  const Cyclo& at_elem(int e) const { return values[group->class_of(e)]; }
  bool operator==(const ClassFunction& o) const;
};

ClassFunction operator+(const ClassFunction& a, const ClassFunction& b);
ClassFunction operator-(const ClassFunction& a, const ClassFunction& b);
ClassFunction operator*(const ClassFunction& a, const ClassFunction& b);
ClassFunction scale(const Int& k, const ClassFunction& a);

/// Element of the virtual character ring in coordinates over the
/// canonical Irr order of the group's table.
struct VirtualCharacter {
  GroupPtr group;
  std::vector<Int> coeffs;

  bool is_zero() const;
  bool operator==(const VirtualCharacter& o) const = default;
};

VirtualCharacter operator+(const VirtualCharacter& a,
                           const VirtualCharacter& b);
VirtualCharacter operator-(const VirtualCharacter& a,
                           const VirtualCharacter& b);
VirtualCharacter scale(const Int& k, const VirtualCharacter& a);

/// Exact complex character table computed by the Dixon-Schneider method
/// (eigenvectors of class-algebra matrices over a prime field, lifted to
/// cyclotomic integers by the power-map discrete Fourier transform).
/// Rows are sorted canonically by (degree, lexicographic values), so all
/// coordinate lattices downstream are deterministic.
class CharacterTable {
 public:
  /// Cached per group object.
  static TablePtr of(const GroupPtr& G);

  const GroupPtr& group() const { return group_; }
  int num_classes() const { return static_cast<int>(irr_.size()); }
  int conductor() const { return conductor_; }
  const std::vector<std::vector<Cyclo>>& irr() const { return irr_; }
  const Cyclo& value(int chi, int cls) const { return irr_[chi][cls]; }
  Int degree(int chi) const;

  ClassFunction row(int chi) const;
  ClassFunction trivial_character() const;
  ClassFunction to_class_function(const VirtualCharacter& v) const;
  /// Exact Irr coordinates via inner products; nullopt when any
  /// coordinate fails to be a rational integer.
  std::optional<VirtualCharacter> to_virtual(const ClassFunction& f) const;

 private:
  CharacterTable() = default;
  GroupPtr group_;
  int conductor_ = 1;
  std::vector<std::vector<Cyclo>> irr_;
};

/// Hermitian pairing (1/|G|) sum size(c) a(c) conj(b(c)), exact.
Cyclo inner_product(const ClassFunction& a, const ClassFunction& b);

/// Kernel of a genuine character: union of classes where the value
/// equals the degree. Throws if the Irr coefficients are not all >= 0.
Subgroup kernel_of(const ClassFunction& f);
Subgroup kernel_of(const VirtualCharacter& v);
bool is_faithful(const ClassFunction& f);
bool is_faithful(const VirtualCharacter& v);

/// All degree-1 characters of H with values in mu_{p'} (order in the
/// dual group prime to p).
std::vector<ClassFunction> linear_characters_into_mu_podd(const GroupPtr& H,
                                                          int p);

/// Orbit of Irr under a Galois automorphism set; base field Q when
/// p = 0, K = Q(mu_{p'}) otherwise.
struct GaloisOrbit {
  std::vector<int> members;      // sorted row indices
  VirtualCharacter class_sum;    // sum of the members
};
std::vector<GaloisOrbit> galois_orbits(const TablePtr& table, int p);

/// Both orthogonality relations, exactly; degree sum-of-squares.
bool verify_orthogonality(const CharacterTable& t);

/// Deterministic JSON dump (classes, rows, power maps) and its inverse;
/// the round trip reproduces the table values exactly.
std::string table_to_json(const CharacterTable& t);
bool json_matches_table(const std::string& json, const CharacterTable& t);

}  // namespace bfk
