#pragma once

#include <optional>
#include <string>
#include <vector>

#include "covacap/errors.hpp"

namespace covacap {

// Finite group given by its Cayley table.  Element i*|B|+j conventions for
// products, 2a+b for dihedral x^a y^b, are fixed here and relied on by the
// representation builders.
class FiniteGroup {
 public:
  // Empty group; a usable instance always comes from one of the named
  // constructors below, which are the only validated entry points.
  FiniteGroup() = default;

  // Validates closure, associativity, identity and inverses; throws NotAGroup
  // with a witness triple otherwise.
  static FiniteGroup from_cayley_table(std::vector<std::vector<int>> table,
                                       std::vector<std::string> labels = {});
  static FiniteGroup cyclic(int n);
  static FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);
  // Dihedral group of order 2n: x^n = y^2 = e, x y = y x^{-1}; x^a y^b has
  // index 2a+b.
  static FiniteGroup dihedral(int n);

  int order() const { return static_cast<int>(table_.size()); }
  int mul(int a, int b) const { return table_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]; }
  int identity() const { return identity_; }
  int inverse(int g) const { return inverse_[static_cast<std::size_t>(g)]; }
  const std::vector<std::vector<int>>& cayley() const { return table_; }
  const std::string& label(int g) const { return labels_[static_cast<std::size_t>(g)]; }
  const std::vector<std::string>& labels() const { return labels_; }

  bool same_table(const FiniteGroup& o) const { return table_ == o.table_; }

 private:
  std::vector<std::vector<int>> table_;
  std::vector<int> inverse_;
  std::vector<std::string> labels_;
  int identity_ = 0;
};

// Sorted member list of a subgroup of some parent group.
struct Subgroup {
  std::vector<int> members;
  int order() const { return static_cast<int>(members.size()); }
  bool contains(int g) const;
};

// Validates that `members` forms a subgroup; throws NotASubgroup with the
// offending pair/element otherwise.
Subgroup make_subgroup(const FiniteGroup& g, std::vector<int> members);

struct NormalAbelianReport {
  bool is_subgroup = false;
  bool normal = false;
  bool abelian = false;
  // witnesses, valid when the corresponding flag is false
  std::optional<std::pair<int, int>> normality_witness;  // (g, t): g t g^-1 not in T
  std::optional<std::pair<int, int>> commutation_witness;
  bool ok() const { return is_subgroup && normal && abelian; }
};

NormalAbelianReport check_normal_abelian(const FiniteGroup& g,
                                         const Subgroup& t);
bool is_normal_abelian(const FiniteGroup& g, const Subgroup& t);

// Left-coset partition of G by T.  Representatives are the smallest element
// index of each coset; blocks are listed in representative order.
struct QuotientStructure {
  std::vector<std::vector<int>> blocks;
  std::vector<int> representatives;
  std::vector<int> coset_of;  // element index -> block index
  int coset_count() const { return static_cast<int>(blocks.size()); }
};

QuotientStructure quotient(const FiniteGroup& g, const Subgroup& t);

// Closure of a generating set inside G.
std::vector<int> subgroup_closure(const FiniteGroup& g,
                                  const std::vector<int>& generators);

// All normal abelian subgroups T with |G|/|T| == index, deterministically
// ordered by their sorted member lists.  Exhaustive for |G| <= 64 (the whole
// subgroup lattice is walked, adjoining one element at a time).
std::vector<Subgroup> enumerate_normal_abelian_subgroups(const FiniteGroup& g,
                                                         int index);

}  // namespace covacap
