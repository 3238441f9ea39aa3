#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <vector>

#include "covacap/errors.hpp"
#include "covacap/finite_group.hpp"

using namespace covacap;

TEST_CASE("cyclic groups have the expected arithmetic") {
  const FiniteGroup z6 = FiniteGroup::cyclic(6);
  CHECK(z6.order() == 6);
  CHECK(z6.identity() == 0);
  CHECK(z6.mul(4, 5) == 3);
  CHECK(z6.inverse(2) == 4);
  CHECK(z6.inverse(0) == 0);
}

TEST_CASE("from_cayley_table rejects non-groups") {
  // closure violated
  CHECK_THROWS_AS(FiniteGroup::from_cayley_table({{0, 1}, {1, 2}}), NotAGroup);
  // no two-sided identity (a 3x3 latin square where no row is the identity)
  CHECK_THROWS_AS(
      FiniteGroup::from_cayley_table({{1, 0, 2}, {0, 2, 1}, {2, 1, 0}}),
      NotAGroup);
  // identity may sit at any index; this is Z2 with the identity relabeled to 1
  CHECK(FiniteGroup::from_cayley_table({{1, 0}, {0, 1}}).identity() == 1);
  // non-associative latin square of order 5 (smallest possible)
  const std::vector<std::vector<int>> loop = {{0, 1, 2, 3, 4},
                                              {1, 0, 3, 4, 2},
                                              {2, 4, 0, 1, 3},
                                              {3, 2, 4, 0, 1},
                                              {4, 3, 1, 2, 0}};
  CHECK_THROWS_AS(FiniteGroup::from_cayley_table(loop), NotAGroup);
  // a valid table round-trips
  const FiniteGroup z2 = FiniteGroup::cyclic(2);
  const FiniteGroup again = FiniteGroup::from_cayley_table(z2.cayley());
  CHECK(again.same_table(z2));
}

TEST_CASE("direct products use the i*|B|+j index convention") {
  const FiniteGroup z2 = FiniteGroup::cyclic(2);
  const FiniteGroup z3 = FiniteGroup::cyclic(3);
  const FiniteGroup g = FiniteGroup::direct_product(z2, z3);
  CHECK(g.order() == 6);
  // (1,2) * (1,2) = (0,1): index 1*3+2 = 5, product index 0*3+1 = 1
  CHECK(g.mul(5, 5) == 1);
  CHECK(g.identity() == 0);
  CHECK(g.inverse(5) == 4);  // (1,2)^-1 = (1,1)
}

TEST_CASE("dihedral groups satisfy x y = y x^-1") {
  const FiniteGroup d4 = FiniteGroup::dihedral(4);
  CHECK(d4.order() == 8);
  // index convention 2a + b for x^a y^b
  const int x = 2, y = 1;
  CHECK(d4.mul(x, y) == d4.mul(y, d4.inverse(x)));
  CHECK(d4.mul(y, y) == 0);
  // x has order 4
  int p = x;
  int ord = 1;
  while (p != 0) {
    p = d4.mul(p, x);
    ++ord;
  }
  CHECK(ord == 4);
}

TEST_CASE("make_subgroup validates closure and membership") {
  const FiniteGroup z6 = FiniteGroup::cyclic(6);
  const Subgroup t = make_subgroup(z6, {0, 2, 4});
  CHECK(t.order() == 3);
  CHECK(t.contains(4));
  CHECK(!t.contains(3));
  CHECK_THROWS_AS(make_subgroup(z6, {0, 2}), NotASubgroup);     // not closed
  CHECK_THROWS_AS(make_subgroup(z6, {2, 4}), NotASubgroup);     // no identity
  CHECK_THROWS_AS(make_subgroup(z6, {0, 7}), NotASubgroup);     // out of range
}

TEST_CASE("normal abelian checks produce witnesses") {
  const FiniteGroup d4 = FiniteGroup::dihedral(4);
  // rotations form a normal abelian subgroup
  const Subgroup rot = make_subgroup(d4, {0, 2, 4, 6});
  CHECK(is_normal_abelian(d4, rot));

  // the reflection pair {e, y} is abelian but not normal in D4
  const Subgroup refl = make_subgroup(d4, {0, 1});
  const NormalAbelianReport rep = check_normal_abelian(d4, refl);
  CHECK(rep.is_subgroup);
  CHECK(rep.abelian);
  CHECK(!rep.normal);
  REQUIRE(rep.normality_witness.has_value());
  const auto [g, t] = *rep.normality_witness;
  CHECK(!refl.contains(d4.mul(d4.mul(g, t), d4.inverse(g))));

  // the whole dihedral group is normal but not abelian
  std::vector<int> all(8);
  for (int i = 0; i < 8; ++i) all[static_cast<std::size_t>(i)] = i;
  const NormalAbelianReport whole = check_normal_abelian(d4, make_subgroup(d4, all));
  CHECK(whole.normal);
  CHECK(!whole.abelian);
  CHECK(whole.commutation_witness.has_value());
}

TEST_CASE("quotients partition the group into left cosets") {
  const FiniteGroup z3sq =
      FiniteGroup::direct_product(FiniteGroup::cyclic(3), FiniteGroup::cyclic(3));
  const Subgroup t = make_subgroup(z3sq, {0, 3, 6});
  const QuotientStructure q = quotient(z3sq, t);
  CHECK(q.coset_count() == 3);
  CHECK(q.blocks == std::vector<std::vector<int>>{{0, 3, 6}, {1, 4, 7}, {2, 5, 8}});
  CHECK(q.representatives == std::vector<int>{0, 1, 2});
  for (int g = 0; g < 9; ++g) {
    const int b = q.coset_of[static_cast<std::size_t>(g)];
    const auto& blk = q.blocks[static_cast<std::size_t>(b)];
    CHECK(std::find(blk.begin(), blk.end(), g) != blk.end());
  }
}

TEST_CASE("subgroup closure grows a generating set") {
  const FiniteGroup z6 = FiniteGroup::cyclic(6);
  CHECK(subgroup_closure(z6, {2}) == std::vector<int>{0, 2, 4});
  CHECK(subgroup_closure(z6, {}) == std::vector<int>{0});
  CHECK(subgroup_closure(z6, {1}).size() == 6);
}

TEST_CASE("normal abelian subgroup enumeration: index 3 in Z3 x Z3") {
  const FiniteGroup g =
      FiniteGroup::direct_product(FiniteGroup::cyclic(3), FiniteGroup::cyclic(3));
  const std::vector<Subgroup> subs = enumerate_normal_abelian_subgroups(g, 3);
  REQUIRE(subs.size() == 4);
  CHECK(subs[0].members == std::vector<int>{0, 1, 2});
  CHECK(subs[1].members == std::vector<int>{0, 3, 6});
  CHECK(subs[2].members == std::vector<int>{0, 4, 8});
  CHECK(subs[3].members == std::vector<int>{0, 5, 7});
}

TEST_CASE("normal abelian subgroup enumeration: index 2 in Z2 x Z2") {
  const FiniteGroup g =
      FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2));
  const std::vector<Subgroup> subs = enumerate_normal_abelian_subgroups(g, 2);
  REQUIRE(subs.size() == 3);
  CHECK(subs[0].members == std::vector<int>{0, 1});
  CHECK(subs[1].members == std::vector<int>{0, 2});
  CHECK(subs[2].members == std::vector<int>{0, 3});
}

TEST_CASE("enumeration respects normality: D4 at index 4") {
  const FiniteGroup d4 = FiniteGroup::dihedral(4);
  // order-2 subgroups of D4: center {0, x^2} is normal; the four reflection
  // pairs are not
  const std::vector<Subgroup> subs = enumerate_normal_abelian_subgroups(d4, 4);
  REQUIRE(subs.size() == 1);
  CHECK(subs[0].members == std::vector<int>{0, 4});  // {e, x^2}
}
