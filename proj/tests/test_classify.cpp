#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <variant>

#include "coxgalaxy/classify.hpp"
#include "coxgalaxy/coxsys.hpp"
#include "coxgalaxy/oracle.hpp"
#include "helpers.hpp"

using namespace coxgalaxy;
using namespace coxgalaxy::testutil;

namespace {

GeneratorSubset all_of(const CoxeterMatrix& m) {
  GeneratorSubset s(m.rank());
  for (int i = 0; i < m.rank(); ++i) s[i] = i;
  return s;
}

std::optional<SphericalType> type_of(const CoxeterMatrix& m) {
  return spherical_type(m, all_of(m));
}

}  // namespace

TEST_CASE("irreducible type recognition") {
  CHECK(*type_of(type_a(1)) == type_A(1));
  CHECK(*type_of(type_a(4)) == type_A(4));
  CHECK(*type_of(type_b(2)) == type_B(2));
  CHECK(*type_of(type_b(6)) == type_B(6));
  CHECK(*type_of(type_d(4)) == type_D(4));
  CHECK(*type_of(type_d(7)) == type_D(7));
  CHECK(*type_of(type_e(6)) == type_E(6));
  CHECK(*type_of(type_e(7)) == type_E(7));
  CHECK(*type_of(type_e(8)) == type_E(8));
  CHECK(*type_of(type_f4()) == type_F4());
  CHECK(*type_of(type_h(3)) == type_H(3));
  CHECK(*type_of(type_h(4)) == type_H(4));
  CHECK(*type_of(dihedral(7)) == type_I2(7));

  // Small coincidences normalize to one name.
  CHECK(*type_of(dihedral(3)) == type_A(2));
  CHECK(*type_of(dihedral(4)) == type_B(2));
  CHECK(type_I2(3) == type_A(2));
  CHECK(type_I2(4) == type_B(2));
  CHECK(*type_of(type_d(3)) == type_A(3));
  CHECK(*type_of(triangle(3, 3, 2)) == type_A(3));

  CHECK(type_A(3).str() == "A3");
  CHECK(type_I2(7).str() == "I2(7)");
  CHECK(type_F4().str() == "F4");
}

TEST_CASE("non-spherical systems are rejected") {
  CHECK_FALSE(type_of(triangle(3, 3, 3)));     // affine
  CHECK_FALSE(type_of(path_system({4, 4})));   // affine
  CHECK_FALSE(type_of(path_system({5, 3, 3, 3})));  // hyperbolic
  CHECK_FALSE(type_of(dihedral(0)));
  CHECK_FALSE(type_of(triangle(2, 3, 7)));
  CHECK_FALSE(is_spherical(triangle(3, 3, 3)));
  CHECK(is_spherical(triangle(2, 3, 5)));
  REQUIRE_THROWS_AS(type_of(product({type_a(1), type_a(1)})), NotIrreducibleError);
}

TEST_CASE("orders of the irreducible types") {
  CHECK(*group_order(type_a(4)) == 120);
  CHECK(*group_order(type_b(5)) == 3840);
  CHECK(*group_order(type_d(5)) == 1920);
  CHECK(*group_order(type_e(6)) == 51840);
  CHECK(*group_order(type_e(7)) == 2903040);
  CHECK(*group_order(type_e(8)) == 696729600);
  CHECK(*group_order(type_f4()) == 1152);
  CHECK(*group_order(type_h(3)) == 120);
  CHECK(*group_order(type_h(4)) == 14400);
  CHECK(*group_order(dihedral(9)) == 18);
  CHECK(*group_order(product({type_b(3), type_a(1)})) == 96);
  CHECK_FALSE(group_order(triangle(3, 3, 3)));
  CHECK_FALSE(group_order(triangle(6, 0, 0)));
}

TEST_CASE("orders agree with coset enumeration") {
  std::vector<CoxeterMatrix> corpus{
      type_a(2), type_a(3),  type_a(4),  type_a(5),    type_b(2),    type_b(3),
      type_b(4), type_d(4),  type_d(5),  type_h(3),    type_f4(),    dihedral(5),
      dihedral(6), dihedral(12), dihedral(101), dihedral(1000),
      product({type_a(2), type_a(2)}), product({type_b(2), type_a(1), type_a(1)}),
      product({dihedral(7), type_a(3)})};
  for (const auto& m : corpus) {
    auto claimed = group_order(m);
    REQUIRE(claimed);
    auto enumerated = enumerate_group(m, *claimed * 4 + 1000);
    REQUIRE(enumerated);
    CHECK(*enumerated == *claimed);
  }
}

TEST_CASE("spherical decompositions") {
  auto dec = spherical_decomposition(product({type_b(3), type_a(1)}));
  REQUIRE(dec);
  REQUIRE(dec->size() == 2);
  std::vector<SphericalType> want{type_A(1), type_B(3)};
  std::sort(dec->begin(), dec->end());
  std::sort(want.begin(), want.end());
  CHECK(*dec == want);
  CHECK_FALSE(spherical_decomposition(triangle(6, 0, 0)));
  auto single = spherical_decomposition(type_h(4));
  REQUIRE(single);
  CHECK(single->size() == 1);
}

TEST_CASE("basic subsets are the maximal irreducible spherical pieces") {
  CoxeterMatrix star = triangle(6, 10, 0);  // hub 0, tips 1 and 2
  auto basics = basic_subsets(star);
  REQUIRE(basics.size() == 2);
  CHECK(basics[0].generators == GeneratorSubset{0, 1});
  CHECK(basics[0].type == type_I2(6));
  CHECK(basics[1].generators == GeneratorSubset{0, 2});
  CHECK(basics[1].type == type_I2(10));

  auto whole = basic_subsets(type_a(3));
  REQUIRE(whole.size() == 1);
  CHECK(whole[0].generators == GeneratorSubset{0, 1, 2});

  // The A1 factor never shows up: basic subsets have at least two members.
  auto prod = basic_subsets(product({type_b(3), type_a(1)}));
  REQUIRE(prod.size() == 1);
  CHECK(prod[0].type == type_B(3));

  auto affine = basic_subsets(triangle(3, 3, 3));
  CHECK(affine.size() == 3);
}

TEST_CASE("basic type compatibility pairs") {
  CHECK(basic_types_compatible(type_A(3), type_A(3)));
  CHECK(basic_types_compatible(type_A(3), type_B(3)));
  CHECK(basic_types_compatible(type_B(3), type_A(3)));
  CHECK(basic_types_compatible(type_D(5), type_B(5)));
  CHECK(basic_types_compatible(type_A(2), type_I2(6)));
  CHECK(basic_types_compatible(type_I2(5), type_I2(10)));
  CHECK(basic_types_compatible(type_I2(14), type_I2(7)));
  CHECK_FALSE(basic_types_compatible(type_A(2), type_A(3)));
  CHECK_FALSE(basic_types_compatible(type_B(4), type_D(4)));
  CHECK_FALSE(basic_types_compatible(type_B(3), type_B(5)));
  CHECK_FALSE(basic_types_compatible(type_I2(6), type_I2(10)));
  CHECK_FALSE(basic_types_compatible(type_I2(8), type_B(2)));
  CHECK_FALSE(basic_types_compatible(type_H(3), type_A(3)));
}

TEST_CASE("matching filter") {
  CHECK(std::holds_alternative<MatchingCompatible>(
      matching_filter(type_b(3), type_a(3))));
  CHECK(std::holds_alternative<MatchingCompatible>(matching_filter(
      product({type_b(3), type_a(1)}), product({type_a(3), type_a(1), type_a(1)}))));
  CHECK(std::holds_alternative<MatchingCompatible>(
      matching_filter(triangle(6, 10, 0), triangle(10, 6, 0))));

  auto bad = matching_filter(triangle(6, 10, 0), triangle(6, 14, 0));
  auto* inc = std::get_if<MatchingIncompatible>(&bad);
  REQUIRE(inc);
  CHECK((inc->witness == type_I2(10) || inc->witness == type_I2(14)));

  // One side running out of partners is already incompatible.
  auto uneven = matching_filter(type_a(3), product({type_a(3), type_a(3)}));
  auto* inc2 = std::get_if<MatchingIncompatible>(&uneven);
  REQUIRE(inc2);
  CHECK(inc2->witness == type_A(3));
  CHECK(inc2->side == "second");
}

TEST_CASE("direct decomposability of irreducible types") {
  CHECK(is_directly_decomposable_irreducible(type_b(3)));
  CHECK(is_directly_decomposable_irreducible(type_b(5)));
  CHECK(is_directly_decomposable_irreducible(type_b(7)));
  CHECK(is_directly_decomposable_irreducible(dihedral(6)));
  CHECK(is_directly_decomposable_irreducible(dihedral(10)));
  CHECK(is_directly_decomposable_irreducible(type_h(3)));
  CHECK(is_directly_decomposable_irreducible(type_e(7)));
  CHECK_FALSE(is_directly_decomposable_irreducible(type_a(3)));
  CHECK_FALSE(is_directly_decomposable_irreducible(type_b(4)));
  CHECK_FALSE(is_directly_decomposable_irreducible(type_d(5)));
  CHECK_FALSE(is_directly_decomposable_irreducible(type_f4()));
  CHECK_FALSE(is_directly_decomposable_irreducible(type_h(4)));
  CHECK_FALSE(is_directly_decomposable_irreducible(type_e(6)));
  CHECK_FALSE(is_directly_decomposable_irreducible(type_e(8)));
  CHECK_FALSE(is_directly_decomposable_irreducible(dihedral(5)));
  CHECK_FALSE(is_directly_decomposable_irreducible(dihedral(8)));
  CHECK_FALSE(is_directly_decomposable_irreducible(triangle(3, 3, 3)));
  REQUIRE_THROWS_AS(is_directly_decomposable_irreducible(product({type_a(1), type_a(2)})),
                    NotIrreducibleError);
}

TEST_CASE("visible splittings") {
  // x - c with label 3, both commuting with w; b is joined to nobody.
  CoxeterMatrix m = from_upper(4, {3, 2, 0, 2, 0, 0});  // order x, c, w, b
  auto splits = visible_splittings(m);
  CHECK(splits.size() == 7);
  bool found = false;
  for (const auto& vs : splits)
    if (vs.t == GeneratorSubset{0, 2} && vs.s1 == GeneratorSubset{0, 1, 2} &&
        vs.s2 == GeneratorSubset{0, 2, 3})
      found = true;
  CHECK(found);

  // A free product splits over the empty set, and here also over either
  // endpoint of the finite edge (the two ∞ spokes separate the rest).
  auto freeprod = visible_splittings(triangle(6, 0, 0));
  REQUIRE(freeprod.size() == 3);
  CHECK(freeprod[0].t.empty());
  int empties = 0;
  for (const auto& vs : freeprod) empties += vs.t.empty();
  CHECK(empties == 1);

  CHECK(visible_splittings(type_a(3)).empty());
  CHECK(visible_splittings(product({type_a(1), type_a(1)})).empty());
}

TEST_CASE("entry multisets and the maximal rank filter") {
  CHECK(entry_multiset(triangle(3, 2, 2)) ==
        std::vector<Label>{Label::finite(2), Label::finite(2), Label::finite(3)});
  CHECK(maximal_rank_filter_compatible(triangle(3, 2, 2), triangle(2, 3, 2)));
  CHECK_FALSE(maximal_rank_filter_compatible(triangle(3, 2, 2), triangle(3, 3, 2)));
  CHECK_FALSE(maximal_rank_filter_compatible(dihedral(6), triangle(3, 2, 2)));
}

TEST_CASE("abelianization ranks") {
  CHECK(abelianization_rank(type_a(5)) == 1);
  CHECK(abelianization_rank(type_b(4)) == 2);
  CHECK(abelianization_rank(dihedral(7)) == 1);
  CHECK(abelianization_rank(dihedral(8)) == 2);
  CHECK(abelianization_rank(triangle(3, 3, 3)) == 1);
  CHECK(abelianization_rank(triangle(2, 2, 2)) == 3);
  CHECK(abelianization_rank(triangle(6, 10, 0)) == 3);
  CHECK(abelianization_rank(type_h(3)) == 1);
}
