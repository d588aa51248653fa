#include <catch2/catch_amalgamated.hpp>

#include "coxgalaxy/coxsys.hpp"

using namespace coxgalaxy;

namespace {

CoxeterMatrix triangle(std::uint32_t a, std::uint32_t b, std::uint32_t c) {
  CoxeterMatrix::Builder bld(3);
  bld.set(0, 1, Label::from_serialized(a));
  bld.set(0, 2, Label::from_serialized(b));
  bld.set(1, 2, Label::from_serialized(c));
  return bld.build();
}

}  // namespace

TEST_CASE("labels order with infinity last") {
  REQUIRE(Label::finite(2) < Label::finite(3));
  REQUIRE(Label::finite(100000) < Label::infinity());
  REQUIRE(Label::one() < Label::finite(2));
  REQUIRE(Label::infinity() == Label::from_serialized(0));
  REQUIRE(Label::infinity().serialized() == 0);
  REQUIRE(Label::finite(7).serialized() == 7);
  REQUIRE(Label::finite(7).is_odd_finite());
  REQUIRE_FALSE(Label::finite(8).is_odd_finite());
  REQUIRE_FALSE(Label::infinity().is_odd_finite());
  REQUIRE_THROWS_AS(Label::infinity().finite_value(), InvalidMatrixError);
  REQUIRE_THROWS_AS(Label::finite(1), InvalidMatrixError);
}

TEST_CASE("matrix validation") {
  SECTION("diagonal must be 1") {
    std::vector<Label> e{Label::finite(2), Label::finite(3), Label::finite(3), Label::one()};
    REQUIRE_THROWS_AS(CoxeterMatrix(CoxeterMatrix::default_names(2), e), InvalidMatrixError);
  }
  SECTION("symmetry") {
    std::vector<Label> e{Label::one(), Label::finite(3), Label::finite(4), Label::one()};
    REQUIRE_THROWS_AS(CoxeterMatrix(CoxeterMatrix::default_names(2), e), InvalidMatrixError);
  }
  SECTION("off-diagonal ones rejected") {
    std::vector<Label> e{Label::one(), Label::one(), Label::one(), Label::one()};
    REQUIRE_THROWS_AS(CoxeterMatrix(CoxeterMatrix::default_names(2), e), InvalidMatrixError);
  }
  SECTION("duplicate names rejected") {
    std::vector<Label> e{Label::one(), Label::finite(3), Label::finite(3), Label::one()};
    REQUIRE_THROWS_AS(CoxeterMatrix({"a", "a"}, e), InvalidMatrixError);
  }
  SECTION("builder defaults off-diagonal to 2") {
    CoxeterMatrix m = CoxeterMatrix::Builder(3).build();
    REQUIRE(m.label(0, 1) == Label::finite(2));
    REQUIRE(m.label(2, 1) == Label::finite(2));
    REQUIRE(m.label(1, 1) == Label::one());
  }
}

TEST_CASE("restriction and permutation") {
  CoxeterMatrix m = triangle(3, 0, 5);
  CoxeterMatrix sub = m.restricted({0, 2});
  REQUIRE(sub.rank() == 2);
  REQUIRE(sub.label(0, 1) == Label::infinity());
  REQUIRE(sub.name(1) == "s2");

  CoxeterMatrix p = m.permuted({2, 0, 1});
  REQUIRE(p.name(0) == "s2");
  REQUIRE(p.label(0, 1) == m.label(2, 0));
  REQUIRE(p.label(1, 2) == m.label(0, 1));
}

TEST_CASE("irreducible components split on label 2") {
  CoxeterMatrix::Builder b(4);
  b.set(0, 1, Label::finite(3));
  b.set(2, 3, Label::infinity());
  CoxeterMatrix m = b.build();
  auto comps = irreducible_components(m);
  REQUIRE(comps.size() == 2);
  REQUIRE(comps[0] == GeneratorSubset{0, 1});
  REQUIRE(comps[1] == GeneratorSubset{2, 3});
}

TEST_CASE("abelianization rank counts odd-label components") {
  REQUIRE(abelianization_rank(triangle(3, 3, 3)) == 1);
  REQUIRE(abelianization_rank(triangle(2, 3, 6)) == 2);
  REQUIRE(abelianization_rank(triangle(2, 4, 4)) == 3);
  REQUIRE(abelianization_rank(triangle(2, 2, 0)) == 3);
  REQUIRE(abelianization_rank(triangle(5, 2, 2)) == 2);
}

TEST_CASE("dynkin adjacency ignores label 2") {
  CoxeterMatrix m = triangle(2, 3, 0);
  REQUIRE_FALSE(dynkin_adjacent(m, 0, 1));
  REQUIRE(dynkin_adjacent(m, 0, 2));
  REQUIRE(dynkin_adjacent(m, 1, 2));
  REQUIRE_FALSE(dynkin_adjacent(m, 1, 1));
}
