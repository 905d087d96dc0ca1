#include <catch2/catch_amalgamated.hpp>

#include "common_groups.hpp"
#include "rhs3/catalog.hpp"

using namespace rhs3;

namespace {

long count_involutions(const finite_group& g) {
  long c = 0;
  for (std::int32_t i = 0; i < g.order(); ++i)
    if (g.element_order(i) == 2) ++c;
  return c;
}

}  // namespace

TEST_CASE("standard family constructors") {
  CHECK(make_cyclic(1).order() == 1);
  CHECK(make_cyclic(12).order() == 12);

  finite_group q12 = make_binary_dihedral(12);
  CHECK(q12.order() == 12);
  CHECK(count_involutions(q12) == 1);

  finite_group bi = make_binary_icosahedral();
  CHECK(bi.order() == 120);
  CHECK(derived_series(bi).size() == 1);  // perfect

  finite_group bt = make_binary_tetrahedral();
  CHECK(bt.order() == 24);
  CHECK(is_isomorphic(bt, make_sl2(3)).first);

  finite_group bo = make_binary_octahedral();
  CHECK(bo.order() == 48);
  CHECK(count_involutions(bo) == 1);
  CHECK(commutator_subgroup(bo).order() == 24);
  auto syl2 = as_group(sylow(bo, 2));
  CHECK(syl2.group.order() == 16);
  CHECK(classify_2group(syl2.group) == two_group_class::generalized_quaternion);

  CHECK(make_sl2(7).order() == 336);
  CHECK(make_sl2(13).order() == 2184);
  CHECK_THROWS_AS(make_sl2(4), error);
  CHECK_THROWS_AS(make_sl2(17), error);
  CHECK_THROWS_AS(make_dihedral(7), error);
  CHECK_THROWS_AS(make_binary_dihedral(6), error);

  CHECK(is_isomorphic(make_dihedral(4), rhs3::testing::dihedral(4)).first);
  CHECK(is_isomorphic(make_binary_dihedral(8), rhs3::testing::quaternion8()).first);
}

TEST_CASE("Q(8n,k,l) constructions") {
  finite_group g = make_Q8nkl(5, 3, 1);
  CHECK(g.order() == 120);
  auto syl2 = as_group(sylow(g, 2));
  CHECK(is_isomorphic(syl2.group, rhs3::testing::quaternion8()).first);
  auto rep = period(g);
  REQUIRE(rep.periodic);
  CHECK(rep.period == 4);

  CHECK(is_isomorphic(make_Q8nkl(3, 1, 1), make_binary_dihedral(24)).first);

  finite_group b = make_Q8nkl(2, 3, 1);
  CHECK(b.order() == 48);
  CHECK(b.order() % 16 == 0);

  CHECK_THROWS_AS(make_Q8nkl(2, 2, 1), error);  // 8n and k share a factor
  CHECK_THROWS_AS(make_Q8nkl(5, 3, 3), error);  // k and l share a factor
  CHECK_THROWS_AS(make_Q8nkl(0, 1, 1), error);
}

TEST_CASE("Q(16,3,1) is not a space form group") {
  finite_group g = make_Q8nkl(2, 3, 1);
  CHECK_FALSE(is_isomorphic(g, make_cyclic(48)).first);
  CHECK_FALSE(is_isomorphic(g, make_binary_dihedral(48)).first);
  CHECK_FALSE(is_isomorphic(g, direct_product(make_binary_dihedral(16), make_cyclic(3)).group).first);
  CHECK_FALSE(is_isomorphic(g, make_binary_octahedral()).first);
  // but the slot-folding alias holds: Q(16,3,5) = Q(80,3,1)
  CHECK(is_isomorphic(make_Q8nkl(2, 3, 5), make_Q8nkl(10, 3, 1)).first);
}

TEST_CASE("O(48,k,l) constructions") {
  CHECK(is_isomorphic(make_O48kl(1, 1), make_binary_octahedral()).first);

  finite_group g = make_O48kl(5, 1);
  CHECK(g.order() == 240);
  auto rep = period(g);
  REQUIRE(rep.periodic);
  CHECK(rep.period == 4);
  CHECK(g.order() % 16 == 0);

  CHECK_THROWS_AS(make_O48kl(3, 1), error);  // 3 divides 48
  CHECK_THROWS_AS(make_O48kl(2, 1), error);
  CHECK_THROWS_AS(make_O48kl(5, 5), error);
}

TEST_CASE("milnor_type on the worked examples") {
  auto a = milnor_type(make_Q8nkl(5, 3, 1));
  CHECK(a.tag == milnor_tag::type_A);
  REQUIRE(a.q_params.has_value());
  CHECK((*a.q_params)[0] == 5);
  CHECK((*a.q_params)[1] == 3);
  CHECK_FALSE(a.product_with_cyclic);

  auto b = milnor_type(make_Q8nkl(2, 3, 1));
  CHECK(b.tag == milnor_tag::type_B);

  auto h = milnor_type(rhs3::testing::quaternion8());
  CHECK(h.tag == milnor_tag::hopf);
}

TEST_CASE("milnor_type recognizes degenerate parameters as space forms") {
  CHECK(milnor_type(make_Q8nkl(1, 3, 1)).tag == milnor_tag::hopf);   // = Q(24)
  CHECK(milnor_type(make_O48kl(1, 1)).tag == milnor_tag::hopf);      // = BO
  CHECK(milnor_type(make_cyclic(12)).tag == milnor_tag::hopf);
  CHECK(milnor_type(direct_product(rhs3::testing::quaternion8(), make_cyclic(3)).group).tag ==
        milnor_tag::hopf);
  // SL(2,7) is periodic of period 12, so it is not a space form group
  CHECK(milnor_type(make_sl2(7)).tag == milnor_tag::not_period_four);
  CHECK(period(make_sl2(7)).period == 12);
}

TEST_CASE("milnor_type on non-periodic and product inputs") {
  CHECK(milnor_type(make_dihedral(8)).tag == milnor_tag::not_period_four);
  CHECK(milnor_type(make_dihedral(4)).tag == milnor_tag::not_period_four);
  // periodic of period 8 is rejected as well
  CHECK(milnor_type(semidirect_cyclic(5, make_cyclic(4), {2})).tag == milnor_tag::not_period_four);

  auto prod = milnor_type(direct_product(make_Q8nkl(2, 3, 1), make_cyclic(5)).group);
  CHECK(prod.tag == milnor_tag::type_B);
  CHECK(prod.product_with_cyclic);
  CHECK(prod.cofactor == 5);

  auto c = milnor_type(make_O48kl(5, 1));
  CHECK(c.tag == milnor_tag::type_C);

  // period four, but outside every constructible family
  finite_group d6 = make_dihedral(6);
  CHECK_THROWS_AS(milnor_type(d6), error);

  budgets tight;
  tight.iso_bound = 16;
  CHECK_THROWS_AS(milnor_type(make_Q8nkl(2, 3, 1), tight), error);
}

TEST_CASE("milnor_type is isomorphism invariant") {
  finite_group g1 = make_Q8nkl(2, 3, 1);
  // the same group arriving as a raw permutation closure
  finite_group g2 = group_from_permutations(
      {g1.element(g1.generators()[1]), g1.element(g1.generators()[2]),
       g1.element(g1.generators()[0])});
  REQUIRE(is_isomorphic(g1, g2).first);
  CHECK(milnor_type(g1).tag == milnor_type(g2).tag);
  CHECK(milnor_type(g1).matched == milnor_type(g2).matched);
}

TEST_CASE("dihedral times cyclic decompositions") {
  auto a = dihedral_times_cyclic_check(direct_product(make_dihedral(6), make_cyclic(5)).group);
  REQUIRE(a.has_value());
  CHECK(a->first == 6);
  CHECK(a->second == 5);

  CHECK_FALSE(dihedral_times_cyclic_check(rhs3::testing::quaternion8()).has_value());

  auto d8 = dihedral_times_cyclic_check(make_dihedral(8));
  REQUIRE(d8.has_value());
  CHECK(d8->first == 8);
  CHECK(d8->second == 1);

  auto klein = dihedral_times_cyclic_check(make_dihedral(4));
  REQUIRE(klein.has_value());
  CHECK(klein->first == 4);
}

TEST_CASE("catalog enumeration") {
  auto hopf = hopf_catalog(48);
  // contains the four order-48 space-form constructions
  int order48 = 0;
  for (const auto& e : hopf)
    if (e.order == 48) ++order48;
  CHECK(order48 == 4);  // C(48), Q(48), Q(16) x C(3), BO
  for (const auto& e : hopf) {
    CHECK(e.tag == milnor_tag::hopf);
    if (e.order <= 24) {
      finite_group g = e.build();
      CHECK(g.order() == e.order);
      for (long p : prime_divisors(g.order())) CHECK(p_rank(g, p) == 1);
    }
  }

  auto types = type_catalog(200);
  bool saw_b = false;
  for (const auto& e : types) {
    CHECK((e.tag == milnor_tag::type_A || e.tag == milnor_tag::type_B ||
           e.tag == milnor_tag::type_C));
    bool div16 = e.order % 16 == 0;
    CHECK(div16 == (e.tag == milnor_tag::type_B || e.tag == milnor_tag::type_C));
    if (e.spec == "Q(16,3,1)") {
      saw_b = true;
      CHECK(e.tag == milnor_tag::type_B);
    }
  }
  CHECK(saw_b);
}
