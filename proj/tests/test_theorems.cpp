#include <catch2/catch_amalgamated.hpp>

#include "common_groups.hpp"
#include "rhs3/theorems.hpp"

using namespace rhs3;

namespace {

bool has_rule(const std::vector<constraint_violation>& vs, constraint_rule r,
              std::optional<long> p = std::nullopt) {
  for (const auto& v : vs)
    if (v.rule == r && (!p || v.prime == p)) return true;
  return false;
}

long count_involutions(const finite_group& g) {
  long c = 0;
  for (std::int32_t i = 0; i < g.order(); ++i)
    if (g.element_order(i) == 2) ++c;
  return c;
}

}  // namespace

TEST_CASE("homology constraints") {
  finite_group c3 = make_cyclic(3);
  finite_group e27 = direct_product(direct_product(c3, c3).group, c3).group;
  auto v1 = homology_constraints(e27, {});
  CHECK(has_rule(v1, constraint_rule::rank_bound, 3));
  CHECK(has_rule(homology_constraints(e27, {3}), constraint_rule::rank_bound, 3));

  finite_group c2c4 = direct_product(make_cyclic(2), make_cyclic(4)).group;
  auto v2 = homology_constraints(c2c4, {2});
  REQUIRE(v2.size() == 1);
  CHECK(v2[0].rule == constraint_rule::syl2_not_cyclic_or_dihedral);

  CHECK(homology_constraints(rhs3::testing::quaternion8(), {}).empty());

  // dihedral Sylow-2 is fine with even coefficients, not with odd ones
  finite_group d8 = make_dihedral(8);
  CHECK(has_rule(homology_constraints(d8, {}), constraint_rule::syl_not_cyclic_or_quaternion, 2));
  CHECK(homology_constraints(d8, {2}).empty());
  finite_group klein = make_dihedral(4);
  CHECK(homology_constraints(klein, {2}).empty());
  CHECK(has_rule(homology_constraints(klein, {}), constraint_rule::syl_not_cyclic_or_quaternion));

  // noncyclic coefficient p-part
  CHECK(has_rule(homology_constraints(make_cyclic(2), {2, 2}), constraint_rule::p_part_not_cyclic, 2));
  CHECK_FALSE(has_rule(homology_constraints(make_cyclic(3), {2, 2}), constraint_rule::p_part_not_cyclic));

  // noncyclic odd Sylow
  finite_group e9 = direct_product(c3, c3).group;
  CHECK(has_rule(homology_constraints(e9, {}), constraint_rule::sylp_odd_not_cyclic, 3));

  CHECK_THROWS_AS(homology_constraints(c3, {4, 2}), error);  // not a divisibility chain
  CHECK_THROWS_AS(homology_constraints(c3, {1}), error);
}

TEST_CASE("periodic cover search on the Klein four group") {
  finite_group v4 = make_dihedral(4);
  auto res = periodic_cover_search(v4, 2);
  CHECK(res.h2_factors == std::vector<long>{2, 2, 2});
  CHECK(res.classes_examined == 8);
  CHECK(res.exhaustive);
  REQUIRE(res.witnesses.size() == 1);
  const cover_witness& w = res.witnesses[0];
  CHECK(w.ext.total.order() == 8);
  CHECK(count_involutions(w.ext.total) == 1);
  CHECK(w.period == 4);
  CHECK(w.nonsplit_primes == std::vector<long>{2});

  // every order-2 element of the cover lies in the kernel
  for (std::int32_t i = 0; i < w.ext.total.order(); ++i)
    if (w.ext.total.element_order(i) == 2) CHECK(w.ext.kernel.contains(i));
}

TEST_CASE("periodic cover search on cyclic and obstructed groups") {
  // coprime kernel: the split extension is cyclic of period 2
  auto res = periodic_cover_search(make_cyclic(3), 2);
  REQUIRE(res.witnesses.size() == 1);
  CHECK(res.witnesses[0].period == 2);
  CHECK(is_isomorphic(res.witnesses[0].ext.total, make_cyclic(6)).first);
  CHECK(res.witnesses[0].nonsplit_primes.empty());

  // no periodic cover of C2 x C4 with kernel Z/2 exists
  auto none = periodic_cover_search(direct_product(make_cyclic(2), make_cyclic(4)).group, 2);
  CHECK(none.classes_examined == 8);
  CHECK(none.witnesses.empty());

  // trivial kernel reduces to a periodicity test of the group itself
  auto self = periodic_cover_search(rhs3::testing::quaternion8(), 1);
  REQUIRE(self.witnesses.size() == 1);
  CHECK(self.witnesses[0].ext.kernel.order() == 1);
  CHECK(periodic_cover_search(make_dihedral(4), 1).witnesses.empty());
}

TEST_CASE("cover witnesses for quotients of small space form groups") {
  // Q(16)/Z = D(8) recovers a quaternionic cover
  finite_group q16 = make_binary_dihedral(16);
  auto [d8, proj] = quotient(q16, center(q16));
  auto res = periodic_cover_search(d8, 2);
  CHECK_FALSE(res.witnesses.empty());
  bool saw_q16 = false;
  for (const auto& w : res.witnesses)
    if (is_isomorphic(w.ext.total, q16).first) saw_q16 = true;
  CHECK(saw_q16);

  // BT/Z = A4 of order 12
  finite_group bt = make_binary_tetrahedral();
  auto [a4, proj2] = quotient(bt, center(bt));
  auto res2 = periodic_cover_search(a4, 2);
  bool saw_bt = false;
  for (const auto& w : res2.witnesses)
    if (is_isomorphic(w.ext.total, bt).first) saw_bt = true;
  CHECK(saw_bt);

  // class orders divide the base group order on cyclic bases
  for (long n : {4L, 6L, 12L})
    for (long m : {2L, 4L}) {
      auto r = periodic_cover_search(make_cyclic(n), m);
      for (const auto& w : r.witnesses) CHECK(n % class_exponent(w.cls) == 0);
    }
}

TEST_CASE("quotient obstruction verdicts") {
  finite_group g = make_Q8nkl(2, 3, 1);
  verdict v = quotient_obstruction_verdict(g, 256);
  REQUIRE(v.tag == verdict_tag::cannot_act);
  REQUIRE(v.certificate.has_value());
  CHECK(v.certificate->h.order() == 1);
  CHECK(v.certificate->q_spec == "Q(16,3,1)");
  // independent re-check of the certificate
  auto [qg, proj] = quotient(v.certificate->q, v.certificate->h);
  CHECK(is_isomorphic(qg, g).first);

  auto [g24, proj24] = quotient(g, center(g));
  verdict v24 = quotient_obstruction_verdict(g24, 256);
  REQUIRE(v24.tag == verdict_tag::cannot_act);
  CHECK(v24.certificate->h.order() == 2);
  auto [qg24, p24] = quotient(v24.certificate->q, v24.certificate->h);
  CHECK(is_isomorphic(qg24, g24).first);

  CHECK(quotient_obstruction_verdict(make_cyclic(5), 256).tag ==
        verdict_tag::no_obstruction_found);
  CHECK(quotient_obstruction_verdict(rhs3::testing::quaternion8(), 256).tag ==
        verdict_tag::no_obstruction_found);
}

TEST_CASE("p-group dichotomy verdicts") {
  CHECK(p_group_verdict(make_cyclic(8)).tag == verdict_tag::can_act_by_construction);
  CHECK(p_group_verdict(make_cyclic(9)).tag == verdict_tag::can_act_by_construction);
  CHECK(p_group_verdict(finite_group{}).tag == verdict_tag::can_act_by_construction);

  verdict d8 = p_group_verdict(make_dihedral(8));
  CHECK(d8.tag == verdict_tag::can_act_by_construction);
  CHECK(d8.note.find("Z/2") != std::string::npos);
  CHECK(p_group_verdict(make_dihedral(4)).tag == verdict_tag::can_act_by_construction);

  verdict bad = p_group_verdict(direct_product(make_cyclic(2), make_cyclic(4)).group);
  REQUIRE(bad.tag == verdict_tag::cannot_act);
  CHECK(has_rule(bad.violations, constraint_rule::pgroup_dichotomy, 2));

  CHECK(p_group_verdict(rhs3::testing::quaternion8()).tag == verdict_tag::cannot_act);
  finite_group c3 = make_cyclic(3);
  CHECK(p_group_verdict(direct_product(c3, c3).group).tag == verdict_tag::cannot_act);

  CHECK_THROWS_AS(p_group_verdict(make_cyclic(6)), error);

  // cannot_act p-groups violate a constraint under every even hypothesis
  for (const auto& p : {direct_product(make_cyclic(2), make_cyclic(4)).group,
                        rhs3::testing::quaternion8(),
                        semidirect_cyclic(8, make_cyclic(2), {3})}) {
    REQUIRE(p_group_verdict(p).tag == verdict_tag::cannot_act);
    for (const auto& h1 : {std::vector<long>{2}, {4}, {2, 2}, {2, 6}})
      CHECK_FALSE(homology_constraints(p, h1).empty());
  }
}

TEST_CASE("type A quotient transfer") {
  finite_group q = make_Q8nkl(5, 3, 1);
  verdict v = type_a_quotient_transfer(q, center(q));
  CHECK(v.tag == verdict_tag::can_act_by_construction);
  REQUIRE(v.condition.has_value());
  CHECK(v.note.find("60") != std::string::npos);

  verdict self = type_a_quotient_transfer(q, trivial_subgroup(q));
  CHECK(self.tag == verdict_tag::can_act_by_construction);
  CHECK(self.note.find("120") != std::string::npos);

  CHECK_THROWS_AS(type_a_quotient_transfer(make_Q8nkl(2, 3, 1),
                                           trivial_subgroup(make_Q8nkl(2, 3, 1))),
                  error);

  // a non-central cyclic subgroup is rejected
  std::int32_t z3 = -1;
  for (std::int32_t i = 0; i < q.order(); ++i)
    if (q.element_order(i) == 3) {
      z3 = i;
      break;
    }
  REQUIRE(z3 >= 0);
  CHECK_THROWS_AS(type_a_quotient_transfer(q, subgroup_from_generators(q, {z3})), error);
}

TEST_CASE("swan numeric checks") {
  CHECK(swan_numeric_checks(7, 1, 1).mod8_ok);
  CHECK_FALSE(swan_numeric_checks(3, 1, 1).mod8_ok);
  CHECK(swan_numeric_checks(9, 5, 3).square_ok);  // 3^2 = 9 mod 120
  for (long d : {1L, 7L, 9L, 15L}) CHECK(swan_numeric_checks(d, 1, 1).mod8_ok);
  for (long d : {3L, 5L, 11L, 13L}) CHECK_FALSE(swan_numeric_checks(d, 1, 1).mod8_ok);
  CHECK_THROWS_AS(swan_numeric_checks(4, 1, 1), error);
}

TEST_CASE("swan top component vanishing") {
  CHECK(s_pq_vanishes(5, 3) == swan_vanishing::vanishes);
  CHECK(s_pq_vanishes(11, 3) == swan_vanishing::vanishes);
  CHECK(s_pq_vanishes(17, 3) == swan_vanishing::unknown);  // 2 has order 8 mod 17
  CHECK(s_pq_vanishes(73, 3) == swan_vanishing::vanishes); // 2 has order 9 mod 73
  CHECK(s_pq_vanishes(7, 3) == swan_vanishing::unknown);   // 7 = -1 mod 8
  CHECK_THROWS_AS(s_pq_vanishes(3, 5), error);
  CHECK_THROWS_AS(s_pq_vanishes(9, 5), error);
  CHECK_THROWS_AS(s_pq_vanishes(5, 2), error);
}

TEST_CASE("classification reports") {
  auto q8 = classify(rhs3::testing::quaternion8());
  CHECK(q8.periodicity.periodic);
  CHECK(q8.periodicity.period == 4);
  REQUIRE(q8.milnor.has_value());
  CHECK(q8.milnor->tag == milnor_tag::hopf);
  CHECK(q8.constraints_trivial_h1.empty());
  CHECK_FALSE(q8.obstructed);

  finite_group c2 = make_cyclic(2);
  auto e8 = classify(direct_product(direct_product(c2, c2).group, c2).group);
  CHECK(has_rule(e8.constraints_trivial_h1, constraint_rule::rank_bound, 2));
  CHECK(e8.obstructed);

  auto triv = classify(finite_group{});
  CHECK(triv.periodicity.period == 2);
  CHECK(triv.constraints_trivial_h1.empty());
  CHECK(triv.covers.empty());
  CHECK_FALSE(triv.obstructed);
  REQUIRE(triv.p_group.has_value());
  CHECK(triv.p_group->tag == verdict_tag::can_act_by_construction);

  // the report on V4 finds the quaternionic cover at m = 2
  auto v4 = classify(make_dihedral(4));
  REQUIRE(!v4.covers.empty());
  CHECK(v4.covers[0].m == 2);
  bool has_q8_witness = false;
  for (const auto& w : v4.covers[0].witnesses)
    if (w.ext.total.order() == 8 && count_involutions(w.ext.total) == 1 && w.period == 4)
      has_q8_witness = true;
  CHECK(has_q8_witness);
  CHECK_FALSE(v4.obstructed);

  // quotient obstruction shows up in the aggregate report
  finite_group q48 = make_Q8nkl(2, 3, 1);
  auto [g24, proj] = quotient(q48, center(q48));
  auto rep24 = classify(g24);
  REQUIRE(rep24.quotient_obstruction.has_value());
  CHECK(rep24.quotient_obstruction->tag == verdict_tag::cannot_act);
  CHECK(rep24.obstructed);
}
