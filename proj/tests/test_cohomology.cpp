#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <set>

#include "common_groups.hpp"
#include "rhs3/cohomology.hpp"
#include "rhs3/structure.hpp"

using namespace rhs3;
using rhs3::testing::cyclic;
using rhs3::testing::dihedral;
using rhs3::testing::quaternion8;

namespace {

// The full cocycle identity on all |G|^3 triples.
bool cocycle_identity_everywhere(const two_cocycle& f) {
  const finite_group& g = f.group;
  for (std::int32_t x = 0; x < g.order(); ++x)
    for (std::int32_t y = 0; y < g.order(); ++y)
      for (std::int32_t z = 0; z < g.order(); ++z) {
        long lhs = f.at(x, y) + f.at(g.mul(x, y), z);
        long rhs = f.at(y, z) + f.at(x, g.mul(y, z));
        if ((lhs - rhs) % f.modulus != 0) return false;
      }
  return true;
}

// Literal exhaustive enumeration of normalized cocycles and coboundaries,
// feasible for |G| <= 4, m <= 4. Returns |H^2| and its invariant factors.
std::pair<long, std::vector<long>> h2_by_enumeration(const finite_group& g, long m) {
  const long n = g.order();
  std::vector<std::pair<std::int32_t, std::int32_t>> cells;
  for (std::int32_t x = 1; x < n; ++x)
    for (std::int32_t y = 1; y < n; ++y) cells.emplace_back(x, y);
  const std::size_t k = cells.size();

  auto to_cocycle = [&](long code) {
    two_cocycle f = zero_cocycle(g, m);
    for (std::size_t i = 0; i < k; ++i) {
      f.at(cells[i].first, cells[i].second) = static_cast<std::int32_t>(code % m);
      code /= m;
    }
    return f;
  };
  long total = 1;
  for (std::size_t i = 0; i < k; ++i) total *= m;

  std::vector<std::vector<std::int32_t>> cocycles;
  for (long code = 0; code < total; ++code) {
    two_cocycle f = to_cocycle(code);
    if (cocycle_identity_everywhere(f)) cocycles.push_back(f.values);
  }

  std::set<std::vector<std::int32_t>> coboundaries;
  long ctotal = 1;
  for (long i = 1; i < n; ++i) ctotal *= m;
  for (long code = 0; code < ctotal; ++code) {
    std::vector<long> c(n, 0);
    long cc = code;
    for (long i = 1; i < n; ++i) {
      c[i] = cc % m;
      cc /= m;
    }
    two_cocycle f = zero_cocycle(g, m);
    for (std::int32_t x = 0; x < n; ++x)
      for (std::int32_t y = 0; y < n; ++y)
        f.at(x, y) = static_cast<std::int32_t>(((c[x] + c[y] - c[g.mul(x, y)]) % m + m) % m);
    coboundaries.insert(f.values);
  }

  long order = static_cast<long>(cocycles.size() / coboundaries.size());

  // invariant factors of Z^2/B^2 from its torsion profile
  auto count_torsion = [&](long t) {
    long cnt = 0;
    for (const auto& z : cocycles) {
      std::vector<std::int32_t> tz(z.size());
      for (std::size_t i = 0; i < z.size(); ++i)
        tz[i] = static_cast<std::int32_t>((static_cast<long>(z[i]) * t) % m);
      if (coboundaries.count(tz)) ++cnt;
    }
    return cnt / static_cast<long>(coboundaries.size());
  };
  return {order, abelian_invariants_from_torsion(order, count_torsion)};
}

long count_involutions(const finite_group& g) {
  long c = 0;
  for (std::int32_t i = 0; i < g.order(); ++i)
    if (g.element_order(i) == 2) ++c;
  return c;
}

// Does the extension total contain a complement to the kernel?
bool has_complement(const central_extension& ext) {
  const finite_group& t = ext.total;
  const long want = ext.projection.target.order();
  std::vector<std::vector<std::int32_t>> seeds = {{}};
  for (std::int32_t a = 0; a < t.order(); ++a) seeds.push_back({a});
  for (std::int32_t a = 0; a < t.order(); ++a)
    for (std::int32_t b = a + 1; b < t.order(); ++b) seeds.push_back({a, b});
  for (std::int32_t a = 0; a < t.order(); ++a)
    for (std::int32_t b = a + 1; b < t.order(); ++b)
      for (std::int32_t c = b + 1; c < t.order(); ++c) seeds.push_back({a, b, c});
  for (const auto& s : seeds) {
    auto members = subgroup_closure(t, s);
    if (static_cast<long>(members.size()) != want) continue;
    bool meets_kernel = false;
    for (std::int32_t k : ext.kernel.members)
      if (k != t.identity() && std::binary_search(members.begin(), members.end(), k))
        meets_kernel = true;
    if (!meets_kernel) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("h2 on the worked examples") {
  auto a = h2_trivial(cyclic(2), 2);
  CHECK(a.invariant_factors == std::vector<long>{2});

  auto b = h2_trivial(cyclic(3), 2);
  CHECK(b.invariant_factors.empty());

  auto v4 = dihedral(4);
  auto c = h2_trivial(v4, 2);
  CHECK(c.invariant_factors == std::vector<long>{2, 2, 2});
}

TEST_CASE("h2 of cyclic groups is Z/gcd(n,m)") {
  for (long n : {2L, 3L, 4L, 5L, 6L, 8L, 12L})
    for (long m : {2L, 3L, 4L, 6L}) {
      auto h = h2_trivial(cyclic(n), m);
      long want = std::gcd(n, m);
      if (want == 1)
        CHECK(h.invariant_factors.empty());
      else
        CHECK(h.invariant_factors == std::vector<long>{want});
    }
}

TEST_CASE("h2 representatives are genuine normalized cocycles") {
  std::vector<finite_group> corpus = {cyclic(4), cyclic(6), dihedral(4), dihedral(6),
                                      dihedral(8), quaternion8()};
  for (const auto& g : corpus)
    for (long m : {2L, 3L, 4L}) {
      auto h = h2_trivial(g, m);
      for (const auto& f : h.representatives) {
        CHECK(is_valid_cocycle(f));
        CHECK(cocycle_identity_everywhere(f));
      }
    }
}

TEST_CASE("h2 agrees with direct bar-resolution cohomology") {
  std::vector<finite_group> corpus = {cyclic(2), cyclic(4), cyclic(6), dihedral(4),
                                      dihedral(6), dihedral(8), quaternion8()};
  for (const auto& g : corpus)
    for (long m : {2L, 3L, 4L}) {
      auto via_presentation = h2_trivial(g, m);
      auto via_bar = bar_cohomology(g, m, 2);
      CHECK(via_presentation.invariant_factors == via_bar.invariant_factors);
      for (const auto& f : via_bar.representatives) CHECK(cocycle_identity_everywhere(f));
    }
}

TEST_CASE("h2 agrees with literal exhaustive enumeration on tiny groups") {
  std::vector<finite_group> corpus = {cyclic(2), cyclic(3), cyclic(4), dihedral(4)};
  for (const auto& g : corpus)
    for (long m : {2L, 3L, 4L}) {
      auto h = h2_trivial(g, m);
      auto [order, factors] = h2_by_enumeration(g, m);
      CHECK(h.order() == order);
      CHECK(h.invariant_factors == factors);
    }
}

TEST_CASE("known second cohomology of quaternion and symmetric groups") {
  // Schur multiplier of Q(8) is trivial; Ext((Z/2)^2, Z/2) remains
  auto q = h2_trivial(quaternion8(), 2);
  CHECK(q.invariant_factors == std::vector<long>{2, 2});

  // trivial at odd primes where the period is four and the Sylow is cyclic
  CHECK(h2_trivial(dihedral(6), 3).invariant_factors.empty());
  CHECK(h2_trivial(quaternion8(), 3).invariant_factors.empty());
}

TEST_CASE("extensions from cocycles") {
  finite_group c2 = cyclic(2);

  auto split = extension_from_cocycle(c2, 3, zero_cocycle(c2, 3));
  CHECK(split.total.order() == 6);
  CHECK(is_isomorphic(split.total, cyclic(6)).first);  // C3 x C2
  CHECK(split.kernel.order() == 3);
  CHECK(split.projection.is_valid());

  auto h = h2_trivial(c2, 2);
  REQUIRE(h.invariant_factors == std::vector<long>{2});
  auto ext = extension_from_cocycle(c2, 2, h.representatives[0]);
  CHECK(is_isomorphic(ext.total, cyclic(4)).first);

  // invalid input is rejected
  two_cocycle bad = zero_cocycle(c2, 2);
  bad.at(1, 1) = 1;
  bad.at(0, 1) = 1;  // breaks normalization
  CHECK_THROWS_AS(extension_from_cocycle(c2, 2, bad), error);
}

TEST_CASE("the eight central extensions of the Klein four group by Z/2") {
  finite_group v4 = dihedral(4);
  auto h = h2_trivial(v4, 2);
  auto classes = enumerate_classes(h);
  REQUIRE(classes.size() == 8);

  std::map<std::string, int> counts;
  int quaternion_class = -1;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    auto ext = extension_from_cocycle(v4, 2, classes[i]);
    CHECK(ext.total.order() == 8);
    CHECK(ext.kernel.order() == 2);
    CHECK(center(ext.total).contains(ext.kernel_generator));
    long inv = count_involutions(ext.total);
    std::string tag = "other";
    if (inv == 1) tag = "quaternion";
    if (inv == 3) tag = "c4xc2";
    if (inv == 5) tag = "dihedral";
    if (inv == 7) tag = "elementary";
    counts[tag]++;
    if (inv == 1) quaternion_class = static_cast<int>(i);
  }
  CHECK(counts["elementary"] == 1);
  CHECK(counts["c4xc2"] == 3);
  CHECK(counts["dihedral"] == 3);
  CHECK(counts["quaternion"] == 1);

  // the quaternion class restricts non-split to every order-2 subgroup
  REQUIRE(quaternion_class >= 0);
  const two_cocycle& qf = classes[quaternion_class];
  int checked = 0;
  for (std::int32_t x = 1; x < v4.order(); ++x) {
    auto r = restrict_class(qf, subgroup_from_generators(v4, {x}));
    CHECK_FALSE(is_split_class(r));
    ++checked;
  }
  CHECK(checked == 3);
  CHECK(is_isomorphic(extension_from_cocycle(v4, 2, qf).total, quaternion8()).first);
}

TEST_CASE("restriction and splitting") {
  finite_group v4 = dihedral(4);
  auto h = h2_trivial(v4, 2);
  for (const auto& f : enumerate_classes(h)) {
    // any class restricted to the trivial subgroup splits
    CHECK(is_split_class(restrict_class(f, trivial_subgroup(v4))));
  }
  CHECK(class_exponent(zero_cocycle(v4, 2)) == 1);

  auto mismatch = trivial_subgroup(cyclic(3));
  CHECK_THROWS_AS(restrict_class(zero_cocycle(v4, 2), mismatch), error);
}

TEST_CASE("split iff exponent one iff complemented, across small extensions") {
  std::vector<std::pair<finite_group, long>> cases = {
      {dihedral(4), 2}, {cyclic(4), 2}, {cyclic(6), 2}, {cyclic(3), 3}, {dihedral(6), 2}};
  for (const auto& [g, m] : cases) {
    auto h = h2_trivial(g, m);
    for (const auto& f : enumerate_classes(h)) {
      bool split = is_split_class(f);
      CHECK(split == (class_exponent(f) == 1));
      auto ext = extension_from_cocycle(g, m, f);
      CHECK(split == has_complement(ext));
    }
  }
}

TEST_CASE("extension round trip: section cocycle is cohomologous") {
  std::vector<std::pair<finite_group, long>> cases = {
      {dihedral(4), 2}, {cyclic(4), 2}, {cyclic(4), 4}, {dihedral(6), 2}, {cyclic(3), 3}};
  for (const auto& [g, m] : cases) {
    auto h = h2_trivial(g, m);
    for (const auto& f : enumerate_classes(h)) {
      auto ext = extension_from_cocycle(g, m, f);
      two_cocycle back = cocycle_from_section(ext);
      CHECK(is_valid_cocycle(back));
      CHECK(cocycles_cohomologous(back, f));
    }
  }
}

TEST_CASE("class exponents divide the modulus") {
  finite_group c4 = cyclic(4);
  auto h = h2_trivial(c4, 4);
  REQUIRE(h.invariant_factors == std::vector<long>{4});
  CHECK(class_exponent(h.representatives[0]) == 4);
  CHECK(class_exponent(cocycle_scale(h.representatives[0], 2)) == 2);

  for (const auto& f : enumerate_classes(h)) CHECK(4 % class_exponent(f) == 0);
}

TEST_CASE("bar cohomology with integer coefficients") {
  CHECK(bar_cohomology(cyclic(2), std::nullopt, 4).invariant_factors == std::vector<long>{2});
  CHECK(bar_cohomology(quaternion8(), std::nullopt, 4).invariant_factors == std::vector<long>{8});
  for (const auto& g : {cyclic(4), dihedral(6), quaternion8()})
    CHECK(bar_cohomology(g, std::nullopt, 1).invariant_factors.empty());

  // degree 2 integral cohomology is the dual of the abelianization
  CHECK(bar_cohomology(cyclic(6), std::nullopt, 2).invariant_factors == std::vector<long>{6});
  CHECK(bar_cohomology(dihedral(4), std::nullopt, 2).invariant_factors == std::vector<long>{2, 2});
  CHECK(bar_cohomology(quaternion8(), std::nullopt, 2).invariant_factors ==
        std::vector<long>{2, 2});
  CHECK(bar_cohomology(dihedral(6), std::nullopt, 2).invariant_factors == std::vector<long>{2});

  // H^3(G;Z) vanishes for these groups; H^4 detects the period
  CHECK(bar_cohomology(quaternion8(), std::nullopt, 3).invariant_factors.empty());
  CHECK(bar_cohomology(dihedral(6), std::nullopt, 4).invariant_factors == std::vector<long>{6});

  budgets tight;
  tight.bar_bound[4] = 4;
  CHECK_THROWS_AS(bar_cohomology(quaternion8(), std::nullopt, 4, tight), error);
}

TEST_CASE("tate closed forms for cyclic groups") {
  CHECK(tate_cyclic(5, std::nullopt, 2) == 5);
  CHECK(tate_cyclic(5, std::nullopt, 3) == 1);
  CHECK(tate_cyclic(5, std::nullopt, 0) == 5);
  CHECK(tate_cyclic(5, std::nullopt, -4) == 5);
  CHECK(tate_cyclic(4, 6, 1) == 2);
  CHECK(tate_cyclic(4, 6, -3) == 2);

  // bar-resolution oracle in degrees 1..4
  for (long n : {2L, 3L, 4L, 5L, 6L}) {
    finite_group c = cyclic(n);
    for (int d = 1; d <= 4; ++d) {
      auto h = bar_cohomology(c, std::nullopt, d);
      long order = 1;
      for (long f : h.invariant_factors) order *= f;
      CHECK(order == tate_cyclic(n, std::nullopt, d));
      for (long m : {2L, 3L, 4L, 5L, 6L}) {
        auto hm = bar_cohomology(c, m, d);
        long om = 1;
        for (long f : hm.invariant_factors) om *= f;
        CHECK(om == tate_cyclic(n, m, d));
      }
    }
  }
}
