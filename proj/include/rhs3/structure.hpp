#ifndef RHS3_STRUCTURE_HPP
#define RHS3_STRUCTURE_HPP

#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "rhs3/group.hpp"

namespace rhs3 {

enum class two_group_class {
  cyclic,
  klein_four,
  dihedral,
  semidihedral,
  generalized_quaternion,
  other,
};

inline const char* to_string(two_group_class c) {
  switch (c) {
    case two_group_class::cyclic: return "cyclic";
    case two_group_class::klein_four: return "klein_four";
    case two_group_class::dihedral: return "dihedral";
    case two_group_class::semidihedral: return "semidihedral";
    case two_group_class::generalized_quaternion: return "generalized_quaternion";
    case two_group_class::other: return "other";
  }
  return "?";
}

// Klein four is reported as its own tag; rules that admit dihedral 2-groups
// treat it as the dihedral group of order 4.
inline bool counts_as_dihedral(two_group_class c) {
  return c == two_group_class::dihedral || c == two_group_class::klein_four;
}

inline bool is_cyclic(const finite_group& g) {
  for (std::int32_t i = 0; i < g.order(); ++i)
    if (g.element_order(i) == g.order()) return true;
  return false;
}

// Exact classification of a 2-group by relation matching.
inline two_group_class classify_2group(const finite_group& p) {
  long n = p.order();
  if ((n & (n - 1)) != 0) fail(errc::not_a_2group, "order is not a power of two");
  if (n <= 2) return two_group_class::cyclic;
  if (is_cyclic(p)) return two_group_class::cyclic;
  if (n == 4) return two_group_class::klein_four;

  long involutions = 0;
  for (std::int32_t i = 0; i < n; ++i)
    if (p.element_order(i) == 2) ++involutions;
  if (involutions == 1) return two_group_class::generalized_quaternion;

  // the named non-cyclic families all have a cyclic subgroup of index two
  std::vector<std::int32_t> half_order;
  for (std::int32_t i = 0; i < n; ++i)
    if (p.element_order(i) == n / 2) half_order.push_back(i);
  bool dihedral = false, semidihedral = false;
  for (std::int32_t r : half_order) {
    subgroup c = cyclic_subgroup(p, r);
    long t_di = n / 2 - 1;           // r -> r^{-1}
    long t_sd = n / 4 - 1;           // r -> r^{n/4 - 1}
    for (std::int32_t s = 0; s < n; ++s) {
      if (c.contains(s) || p.element_order(s) != 2) continue;
      std::int32_t conj = p.conj(s, r);
      if (conj == p.power(r, t_di)) dihedral = true;
      if (n >= 16 && conj == p.power(r, t_sd)) semidihedral = true;
    }
  }
  if (dihedral) return two_group_class::dihedral;
  if (semidihedral) return two_group_class::semidihedral;
  return two_group_class::other;
}

namespace detail {

// Count solutions of x^k = e.
inline long torsion_count(const finite_group& g, long k) {
  long c = 0;
  for (std::int32_t i = 0; i < g.order(); ++i)
    if (k % g.element_order(i) == 0) ++c;
  return c;
}

inline void elementary_abelian_search(const finite_group& g,
                                      const std::vector<std::int32_t>& candidates,
                                      std::vector<std::int32_t>& gens,
                                      std::vector<std::int32_t>& members, long p, int& best) {
  best = std::max(best, static_cast<int>(gens.size()));
  for (std::size_t ci = 0; ci < candidates.size(); ++ci) {
    std::int32_t x = candidates[ci];
    if (!gens.empty() && x <= gens.back()) continue;
    if (std::binary_search(members.begin(), members.end(), x)) continue;
    bool commutes = true;
    for (std::int32_t a : gens)
      if (g.mul(a, x) != g.mul(x, a)) {
        commutes = false;
        break;
      }
    if (!commutes) continue;
    // extend: new members = members * <x>
    std::vector<std::int32_t> bigger;
    bigger.reserve(members.size() * p);
    for (std::int32_t m : members) {
      std::int32_t y = m;
      for (long i = 0; i < p; ++i) {
        bigger.push_back(y);
        y = g.mul(y, x);
      }
    }
    std::sort(bigger.begin(), bigger.end());
    gens.push_back(x);
    elementary_abelian_search(g, candidates, gens, bigger, p, best);
    gens.pop_back();
  }
}

}  // namespace detail

// Largest r with (Z/p)^r embedded in G, found inside a Sylow p-subgroup.
inline int p_rank(const finite_group& g, long p) {
  if (!is_prime(p)) fail(errc::not_prime, std::to_string(p) + " is not prime");
  if (g.order() % p != 0) return 0;
  subgroup syl = sylow(g, p);
  auto sg = as_group(syl);
  const finite_group& s = sg.group;
  if (s.is_abelian()) {
    long cnt = detail::torsion_count(s, p);
    int r = 0;
    while (cnt > 1) {
      cnt /= p;
      ++r;
    }
    return r;
  }
  std::vector<std::int32_t> candidates;
  for (std::int32_t i = 0; i < s.order(); ++i)
    if (s.element_order(i) == p) candidates.push_back(i);
  std::vector<std::int32_t> gens;
  std::vector<std::int32_t> members = {s.identity()};
  int best = 0;
  detail::elementary_abelian_search(s, candidates, gens, members, p, best);
  return best;
}

// Periodic cohomology: rank one at every prime. Both characterizations are
// computed and must agree.
inline bool is_periodic(const finite_group& g) {
  bool by_rank = true;
  for (long p : prime_divisors(g.order()))
    if (p_rank(g, p) != 1) {
      by_rank = false;
      break;
    }
  bool by_sylow = true;
  for (long p : prime_divisors(g.order())) {
    auto sg = as_group(sylow(g, p));
    if (p == 2) {
      two_group_class c = classify_2group(sg.group);
      if (c != two_group_class::cyclic && c != two_group_class::generalized_quaternion)
        by_sylow = false;
    } else if (!is_cyclic(sg.group)) {
      by_sylow = false;
    }
    if (!by_sylow) break;
  }
  if (by_rank != by_sylow)
    fail(errc::internal, "periodicity characterizations disagree on " + g.origin());
  return by_rank;
}

struct per_prime_report {
  long prime = 0;
  long sylow_order = 0;
  two_group_class sylow_class = two_group_class::other;  // cyclic/other for odd primes
  int rank = 0;
  long phi_order = 0;                 // |N_G(Syl_p) / C_G(Syl_p)|
  std::optional<long> p_period;       // present iff the p-local structure is periodic
};

struct period_report {
  bool periodic = false;
  std::optional<long> period;         // lcm of the p-periods; present iff periodic
  std::vector<per_prime_report> per_prime;
};

// Cohomological period by the prime-local formulas: twice the order of
// N/C on a cyclic odd Sylow; 2 for a cyclic Sylow 2-subgroup and 4 for a
// generalized quaternion one.
inline period_report period(const finite_group& g) {
  period_report rep;
  rep.periodic = true;
  long lcm_period = 1;
  for (long p : prime_divisors(g.order())) {
    per_prime_report pp;
    pp.prime = p;
    subgroup syl = sylow(g, p);
    pp.sylow_order = syl.order();
    auto sg = as_group(syl);
    pp.sylow_class = p == 2 ? classify_2group(sg.group)
                            : (is_cyclic(sg.group) ? two_group_class::cyclic : two_group_class::other);
    pp.rank = p_rank(g, p);
    auto [n, c] = norm_cent(g, syl);
    pp.phi_order = n.order() / c.order();
    if (p == 2) {
      if (pp.sylow_class == two_group_class::cyclic)
        pp.p_period = 2;
      else if (pp.sylow_class == two_group_class::generalized_quaternion)
        pp.p_period = 4;
    } else if (pp.sylow_class == two_group_class::cyclic) {
      pp.p_period = 2 * pp.phi_order;
    }
    if (pp.p_period)
      lcm_period = std::lcm(lcm_period, *pp.p_period);
    else
      rep.periodic = false;
    rep.per_prime.push_back(std::move(pp));
  }
  if (rep.periodic) rep.period = g.order() == 1 ? 2 : lcm_period;
  return rep;
}

}  // namespace rhs3

#endif
