#ifndef RHS3_THEOREMS_HPP
#define RHS3_THEOREMS_HPP

#include <optional>
#include <string>
#include <vector>

#include "rhs3/catalog.hpp"
#include "rhs3/cohomology.hpp"
#include "rhs3/structure.hpp"

namespace rhs3 {

// ---- constraint rules ----

enum class constraint_rule {
  rank_bound,
  p_part_not_cyclic,
  syl2_not_cyclic_or_dihedral,
  sylp_odd_not_cyclic,
  syl_not_cyclic_or_quaternion,
  pgroup_dichotomy,
};

inline const char* to_string(constraint_rule r) {
  switch (r) {
    case constraint_rule::rank_bound: return "rank_bound";
    case constraint_rule::p_part_not_cyclic: return "p_part_not_cyclic";
    case constraint_rule::syl2_not_cyclic_or_dihedral: return "syl2_not_cyclic_or_dihedral";
    case constraint_rule::sylp_odd_not_cyclic: return "sylp_odd_not_cyclic";
    case constraint_rule::syl_not_cyclic_or_quaternion: return "syl_not_cyclic_or_quaternion";
    case constraint_rule::pgroup_dichotomy: return "pgroup_dichotomy";
  }
  return "?";
}

struct constraint_violation {
  constraint_rule rule;
  std::optional<long> prime;
  std::string detail;
};

// Every rule violated by the hypothesis "G acts freely and homologically
// trivially on a rational homology sphere whose first homology has the given
// invariant factors". Violations accumulate; nothing short-circuits.
inline std::vector<constraint_violation> homology_constraints(const finite_group& g,
                                                              const std::vector<long>& h1) {
  long h1_order = 1;
  for (std::size_t i = 0; i < h1.size(); ++i) {
    if (h1[i] < 2 || (i + 1 < h1.size() && h1[i + 1] % h1[i] != 0))
      fail(errc::bad_invariant_factors, "not an invariant-factor chain");
    h1_order *= h1[i];
  }

  std::vector<constraint_violation> out;
  std::vector<long> primes = prime_divisors(g.order());
  for (long p : primes) {
    int r = p_rank(g, p);
    if (r > 2)
      out.push_back({constraint_rule::rank_bound, p,
                     "elementary abelian subgroup of rank " + std::to_string(r) + " at p = " +
                         std::to_string(p)});
  }
  for (long p : primes) {
    if (h1_order % p != 0) continue;
    int with_p = 0;
    for (long d : h1)
      if (d % p == 0) ++with_p;
    if (with_p > 1)
      out.push_back({constraint_rule::p_part_not_cyclic, p,
                     "the p-part of the coefficients is not cyclic at p = " + std::to_string(p)});
  }
  for (long p : primes) {
    auto syl = as_group(sylow(g, p));
    if (p == 2) {
      two_group_class c = classify_2group(syl.group);
      if (h1_order % 2 == 0) {
        if (c != two_group_class::cyclic && !counts_as_dihedral(c))
          out.push_back({constraint_rule::syl2_not_cyclic_or_dihedral, 2L,
                         std::string("Sylow 2-subgroup is ") + to_string(c)});
      } else {
        if (c != two_group_class::cyclic && c != two_group_class::generalized_quaternion)
          out.push_back({constraint_rule::syl_not_cyclic_or_quaternion, 2L,
                         std::string("Sylow 2-subgroup is ") + to_string(c)});
      }
    } else {
      bool cyc = is_cyclic(syl.group);
      if (!cyc)
        out.push_back({constraint_rule::sylp_odd_not_cyclic, p,
                       "Sylow p-subgroup is not cyclic at p = " + std::to_string(p)});
      if (!cyc && h1_order % p != 0)
        out.push_back({constraint_rule::syl_not_cyclic_or_quaternion, p,
                       "Sylow p-subgroup is not cyclic at p = " + std::to_string(p)});
    }
  }
  return out;
}

// ---- the periodic-cover search ----

// One admissible central extension 1 -> Z/m -> Q -> G -> 1 whose total group
// has periodic cohomology of period two or four.
struct cover_witness {
  long m = 1;
  two_cocycle cls;
  central_extension ext;
  long period = 2;
  std::vector<long> nonsplit_primes;  // primes where every order-p restriction is non-split
};

struct cover_search_result {
  long m = 1;
  std::vector<long> h2_factors;
  long classes_examined = 0;
  bool exhaustive = true;  // full class enumeration (|H^2| within the limit)
  std::vector<cover_witness> witnesses;
};

// Enumerate the classes of H^2(G, Z/m), build each central extension, and
// keep those with periodic total group of period two or four. Above the
// enumeration limit only the cyclic subgroups generated by the computed
// representatives are sampled.
inline cover_search_result periodic_cover_search(const finite_group& g, long m,
                                                 const budgets& b = default_budgets()) {
  cover_search_result out;
  out.m = m;
  if (m * g.order() > b.closure_bound)
    fail(errc::order_bound_exceeded, "extension order exceeds the closure bound");

  std::vector<two_cocycle> classes;
  if (m == 1 || g.order() == 1) {
    classes.push_back(zero_cocycle(g, m));
  } else {
    cohomology_group h = h2_trivial(g, m, b);
    out.h2_factors = h.invariant_factors;
    if (h.order() <= b.enumerate_limit) {
      classes = enumerate_classes(h, b.enumerate_limit);
    } else {
      out.exhaustive = false;
      classes.push_back(zero_cocycle(g, m));
      for (std::size_t i = 0; i < h.representatives.size(); ++i)
        for (long t = 1; t < h.invariant_factors[i]; ++t)
          classes.push_back(cocycle_scale(h.representatives[i], t));
    }
  }
  out.classes_examined = static_cast<long>(classes.size());

  // order-p subgroups of G at primes dividing gcd(m, |G|)
  std::vector<std::pair<long, std::vector<subgroup>>> small_subgroups;
  for (long p : prime_divisors(std::gcd(m, g.order()))) {
    std::vector<subgroup> subs;
    std::vector<std::vector<std::int32_t>> seen;
    for (std::int32_t x = 0; x < g.order(); ++x) {
      if (g.element_order(x) != p) continue;
      subgroup s = cyclic_subgroup(g, x);
      if (std::find(seen.begin(), seen.end(), s.members) != seen.end()) continue;
      seen.push_back(s.members);
      subs.push_back(std::move(s));
    }
    small_subgroups.emplace_back(p, std::move(subs));
  }

  for (const auto& f : classes) {
    central_extension ext = extension_from_cocycle(g, m, f, b);
    period_report per = period(ext.total);
    if (!per.periodic || (*per.period != 2 && *per.period != 4)) continue;
    cover_witness w;
    w.m = m;
    w.cls = f;
    w.period = *per.period;
    for (const auto& [p, subs] : small_subgroups) {
      bool all_nonsplit = !subs.empty();
      for (const subgroup& s : subs)
        if (is_split_class(restrict_class(f, s))) {
          all_nonsplit = false;
          break;
        }
      if (all_nonsplit) w.nonsplit_primes.push_back(p);
    }
    w.ext = std::move(ext);
    out.witnesses.push_back(std::move(w));
  }
  return out;
}

// ---- verdicts ----

enum class verdict_tag {
  cannot_act,
  necessary_conditions_met,
  no_obstruction_found,
  can_act_by_construction,
};

inline const char* to_string(verdict_tag t) {
  switch (t) {
    case verdict_tag::cannot_act: return "cannot_act";
    case verdict_tag::necessary_conditions_met: return "necessary_conditions_met";
    case verdict_tag::no_obstruction_found: return "no_obstruction_found";
    case verdict_tag::can_act_by_construction: return "can_act_by_construction";
  }
  return "?";
}

struct obstruction_certificate {
  std::string q_spec;   // catalog construction whose quotient matches
  finite_group q;
  subgroup h;           // central cyclic subgroup of q
  homomorphism witness; // isomorphism from q/h onto the input group
};

struct verdict {
  verdict_tag tag = verdict_tag::no_obstruction_found;
  std::vector<constraint_violation> violations;
  std::optional<obstruction_certificate> certificate;
  std::optional<std::string> condition;  // a conditional construction, never unconditional
  std::string note;
};

// Search the constructible period-four groups of quaternionic type with order
// divisible by 16 (n even) and octahedral type, together with their coprime
// cyclic products, for a presentation of G as a central cyclic quotient.
inline verdict quotient_obstruction_verdict(const finite_group& g, long order_bound,
                                            const budgets& b = default_budgets()) {
  if (g.order() > b.iso_bound)
    fail(errc::order_bound_exceeded, "group exceeds the isomorphism bound");
  verdict v;
  for (auto& entry : type_catalog(order_bound, b)) {
    if (entry.tag != milnor_tag::type_B && entry.tag != milnor_tag::type_C) continue;
    if (entry.order % g.order() != 0) continue;
    long index = entry.order / g.order();
    finite_group q = entry.build();
    for (const subgroup& h : central_cyclic_subgroups(q)) {
      if (h.order() != index) continue;
      auto [qg, proj] = quotient(q, h);
      auto [iso, wit] = is_isomorphic(qg, g, b);
      if (!iso) continue;
      v.tag = verdict_tag::cannot_act;
      v.certificate = obstruction_certificate{entry.spec, q, h, *wit};
      v.note = "quotient of " + entry.spec + " by a central cyclic subgroup of order " +
               std::to_string(index);
      return v;
    }
  }
  v.tag = verdict_tag::no_obstruction_found;
  v.note = "no type B/C cover of order <= " + std::to_string(order_bound);
  return v;
}

// The prime-power dichotomy, for actions with nontrivial p-torsion in the
// coefficients: cyclic groups act for every p; dihedral 2-groups (Klein four
// included) act with 2-torsion exactly Z/2; nothing else does.
inline verdict p_group_verdict(const finite_group& p) {
  long n = p.order();
  std::vector<long> primes = prime_divisors(n);
  if (primes.size() > 1) fail(errc::not_a_pgroup, "order is not a prime power");
  verdict v;
  if (n == 1 || is_cyclic(p)) {
    v.tag = verdict_tag::can_act_by_construction;
    v.note = "cyclic prime-power group acts with nontrivial p-torsion coefficients";
    return v;
  }
  if (primes[0] == 2) {
    two_group_class c = classify_2group(p);
    if (counts_as_dihedral(c)) {
      v.tag = verdict_tag::can_act_by_construction;
      v.note = "dihedral 2-group acts; the coefficient 2-part must be exactly Z/2";
      return v;
    }
  }
  v.tag = verdict_tag::cannot_act;
  v.violations.push_back({constraint_rule::pgroup_dichotomy, primes[0],
                          "prime-power group that is neither cyclic nor dihedral"});
  v.note = "no action with nontrivial p-torsion coefficients exists";
  return v;
}

// Conditional transfer for type A: if Q acts freely and homologically
// trivially (necessarily with coprime cyclic coefficients), so does Q/T.
inline verdict type_a_quotient_transfer(const finite_group& q, const subgroup& t,
                                        const budgets& b = default_budgets()) {
  if (q.data() != t.parent.data()) fail(errc::subgroup_mismatch, "subgroup of a different group");
  milnor_type_result mt = milnor_type(q, b);
  if (mt.tag != milnor_tag::type_A) fail(errc::wrong_type, "input is not of type A");
  subgroup z = center(q);
  for (std::int32_t x : t.members)
    if (!z.contains(x)) fail(errc::not_central_cyclic, "subgroup is not central");
  bool cyclic_sub = false;
  for (std::int32_t x : t.members)
    if (static_cast<long>(cyclic_subgroup(q, x).members.size()) == t.order()) cyclic_sub = true;
  if (!cyclic_sub) fail(errc::not_central_cyclic, "subgroup is not cyclic");

  verdict v;
  v.tag = verdict_tag::can_act_by_construction;
  v.condition = "conditional on " + mt.matched +
                " acting freely and homologically trivially with cyclic coefficients of order "
                "coprime to its own";
  v.note = "transfers the action to the quotient of order " +
           std::to_string(q.order() / t.order());
  return v;
}

// ---- numeric residue criteria ----

struct swan_checks {
  bool mod8_ok = false;    // d = +-1 (mod 8)
  bool square_ok = false;  // d is a square mod 8ab
};

inline swan_checks swan_numeric_checks(long d, long a, long b) {
  if (d % 2 == 0) fail(errc::even_d, "d must be odd");
  if (d < 0 || a < 1 || b < 1) fail(errc::bad_parameter, "parameters must be positive");
  swan_checks out;
  out.mod8_ok = d % 8 == 1 || d % 8 == 7;
  long mod = 8 * a * b;
  for (long r = 0; r < mod && !out.square_ok; ++r)
    if ((r * r) % mod == d % mod) out.square_ok = true;
  return out;
}

enum class swan_vanishing { vanishes, unknown };

// The two computable vanishing cases for the top component S(pq): both primes
// congruent to +-3 mod 8, or p = 1 mod 8 with q = +-3 mod 8 and 2 of odd
// multiplicative order mod p. Never claims non-vanishing.
inline swan_vanishing s_pq_vanishes(long p, long q) {
  if (!is_prime(p) || !is_prime(q) || p % 2 == 0 || q % 2 == 0 || p <= q)
    fail(errc::bad_primes, "expected odd primes p > q");
  auto pm3 = [](long x) { return x % 8 == 3 || x % 8 == 5; };
  if (pm3(p) && pm3(q)) return swan_vanishing::vanishes;
  if (p % 8 == 1 && pm3(q)) {
    long ord = 1, pow = 2 % p;
    while (pow != 1) {
      pow = (pow * 2) % p;
      ++ord;
    }
    if (ord % 2 == 1) return swan_vanishing::vanishes;
  }
  return swan_vanishing::unknown;
}

// ---- the aggregate report ----

struct classification_report {
  long order = 1;
  std::string origin;
  std::vector<long> abelianization;
  period_report periodicity;
  std::optional<milnor_type_result> milnor;
  std::optional<std::string> milnor_error;
  std::vector<constraint_violation> constraints_trivial_h1;
  std::vector<constraint_violation> constraints_even_h1;
  std::vector<cover_search_result> covers;
  std::vector<long> skipped_m;
  long m_bound_used = 0;
  std::optional<verdict> p_group;
  std::optional<verdict> quotient_obstruction;
  std::optional<std::string> quotient_obstruction_error;
  long obstruction_bound_used = 0;
  bool obstructed = false;
  std::vector<std::string> errors;
};

inline std::vector<long> abelianization_invariants(const finite_group& g) {
  auto [ab, proj] = quotient(g, commutator_subgroup(g));
  return abelian_invariants_from_torsion(ab.order(), [&ab](long k) {
    long c = 0;
    for (std::int32_t i = 0; i < ab.order(); ++i)
      if (k % ab.element_order(i) == 0) ++c;
    return c;
  });
}

// Assemble the full report: structural data, constraint checks under the
// trivial and an even coefficient hypothesis, the periodic-cover search over
// every admissible kernel order within budget, and the quotient obstruction.
inline classification_report classify(const finite_group& g, const budgets& b = default_budgets(),
                                      std::optional<long> obstruction_bound = std::nullopt) {
  classification_report rep;
  rep.order = g.order();
  rep.origin = g.origin();
  rep.abelianization = abelianization_invariants(g);
  rep.periodicity = period(g);

  try {
    rep.milnor = milnor_type(g, b);
  } catch (const error& e) {
    rep.milnor_error = std::string(errc_name(e.code())) + ": " + e.what();
  }

  rep.constraints_trivial_h1 = homology_constraints(g, {});
  rep.constraints_even_h1 = homology_constraints(g, {2});

  // kernel orders supported on the primes of |G|, capped by the configured
  // m-bound and by the extension order budget
  rep.m_bound_used = std::min(b.m_bound, g.order() * g.order());
  for (long m = 2; m <= rep.m_bound_used; ++m) {
    bool admissible = true;
    for (long p : prime_divisors(m))
      if (g.order() % p != 0) admissible = false;
    if (!admissible) continue;
    if (m * g.order() > b.closure_bound || m * g.order() > b.extension_order_bound) {
      rep.skipped_m.push_back(m);
      continue;
    }
    try {
      rep.covers.push_back(periodic_cover_search(g, m, b));
    } catch (const error& e) {
      rep.skipped_m.push_back(m);
      rep.errors.push_back("m=" + std::to_string(m) + ": " + errc_name(e.code()));
    }
  }

  if (prime_divisors(g.order()).size() <= 1) rep.p_group = p_group_verdict(g);

  rep.obstruction_bound_used = obstruction_bound.value_or(std::min(b.iso_bound, 4 * g.order()));
  try {
    rep.quotient_obstruction = quotient_obstruction_verdict(g, rep.obstruction_bound_used, b);
  } catch (const error& e) {
    rep.quotient_obstruction_error = std::string(errc_name(e.code())) + ": " + e.what();
  }

  // Obstructed outright: a quotient-obstruction certificate, or a constraint
  // violated under every coefficient hypothesis (odd and even alike). The
  // p-group verdict is not folded in here; it concerns actions with
  // nontrivial p-torsion coefficients only.
  bool qo_cannot =
      rep.quotient_obstruction && rep.quotient_obstruction->tag == verdict_tag::cannot_act;
  rep.obstructed = qo_cannot ||
                   (!rep.constraints_trivial_h1.empty() && !rep.constraints_even_h1.empty());
  return rep;
}

}  // namespace rhs3

#endif
