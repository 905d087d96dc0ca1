#ifndef RHS3_CATALOG_HPP
#define RHS3_CATALOG_HPP

#include <array>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "rhs3/group.hpp"
#include "rhs3/structure.hpp"

namespace rhs3 {

// ---- standard families ----

inline finite_group make_cyclic(long n, const budgets& b = default_budgets()) {
  if (n < 1) fail(errc::bad_parameter, "cyclic order must be positive");
  if (n > b.closure_bound) fail(errc::order_bound_exceeded, "cyclic order exceeds bound");
  if (n == 1) return finite_group{};
  std::vector<point> cyc(n);
  std::iota(cyc.begin(), cyc.end(), point{0});
  permutation gen = permutation::from_cycles(n, {cyc});
  std::vector<permutation> elems;
  permutation acc = permutation::identity(n);
  for (long i = 0; i < n; ++i) {
    elems.push_back(acc);
    acc = gen * acc;
  }
  return detail::from_elements(n, std::move(elems), {gen}, "C(" + std::to_string(n) + ")",
                               b.table_cache_limit);
}

// Dihedral group of the given ORDER (even, >= 4); order 4 is the Klein four
// group realized on four points.
inline finite_group make_dihedral(long order, const budgets& b = default_budgets()) {
  if (order < 4 || order % 2 != 0) fail(errc::bad_parameter, "dihedral order must be even and >= 4");
  if (order > b.closure_bound) fail(errc::order_bound_exceeded, "dihedral order exceeds bound");
  long m = order / 2;
  if (m == 2) {
    permutation a = permutation::from_cycles(4, {{0, 1}});
    permutation c = permutation::from_cycles(4, {{2, 3}});
    return group_from_permutations({a, c}, b, "D(4)");
  }
  std::vector<point> rot(m);
  std::iota(rot.begin(), rot.end(), point{0});
  permutation r = permutation::from_cycles(m, {rot});
  std::vector<std::vector<point>> swaps;
  for (long i = 1; i * 2 < m; ++i)
    swaps.push_back({static_cast<point>(i), static_cast<point>(m - i)});
  permutation s = permutation::from_cycles(m, swaps);
  return group_from_permutations({r, s}, b, "D(" + std::to_string(order) + ")");
}

// Binary dihedral group Q(4n) of ORDER 4n on pairs (i, eps) in Z/2n x {0,1}:
// a^{2n} = 1, b^2 = a^n, b a b^{-1} = a^{-1}. Generators are pushed in the
// order (a, b); a is the long generator of order 2n (or 4n as an element of
// the group when n > 1: a has order 2n, and the element orders follow).
inline finite_group make_binary_dihedral(long order, const budgets& b = default_budgets()) {
  if (order < 4 || order % 4 != 0) fail(errc::bad_parameter, "binary dihedral order must be divisible by 4");
  if (order > b.closure_bound) fail(errc::order_bound_exceeded, "order exceeds bound");
  long two_n = order / 2;
  long n = order / 4;
  auto idx = [&](long i, long eps) {
    return static_cast<point>(((i % two_n + two_n) % two_n) + eps * two_n);
  };
  std::vector<point> a(order), bb(order);
  for (long i = 0; i < two_n; ++i) {
    a[idx(i, 0)] = idx(i + 1, 0);
    a[idx(i, 1)] = idx(i + 1, 1);
    bb[idx(i, 0)] = idx(-i, 1);
    bb[idx(i, 1)] = idx(n - i, 0);
  }
  return group_from_permutations({permutation(a), permutation(bb)}, b,
                                 "Q(" + std::to_string(order) + ")");
}

namespace detail {

// A 2x2 matrix over F_p acting on the p^2 - 1 nonzero column vectors.
inline permutation matrix_perm(long p, std::array<long, 4> m) {
  auto norm = [p](long v) { return ((v % p) + p) % p; };
  std::vector<point> img(p * p - 1);
  for (long x = 0; x < p; ++x)
    for (long y = 0; y < p; ++y) {
      if (x == 0 && y == 0) continue;
      long nx = norm(m[0] * x + m[1] * y);
      long ny = norm(m[2] * x + m[3] * y);
      img[x * p + y - 1] = static_cast<point>(nx * p + ny - 1);
    }
  return permutation(std::move(img));
}

}  // namespace detail

inline finite_group make_sl2(long p, const budgets& b = default_budgets(),
                             std::string origin = "") {
  if (!is_prime(p) || p % 2 == 0 || p > 13)
    fail(errc::bad_parameter, "SL(2,p) supported for odd primes p <= 13");
  permutation s = detail::matrix_perm(p, {0, p - 1, 1, 0});
  permutation t = detail::matrix_perm(p, {1, 1, 0, 1});
  if (origin.empty()) origin = "SL(2," + std::to_string(p) + ")";
  finite_group g = group_from_permutations({s, t}, b, std::move(origin));
  if (g.order() != p * (p * p - 1)) fail(errc::internal, "SL(2,p) closure has the wrong order");
  return g;
}

inline finite_group make_binary_tetrahedral(const budgets& b = default_budgets()) {
  return make_sl2(3, b, "BT");
}

inline finite_group make_binary_icosahedral(const budgets& b = default_budgets()) {
  return make_sl2(5, b, "BI");
}

// The binary octahedral group as the preimage of the octahedral S4 inside
// SL(2,7): generated by w = (-1+i+j+k)/2 and s = (1+i)/sqrt(2) written as
// matrices over F_7. Generators are pushed in the order (w, s); w lies in the
// commutator subgroup BT, s maps onto the nontrivial abelianization class.
inline finite_group make_binary_octahedral(const budgets& b = default_budgets()) {
  permutation w = detail::matrix_perm(7, {6, 2, 3, 0});
  permutation s = detail::matrix_perm(7, {5, 2, 5, 5});
  finite_group g = group_from_permutations({w, s}, b, "BO");
  if (g.order() != 48) fail(errc::internal, "binary octahedral closure has the wrong order");
  return g;
}

namespace detail {

inline long crt_unit(long k, long rk, long l, long rl) {
  // value mod k*l that is rk mod k and rl mod l (k, l coprime)
  for (long u = 0; u < k * l; ++u)
    if (u % k == ((rk % k) + k) % k && u % l == ((rl % l) + l) % l) return u;
  fail(errc::internal, "CRT lift not found");
}

}  // namespace detail

// Q(8n, k, l) = (Z/kl) : Q(8n): the order-4n generator acts as (-1 mod k,
// +1 mod l) and the order-4 generator as (+1 mod k, -1 mod l), through the
// abelianization Q(8n) -> C2 x C2.
inline finite_group make_Q8nkl(long n, long k, long l, const budgets& b = default_budgets()) {
  if (n < 1 || k < 1 || l < 1) fail(errc::bad_parameter, "parameters must be positive");
  if (std::gcd(8 * n, k) != 1 || std::gcd(8 * n, l) != 1 || std::gcd(k, l) != 1)
    fail(errc::bad_parameter, "8n, k, l must be pairwise coprime");
  finite_group base = make_binary_dihedral(8 * n, b);
  long kl = k * l;
  long u_long = detail::crt_unit(k, -1, l, 1);
  long u_short = detail::crt_unit(k, 1, l, -1);
  finite_group g = semidirect_cyclic(kl, base, {u_long, u_short}, b,
                                     "Q(" + std::to_string(8 * n) + "," + std::to_string(k) + "," +
                                         std::to_string(l) + ")");
  if (g.order() != 8 * n * k * l) fail(errc::internal, "Q(8n,k,l) has the wrong order");
  return g;
}

// O(48, k, l) = (Z/kl) : BO, acting through the C2 abelianization: the class
// of s inverts the Z/k part and fixes the Z/l part.
inline finite_group make_O48kl(long k, long l, const budgets& b = default_budgets()) {
  if (k < 1 || l < 1) fail(errc::bad_parameter, "parameters must be positive");
  if (std::gcd(48L, k) != 1 || std::gcd(48L, l) != 1 || std::gcd(k, l) != 1)
    fail(errc::bad_parameter, "48, k, l must be pairwise coprime");
  finite_group base = make_binary_octahedral(b);
  long u_w = 1 % (k * l);
  long u_s = detail::crt_unit(k, -1, l, 1);
  finite_group g = semidirect_cyclic(k * l, base, {u_w, u_s}, b,
                                     "O(48," + std::to_string(k) + "," + std::to_string(l) + ")");
  if (g.order() != 48 * k * l) fail(errc::internal, "O(48,k,l) has the wrong order");
  return g;
}

// ---- recognition ----

enum class milnor_tag { hopf, type_A, type_B, type_C, not_period_four };

inline const char* to_string(milnor_tag t) {
  switch (t) {
    case milnor_tag::hopf: return "hopf";
    case milnor_tag::type_A: return "type_A";
    case milnor_tag::type_B: return "type_B";
    case milnor_tag::type_C: return "type_C";
    case milnor_tag::not_period_four: return "not_period_four";
  }
  return "?";
}

struct milnor_type_result {
  milnor_tag tag = milnor_tag::not_period_four;
  bool product_with_cyclic = false;  // nontrivial coprime cyclic cofactor (types A/B/C only)
  long cofactor = 1;
  std::optional<std::array<long, 3>> q_params;  // (n, k, l)
  std::optional<std::array<long, 2>> o_params;  // (k, l)
  std::string matched;                          // construction the group matched
};

namespace detail {

struct family_candidate {
  std::string spec;
  milnor_tag tag;
  long cofactor;
  std::optional<std::array<long, 3>> q_params;
  std::optional<std::array<long, 2>> o_params;
  std::function<finite_group()> build;
};

// All constructible fixed-point-free families of exactly the given order,
// in deterministic order.
inline std::vector<family_candidate> hopf_candidates(long n, budgets b) {
  std::vector<family_candidate> out;
  out.push_back({"C(" + std::to_string(n) + ")", milnor_tag::hopf, 1, {}, {},
                 [n, b] { return make_cyclic(n, b); }});
  for (long a = 2; 4 * a <= n; ++a) {
    if (n % (4 * a) != 0) continue;
    long m = n / (4 * a);
    if (std::gcd(4 * a, m) != 1) continue;
    std::string spec = "Q(" + std::to_string(4 * a) + ")";
    if (m > 1) spec += " x C(" + std::to_string(m) + ")";
    out.push_back({spec, milnor_tag::hopf, m, {}, {}, [a, m, b] {
                     finite_group q = make_binary_dihedral(4 * a, b);
                     if (m == 1) return q;
                     return direct_product(q, make_cyclic(m, b), b).group;
                   }});
  }
  struct poly {
    const char* name;
    long order;
    finite_group (*make)(const budgets&);
  };
  static constexpr poly polys[] = {{"BT", 24, &make_binary_tetrahedral},
                                   {"BO", 48, &make_binary_octahedral},
                                   {"BI", 120, &make_binary_icosahedral}};
  for (const auto& fam : polys) {
    if (n % fam.order != 0) continue;
    long m = n / fam.order;
    if (std::gcd(fam.order, m) != 1) continue;
    std::string spec = fam.name;
    if (m > 1) spec += " x C(" + std::to_string(m) + ")";
    out.push_back({spec, milnor_tag::hopf, m, {}, {}, [fam, m, b] {
                     finite_group q = fam.make(b);
                     if (m == 1) return q;
                     return direct_product(q, make_cyclic(m, b), b).group;
                   }});
  }
  // SL(2,p) for p >= 7 is periodic but of period lcm(4, p-1) > 4 (the Sylow-p
  // normalizer induces (p-1)/2 automorphisms), so it never appears here.
  return out;
}

// Non-space-form period-four families of exactly the given order, in
// Milnor-normalized parameters. The l slot of Q(8n,k,l) folds into the binary
// dihedral part, Q(8,b,1) is the binary dihedral Q(8b), and for odd a the
// swap Q(8a,b,1) = Q(8b,a,1) holds, so (a, b, 1) with a >= 2, b >= 3 and
// a > b whenever a is odd enumerates each member exactly once.
inline std::vector<family_candidate> type_candidates(long n, budgets b) {
  std::vector<family_candidate> out;
  for (long a = 2; 8 * a <= n; ++a) {
    if (n % (8 * a) != 0) continue;
    for (long bb = 3; 8 * a * bb <= n; bb += 2) {
      if (n % (8 * a * bb) != 0 || std::gcd(8 * a, bb) != 1) continue;
      if (a % 2 == 1 && bb > a) continue;
      long m = n / (8 * a * bb);
      if (std::gcd(8 * a * bb, m) != 1) continue;
      std::string spec = "Q(" + std::to_string(8 * a) + "," + std::to_string(bb) + ",1)";
      if (m > 1) spec += " x C(" + std::to_string(m) + ")";
      out.push_back({spec, a % 2 == 1 ? milnor_tag::type_A : milnor_tag::type_B, m,
                     std::array<long, 3>{a, bb, 1}, {}, [a, bb, m, b] {
                       finite_group q = make_Q8nkl(a, bb, 1, b);
                       if (m == 1) return q;
                       return direct_product(q, make_cyclic(m, b), b).group;
                     }});
    }
  }
  for (long k = 5; 48 * k <= n; k += 2) {
    if (n % (48 * k) != 0 || std::gcd(48L, k) != 1) continue;
    long m = n / (48 * k);
    if (std::gcd(48 * k, m) != 1) continue;
    std::string spec = "O(48," + std::to_string(k) + ",1)";
    if (m > 1) spec += " x C(" + std::to_string(m) + ")";
    out.push_back({spec, milnor_tag::type_C, m, {}, std::array<long, 2>{k, 1}, [k, m, b] {
                     finite_group q = make_O48kl(k, 1, b);
                     if (m == 1) return q;
                     return direct_product(q, make_cyclic(m, b), b).group;
                   }});
  }
  return out;
}

}  // namespace detail

// Classify a period-four group against the constructible families. Groups
// that are periodic of period dividing four but match nothing constructible
// are reported as unrecognized rather than guessed.
inline milnor_type_result milnor_type(const finite_group& g, const budgets& b = default_budgets()) {
  if (g.order() > b.iso_bound)
    fail(errc::order_bound_exceeded, "group exceeds the isomorphism bound");
  period_report per = period(g);
  if (!per.periodic || (*per.period != 2 && *per.period != 4))
    return milnor_type_result{milnor_tag::not_period_four, false, 1, {}, {}, ""};

  auto try_all = [&](const std::vector<detail::family_candidate>& cands,
                     bool products) -> std::optional<milnor_type_result> {
    for (const auto& c : cands) {
      finite_group cand = c.build();
      if (!is_isomorphic(g, cand, b).first) continue;
      milnor_type_result r;
      r.tag = c.tag;
      r.product_with_cyclic = products && c.cofactor > 1;
      r.cofactor = c.cofactor;
      r.q_params = c.q_params;
      r.o_params = c.o_params;
      r.matched = c.spec;
      return r;
    }
    return std::nullopt;
  };
  if (auto r = try_all(detail::hopf_candidates(g.order(), b), false)) return *r;
  if (auto r = try_all(detail::type_candidates(g.order(), b), true)) return *r;
  fail(errc::unrecognized,
       "periodic of period dividing four, but outside the constructible families");
}

// D(2n) x C(m) decomposition with gcd(2n, m) = 1, if one exists.
inline std::optional<std::pair<long, long>> dihedral_times_cyclic_check(
    const finite_group& g, const budgets& b = default_budgets()) {
  for (long d = 4; d <= g.order(); d += 2) {
    if (g.order() % d != 0) continue;
    long m = g.order() / d;
    if (std::gcd(d, m) != 1) continue;
    finite_group cand = make_dihedral(d, b);
    if (m > 1) cand = direct_product(cand, make_cyclic(m, b), b).group;
    if (is_isomorphic(g, cand, b).first) return std::make_pair(d, m);
  }
  return std::nullopt;
}

// ---- catalog enumeration ----

struct catalog_entry {
  std::string spec;
  long order = 0;
  milnor_tag tag = milnor_tag::hopf;
  bool product_with_cyclic = false;
  long cofactor = 1;
  std::function<finite_group()> build;
};

// Every constructible Hopf-list member of order <= max_order.
inline std::vector<catalog_entry> hopf_catalog(long max_order, const budgets& b = default_budgets()) {
  std::vector<catalog_entry> out;
  for (long n = 1; n <= max_order; ++n)
    for (auto& c : detail::hopf_candidates(n, b))
      out.push_back({c.spec, n, milnor_tag::hopf, false, c.cofactor, std::move(c.build)});
  return out;
}

// Every nondegenerate type A/B/C member of order <= max_order, products with
// coprime cyclic groups included.
inline std::vector<catalog_entry> type_catalog(long max_order, const budgets& b = default_budgets()) {
  std::vector<catalog_entry> out;
  for (long n = 8; n <= max_order; ++n)
    for (auto& c : detail::type_candidates(n, b))
      out.push_back({c.spec, n, c.tag, c.cofactor > 1, c.cofactor, std::move(c.build)});
  return out;
}

}  // namespace rhs3

#endif
