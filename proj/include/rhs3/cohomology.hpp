#ifndef RHS3_COHOMOLOGY_HPP
#define RHS3_COHOMOLOGY_HPP

#include <array>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "rhs3/config.hpp"
#include "rhs3/group.hpp"
#include "rhs3/linalg.hpp"

namespace rhs3 {

// A normalized 2-cocycle G x G -> Z/m with trivial action.
struct two_cocycle {
  finite_group group;
  long modulus = 1;
  std::vector<std::int32_t> values;  // row-major: values[g * |G| + h]

  long at(std::int32_t g, std::int32_t h) const {
    return values[static_cast<std::size_t>(g) * group.order() + h];
  }
  std::int32_t& at(std::int32_t g, std::int32_t h) {
    return values[static_cast<std::size_t>(g) * group.order() + h];
  }
};

inline two_cocycle zero_cocycle(const finite_group& g, long m) {
  return two_cocycle{g, m, std::vector<std::int32_t>(static_cast<std::size_t>(g.order()) * g.order(), 0)};
}

inline two_cocycle cocycle_add(const two_cocycle& a, const two_cocycle& b) {
  if (a.group.data() != b.group.data() || a.modulus != b.modulus)
    fail(errc::subgroup_mismatch, "cocycles live on different groups");
  two_cocycle r = a;
  for (std::size_t i = 0; i < r.values.size(); ++i)
    r.values[i] = static_cast<std::int32_t>((r.values[i] + b.values[i]) % r.modulus);
  return r;
}

inline two_cocycle cocycle_scale(const two_cocycle& a, long t) {
  two_cocycle r = a;
  t %= r.modulus;
  if (t < 0) t += r.modulus;
  for (auto& v : r.values) v = static_cast<std::int32_t>((static_cast<long long>(v) * t) % r.modulus);
  return r;
}

// Normalization plus the cocycle identity on every (x, y, generator) triple,
// which extends to all triples by induction on word length.
inline bool is_valid_cocycle(const two_cocycle& f) {
  const finite_group& g = f.group;
  const long n = g.order();
  if (f.modulus < 1 || f.values.size() != static_cast<std::size_t>(n) * n) return false;
  for (std::int32_t x = 0; x < n; ++x)
    if (f.at(g.identity(), x) != 0 || f.at(x, g.identity()) != 0) return false;
  for (const auto& v : f.values)
    if (v < 0 || v >= f.modulus) return false;
  std::vector<std::int32_t> gens = g.generators();
  if (gens.empty() && n > 1) return false;
  for (std::int32_t x = 0; x < n; ++x)
    for (std::int32_t y = 0; y < n; ++y) {
      std::int32_t xy = g.mul(x, y);
      for (std::int32_t z : gens) {
        long lhs = f.at(x, y) + f.at(xy, z);
        long rhs = f.at(y, z) + f.at(x, g.mul(y, z));
        if ((lhs - rhs) % f.modulus != 0) return false;
      }
    }
  return true;
}

struct cohomology_group {
  finite_group group;
  long modulus = 1;
  std::vector<long> invariant_factors;       // ascending divisibility chain
  std::vector<two_cocycle> representatives;  // one generator per factor (degree 2 only)

  long order() const {
    long n = 1;
    for (long f : invariant_factors) n *= f;
    return n;
  }
};

// ---- Schreier presentation of a finite group on its Cayley graph ----

namespace detail {

struct presentation {
  finite_group g;
  std::vector<std::int32_t> gens;
  std::vector<std::int32_t> gen_inv;
  std::vector<std::vector<int>> sigma;       // tree word per element, letters +-(i+1)
  std::vector<std::int32_t> bfs_order;       // discovery order, identity first
  std::vector<int> discovered_by;            // letter that discovered the element (0 for identity)
  std::vector<std::int32_t> edge_relator;    // (x * r + i) -> relator index, -1 for tree edges
  std::vector<std::vector<int>> relators;    // words in letters +-(i+1)

  long r() const { return static_cast<long>(gens.size()); }
  long s() const { return static_cast<long>(relators.size()); }

  // Schreier rewriting: walk `word` from the identity and accumulate the
  // exponent of every non-tree edge crossed.
  void accumulate_tau(const std::vector<int>& word, std::vector<long>& coeffs) const {
    std::int32_t x = g.identity();
    for (int letter : word) {
      int i = std::abs(letter) - 1;
      if (letter > 0) {
        std::int32_t rel = edge_relator[static_cast<std::size_t>(x) * r() + i];
        if (rel >= 0) coeffs[rel] += 1;
        x = g.mul(x, gens[i]);
      } else {
        std::int32_t y = g.mul(x, gen_inv[i]);
        std::int32_t rel = edge_relator[static_cast<std::size_t>(y) * r() + i];
        if (rel >= 0) coeffs[rel] -= 1;
        x = y;
      }
    }
    if (x != g.identity()) fail(errc::internal, "rewrote a word that does not represent the identity");
  }
};

inline presentation make_presentation(const finite_group& g) {
  presentation p;
  p.g = g;
  p.gens = minimal_generators(g);
  const long n = g.order();
  const long r = static_cast<long>(p.gens.size());
  for (std::int32_t gi : p.gens) p.gen_inv.push_back(g.inv(gi));
  p.sigma.assign(n, {});
  p.discovered_by.assign(n, 0);
  p.edge_relator.assign(static_cast<std::size_t>(n) * std::max(r, 1L), -1);
  std::vector<char> seen(n, 0);
  std::vector<char> edge_tree(static_cast<std::size_t>(n) * std::max(r, 1L), 0);
  seen[g.identity()] = 1;
  p.bfs_order = {g.identity()};
  for (std::size_t head = 0; head < p.bfs_order.size(); ++head) {
    std::int32_t x = p.bfs_order[head];
    for (long i = 0; i < r; ++i) {
      std::int32_t fwd = g.mul(x, p.gens[i]);
      if (!seen[fwd]) {
        seen[fwd] = 1;
        edge_tree[static_cast<std::size_t>(x) * r + i] = 1;
        p.sigma[fwd] = p.sigma[x];
        p.sigma[fwd].push_back(static_cast<int>(i + 1));
        p.discovered_by[fwd] = static_cast<int>(i + 1);
        p.bfs_order.push_back(fwd);
      }
      std::int32_t bwd = g.mul(x, p.gen_inv[i]);
      if (!seen[bwd]) {
        seen[bwd] = 1;
        edge_tree[static_cast<std::size_t>(bwd) * r + i] = 1;  // edge bwd --g_i--> x
        p.sigma[bwd] = p.sigma[x];
        p.sigma[bwd].push_back(-static_cast<int>(i + 1));
        p.discovered_by[bwd] = -static_cast<int>(i + 1);
        p.bfs_order.push_back(bwd);
      }
    }
  }
  if (static_cast<long>(p.bfs_order.size()) != n)
    fail(errc::internal, "generators do not generate the group");
  // non-tree edges carry the relator basis
  for (std::int32_t x = 0; x < n; ++x)
    for (long i = 0; i < r; ++i) {
      if (edge_tree[static_cast<std::size_t>(x) * r + i]) continue;
      p.edge_relator[static_cast<std::size_t>(x) * r + i] = static_cast<std::int32_t>(p.relators.size());
      std::vector<int> word = p.sigma[x];
      word.push_back(static_cast<int>(i + 1));
      const std::vector<int>& back = p.sigma[g.mul(x, p.gens[i])];
      for (auto it = back.rbegin(); it != back.rend(); ++it) word.push_back(-*it);
      p.relators.push_back(std::move(word));
    }
  return p;
}

// Full cocycle table from values on the relator basis. Generator columns are
// the scattered relator values; the rest fills in along the spanning tree.
inline two_cocycle cocycle_from_relator_values(const presentation& p, const std::vector<long>& x,
                                               long m) {
  const finite_group& g = p.g;
  const long n = g.order();
  const long r = p.r();
  two_cocycle f = zero_cocycle(g, m);
  auto normv = [m](long long v) {
    long long t = v % m;
    if (t < 0) t += m;
    return static_cast<std::int32_t>(t);
  };
  // f(y, g_i) = value of the relator on edge (y, i); zero on tree edges
  std::vector<std::vector<std::int32_t>> gen_col(r, std::vector<std::int32_t>(n, 0));
  for (std::int32_t y = 0; y < n; ++y)
    for (long i = 0; i < r; ++i) {
      std::int32_t rel = p.edge_relator[static_cast<std::size_t>(y) * r + i];
      if (rel >= 0) gen_col[i][y] = normv(x[rel]);
    }
  for (std::int32_t a = 0; a < n; ++a) {
    for (std::size_t t = 1; t < p.bfs_order.size(); ++t) {
      std::int32_t h = p.bfs_order[t];
      int letter = p.discovered_by[h];
      int i = std::abs(letter) - 1;
      if (letter > 0) {
        // h = prev * g_i
        std::int32_t prev = g.mul(h, p.gen_inv[i]);
        f.at(a, h) = normv(static_cast<long long>(f.at(a, prev)) + gen_col[i][g.mul(a, prev)] -
                           gen_col[i][prev]);
      } else {
        // prev = h * g_i
        std::int32_t prev = g.mul(h, p.gens[i]);
        f.at(a, h) = normv(static_cast<long long>(f.at(a, prev)) - gen_col[i][g.mul(a, h)] +
                           gen_col[i][h]);
      }
    }
  }
  return f;
}

}  // namespace detail

// ---- second cohomology with trivial coefficients ----

// H^2(G, Z/m), computed from a presentation on the Cayley graph: homomorphisms
// from the relation module modulo restrictions of free-group homomorphisms.
inline cohomology_group h2_trivial(const finite_group& g, long m,
                                   const budgets& b = default_budgets()) {
  if (m < 1) fail(errc::bad_parameter, "modulus must be positive");
  if (g.order() > b.h2_bound)
    fail(errc::budget_exceeded, "group order exceeds the second-cohomology budget");
  cohomology_group out;
  out.group = g;
  out.modulus = m;
  if (g.order() == 1 || m == 1) return out;

  detail::presentation pres = detail::make_presentation(g);
  const long r = pres.r(), s = pres.s();

  row_emitter conj_rows = [&pres, r, s](const std::function<void(const std::vector<long>&)>& sink) {
    std::vector<long> row(s);
    std::vector<int> word;
    for (long j = 0; j < r; ++j)
      for (long k = 0; k < s; ++k) {
        std::fill(row.begin(), row.end(), 0L);
        word.clear();
        word.push_back(static_cast<int>(j + 1));
        word.insert(word.end(), pres.relators[k].begin(), pres.relators[k].end());
        word.push_back(-static_cast<int>(j + 1));
        pres.accumulate_tau(word, row);
        row[k] -= 1;
        sink(row);
      }
  };

  std::vector<std::vector<long>> image_gens(r, std::vector<long>(s, 0));
  for (long k = 0; k < s; ++k)
    for (int letter : pres.relators[k]) {
      int i = std::abs(letter) - 1;
      image_gens[i][k] += letter > 0 ? 1 : -1;
    }

  mod_module q = quotient_module(m, s, conj_rows, image_gens);
  out.invariant_factors = q.factors;
  for (const auto& vec : q.gens)
    out.representatives.push_back(detail::cocycle_from_relator_values(pres, vec, m));
  return out;
}

// All classes of a computed H^2 (including the zero class), in deterministic
// mixed-radix order over the invariant factors.
inline std::vector<two_cocycle> enumerate_classes(const cohomology_group& h,
                                                  long limit = default_budgets().enumerate_limit) {
  if (h.order() > limit)
    fail(errc::budget_exceeded, "class enumeration over " + std::to_string(h.order()) + " classes");
  std::vector<two_cocycle> out;
  std::vector<long> c(h.invariant_factors.size(), 0);
  while (true) {
    two_cocycle f = zero_cocycle(h.group, h.modulus);
    for (std::size_t i = 0; i < c.size(); ++i)
      if (c[i] != 0) f = cocycle_add(f, cocycle_scale(h.representatives[i], c[i]));
    out.push_back(std::move(f));
    std::size_t i = 0;
    while (i < c.size() && ++c[i] == h.invariant_factors[i]) c[i++] = 0;
    if (i == c.size()) break;
  }
  return out;
}

// ---- splitting, restriction, class order ----

// Solve f = delta c by propagating c along a spanning tree with the values on
// generators as unknowns; the leftover edge equations form a small linear
// system over Z/m.
inline bool is_split_class(const two_cocycle& f) {
  const finite_group& g = f.group;
  const long n = g.order();
  const long m = f.modulus;
  if (n == 1 || m == 1) return true;
  detail::presentation pres = detail::make_presentation(g);
  const long r = pres.r();
  std::vector<std::vector<long>> alpha(n, std::vector<long>(r, 0));
  std::vector<long> beta(n, 0);
  for (std::size_t t = 1; t < pres.bfs_order.size(); ++t) {
    std::int32_t h = pres.bfs_order[t];
    int letter = pres.discovered_by[h];
    int i = std::abs(letter) - 1;
    if (letter > 0) {
      std::int32_t prev = g.mul(h, pres.gen_inv[i]);
      alpha[h] = alpha[prev];
      alpha[h][i] += 1;
      beta[h] = beta[prev] - f.at(prev, pres.gens[i]);
    } else {
      std::int32_t prev = g.mul(h, pres.gens[i]);
      alpha[h] = alpha[prev];
      alpha[h][i] -= 1;
      beta[h] = beta[prev] + f.at(h, pres.gens[i]);
    }
  }
  // c(x) + c(g_i) - c(x g_i) = f(x, g_i) on every edge
  std::vector<std::vector<long>> rows;
  std::vector<long> rhs;
  for (std::int32_t x = 0; x < n; ++x)
    for (long i = 0; i < r; ++i) {
      std::int32_t y = g.mul(x, pres.gens[i]);
      std::vector<long> row(r, 0);
      bool nonzero = false;
      for (long k = 0; k < r; ++k) {
        row[k] = alpha[x][k] - alpha[y][k] + (k == i ? 1 : 0);
        if (row[k] != 0) nonzero = true;
      }
      long b = f.at(x, pres.gens[i]) - beta[x] + beta[y];
      if (!nonzero && b % m != 0) return false;
      if (nonzero) {
        rows.push_back(std::move(row));
        rhs.push_back(b);
      }
    }
  // feasibility of rows * u = rhs mod m, prime power by prime power
  for (auto [p, e] : detail::factorize(m)) {
    auto ring = zpe::ring::make(p, e);
    zpe::matrix a(static_cast<long>(rows.size()), r);
    zpe::matrix carried(static_cast<long>(rows.size()), 1);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      for (long j = 0; j < r; ++j) a.at(static_cast<long>(i), j) = ring.norm(rows[i][j]);
      carried.at(static_cast<long>(i), 0) = ring.norm(rhs[i]);
    }
    zpe::diag_result d = zpe::diagonalize(ring, a, carried);
    for (long i = 0; i < static_cast<long>(rows.size()); ++i) {
      long b = d.carried.at(i, 0);
      if (i < std::min<long>(a.rows, r)) {
        int c = d.exps[static_cast<std::size_t>(i)];
        if (c >= ring.e) {
          if (b != 0) return false;
        } else if (b % ring.pow_p(c) != 0) {
          return false;
        }
      } else if (b != 0) {
        return false;
      }
    }
  }
  return true;
}

inline bool cocycles_cohomologous(const two_cocycle& a, const two_cocycle& b) {
  return is_split_class(cocycle_add(a, cocycle_scale(b, -1)));
}

inline two_cocycle restrict_class(const two_cocycle& f, const subgroup& s) {
  if (s.parent.data() != f.group.data())
    fail(errc::subgroup_mismatch, "subgroup does not live in the cocycle's group");
  subgroup_group sg = as_group(s);
  two_cocycle out = zero_cocycle(sg.group, f.modulus);
  for (std::size_t i = 0; i < sg.to_parent.size(); ++i)
    for (std::size_t j = 0; j < sg.to_parent.size(); ++j)
      out.at(static_cast<std::int32_t>(i), static_cast<std::int32_t>(j)) =
          static_cast<std::int32_t>(f.at(sg.to_parent[i], sg.to_parent[j]));
  return out;
}

// Order of the class [f] in H^2.
inline long class_exponent(const two_cocycle& f) {
  for (long t = 1; t <= f.modulus; ++t) {
    if (f.modulus % t != 0) continue;
    if (is_split_class(cocycle_scale(f, t))) return t;
  }
  fail(errc::internal, "class order not found below the modulus");
}

// ---- central extensions ----

struct central_extension {
  finite_group total;
  subgroup kernel;                 // central cyclic subgroup of `total`
  std::int32_t kernel_generator;   // total element representing 1 in Z/m
  homomorphism projection;         // total -> base
  two_cocycle cls;
};

// Total group on pairs (a, g) with (a,g)(b,h) = (a + b + f(g,h), gh), realized
// by its left action on the pair set.
inline central_extension extension_from_cocycle(const finite_group& g, long m,
                                                const two_cocycle& f,
                                                const budgets& b = default_budgets()) {
  if (f.group.data() != g.data() || f.modulus != m || !is_valid_cocycle(f))
    fail(errc::invalid_cocycle, "not a normalized 2-cocycle for this group and modulus");
  const long n = g.order();
  const long total_order = m * n;
  if (total_order > b.closure_bound)
    fail(errc::order_bound_exceeded, "extension order exceeds the closure bound");
  const std::size_t degree = static_cast<std::size_t>(total_order);

  auto build = [&](long a, std::int32_t x) {
    std::vector<point> img(degree);
    for (long bb = 0; bb < m; ++bb)
      for (std::int32_t y = 0; y < n; ++y)
        img[static_cast<std::size_t>(bb) * n + y] =
            static_cast<point>(((a + bb + f.at(x, y)) % m) * n + g.mul(x, y));
    return permutation(std::move(img));
  };

  std::vector<permutation> elems;
  elems.reserve(total_order);
  for (long a = 0; a < m; ++a)
    for (std::int32_t x = 0; x < n; ++x) elems.push_back(build(a, x));
  std::vector<permutation> gens;
  if (m > 1) gens.push_back(build(1, g.identity()));
  for (std::int32_t gi : g.generators()) gens.push_back(build(0, gi));
  if (gens.empty()) gens.push_back(build(0, g.identity()));
  finite_group total = detail::from_elements(degree, std::move(elems), gens,
                                             "ext(m=" + std::to_string(m) + "; " + g.origin() + ")",
                                             b.table_cache_limit);

  // decode pairs: the image of point (0, identity) is (a, x)
  std::vector<std::int32_t> proj(total_order);
  std::vector<long> a_part(total_order);
  std::vector<std::int32_t> pair_index(total_order);
  std::vector<std::int32_t> kernel_members;
  std::int32_t kgen = total.identity();
  for (std::int32_t i = 0; i < total.order(); ++i) {
    point pt = total.element(i)[0];
    long a = pt / n;
    std::int32_t x = static_cast<std::int32_t>(pt % n);
    proj[i] = x;
    a_part[i] = a;
    pair_index[a * n + x] = i;
    if (x == g.identity()) {
      kernel_members.push_back(i);
      if (a == 1 % m) kgen = i;
    }
  }
  // the multiplication table comes straight from the cocycle formula
  if (total_order <= b.table_cache_limit) {
    std::vector<std::int32_t> table(static_cast<std::size_t>(total_order) * total_order);
    for (std::int32_t i = 0; i < total_order; ++i)
      for (std::int32_t j = 0; j < total_order; ++j) {
        long a = (a_part[i] + a_part[j] + f.at(proj[i], proj[j])) % m;
        table[static_cast<std::size_t>(i) * total_order + j] =
            pair_index[a * n + g.mul(proj[i], proj[j])];
      }
    detail::install_table(total, std::move(table));
  }
  subgroup kernel = subgroup_from_members(total, std::move(kernel_members));
  return central_extension{total, std::move(kernel), kgen, homomorphism{total, g, std::move(proj)}, f};
}

// Re-extract a cocycle from the canonical section (least element index per
// fiber); the result is cohomologous to the defining class.
inline two_cocycle cocycle_from_section(const central_extension& ext) {
  const finite_group& base = ext.projection.target;
  const finite_group& total = ext.total;
  const long n = base.order();
  const long m = ext.kernel.order();
  std::vector<std::int32_t> section(n, -1);
  for (std::int32_t i = 0; i < total.order(); ++i)
    if (section[ext.projection(i)] < 0) section[ext.projection(i)] = i;
  section[base.identity()] = total.identity();
  // kernel element -> coordinate in Z/m
  std::vector<std::pair<std::int32_t, long>> coord;
  std::int32_t k = total.identity();
  for (long a = 0; a < m; ++a) {
    coord.emplace_back(k, a);
    k = total.mul(k, ext.kernel_generator);
  }
  std::sort(coord.begin(), coord.end());
  auto kcoord = [&](std::int32_t t) {
    auto it = std::lower_bound(coord.begin(), coord.end(), std::make_pair(t, -1L));
    if (it == coord.end() || it->first != t) fail(errc::internal, "section defect is not in the kernel");
    return it->second;
  };
  two_cocycle f = zero_cocycle(base, m);
  for (std::int32_t x = 0; x < n; ++x)
    for (std::int32_t y = 0; y < n; ++y) {
      std::int32_t t = total.mul(total.mul(section[x], section[y]), total.inv(section[base.mul(x, y)]));
      f.at(x, y) = static_cast<std::int32_t>(kcoord(t));
    }
  return f;
}

// ---- bar-resolution cohomology (degrees 1..4) ----

namespace detail {

// Indexing of normalized d-tuples over the non-identity elements.
struct bar_index {
  long n1;  // |G| - 1
  int d;
  long dim;
  bar_index(long n, int dd) : n1(n - 1), d(dd) {
    dim = 1;
    for (int i = 0; i < d; ++i) dim *= n1;
  }
  long index(const std::vector<std::int32_t>& tuple) const {
    long idx = 0;
    for (int i = d - 1; i >= 0; --i) idx = idx * n1 + (tuple[i] - 1);
    return idx;
  }
  void tuple_of(long idx, std::vector<std::int32_t>& out) const {
    out.resize(d);
    for (int i = 0; i < d; ++i) {
      out[i] = static_cast<std::int32_t>(idx % n1 + 1);
      idx /= n1;
    }
  }
};

// The coboundary of the indicator cochain on each (d-1)-tuple, as vectors in
// C^d coordinates; these generate the coboundary space B^d.
inline std::vector<std::vector<long>> coboundary_generators(const finite_group& g, int d) {
  const long n = g.order();
  bar_index src(n, d - 1), dst(n, d);
  std::vector<std::vector<long>> gens(src.dim, std::vector<long>(dst.dim, 0));
  if (d < 1) return gens;
  std::vector<std::int32_t> t;
  std::vector<std::int32_t> face(d - 1);
  for (long idx = 0; idx < dst.dim; ++idx) {
    dst.tuple_of(idx, t);
    // delta f (t0..t_{d-1}) = f(t1..) - ... +- f(..t_{d-2})
    auto add = [&](const std::vector<std::int32_t>& ft, long sign) {
      for (std::int32_t v : ft)
        if (v == g.identity()) return;
      gens[src.index(ft)][idx] += sign;
    };
    face.assign(t.begin() + 1, t.end());
    add(face, +1);
    for (int i = 1; i < d; ++i) {
      face.clear();
      for (int k = 0; k < d; ++k) {
        if (k == i - 1) continue;
        face.push_back(k == i ? g.mul(t[i - 1], t[i]) : t[k]);
      }
      add(face, i % 2 == 0 ? +1 : -1);
    }
    face.assign(t.begin(), t.end() - 1);
    add(face, d % 2 == 0 ? +1 : -1);
  }
  return gens;
}

// Stream the rows of the degree-d cocycle condition (the coboundary into
// degree d+1, one row per (d+1)-tuple).
inline row_emitter cocycle_rows(const finite_group& g, int d) {
  return [&g, d](const std::function<void(const std::vector<long>&)>& sink) {
    const long n = g.order();
    bar_index src(n, d), dst(n, d + 1);
    std::vector<long> row(src.dim);
    std::vector<std::int32_t> t;
    std::vector<std::int32_t> face(d);
    for (long idx = 0; idx < dst.dim; ++idx) {
      dst.tuple_of(idx, t);
      std::fill(row.begin(), row.end(), 0L);
      bool any = false;
      auto add = [&](const std::vector<std::int32_t>& ft, long sign) {
        for (std::int32_t v : ft)
          if (v == g.identity()) return;
        row[src.index(ft)] += sign;
        any = true;
      };
      face.assign(t.begin() + 1, t.end());
      add(face, +1);
      for (int i = 1; i <= d; ++i) {
        face.clear();
        for (int k = 0; k <= d; ++k) {
          if (k == i - 1) continue;
          face.push_back(k == i ? g.mul(t[i - 1], t[i]) : t[k]);
        }
        add(face, i % 2 == 0 ? +1 : -1);
      }
      face.assign(t.begin(), t.end() - 1);
      add(face, (d + 1) % 2 == 0 ? +1 : -1);
      if (any) sink(row);
    }
  };
}

// Integer coboundary of an integer-lifted cochain, divided by p^e: the
// connecting map of 0 -> Z -> Z -> Z/p^e -> 0 at the cochain level.
inline std::vector<long> bockstein_lift(const finite_group& g, int d, const std::vector<long>& z,
                                        long pe) {
  const long n = g.order();
  bar_index src(n, d), dst(n, d + 1);
  std::vector<long> w(dst.dim, 0);
  std::vector<std::int32_t> t;
  std::vector<std::int32_t> face(d);
  for (long idx = 0; idx < dst.dim; ++idx) {
    dst.tuple_of(idx, t);
    long acc = 0;
    auto add = [&](const std::vector<std::int32_t>& ft, long sign) {
      for (std::int32_t v : ft)
        if (v == g.identity()) return;
      acc += sign * z[src.index(ft)];
    };
    face.assign(t.begin() + 1, t.end());
    add(face, +1);
    for (int i = 1; i <= d; ++i) {
      face.clear();
      for (int k = 0; k <= d; ++k) {
        if (k == i - 1) continue;
        face.push_back(k == i ? g.mul(t[i - 1], t[i]) : t[k]);
      }
      add(face, i % 2 == 0 ? +1 : -1);
    }
    face.assign(t.begin(), t.end() - 1);
    add(face, (d + 1) % 2 == 0 ? +1 : -1);
    if (acc % pe != 0) fail(errc::internal, "lift of a cocycle has a non-divisible coboundary");
    long v = (acc / pe) % pe;
    if (v < 0) v += pe;
    w[idx] = v;
  }
  return w;
}

inline std::vector<long> merge_prime_chains(std::vector<std::vector<long>> chains) {
  // each chain ascending; align largest-last and multiply
  std::size_t depth = 0;
  for (const auto& c : chains) depth = std::max(depth, c.size());
  std::vector<long> out;
  for (std::size_t i = 0; i < depth; ++i) {
    long f = 1;
    for (const auto& c : chains) {
      long offset = static_cast<long>(depth - c.size());
      long j = static_cast<long>(i) - offset;
      if (j >= 0) f *= c[j];
    }
    out.push_back(f);
  }
  return out;
}

}  // namespace detail

// Cohomology of the normalized bar complex in degree d <= 4, with Z/m or
// (m absent) integer coefficients. Integral cohomology in positive degree is
// H^{d-1}(G; Z/p^e) modulo the Bockstein image, prime by prime.
inline cohomology_group bar_cohomology(const finite_group& g, std::optional<long> coeff_mod, int d,
                                       const budgets& b = default_budgets()) {
  if (d < 1 || d > 4) fail(errc::bad_parameter, "bar cohomology implemented for degrees 1..4");
  if (g.order() > b.bar_bound[d])
    fail(errc::budget_exceeded, "group order exceeds the bar-resolution budget for degree " +
                                    std::to_string(d));
  cohomology_group out;
  out.group = g;
  out.modulus = coeff_mod.value_or(0);
  if (g.order() == 1) return out;

  if (coeff_mod) {
    long m = *coeff_mod;
    if (m < 1) fail(errc::bad_parameter, "modulus must be positive");
    if (m == 1) return out;
    mod_module q = quotient_module(m, detail::bar_index(g.order(), d).dim,
                                   detail::cocycle_rows(g, d),
                                   detail::coboundary_generators(g, d));
    out.invariant_factors = q.factors;
    if (d == 2) {
      for (const auto& vec : q.gens) {
        two_cocycle f = zero_cocycle(g, m);
        detail::bar_index bi(g.order(), 2);
        std::vector<std::int32_t> t;
        for (long idx = 0; idx < bi.dim; ++idx) {
          bi.tuple_of(idx, t);
          f.at(t[0], t[1]) = static_cast<std::int32_t>(vec[idx]);
        }
        out.representatives.push_back(std::move(f));
      }
    }
    return out;
  }

  // integer coefficients
  if (d == 1) return out;  // Hom(G, Z) vanishes for finite G
  std::vector<std::vector<long>> chains;
  for (auto [p, e] : detail::factorize(g.order())) {
    auto ring = zpe::ring::make(p, e);
    std::vector<std::vector<long>> images = detail::coboundary_generators(g, d - 1);
    if (d >= 3) {
      // Bockstein images of a basis of the (d-2)-cocycles mod p^e
      detail::bar_index lower(g.order(), d - 2);
      zpe::row_reducer red(ring, lower.dim);
      detail::cocycle_rows(g, d - 2)([&](const std::vector<long>& w) { red.add(w); });
      zpe::kernel_basis kb = zpe::kernel_of(ring, red.reduced());
      for (const auto& z : kb.gens)
        images.push_back(detail::bockstein_lift(g, d - 2, z, ring.pe));
    }
    mod_module q = quotient_module(ring.pe, detail::bar_index(g.order(), d - 1).dim,
                                   detail::cocycle_rows(g, d - 1), images);
    chains.push_back(q.factors);
  }
  out.invariant_factors = detail::merge_prime_chains(std::move(chains));
  return out;
}

// Closed-form Tate cohomology of a cyclic group, returned as the order of the
// (cyclic) group. Integer coefficients: Z/n in even degrees (degree 0 reports
// the norm quotient Z/n), trivial in odd degrees. Z/m coefficients: Z/gcd(n,m)
// in every degree.
inline long tate_cyclic(long n, std::optional<long> coeff_mod, long degree) {
  if (n < 1) fail(errc::bad_parameter, "cyclic order must be positive");
  if (coeff_mod) {
    if (*coeff_mod < 1) fail(errc::bad_parameter, "modulus must be positive");
    return std::gcd(n, *coeff_mod);
  }
  bool even = ((degree % 2) + 2) % 2 == 0;
  return even ? n : 1;
}

}  // namespace rhs3

#endif
