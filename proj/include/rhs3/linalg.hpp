#ifndef RHS3_LINALG_HPP
#define RHS3_LINALG_HPP

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <utility>
#include <vector>

#include "rhs3/error.hpp"

namespace rhs3 {

// ---- integer matrices and Smith normal form ----

struct int_matrix {
  long rows = 0, cols = 0;
  std::vector<long long> a;

  int_matrix() = default;
  int_matrix(long r, long c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0) {}

  long long& at(long i, long j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  long long at(long i, long j) const { return a[static_cast<std::size_t>(i) * cols + j]; }

  static int_matrix identity(long n) {
    int_matrix m(n, n);
    for (long i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }
};

struct snf_result {
  int_matrix s;  // diagonal, d1 | d2 | ..., entries >= 0
  int_matrix u;  // unimodular, u * a * v = s
  int_matrix v;
};

namespace detail {

inline long long checked_mul(long long a, long long b) {
  long long r;
  if (__builtin_mul_overflow(a, b, &r)) fail(errc::internal, "integer overflow in matrix reduction");
  return r;
}

inline long long checked_sub(long long a, long long b) {
  long long r;
  if (__builtin_sub_overflow(a, b, &r)) fail(errc::internal, "integer overflow in matrix reduction");
  return r;
}

inline void row_axpy(int_matrix& m, long dst, long src, long long q) {
  for (long j = 0; j < m.cols; ++j)
    m.at(dst, j) = checked_sub(m.at(dst, j), checked_mul(q, m.at(src, j)));
}

inline void col_axpy(int_matrix& m, long dst, long src, long long q) {
  for (long i = 0; i < m.rows; ++i)
    m.at(i, dst) = checked_sub(m.at(i, dst), checked_mul(q, m.at(i, src)));
}

inline void swap_rows(int_matrix& m, long i, long j) {
  if (i == j) return;
  for (long c = 0; c < m.cols; ++c) std::swap(m.at(i, c), m.at(j, c));
}

inline void swap_cols(int_matrix& m, long i, long j) {
  if (i == j) return;
  for (long r = 0; r < m.rows; ++r) std::swap(m.at(r, i), m.at(r, j));
}

}  // namespace detail

// Classical Smith normal form with smallest-pivot selection. Deterministic.
inline snf_result smith_normal_form(int_matrix a) {
  const long r = a.rows, c = a.cols;
  int_matrix u = int_matrix::identity(r), v = int_matrix::identity(c);
  long t = 0;
  const long n = std::min(r, c);
  while (t < n) {
    // smallest nonzero entry in the trailing submatrix
    long pi = -1, pj = -1;
    long long best = 0;
    for (long i = t; i < r; ++i)
      for (long j = t; j < c; ++j) {
        long long x = a.at(i, j) < 0 ? -a.at(i, j) : a.at(i, j);
        if (x != 0 && (pi < 0 || x < best)) {
          best = x;
          pi = i;
          pj = j;
        }
      }
    if (pi < 0) break;
    detail::swap_rows(a, t, pi);
    detail::swap_rows(u, t, pi);
    detail::swap_cols(a, t, pj);
    detail::swap_cols(v, t, pj);

    bool clean = false;
    while (!clean) {
      clean = true;
      for (long i = t + 1; i < r; ++i) {
        if (a.at(i, t) == 0) continue;
        long long q = a.at(i, t) / a.at(t, t);
        detail::row_axpy(a, i, t, q);
        detail::row_axpy(u, i, t, q);
        if (a.at(i, t) != 0) {  // remainder became the smaller pivot
          detail::swap_rows(a, t, i);
          detail::swap_rows(u, t, i);
          clean = false;
        }
      }
      for (long j = t + 1; j < c; ++j) {
        if (a.at(t, j) == 0) continue;
        long long q = a.at(t, j) / a.at(t, t);
        detail::col_axpy(a, j, t, q);
        detail::col_axpy(v, j, t, q);
        if (a.at(t, j) != 0) {
          detail::swap_cols(a, t, j);
          detail::swap_cols(v, t, j);
          clean = false;
        }
      }
      if (clean) {
        // pivot must divide the rest of the submatrix
        for (long i = t + 1; i < r && clean; ++i)
          for (long j = t + 1; j < c && clean; ++j)
            if (a.at(i, j) % a.at(t, t) != 0) {
              for (long jj = 0; jj < c; ++jj)
                a.at(t, jj) = detail::checked_sub(a.at(t, jj), -a.at(i, jj));
              for (long jj = 0; jj < r; ++jj)
                u.at(t, jj) = detail::checked_sub(u.at(t, jj), -u.at(i, jj));
              clean = false;
            }
      }
    }
    if (a.at(t, t) < 0) {
      for (long j = 0; j < c; ++j) a.at(t, j) = -a.at(t, j);
      for (long j = 0; j < r; ++j) u.at(t, j) = -u.at(t, j);
    }
    ++t;
  }
  return snf_result{std::move(a), std::move(u), std::move(v)};
}

// ---- linear algebra over Z/p^e ----

namespace zpe {

// Arithmetic context for one prime power.
struct ring {
  long p = 2;
  int e = 1;
  long pe = 2;  // p^e

  static ring make(long p, int e) {
    ring r;
    r.p = p;
    r.e = e;
    r.pe = 1;
    for (int i = 0; i < e; ++i) r.pe *= p;
    return r;
  }

  long norm(long long x) const {
    long long r = x % pe;
    if (r < 0) r += pe;
    return static_cast<long>(r);
  }
  long add(long a, long b) const { return norm(static_cast<long long>(a) + b); }
  long sub(long a, long b) const { return norm(static_cast<long long>(a) - b); }
  long mul(long a, long b) const { return norm(static_cast<long long>(a) * b); }

  int val(long x) const {  // p-adic valuation, capped at e
    if (x == 0) return e;
    int v = 0;
    while (x % p == 0) {
      x /= p;
      ++v;
    }
    return v;
  }

  long unit_inverse(long u) const {
    // extended Euclid mod p^e; u must be a unit
    long long t = 0, newt = 1, r = pe, newr = u % pe;
    while (newr != 0) {
      long long q = r / newr;
      t = std::exchange(newt, t - q * newt);
      r = std::exchange(newr, r - q * newr);
    }
    if (r != 1) fail(errc::internal, "attempted to invert a non-unit");
    return norm(t);
  }

  long pow_p(int k) const {
    long r = 1;
    for (int i = 0; i < k; ++i) r *= p;
    return r;
  }
};

using row = std::vector<long>;

struct matrix {
  long rows = 0, cols = 0;
  std::vector<long> a;
  matrix() = default;
  matrix(long r, long c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0) {}
  long& at(long i, long j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  long at(long i, long j) const { return a[static_cast<std::size_t>(i) * cols + j]; }
  static matrix identity(long n) {
    matrix m(n, n);
    for (long i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }
};

// Streams rows into a valuation-aware echelon; preserves the row span, so
// kernels of tall constraint matrices survive with bounded memory.
class row_reducer {
public:
  row_reducer(const ring& r, long cols) : r_(r), cols_(cols), pivot_of_col_(cols, -1) {}

  void add(row w) {
    for (long j = 0; j < cols_; ++j) w[j] = r_.norm(w[j]);
    reduce_in(std::move(w));
  }

  // Reduced matrix whose row span equals the span of everything added.
  matrix reduced() const {
    matrix m(static_cast<long>(rows_.size()), cols_);
    for (std::size_t i = 0; i < rows_.size(); ++i)
      for (long j = 0; j < cols_; ++j) m.at(static_cast<long>(i), j) = rows_[i][j];
    return m;
  }

private:
  void reduce_in(row w) {
    while (true) {
      long lead = -1;
      for (long j = 0; j < cols_; ++j)
        if (w[j] != 0) {
          lead = j;
          break;
        }
      if (lead < 0) return;
      int vw = r_.val(w[lead]);
      long pr = pivot_of_col_[lead];
      if (pr < 0) {
        // normalize leading entry to p^vw
        long unit = w[lead] / r_.pow_p(vw);
        long inv = r_.unit_inverse(unit);
        for (long j = lead; j < cols_; ++j) w[j] = r_.mul(w[j], inv);
        pivot_of_col_[lead] = static_cast<long>(rows_.size());
        rows_.push_back(std::move(w));
        return;
      }
      row& pv = rows_[pr];
      int vp = r_.val(pv[lead]);
      if (vw < vp) {
        // the incoming row has the better pivot; swap and keep reducing the old one
        std::swap(pv, w);
        long unit = pv[lead] / r_.pow_p(vw);
        long inv = r_.unit_inverse(unit);
        for (long j = lead; j < cols_; ++j) pv[j] = r_.mul(pv[j], inv);
        continue;
      }
      long q = w[lead] / r_.pow_p(vp);  // exact: pivot is p^vp and val(w) >= vp
      for (long j = lead; j < cols_; ++j) w[j] = r_.sub(w[j], r_.mul(q, pv[j]));
      if (w[lead] != 0) fail(errc::internal, "echelon reduction failed to clear leading entry");
    }
  }

  ring r_;
  long cols_;
  std::vector<long> pivot_of_col_;
  std::vector<row> rows_;
};

// Diagonalization U*A*V = diag(p^{c_i}) over Z/p^e. U is not tracked; row
// operations may also be applied to a block of "carried" columns, which is
// how systems A*x = b are solved without materializing U.
struct diag_result {
  std::vector<int> exps;  // c_i for i < min(rows, cols); columns beyond rank are free
  matrix v;               // cols x cols
  matrix vinv;            // tracked when requested
  matrix carried;         // the row-transformed extra columns
};

inline diag_result diagonalize(const ring& r, matrix a, matrix carried = {},
                               bool want_vinv = false) {
  const long rows = a.rows, cols = a.cols;
  diag_result out;
  out.v = matrix::identity(cols);
  if (want_vinv) out.vinv = matrix::identity(cols);
  out.carried = std::move(carried);
  const bool carry = out.carried.rows == rows && out.carried.cols > 0;

  const long n = std::min(rows, cols);
  for (long t = 0; t < n; ++t) {
    long pi = -1, pj = -1;
    int best = r.e + 1;
    for (long i = t; i < rows && best > 0; ++i)
      for (long j = t; j < cols; ++j) {
        if (a.at(i, j) == 0) continue;
        int v = r.val(a.at(i, j));
        if (v < best) {
          best = v;
          pi = i;
          pj = j;
          if (v == 0) break;
        }
      }
    if (pi < 0) {
      for (long k = t; k < n; ++k) out.exps.push_back(r.e);
      return out;
    }
    // move pivot to (t, t)
    if (pi != t) {
      for (long j = 0; j < cols; ++j) std::swap(a.at(pi, j), a.at(t, j));
      if (carry)
        for (long j = 0; j < out.carried.cols; ++j) std::swap(out.carried.at(pi, j), out.carried.at(t, j));
    }
    if (pj != t) {
      for (long i = 0; i < rows; ++i) std::swap(a.at(i, pj), a.at(i, t));
      for (long i = 0; i < cols; ++i) std::swap(out.v.at(i, pj), out.v.at(i, t));
      if (want_vinv)
        for (long j = 0; j < cols; ++j) std::swap(out.vinv.at(pj, j), out.vinv.at(t, j));
    }
    // normalize pivot to p^best
    long unit = a.at(t, t) / r.pow_p(best);
    long inv = r.unit_inverse(unit);
    for (long j = 0; j < cols; ++j) a.at(t, j) = r.mul(a.at(t, j), inv);
    if (carry)
      for (long j = 0; j < out.carried.cols; ++j) out.carried.at(t, j) = r.mul(out.carried.at(t, j), inv);
    // clear the pivot column (all other entries have valuation >= best)
    for (long i = 0; i < rows; ++i) {
      if (i == t || a.at(i, t) == 0) continue;
      long q = a.at(i, t) / r.pow_p(best);
      for (long j = 0; j < cols; ++j) a.at(i, j) = r.sub(a.at(i, j), r.mul(q, a.at(t, j)));
      if (carry)
        for (long j = 0; j < out.carried.cols; ++j)
          out.carried.at(i, j) = r.sub(out.carried.at(i, j), r.mul(q, out.carried.at(t, j)));
    }
    // clear the pivot row with column operations
    for (long j = t + 1; j < cols; ++j) {
      if (a.at(t, j) == 0) continue;
      long q = a.at(t, j) / r.pow_p(best);
      for (long i = 0; i < rows; ++i) a.at(i, j) = r.sub(a.at(i, j), r.mul(q, a.at(i, t)));
      for (long i = 0; i < cols; ++i) out.v.at(i, j) = r.sub(out.v.at(i, j), r.mul(q, out.v.at(i, t)));
      if (want_vinv)
        for (long k = 0; k < cols; ++k)
          out.vinv.at(t, k) = r.add(out.vinv.at(t, k), r.mul(q, out.vinv.at(j, k)));
    }
    out.exps.push_back(best);
  }
  return out;
}

// Generators of ker(A) over Z/p^e together with their annihilator exponents.
struct kernel_basis {
  std::vector<row> gens;
  std::vector<int> order_exp;  // generator i has order p^{order_exp[i]}
};

inline kernel_basis kernel_of(const ring& r, const matrix& a) {
  diag_result d = diagonalize(r, a);
  kernel_basis out;
  for (long i = 0; i < a.cols; ++i) {
    int c = i < static_cast<long>(d.exps.size()) ? d.exps[i] : r.e;
    if (c == 0) continue;
    long scale = r.pow_p(r.e - c);
    row w(a.cols);
    for (long t = 0; t < a.cols; ++t) w[t] = r.mul(scale, d.v.at(t, i));
    out.gens.push_back(std::move(w));
    out.order_exp.push_back(c);
  }
  return out;
}

// Solve A*x = b for each column b of `bs`; fails if any system is inconsistent.
inline matrix solve_columns(const ring& r, const matrix& a, const matrix& bs) {
  diag_result d = diagonalize(r, a, bs);
  matrix x(a.cols, bs.cols);
  for (long j = 0; j < bs.cols; ++j) {
    std::vector<long> y(a.cols, 0);
    for (long i = 0; i < std::min(a.rows, a.cols); ++i) {
      int c = d.exps[static_cast<std::size_t>(i)];
      long rhs = d.carried.at(i, j);
      if (c >= r.e) {
        if (rhs != 0) fail(errc::internal, "inconsistent linear system over Z/p^e");
        continue;
      }
      long pc = r.pow_p(c);
      if (rhs % pc != 0) fail(errc::internal, "inconsistent linear system over Z/p^e");
      y[i] = rhs / pc;
    }
    for (long i = std::min(a.rows, a.cols); i < a.rows; ++i)
      if (d.carried.at(i, j) != 0) fail(errc::internal, "inconsistent linear system over Z/p^e");
    for (long t = 0; t < a.cols; ++t) {
      long acc = 0;
      for (long i = 0; i < a.cols; ++i) acc = r.add(acc, r.mul(d.v.at(t, i), y[i]));
      x.at(t, j) = acc;
    }
  }
  return x;
}

}  // namespace zpe

// ---- CRT-combined module quotients over Z/m ----

// A finitely generated Z/m-module quotient: invariant factors d1 | d2 | ...
// (all >= 2) and one representative vector per factor.
struct mod_module {
  std::vector<long> factors;
  std::vector<std::vector<long>> gens;

  long order() const {
    long n = 1;
    for (long f : factors) n *= f;
    return n;
  }
};

using row_emitter = std::function<void(const std::function<void(const std::vector<long>&)>&)>;

namespace detail {

inline std::vector<std::pair<long, int>> factorize(long m) {
  std::vector<std::pair<long, int>> fs;
  for (long p = 2; p * p <= m; ++p)
    if (m % p == 0) {
      int e = 0;
      while (m % p == 0) {
        m /= p;
        ++e;
      }
      fs.emplace_back(p, e);
    }
  if (m > 1) fs.emplace_back(m, 1);
  return fs;
}

struct local_summand {
  long p;
  int e;
  std::vector<int> order_exp;               // descending
  std::vector<std::vector<long>> gens;      // mod p^e
};

inline local_summand local_quotient(const zpe::ring& r, long span_dim,
                                    const row_emitter& constraints,
                                    const std::vector<std::vector<long>>& image_gens) {
  zpe::row_reducer red(r, span_dim);
  constraints([&](const std::vector<long>& w) { red.add(w); });
  zpe::kernel_basis k = zpe::kernel_of(r, red.reduced());
  const long kappa = static_cast<long>(k.gens.size());

  local_summand out{r.p, r.e, {}, {}};
  if (kappa == 0) return out;

  // express image generators in the kernel basis
  zpe::matrix w(span_dim, kappa);
  for (long j = 0; j < kappa; ++j)
    for (long i = 0; i < span_dim; ++i) w.at(i, j) = k.gens[j][i];
  zpe::matrix b(span_dim, static_cast<long>(image_gens.size()));
  for (long j = 0; j < b.cols; ++j)
    for (long i = 0; i < span_dim; ++i) b.at(i, j) = r.norm(image_gens[j][i]);
  zpe::matrix x = b.cols > 0 ? zpe::solve_columns(r, w, b) : zpe::matrix(kappa, 0);

  // presentation of kernel/image: annihilator rows plus image coordinates
  zpe::matrix t(kappa + x.cols, kappa);
  for (long i = 0; i < kappa; ++i) t.at(i, i) = r.pow_p(k.order_exp[i]);
  for (long j = 0; j < x.cols; ++j)
    for (long i = 0; i < kappa; ++i) t.at(kappa + j, i) = x.at(i, j);

  zpe::diag_result d = zpe::diagonalize(r, t, {}, /*want_vinv=*/true);
  std::vector<std::pair<int, std::vector<long>>> comps;
  for (long i = 0; i < kappa; ++i) {
    int c = i < static_cast<long>(d.exps.size()) ? std::min(d.exps[i], r.e) : r.e;
    if (c == 0) continue;
    std::vector<long> g(span_dim, 0);
    for (long tt = 0; tt < kappa; ++tt) {
      long coef = d.vinv.at(i, tt);
      if (coef == 0) continue;
      for (long s = 0; s < span_dim; ++s) g[s] = r.add(g[s], r.mul(coef, k.gens[tt][s]));
    }
    comps.emplace_back(c, std::move(g));
  }
  std::sort(comps.begin(), comps.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });
  for (auto& [c, g] : comps) {
    out.order_exp.push_back(c);
    out.gens.push_back(std::move(g));
  }
  return out;
}

}  // namespace detail

// Kernel-of-constraints modulo image-of-generators, over Z/m, via CRT over the
// prime powers of m. `span_dim` is the ambient coordinate count.
inline mod_module quotient_module(long m, long span_dim, const row_emitter& constraints,
                                  const std::vector<std::vector<long>>& image_gens) {
  mod_module out;
  if (m == 1 || span_dim == 0) return out;
  std::vector<detail::local_summand> locals;
  std::size_t depth = 0;
  for (auto [p, e] : detail::factorize(m)) {
    locals.push_back(detail::local_quotient(zpe::ring::make(p, e), span_dim, constraints, image_gens));
    depth = std::max(depth, locals.back().order_exp.size());
  }
  if (depth == 0) return out;

  // align the per-prime chains largest-first and multiply positionwise
  for (std::size_t slot = 0; slot < depth; ++slot) {
    long factor = 1;
    std::vector<long> gen(span_dim, 0);
    for (const auto& ls : locals) {
      if (slot >= ls.order_exp.size()) continue;
      long pk = 1;
      for (int i = 0; i < ls.order_exp[slot]; ++i) pk *= ls.p;
      factor *= pk;
      zpe::ring r = zpe::ring::make(ls.p, ls.e);
      long cof = m / r.pe;
      // CRT coefficient: cof * (cof^{-1} mod p^e) is 1 mod p^e, 0 elsewhere
      long long coef = static_cast<long long>(cof) * r.unit_inverse(r.norm(cof)) % m;
      for (long s = 0; s < span_dim; ++s)
        gen[s] = static_cast<long>((gen[s] + coef * ls.gens[slot][s]) % m);
    }
    if (factor > 1) {
      out.factors.push_back(factor);
      out.gens.push_back(std::move(gen));
    }
  }
  // factors were built largest-first; report an ascending divisibility chain
  std::reverse(out.factors.begin(), out.factors.end());
  std::reverse(out.gens.begin(), out.gens.end());
  return out;
}

// Invariant factors of a finite abelian group from its torsion profile:
// #{x : x^{p^k} = e} = p^{sum_i min(lambda_i, k)} recovers the p-type.
inline std::vector<long> abelian_invariants_from_torsion(
    long order, const std::function<long(long)>& count_torsion) {
  std::vector<std::vector<long>> per_prime;  // descending prime-power chains
  for (auto [p, e] : detail::factorize(order)) {
    std::vector<int> mins;  // sum_i min(lambda_i, k) for k = 1..
    long pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      long cnt = count_torsion(pk);  // always a power of p
      int s = 0;
      while (cnt > 1) {
        cnt /= p;
        ++s;
      }
      mins.push_back(s);
    }
    // lambda partition from successive differences
    std::vector<long> chain;
    int prev = 0;
    std::vector<int> diffs;
    for (int k = 0; k < static_cast<int>(mins.size()); ++k) {
      diffs.push_back(mins[k] - prev);
      prev = mins[k];
    }
    // diffs[k] = #{i : lambda_i > k}; lambda_i = #{k : diffs[k] >= i+1}
    int parts = diffs.empty() ? 0 : diffs[0];
    for (int i = 0; i < parts; ++i) {
      int lam = 0;
      for (int k = 0; k < static_cast<int>(diffs.size()); ++k)
        if (diffs[k] >= i + 1) ++lam;
      long q = 1;
      for (int t = 0; t < lam; ++t) q *= p;
      chain.push_back(q);
    }
    per_prime.push_back(std::move(chain));
  }
  std::size_t depth = 0;
  for (const auto& c : per_prime) depth = std::max(depth, c.size());
  std::vector<long> factors;
  for (std::size_t slot = 0; slot < depth; ++slot) {
    long f = 1;
    for (const auto& c : per_prime)
      if (slot < c.size()) f *= c[slot];
    factors.push_back(f);
  }
  std::reverse(factors.begin(), factors.end());  // ascending divisibility
  return factors;
}

}  // namespace rhs3

#endif
