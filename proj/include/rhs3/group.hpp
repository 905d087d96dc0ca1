#ifndef RHS3_GROUP_HPP
#define RHS3_GROUP_HPP

#include <algorithm>
#include <cstdint>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rhs3/config.hpp"
#include "rhs3/error.hpp"
#include "rhs3/permutation.hpp"

namespace rhs3 {

class finite_group;
struct subgroup;
struct homomorphism;

namespace detail {

struct group_data {
  std::size_t degree = 1;
  std::vector<permutation> elements;  // sorted lexicographically; identity at index 0
  std::vector<std::pair<std::uint64_t, std::int32_t>> hash_index;  // sorted by hash
  std::vector<std::int32_t> inverse;
  std::vector<long> element_order;
  std::vector<std::int32_t> generators;  // indices into elements; empty only for the trivial group
  std::string origin = "perm";
  long table_limit = 512;

  mutable std::vector<std::int32_t> table;  // lazy multiplication table
  mutable std::once_flag table_once;

  std::int32_t index_of_images(const std::vector<point>& img) const {
    std::uint64_t h = 1469598103934665603ULL;
    for (point v : img) {
      h ^= v;
      h *= 1099511628211ULL;
    }
    auto it = std::lower_bound(hash_index.begin(), hash_index.end(),
                               std::make_pair(h, std::int32_t{-1}));
    for (; it != hash_index.end() && it->first == h; ++it)
      if (elements[it->second].images() == img) return it->second;
    return -1;
  }

  std::int32_t mul_slow(std::int32_t i, std::int32_t j) const {
    thread_local std::vector<point> scratch;
    permutation::compose_into(scratch, elements[i], elements[j]);
    std::int32_t k = index_of_images(scratch);
    if (k < 0) fail(errc::internal, "group not closed under multiplication");
    return k;
  }

  void build_table() const {
    const std::size_t n = elements.size();
    std::vector<std::int32_t> t(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) t[i * n + j] = mul_slow(static_cast<std::int32_t>(i), static_cast<std::int32_t>(j));
    table = std::move(t);
  }
};

}  // namespace detail

// An immutable finite group carried by canonical permutations. Copies are
// cheap handles; all queries are safe to run concurrently.
class finite_group {
public:
  finite_group() : d_(std::make_shared<detail::group_data>()) {
    auto* d = const_cast<detail::group_data*>(d_.get());
    d->elements = {permutation::identity(1)};
    d->hash_index = {{d->elements[0].hash(), 0}};
    d->inverse = {0};
    d->element_order = {1};
    d->origin = "trivial";
  }

  explicit finite_group(std::shared_ptr<const detail::group_data> d) : d_(std::move(d)) {}

  long order() const { return static_cast<long>(d_->elements.size()); }
  std::size_t degree() const { return d_->degree; }
  std::int32_t identity() const { return 0; }
  const permutation& element(std::int32_t i) const { return d_->elements[i]; }
  const std::vector<permutation>& elements() const { return d_->elements; }
  long element_order(std::int32_t i) const { return d_->element_order[i]; }
  const std::vector<std::int32_t>& generators() const { return d_->generators; }
  const std::string& origin() const { return d_->origin; }

  std::int32_t index_of(const permutation& p) const { return d_->index_of_images(p.images()); }

  std::int32_t mul(std::int32_t i, std::int32_t j) const {
    if (!d_->table.empty()) return d_->table[static_cast<std::size_t>(i) * d_->elements.size() + j];
    if (order() <= d_->table_limit) {
      std::call_once(d_->table_once, [this] { d_->build_table(); });
      return d_->table[static_cast<std::size_t>(i) * d_->elements.size() + j];
    }
    return d_->mul_slow(i, j);
  }

  std::int32_t inv(std::int32_t i) const { return d_->inverse[i]; }

  std::int32_t power(std::int32_t g, long e) const {
    long n = element_order(g);
    e %= n;
    if (e < 0) e += n;
    std::int32_t acc = identity(), base = g;
    while (e > 0) {
      if (e & 1) acc = mul(acc, base);
      base = mul(base, base);
      e >>= 1;
    }
    return acc;
  }

  // g x g^{-1}
  std::int32_t conj(std::int32_t g, std::int32_t x) const { return mul(mul(g, x), inv(g)); }

  bool is_abelian() const {
    for (std::int32_t a : d_->generators)
      for (std::int32_t b : d_->generators)
        if (mul(a, b) != mul(b, a)) return false;
    return true;
  }

  const std::shared_ptr<const detail::group_data>& data() const { return d_; }

private:
  std::shared_ptr<const detail::group_data> d_;
};

// A subgroup of `parent`, as a sorted list of element indices plus witness
// generators.
struct subgroup {
  finite_group parent;
  std::vector<std::int32_t> members;     // sorted ascending
  std::vector<std::int32_t> generators;  // indices into parent

  long order() const { return static_cast<long>(members.size()); }
  bool contains(std::int32_t i) const { return std::binary_search(members.begin(), members.end(), i); }
  bool is_trivial() const { return members.size() == 1; }
};

struct homomorphism {
  finite_group source;
  finite_group target;
  std::vector<std::int32_t> image;  // image[i] = index in target of the image of source element i

  std::int32_t operator()(std::int32_t i) const { return image[i]; }

  bool is_valid() const {
    if (image.size() != static_cast<std::size_t>(source.order())) return false;
    if (image[source.identity()] != target.identity()) return false;
    for (std::int32_t i = 0; i < source.order(); ++i)
      for (std::int32_t g : source.generators())
        if (image[source.mul(i, g)] != target.mul(image[i], image[g])) return false;
    return true;
  }
};

namespace detail {

inline finite_group from_elements(std::size_t degree, std::vector<permutation> elems,
                                  const std::vector<permutation>& gen_perms, std::string origin,
                                  long table_limit = 512) {
  std::sort(elems.begin(), elems.end());
  for (std::size_t i = 1; i < elems.size(); ++i)
    if (elems[i] == elems[i - 1]) fail(errc::internal, "duplicate elements in group construction");
  auto d = std::make_shared<group_data>();
  d->degree = degree;
  d->elements = std::move(elems);
  d->origin = std::move(origin);
  d->table_limit = table_limit;
  if (d->elements.empty() || !d->elements[0].is_identity())
    fail(errc::internal, "group construction is missing the identity");
  d->hash_index.reserve(d->elements.size());
  for (std::size_t i = 0; i < d->elements.size(); ++i)
    d->hash_index.emplace_back(d->elements[i].hash(), static_cast<std::int32_t>(i));
  std::sort(d->hash_index.begin(), d->hash_index.end());
  d->inverse.resize(d->elements.size());
  d->element_order.resize(d->elements.size());
  for (std::size_t i = 0; i < d->elements.size(); ++i) {
    std::int32_t j = d->index_of_images(d->elements[i].inverse().images());
    if (j < 0) fail(errc::internal, "group not closed under inversion");
    d->inverse[i] = j;
    d->element_order[i] = d->elements[i].order();
  }
  for (const permutation& g : gen_perms) {
    std::int32_t i = d->index_of_images(g.images());
    if (i < 0) fail(errc::internal, "generator missing from element list");
    if (i != 0 || gen_perms.size() == 1)
      if (std::find(d->generators.begin(), d->generators.end(), i) == d->generators.end())
        d->generators.push_back(i);
  }
  if (d->generators.empty() && d->elements.size() > 1)
    fail(errc::internal, "nontrivial group without generators");
  return finite_group(std::move(d));
}

// Install a precomputed multiplication table (sorted-index space) on a group
// that was just constructed and is still uniquely owned.
inline void install_table(finite_group& g, std::vector<std::int32_t> table) {
  if (table.size() != static_cast<std::size_t>(g.order()) * g.order())
    fail(errc::internal, "table size mismatch");
  const_cast<group_data*>(g.data().get())->table = std::move(table);
}

// Breadth-first closure of a permutation set; deterministic discovery order.
inline std::vector<permutation> bfs_closure(const std::vector<permutation>& gens, long bound) {
  const std::size_t degree = gens.empty() ? 1 : gens[0].degree();
  std::vector<permutation> elems = {permutation::identity(degree)};

  struct hasher {
    std::size_t operator()(const permutation& p) const { return static_cast<std::size_t>(p.hash()); }
  };
  std::vector<std::pair<std::uint64_t, std::size_t>> seen = {{elems[0].hash(), 0}};
  auto lookup = [&](const std::vector<point>& img, std::uint64_t h) -> bool {
    auto it = std::lower_bound(seen.begin(), seen.end(), std::make_pair(h, std::size_t{0}));
    for (; it != seen.end() && it->first == h; ++it)
      if (elems[it->second].images() == img) return true;
    return false;
  };

  std::vector<point> scratch;
  for (std::size_t head = 0; head < elems.size(); ++head) {
    for (const permutation& g : gens) {
      permutation::compose_into(scratch, elems[head], g);
      std::uint64_t h = 1469598103934665603ULL;
      for (point v : scratch) {
        h ^= v;
        h *= 1099511628211ULL;
      }
      if (lookup(scratch, h)) continue;
      if (static_cast<long>(elems.size()) >= bound)
        fail(errc::order_bound_exceeded, "closure exceeds order bound " + std::to_string(bound));
      permutation p(scratch);
      elems.push_back(std::move(p));
      seen.insert(std::upper_bound(seen.begin(), seen.end(), std::make_pair(h, elems.size() - 1)),
                  {h, elems.size() - 1});
    }
  }
  return elems;
}

}  // namespace detail

inline finite_group group_from_permutations(const std::vector<permutation>& gens,
                                            const budgets& b = default_budgets(),
                                            std::string origin = "perm") {
  for (std::size_t i = 1; i < gens.size(); ++i)
    if (gens[i].degree() != gens[0].degree())
      fail(errc::degree_mismatch, "generators have different degrees");
  std::vector<permutation> elems = detail::bfs_closure(gens, b.closure_bound);
  std::size_t degree = gens.empty() ? 1 : gens[0].degree();
  return detail::from_elements(degree, std::move(elems), gens, std::move(origin), b.table_cache_limit);
}

// ---- subgroup machinery ----

// Closure of generator indices inside `parent`; returns sorted member indices.
inline std::vector<std::int32_t> subgroup_closure(const finite_group& parent,
                                                  const std::vector<std::int32_t>& gens) {
  std::vector<char> in(parent.order(), 0);
  std::vector<std::int32_t> work = {parent.identity()};
  in[parent.identity()] = 1;
  for (std::size_t head = 0; head < work.size(); ++head) {
    for (std::int32_t g : gens) {
      std::int32_t x = parent.mul(work[head], g);
      if (!in[x]) {
        in[x] = 1;
        work.push_back(x);
      }
    }
  }
  std::sort(work.begin(), work.end());
  return work;
}

inline subgroup subgroup_from_generators(const finite_group& parent,
                                         std::vector<std::int32_t> gens) {
  std::vector<std::int32_t> members = subgroup_closure(parent, gens);
  return subgroup{parent, std::move(members), std::move(gens)};
}

// Greedy generating set for a known member list.
inline subgroup subgroup_from_members(const finite_group& parent,
                                      std::vector<std::int32_t> members) {
  std::sort(members.begin(), members.end());
  std::vector<std::int32_t> gens;
  std::vector<std::int32_t> span = {parent.identity()};
  for (std::int32_t m : members) {
    if (std::binary_search(span.begin(), span.end(), m)) continue;
    gens.push_back(m);
    span = subgroup_closure(parent, gens);
    if (span.size() == members.size()) break;
  }
  if (span != members) fail(errc::internal, "member set is not closed");
  return subgroup{parent, std::move(members), std::move(gens)};
}

inline subgroup trivial_subgroup(const finite_group& parent) {
  return subgroup{parent, {parent.identity()}, {}};
}

inline subgroup full_subgroup(const finite_group& parent) {
  std::vector<std::int32_t> members(parent.order());
  std::iota(members.begin(), members.end(), 0);
  std::vector<std::int32_t> gens(parent.generators().begin(), parent.generators().end());
  return subgroup{parent, std::move(members), std::move(gens)};
}

inline subgroup cyclic_subgroup(const finite_group& parent, std::int32_t g) {
  std::vector<std::int32_t> members;
  std::int32_t x = parent.identity();
  do {
    members.push_back(x);
    x = parent.mul(x, g);
  } while (x != parent.identity());
  std::sort(members.begin(), members.end());
  std::vector<std::int32_t> gens;
  if (g != parent.identity()) gens.push_back(g);
  return subgroup{parent, std::move(members), std::move(gens)};
}

inline bool is_normal(const subgroup& s) {
  for (std::int32_t g : s.parent.generators())
    for (std::int32_t n : s.generators)
      if (!s.contains(s.parent.conj(g, n))) return false;
  return true;
}

// Smallest normal subgroup containing the seed elements.
inline subgroup normal_closure(const finite_group& parent, std::vector<std::int32_t> seeds,
                               const std::vector<std::int32_t>& conjugators) {
  std::sort(seeds.begin(), seeds.end());
  seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());
  std::vector<std::int32_t> gens;
  for (std::int32_t s : seeds)
    if (s != parent.identity()) gens.push_back(s);
  std::vector<std::int32_t> members = subgroup_closure(parent, gens);
  bool grew = true;
  while (grew) {
    grew = false;
    for (std::size_t i = 0; i < gens.size() && !grew; ++i) {
      for (std::int32_t c : conjugators) {
        std::int32_t x = parent.conj(c, gens[i]);
        if (!std::binary_search(members.begin(), members.end(), x)) {
          gens.push_back(x);
          members = subgroup_closure(parent, gens);
          grew = true;
          break;
        }
      }
    }
  }
  return subgroup{parent, std::move(members), std::move(gens)};
}

// ---- standard constructions on whole groups ----

inline subgroup center(const finite_group& g) {
  std::vector<std::int32_t> members;
  for (std::int32_t x = 0; x < g.order(); ++x) {
    bool central = true;
    for (std::int32_t gen : g.generators())
      if (g.mul(x, gen) != g.mul(gen, x)) {
        central = false;
        break;
      }
    if (central) members.push_back(x);
  }
  return subgroup_from_members(g, std::move(members));
}

inline subgroup commutator_subgroup(const finite_group& g) {
  std::vector<std::int32_t> seeds;
  for (std::int32_t a : g.generators())
    for (std::int32_t b : g.generators())
      seeds.push_back(g.mul(g.mul(a, b), g.inv(g.mul(b, a))));
  std::vector<std::int32_t> conjugators(g.generators().begin(), g.generators().end());
  return normal_closure(g, std::move(seeds), conjugators);
}

// Derived subgroup of a subgroup, inside the common parent.
inline subgroup derived_of(const subgroup& s) {
  std::vector<std::int32_t> seeds;
  for (std::int32_t a : s.generators)
    for (std::int32_t b : s.generators)
      seeds.push_back(s.parent.mul(s.parent.mul(a, b), s.parent.inv(s.parent.mul(b, a))));
  return normal_closure(s.parent, std::move(seeds), s.generators);
}

// G >= G' >= G'' >= ... down to the first perfect term.
inline std::vector<subgroup> derived_series(const finite_group& g) {
  std::vector<subgroup> series = {full_subgroup(g)};
  while (true) {
    subgroup next = derived_of(series.back());
    if (next.members == series.back().members) break;
    series.push_back(std::move(next));
  }
  return series;
}

inline bool is_prime(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

inline long p_part(long n, long p) {
  long pp = 1;
  while (n % p == 0) {
    n /= p;
    pp *= p;
  }
  return pp;
}

inline std::vector<long> prime_divisors(long n) {
  std::vector<long> ps;
  for (long p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      ps.push_back(p);
      while (n % p == 0) n /= p;
    }
  if (n > 1) ps.push_back(n);
  return ps;
}

// Deterministic Sylow p-subgroup: start from an element of maximal p-power
// order and grow through normalizers.
inline subgroup sylow(const finite_group& g, long p) {
  if (!is_prime(p)) fail(errc::not_prime, std::to_string(p) + " is not prime");
  const long pp = p_part(g.order(), p);
  if (pp == 1) return trivial_subgroup(g);
  if (pp == g.order()) return full_subgroup(g);

  auto is_p_power = [&](long n) {
    while (n % p == 0) n /= p;
    return n == 1;
  };

  std::int32_t start = g.identity();
  long best = 1;
  for (std::int32_t x = 0; x < g.order(); ++x) {
    long o = g.element_order(x);
    if (o > best && is_p_power(o)) {
      best = o;
      start = x;
    }
  }
  subgroup s = subgroup_from_generators(g, {start});
  while (s.order() < pp) {
    bool grown = false;
    for (std::int32_t u = 0; u < g.order() && !grown; ++u) {
      if (s.contains(u) || !is_p_power(g.element_order(u))) continue;
      bool normalizes = true;
      for (std::int32_t gen : s.generators)
        if (!s.contains(g.conj(u, gen))) {
          normalizes = false;
          break;
        }
      if (!normalizes) continue;
      std::vector<std::int32_t> gens = s.generators;
      gens.push_back(u);
      s = subgroup_from_generators(g, std::move(gens));
      grown = true;
    }
    if (!grown) fail(errc::internal, "sylow normalizer growth stalled");
  }
  return s;
}

// Normalizer and centralizer of S in G by a single element scan.
inline std::pair<subgroup, subgroup> norm_cent(const finite_group& g, const subgroup& s) {
  if (g.data() != s.parent.data()) fail(errc::subgroup_mismatch, "subgroup belongs to another group");
  std::vector<std::int32_t> normal, central;
  for (std::int32_t x = 0; x < g.order(); ++x) {
    bool in_n = true, in_c = true;
    for (std::int32_t gen : s.generators) {
      std::int32_t c = g.conj(x, gen);
      if (c != gen) in_c = false;
      if (!s.contains(c)) {
        in_n = false;
        break;
      }
    }
    if (in_n) normal.push_back(x);
    if (in_n && in_c) central.push_back(x);
  }
  return {subgroup_from_members(g, std::move(normal)), subgroup_from_members(g, std::move(central))};
}

// All cyclic subgroups of the center, the trivial one included, sorted by
// order then by member list.
inline std::vector<subgroup> central_cyclic_subgroups(const finite_group& g) {
  subgroup z = center(g);
  std::vector<std::vector<std::int32_t>> seen;
  std::vector<subgroup> out;
  for (std::int32_t m : z.members) {
    subgroup c = cyclic_subgroup(g, m);
    if (std::find(seen.begin(), seen.end(), c.members) != seen.end()) continue;
    seen.push_back(c.members);
    out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end(), [](const subgroup& a, const subgroup& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return a.members < b.members;
  });
  return out;
}

// Materialize a subgroup as a group in its own right. Member permutations are
// already in canonical order, so new index i corresponds to members[i].
struct subgroup_group {
  finite_group group;
  std::vector<std::int32_t> to_parent;
};

inline subgroup_group as_group(const subgroup& s) {
  std::vector<permutation> elems;
  elems.reserve(s.members.size());
  for (std::int32_t m : s.members) elems.push_back(s.parent.element(m));
  std::vector<permutation> gens;
  for (std::int32_t m : s.generators) gens.push_back(s.parent.element(m));
  finite_group g = detail::from_elements(s.parent.degree(), std::move(elems), gens,
                                         "subgroup of " + s.parent.origin());
  return subgroup_group{std::move(g), s.members};
}

// Greedy minimal generating sequence, then drop redundant members.
inline std::vector<std::int32_t> minimal_generators(const finite_group& g) {
  std::vector<std::int32_t> gens;
  if (g.order() == 1) return gens;
  std::vector<std::int32_t> span = {g.identity()};
  for (std::int32_t x = 1; x < g.order(); ++x) {
    if (std::binary_search(span.begin(), span.end(), x)) continue;
    gens.push_back(x);
    span = subgroup_closure(g, gens);
    if (static_cast<long>(span.size()) == g.order()) break;
  }
  for (std::size_t i = 0; i < gens.size() && gens.size() > 1;) {
    std::vector<std::int32_t> without;
    for (std::size_t j = 0; j < gens.size(); ++j)
      if (j != i) without.push_back(gens[j]);
    if (static_cast<long>(subgroup_closure(g, without).size()) == g.order()) {
      gens = std::move(without);
    } else {
      ++i;
    }
  }
  return gens;
}

// ---- products, semidirect products, quotients ----

struct product_decomposition {
  finite_group group;
  homomorphism to_left;
  homomorphism to_right;
};

inline product_decomposition direct_product(const finite_group& g, const finite_group& h,
                                            const budgets& b = default_budgets()) {
  const long n = g.order() * h.order();
  if (n > b.closure_bound)
    fail(errc::order_bound_exceeded, "product order " + std::to_string(n) + " exceeds bound");
  const std::size_t dg = g.degree(), dh = h.degree();
  std::vector<permutation> elems;
  elems.reserve(n);
  for (std::int32_t a = 0; a < g.order(); ++a)
    for (std::int32_t c = 0; c < h.order(); ++c) {
      std::vector<point> img(dg + dh);
      for (std::size_t x = 0; x < dg; ++x) img[x] = g.element(a)[x];
      for (std::size_t x = 0; x < dh; ++x) img[dg + x] = static_cast<point>(h.element(c)[x] + dg);
      elems.emplace_back(std::move(img));
    }
  std::vector<permutation> gens;
  for (std::int32_t a : g.generators()) {
    std::vector<point> img(dg + dh);
    for (std::size_t x = 0; x < dg; ++x) img[x] = g.element(a)[x];
    for (std::size_t x = 0; x < dh; ++x) img[dg + x] = static_cast<point>(x + dg);
    gens.emplace_back(std::move(img));
  }
  for (std::int32_t c : h.generators()) {
    std::vector<point> img(dg + dh);
    for (std::size_t x = 0; x < dg; ++x) img[x] = static_cast<point>(x);
    for (std::size_t x = 0; x < dh; ++x) img[dg + x] = static_cast<point>(h.element(c)[x] + dg);
    gens.emplace_back(std::move(img));
  }
  finite_group prod = detail::from_elements(dg + dh, elems, gens,
                                            g.origin() + " x " + h.origin(), b.table_cache_limit);
  // Projections: read the left/right part of each product element.
  std::vector<std::int32_t> img_l(n), img_r(n);
  for (std::int32_t i = 0; i < n; ++i) {
    const permutation& p = prod.element(i);
    std::vector<point> left(dg), right(dh);
    for (std::size_t x = 0; x < dg; ++x) left[x] = p[x];
    for (std::size_t x = 0; x < dh; ++x) right[x] = static_cast<point>(p[dg + x] - dg);
    img_l[i] = g.index_of(permutation(std::move(left)));
    img_r[i] = h.index_of(permutation(std::move(right)));
    if (img_l[i] < 0 || img_r[i] < 0) fail(errc::internal, "projection failed");
  }
  return product_decomposition{prod, homomorphism{prod, g, std::move(img_l)},
                               homomorphism{prod, h, std::move(img_r)}};
}

// (Z/n) : G with G acting through units mod n; `act` aligns with
// G.generators(). The map must extend to a homomorphism G -> (Z/n)^*.
inline finite_group semidirect_cyclic(long n, const finite_group& g, const std::vector<long>& act,
                                      const budgets& b = default_budgets(),
                                      std::string origin_hint = "") {
  if (n < 1) fail(errc::bad_parameter, "semidirect kernel order must be positive");
  if (act.size() != g.generators().size())
    fail(errc::not_an_action, "one unit per generator required");
  std::vector<long> unit(act);
  for (long& u : unit) {
    u %= n;
    if (u < 0) u += n;
    if (std::gcd(u == 0 ? n : u, n) != 1) fail(errc::not_an_action, "action value is not a unit mod n");
    if (n == 1) u = 0;
  }
  // Extendability: propagate unit values over the Cayley graph and demand
  // consistency on every edge.
  std::vector<long> u_of(g.order(), -1);
  u_of[g.identity()] = 1 % n;
  std::vector<std::int32_t> work = {g.identity()};
  for (std::size_t head = 0; head < work.size(); ++head) {
    for (std::size_t i = 0; i < g.generators().size(); ++i) {
      std::int32_t y = g.mul(work[head], g.generators()[i]);
      long v = (u_of[work[head]] * unit[i]) % n;
      if (u_of[y] < 0) {
        u_of[y] = v;
        work.push_back(y);
      } else if (u_of[y] != v) {
        fail(errc::not_an_action, "generator units do not respect the group relations");
      }
    }
  }

  const long total = n * g.order();
  if (total > b.closure_bound)
    fail(errc::order_bound_exceeded, "semidirect order " + std::to_string(total) + " exceeds bound");
  const std::size_t dg = g.degree();
  const std::size_t degree = static_cast<std::size_t>(n) + dg;

  auto build = [&](long a, std::int32_t x) {
    std::vector<point> img(degree);
    for (long z = 0; z < n; ++z) img[z] = static_cast<point>((a + u_of[x] * z) % n);
    for (std::size_t q = 0; q < dg; ++q) img[n + q] = static_cast<point>(g.element(x)[q] + n);
    return permutation(std::move(img));
  };

  std::vector<permutation> elems;
  elems.reserve(total);
  for (long a = 0; a < n; ++a)
    for (std::int32_t x = 0; x < g.order(); ++x) elems.push_back(build(a, x));
  std::vector<permutation> gens;
  if (n > 1) gens.push_back(build(1, g.identity()));
  for (std::int32_t gi : g.generators()) gens.push_back(build(0, gi));
  if (origin_hint.empty()) origin_hint = "C(" + std::to_string(n) + ") : " + g.origin();
  return detail::from_elements(degree, std::move(elems), gens, std::move(origin_hint),
                               b.table_cache_limit);
}

struct quotient_result {
  finite_group group;
  homomorphism projection;
};

inline quotient_result quotient(const finite_group& g, const subgroup& n) {
  if (g.data() != n.parent.data()) fail(errc::subgroup_mismatch, "subgroup belongs to another group");
  if (!is_normal(n)) fail(errc::not_normal, "subgroup is not normal");
  const long q = g.order() / n.order();
  // Left cosets; scanning in index order makes each first-seen element the
  // minimal representative of its coset.
  std::vector<std::int32_t> coset_of(g.order(), -1);
  std::vector<std::int32_t> reps;
  for (std::int32_t x = 0; x < g.order(); ++x) {
    if (coset_of[x] >= 0) continue;
    std::int32_t c = static_cast<std::int32_t>(reps.size());
    reps.push_back(x);
    for (std::int32_t m : n.members) coset_of[g.mul(x, m)] = c;
  }
  std::vector<permutation> elems;
  elems.reserve(q);
  for (std::int32_t c = 0; c < q; ++c) {
    std::vector<point> img(q);
    for (std::int32_t j = 0; j < q; ++j) img[j] = static_cast<point>(coset_of[g.mul(reps[c], reps[j])]);
    elems.emplace_back(std::move(img));
  }
  std::vector<permutation> gens;
  for (std::int32_t gi : g.generators()) gens.push_back(elems[coset_of[gi]]);
  finite_group qg = detail::from_elements(static_cast<std::size_t>(q), elems, gens,
                                          "quot(" + g.origin() + ")");
  std::vector<std::int32_t> image(g.order());
  for (std::int32_t x = 0; x < g.order(); ++x) image[x] = qg.index_of(elems[coset_of[x]]);
  return quotient_result{qg, homomorphism{g, qg, std::move(image)}};
}

// ---- isomorphism testing ----

namespace detail {

struct iso_state {
  const finite_group& g;
  const finite_group& h;
  std::vector<std::int32_t> map;      // g index -> h index or -1
  std::vector<char> used;             // h indices already hit
  std::vector<std::int32_t> span;     // mapped g elements in discovery order
  std::vector<std::int32_t> gens_g;   // generator indices assigned so far
  std::vector<std::int32_t> gens_h;
};

// Extend the partial map by one generator image; rolls back on failure.
inline bool iso_extend(iso_state& st, std::int32_t gen_g, std::int32_t gen_h) {
  std::size_t span_mark = st.span.size();
  std::vector<std::int32_t> assigned;
  auto assign = [&](std::int32_t a, std::int32_t b) -> bool {
    if (st.map[a] >= 0) return st.map[a] == b;
    if (st.used[b]) return false;
    st.map[a] = b;
    st.used[b] = 1;
    st.span.push_back(a);
    assigned.push_back(a);
    return true;
  };
  bool ok = assign(gen_g, gen_h);
  st.gens_g.push_back(gen_g);
  st.gens_h.push_back(gen_h);
  for (std::size_t head = 0; ok && head < st.span.size(); ++head) {
    std::int32_t x = st.span[head];
    for (std::size_t i = 0; ok && i < st.gens_g.size(); ++i) {
      std::int32_t xg = st.g.mul(x, st.gens_g[i]);
      std::int32_t yh = st.h.mul(st.map[x], st.gens_h[i]);
      ok = assign(xg, yh);
    }
  }
  if (!ok) {
    for (std::int32_t a : assigned) {
      st.used[st.map[a]] = 0;
      st.map[a] = -1;
    }
    st.span.resize(span_mark);
    st.gens_g.pop_back();
    st.gens_h.pop_back();
  }
  return ok;
}

inline bool iso_search(iso_state& st, const std::vector<std::int32_t>& gens, std::size_t depth) {
  if (depth == gens.size()) return static_cast<long>(st.span.size()) == st.g.order();
  std::int32_t gg = gens[depth];
  long want = st.g.element_order(gg);
  for (std::int32_t hh = 0; hh < st.h.order(); ++hh) {
    if (st.h.element_order(hh) != want) continue;
    std::size_t mark_g = st.gens_g.size();
    if (iso_extend(st, gg, hh)) {
      if (iso_search(st, gens, depth + 1)) return true;
      // unwind the extension
      while (st.gens_g.size() > mark_g) {
        st.gens_g.pop_back();
        st.gens_h.pop_back();
      }
      // rebuild map from scratch for the shorter prefix
      std::fill(st.map.begin(), st.map.end(), -1);
      std::fill(st.used.begin(), st.used.end(), 0);
      st.span.clear();
      st.map[st.g.identity()] = st.h.identity();
      st.used[st.h.identity()] = 1;
      st.span.push_back(st.g.identity());
      std::vector<std::int32_t> gg2 = st.gens_g, hh2 = st.gens_h;
      st.gens_g.clear();
      st.gens_h.clear();
      bool ok = true;
      for (std::size_t i = 0; i < gg2.size() && ok; ++i) ok = iso_extend(st, gg2[i], hh2[i]);
      if (!ok) fail(errc::internal, "isomorphism backtracking lost a consistent prefix");
    }
  }
  return false;
}

inline std::vector<long> order_profile(const finite_group& g) {
  std::vector<long> p(g.order());
  for (std::int32_t i = 0; i < g.order(); ++i) p[i] = g.element_order(i);
  std::sort(p.begin(), p.end());
  return p;
}

}  // namespace detail

inline std::pair<bool, std::optional<homomorphism>> is_isomorphic(
    const finite_group& g, const finite_group& h, const budgets& b = default_budgets()) {
  if (g.order() > b.iso_bound || h.order() > b.iso_bound)
    fail(errc::order_bound_exceeded, "order exceeds isomorphism bound");
  if (g.order() != h.order()) return {false, std::nullopt};
  if (g.order() == 1) return {true, homomorphism{g, h, {0}}};
  if (detail::order_profile(g) != detail::order_profile(h)) return {false, std::nullopt};
  if (center(g).order() != center(h).order()) return {false, std::nullopt};
  if (commutator_subgroup(g).order() != commutator_subgroup(h).order()) return {false, std::nullopt};

  std::vector<std::int32_t> gens = minimal_generators(g);
  detail::iso_state st{g, h,
                       std::vector<std::int32_t>(g.order(), -1),
                       std::vector<char>(h.order(), 0),
                       {},
                       {},
                       {}};
  st.map[g.identity()] = h.identity();
  st.used[h.identity()] = 1;
  st.span.push_back(g.identity());
  if (detail::iso_search(st, gens, 0))
    return {true, homomorphism{g, h, st.map}};
  return {false, std::nullopt};
}

}  // namespace rhs3

#endif
