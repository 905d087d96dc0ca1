#ifndef RHS3_CONFIG_HPP
#define RHS3_CONFIG_HPP

namespace rhs3 {

// Resource budgets. Every bound is an element count; callers may pass a
// tightened or relaxed copy to any operation that accepts one.
struct budgets {
  // Maximum group order for breadth-first closure of permutation generators.
  long closure_bound = 20000;
  // Maximum order on either side of an isomorphism test.
  long iso_bound = 2048;
  // Maximum |G| for second-cohomology computations.
  long h2_bound = 64;
  // Maximum |G| for bar-resolution cohomology, per degree 1..4.
  long bar_bound[5] = {0, 128, 64, 16, 8};
  // Cap on the kernel orders m swept by `classify` (the per-group sweep is
  // additionally limited by min(m_bound, |G|^2) and by extension_order_bound
  // on the order of the covers it builds).
  long m_bound = 64;
  // classify skips kernel orders whose extension would exceed this; direct
  // cover searches are limited only by closure_bound.
  long extension_order_bound = 512;
  // Full class enumeration only below this |H^2|; above it, generators only.
  long enumerate_limit = 4096;
  // Group orders up to this get a cached multiplication table.
  long table_cache_limit = 512;
};

inline const budgets& default_budgets() {
  static const budgets b{};
  return b;
}

}  // namespace rhs3

#endif
