#ifndef RHS3_PERMUTATION_HPP
#define RHS3_PERMUTATION_HPP

#include <cstdint>
#include <numeric>
#include <vector>

#include "rhs3/error.hpp"

namespace rhs3 {

using point = std::uint16_t;

// A permutation of {0, ..., degree-1}, stored as its image vector.
class permutation {
public:
  permutation() = default;

  explicit permutation(std::vector<point> images) : img_(std::move(images)) {
    if (!is_bijection()) fail(errc::bad_parameter, "permutation images are not a bijection");
  }

  static permutation identity(std::size_t degree) {
    std::vector<point> img(degree);
    std::iota(img.begin(), img.end(), point{0});
    permutation p;
    p.img_ = std::move(img);
    return p;
  }

  // Build from disjoint cycles over 0-based points; fixed points omitted.
  static permutation from_cycles(std::size_t degree, const std::vector<std::vector<point>>& cycles) {
    permutation p = identity(degree);
    for (const auto& c : cycles) {
      for (std::size_t i = 0; i < c.size(); ++i) {
        point from = c[i];
        point to = c[(i + 1) % c.size()];
        if (from >= degree || to >= degree) fail(errc::bad_parameter, "cycle point out of range");
        if (p.img_[from] != from) fail(errc::bad_parameter, "cycles are not disjoint");
        p.img_[from] = to;
      }
    }
    if (!p.is_bijection()) fail(errc::bad_parameter, "cycles do not define a permutation");
    return p;
  }

  std::size_t degree() const { return img_.size(); }
  point operator[](std::size_t i) const { return img_[i]; }
  const std::vector<point>& images() const { return img_; }

  bool is_identity() const {
    for (std::size_t i = 0; i < img_.size(); ++i)
      if (img_[i] != i) return false;
    return true;
  }

  // (p * q)(x) = p(q(x)); apply q first.
  friend permutation operator*(const permutation& p, const permutation& q) {
    permutation r;
    compose_into(r.img_, p, q);
    return r;
  }

  static void compose_into(std::vector<point>& dst, const permutation& p, const permutation& q) {
    const std::size_t n = q.degree();
    dst.resize(n);
    for (std::size_t x = 0; x < n; ++x) dst[x] = p.img_[q.img_[x]];
  }

  permutation inverse() const {
    permutation r;
    r.img_.resize(img_.size());
    for (std::size_t x = 0; x < img_.size(); ++x) r.img_[img_[x]] = static_cast<point>(x);
    return r;
  }

  // Order as lcm of cycle lengths.
  long order() const {
    std::vector<char> seen(img_.size(), 0);
    long ord = 1;
    for (std::size_t s = 0; s < img_.size(); ++s) {
      if (seen[s]) continue;
      long len = 0;
      std::size_t x = s;
      do {
        seen[x] = 1;
        x = img_[x];
        ++len;
      } while (x != s);
      ord = std::lcm(ord, len);
    }
    return ord;
  }

  // True iff every cycle has length <= 2 and the permutation is not trivial.
  bool is_involution() const {
    bool moved = false;
    for (std::size_t x = 0; x < img_.size(); ++x) {
      if (img_[x] != x) moved = true;
      if (img_[img_[x]] != x) return false;
    }
    return moved;
  }

  std::uint64_t hash() const {
    std::uint64_t h = 1469598103934665603ULL;
    for (point v : img_) {
      h ^= v;
      h *= 1099511628211ULL;
    }
    return h;
  }

  friend bool operator==(const permutation& a, const permutation& b) { return a.img_ == b.img_; }
  friend bool operator!=(const permutation& a, const permutation& b) { return a.img_ != b.img_; }
  // Lexicographic on image vectors; the canonical element order everywhere.
  friend bool operator<(const permutation& a, const permutation& b) { return a.img_ < b.img_; }

private:
  bool is_bijection() const {
    std::vector<char> seen(img_.size(), 0);
    for (point v : img_) {
      if (v >= img_.size() || seen[v]) return false;
      seen[v] = 1;
    }
    return true;
  }

  std::vector<point> img_;
};

}  // namespace rhs3

#endif
