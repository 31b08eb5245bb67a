#pragma once

#include <functional>
#include <span>
#include <vector>

#include "subzeta/mpoly.hpp"

namespace subzeta {

using Point = std::vector<u64>;

// Runs fn(0..count-1) on up to `workers` threads. Callers write results into
// per-index slots so the merge order never depends on scheduling.
void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& fn);

// Depth-first walk of the congruence tree of a system of constraints: nodes
// at level k are residues x mod p^k with every constraint = 0 mod p^k, and
// the children of x are the x + p^k t, t in [0,p)^n in lexicographic order,
// that satisfy the constraints mod p^{k+1}.
class LiftWalker {
 public:
  // Levels up to max_level are supported (p^max_level must fit the residue range).
  LiftWalker(const std::vector<MPoly>& constraints, unsigned n, u64 p, unsigned max_level);

  u64 prime() const { return p_; }
  unsigned nvars() const { return n_; }
  unsigned max_level() const { return max_level_; }
  u64 modulus(unsigned level) const { return pw_[level]; }

  bool satisfies(std::span<const u64> point, unsigned level) const;

  // Level-1 nodes in lexicographic order.
  std::vector<Point> roots() const;

  // Calls visit(level, point) on `root` (level 1) and then on every
  // descendant; a false return prunes the subtree below that node.
  template <class Visit>
  void walk(const Point& root, Visit&& visit) const {
    Point x = root;
    if (!visit(1u, std::span<const u64>(x))) return;
    descend(x, 1, visit);
  }

  // Like walk, but starts below an arbitrary node x at the given level
  // (x itself is not visited).
  template <class Visit>
  void walk_below(const Point& x, unsigned level, Visit&& visit) const {
    Point copy = x;
    descend(copy, level, visit);
  }

  // Every level-`level` node in depth-first order.
  template <class Visit>
  void for_each_at_level(unsigned level, Visit&& visit) const {
    for (const Point& r : roots()) {
      walk(r, [&](unsigned k, std::span<const u64> x) {
        if (k == level) {
          visit(x);
          return false;
        }
        return true;
      });
    }
  }

 private:
  template <class Visit>
  void descend(Point& x, unsigned level, Visit& visit) const {
    if (level >= max_level_) return;
    const u64 step = pw_[level];
    Point child(n_);
    std::vector<unsigned> t(n_, 0);
    for (;;) {
      for (unsigned i = 0; i < n_; ++i) child[i] = x[i] + step * t[i];
      if (satisfies(child, level + 1)) {
        if (visit(level + 1, std::span<const u64>(child))) {
          Point copy = child;
          descend(copy, level + 1, visit);
        }
      }
      unsigned i = n_;
      while (i > 0) {
        --i;
        if (++t[i] < p_) break;
        t[i] = 0;
        if (i == 0) return;
      }
    }
  }

  u64 p_;
  unsigned n_;
  unsigned max_level_;
  std::vector<u64> pw_;
  std::vector<CompiledPoly> constraints_;
};

// Calls fn(point) for every x in (Z/p^level)^n in lexicographic order.
void for_each_residue(unsigned n, u64 modulus, const std::function<void(std::span<const u64>)>& fn);

}  // namespace subzeta
