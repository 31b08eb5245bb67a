#pragma once

#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <utility>
#include <vector>

#include "subzeta/lift.hpp"
#include "subzeta/system.hpp"

namespace subzeta {

inline constexpr u64 kDefaultBudget = 10'000'000;

// (ord f_l, ac f_l mod p^c)
using ShellKey = std::pair<unsigned, u64>;

struct FiberCount {
  unsigned m = 0;
  mpz_class count = 0;
  // Present when a shell breakdown was requested.
  std::optional<std::map<ShellKey, mpz_class>> by_shell;
  // Points whose shell is not resolved at level m (ord + c > m, or f_l = 0 mod p^m).
  mpz_class deep = 0;
};

// Every x mod p^m with the constraints = 0 mod p^m, by exhaustive scan.
FiberCount brute_force_points(const PolySystem& system, unsigned m, u64 budget = kDefaultBudget,
                              std::vector<Point>* points = nullptr);

struct ReductionVerdict {
  bool good = false;
  std::optional<Point> witness;
  u64 points_mod_p = 0;
};

ReductionVerdict good_reduction_test(const std::vector<MPoly>& constraints, unsigned n, u64 p,
                                     u64 budget = kDefaultBudget);
ReductionVerdict good_reduction_test(const PolySystem& system, u64 budget = kDefaultBudget);

// Level-m points of V by lifting from V(F_p); requires good reduction.
// With shell_ac_level = c the points are also sorted into shells of f_l.
FiberCount hensel_enumerate(const PolySystem& system, unsigned m,
                            std::optional<unsigned> shell_ac_level = std::nullopt, unsigned workers = 1,
                            const std::function<void(std::span<const u64>)>& sink = {});

// #(V(Z_p) mod p^m); uses the chart decomposition under bad reduction.
mpz_class reduction_image_count(const PolySystem& system, unsigned m, u64 budget = kDefaultBudget,
                                unsigned workers = 1);

// Reductions mod p^m of congruence solutions at level m + buffer, found by
// walking the congruence tree. Sorted.
std::vector<Point> image_oracle_tree(const PolySystem& system, unsigned m, unsigned buffer,
                                     u64 budget = kDefaultBudget);

// Same projection computed from an exhaustive scan at level m + buffer.
std::vector<Point> image_oracle_brute(const PolySystem& system, unsigned m, unsigned buffer,
                                      u64 budget = kDefaultBudget);

struct ImageOracle {
  std::vector<Point> points;
  unsigned buffer = 0;
  // The projection at buffer + 1 agrees.
  bool stabilized = false;
};

ImageOracle image_oracle(const PolySystem& system, unsigned m, unsigned buffer,
                         u64 budget = kDefaultBudget);

struct CriticalSuspect {
  Point point;
  unsigned target_ord = 0;
};

// Residues mod p^M with constraints = 0, all l x l Jacobian minors = 0 mod p^M
// and ord f_l < M. A semi-decision: suspects may disappear at deeper levels.
std::vector<CriticalSuspect> critical_locus_probe(const PolySystem& system, unsigned M,
                                                  u64 budget = kDefaultBudget);

void write_points_csv(std::ostream& out, unsigned level, const std::vector<Point>& points,
                      bool header = true);

// Exact determinant (fraction-free elimination).
mpz_class determinant(std::vector<std::vector<mpz_class>> a);

}  // namespace subzeta
