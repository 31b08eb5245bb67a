#pragma once

#include <optional>
#include <span>
#include <vector>

#include "subzeta/variety.hpp"

namespace subzeta {

using IntMatrix = std::vector<std::vector<mpz_class>>;

// row[target] <- a * row[target] - b * row[source], or a row swap.
struct RowOp {
  enum class Kind { Swap, Combine };
  Kind kind = Kind::Combine;
  unsigned target = 0;
  unsigned source = 0;
  mpz_class a = 1;
  mpz_class b = 0;
};

struct EchelonResult {
  IntMatrix b;
  std::vector<RowOp> row_ops;
  // Column j of b is column column_perm[j] of the input.
  std::vector<unsigned> column_perm;
  std::vector<unsigned> pivot_vals;
};

// Echelon form over Z_p with minimum-valuation pivots (ties: smallest row,
// then smallest column). Throws RankDeficient when rank < #rows.
EchelonResult dvr_echelon(IntMatrix a, u64 p);

// Replays the row operations on polynomials.
std::vector<MPoly> apply_row_ops(std::vector<MPoly> polys, const std::vector<RowOp>& ops);

// A good-reduction chart y -> x0 + p^L y of V. L = 0 is the identity chart
// of a system that already has good reduction.
struct SmoothingCertificate {
  std::vector<mpz_class> center;
  unsigned L = 0;
  std::vector<unsigned> pivot_vals;
  // f_{i,x0}: the row-combined constraints.
  std::vector<MPoly> combined_constraints;
  std::vector<unsigned> exponents;
  std::vector<MPoly> rescaled_constraints;
  bool good = false;
  // #V_{x0,L}(F_p); zero means the coset misses V.
  u64 points_mod_p = 0;
  // f_l(x0 + p^L y)
  MPoly target_local;
  mpz_class target_at_center;
  // f_l(x0 + p^L y) - f_l(x0) = p^target_exponent * rescaled_target(y)
  unsigned target_exponent = 0;
  MPoly rescaled_target;
};

// L defaults to ord(b_{l-1,l-1}) + 1; an explicit L must not be smaller.
SmoothingCertificate neron_rescale(const PolySystem& system, std::span<const mpz_class> x0,
                                   std::optional<unsigned> L = std::nullopt,
                                   u64 budget = kDefaultBudget);

struct Atlas {
  u64 p = 0;
  unsigned n = 0;
  unsigned dim = 0;
  unsigned L = 0;
  bool good_reduction = false;
  unsigned iterations = 0;
  // Candidate classes whose chart turned out to miss V.
  unsigned empty_classes = 0;
  std::vector<SmoothingCertificate> charts;

  // Center of chart i reduced mod p^L.
  Point center_mod(std::size_t i) const;
};

// Iterative decomposition into good-reduction charts of a uniform level L.
Atlas global_decompose(const PolySystem& system, u64 budget = kDefaultBudget,
                       unsigned max_iterations = 12);

// Identity chart under good reduction, otherwise global_decompose.
Atlas build_atlas(const PolySystem& system, u64 budget = kDefaultBudget);

// Walker over the chart's local congruence tree (y-levels 1..max_level).
LiftWalker chart_walker(const SmoothingCertificate& chart, unsigned n, u64 p, unsigned max_level);

// x0 + p^L y mod p^(L+j) for a chart point y given mod p^j.
void chart_to_ambient(const SmoothingCertificate& chart, u64 p, std::span<const u64> y, unsigned j,
                      std::span<u64> x);

struct SpotCheck {
  bool pass = true;
  unsigned samples = 0;
  u64 seed = 0;
};

// f_{i,x0}(x0 + p^L y) = p^{e_i} f_{i,x0,L}(y) mod p^{precision + e_i} at random y.
SpotCheck certificate_spot_check(const SmoothingCertificate& cert, u64 p, unsigned samples, u64 seed,
                                 unsigned precision = 4);

}  // namespace subzeta
