#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <vector>

#include "subzeta/characters.hpp"
#include "subzeta/padic.hpp"
#include "subzeta/smoothing.hpp"
#include "subzeta/support.hpp"
#include "subzeta/variety.hpp"

namespace subzeta {

// Height of delta_r on (p^r Z_p)^{l-1}; the default is p^{r(l-1)}.
using DeltaWeight = std::function<mpq_class(u64 p, unsigned r, unsigned l)>;

mpq_class default_delta_weight(u64 p, unsigned r, unsigned l);

struct DeltaApprox {
  unsigned r = 0;
  unsigned s = 0;
  unsigned M = 0;
  std::complex<double> value;
  // Filled for the trivial character.
  std::optional<mpq_class> exact;
  // Bound on the contribution of classes still unresolved at level M.
  mpq_class tail_bound = 0;
  u64 nodes = 0;
};

// I_r = int Phi(x) delta_r(f_1..f_{l-1}) chi(ac f_l) |f_l|^s dx, walking ambient
// classes down to level M.
DeltaApprox delta_r_integral(const PolySystem& system, const Support& support, unsigned s, const MultChar& chi,
                             unsigned r, unsigned M, const DeltaWeight& weight = default_delta_weight,
                             u64 budget = kDefaultBudget);

struct DeltaLimitReport {
  std::vector<DeltaApprox> rows;
  std::vector<double> abs_diff;
  std::complex<double> surface;
  std::optional<mpq_class> surface_exact;
  std::optional<unsigned> r0;
  bool pass = false;
};

// Ratio of the Gel'fand-Leray surface measure to the counting measure on V:
// p^{sum e_i - L(l-1)} per chart. Throws InvalidArgument when the charts disagree.
mpq_class gelfand_leray_factor(const Atlas& atlas, unsigned l);

// Pass when |I_r - surface| <= tail_bound(r) for every r >= r0 in [r_min, r_max].
DeltaLimitReport delta_limit_check(const PolySystem& system, const Support& support, unsigned s,
                                   const MultChar& chi, unsigned r_min, unsigned r_max, unsigned M,
                                   std::complex<double> surface, std::optional<mpq_class> surface_exact,
                                   const DeltaWeight& weight = default_delta_weight, u64 budget = kDefaultBudget);

// int Phi(x) delta_r(f_1..f_{l-1}) Psi(z f_l(x)) dx, exact up to rounding.
std::complex<double> regularized_oscillatory_sum(const PolySystem& system, const Support& support, unsigned r,
                                                 const ScaledUnit& z,
                                                 const DeltaWeight& weight = default_delta_weight,
                                                 u64 budget = kDefaultBudget);

}  // namespace subzeta
