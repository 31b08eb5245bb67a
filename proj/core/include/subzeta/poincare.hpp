#pragma once

#include <optional>
#include <string>
#include <vector>

#include "subzeta/qpoly.hpp"
#include "subzeta/smoothing.hpp"

namespace subzeta {

struct CountSeries {
  u64 p = 0;
  unsigned dim = 0;
  // N_0..N_M with N_0 = 1.
  std::vector<mpz_class> Nm;
  // p^{-m dim} N_m
  std::vector<mpq_class> scaled;
  std::optional<RationalFn> reconstructed;
};

// N_0..N_M: classes of V(Z_p) mod p^m with f_l = 0 mod p^m.
CountSeries count_series(const PolySystem& system, const Atlas& atlas, unsigned M, unsigned workers = 1,
                         u64 budget = kDefaultBudget);

mpz_class count_Nm(const PolySystem& system, unsigned m, u64 budget = kDefaultBudget);

// count_series plus rational reconstruction; NoRecurrenceFound carries the raw series.
CountSeries poincare_series(const PolySystem& system, const Atlas& atlas, unsigned M,
                            unsigned validation_count = 2, unsigned workers = 1, u64 budget = kDefaultBudget);

struct IdentityCheck {
  bool pass = false;
  // P_num Z_den (1 - t) + t Z_num P_den - (1 - (1 - mass) t) P_den Z_den
  QPoly residual;
  mpq_class mass = 1;
};

// P(t)(1 - t) + t Z(t) = 1 - (1 - mass) t; mass is the measure of V
// (mass = 1 gives P = (1 - tZ)/(1 - t)).
IdentityCheck denef_identity_check(const RationalFn& P, const RationalFn& Z, const mpq_class& mass = 1);

struct BoundCheck {
  double C = 0;
  unsigned argmax = 0;
  std::vector<double> normalized;
  bool bounded = false;
};

// C* = max_m N_m / (p^{(dim - rho) m} m^{m_rho - 1}) over m >= 1; Bounded when
// the maximum is first reached in the lower half of the range.
BoundCheck nm_bound_check(const CountSeries& series, double rho, unsigned m_rho);

struct Lastform2Row {
  unsigned m = 0;
  mpz_class oracle;
  // Sum over all chart centers of the rescaled counts.
  mpz_class chart_sum;
  // Sum over the contributing centers only.
  mpz_class restricted_sum;
};

struct Lastform2Report {
  unsigned L = 0;
  unsigned m0 = 0;
  // Chart indices with nonzero counts from m0 on.
  std::vector<std::size_t> contributing;
  // Chart indices whose center is an exact zero of every f_i including f_l.
  std::vector<std::size_t> certified;
  std::vector<Lastform2Row> rows;
  bool consistent = false;
};

// Checks the chart decomposition of N_m for m in (L, L + span], with the
// threshold m0 found as the first level where the set of contributing
// centers agrees with the next level.
Lastform2Report lastform2_check(const PolySystem& system, const Atlas& atlas, unsigned span = 3,
                                u64 budget = kDefaultBudget);

}  // namespace subzeta
