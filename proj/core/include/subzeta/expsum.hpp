#pragma once

#include <complex>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "subzeta/padic.hpp"
#include "subzeta/zeta.hpp"

namespace subzeta {

// Counts of f_l mod p^m over the level-J classes of V inside the support,
// where J = max(m, support level).
struct ValueHistogram {
  u64 p = 0;
  unsigned m = 0;
  unsigned level = 0;
  unsigned dim = 0;
  std::map<u64, u64> counts;
  u64 classes = 0;
};

ValueHistogram value_histogram(const PolySystem& system, const Atlas& atlas, const Support& support,
                               unsigned m, unsigned workers = 1, u64 budget = kDefaultBudget);

// E(u p^{-m}) = p^{-J dim} sum over classes of Psi(u f_l(x) / p^m).
std::complex<double> exponential_sum(const ValueHistogram& h, u64 u);

std::complex<double> exponential_sum(const PolySystem& system, unsigned m, u64 u,
                                     const Support& support = Support::unit_polydisc(),
                                     u64 budget = kDefaultBudget);

// E_Phi(z) for z = u p^{-m}.
std::complex<double> oscillatory_integral(const PolySystem& system, const Atlas& atlas, const Support& support,
                                          const ScaledUnit& z, u64 budget = kDefaultBudget);

using GaussProvider = std::function<std::complex<double>(const MultChar&)>;

// Stationary-phase evaluation of E(u p^{-m}) from the zeta tables. Trivial
// coefficients past the table come from `trivial_rf`; twisted ones must be
// present in the table (MissingTable otherwise).
std::complex<double> form1_eval(const ZetaTables& tables, const std::optional<RationalFn>& trivial_rf,
                                unsigned m, u64 u, const GaussProvider& gauss = gauss_sum);

struct ExpSumRecord {
  unsigned m = 0;
  u64 u = 0;
  std::complex<double> direct;
  std::optional<std::complex<double>> via_form1;
  double abs_direct = 0;
};

struct SpsReport {
  std::vector<ExpSumRecord> records;
  double max_discrepancy = 0;
  bool pass = false;
  // Levels skipped because they do not exceed the chart level.
  std::vector<unsigned> skipped;
};

// Units u mod p^{min(m, cap)}; cap 0 is treated as 1.
std::vector<u64> unit_classes(u64 p, unsigned m, unsigned cap);

SpsReport sps_verify(const PolySystem& system, const Atlas& atlas, const Support& support,
                     const ZetaTables& tables, const std::optional<RationalFn>& trivial_rf, unsigned m_lo,
                     unsigned m_hi, const GaussProvider& gauss = gauss_sum, double threshold = 1e-9,
                     unsigned workers = 1, u64 budget = kDefaultBudget);

struct DecayRow {
  unsigned m = 0;
  double max_abs = 0;
  double normalized = 0;
};

struct DecayReport {
  std::vector<DecayRow> rows;
  double slack = 1.5;
  bool bounded = false;
};

// max over all units u mod p^m of |E(u p^{-m})|, normalized by p^{rho m} / m^{m_rho - 1}.
DecayReport decay_report(const PolySystem& system, const Atlas& atlas, const Support& support, unsigned m_lo,
                         unsigned m_hi, double rho, unsigned m_rho, double slack = 1.5, unsigned workers = 1,
                         u64 budget = kDefaultBudget);

struct DecompositionCheck {
  unsigned m = 0;
  u64 u = 0;
  std::complex<double> lhs;
  std::complex<double> rhs;
  double diff = 0;
};

// p^{m dim} E(u p^{-m}) from the image oracle against the chart-by-chart sum
// sum_x Psi(u f_l(x)/p^m) sum_y Psi(u p^{e-L} f_{l,x,L}(y) / p^{m-L}); needs m > L.
DecompositionCheck decomposition_identity_check(const PolySystem& system, const Atlas& atlas, unsigned m, u64 u,
                                                u64 budget = kDefaultBudget);

}  // namespace subzeta
