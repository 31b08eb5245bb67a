#pragma once

#include <complex>
#include <map>
#include <optional>
#include <vector>

#include "subzeta/characters.hpp"
#include "subzeta/qpoly.hpp"
#include "subzeta/smoothing.hpp"
#include "subzeta/support.hpp"

namespace subzeta {

// Exact measures of the shells {ord f_l = k, ac f_l = u mod p^C} of V within
// the support, measured by counting: a level-J class of V has mass p^{-J dim}.
struct ShellMasses {
  u64 p = 0;
  unsigned dim = 0;
  // Deepest ambient level examined.
  unsigned depth = 0;
  unsigned ac_level = 0;
  // shells[k][u] for k <= table_depth()
  std::vector<std::map<u64, mpq_class>> shells;
  // Points still unresolved at `depth` (ord f_l > table_depth()).
  mpq_class deep = 0;
  // Classes whose support membership was still undecided at `depth`.
  mpq_class partial = 0;
  u64 nodes = 0;

  unsigned table_depth() const { return depth - std::max(ac_level, 1u); }
  mpq_class shell_total(unsigned k) const;
  // Sum of all shells plus the deep remainder.
  mpq_class total() const;
};

// Walks every chart of the atlas down to ambient level `depth`.
// `only_chart` restricts the walk to one chart.
ShellMasses shell_masses(const PolySystem& system, const Atlas& atlas, const Support& support,
                         unsigned depth, unsigned ac_level, unsigned workers = 1,
                         u64 budget = kDefaultBudget, std::optional<std::size_t> only_chart = std::nullopt);

struct CoeffTable {
  MultChar chi;
  // c_0..c_M; `exact` is filled for the trivial character only.
  std::vector<std::complex<double>> values;
  std::vector<mpq_class> exact;
  std::vector<bool> stabilized;

  bool is_zero(double tol = 1e-9) const;
};

// c_k(chi) = sum_u chi(u) mass[k][u]; chi must live at a level <= ac_level.
CoeffTable coefficient_table(const ShellMasses& masses, const MultChar& chi, unsigned count,
                             const ShellMasses* recount = nullptr);

// The trivial character of (Z/p^c)^x; for c = 0 a group-less placeholder.
MultChar trivial_character(u64 p, unsigned c);

struct ZetaTables {
  ShellMasses masses;
  ShellMasses recount;
  // Characters at level conductor_cap (empty when the cap is 0).
  std::vector<MultChar> characters;
  CoeffTable trivial;
  // Aligned with `characters`.
  std::vector<CoeffTable> twisted;
  unsigned max_level = 0;
  unsigned conductor_cap = 0;
};

// Tables c_0..c_M for every character of conductor <= cap; the recount at
// one level deeper sets the stabilized flags.
ZetaTables compute_zeta_tables(const PolySystem& system, const Atlas& atlas, const Support& support,
                               unsigned max_level, unsigned conductor_cap, unsigned workers = 1,
                               u64 budget = kDefaultBudget);

// Z(t, chi_triv) from the exact trivial table.
RationalFn trivial_zeta(const CoeffTable& trivial, unsigned validation_count = 2);

// Image-based shell counts at level m + c, u over units mod p^c (u = 0 when
// c = 0). Throws NotStabilized when the recount at m + c + 1 disagrees.
std::map<u64, mpz_class> shell_count(const PolySystem& system, unsigned m, unsigned c, unsigned buffer = 2,
                                     u64 budget = kDefaultBudget);

struct ZetaCoefficient {
  std::complex<double> value;
  std::optional<mpq_class> exact;
};

// p^{-(m+c) dim} sum_u chi(u) shell_count(m, c)[u], c = max(conductor, 1).
ZetaCoefficient zeta_coefficient(const PolySystem& system, unsigned m, const MultChar& chi,
                                 unsigned buffer = 2, u64 budget = kDefaultBudget);

struct ConductorScan {
  // Largest conductor with a nonzero table (0: only the trivial character).
  unsigned cutoff = 0;
  // max_k |c_k(chi)| over characters of each conductor 0..cap.
  std::vector<double> max_abs_by_conductor;
  // True when every conductor-cap table vanishes, so the cutoff has margin.
  bool guard_ok = false;
};

ConductorScan conductor_vanishing_scan(const ZetaTables& tables, double tol = 1e-9);

}  // namespace subzeta
