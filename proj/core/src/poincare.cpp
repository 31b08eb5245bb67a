#include "subzeta/poincare.hpp"

#include <cmath>
#include <set>

#include "subzeta/error.hpp"

namespace subzeta {

namespace {

// counts[j] for j = 1..jmax: chart points y mod p^j with target = 0 mod p^(L+j).
std::vector<u64> chart_zero_counts(const SmoothingCertificate& ch, unsigned n, u64 p, unsigned jmax, u64 budget) {
  std::vector<u64> counts(jmax + 1, 0);
  if (jmax == 0) return counts;
  LiftWalker w = chart_walker(ch, n, p, jmax);
  const u64 top = checked_pow(p, ch.L + jmax);
  CompiledPoly g(ch.target_local, top);
  u64 visited = 0;
  for (const auto& r : w.roots()) {
    w.walk(r, [&](unsigned j, std::span<const u64> y) {
      if (++visited > budget) throw Error(ErrorKind::BudgetExceeded, "count walk exceeds budget");
      const u64 mod = checked_pow(p, ch.L + j);
      if (g.eval(y) % mod != 0) return false;
      ++counts[j];
      return true;
    });
  }
  return counts;
}

}  // namespace

CountSeries count_series(const PolySystem& system, const Atlas& atlas, unsigned M, unsigned workers, u64 budget) {
  const u64 p = system.p();
  CountSeries s;
  s.p = p;
  s.dim = system.dim();
  s.Nm.assign(M + 1, 0);
  s.Nm[0] = 1;
  // Levels up to L: reductions of chart centers.
  for (unsigned m = 1; m <= std::min(M, atlas.L); ++m) {
    const u64 mod = checked_pow(p, m);
    std::set<Point> seen;
    for (std::size_t i = 0; i < atlas.charts.size(); ++i) {
      if (mod_u64(atlas.charts[i].target_at_center, mod) != 0) continue;
      Point c;
      for (const auto& v : atlas.charts[i].center) c.push_back(mod_u64(v, mod));
      seen.insert(std::move(c));
    }
    s.Nm[m] = static_cast<unsigned long>(seen.size());
  }
  if (M > atlas.L) {
    std::vector<std::vector<u64>> per(atlas.charts.size());
    parallel_for(atlas.charts.size(), workers, [&](std::size_t i) {
      per[i] = chart_zero_counts(atlas.charts[i], system.n(), p, M - atlas.L, budget);
    });
    for (const auto& counts : per) {
      for (unsigned j = 1; j < counts.size(); ++j) s.Nm[atlas.L + j] += mpz_class(std::to_string(counts[j]));
    }
  }
  for (unsigned m = 0; m <= M; ++m) s.scaled.push_back(pow_mpq(p, -static_cast<int>(m * s.dim)) * s.Nm[m]);
  return s;
}

mpz_class count_Nm(const PolySystem& system, unsigned m, u64 budget) {
  if (m == 0) return 1;
  Atlas atlas = build_atlas(system, budget);
  return count_series(system, atlas, m, 1, budget).Nm[m];
}

CountSeries poincare_series(const PolySystem& system, const Atlas& atlas, unsigned M, unsigned validation_count,
                            unsigned workers, u64 budget) {
  CountSeries s = count_series(system, atlas, M, workers, budget);
  try {
    s.reconstructed = reconstruct_rational(s.scaled, validation_count);
  } catch (const Error& e) {
    std::string raw;
    for (const auto& v : s.scaled) raw += (raw.empty() ? "" : ", ") + v.get_str();
    throw Error(e.kind(), std::string(e.what()) + "; scaled series [" + raw + "]");
  }
  return s;
}

IdentityCheck denef_identity_check(const RationalFn& P, const RationalFn& Z, const mpq_class& mass) {
  IdentityCheck out;
  out.mass = mass;
  const QPoly one = QPoly::constant(1);
  const QPoly t = QPoly::monomial(1, 1);
  const QPoly one_minus_t = one - t;
  const QPoly rhs = one - mpq_class(1 - mass) * t;
  out.residual = P.numerator() * Z.denominator() * one_minus_t + t * Z.numerator() * P.denominator() -
                 rhs * P.denominator() * Z.denominator();
  out.pass = out.residual.is_zero();
  return out;
}

BoundCheck nm_bound_check(const CountSeries& series, double rho, unsigned m_rho) {
  BoundCheck out;
  const std::size_t M = series.Nm.size() - 1;
  const double p = static_cast<double>(series.p);
  for (std::size_t m = 1; m <= M; ++m) {
    double denom = std::pow(p, (series.dim - rho) * m) * std::pow(static_cast<double>(m), m_rho - 1.0);
    double v = series.Nm[m].get_d() / denom;
    out.normalized.push_back(v);
    if (v > out.C * (1 + 1e-12)) {
      out.C = v;
      out.argmax = static_cast<unsigned>(m);
    }
  }
  out.bounded = M >= 2 && out.argmax <= (M + 1) / 2;
  return out;
}

Lastform2Report lastform2_check(const PolySystem& system, const Atlas& atlas, unsigned span, u64 budget) {
  const u64 p = system.p();
  Lastform2Report rep;
  rep.L = atlas.L;
  const unsigned L = atlas.L;
  const unsigned top = L + span + 1;
  std::vector<std::vector<u64>> per;
  for (const auto& ch : atlas.charts) per.push_back(chart_zero_counts(ch, system.n(), p, top - L, budget));
  auto contributing_at = [&](unsigned m) {
    std::vector<std::size_t> c;
    for (std::size_t i = 0; i < per.size(); ++i) {
      if (per[i][m - L] > 0) c.push_back(i);
    }
    return c;
  };
  rep.m0 = top;
  for (unsigned m = L + 1; m < top; ++m) {
    bool stable = true;
    for (unsigned mm = m; mm < top && stable; ++mm) stable = contributing_at(mm) == contributing_at(mm + 1);
    if (stable) {
      rep.m0 = m;
      break;
    }
  }
  rep.contributing = contributing_at(rep.m0);
  for (std::size_t i = 0; i < atlas.charts.size(); ++i) {
    const auto& ch = atlas.charts[i];
    bool exact = ch.target_at_center == 0;
    for (const auto& f : system.constraints()) exact = exact && f.eval(ch.center) == 0;
    if (exact) rep.certified.push_back(i);
  }
  rep.consistent = true;
  for (unsigned m = L + 1; m <= L + span; ++m) {
    Lastform2Row row;
    row.m = m;
    const u64 mod = checked_pow(p, m);
    CompiledPoly f(system.target(), mod);
    for (const auto& x : image_oracle_tree(system, m, L + 1, budget)) {
      if (f.eval(x) == 0) row.oracle += 1;
    }
    for (std::size_t i = 0; i < per.size(); ++i) row.chart_sum += mpz_class(std::to_string(per[i][m - L]));
    for (std::size_t i : rep.contributing) row.restricted_sum += mpz_class(std::to_string(per[i][m - L]));
    rep.consistent = rep.consistent && row.oracle == row.chart_sum;
    if (m >= rep.m0) rep.consistent = rep.consistent && row.restricted_sum == row.oracle;
    rep.rows.push_back(row);
  }
  for (std::size_t c : rep.certified) {
    if (std::find(rep.contributing.begin(), rep.contributing.end(), c) == rep.contributing.end()) {
      rep.consistent = false;
    }
  }
  return rep;
}

}  // namespace subzeta
