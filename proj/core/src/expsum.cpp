#include "subzeta/expsum.hpp"

#include <atomic>
#include <cmath>
#include <set>

#include "subzeta/error.hpp"

namespace subzeta {

ValueHistogram value_histogram(const PolySystem& system, const Atlas& atlas, const Support& support,
                               unsigned m, unsigned workers, u64 budget) {
  if (m == 0) throw Error(ErrorKind::InvalidArgument, "level must be >= 1");
  const u64 p = system.p();
  const unsigned n = system.n();
  ValueHistogram h;
  h.p = p;
  h.m = m;
  h.dim = system.dim();
  h.level = std::max(m, support.kind() == Support::Kind::Cosets ? support.level() : 0u);
  const unsigned J = h.level;
  const u64 modJ = checked_pow(p, J);
  const u64 pm = checked_pow(p, m);

  if (!atlas.good_reduction && J <= atlas.L) {
    std::set<Point> seen;
    for (std::size_t i = 0; i < atlas.charts.size(); ++i) {
      Point c;
      for (const auto& v : atlas.charts[i].center) c.push_back(mod_u64(v, modJ));
      if (!seen.insert(c).second) continue;
      if (support.classify(c, J) != Support::Membership::Inside) continue;
      ++h.counts[mod_u64(atlas.charts[i].target_at_center, pm)];
      ++h.classes;
    }
    return h;
  }

  struct Task {
    std::size_t chart;
    Point root;
  };
  std::vector<LiftWalker> walkers;
  std::vector<CompiledPoly> targets;
  std::vector<Point> centers;
  std::vector<Task> tasks;
  for (std::size_t i = 0; i < atlas.charts.size(); ++i) {
    const auto& ch = atlas.charts[i];
    walkers.push_back(chart_walker(ch, n, p, J - ch.L));
    targets.emplace_back(ch.target_local, pm);
    Point c;
    for (const auto& v : ch.center) c.push_back(mod_u64(v, modJ));
    centers.push_back(std::move(c));
  }
  for (std::size_t i = 0; i < walkers.size(); ++i) {
    for (auto& r : walkers[i].roots()) tasks.push_back({i, std::move(r)});
  }
  std::vector<std::map<u64, u64>> parts(tasks.size());
  std::vector<u64> classes(tasks.size(), 0);
  std::atomic<u64> seen{0};
  parallel_for(tasks.size(), workers, [&](std::size_t t) {
    const Task& task = tasks[t];
    const auto& ch = atlas.charts[task.chart];
    const unsigned jtop = J - ch.L;
    const u64 scale = checked_pow(p, ch.L);
    Point x(n);
    walkers[task.chart].walk(task.root, [&](unsigned j, std::span<const u64> y) {
      if (j < jtop) return true;
      if (seen.fetch_add(1) >= budget) throw Error(ErrorKind::BudgetExceeded, "exponential sum exceeds budget");
      for (unsigned i = 0; i < n; ++i) x[i] = (centers[task.chart][i] + scale * y[i]) % modJ;
      if (support.classify(x, J) == Support::Membership::Inside) {
        ++parts[t][targets[task.chart].eval(y)];
        ++classes[t];
      }
      return false;
    });
  });
  for (std::size_t t = 0; t < tasks.size(); ++t) {
    for (const auto& [a, c] : parts[t]) h.counts[a] += c;
    h.classes += classes[t];
  }
  return h;
}

std::complex<double> exponential_sum(const ValueHistogram& h, u64 u) {
  const u64 pm = checked_pow(h.p, h.m);
  u %= pm;
  if (u % h.p == 0) throw Error(ErrorKind::NonUnitArgument, "u must be prime to p");
  std::complex<long double> acc = 0;
  for (const auto& [a, c] : h.counts) {
    std::complex<double> e = unit_root(mulmod(u, a, pm), pm);
    acc += std::complex<long double>(e.real(), e.imag()) * static_cast<long double>(c);
  }
  const long double scale = std::pow(static_cast<long double>(h.p), -static_cast<long double>(h.level * h.dim));
  return {static_cast<double>(acc.real() * scale), static_cast<double>(acc.imag() * scale)};
}

std::complex<double> exponential_sum(const PolySystem& system, unsigned m, u64 u, const Support& support,
                                     u64 budget) {
  Atlas atlas = build_atlas(system, budget);
  return exponential_sum(value_histogram(system, atlas, support, m, 1, budget), u);
}

std::complex<double> oscillatory_integral(const PolySystem& system, const Atlas& atlas, const Support& support,
                                          const ScaledUnit& z, u64 budget) {
  if (support.kind() == Support::Kind::Cosets && support.centers().empty()) return 0.0;
  auto h = value_histogram(system, atlas, support, z.exponent(), 1, budget);
  return exponential_sum(h, mod_u64(z.unit(), checked_pow(system.p(), z.exponent())));
}

std::complex<double> form1_eval(const ZetaTables& tables, const std::optional<RationalFn>& trivial_rf,
                                unsigned m, u64 u, const GaussProvider& gauss) {
  if (m == 0) throw Error(ErrorKind::InvalidArgument, "level must be >= 1");
  const u64 p = tables.masses.p;
  if (p == 2) throw Error(ErrorKind::EvenPrimeUnsupported, "stationary-phase evaluation needs twisted characters");
  const std::size_t have = tables.trivial.exact.size();
  std::vector<mpq_class> extra;
  auto c_triv = [&](unsigned k) -> mpq_class {
    if (k < have) return tables.trivial.exact[k];
    if (!trivial_rf) {
      throw Error(ErrorKind::MissingTable, "trivial coefficient c_" + std::to_string(k) +
                                               " beyond the table and no rational function given");
    }
    if (extra.size() <= k) extra = trivial_rf->series(k + 1);
    return extra[k];
  };
  auto W = [&](int k) {
    mpq_class s = 0;
    for (int i = 0; i <= k; ++i) s += c_triv(static_cast<unsigned>(i));
    return s;
  };
  mpq_class trivial_part = tables.masses.total();
  trivial_part += (W(static_cast<int>(m) - 2) - mpq_class(p) * W(static_cast<int>(m) - 1)) / mpq_class(p - 1);
  std::complex<double> value = trivial_part.get_d();
  for (std::size_t i = 0; i < tables.characters.size(); ++i) {
    const MultChar& chi = tables.characters[i];
    if (chi.trivial() || chi.conductor > m) continue;
    const unsigned k = m - chi.conductor;
    const CoeffTable& t = tables.twisted[i];
    if (k >= t.values.size()) {
      throw Error(ErrorKind::MissingTable, "twisted coefficient c_" + std::to_string(k) + " for character index " +
                                               std::to_string(chi.index) + " is beyond the table");
    }
    if (t.values[k] == std::complex<double>(0)) continue;
    value += gauss(chi.inverse()) * chi_value(chi, u) * t.values[k];
  }
  return value;
}

std::vector<u64> unit_classes(u64 p, unsigned m, unsigned cap) {
  const u64 mod = checked_pow(p, std::min(m, std::max(cap, 1u)));
  std::vector<u64> out;
  for (u64 u = 1; u < mod; ++u) {
    if (u % p != 0) out.push_back(u);
  }
  return out;
}

SpsReport sps_verify(const PolySystem& system, const Atlas& atlas, const Support& support,
                     const ZetaTables& tables, const std::optional<RationalFn>& trivial_rf, unsigned m_lo,
                     unsigned m_hi, const GaussProvider& gauss, double threshold, unsigned workers, u64 budget) {
  SpsReport rep;
  for (unsigned m = std::max(m_lo, 1u); m <= m_hi; ++m) {
    if (!atlas.good_reduction && m <= atlas.L) {
      rep.skipped.push_back(m);
      continue;
    }
    auto h = value_histogram(system, atlas, support, m, workers, budget);
    for (u64 u : unit_classes(system.p(), m, tables.conductor_cap)) {
      ExpSumRecord r;
      r.m = m;
      r.u = u;
      r.direct = exponential_sum(h, u);
      r.abs_direct = std::abs(r.direct);
      r.via_form1 = form1_eval(tables, trivial_rf, m, u, gauss);
      rep.max_discrepancy = std::max(rep.max_discrepancy, std::abs(r.direct - *r.via_form1));
      rep.records.push_back(r);
    }
  }
  rep.pass = !rep.records.empty() && rep.max_discrepancy < threshold;
  return rep;
}

DecayReport decay_report(const PolySystem& system, const Atlas& atlas, const Support& support, unsigned m_lo,
                         unsigned m_hi, double rho, unsigned m_rho, double slack, unsigned workers, u64 budget) {
  DecayReport rep;
  rep.slack = slack;
  for (unsigned m = std::max(m_lo, 1u); m <= m_hi; ++m) {
    auto h = value_histogram(system, atlas, support, m, workers, budget);
    DecayRow row;
    row.m = m;
    for (u64 u : unit_classes(system.p(), m, m)) row.max_abs = std::max(row.max_abs, std::abs(exponential_sum(h, u)));
    row.normalized = row.max_abs * std::pow(static_cast<double>(system.p()), rho * m) /
                     std::pow(static_cast<double>(m), static_cast<double>(m_rho) - 1.0);
    rep.rows.push_back(row);
  }
  const std::size_t half = (rep.rows.size() + 1) / 2;
  double lower = 0, upper = 0;
  for (std::size_t i = 0; i < rep.rows.size(); ++i) {
    (i < half ? lower : upper) = std::max(i < half ? lower : upper, rep.rows[i].normalized);
  }
  rep.bounded = !rep.rows.empty() && upper <= slack * lower + 1e-12;
  return rep;
}

DecompositionCheck decomposition_identity_check(const PolySystem& system, const Atlas& atlas, unsigned m, u64 u,
                                                u64 budget) {
  if (m <= atlas.L) throw Error(ErrorKind::InvalidArgument, "decomposition identity needs m > L");
  const u64 p = system.p();
  const u64 pm = checked_pow(p, m);
  u %= pm;
  DecompositionCheck out;
  out.m = m;
  out.u = u;
  CompiledPoly f(system.target(), pm);
  for (const auto& x : image_oracle_tree(system, m, atlas.L + 1, budget)) {
    out.lhs += unit_root(mulmod(u, f.eval(x), pm), pm);
  }
  const unsigned jm = m - atlas.L;
  const u64 pj = checked_pow(p, jm);
  for (const auto& ch : atlas.charts) {
    const std::complex<double> outer = unit_root(mulmod(u, mod_u64(ch.target_at_center, pm), pm), pm);
    if (ch.target_exponent < ch.L) throw Error(ErrorKind::InvalidArgument, "target exponent below chart level");
    const u64 lift = mod_u64(pow_mpz(p, ch.target_exponent - ch.L), pj);
    CompiledPoly g(ch.rescaled_target, pj);
    std::complex<double> inner = 0;
    LiftWalker w = chart_walker(ch, system.n(), p, jm);
    w.for_each_at_level(jm, [&](std::span<const u64> y) {
      inner += unit_root(mulmod(u % pj, mulmod(lift, g.eval(y), pj), pj), pj);
    });
    out.rhs += outer * inner;
  }
  out.diff = std::abs(out.lhs - out.rhs);
  return out;
}

}  // namespace subzeta
