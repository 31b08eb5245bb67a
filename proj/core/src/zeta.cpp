#include "subzeta/zeta.hpp"

#include <algorithm>
#include <atomic>

#include "subzeta/error.hpp"

namespace subzeta {

mpq_class ShellMasses::shell_total(unsigned k) const {
  mpq_class t = 0;
  if (k < shells.size()) {
    for (const auto& [u, m] : shells[k]) t += m;
  }
  return t;
}

mpq_class ShellMasses::total() const {
  mpq_class t = deep;
  for (unsigned k = 0; k < shells.size(); ++k) t += shell_total(k);
  return t;
}

ShellMasses shell_masses(const PolySystem& system, const Atlas& atlas, const Support& support,
                         unsigned depth, unsigned ac_level, unsigned workers, u64 budget,
                         std::optional<std::size_t> only_chart) {
  const u64 p = system.p();
  const unsigned n = system.n();
  const unsigned C = ac_level;
  if (depth < atlas.L + 1 || depth < std::max(C, 1u)) {
    throw Error(ErrorKind::InvalidArgument, "engine depth too small for the chart level / ac level");
  }
  const u64 top_mod = checked_pow(p, depth);
  const u64 pc = checked_pow(p, C);

  struct Task {
    std::size_t chart;
    Point root;
  };
  struct Acc {
    // counts[J][(k,u)]
    std::vector<std::map<std::pair<unsigned, u64>, u64>> counts;
    u64 deep = 0;
    u64 partial = 0;
    u64 nodes = 0;
  };

  std::vector<LiftWalker> walkers;
  std::vector<CompiledPoly> targets;
  std::vector<Point> centers;
  std::vector<std::size_t> chart_ids;
  for (std::size_t i = 0; i < atlas.charts.size(); ++i) {
    if (only_chart && *only_chart != i) continue;
    const auto& ch = atlas.charts[i];
    walkers.push_back(chart_walker(ch, n, p, depth - ch.L));
    targets.emplace_back(ch.target_local, top_mod);
    Point c;
    for (const auto& v : ch.center) c.push_back(mod_u64(v, top_mod));
    centers.push_back(std::move(c));
    chart_ids.push_back(i);
  }
  std::vector<Task> tasks;
  for (std::size_t w = 0; w < walkers.size(); ++w) {
    for (auto& r : walkers[w].roots()) tasks.push_back({w, std::move(r)});
  }
  std::vector<u64> pw(depth + 1);
  pw[0] = 1;
  for (unsigned k = 1; k <= depth; ++k) pw[k] = pw[k - 1] * p;

  std::atomic<u64> total_nodes{0};
  std::vector<Acc> accs(tasks.size());
  parallel_for(tasks.size(), workers, [&](std::size_t t) {
    const Task& task = tasks[t];
    const auto& chart = atlas.charts[chart_ids[task.chart]];
    const unsigned L = chart.L;
    const CompiledPoly& g = targets[task.chart];
    const Point& x0 = centers[task.chart];
    Acc& acc = accs[t];
    acc.counts.resize(depth + 1);
    Point x(n);
    walkers[task.chart].walk(task.root, [&](unsigned j, std::span<const u64> y) {
      if ((++acc.nodes & 0xfff) == 0 && total_nodes.fetch_add(0x1000) + 0x1000 > budget) {
        throw Error(ErrorKind::BudgetExceeded, "zeta engine exceeds node budget");
      }
      const unsigned J = L + j;
      const u64 modJ = pw[J];
      for (unsigned i = 0; i < n; ++i) x[i] = (x0[i] + pw[L] % modJ * (y[i] % modJ)) % modJ;
      auto membership = support.classify(x, J);
      if (membership == Support::Membership::Outside) return false;
      const u64 v = g.eval(y) % modJ;
      if (membership == Support::Membership::Inside) {
        if (v != 0) {
          unsigned k = valuation_u64(v, p);
          if (k + C <= J) {
            u64 u = (v / pw[k]) % pc;
            ++acc.counts[J][{k, u}];
            return false;
          }
        }
        if (J == depth) {
          ++acc.deep;
          return false;
        }
        return true;
      }
      if (J == depth) {
        ++acc.partial;
        return false;
      }
      return true;
    });
  });

  ShellMasses out;
  out.p = p;
  out.dim = system.dim();
  out.depth = depth;
  out.ac_level = C;
  out.shells.resize(out.table_depth() + 1);
  std::vector<std::map<std::pair<unsigned, u64>, u64>> merged(depth + 1);
  u64 deep = 0, partial = 0;
  for (const auto& acc : accs) {
    for (unsigned J = 0; J < acc.counts.size(); ++J) {
      for (const auto& [key, c] : acc.counts[J]) merged[J][key] += c;
    }
    deep += acc.deep;
    partial += acc.partial;
    out.nodes += acc.nodes;
  }
  for (unsigned J = 1; J <= depth; ++J) {
    const mpq_class w = pow_mpq(p, -static_cast<int>(J * out.dim));
    for (const auto& [key, c] : merged[J]) {
      const auto [k, u] = key;
      if (k >= out.shells.size()) out.shells.resize(k + 1);
      out.shells[k][u] += w * mpz_class(std::to_string(c));
    }
  }
  // Shells beyond the table depth are incomplete; fold them into the deep mass.
  const mpq_class wdeep = pow_mpq(p, -static_cast<int>(depth * out.dim));
  out.deep = wdeep * mpz_class(std::to_string(deep));
  while (out.shells.size() > out.table_depth() + 1) {
    for (const auto& [u, m] : out.shells.back()) out.deep += m;
    out.shells.pop_back();
  }
  out.partial = wdeep * mpz_class(std::to_string(partial));
  return out;
}

bool CoeffTable::is_zero(double tol) const {
  return std::all_of(values.begin(), values.end(), [&](const auto& v) { return std::abs(v) <= tol; });
}

MultChar trivial_character(u64 p, unsigned c) {
  if (c == 0) return MultChar{};
  return enumerate_characters(p, c).front();
}

CoeffTable coefficient_table(const ShellMasses& masses, const MultChar& chi, unsigned count,
                             const ShellMasses* recount) {
  if (!chi.trivial() && (!chi.group || chi.group->level() > masses.ac_level)) {
    throw Error(ErrorKind::InvalidArgument, "character level exceeds the recorded angular precision");
  }
  if (count > masses.table_depth() + 1) {
    throw Error(ErrorKind::MissingTable, "requested " + std::to_string(count) + " coefficients but only " +
                                             std::to_string(masses.table_depth() + 1) + " are resolved");
  }
  auto coeff = [&](const ShellMasses& sm, unsigned k, mpq_class* exact) {
    std::complex<double> v = 0;
    mpq_class e = 0;
    if (k < sm.shells.size()) {
      for (const auto& [u, m] : sm.shells[k]) {
        if (chi.trivial()) e += m;
        else v += chi_value(chi, u) * m.get_d();
      }
    }
    if (chi.trivial()) {
      v = e.get_d();
      if (exact) *exact = e;
    }
    return v;
  };
  CoeffTable t;
  t.chi = chi;
  for (unsigned k = 0; k < count; ++k) {
    mpq_class e;
    std::complex<double> v = coeff(masses, k, &e);
    t.values.push_back(v);
    if (chi.trivial()) t.exact.push_back(e);
    bool stable = true;
    if (recount) {
      mpq_class e2;
      std::complex<double> v2 = coeff(*recount, k, &e2);
      stable = chi.trivial() ? e2 == e : std::abs(v2 - v) <= 1e-12;
    }
    t.stabilized.push_back(stable);
  }
  return t;
}

ZetaTables compute_zeta_tables(const PolySystem& system, const Atlas& atlas, const Support& support,
                               unsigned max_level, unsigned conductor_cap, unsigned workers, u64 budget) {
  ZetaTables z;
  z.max_level = max_level;
  z.conductor_cap = conductor_cap;
  if (conductor_cap > 0) z.characters = enumerate_characters(system.p(), conductor_cap);
  unsigned depth = max_level + std::max(conductor_cap, 1u);
  depth = std::max(depth, atlas.L + 1);
  z.masses = shell_masses(system, atlas, support, depth, conductor_cap, workers, budget);
  z.recount = shell_masses(system, atlas, support, depth + 1, conductor_cap, workers, budget);
  const unsigned count = std::min(max_level, z.masses.table_depth()) + 1;
  MultChar triv = conductor_cap > 0 ? z.characters.front() : MultChar{};
  z.trivial = coefficient_table(z.masses, triv, count, &z.recount);
  for (const auto& chi : z.characters) {
    z.twisted.push_back(chi.trivial() ? z.trivial : coefficient_table(z.masses, chi, count, &z.recount));
  }
  return z;
}

RationalFn trivial_zeta(const CoeffTable& trivial, unsigned validation_count) {
  return reconstruct_rational(trivial.exact, validation_count);
}

std::map<u64, mpz_class> shell_count(const PolySystem& system, unsigned m, unsigned c, unsigned buffer, u64 budget) {
  const u64 p = system.p();
  const unsigned J = m + c;
  if (J == 0) throw Error(ErrorKind::InvalidArgument, "shell level must be >= 1");
  auto count_at = [&](unsigned level) {
    std::map<u64, mpz_class> out;
    const u64 pc = checked_pow(p, c);
    for (u64 u = 0; u < pc; ++u) {
      if (c == 0 || u % p != 0) out[u] = 0;
    }
    const u64 mod = checked_pow(p, level);
    CompiledPoly target(system.target(), mod);
    const u64 pm = checked_pow(p, m);
    for (const auto& x : image_oracle_tree(system, level, buffer, budget)) {
      u64 v = target.eval(x);
      if (v == 0 || valuation_u64(v, p) != m) continue;
      out[(v / pm) % pc] += 1;
    }
    return out;
  };
  auto base = count_at(J);
  auto again = count_at(J + 1);
  const mpz_class scale = pow_mpz(p, system.dim());
  for (const auto& [u, cnt] : base) {
    if (again[u] != cnt * scale) {
      throw Error(ErrorKind::NotStabilized, "shell (" + std::to_string(m) + ", u=" + std::to_string(u) +
                                                ") count " + cnt.get_str() + " at level " + std::to_string(J) +
                                                " vs " + again[u].get_str() + " at level " + std::to_string(J + 1));
    }
  }
  return base;
}

ZetaCoefficient zeta_coefficient(const PolySystem& system, unsigned m, const MultChar& chi, unsigned buffer,
                                 u64 budget) {
  const unsigned c = std::max(chi.conductor, 1u);
  auto counts = shell_count(system, m, c, buffer, budget);
  const mpq_class w = pow_mpq(system.p(), -static_cast<int>((m + c) * system.dim()));
  ZetaCoefficient out;
  if (chi.trivial()) {
    mpq_class e = 0;
    for (const auto& [u, cnt] : counts) e += w * cnt;
    out.exact = e;
    out.value = e.get_d();
    return out;
  }
  std::complex<double> v = 0;
  for (const auto& [u, cnt] : counts) v += chi_value(chi, u) * mpq_class(w * cnt).get_d();
  out.value = v;
  return out;
}

ConductorScan conductor_vanishing_scan(const ZetaTables& tables, double tol) {
  ConductorScan out;
  out.max_abs_by_conductor.assign(tables.conductor_cap + 1, 0.0);
  auto note = [&](unsigned cond, const CoeffTable& t) {
    for (const auto& v : t.values) out.max_abs_by_conductor[cond] = std::max(out.max_abs_by_conductor[cond], std::abs(v));
  };
  note(0, tables.trivial);
  for (std::size_t i = 0; i < tables.characters.size(); ++i) {
    if (tables.characters[i].trivial()) continue;
    note(tables.characters[i].conductor, tables.twisted[i]);
  }
  for (unsigned c = 1; c <= tables.conductor_cap; ++c) {
    if (out.max_abs_by_conductor[c] > tol) out.cutoff = c;
  }
  out.guard_ok = tables.conductor_cap == 0 || out.max_abs_by_conductor[tables.conductor_cap] <= tol;
  return out;
}

}  // namespace subzeta
