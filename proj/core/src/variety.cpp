#include "subzeta/variety.hpp"

#include <algorithm>
#include <set>

#include "subzeta/error.hpp"
#include "subzeta/smoothing.hpp"

namespace subzeta {

namespace {

void check_grid_budget(u64 p, unsigned level, unsigned n, u64 budget) {
  mpz_class size = pow_mpz(p, level * n);
  if (size > mpz_class(std::to_string(budget))) {
    throw Error(ErrorKind::BudgetExceeded, "scan of " + size.get_str() + " residues exceeds budget " +
                                               std::to_string(budget));
  }
}

std::vector<CompiledPoly> compile_all(const std::vector<MPoly>& polys, u64 modulus) {
  std::vector<CompiledPoly> out;
  for (const auto& f : polys) out.emplace_back(f, modulus);
  return out;
}

// Calls fn on every x in (Z/mod)^n whose constraint values all vanish mod `mod`.
template <class Fn>
void scan_solutions(const std::vector<CompiledPoly>& cs, unsigned n, u64 mod, Fn&& fn) {
  Point x(n, 0);
  for (;;) {
    bool ok = true;
    for (const auto& c : cs) {
      if (c.eval(x) != 0) {
        ok = false;
        break;
      }
    }
    if (ok) fn(std::span<const u64>(x));
    unsigned i = n;
    for (;;) {
      if (i == 0) return;
      --i;
      if (++x[i] < mod) break;
      x[i] = 0;
    }
  }
}

u64 det_mod(std::vector<std::vector<u64>> a, u64 m) {
  const std::size_t k = a.size();
  if (k == 1) return a[0][0] % m;
  if (k == 2) return submod(mulmod(a[0][0], a[1][1], m), mulmod(a[0][1], a[1][0], m), m);
  u64 total = 0;
  for (std::size_t j = 0; j < k; ++j) {
    if (a[0][j] % m == 0) continue;
    std::vector<std::vector<u64>> minor;
    for (std::size_t r = 1; r < k; ++r) {
      std::vector<u64> row;
      for (std::size_t c = 0; c < k; ++c) {
        if (c != j) row.push_back(a[r][c]);
      }
      minor.push_back(std::move(row));
    }
    u64 term = mulmod(a[0][j] % m, det_mod(std::move(minor), m), m);
    total = (j % 2 == 0) ? addmod(total, term, m) : submod(total, term, m);
  }
  return total;
}

}  // namespace

FiberCount brute_force_points(const PolySystem& system, unsigned m, u64 budget, std::vector<Point>* points) {
  if (m == 0) throw Error(ErrorKind::InvalidArgument, "level must be >= 1");
  check_grid_budget(system.p(), m, system.n(), budget);
  const u64 mod = checked_pow(system.p(), m);
  auto cs = compile_all(system.constraints(), mod);
  FiberCount out;
  out.m = m;
  u64 count = 0;
  scan_solutions(cs, system.n(), mod, [&](std::span<const u64> x) {
    ++count;
    if (points) points->emplace_back(x.begin(), x.end());
  });
  out.count = mpz_class(std::to_string(count));
  return out;
}

ReductionVerdict good_reduction_test(const std::vector<MPoly>& constraints, unsigned n, u64 p, u64 budget) {
  check_grid_budget(p, 1, n, budget);
  auto cs = compile_all(constraints, p);
  std::vector<std::vector<CompiledPoly>> grads;
  for (const auto& f : constraints) {
    std::vector<CompiledPoly> row;
    for (unsigned j = 0; j < n; ++j) row.emplace_back(f.derivative(j), p);
    grads.push_back(std::move(row));
  }
  ReductionVerdict out;
  out.good = true;
  scan_solutions(cs, n, p, [&](std::span<const u64> x) {
    ++out.points_mod_p;
    if (!out.good) return;
    std::vector<std::vector<u64>> jac;
    for (const auto& row : grads) {
      std::vector<u64> r;
      for (const auto& g : row) r.push_back(g.eval(x));
      jac.push_back(std::move(r));
    }
    if (rank_mod_p(std::move(jac), p) < constraints.size()) {
      out.good = false;
      out.witness = Point(x.begin(), x.end());
    }
  });
  return out;
}

ReductionVerdict good_reduction_test(const PolySystem& system, u64 budget) {
  return good_reduction_test(system.constraints(), system.n(), system.p(), budget);
}

FiberCount hensel_enumerate(const PolySystem& system, unsigned m, std::optional<unsigned> shell_ac_level,
                            unsigned workers, const std::function<void(std::span<const u64>)>& sink) {
  if (m == 0) throw Error(ErrorKind::InvalidArgument, "level must be >= 1");
  ReductionVerdict verdict = good_reduction_test(system);
  if (!verdict.good) throw Error(ErrorKind::BadReductionInput, "system does not have good reduction mod p");
  const u64 p = system.p();
  LiftWalker walker(system.constraints(), system.n(), p, m);
  const u64 mod = walker.modulus(m);
  CompiledPoly target(system.target(), mod);
  const unsigned c = shell_ac_level.value_or(0);
  const u64 pc = c <= m ? walker.modulus(std::min(c, m)) : 0;

  struct Partial {
    u64 count = 0;
    u64 deep = 0;
    std::map<ShellKey, u64> shells;
  };
  auto roots = walker.roots();
  std::vector<Partial> parts(roots.size());
  auto visit_root = [&](std::size_t r) {
    Partial& acc = parts[r];
    walker.walk(roots[r], [&](unsigned k, std::span<const u64> x) {
      if (k < m) return true;
      ++acc.count;
      if (sink) sink(x);
      if (shell_ac_level) {
        u64 v = target.eval(x);
        unsigned ord = v == 0 ? m : valuation_u64(v, p);
        if (v != 0 && ord + c <= m) {
          u64 ac = (v / walker.modulus(ord)) % pc;
          ++acc.shells[{ord, ac}];
        } else {
          ++acc.deep;
        }
      }
      return false;
    });
  };
  parallel_for(roots.size(), sink ? 1 : workers, visit_root);

  FiberCount out;
  out.m = m;
  u64 total = 0, deep = 0;
  std::map<ShellKey, mpz_class> shells;
  for (const auto& part : parts) {
    total += part.count;
    deep += part.deep;
    for (const auto& [key, v] : part.shells) shells[key] += mpz_class(std::to_string(v));
  }
  out.count = mpz_class(std::to_string(total));
  if (shell_ac_level) {
    out.by_shell = std::move(shells);
    out.deep = mpz_class(std::to_string(deep));
  }
  return out;
}

mpz_class reduction_image_count(const PolySystem& system, unsigned m, u64 budget, unsigned workers) {
  if (m == 0) throw Error(ErrorKind::InvalidArgument, "level must be >= 1");
  Atlas atlas = build_atlas(system, budget);
  if (atlas.good_reduction) return hensel_enumerate(system, m, std::nullopt, workers).count;
  if (m > atlas.L) {
    mpz_class total = 0;
    for (const auto& chart : atlas.charts) {
      total += mpz_class(std::to_string(chart.points_mod_p)) * pow_mpz(system.p(), (m - atlas.L - 1) * atlas.dim);
    }
    return total;
  }
  const u64 mod = checked_pow(system.p(), m);
  std::set<Point> seen;
  for (std::size_t i = 0; i < atlas.charts.size(); ++i) {
    Point c = atlas.center_mod(i);
    for (auto& v : c) v %= mod;
    seen.insert(std::move(c));
  }
  return mpz_class(static_cast<unsigned long>(seen.size()));
}

std::vector<Point> image_oracle_tree(const PolySystem& system, unsigned m, unsigned buffer, u64 budget) {
  if (m == 0) throw Error(ErrorKind::InvalidArgument, "level must be >= 1");
  const unsigned top = m + buffer;
  LiftWalker walker(system.constraints(), system.n(), system.p(), top);
  std::vector<Point> out;
  u64 visited = 0;
  auto charge = [&] {
    if (++visited > budget) throw Error(ErrorKind::BudgetExceeded, "image oracle walk exceeds budget");
  };
  for (const Point& root : walker.roots()) {
    walker.walk(root, [&](unsigned k, std::span<const u64> x) {
      charge();
      if (k < m) return true;
      Point node(x.begin(), x.end());
      bool found = k == top;
      if (!found) {
        walker.walk_below(node, k, [&](unsigned kk, std::span<const u64>) {
          if (found) return false;
          charge();
          if (kk == top) found = true;
          return !found;
        });
      }
      if (found) out.push_back(std::move(node));
      return false;
    });
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Point> image_oracle_brute(const PolySystem& system, unsigned m, unsigned buffer, u64 budget) {
  std::vector<Point> pts;
  brute_force_points(system, m + buffer, budget, &pts);
  const u64 mod = checked_pow(system.p(), m);
  for (auto& x : pts) {
    for (auto& v : x) v %= mod;
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

ImageOracle image_oracle(const PolySystem& system, unsigned m, unsigned buffer, u64 budget) {
  ImageOracle out;
  out.buffer = buffer;
  out.points = image_oracle_tree(system, m, buffer, budget);
  out.stabilized = image_oracle_tree(system, m, buffer + 1, budget) == out.points;
  return out;
}

std::vector<CriticalSuspect> critical_locus_probe(const PolySystem& system, unsigned M, u64 budget) {
  if (M == 0) throw Error(ErrorKind::InvalidArgument, "level must be >= 1");
  check_grid_budget(system.p(), M, system.n(), budget);
  const u64 p = system.p();
  const u64 mod = checked_pow(p, M);
  const unsigned n = system.n();
  const unsigned l = system.l();
  auto cs = compile_all(system.constraints(), mod);
  CompiledPoly target(system.target(), mod);
  std::vector<std::vector<CompiledPoly>> grads;
  for (unsigned i = 0; i < l; ++i) {
    const MPoly& f = i + 1 == l ? system.target() : system.constraints()[i];
    std::vector<CompiledPoly> row;
    for (unsigned j = 0; j < n; ++j) row.emplace_back(f.derivative(j), mod);
    grads.push_back(std::move(row));
  }
  // column subsets of size l
  std::vector<std::vector<unsigned>> subsets;
  std::vector<unsigned> cur;
  std::function<void(unsigned)> choose = [&](unsigned start) {
    if (cur.size() == l) {
      subsets.push_back(cur);
      return;
    }
    for (unsigned j = start; j < n; ++j) {
      cur.push_back(j);
      choose(j + 1);
      cur.pop_back();
    }
  };
  choose(0);

  std::vector<CriticalSuspect> out;
  scan_solutions(cs, n, mod, [&](std::span<const u64> x) {
    u64 v = target.eval(x);
    if (v == 0) return;
    std::vector<std::vector<u64>> jac(l, std::vector<u64>(n));
    for (unsigned i = 0; i < l; ++i) {
      for (unsigned j = 0; j < n; ++j) jac[i][j] = grads[i][j].eval(x);
    }
    for (const auto& cols : subsets) {
      std::vector<std::vector<u64>> sub(l, std::vector<u64>(l));
      for (unsigned i = 0; i < l; ++i) {
        for (unsigned j = 0; j < l; ++j) sub[i][j] = jac[i][cols[j]];
      }
      if (det_mod(std::move(sub), mod) != 0) return;
    }
    out.push_back({Point(x.begin(), x.end()), valuation_u64(v, p)});
  });
  return out;
}

void write_points_csv(std::ostream& out, unsigned level, const std::vector<Point>& points, bool header) {
  if (header && !points.empty()) {
    out << "level";
    for (std::size_t i = 0; i < points.front().size(); ++i) out << ",x" << (i + 1);
    out << '\n';
  }
  for (const auto& x : points) {
    out << level;
    for (u64 v : x) out << ',' << v;
    out << '\n';
  }
}

mpz_class determinant(std::vector<std::vector<mpz_class>> a) {
  const std::size_t k = a.size();
  if (k == 0) return 1;
  mpz_class prev = 1;
  int sign = 1;
  for (std::size_t i = 0; i + 1 < k; ++i) {
    if (a[i][i] == 0) {
      std::size_t r = i + 1;
      while (r < k && a[r][i] == 0) ++r;
      if (r == k) return 0;
      std::swap(a[i], a[r]);
      sign = -sign;
    }
    for (std::size_t r = i + 1; r < k; ++r) {
      for (std::size_t c = i + 1; c < k; ++c) {
        mpz_class v = a[r][c] * a[i][i] - a[r][i] * a[i][c];
        mpz_divexact(a[r][c].get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = a[i][i];
  }
  return sign * a[k - 1][k - 1];
}

}  // namespace subzeta
