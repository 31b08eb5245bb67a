#include "subzeta/smoothing.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "subzeta/error.hpp"

namespace subzeta {

EchelonResult dvr_echelon(IntMatrix a, u64 p) {
  EchelonResult out;
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  for (const auto& r : a) {
    if (r.size() != cols) throw Error(ErrorKind::DimensionMismatch, "ragged matrix");
  }
  out.column_perm.resize(cols);
  for (std::size_t j = 0; j < cols; ++j) out.column_perm[j] = static_cast<unsigned>(j);
  for (std::size_t k = 0; k < rows; ++k) {
    std::size_t bi = rows, bj = cols;
    unsigned best = ~0u;
    for (std::size_t i = k; i < rows; ++i) {
      for (std::size_t j = k; j < cols; ++j) {
        if (a[i][j] == 0) continue;
        unsigned v = valuation_mpz(a[i][j], p);
        if (v < best) {
          best = v;
          bi = i;
          bj = j;
        }
      }
    }
    if (bi == rows) {
      throw Error(ErrorKind::RankDeficient,
                  "matrix has rank " + std::to_string(k) + " < " + std::to_string(rows));
    }
    if (bi != k) {
      std::swap(a[bi], a[k]);
      out.row_ops.push_back({RowOp::Kind::Swap, static_cast<unsigned>(k), static_cast<unsigned>(bi), 1, 0});
    }
    if (bj != k) {
      for (auto& row : a) std::swap(row[bj], row[k]);
      std::swap(out.column_perm[bj], out.column_perm[k]);
    }
    const mpz_class pv = pow_mpz(p, best);
    mpz_class u1;
    mpz_divexact(u1.get_mpz_t(), a[k][k].get_mpz_t(), pv.get_mpz_t());
    for (std::size_t i = k + 1; i < rows; ++i) {
      if (a[i][k] == 0) continue;
      unsigned w = valuation_mpz(a[i][k], p);
      mpz_class u2;
      const mpz_class pw = pow_mpz(p, w);
      mpz_divexact(u2.get_mpz_t(), a[i][k].get_mpz_t(), pw.get_mpz_t());
      mpz_class mult = u2 * pow_mpz(p, w - best);
      for (std::size_t j = 0; j < cols; ++j) a[i][j] = u1 * a[i][j] - mult * a[k][j];
      out.row_ops.push_back({RowOp::Kind::Combine, static_cast<unsigned>(i), static_cast<unsigned>(k), u1, mult});
    }
    out.pivot_vals.push_back(best);
  }
  out.b = std::move(a);
  return out;
}

std::vector<MPoly> apply_row_ops(std::vector<MPoly> polys, const std::vector<RowOp>& ops) {
  for (const auto& op : ops) {
    if (op.kind == RowOp::Kind::Swap) {
      std::swap(polys[op.target], polys[op.source]);
    } else {
      polys[op.target] = op.a * polys[op.target] - op.b * polys[op.source];
    }
  }
  return polys;
}

namespace {

void fill_target(SmoothingCertificate& cert, const MPoly& target, u64 p) {
  const mpz_class scale = cert.L == 0 ? mpz_class(1) : pow_mpz(p, cert.L);
  cert.target_local = target.substitute_affine(cert.center, scale);
  cert.target_at_center = target.eval(cert.center);
  MPoly diff = cert.target_local - MPoly::constant(target.nvars(), cert.target_at_center);
  cert.target_exponent = diff.content_valuation(p);
  cert.rescaled_target = diff.divexact(pow_mpz(p, cert.target_exponent));
}

std::string point_text(std::span<const mpz_class> x) {
  std::string s = "(";
  for (std::size_t i = 0; i < x.size(); ++i) s += (i ? "," : "") + x[i].get_str();
  return s + ")";
}

}  // namespace

SmoothingCertificate neron_rescale(const PolySystem& system, std::span<const mpz_class> x0,
                                   std::optional<unsigned> L, u64 budget) {
  if (x0.size() != system.n()) throw Error(ErrorKind::DimensionMismatch, "center length != n");
  const u64 p = system.p();
  SmoothingCertificate cert;
  cert.center.assign(x0.begin(), x0.end());
  EchelonResult ech = dvr_echelon(jacobian_exact(system.constraints(), x0), p);
  cert.pivot_vals = ech.pivot_vals;
  const unsigned L_lemma = ech.pivot_vals.back() + 1;
  if (L && *L < L_lemma) {
    throw Error(ErrorKind::InvalidArgument, "requested L=" + std::to_string(*L) + " is below the local constant " +
                                                std::to_string(L_lemma));
  }
  cert.L = L.value_or(L_lemma);
  for (const auto& f : system.constraints()) {
    mpz_class v = f.eval(x0);
    if (v != 0 && valuation_mpz(v, p) < 2 * cert.L + 2) {
      throw Error(ErrorKind::NotOnVariety, "constraints do not vanish mod p^" + std::to_string(2 * cert.L + 2) +
                                               " at " + point_text(x0));
    }
  }
  cert.combined_constraints = apply_row_ops(system.constraints(), ech.row_ops);
  for (const auto& f : cert.combined_constraints) {
    ShiftRescale sr = shift_rescale(f, x0, cert.L, p);
    cert.exponents.push_back(sr.e);
    cert.rescaled_constraints.push_back(std::move(sr.rescaled));
  }
  ReductionVerdict verdict = good_reduction_test(cert.rescaled_constraints, system.n(), p, budget);
  cert.good = verdict.good;
  cert.points_mod_p = verdict.points_mod_p;
  if (!verdict.good) {
    std::string msg = "rescaled system at " + point_text(x0) + " with L=" + std::to_string(cert.L) + " is bad at (";
    for (std::size_t i = 0; i < verdict.witness->size(); ++i) msg += (i ? "," : "") + std::to_string((*verdict.witness)[i]);
    msg += "); rescaled constraints:";
    for (const auto& g : cert.rescaled_constraints) msg += " [" + g.to_string("y") + "]";
    throw Error(ErrorKind::GoodReductionFailed, msg);
  }
  fill_target(cert, system.target(), p);
  return cert;
}

Point Atlas::center_mod(std::size_t i) const {
  Point out;
  const u64 mod = checked_pow(p, L);
  for (const auto& c : charts[i].center) out.push_back(mod_u64(c, mod));
  return out;
}

Atlas global_decompose(const PolySystem& system, u64 budget, unsigned max_iterations) {
  const u64 p = system.p();
  const unsigned n = system.n();
  Atlas atlas;
  atlas.p = p;
  atlas.n = n;
  atlas.dim = system.dim();
  unsigned k = 1;
  for (unsigned iter = 1; iter <= max_iterations; ++iter) {
    const unsigned top = 2 * k + 2;
    LiftWalker walker(system.constraints(), n, p, top);
    std::vector<Point> reps;
    u64 visited = 0;
    for (const Point& root : walker.roots()) {
      walker.walk(root, [&](unsigned level, std::span<const u64> x) {
        if (++visited > budget) throw Error(ErrorKind::BudgetExceeded, "decomposition walk exceeds budget");
        if (level < k) return true;
        Point node(x.begin(), x.end());
        std::optional<Point> rep;
        if (level == top) rep = node;
        else {
          walker.walk_below(node, level, [&](unsigned kk, std::span<const u64> y) {
            if (rep) return false;
            if (++visited > budget) throw Error(ErrorKind::BudgetExceeded, "decomposition walk exceeds budget");
            if (kk == top) rep = Point(y.begin(), y.end());
            return !rep;
          });
        }
        if (rep) reps.push_back(std::move(*rep));
        return false;
      });
    }
    std::vector<std::vector<mpz_class>> centers;
    unsigned max_L = 0;
    for (const auto& r : reps) {
      std::vector<mpz_class> c;
      for (u64 v : r) c.emplace_back(std::to_string(v));
      EchelonResult ech = dvr_echelon(jacobian_exact(system.constraints(), c), p);
      max_L = std::max(max_L, ech.pivot_vals.back() + 1);
      centers.push_back(std::move(c));
    }
    atlas.iterations = iter;
    if (max_L > k) {
      k = max_L;
      continue;
    }
    atlas.L = k;
    for (const auto& c : centers) {
      SmoothingCertificate cert = neron_rescale(system, c, k, budget);
      if (cert.points_mod_p == 0) {
        ++atlas.empty_classes;
        continue;
      }
      atlas.charts.push_back(std::move(cert));
    }
    return atlas;
  }
  throw Error(ErrorKind::RankDeficient, "chart level did not settle after " + std::to_string(max_iterations) +
                                            " refinements");
}

Atlas build_atlas(const PolySystem& system, u64 budget) {
  ReductionVerdict verdict = good_reduction_test(system, budget);
  if (!verdict.good) return global_decompose(system, budget);
  Atlas atlas;
  atlas.p = system.p();
  atlas.n = system.n();
  atlas.dim = system.dim();
  atlas.L = 0;
  atlas.good_reduction = true;
  SmoothingCertificate cert;
  cert.center.assign(system.n(), 0);
  cert.L = 0;
  cert.combined_constraints = system.constraints();
  cert.exponents.assign(system.constraints().size(), 0);
  cert.rescaled_constraints = system.constraints();
  cert.good = true;
  cert.points_mod_p = verdict.points_mod_p;
  fill_target(cert, system.target(), system.p());
  atlas.charts.push_back(std::move(cert));
  return atlas;
}

LiftWalker chart_walker(const SmoothingCertificate& chart, unsigned n, u64 p, unsigned max_level) {
  return LiftWalker(chart.rescaled_constraints, n, p, max_level);
}

void chart_to_ambient(const SmoothingCertificate& chart, u64 p, std::span<const u64> y, unsigned j,
                      std::span<u64> x) {
  const u64 mod = checked_pow(p, chart.L + j);
  const u64 scale = checked_pow(p, chart.L);
  for (std::size_t i = 0; i < y.size(); ++i) {
    x[i] = addmod(mod_u64(chart.center[i], mod), mulmod(scale, y[i] % mod, mod), mod);
  }
}

SpotCheck certificate_spot_check(const SmoothingCertificate& cert, u64 p, unsigned samples, u64 seed,
                                 unsigned precision) {
  SpotCheck out;
  out.samples = samples;
  out.seed = seed;
  std::mt19937_64 rng(seed);
  const u64 ymod = checked_pow(p, precision);
  std::uniform_int_distribution<u64> dist(0, ymod - 1);
  const std::size_t n = cert.center.size();
  const mpz_class scale = pow_mpz(p, cert.L);
  for (unsigned s = 0; s < samples; ++s) {
    std::vector<mpz_class> y(n), x(n);
    for (std::size_t i = 0; i < n; ++i) {
      y[i] = mpz_class(std::to_string(dist(rng)));
      x[i] = cert.center[i] + scale * y[i];
    }
    for (std::size_t i = 0; i < cert.combined_constraints.size(); ++i) {
      const mpz_class mod = pow_mpz(p, precision + cert.exponents[i]);
      mpz_class lhs = cert.combined_constraints[i].eval(x);
      mpz_class rhs = pow_mpz(p, cert.exponents[i]) * cert.rescaled_constraints[i].eval(y);
      mpz_class diff = lhs - rhs;
      if (mpz_divisible_p(diff.get_mpz_t(), mod.get_mpz_t()) == 0) out.pass = false;
    }
  }
  return out;
}

}  // namespace subzeta
