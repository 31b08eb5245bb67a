#include "subzeta/regularize.hpp"

#include <cmath>
#include <map>

#include "subzeta/error.hpp"

namespace subzeta {

mpq_class default_delta_weight(u64 p, unsigned r, unsigned l) {
  return pow_mpq(p, static_cast<int>(r * (l - 1)));
}

mpq_class gelfand_leray_factor(const Atlas& atlas, unsigned l) {
  std::optional<int> common;
  for (const SmoothingCertificate& chart : atlas.charts) {
    int e = -static_cast<int>(chart.L * (l - 1));
    for (unsigned x : chart.exponents) e += static_cast<int>(x);
    if (common && *common != e) throw Error(ErrorKind::InvalidArgument, "chart measure factors differ");
    common = e;
  }
  return pow_mpq(atlas.p, common.value_or(0));
}

namespace {

// Ambient depth-first walk over x mod p^j, j = 0..top. visit(j, x) returns
// true to refine the class further.
template <class Visit>
void ambient_walk(unsigned n, u64 p, unsigned top, Visit&& visit) {
  std::vector<u64> pw(top + 1, 1);
  for (unsigned k = 1; k <= top; ++k) pw[k] = pw[k - 1] * p;
  Point x(n, 0);
  std::function<void(unsigned)> rec = [&](unsigned j) {
    if (!visit(j, std::span<const u64>(x)) || j == top) return;
    Point saved = x;
    std::vector<u64> t(n, 0);
    for (;;) {
      for (unsigned i = 0; i < n; ++i) x[i] = saved[i] + pw[j] * t[i];
      rec(j + 1);
      unsigned i = n;
      for (;;) {
        if (i == 0) {
          x = saved;
          return;
        }
        --i;
        if (++t[i] < p) break;
        t[i] = 0;
      }
    }
  };
  rec(0);
}

}  // namespace

DeltaApprox delta_r_integral(const PolySystem& system, const Support& support, unsigned s, const MultChar& chi,
                             unsigned r, unsigned M, const DeltaWeight& weight, u64 budget) {
  if (s == 0) throw Error(ErrorKind::InvalidArgument, "s must be a positive integer");
  if (M <= r) throw Error(ErrorKind::InvalidArgument, "scan depth must exceed r");
  const u64 p = system.p();
  const unsigned n = system.n();
  const unsigned l = system.l();
  const unsigned c = chi.trivial() ? 0 : chi.conductor;
  const u64 top_mod = checked_pow(p, M);
  const u64 pc = checked_pow(p, c);
  std::vector<CompiledPoly> cs;
  for (const auto& f : system.constraints()) cs.emplace_back(f, top_mod);
  CompiledPoly target(system.target(), top_mod);
  std::vector<u64> pw(M + 1, 1);
  for (unsigned k = 1; k <= M; ++k) pw[k] = pw[k - 1] * p;

  // Resolved classes: level j, shell k -> (count, character sum).
  std::map<std::pair<unsigned, unsigned>, std::pair<u64, std::complex<double>>> resolved;
  u64 deep = 0, partial = 0;
  DeltaApprox out;
  out.r = r;
  out.s = s;
  out.M = M;
  ambient_walk(n, p, M, [&](unsigned j, std::span<const u64> x) {
    if (++out.nodes > budget) throw Error(ErrorKind::BudgetExceeded, "delta_r walk exceeds budget");
    const u64 mod = pw[j];
    auto membership = support.classify(x, j);
    if (membership == Support::Membership::Outside) return false;
    // delta_r: 0, undetermined, or the full weight
    bool delta_known = j >= r;
    for (const auto& f : cs) {
      u64 v = f.eval(x) % mod;
      if (j >= r) {
        if (v % pw[r] != 0) return false;
      } else if (v != 0) {
        return false;
      }
    }
    const u64 v = target.eval(x) % mod;
    bool omega_known = false;
    unsigned k = 0;
    u64 u = 0;
    if (v != 0) {
      k = valuation_u64(v, p);
      if (k + c <= j) {
        omega_known = true;
        u = (v / pw[k]) % pc;
      }
    }
    if (delta_known && omega_known && membership == Support::Membership::Inside) {
      auto& slot = resolved[{j, k}];
      ++slot.first;
      if (!chi.trivial()) slot.second += chi_value(chi, u);
      return false;
    }
    if (j == M) {
      if (membership == Support::Membership::Inside) ++deep;
      else ++partial;
      return false;
    }
    return true;
  });

  const mpq_class w = weight(p, r, l);
  if (chi.trivial()) {
    mpq_class total = 0;
    for (const auto& [key, slot] : resolved) {
      const auto [j, k] = key;
      total += pow_mpq(p, -static_cast<int>(j * n + s * k)) * mpz_class(std::to_string(slot.first));
    }
    total *= w;
    out.exact = total;
    out.value = total.get_d();
  } else {
    std::complex<double> total = 0;
    for (const auto& [key, slot] : resolved) {
      const auto [j, k] = key;
      total += slot.second * pow_mpq(p, -static_cast<int>(j * n + s * k)).get_d();
    }
    out.value = total * w.get_d();
  }
  const int shell_floor = c == 0 ? static_cast<int>(M) : static_cast<int>(M - c + 1);
  out.tail_bound = w * pow_mpq(p, -static_cast<int>(M * n)) *
                   (pow_mpq(p, -static_cast<int>(s) * shell_floor) * mpz_class(std::to_string(deep)) +
                    mpz_class(std::to_string(partial)));
  return out;
}

DeltaLimitReport delta_limit_check(const PolySystem& system, const Support& support, unsigned s,
                                   const MultChar& chi, unsigned r_min, unsigned r_max, unsigned M,
                                   std::complex<double> surface, std::optional<mpq_class> surface_exact,
                                   const DeltaWeight& weight, u64 budget) {
  DeltaLimitReport rep;
  rep.surface = surface;
  rep.surface_exact = surface_exact;
  std::vector<bool> ok;
  for (unsigned r = r_min; r <= r_max; ++r) {
    DeltaApprox a = delta_r_integral(system, support, s, chi, r, M, weight, budget);
    double diff;
    bool within;
    if (a.exact && surface_exact) {
      mpq_class d = abs(*a.exact - *surface_exact);
      diff = d.get_d();
      within = d <= a.tail_bound;
    } else {
      diff = std::abs(a.value - surface);
      within = diff <= a.tail_bound.get_d() + 1e-12;
    }
    rep.abs_diff.push_back(diff);
    ok.push_back(within);
    rep.rows.push_back(std::move(a));
  }
  for (std::size_t i = ok.size(); i-- > 0;) {
    if (!ok[i]) break;
    rep.r0 = r_min + static_cast<unsigned>(i);
  }
  rep.pass = rep.r0.has_value();
  return rep;
}

std::complex<double> regularized_oscillatory_sum(const PolySystem& system, const Support& support, unsigned r,
                                                 const ScaledUnit& z, const DeltaWeight& weight, u64 budget) {
  const u64 p = system.p();
  const unsigned n = system.n();
  const unsigned m = z.exponent();
  const unsigned top = std::max({m, r, support.kind() == Support::Kind::Cosets ? support.level() : 0u});
  const u64 top_mod = checked_pow(p, top);
  const u64 pm = checked_pow(p, m);
  const u64 u = mod_u64(z.unit(), pm);
  std::vector<CompiledPoly> cs;
  for (const auto& f : system.constraints()) cs.emplace_back(f, top_mod);
  CompiledPoly target(system.target(), pm);
  const u64 pr = checked_pow(p, r);
  std::complex<long double> acc = 0;
  u64 nodes = 0;
  ambient_walk(n, p, top, [&](unsigned j, std::span<const u64> x) {
    if (++nodes > budget) throw Error(ErrorKind::BudgetExceeded, "regularized sum exceeds budget");
    const u64 mod = checked_pow(p, j);
    if (support.classify(x, j) == Support::Membership::Outside) return false;
    for (const auto& f : cs) {
      u64 v = f.eval(x) % mod;
      if (j >= r ? v % pr != 0 : v != 0) return false;
    }
    if (j < top) return true;
    auto e = unit_root(mulmod(u, target.eval(x), pm), pm);
    acc += std::complex<long double>(e.real(), e.imag());
    return false;
  });
  const long double scale = std::pow(static_cast<long double>(p), -static_cast<long double>(top * n)) *
                            weight(p, r, system.l()).get_d();
  return {static_cast<double>(acc.real() * scale), static_cast<double>(acc.imag() * scale)};
}

}  // namespace subzeta
