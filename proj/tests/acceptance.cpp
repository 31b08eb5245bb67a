// Acceptance harness: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "cli/commands.hpp"
#include "fixtures.hpp"
#include "subzeta/error.hpp"
#include "subzeta/expsum.hpp"
#include "subzeta/poincare.hpp"
#include "subzeta/regularize.hpp"
#include "subzeta/variety.hpp"
#include "subzeta/zeta.hpp"

using namespace subzeta;

namespace {

constexpr double kSpsTol = 1e-9;
constexpr double kDecayTol = 1e-9;
constexpr double kGaussTol = 1e-9;
constexpr double kQuadraticGaussTol = 1e-12;
constexpr double kDecompositionTol = 1e-9;
constexpr double kDeltaTailMax = 1e-6;
constexpr unsigned kDeltaR0Max = 4;
constexpr double kSpsSeconds = 300;

struct Verdict {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& why) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + why;
    }
  }
};

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

ZetaTables tables(const PolySystem& s, const Atlas& a, unsigned M, unsigned cap) {
  return compute_zeta_tables(s, a, Support::unit_polydisc(), M, cap);
}

Verdict hensel_count_law() {
  Verdict v;
  std::vector<PolySystem> systems = {fixtures::x2_line(3), fixtures::parabola(5),
                                     PolySystem::parse(3, 2, {"x1^2 + x2^2 - 1"}, "x1"), fixtures::three_var(),
                                     PolySystem::parse(2, 2, {"x1 - x2^3"}, "x2")};
  for (const PolySystem& s : systems) {
    ReductionVerdict r = good_reduction_test(s);
    v.require(r.good, "expected good reduction");
    for (unsigned m = 1; m <= 5; ++m) {
      mpz_class law = mpz_class(std::to_string(r.points_mod_p)) * pow_mpz(s.p(), (m - 1) * s.dim());
      mpz_class h = hensel_enumerate(s, m).count;
      mpz_class b = brute_force_points(s, m, 30'000'000).count;
      v.require(h == law && b == law, "m=" + std::to_string(m) + ": hensel " + h.get_str() + " brute " + b.get_str() +
                                          " law " + law.get_str());
    }
  }
  v.detail = v.pass ? std::to_string(systems.size()) + " systems, m=1..5 exact" : v.detail;
  return v;
}

Verdict poincare_reconstruction() {
  Verdict v;
  PolySystem s = fixtures::x2_line();
  Atlas a = build_atlas(s);
  CountSeries fit = poincare_series(s, a, 8, 2);
  RationalFn expected(QPoly({1, mpq_class(1, 3)}), QPoly({1, 0, mpq_class(-1, 3)}));
  v.require(fit.reconstructed && *fit.reconstructed == expected, "P(t) differs from (1+t/3)/(1-t^2/3)");
  CountSeries longer = count_series(s, a, 10);
  auto predicted = fit.reconstructed->series(11);
  v.require(predicted[9] == longer.scaled[9] && predicted[10] == longer.scaled[10], "held-out terms mispredicted");
  PoleData d = pole_analysis(*fit.reconstructed, 3);
  v.require(d.rho_exact && *d.rho_exact == mpq_class(1, 2) && d.m_rho == 1,
            "rho=" + num(d.rho) + " m_rho=" + std::to_string(d.m_rho));
  if (v.pass) v.detail = "P = (1 + t/3)/(1 - t^2/3), rho = 1/2, m_rho = 1";
  return v;
}

Verdict denef_identity() {
  Verdict v;
  std::vector<PolySystem> systems = {fixtures::x2_line(), fixtures::x3_line(), fixtures::parabola(),
                                     PolySystem::parse(3, 2, {"x1"}, "x2")};
  for (const PolySystem& s : systems) {
    Atlas a = build_atlas(s);
    RationalFn P = *poincare_series(s, a, 12).reconstructed;
    RationalFn Z = trivial_zeta(tables(s, a, 12, 0).trivial);
    IdentityCheck id = denef_identity_check(P, Z, 1);
    v.require(id.pass, "identity fails for target " + s.target().to_string());
  }
  if (v.pass) v.detail = std::to_string(systems.size()) + " instances, exact";
  return v;
}

Verdict stationary_phase() {
  Verdict v;
  auto t0 = std::chrono::steady_clock::now();
  struct Case {
    PolySystem s;
    unsigned M, cap;
  };
  std::vector<Case> cases = {{fixtures::x2_line(), 8, 2}, {fixtures::x3_line(), 8, 3}, {fixtures::three_var(), 5, 3}};
  double worst = 0;
  std::size_t sums = 0;
  for (const Case& c : cases) {
    Atlas a = build_atlas(c.s);
    ZetaTables t = tables(c.s, a, c.M, c.cap);
    std::optional<RationalFn> Z;
    try {
      Z = trivial_zeta(t.trivial);
    } catch (const Error&) {
    }
    SpsReport r = sps_verify(c.s, a, Support::unit_polydisc(), t, Z, 1, 5, gauss_sum, kSpsTol);
    worst = std::max(worst, r.max_discrepancy);
    sums += r.records.size();
    v.require(r.pass, "target " + c.s.target().to_string() + " discrepancy " + num(r.max_discrepancy));
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  v.require(secs < kSpsSeconds, "runtime " + num(secs) + " s");
  if (v.pass) v.detail = std::to_string(sums) + " sums, max |direct - formula| = " + num(worst) + ", " + num(secs) + " s";
  return v;
}

Verdict exact_decay() {
  Verdict v;
  PolySystem s = fixtures::x2_line();
  double worst = 0;
  for (unsigned m = 1; m <= 6; ++m) {
    for (u64 u : unit_classes(3, m, m)) {
      worst = std::max(worst, std::abs(std::abs(exponential_sum(s, m, u)) - std::pow(3.0, -static_cast<double>(m) / 2)));
    }
  }
  v.require(worst < kDecayTol, "max deviation " + num(worst));
  DecayReport d = decay_report(s, build_atlas(s), Support::unit_polydisc(), 1, 6, 0.5, 1);
  for (const DecayRow& r : d.rows) v.require(std::abs(r.normalized - 1.0) < kDecayTol, "normalized " + num(r.normalized));
  if (v.pass) v.detail = "|E| = 3^{-m/2} for m <= 6, deviation " + num(worst);
  return v;
}

Verdict gauss_sums() {
  Verdict v;
  unsigned checked = 0;
  for (u64 p : {3u, 5u, 7u}) {
    for (unsigned c : {1u, 2u}) {
      for (const MultChar& chi : enumerate_characters(p, c)) {
        if (chi.conductor != c) continue;
        double expected = std::pow(static_cast<double>(p), 1.0 - c / 2.0) / (p - 1.0);
        double got = std::abs(gauss_sum(chi));
        v.require(std::abs(got - expected) < kGaussTol, "p=" + std::to_string(p) + " c=" + std::to_string(c));
        ++checked;
      }
    }
  }
  auto chars = enumerate_characters(3, 1);
  double q = std::abs(gauss_sum(chars[1]) - std::complex<double>(0, std::sqrt(3.0) / 2));
  v.require(q < kQuadraticGaussTol, "quadratic mod 3 off by " + num(q));
  if (v.pass) v.detail = std::to_string(checked) + " primitive characters; quadratic mod 3 = i sqrt(3)/2";
  return v;
}

Verdict smoothing() {
  Verdict v;
  PolySystem s = fixtures::bad_line();
  std::vector<mpz_class> origin{0, 0};
  SmoothingCertificate c = neron_rescale(s, origin);
  v.require(c.L == 2, "L = " + std::to_string(c.L));
  v.require(c.exponents.size() == 1 && c.exponents[0] == 3, "e != 3");
  v.require(c.rescaled_constraints.size() == 1 && c.rescaled_constraints[0].to_string("y") == "y1 - 3*y2",
            "f_L = " + (c.rescaled_constraints.empty() ? std::string("?") : c.rescaled_constraints[0].to_string("y")));
  v.require(c.good, "certificate not Good");
  for (unsigned m = 1; m <= 4; ++m) {
    mpz_class via = reduction_image_count(s, m);
    ImageOracle img = image_oracle(s, m, 2);
    v.require(img.stabilized && via == img.points.size(),
              "m=" + std::to_string(m) + ": " + via.get_str() + " vs " + std::to_string(img.points.size()));
  }
  if (v.pass) v.detail = "L = 2, e = 3, f_L = y1 - 3*y2 (Good); image counts agree for m <= 4";
  return v;
}

Verdict delta_limit() {
  Verdict v;
  MultChar triv = trivial_character(3, 0);
  struct Case {
    PolySystem s;
    mpq_class surface;
  };
  std::vector<Case> cases = {{fixtures::x2_line(), mpq_class(9, 13)}, {fixtures::parabola(), mpq_class(3, 4)}};
  std::string r0s;
  for (const Case& c : cases) {
    // Surface side from the reconstructed zeta function at t = 3^{-1}.
    Atlas a = build_atlas(c.s);
    RationalFn Z = trivial_zeta(tables(c.s, a, 9, 0).trivial);
    mpq_class surface = Z.eval(mpq_class(1, 3));
    v.require(surface == c.surface, "surface value " + surface.get_str());
    DeltaLimitReport rep = delta_limit_check(c.s, Support::unit_polydisc(), 1, triv, 0, 5, 9, surface.get_d(), surface);
    v.require(rep.pass && rep.r0 && *rep.r0 <= kDeltaR0Max, "no r0 <= 4");
    for (const DeltaApprox& d : rep.rows) v.require(d.tail_bound.get_d() <= kDeltaTailMax, "tail " + num(d.tail_bound.get_d()));
    r0s += (r0s.empty() ? "" : ", ") + (rep.r0 ? std::to_string(*rep.r0) : std::string("-"));
  }
  if (v.pass) v.detail = "x^2 line and parabola pass, r0 = " + r0s;
  return v;
}

Verdict candidate_poles() {
  Verdict v;
  for (unsigned N : {2u, 3u, 4u}) {
    PolySystem s = fixtures::monomial_line(N);
    RationalFn Z = trivial_zeta(tables(s, build_atlas(s), 3 * N, 0).trivial);
    auto [q, r] = candidate_factor(3, {N, 1}).divmod(Z.denominator());
    v.require(r.is_zero(), "N=" + std::to_string(N) + ": denominator " + Z.denominator().to_string());
    v.require(candidate_pole_check(Z, {{N, 1}}, 3).pass, "candidate check N=" + std::to_string(N));
  }
  if (v.pass) v.detail = "denominators divide 1 - t^N/3 for N = 2, 3, 4";
  return v;
}

Verdict bad_reduction_decompositions() {
  Verdict v;
  PolySystem s = fixtures::bad_line();
  Atlas a = build_atlas(s);
  double worst = 0;
  for (unsigned m = a.L + 1; m <= a.L + 3; ++m) {
    for (u64 u : unit_classes(3, m, m)) worst = std::max(worst, decomposition_identity_check(s, a, m, u).diff);
  }
  v.require(worst < kDecompositionTol, "E decomposition off by " + num(worst));
  Lastform2Report lf = lastform2_check(s, a, 3);
  v.require(lf.consistent, "N_m decomposition inconsistent");
  for (const Lastform2Row& r : lf.rows) {
    v.require(r.m > a.L && r.m <= a.L + 3 && r.chart_sum == r.oracle, "N_" + std::to_string(r.m) + " mismatch");
  }
  if (v.pass) v.detail = "m in (2, 5]: E off by " + num(worst) + ", N_m exact";
  return v;
}

Verdict falsification() {
  Verdict v;
  PolySystem s = fixtures::x2_line();
  Atlas a = build_atlas(s);
  ZetaTables t = tables(s, a, 8, 2);
  RationalFn Z = trivial_zeta(t.trivial);

  GaussProvider off = [](const MultChar& chi) { return gauss_sum(chi) * 1.01; };
  SpsReport sps = sps_verify(s, a, Support::unit_polydisc(), t, Z, 1, 5, off, kSpsTol);
  v.require(!sps.pass && sps.max_discrepancy > 0, "perturbed Gauss normalization not detected");

  DeltaWeight wrong = [](u64 p, unsigned r, unsigned l) { return pow_mpq(p, static_cast<int>(r * l)); };
  DeltaLimitReport dl = delta_limit_check(s, Support::unit_polydisc(), 1, trivial_character(3, 0), 0, 5, 9, 9.0 / 13,
                                          mpq_class(9, 13), wrong);
  v.require(!dl.pass, "perturbed delta scale not detected");

  CoeffTable bent = t.trivial;
  for (unsigned k = 2; k < bent.exact.size(); k += 2) bent.exact[k] *= mpq_class(10, 9);
  RationalFn Zb = trivial_zeta(bent);
  RationalFn P = *poincare_series(s, a, 8).reconstructed;
  IdentityCheck id = denef_identity_check(P, Zb, 1);
  v.require(!id.pass && !id.residual.is_zero(), "perturbed Z coefficient not detected");

  // The command line maps a failing check to exit code 3.
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "subzeta_acceptance";
  fs::create_directories(dir);
  std::ofstream(dir / "wrong_poles.json")
      << R"({"schema": 1, "p": 3, "n": 2, "constraints": ["x1"], "target": "x2^2", "max_level": 8,)"
      << R"( "resolution_data": [[3, 1]]})";
  cli::RunOptions o;
  o.spec_path = (dir / "wrong_poles.json").string();
  o.out_dir = dir.string();
  std::ostringstream log, err;
  int code = cli::run("zeta", o, log, err);
  v.require(code == cli::kVerification, "zeta with wrong candidate data exited " + std::to_string(code));
  if (v.pass) {
    v.detail = "Gauss x1.01 -> " + num(sps.max_discrepancy) + "; delta p^{rl} -> fail; Z perturbed -> residual degree " +
               std::to_string(id.residual.degree()) + "; CLI exit 3";
  }
  return v;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Verdict()> run;
  };
  std::vector<Criterion> criteria = {
      {"hensel-count-law", hensel_count_law},
      {"poincare-reconstruction", poincare_reconstruction},
      {"denef-identity", denef_identity},
      {"stationary-phase", stationary_phase},
      {"exact-decay", exact_decay},
      {"gauss-sums", gauss_sums},
      {"smoothing", smoothing},
      {"delta-limit", delta_limit},
      {"candidate-poles", candidate_poles},
      {"bad-reduction-decompositions", bad_reduction_decompositions},
      {"falsification", falsification},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    auto t0 = std::chrono::steady_clock::now();
    try {
      v = criteria[i].run();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s %2zu %-30s %s (%.1f s)\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].name, v.detail.c_str(),
                secs);
    std::fflush(stdout);
    failures += !v.pass;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
