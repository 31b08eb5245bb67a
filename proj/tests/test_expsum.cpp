#include <gtest/gtest.h>

#include <cmath>

#include "fixtures.hpp"
#include "subzeta/error.hpp"
#include "subzeta/expsum.hpp"

using namespace subzeta;

namespace {

// E(u p^-m) for a good-reduction system from an exhaustive point scan.
std::complex<double> brute_expsum(const PolySystem& s, unsigned m, u64 u) {
  std::vector<Point> pts;
  brute_force_points(s, m, 30'000'000, &pts);
  const u64 mod = checked_pow(s.p(), m);
  std::complex<double> acc = 0;
  for (const Point& x : pts) {
    std::vector<mpz_class> xz(x.begin(), x.end());
    u64 v = mod_u64(s.target().eval(xz), mod);
    acc += std::polar(1.0, 2 * M_PI * static_cast<double>(mulmod(u, v, mod)) / mod);
  }
  return acc * std::pow(static_cast<double>(s.p()), -static_cast<double>(m * s.dim()));
}

SpsReport sps(const PolySystem& s, unsigned M, unsigned cap, unsigned m_hi, const GaussProvider& g = gauss_sum) {
  Atlas a = build_atlas(s);
  ZetaTables t = compute_zeta_tables(s, a, Support::unit_polydisc(), M, cap);
  std::optional<RationalFn> Z;
  try {
    Z = trivial_zeta(t.trivial);
  } catch (const Error&) {
  }
  return sps_verify(s, a, Support::unit_polydisc(), t, Z, 1, m_hi, g);
}

}  // namespace

TEST(ExpSum, DirectSumsMatchBruteForce) {
  for (const PolySystem& s : {fixtures::x2_line(), fixtures::x3_line(), fixtures::parabola(5), fixtures::three_var()}) {
    for (unsigned m = 1; m <= 3; ++m) {
      for (u64 u : unit_classes(s.p(), m, m)) {
        EXPECT_LT(std::abs(exponential_sum(s, m, u) - brute_expsum(s, m, u)), 1e-12) << "m=" << m << " u=" << u;
      }
    }
  }
}

TEST(ExpSum, HistogramAgreesWithSystemOverload) {
  PolySystem s = fixtures::three_var();
  Atlas a = build_atlas(s);
  ValueHistogram h = value_histogram(s, a, Support::unit_polydisc(), 3);
  EXPECT_EQ(h.classes, 9u * 81);
  for (u64 u : unit_classes(3, 3, 3)) EXPECT_LT(std::abs(exponential_sum(h, u) - exponential_sum(s, 3, u)), 1e-12);
}

TEST(ExpSum, ExactDecayOnParabolicLine) {
  PolySystem s = fixtures::x2_line();
  for (unsigned m = 1; m <= 6; ++m) {
    for (u64 u : unit_classes(3, m, m)) EXPECT_NEAR(std::abs(exponential_sum(s, m, u)), std::pow(3.0, -static_cast<double>(m) / 2), 1e-9);
  }
  DecayReport d = decay_report(s, build_atlas(s), Support::unit_polydisc(), 1, 6, 0.5, 1);
  ASSERT_EQ(d.rows.size(), 6u);
  for (const DecayRow& r : d.rows) EXPECT_NEAR(r.normalized, 1.0, 1e-9);
  EXPECT_TRUE(d.bounded);
}

TEST(ExpSum, StationaryPhaseLines) {
  SpsReport x2 = sps(fixtures::x2_line(), 8, 2, 5);
  EXPECT_TRUE(x2.pass);
  EXPECT_LT(x2.max_discrepancy, 1e-9);
  SpsReport x3 = sps(fixtures::x3_line(), 8, 3, 5);
  EXPECT_TRUE(x3.pass);
  SpsReport par = sps(fixtures::parabola(5), 5, 2, 4);
  EXPECT_TRUE(par.pass);
}

TEST(ExpSum, StationaryPhaseNeedsEnoughConductors) {
  // x^3 has nonzero conductor-2 tables; cap 1 drops them.
  SpsReport r = sps(fixtures::x3_line(), 8, 1, 4);
  EXPECT_FALSE(r.pass);
}

TEST(ExpSum, StationaryPhaseBadReductionAboveChartLevel) {
  SpsReport r = sps(fixtures::bad_line(), 6, 2, 5);
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.skipped, (std::vector<unsigned>{1, 2}));
}

TEST(ExpSum, PerturbedGaussNormalizationIsDetected) {
  GaussProvider off = [](const MultChar& chi) { return gauss_sum(chi) * 1.01; };
  SpsReport r = sps(fixtures::x2_line(), 6, 2, 4, off);
  EXPECT_FALSE(r.pass);
  EXPECT_GT(r.max_discrepancy, 1e-4);
}

TEST(ExpSum, MissingTwistedTableIsAnError) {
  PolySystem s = fixtures::x2_line();
  ZetaTables t = compute_zeta_tables(s, build_atlas(s), Support::unit_polydisc(), 3, 2);
  RationalFn Z(QPoly({mpq_class(2, 3)}), QPoly({1, 0, mpq_class(-1, 3)}));
  try {
    form1_eval(t, Z, 9, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::MissingTable);
  }
}

TEST(ExpSum, EvenPrimeDirectSumsOnly) {
  PolySystem s = fixtures::x2_line(2);
  EXPECT_LT(std::abs(exponential_sum(s, 3, 1) - brute_expsum(s, 3, 1)), 1e-12);
  ZetaTables t = compute_zeta_tables(s, build_atlas(s), Support::unit_polydisc(), 6, 0);
  EXPECT_THROW(form1_eval(t, std::nullopt, 2, 1), Error);
}

TEST(ExpSum, OscillatoryIntegralOnCosets) {
  PolySystem s = fixtures::parabola();
  Support sup = Support::cosets(3, 2, 2, {{1, 1}, {0, 3}});
  Atlas a = build_atlas(s);
  for (unsigned m = 1; m <= 4; ++m) {
    for (u64 u : unit_classes(3, m, 2)) {
      std::complex<double> direct = exponential_sum(s, m, u, sup);
      std::complex<double> via = oscillatory_integral(s, a, sup, ScaledUnit(3, m, u));
      EXPECT_LT(std::abs(direct - via), 1e-12);
    }
  }
}

TEST(ExpSum, BadReductionDecomposition) {
  PolySystem s = fixtures::bad_line();
  Atlas a = build_atlas(s);
  for (unsigned m = a.L + 1; m <= a.L + 3; ++m) {
    for (u64 u : unit_classes(3, m, 2)) {
      DecompositionCheck d = decomposition_identity_check(s, a, m, u);
      EXPECT_LT(d.diff, 1e-9) << "m=" << m << " u=" << u;
    }
  }
}

TEST(ExpSum, UnitClasses) {
  EXPECT_EQ(unit_classes(3, 2, 2), (std::vector<u64>{1, 2, 4, 5, 7, 8}));
  EXPECT_EQ(unit_classes(3, 4, 1), (std::vector<u64>{1, 2}));
  EXPECT_EQ(unit_classes(5, 1, 0), (std::vector<u64>{1, 2, 3, 4}));
}
