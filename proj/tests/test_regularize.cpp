#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "subzeta/expsum.hpp"
#include "subzeta/regularize.hpp"

using namespace subzeta;

namespace {

MultChar triv() { return trivial_character(3, 0); }

double diff(const DeltaApprox& a, const mpq_class& v) { return std::abs(mpq_class(*a.exact - v).get_d()); }

}  // namespace

TEST(Regularize, ParabolicLineFiniteLevel) {
  DeltaApprox a = delta_r_integral(fixtures::x2_line(), Support::unit_polydisc(), 1, triv(), 2, 5);
  ASSERT_TRUE(a.exact);
  EXPECT_LE(diff(a, mpq_class(9, 13)), a.tail_bound.get_d());
}

TEST(Regularize, ParabolaFiniteLevel) {
  DeltaApprox a = delta_r_integral(fixtures::parabola(), Support::unit_polydisc(), 1, triv(), 3, 6);
  ASSERT_TRUE(a.exact);
  EXPECT_LE(diff(a, mpq_class(3, 4)), a.tail_bound.get_d());
}

TEST(Regularize, LevelZeroIsThePlainIntegral) {
  // int |x2^2| over Z_3^2 = sum_k (2/3) 3^{-k} 3^{-2k}
  DeltaApprox a = delta_r_integral(fixtures::x2_line(), Support::unit_polydisc(), 1, triv(), 0, 8);
  EXPECT_LE(diff(a, mpq_class(9, 13)), a.tail_bound.get_d());
  PolySystem s = PolySystem::parse(3, 2, {"x1 - x2"}, "x1");
  DeltaApprox b = delta_r_integral(s, Support::unit_polydisc(), 1, triv(), 0, 8);
  // int |x1| over Z_3^2 = (2/3) / (1 - 1/9)
  EXPECT_LE(diff(b, mpq_class(3, 4)), b.tail_bound.get_d());
}

TEST(Regularize, TailBoundShrinksWithDepth) {
  mpq_class prev = 1;
  for (unsigned M = 4; M <= 8; ++M) {
    DeltaApprox a = delta_r_integral(fixtures::x2_line(), Support::unit_polydisc(), 1, triv(), 2, M);
    EXPECT_LT(a.tail_bound, prev);
    prev = a.tail_bound;
  }
}

TEST(Regularize, DeltaHasUnitMass) {
  // With |f_l|^0 replaced by s = 1 on a target that is a unit everywhere on
  // the support, I_r is the delta mass of the support.
  PolySystem s = PolySystem::parse(3, 2, {"x1 - x2^2"}, "1 + 3*x2");
  for (unsigned r = 0; r <= 4; ++r) {
    DeltaApprox a = delta_r_integral(s, Support::unit_polydisc(), 1, triv(), r, r + 2);
    EXPECT_EQ(*a.exact, 1) << "r=" << r;
  }
}

TEST(Regularize, LimitCheckPasses) {
  DeltaLimitReport x2 = delta_limit_check(fixtures::x2_line(), Support::unit_polydisc(), 1, triv(), 0, 5, 9,
                                          9.0 / 13, mpq_class(9, 13));
  EXPECT_TRUE(x2.pass);
  ASSERT_TRUE(x2.r0);
  EXPECT_LE(*x2.r0, 4u);
  for (const DeltaApprox& a : x2.rows) EXPECT_LE(a.tail_bound, mpq_class(1, 1000000));

  DeltaLimitReport par = delta_limit_check(fixtures::parabola(), Support::unit_polydisc(), 1, triv(), 0, 5, 9, 0.75,
                                           mpq_class(3, 4));
  EXPECT_TRUE(par.pass);
  ASSERT_TRUE(par.r0);
  EXPECT_LE(*par.r0, 4u);
}

TEST(Regularize, PerturbedScaleFails) {
  DeltaWeight wrong = [](u64 p, unsigned r, unsigned l) { return pow_mpq(p, static_cast<int>(r * l)); };
  DeltaLimitReport rep = delta_limit_check(fixtures::x2_line(), Support::unit_polydisc(), 1, triv(), 0, 5, 9,
                                           9.0 / 13, mpq_class(9, 13), wrong);
  EXPECT_FALSE(rep.pass);
}

TEST(Regularize, BadReductionLimitIsTheSurfaceMeasure) {
  PolySystem s = fixtures::bad_line();
  mpq_class factor = gelfand_leray_factor(build_atlas(s), s.l());
  EXPECT_EQ(factor, 3);
  mpq_class surface = factor * mpq_class(9, 13);
  DeltaLimitReport rep = delta_limit_check(s, Support::unit_polydisc(), 1, triv(), 0, 4, 9, surface.get_d(), surface);
  EXPECT_TRUE(rep.pass);
  ASSERT_TRUE(rep.r0);
  EXPECT_EQ(*rep.r0, 1u);
}

TEST(Regularize, TwistedCharacter) {
  // On x2 = 0 the integrand chi(ac x2^2)|x2^2| with chi quadratic mod 3 is
  // |x2|^2, since squares are residues.
  PolySystem s = fixtures::x2_line();
  auto chars = enumerate_characters(3, 1);
  DeltaApprox a = delta_r_integral(s, Support::unit_polydisc(), 1, chars[1], 2, 8);
  EXPECT_NEAR(a.value.real(), 9.0 / 13, a.tail_bound.get_d() + 1e-12);
  EXPECT_NEAR(a.value.imag(), 0, 1e-12);
}

TEST(Regularize, OscillatorySumMatchesExpSum) {
  for (const PolySystem& s : {fixtures::x2_line(), fixtures::parabola(), fixtures::x3_line()}) {
    Atlas a = build_atlas(s);
    for (unsigned m = 1; m <= 4; ++m) {
      for (u64 u : unit_classes(3, m, 2)) {
        ScaledUnit z(3, m, u);
        std::complex<double> reg = regularized_oscillatory_sum(s, Support::unit_polydisc(), m + 1, z);
        EXPECT_LT(std::abs(reg - oscillatory_integral(s, a, Support::unit_polydisc(), z)), 1e-9);
      }
    }
  }
}
