#include <gtest/gtest.h>

#include <random>
#include <set>

#include "fixtures.hpp"
#include "subzeta/error.hpp"
#include "subzeta/smoothing.hpp"
#include "subzeta/variety.hpp"

using namespace subzeta;

namespace {

IntMatrix random_matrix(std::mt19937_64& rng, unsigned rows, unsigned cols) {
  IntMatrix a(rows, std::vector<mpz_class>(cols));
  const long choices[] = {0, 1, 2, 3, 6, 9, 18, 27, -3, -1, 4, 81};
  for (auto& row : a) {
    for (auto& x : row) x = choices[rng() % 12];
  }
  return a;
}

unsigned rank_over_q(IntMatrix a) {
  unsigned rank = 0;
  const unsigned rows = a.size(), cols = a[0].size();
  for (unsigned c = 0; c < cols && rank < rows; ++c) {
    unsigned piv = rank;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[rank]);
    for (unsigned r = rank + 1; r < rows; ++r) {
      mpz_class f = a[r][c], g = a[rank][c];
      for (unsigned k = 0; k < cols; ++k) a[r][k] = a[r][k] * g - a[rank][k] * f;
    }
    ++rank;
  }
  return rank;
}

}  // namespace

TEST(Smoothing, EchelonIsUpperTriangularWithMinimalPivots) {
  std::mt19937_64 rng(51);
  for (int i = 0; i < 200; ++i) {
    IntMatrix a = random_matrix(rng, 2, 3);
    if (rank_over_q(a) < 2) {
      EXPECT_THROW(dvr_echelon(a, 3), Error);
      continue;
    }
    EchelonResult e = dvr_echelon(a, 3);
    ASSERT_EQ(e.pivot_vals.size(), 2u);
    EXPECT_EQ(e.b[1][0], 0);
    EXPECT_NE(e.b[0][0], 0);
    EXPECT_NE(e.b[1][1], 0);
    EXPECT_EQ(valuation_mpz(e.b[0][0], 3), e.pivot_vals[0]);
    EXPECT_EQ(valuation_mpz(e.b[1][1], 3), e.pivot_vals[1]);
    // The first pivot has the minimal valuation over the whole matrix.
    unsigned vmin = 1000;
    for (const auto& row : a) {
      for (const auto& x : row) {
        if (x != 0) vmin = std::min(vmin, valuation_mpz(x, 3));
      }
    }
    EXPECT_EQ(e.pivot_vals[0], vmin);
    std::vector<unsigned> perm = e.column_perm;
    std::sort(perm.begin(), perm.end());
    EXPECT_EQ(perm, (std::vector<unsigned>{0, 1, 2}));
  }
}

TEST(Smoothing, RowOpsReplayOnPolynomials) {
  PolySystem s = PolySystem::parse(3, 3, {"3*x1 + x2 - 9*x3", "x1 + 2*x2"}, "x3");
  std::vector<mpz_class> x0{0, 0, 0};
  auto jac = jacobian_exact(s.constraints(), x0);
  EchelonResult e = dvr_echelon(jac, 3);
  auto combined = apply_row_ops(s.constraints(), e.row_ops);
  auto jac2 = jacobian_exact(combined, x0);
  for (unsigned i = 0; i < jac2.size(); ++i) {
    for (unsigned j = 0; j < jac2[i].size(); ++j) EXPECT_EQ(jac2[i][e.column_perm[j]], e.b[i][j]);
  }
}

TEST(Smoothing, NeronRescaleAtOrigin) {
  PolySystem s = fixtures::bad_line();
  std::vector<mpz_class> x0{0, 0};
  SmoothingCertificate c = neron_rescale(s, x0);
  EXPECT_EQ(c.L, 2u);
  ASSERT_EQ(c.exponents.size(), 1u);
  EXPECT_EQ(c.exponents[0], 3u);
  EXPECT_EQ(c.rescaled_constraints[0].to_string(), "x1 - 3*x2");
  EXPECT_TRUE(c.good);
  EXPECT_EQ(c.points_mod_p, 3u);
}

TEST(Smoothing, NeronRescaleRejectsPointsOffTheVariety) {
  PolySystem s = fixtures::bad_line();
  std::vector<mpz_class> x0{1, 0};
  try {
    neron_rescale(s, x0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotOnVariety);
  }
}

TEST(Smoothing, GoodReductionGivesIdentityChart) {
  Atlas a = build_atlas(fixtures::parabola(5));
  EXPECT_TRUE(a.good_reduction);
  EXPECT_EQ(a.L, 0u);
  ASSERT_EQ(a.charts.size(), 1u);
  EXPECT_EQ(a.charts[0].L, 0u);
}

TEST(Smoothing, GlobalDecompositionOfBadLine) {
  PolySystem s = fixtures::bad_line();
  Atlas a = global_decompose(s);
  EXPECT_FALSE(a.good_reduction);
  EXPECT_EQ(a.L, 2u);
  EXPECT_EQ(a.charts.size(), 9u);
  std::set<Point> centers;
  for (std::size_t i = 0; i < a.charts.size(); ++i) {
    EXPECT_TRUE(a.charts[i].good);
    EXPECT_EQ(a.charts[i].L, a.L);
    centers.insert(a.center_mod(i));
    for (const MPoly& f : s.constraints()) {
      mpz_class v = f.eval(a.charts[i].center);
      if (v != 0) {
        EXPECT_GE(valuation_mpz(v, 3), 2 * a.L + 2);
      }
    }
  }
  EXPECT_EQ(centers.size(), a.charts.size());
}

TEST(Smoothing, ReductionImageCountMatchesOracle) {
  PolySystem s = fixtures::bad_line();
  for (unsigned m = 1; m <= 4; ++m) {
    ImageOracle img = image_oracle(s, m, 2);
    EXPECT_TRUE(img.stabilized);
    EXPECT_EQ(reduction_image_count(s, m), mpz_class(std::to_string(img.points.size()))) << "m=" << m;
  }
}

TEST(Smoothing, ReductionImageCountOnAnotherBadSystem) {
  // V: 3 x1 = x2^3, parametrized by x2 = 3t, x1 = 9t^3.
  PolySystem s = PolySystem::parse(3, 2, {"3*x1 - x2^3"}, "x2");
  ASSERT_FALSE(good_reduction_test(s).good);
  for (unsigned m = 1; m <= 4; ++m) {
    EXPECT_EQ(reduction_image_count(s, m), mpz_class(std::to_string(image_oracle(s, m, 3).points.size())));
  }
}

TEST(Smoothing, CertificateSpotChecks) {
  Atlas a = build_atlas(fixtures::bad_line());
  for (std::size_t i = 0; i < a.charts.size(); ++i) {
    SpotCheck sc = certificate_spot_check(a.charts[i], 3, 25, 1000 + i);
    EXPECT_TRUE(sc.pass);
    EXPECT_EQ(sc.samples, 25u);
    EXPECT_EQ(sc.seed, 1000 + i);
  }
  // A corrupted certificate is caught.
  SmoothingCertificate broken = a.charts[0];
  broken.rescaled_constraints[0] += MPoly::variable(2, 1);
  EXPECT_FALSE(certificate_spot_check(broken, 3, 25, 7).pass);
}

TEST(Smoothing, ChartToAmbient) {
  Atlas a = build_atlas(fixtures::bad_line());
  const SmoothingCertificate& c = a.charts[0];
  Point y{1, 2}, x(2);
  chart_to_ambient(c, 3, y, 1, x);
  Point center = a.center_mod(0);
  EXPECT_EQ(x[0], (center[0] + 9 * 1) % 27);
  EXPECT_EQ(x[1], (center[1] + 9 * 2) % 27);
}
