#include <gtest/gtest.h>

#include <random>

#include "subzeta/error.hpp"
#include "subzeta/mpoly.hpp"

using namespace subzeta;

namespace {

// Random polynomial with small coefficients, degree <= deg in n variables.
MPoly random_poly(std::mt19937_64& rng, unsigned n, unsigned deg, unsigned terms) {
  MPoly f(n);
  for (unsigned t = 0; t < terms; ++t) {
    Exponent e(n, 0);
    unsigned budget = rng() % (deg + 1);
    for (unsigned k = 0; k < budget; ++k) ++e[rng() % n];
    f.add_term(e, static_cast<long>(rng() % 41) - 20);
  }
  return f;
}

std::vector<mpz_class> random_point(std::mt19937_64& rng, unsigned n, long range) {
  std::vector<mpz_class> x;
  for (unsigned i = 0; i < n; ++i) x.push_back(static_cast<long>(rng() % (2 * range + 1)) - range);
  return x;
}

ErrorKind parse_error_kind(const std::string& text, unsigned n, std::size_t* pos = nullptr) {
  try {
    parse_polynomial(text, n);
  } catch (const ParseError& e) {
    if (pos) *pos = e.position();
    return e.kind();
  }
  ADD_FAILURE() << "no error for " << text;
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST(MPoly, ParsesAndPrints) {
  MPoly f = parse_polynomial("3*x1 - 9*x2", 2);
  EXPECT_EQ(f.to_string(), "3*x1 - 9*x2");
  MPoly g = parse_polynomial("(x1 + x2)^2 - x1^2", 2);
  EXPECT_EQ(g.to_string(), "2*x1*x2 + x2^2");
  EXPECT_EQ(parse_polynomial("-(x2^3) + 0*x1 + 7", 2).to_string(), "-x2^3 + 7");
  EXPECT_EQ(parse_polynomial("x1 - x2*x3", 3).to_string("y"), "-y2*y3 + y1");
}

TEST(MPoly, ParseErrorsCarryPositions) {
  std::size_t pos = 0;
  EXPECT_EQ(parse_error_kind("x1^", 2, &pos), ErrorKind::SyntaxError);
  EXPECT_EQ(pos, 3u);
  EXPECT_EQ(parse_error_kind("x3 + 1", 2, &pos), ErrorKind::VariableOutOfRange);
  EXPECT_EQ(pos, 0u);
  EXPECT_EQ(parse_error_kind("x1^-2", 2), ErrorKind::NegativeExponent);
  EXPECT_EQ(parse_error_kind("2x1", 2), ErrorKind::SyntaxError);
  EXPECT_EQ(parse_error_kind("(x1 + 1", 2), ErrorKind::SyntaxError);
  EXPECT_EQ(parse_error_kind("", 2), ErrorKind::SyntaxError);
}

TEST(MPoly, PrintParseRoundTrip) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 300; ++i) {
    unsigned n = 1 + rng() % 4;
    MPoly f = random_poly(rng, n, 5, 1 + rng() % 6);
    if (f.is_zero()) continue;
    EXPECT_EQ(parse_polynomial(f.to_string(), n), f) << f.to_string();
  }
}

TEST(MPoly, RingLawsUnderEvaluation) {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 200; ++i) {
    unsigned n = 1 + rng() % 3;
    MPoly f = random_poly(rng, n, 3, 4), g = random_poly(rng, n, 3, 4);
    auto x = random_point(rng, n, 9);
    EXPECT_EQ((f * g).eval(x), f.eval(x) * g.eval(x));
    EXPECT_EQ((f + g).eval(x), f.eval(x) + g.eval(x));
    EXPECT_EQ(f.pow(3).eval(x), f.eval(x) * f.eval(x) * f.eval(x));
  }
}

TEST(MPoly, SubstituteAffineMatchesDirectEvaluation) {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 200; ++i) {
    unsigned n = 1 + rng() % 3;
    MPoly f = random_poly(rng, n, 4, 5);
    auto shift = random_point(rng, n, 20);
    mpz_class scale = static_cast<long>(rng() % 27) + 1;
    auto y = random_point(rng, n, 5);
    std::vector<mpz_class> x(n);
    for (unsigned k = 0; k < n; ++k) x[k] = shift[k] + scale * y[k];
    EXPECT_EQ(f.substitute_affine(shift, scale).eval(y), f.eval(x));
  }
}

TEST(MPoly, Derivatives) {
  MPoly f = parse_polynomial("x1^3*x2 - 4*x2^2 + x1", 2);
  EXPECT_EQ(f.derivative(0).to_string(), "3*x1^2*x2 + 1");
  EXPECT_EQ(f.derivative(1).to_string(), "x1^3 - 8*x2");
  EXPECT_EQ(f.total_degree(), 4u);
  EXPECT_EQ(f.degree_in(1), 2u);
}

TEST(MPoly, CompiledPolyMatchesExactEvaluation) {
  std::mt19937_64 rng(14);
  for (int i = 0; i < 200; ++i) {
    unsigned n = 1 + rng() % 4;
    MPoly f = random_poly(rng, n, 6, 5);
    u64 mod = checked_pow(3, 1 + rng() % 20);
    CompiledPoly c(f, mod);
    std::vector<u64> xs(n);
    std::vector<mpz_class> xz(n);
    for (unsigned k = 0; k < n; ++k) {
      xs[k] = rng() % mod;
      xz[k] = mpz_class(std::to_string(xs[k]));
    }
    EXPECT_EQ(c.eval(xs), mod_u64(f.eval(xz), mod));
  }
}

TEST(MPoly, EvaluateModAndContent) {
  MPoly f = parse_polynomial("3*x1 - 9*x2", 2);
  EXPECT_EQ(f.content_valuation(3), 1u);
  std::vector<mpz_class> x{1, 0};
  PAdicApprox v = evaluate_mod(f, x, 3, 4);
  EXPECT_EQ(v.residue(), 3);
  EXPECT_EQ(v.valuation(), Valuation::exact(1));
}

TEST(MPoly, ShiftRescale) {
  MPoly f = parse_polynomial("3*x1 - 9*x2", 2);
  std::vector<mpz_class> x0{0, 0};
  ShiftRescale r = shift_rescale(f, x0, 2, 3);
  EXPECT_EQ(r.e, 3u);
  EXPECT_EQ(r.rescaled.to_string(), "x1 - 3*x2");
}
