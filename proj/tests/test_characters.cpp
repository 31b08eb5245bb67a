#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "subzeta/arith.hpp"
#include "subzeta/characters.hpp"
#include "subzeta/error.hpp"

using namespace subzeta;

namespace {

// chi(u) via the definition chi(g^k) = exp(2 pi i index k / phi), with the
// discrete log found by brute force.
std::complex<double> naive_chi(const MultChar& chi, u64 u) {
  const CharacterGroup& G = *chi.group;
  u = u % G.modulus();
  u64 x = 1;
  for (u64 k = 0; k < G.order(); ++k) {
    if (x == u) return std::polar(1.0, 2 * M_PI * static_cast<double>((chi.index * k) % G.order()) / G.order());
    x = mulmod(x, G.generator(), G.modulus());
  }
  ADD_FAILURE() << "non-unit " << u;
  return 0;
}

// Gauss sum straight from the normalization, summed at level c = conductor.
std::complex<double> naive_gauss(const MultChar& chi) {
  const u64 p = chi.group->prime();
  const unsigned c = chi.conductor;
  const u64 mod = checked_pow(p, c);
  std::complex<double> s = 0;
  for (u64 v = 1; v < mod; ++v) {
    if (v % p == 0) continue;
    s += naive_chi(chi, v) * std::polar(1.0, 2 * M_PI * static_cast<double>(v) / mod);
  }
  return s / static_cast<double>(p - 1) / std::pow(static_cast<double>(p), c - 1.0);
}

}  // namespace

TEST(Characters, EnumerationAndConductors) {
  auto chars = enumerate_characters(5, 1);
  ASSERT_EQ(chars.size(), 4u);
  std::vector<unsigned> cond;
  for (const auto& c : chars) cond.push_back(c.conductor);
  EXPECT_EQ(cond, (std::vector<unsigned>{0, 1, 1, 1}));

  auto c9 = enumerate_characters(3, 2);
  ASSERT_EQ(c9.size(), 6u);
  unsigned primitive = 0;
  for (const auto& c : c9) primitive += c.conductor == 2;
  EXPECT_EQ(primitive, 4u);  // phi(9) - phi(3)
  EXPECT_EQ(CharacterGroup(7, 1).generator(), 3u);
  EXPECT_EQ(CharacterGroup(3, 2).generator(), 2u);
}

TEST(Characters, RejectsEvenPrime) {
  try {
    CharacterGroup(2, 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::EvenPrimeUnsupported);
  }
}

TEST(Characters, ValuesMatchBruteForceLogs) {
  for (u64 p : {3u, 5u, 7u}) {
    for (unsigned c : {1u, 2u}) {
      for (const MultChar& chi : enumerate_characters(p, c)) {
        for (u64 u = 1; u < chi.group->modulus(); ++u) {
          if (u % p == 0) continue;
          EXPECT_LT(std::abs(chi_value(chi, u) - naive_chi(chi, u)), 1e-12);
        }
      }
    }
  }
}

TEST(Characters, MultiplicativityAndInverse) {
  std::mt19937_64 rng(31);
  auto chars = enumerate_characters(7, 2);
  for (int i = 0; i < 500; ++i) {
    const MultChar& chi = chars[rng() % chars.size()];
    u64 a = rng() % 49, b = rng() % 49;
    if (a % 7 == 0 || b % 7 == 0) continue;
    EXPECT_LT(std::abs(chi_value(chi, a * b) - chi_value(chi, a) * chi_value(chi, b)), 1e-12);
    EXPECT_LT(std::abs(chi_value(chi.inverse(), a) * chi_value(chi, a) - 1.0), 1e-12);
  }
}

TEST(Characters, Orthogonality) {
  for (const MultChar& chi : enumerate_characters(5, 2)) {
    std::complex<double> s = 0;
    for (u64 u = 1; u < 25; ++u) {
      if (u % 5) s += chi_value(chi, u);
    }
    EXPECT_LT(std::abs(s - (chi.trivial() ? 20.0 : 0.0)), 1e-10);
  }
}

TEST(GaussSums, MatchDirectSums) {
  for (u64 p : {3u, 5u, 7u}) {
    for (unsigned c : {1u, 2u}) {
      for (const MultChar& chi : enumerate_characters(p, c)) {
        if (chi.trivial()) continue;
        EXPECT_LT(std::abs(gauss_sum(chi) - naive_gauss(chi)), 1e-12);
      }
    }
  }
}

TEST(GaussSums, AbsoluteValue) {
  for (u64 p : {3u, 5u, 7u}) {
    for (unsigned c : {1u, 2u}) {
      for (const MultChar& chi : enumerate_characters(p, c)) {
        if (chi.conductor != c) continue;
        double expected = std::pow(static_cast<double>(p), 1.0 - c / 2.0) / (p - 1.0);
        EXPECT_NEAR(std::abs(gauss_sum(chi)), expected, 1e-9);
      }
    }
  }
}

TEST(GaussSums, QuadraticCharacterModThree) {
  auto chars = enumerate_characters(3, 1);
  ASSERT_EQ(chars.size(), 2u);
  EXPECT_LT(std::abs(gauss_sum(chars[1]) - std::complex<double>(0, std::sqrt(3.0) / 2)), 1e-12);
}

TEST(GaussSums, TrivialCharacterRejected) {
  auto chars = enumerate_characters(5, 1);
  EXPECT_THROW(gauss_sum(chars[0]), Error);
}
