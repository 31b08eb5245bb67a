#include "subzeta/arith.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "subzeta/error.hpp"

namespace subzeta {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::VariableOutOfRange: return "VariableOutOfRange";
    case ErrorKind::NegativeExponent: return "NegativeExponent";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorKind::UndefinedForZero: return "UndefinedForZero";
    case ErrorKind::EvenPrimeUnsupported: return "EvenPrimeUnsupported";
    case ErrorKind::ModulusTooLarge: return "ModulusTooLarge";
    case ErrorKind::NonUnitArgument: return "NonUnitArgument";
    case ErrorKind::TrivialCharacter: return "TrivialCharacter";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::BadReductionInput: return "BadReductionInput";
    case ErrorKind::RankDeficient: return "RankDeficient";
    case ErrorKind::NotOnVariety: return "NotOnVariety";
    case ErrorKind::GoodReductionFailed: return "GoodReductionFailed";
    case ErrorKind::NotStabilized: return "NotStabilized";
    case ErrorKind::NoRecurrenceFound: return "NoRecurrenceFound";
    case ErrorKind::ValidationFailed: return "ValidationFailed";
    case ErrorKind::ConstantDenominator: return "ConstantDenominator";
    case ErrorKind::MissingTable: return "MissingTable";
  }
  return "Unknown";
}

u64 checked_pow(u64 p, unsigned k) {
  u64 r = 1;
  for (unsigned i = 0; i < k; ++i) {
    if (r >= kMaxModulus / p) {
      throw Error(ErrorKind::ModulusTooLarge,
                  std::to_string(p) + "^" + std::to_string(k) + " exceeds the 62-bit residue range");
    }
    r *= p;
  }
  return r;
}

u64 powmod(u64 base, u64 exp, u64 m) {
  u64 result = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

unsigned valuation_u64(u64 v, u64 p) {
  unsigned k = 0;
  while (v % p == 0) {
    v /= p;
    ++k;
  }
  return k;
}

unsigned valuation_mpz(const mpz_class& v, u64 p) {
  mpz_class w = v;
  unsigned k = 0;
  while (mpz_divisible_ui_p(w.get_mpz_t(), p)) {
    mpz_divexact_ui(w.get_mpz_t(), w.get_mpz_t(), p);
    ++k;
  }
  return k;
}

u64 mod_u64(const mpz_class& a, u64 m) {
  static_assert(sizeof(unsigned long) == sizeof(u64));
  return mpz_fdiv_ui(a.get_mpz_t(), m);
}

mpz_class pow_mpz(u64 p, unsigned k) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), p, k);
  return r;
}

mpq_class pow_mpq(u64 p, int k) {
  if (k >= 0) return mpq_class(pow_mpz(p, static_cast<unsigned>(k)));
  mpq_class r(mpz_class(1), pow_mpz(p, static_cast<unsigned>(-k)));
  return r;
}

std::complex<double> unit_root(u64 num, u64 den) {
  num %= den;
  if (num == 0) return {1.0, 0.0};
  u64 g = std::gcd(num, den);
  num /= g;
  den /= g;
  if (den == 2) return {-1.0, 0.0};
  if (den == 4) return num == 1 ? std::complex<double>{0.0, 1.0} : std::complex<double>{0.0, -1.0};
  long double angle = 2.0L * std::numbers::pi_v<long double> * static_cast<long double>(num) /
                      static_cast<long double>(den);
  return {static_cast<double>(std::cos(angle)), static_cast<double>(std::sin(angle))};
}

}  // namespace subzeta
