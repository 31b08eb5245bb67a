#include "subzeta/padic.hpp"

#include <algorithm>

#include "subzeta/error.hpp"

namespace subzeta {

namespace {

mpz_class reduce(const mpz_class& v, const mpz_class& modulus) {
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), modulus.get_mpz_t());
  return r;
}

void require_same_prime(const PAdicApprox& a, const PAdicApprox& b) {
  if (a.prime() != b.prime()) {
    throw Error(ErrorKind::InvalidArgument, "p-adic operands over different primes");
  }
}

}  // namespace

PAdicApprox::PAdicApprox(u64 p, const mpz_class& value, unsigned precision)
    : p_(p), precision_(precision) {
  if (p < 2) throw Error(ErrorKind::InvalidArgument, "prime must be >= 2");
  if (precision == 0) throw Error(ErrorKind::InvalidArgument, "precision must be positive");
  residue_ = reduce(value, pow_mpz(p, precision));
}

Valuation PAdicApprox::valuation() const {
  if (residue_ == 0) return Valuation::at_least(precision_);
  return Valuation::exact(valuation_mpz(residue_, p_));
}

PAdicApprox PAdicApprox::angular_component() const {
  Valuation v = valuation();
  if (!v.is_exact()) {
    throw Error(ErrorKind::UndefinedForZero, "angular component of an element that is 0 mod p^" +
                                                 std::to_string(precision_));
  }
  mpz_class q = residue_ / pow_mpz(p_, v.value());
  return PAdicApprox(p_, q, precision_ - v.value());
}

PAdicApprox PAdicApprox::operator-() const { return PAdicApprox(p_, -residue_, precision_); }

PAdicApprox operator+(const PAdicApprox& a, const PAdicApprox& b) {
  require_same_prime(a, b);
  return PAdicApprox(a.p_, a.residue_ + b.residue_, std::min(a.precision_, b.precision_));
}

PAdicApprox operator-(const PAdicApprox& a, const PAdicApprox& b) {
  require_same_prime(a, b);
  return PAdicApprox(a.p_, a.residue_ - b.residue_, std::min(a.precision_, b.precision_));
}

PAdicApprox operator*(const PAdicApprox& a, const PAdicApprox& b) {
  require_same_prime(a, b);
  return PAdicApprox(a.p_, a.residue_ * b.residue_, std::min(a.precision_, b.precision_));
}

PAdicApprox PAdicApprox::truncate(unsigned precision) const {
  if (precision > precision_) {
    throw Error(ErrorKind::InvalidArgument, "cannot raise precision by truncation");
  }
  return PAdicApprox(p_, residue_, precision);
}

ScaledUnit::ScaledUnit(u64 p, unsigned m, const mpz_class& u) : p_(p), m_(m) {
  if (p < 2) throw Error(ErrorKind::InvalidArgument, "prime must be >= 2");
  if (m == 0) throw Error(ErrorKind::InvalidArgument, "ScaledUnit needs m >= 1");
  if (mpz_divisible_ui_p(u.get_mpz_t(), p)) {
    throw Error(ErrorKind::NonUnitArgument, "ScaledUnit numerator must be prime to p");
  }
  u_ = reduce(u, pow_mpz(p, m));
}

mpq_class fractional_part(const ScaledUnit& z) {
  mpq_class q(z.unit(), pow_mpz(z.prime(), z.exponent()));
  q.canonicalize();
  return q;
}

mpq_class fractional_part(const PAdicApprox&) { return 0; }

std::complex<double> character_of_fraction(const mpq_class& q) {
  mpz_class num = q.get_num();
  const mpz_class& den = q.get_den();
  if (!den.fits_ulong_p()) {
    throw Error(ErrorKind::ModulusTooLarge, "denominator of fractional part exceeds 64 bits");
  }
  u64 d = den.get_ui();
  return unit_root(mod_u64(num, d), d);
}

std::complex<double> additive_character(const ScaledUnit& z) {
  return character_of_fraction(fractional_part(z));
}

std::complex<double> additive_character(const PAdicApprox&) { return {1.0, 0.0}; }

}  // namespace subzeta
