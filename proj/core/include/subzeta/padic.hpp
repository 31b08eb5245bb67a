#pragma once

#include <complex>

#include <gmpxx.h>

#include "subzeta/arith.hpp"

namespace subzeta {

// ord of a truncated p-adic integer: an exact exponent, or only a lower
// bound when the residue is zero at the available precision.
class Valuation {
 public:
  static Valuation exact(unsigned k) { return Valuation(k, true); }
  static Valuation at_least(unsigned m) { return Valuation(m, false); }

  bool is_exact() const { return exact_; }
  // The exponent when exact, otherwise the precision bound.
  unsigned value() const { return value_; }

  friend bool operator==(const Valuation&, const Valuation&) = default;

 private:
  Valuation(unsigned v, bool e) : value_(v), exact_(e) {}
  unsigned value_;
  bool exact_;
};

// An element of Z_p known modulo p^precision.
class PAdicApprox {
 public:
  // `value` may be any integer; it is reduced into [0, p^precision).
  PAdicApprox(u64 p, const mpz_class& value, unsigned precision);

  u64 prime() const { return p_; }
  const mpz_class& residue() const { return residue_; }
  unsigned precision() const { return precision_; }

  Valuation valuation() const;

  // residue / p^ord modulo p^(precision - ord); throws UndefinedForZero.
  PAdicApprox angular_component() const;

  PAdicApprox operator-() const;
  friend PAdicApprox operator+(const PAdicApprox& a, const PAdicApprox& b);
  friend PAdicApprox operator-(const PAdicApprox& a, const PAdicApprox& b);
  friend PAdicApprox operator*(const PAdicApprox& a, const PAdicApprox& b);
  friend bool operator==(const PAdicApprox& a, const PAdicApprox& b) {
    return a.p_ == b.p_ && a.precision_ == b.precision_ && a.residue_ == b.residue_;
  }

  // Same element viewed at a lower precision.
  PAdicApprox truncate(unsigned precision) const;

 private:
  u64 p_;
  mpz_class residue_;
  unsigned precision_;
};

// z = u * p^{-m} with m >= 1 and u a unit; only u mod p^m matters for {z}_p.
class ScaledUnit {
 public:
  ScaledUnit(u64 p, unsigned m, const mpz_class& u);

  u64 prime() const { return p_; }
  unsigned exponent() const { return m_; }
  const mpz_class& unit() const { return u_; }

 private:
  u64 p_;
  unsigned m_;
  mpz_class u_;
};

// {z}_p = (u mod p^m) / p^m.
mpq_class fractional_part(const ScaledUnit& z);
// Elements of Z_p have fractional part 0.
mpq_class fractional_part(const PAdicApprox& z);

// Psi(z) = exp(2 pi i {z}_p), the standard additive character of Q_p.
std::complex<double> additive_character(const ScaledUnit& z);
std::complex<double> additive_character(const PAdicApprox& z);

// exp(2 pi i q) for a rational q whose denominator fits in 64 bits.
std::complex<double> character_of_fraction(const mpq_class& q);

}  // namespace subzeta
