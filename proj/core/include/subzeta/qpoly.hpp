#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "subzeta/arith.hpp"
#include "subzeta/system.hpp"

namespace subzeta {

// Dense univariate polynomial over Q in the variable t. Trailing zeros trimmed.
class QPoly {
 public:
  QPoly() = default;
  explicit QPoly(std::vector<mpq_class> coeffs);
  static QPoly constant(const mpq_class& c) { return QPoly({c}); }
  // c * t^k
  static QPoly monomial(const mpq_class& c, unsigned k);

  bool is_zero() const { return c_.empty(); }
  // -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<mpq_class>& coeffs() const { return c_; }
  mpq_class coeff(unsigned k) const { return k < c_.size() ? c_[k] : mpq_class(0); }
  const mpq_class& leading() const { return c_.back(); }

  QPoly& operator+=(const QPoly& o);
  QPoly& operator-=(const QPoly& o);
  friend QPoly operator+(QPoly a, const QPoly& b) { return a += b; }
  friend QPoly operator-(QPoly a, const QPoly& b) { return a -= b; }
  friend QPoly operator*(const QPoly& a, const QPoly& b);
  friend QPoly operator*(const mpq_class& c, const QPoly& a);
  friend bool operator==(const QPoly& a, const QPoly& b) { return a.c_ == b.c_; }

  QPoly pow(unsigned k) const;
  QPoly derivative() const;
  // Quotient and remainder; divisor nonzero.
  std::pair<QPoly, QPoly> divmod(const QPoly& d) const;
  QPoly monic() const;

  mpq_class eval(const mpq_class& t) const;
  std::complex<double> eval(std::complex<double> t) const;

  std::string to_string(const std::string& var = "t") const;

 private:
  void trim();
  std::vector<mpq_class> c_;
};

// Monic gcd; gcd(0, 0) = 0.
QPoly gcd(QPoly a, QPoly b);

// num/den with gcd(num, den) = 1 and den(0) = 1.
class RationalFn {
 public:
  RationalFn() : num_(), den_(QPoly::constant(1)) {}
  RationalFn(QPoly num, QPoly den);

  const QPoly& numerator() const { return num_; }
  const QPoly& denominator() const { return den_; }

  // Taylor coefficients at t = 0, indices 0..count-1.
  std::vector<mpq_class> series(unsigned count) const;
  mpq_class eval(const mpq_class& t) const;
  std::complex<double> eval(std::complex<double> t) const;

  friend bool operator==(const RationalFn& a, const RationalFn& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

 private:
  QPoly num_;
  QPoly den_;
};

// Minimal linear recurrence (Berlekamp-Massey over Q) fitted on all but the
// last `validation_count` coefficients, then checked against every input.
RationalFn reconstruct_rational(const std::vector<mpq_class>& coeffs, unsigned validation_count = 2);

struct Root {
  std::complex<double> value;
  unsigned multiplicity = 1;
};

struct PoleData {
  std::vector<Root> roots;
  double rho = 0;
  unsigned m_rho = 0;
  // Set when the denominator factors as a product of (1 - p^{-v} t^N).
  std::optional<mpq_class> rho_exact;
  std::vector<ResolutionDatum> matched_factors;
};

PoleData pole_analysis(const RationalFn& f, u64 p);

// Pole data straight from numerical data: rho = min v/N, m_rho = #{i : v_i/N_i = rho}.
PoleData pole_data_from_resolution(const std::vector<ResolutionDatum>& data, u64 p);

struct CandidateCheck {
  bool pass = false;
  // Multiplicity used for each datum in the matching product (0 if unused).
  std::vector<unsigned> multiplicities;
  // Remainder of the full product modulo the denominator; zero on pass.
  QPoly residual;
};

// Does the denominator divide prod (1 - p^{-v_i} t^{N_i})^{mu_i} with mu_i <= cap?
CandidateCheck candidate_pole_check(const RationalFn& f, const std::vector<ResolutionDatum>& data,
                                    u64 p, unsigned cap = 4);

// 1 - p^{-v} t^N
QPoly candidate_factor(u64 p, const ResolutionDatum& d);

}  // namespace subzeta
