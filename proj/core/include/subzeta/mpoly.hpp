#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "subzeta/arith.hpp"
#include "subzeta/padic.hpp"

namespace subzeta {

using Exponent = std::vector<unsigned>;

// Sparse multivariate polynomial with integer coefficients. Zero
// coefficients are never stored.
class MPoly {
 public:
  using TermMap = std::map<Exponent, mpz_class>;

  explicit MPoly(unsigned nvars = 0) : n_(nvars) {}

  static MPoly constant(unsigned nvars, const mpz_class& c);
  // The monomial x_{index+1}; `index` is 0-based.
  static MPoly variable(unsigned nvars, unsigned index);

  unsigned nvars() const { return n_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  unsigned total_degree() const;
  unsigned degree_in(unsigned index) const;
  mpz_class constant_term() const;

  void add_term(const Exponent& e, const mpz_class& c);

  MPoly& operator+=(const MPoly& o);
  MPoly& operator-=(const MPoly& o);
  MPoly& operator*=(const MPoly& o);
  MPoly operator-() const;
  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  friend MPoly operator*(const MPoly& a, const MPoly& b);
  friend MPoly operator*(const mpz_class& c, const MPoly& a);
  friend bool operator==(const MPoly& a, const MPoly& b) {
    return a.n_ == b.n_ && a.terms_ == b.terms_;
  }

  MPoly pow(unsigned k) const;
  MPoly derivative(unsigned index) const;
  // Exact division of every coefficient by c (which must divide them all).
  MPoly divexact(const mpz_class& c) const;

  mpz_class eval(std::span<const mpz_class> point) const;

  // f(shift + scale * y) expanded in y.
  MPoly substitute_affine(std::span<const mpz_class> shift, const mpz_class& scale) const;

  // Minimum p-adic valuation over the coefficients; f must be nonzero.
  unsigned content_valuation(u64 p) const;

  // Text in the parser grammar, e.g. "3*x1 - 9*x2". Terms are ordered by
  // descending total degree, then descending exponent vector.
  std::string to_string(std::string_view var = "x") const;

 private:
  unsigned n_;
  TermMap terms_;
};

// Grammar: integer literals, variables x1..xn, + - * ^ and parentheses;
// exponents are nonnegative integer literals; no implicit multiplication.
MPoly parse_polynomial(std::string_view text, unsigned nvars);

// f(point) modulo p^precision.
PAdicApprox evaluate_mod(const MPoly& f, std::span<const mpz_class> point, u64 p,
                         unsigned precision);

struct ShiftRescale {
  unsigned e = 0;
  MPoly rescaled;
};

// Writes f(x0 + p^L y) = p^e f_L(y) with f_L having a coefficient prime to p.
ShiftRescale shift_rescale(const MPoly& f, std::span<const mpz_class> x0, unsigned L, u64 p);

// Evaluation modulo a fixed 62-bit modulus; the hot path of all enumerations.
class CompiledPoly {
 public:
  static constexpr unsigned kMaxVars = 8;
  static constexpr unsigned kMaxDegree = 63;

  CompiledPoly() = default;
  CompiledPoly(const MPoly& f, u64 modulus);

  u64 modulus() const { return modulus_; }
  unsigned nvars() const { return n_; }

  // Point coordinates may be any 64-bit representatives.
  u64 eval(std::span<const u64> point) const;

 private:
  struct Term {
    u64 coeff;
    std::uint8_t exps[kMaxVars];
  };
  unsigned n_ = 0;
  u64 modulus_ = 1;
  std::vector<Term> terms_;
  std::uint8_t max_deg_[kMaxVars] = {};
};

}  // namespace subzeta
