#pragma once

#include <complex>
#include <memory>
#include <optional>
#include <vector>

#include "subzeta/arith.hpp"

namespace subzeta {

// Discrete-log table of the cyclic group (Z/p^c)^x, p odd.
class CharacterGroup {
 public:
  CharacterGroup(u64 p, unsigned c);

  u64 prime() const { return p_; }
  unsigned level() const { return c_; }
  u64 modulus() const { return modulus_; }
  // phi(p^c)
  u64 order() const { return order_; }
  // Smallest positive primitive root modulo p^c.
  u64 generator() const { return g_; }
  // Exponent k with g^k = u; throws NonUnitArgument.
  u64 dlog(u64 u) const;

 private:
  u64 p_;
  unsigned c_;
  u64 modulus_;
  u64 order_;
  u64 g_ = 0;
  std::vector<std::uint32_t> dlog_;
};

// chi(g) = exp(2 pi i index / phi(p^c)).
struct MultChar {
  std::shared_ptr<const CharacterGroup> group;
  u64 index = 0;
  unsigned conductor = 0;

  bool trivial() const { return index == 0; }
  MultChar inverse() const;
};

std::vector<MultChar> enumerate_characters(u64 p, unsigned c);

// u may be any integer prime to p; it is reduced modulo p^c.
std::complex<double> chi_value(const MultChar& chi, u64 u);

// (p-1)^{-1} p^{1-c} sum over (Z/p^c)^x of chi(v) Psi(v/p^c), c the conductor.
std::complex<double> gauss_sum(const MultChar& chi);

// omega(z) = chi(ac z) |z|^s with t = p^{-s}; t absent means a formal variable.
struct QuasiChar {
  MultChar chi;
  std::optional<std::complex<double>> t;
};

}  // namespace subzeta
