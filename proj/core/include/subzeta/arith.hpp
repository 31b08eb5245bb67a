#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <gmpxx.h>

namespace subzeta {

using u64 = std::uint64_t;

// Residue moduli are kept below 2^62 so that sums of two residues never wrap.
inline constexpr u64 kMaxModulus = u64{1} << 62;

inline u64 mulmod(u64 a, u64 b, u64 m) {
  __extension__ using u128 = unsigned __int128;
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}
inline u64 addmod(u64 a, u64 b, u64 m) {
  u64 s = a + b;
  return s >= m ? s - m : s;
}
inline u64 submod(u64 a, u64 b, u64 m) { return a >= b ? a - b : a + m - b; }

// p^k, throwing ModulusTooLarge when the result would reach kMaxModulus.
u64 checked_pow(u64 p, unsigned k);

u64 powmod(u64 base, u64 exp, u64 m);

bool is_prime(u64 n);

// Exponent of p in v; v must be nonzero.
unsigned valuation_u64(u64 v, u64 p);

// Exponent of p in v; v must be nonzero.
unsigned valuation_mpz(const mpz_class& v, u64 p);

// Nonnegative remainder of a modulo m (m > 0).
u64 mod_u64(const mpz_class& a, u64 m);

mpz_class pow_mpz(u64 p, unsigned k);

mpq_class pow_mpq(u64 p, int k);

// Exact e^{2 pi i num/den}, with the fraction reduced before the trig call.
std::complex<double> unit_root(u64 num, u64 den);

}  // namespace subzeta
