#include "subzeta/characters.hpp"

#include "subzeta/error.hpp"

namespace subzeta {

namespace {

std::vector<u64> prime_factors(u64 n) {
  std::vector<u64> out;
  for (u64 d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

constexpr u64 kMaxCharModulus = 1'000'000;

}  // namespace

CharacterGroup::CharacterGroup(u64 p, unsigned c) : p_(p), c_(c) {
  if (!is_prime(p)) throw Error(ErrorKind::InvalidArgument, "character group needs a prime");
  if (p == 2) throw Error(ErrorKind::EvenPrimeUnsupported, "(Z/2^c)^x is not cyclic");
  if (c == 0) throw Error(ErrorKind::InvalidArgument, "character level must be >= 1");
  modulus_ = 1;
  for (unsigned i = 0; i < c; ++i) {
    modulus_ *= p;
    if (modulus_ > kMaxCharModulus) throw Error(ErrorKind::ModulusTooLarge, "p^c exceeds 10^6");
  }
  order_ = modulus_ / p * (p - 1);
  auto factors = prime_factors(order_);
  for (u64 g = 2; g < modulus_; ++g) {
    if (g % p == 0) continue;
    bool primitive = true;
    for (u64 q : factors) {
      if (powmod(g, order_ / q, modulus_) == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      g_ = g;
      break;
    }
  }
  dlog_.assign(modulus_, UINT32_MAX);
  u64 x = 1;
  for (u64 k = 0; k < order_; ++k) {
    dlog_[x] = static_cast<std::uint32_t>(k);
    x = mulmod(x, g_, modulus_);
  }
}

u64 CharacterGroup::dlog(u64 u) const {
  u %= modulus_;
  if (dlog_[u] == UINT32_MAX) throw Error(ErrorKind::NonUnitArgument, std::to_string(u) + " is not a unit");
  return dlog_[u];
}

MultChar MultChar::inverse() const {
  MultChar r = *this;
  r.index = index == 0 ? 0 : group->order() - index;
  return r;
}

std::vector<MultChar> enumerate_characters(u64 p, unsigned c) {
  auto group = std::make_shared<const CharacterGroup>(p, c);
  std::vector<MultChar> out;
  for (u64 idx = 0; idx < group->order(); ++idx) {
    unsigned cond = 0;
    if (idx != 0) {
      // trivial on 1 + p^{c'} iff p^{c-c'} divides idx
      cond = c;
      u64 pk = p;
      for (unsigned cc = c - 1; cc >= 1; --cc, pk *= p) {
        if (idx % pk == 0) cond = cc;
        else break;
      }
    }
    out.push_back({group, idx, cond});
  }
  return out;
}

std::complex<double> chi_value(const MultChar& chi, u64 u) {
  if (!chi.group) {
    if (u == 0) throw Error(ErrorKind::NonUnitArgument, "0 is not a unit");
    return 1.0;
  }
  const auto& g = *chi.group;
  u64 k = g.dlog(u);
  return unit_root(mulmod(chi.index, k, g.order()), g.order());
}

std::complex<double> gauss_sum(const MultChar& chi) {
  if (chi.trivial()) throw Error(ErrorKind::TrivialCharacter, "Gauss sum of the trivial character");
  const u64 p = chi.group->prime();
  const unsigned c = chi.conductor;
  u64 pc = 1;
  for (unsigned i = 0; i < c; ++i) pc *= p;
  std::complex<double> sum = 0;
  for (u64 v = 1; v < pc; ++v) {
    if (v % p == 0) continue;
    sum += chi_value(chi, v) * unit_root(v, pc);
  }
  double scale = static_cast<double>(p) / static_cast<double>(pc) / static_cast<double>(p - 1);
  return sum * scale;
}

}  // namespace subzeta
