#include "subzeta/support.hpp"

#include <algorithm>

#include "subzeta/error.hpp"

namespace subzeta {

Support Support::cosets(u64 p, unsigned n, unsigned level, std::vector<std::vector<u64>> centers) {
  Support s;
  s.kind_ = Kind::Cosets;
  s.p_ = p;
  s.n_ = n;
  s.level_ = level;
  const u64 mod = checked_pow(p, level);
  for (auto& c : centers) {
    if (c.size() != n) throw Error(ErrorKind::DimensionMismatch, "coset center length != n");
    for (auto& v : c) v %= mod;
  }
  std::sort(centers.begin(), centers.end());
  centers.erase(std::unique(centers.begin(), centers.end()), centers.end());
  s.centers_ = std::move(centers);
  return s;
}

Support::Membership Support::classify(std::span<const u64> x, unsigned J) const {
  if (kind_ == Kind::UnitPolydisc) return Membership::Inside;
  if (centers_.empty()) return Membership::Outside;
  if (J >= level_) {
    const u64 mod = checked_pow(p_, level_);
    std::vector<u64> key(x.begin(), x.end());
    for (auto& v : key) v %= mod;
    return std::binary_search(centers_.begin(), centers_.end(), key) ? Membership::Inside
                                                                     : Membership::Outside;
  }
  const u64 mod = checked_pow(p_, J);
  std::size_t matches = 0;
  for (const auto& c : centers_) {
    bool ok = true;
    for (unsigned i = 0; i < n_ && ok; ++i) ok = c[i] % mod == x[i] % mod;
    if (ok) ++matches;
  }
  if (matches == 0) return Membership::Outside;
  mpz_class full = pow_mpz(p_, (level_ - J) * n_);
  return full == matches ? Membership::Inside : Membership::Partial;
}

mpq_class Support::measure() const {
  if (kind_ == Kind::UnitPolydisc) return 1;
  mpq_class m(mpz_class(static_cast<unsigned long>(centers_.size())), pow_mpz(p_, level_ * n_));
  m.canonicalize();
  return m;
}

}  // namespace subzeta
