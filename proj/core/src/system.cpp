#include "subzeta/system.hpp"

#include "subzeta/error.hpp"

namespace subzeta {

PolySystem::PolySystem(u64 p, unsigned n, std::vector<MPoly> constraints, MPoly target,
                       std::vector<ResolutionDatum> resolution)
    : p_(p), n_(n), constraints_(std::move(constraints)), target_(std::move(target)),
      resolution_(std::move(resolution)) {
  if (!is_prime(p_)) throw Error(ErrorKind::InvalidArgument, std::to_string(p_) + " is not prime");
  if (n_ == 0) throw Error(ErrorKind::InvalidArgument, "need at least one variable");
  if (constraints_.empty()) throw Error(ErrorKind::InvalidArgument, "need at least one constraint");
  if (l() > n_) throw Error(ErrorKind::InvalidArgument, "need l <= n");
  for (const auto& f : constraints_) {
    if (f.nvars() != n_) throw Error(ErrorKind::DimensionMismatch, "constraint ring mismatch");
    if (f.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "zero constraint");
  }
  if (target_.nvars() != n_) throw Error(ErrorKind::DimensionMismatch, "target ring mismatch");
  if (target_.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "zero target");
  if (target_.total_degree() == 0) throw Error(ErrorKind::InvalidArgument, "target must be nonconstant");
  for (const auto& r : resolution_) {
    if (r.N == 0 || r.v == 0) throw Error(ErrorKind::InvalidArgument, "resolution data must be positive");
  }
}

PolySystem PolySystem::parse(u64 p, unsigned n, const std::vector<std::string>& constraints,
                             const std::string& target, std::vector<ResolutionDatum> resolution) {
  std::vector<MPoly> cs;
  for (const auto& c : constraints) cs.push_back(parse_polynomial(c, n));
  return PolySystem(p, n, std::move(cs), parse_polynomial(target, n), std::move(resolution));
}

PAdicMatrix jacobian(const PolySystem& system, std::span<const mpz_class> point,
                     unsigned precision, const std::vector<unsigned>& rows) {
  if (point.size() != system.n()) throw Error(ErrorKind::DimensionMismatch, "point length != n");
  PAdicMatrix out;
  for (unsigned r : rows) {
    if (r >= system.l()) throw Error(ErrorKind::InvalidArgument, "row index out of range");
    const MPoly& f = r + 1 == system.l() ? system.target() : system.constraints()[r];
    std::vector<PAdicApprox> row;
    for (unsigned j = 0; j < system.n(); ++j) {
      row.push_back(evaluate_mod(f.derivative(j), point, system.p(), precision));
    }
    out.push_back(std::move(row));
  }
  return out;
}

std::vector<std::vector<mpz_class>> jacobian_exact(const std::vector<MPoly>& polys,
                                                   std::span<const mpz_class> point) {
  std::vector<std::vector<mpz_class>> out;
  for (const auto& f : polys) {
    std::vector<mpz_class> row;
    for (unsigned j = 0; j < f.nvars(); ++j) row.push_back(f.derivative(j).eval(point));
    out.push_back(std::move(row));
  }
  return out;
}

unsigned rank_mod_p(std::vector<std::vector<u64>> a, u64 p) {
  unsigned rank = 0;
  if (a.empty()) return 0;
  std::size_t cols = a[0].size();
  for (auto& row : a) {
    for (auto& v : row) v %= p;
  }
  for (std::size_t c = 0; c < cols && rank < a.size(); ++c) {
    std::size_t piv = rank;
    while (piv < a.size() && a[piv][c] == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[rank]);
    u64 inv = powmod(a[rank][c], p - 2, p);
    for (std::size_t r = rank + 1; r < a.size(); ++r) {
      u64 factor = mulmod(a[r][c], inv, p);
      if (factor == 0) continue;
      for (std::size_t k = c; k < cols; ++k) a[r][k] = submod(a[r][k], mulmod(factor, a[rank][k], p), p);
    }
    ++rank;
  }
  return rank;
}

}  // namespace subzeta
