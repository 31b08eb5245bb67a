#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "subzeta/mpoly.hpp"

namespace subzeta {

struct ResolutionDatum {
  unsigned N = 0;
  unsigned v = 0;
};

// Constraints f_1..f_{l-1} cutting out V and the phase f_l.
class PolySystem {
 public:
  PolySystem(u64 p, unsigned n, std::vector<MPoly> constraints, MPoly target,
             std::vector<ResolutionDatum> resolution = {});

  static PolySystem parse(u64 p, unsigned n, const std::vector<std::string>& constraints,
                          const std::string& target, std::vector<ResolutionDatum> resolution = {});

  u64 p() const { return p_; }
  unsigned n() const { return n_; }
  unsigned l() const { return static_cast<unsigned>(constraints_.size()) + 1; }
  // Dimension of V, n - l + 1.
  unsigned dim() const { return n_ - l() + 1; }
  const std::vector<MPoly>& constraints() const { return constraints_; }
  const MPoly& target() const { return target_; }
  const std::vector<ResolutionDatum>& resolution_data() const { return resolution_; }

 private:
  u64 p_;
  unsigned n_;
  std::vector<MPoly> constraints_;
  MPoly target_;
  std::vector<ResolutionDatum> resolution_;
};

using PAdicMatrix = std::vector<std::vector<PAdicApprox>>;

// Rows are indices into f_1..f_l (0-based; l-1 is the target).
PAdicMatrix jacobian(const PolySystem& system, std::span<const mpz_class> point,
                     unsigned precision, const std::vector<unsigned>& rows);

// Exact integer Jacobian of the given polynomials at an integer point.
std::vector<std::vector<mpz_class>> jacobian_exact(const std::vector<MPoly>& polys,
                                                   std::span<const mpz_class> point);

// Rank over F_p of an integer matrix.
unsigned rank_mod_p(std::vector<std::vector<u64>> rows, u64 p);

}  // namespace subzeta
