#pragma once

#include <span>
#include <vector>

#include <gmpxx.h>

#include "subzeta/arith.hpp"

namespace subzeta {

// Phi: the unit polydisc, or the indicator of a finite union of cosets
// c + (p^level Z_p)^n.
class Support {
 public:
  enum class Kind { UnitPolydisc, Cosets };
  enum class Membership { Inside, Outside, Partial };

  static Support unit_polydisc() { return Support(); }
  static Support cosets(u64 p, unsigned n, unsigned level, std::vector<std::vector<u64>> centers);

  Kind kind() const { return kind_; }
  unsigned level() const { return level_; }
  const std::vector<std::vector<u64>>& centers() const { return centers_; }

  // Where the class x + (p^J Z_p)^n sits relative to Phi (x taken mod p^J).
  Membership classify(std::span<const u64> x, unsigned J) const;

  // Haar measure of the support in Z_p^n.
  mpq_class measure() const;

 private:
  Kind kind_ = Kind::UnitPolydisc;
  u64 p_ = 0;
  unsigned n_ = 0;
  unsigned level_ = 0;
  std::vector<std::vector<u64>> centers_;
};

}  // namespace subzeta
