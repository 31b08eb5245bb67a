#pragma once

#include <random>
#include <string>
#include <vector>

#include "subzeta/system.hpp"

namespace fixtures {

using subzeta::PolySystem;

inline PolySystem x2_line(subzeta::u64 p = 3) { return PolySystem::parse(p, 2, {"x1"}, "x2^2"); }
inline PolySystem x3_line(subzeta::u64 p = 3) { return PolySystem::parse(p, 2, {"x1"}, "x2^3"); }
inline PolySystem monomial_line(unsigned N, subzeta::u64 p = 3) {
  return PolySystem::parse(p, 2, {"x1"}, "x2^" + std::to_string(N));
}
inline PolySystem parabola(subzeta::u64 p = 3) { return PolySystem::parse(p, 2, {"x1 - x2^2"}, "x2"); }
inline PolySystem three_var() { return PolySystem::parse(3, 3, {"x1 - x2*x3"}, "x2^2 + x3^3"); }
inline PolySystem bad_line() { return PolySystem::parse(3, 2, {"3*x1 - 9*x2"}, "x2^2"); }

// Good-reduction systems used by the count-law tests.
inline std::vector<PolySystem> good_systems() {
  return {
      x2_line(3),
      parabola(5),
      PolySystem::parse(3, 2, {"x1^2 + x2^2 - 1"}, "x1"),
      three_var(),
      PolySystem::parse(2, 2, {"x1 - x2^3"}, "x2"),
      PolySystem::parse(7, 3, {"x1 + x2 + x3", "x1 - x2^2"}, "x3"),
  };
}

inline std::string corpus(const std::string& name) { return std::string(SUBZETA_CORPUS_DIR) + "/" + name; }

}  // namespace fixtures
