#pragma once

#include <latgen/lattice.hpp>

#include <optional>
#include <stdexcept>

namespace latgen {

struct Fingerprint {
  size_t rank = 0;
  Int det_abs;
  Int min_norm;
  std::array<long, 3> counts{0, 0, 0};  // +-pairs at min, min+2, min+4
  IVec disc_orders;
  int delta2 = 0;  // 1 iff some 2-torsion class has half-integral q
  bool operator==(const Fingerprint&) const = default;
};

Fingerprint fingerprint(const GramLattice& l);

struct IsometryBudgetExhausted : std::runtime_error {
  IsometryBudgetExhausted() : std::runtime_error("isometry search budget exhausted") {}
};

inline constexpr long kDefaultIsometryBudget = 200000000;

// transform T with T * gram_a * T^T = gram_b, if the definite lattices are
// isometric
std::optional<IMat> is_isometric(const GramLattice& a, const GramLattice& b,
                                 long budget = kDefaultIsometryBudget);

// |O(L)| for definite L, via a stabilizer chain over short vectors
Int automorphism_order(const GramLattice& l, long budget = kDefaultIsometryBudget);

}  // namespace latgen
