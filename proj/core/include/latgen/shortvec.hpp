#pragma once

#include <latgen/lattice.hpp>

#include <functional>
#include <optional>

namespace latgen {

// smallest nonzero norm of a positive definite lattice
Int minimum(const GramLattice& l_pos);

// all vectors of norm exactly m, one per +-pair when up_to_sign is set
// (representative has positive first nonzero coordinate), sorted
// lexicographically
std::vector<LatticeVector> vectors_of_norm(const GramLattice& l_pos, const Int& m,
                                           bool up_to_sign = true);

// all vectors with 0 < norm <= bound (up to sign), with their norms
std::vector<std::pair<LatticeVector, Int>> vectors_up_to(const GramLattice& l_pos,
                                                         const Int& bound);

struct RootScanReport {
  Int minimum_norm;  // minimum of l(-1)
  bool has_short_root = false;
  bool has_long_root = false;
  std::optional<LatticeVector> short_witness;
  std::optional<LatticeVector> long_witness;
};

// section 6.2 recipe: minimum of L(-1); norm-6 vectors with divisibility 3
RootScanReport root_scan(const GramLattice& l_neg);

}  // namespace latgen
