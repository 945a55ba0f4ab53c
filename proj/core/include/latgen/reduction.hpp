#pragma once

#include <latgen/lattice.hpp>

namespace latgen {

struct LllResult {
  GramLattice lattice;   // reduced Gram
  IMat transform;        // transform * gram * transform^T = reduced
};

// exact integral LLL (delta = 3/4) on the Gram matrix of a definite lattice
LllResult lll_reduce(const GramLattice& l);

}  // namespace latgen
