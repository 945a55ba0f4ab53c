#pragma once

#include <latgen/genus.hpp>

// Internal knobs for the local factors of the Smith-Minkowski-Siegel mass.
// The final values are fixed by the calibration suite in the tests, which
// checks the formula against exhaustively enumerated small genera.

namespace latgen::mass_detail {

struct Rules {
  // cross-scale exponent variant
  //  0: sum floor(dk*n*n'/2)
  //  1: even n*n': dk*n*n'/2; odd n*n': dk even ? dk*n*n'/2 : 0
  //  2: even n*n': dk*n*n'/2; odd n*n': dk even ? n*n' : 0
  int cross = 1;
  // bound definition: 0 = adjacent scale nonzero, 1 = adjacent scale type I
  int bound_def = 1;
  // species of a free type-I block of odd dimension:
  //  0: sign by det class (1,7 -> minus; 3,5 -> plus), magnitude n-1
  //  1: always odd species n
  int species_free_odd = 0;
  // species of a free type-I block of even dimension:
  //  0: t = 0 mod 4 -> +n, t = 2 mod 4 -> -(n-2)
  //  1: always odd species n-1
  int species_free_even = 0;
  // species of a bound type-I block: 0: n+1 signed +, 1: odd species n,
  // 2: n+1 signed by det class
  int species_bound = 0;
  // species of a bound type-II block: 0: n+1, 1: same as free
  int species_bound_two = 0;
  // type factor: 0: none, 1: 2^(nI_I), 2: 2^(nI_I - bound type II dims)
  int type_factor = 0;
  // convention for "+0" species: M = 1/2 if true else invalid (fall back -0)
  bool plus_zero_half = true;
};

Rat mass_with_rules(const GenusSymbol& g, const Rules& rules);

}  // namespace latgen::mass_detail
