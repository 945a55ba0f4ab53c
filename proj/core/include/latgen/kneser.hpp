#pragma once

#include <latgen/genus.hpp>
#include <latgen/isometry.hpp>
#include <latgen/lattice.hpp>
#include <latgen/shortvec.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace latgen {

struct WalkConfig {
  std::vector<Int> primes;  // pool; must be coprime to 2 det (filled by default)
  size_t sample = 500;      // random lines per round (doubles after stalls)
  uint64_t rng_seed = 1;
  long isometry_budget = kDefaultIsometryBudget;
  int max_stall_rounds = 60;  // rounds without progress before reporting
  bool check_genus = false;   // verify each neighbour against the seed genus
  int threads = 1;
};

struct IsometryClassRecord {
  GramLattice gram;  // LLL-reduced representative
  Int aut_order;
  Rat weight;  // 1 / aut_order
  Fingerprint fp;
  Int min_norm;
  bool has_short_root = false;
  bool has_long_root = false;
  std::string provenance;
};

enum class WalkStatus { Complete, Incomplete };

struct WalkState {
  std::vector<IsometryClassRecord> classes;
  Rat accumulated;
  Rat mass_target;
  WalkStatus status = WalkStatus::Incomplete;
  Rat deficit;
  Int deficit_prime;  // largest prime dividing the denominator of the deficit
  size_t rounds = 0;
};

// primes coprime to 2*det, smallest first
std::vector<Int> default_prime_pool(const GramLattice& seed, size_t count = 3);

// lift an isotropic line mod p to y with b(y,y) = 0 mod 2p^2
LatticeVector admissible_lift(const GramLattice& l, const IVec& line, const Int& p);

// the p-neighbour L(y) = L_y + Z y/p, LLL-reduced
GramLattice neighbour(const GramLattice& l, const LatticeVector& y, const Int& p);

// isotropic lines of the reduction mod p (projective representatives with
// leading coefficient 1)
std::vector<IVec> isotropic_lines_exhaustive(const GramLattice& l, const Int& p);
std::vector<IVec> isotropic_lines_random(const GramLattice& l, const Int& p, size_t count,
                                         uint64_t seed);

// a representative lattice of one of the known-constructible genera
GramLattice first_representative(const GenusSymbol& g);

// the Nikulin lattice: index-2 overlattice of A1^8 glued by the half-sum
GramLattice nikulin_lattice();

WalkState enumerate_genus(const GramLattice& seed, const WalkConfig& cfg = WalkConfig{});

}  // namespace latgen
