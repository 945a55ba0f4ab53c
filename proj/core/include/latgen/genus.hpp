#pragma once

#include <latgen/fqf.hpp>
#include <latgen/lattice.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace latgen {

// one Jordan constituent at p = 2 (scale 2^k)
struct TwoBlock {
  long k = 0;
  size_t n = 0;
  int d = 1;             // determinant class mod 8 (odd residue)
  bool type_one = false;  // type I (odd) vs type II (even)
  int t = 0;             // oddity mod 8 (0 for type II)
  bool operator==(const TwoBlock&) const = default;
};

// one Jordan constituent at an odd prime (scale p^k)
struct OddBlock {
  long k = 0;
  size_t n = 0;
  int eps = 1;
  bool operator==(const OddBlock&) const = default;
};

class GenusSymbol {
 public:
  std::pair<size_t, size_t> sig;     // (n_plus, n_minus)
  Int det;                           // signed determinant
  std::vector<TwoBlock> two;         // all scales with n > 0, ascending k (incl. 0)
  std::map<Int, std::vector<OddBlock>> odd;  // per odd prime, ascending k (incl. 0)
  std::vector<IVec> two_gauss;       // intrinsic 2-adic form invariants (scales >= 1)

  size_t rank() const { return sig.first + sig.second; }
  std::string to_string() const;  // e.g. "II_(0,18) 2^+6_II 3^+1"
  bool operator==(const GenusSymbol& o) const;
};

GenusSymbol genus_symbol(const GramLattice& l);

bool genus_equal(const GenusSymbol& a, const GenusSymbol& b);

// the genus of even lattices with the given signature and discriminant form,
// when non-empty
std::optional<GenusSymbol> genus_from_form(std::pair<size_t, size_t> sig,
                                           const FiniteQuadraticForm& q);

bool genus_exists(std::pair<size_t, size_t> sig, const FiniteQuadraticForm& q);

// Smith-Minkowski-Siegel mass of a definite genus, exact
Rat mass(const GenusSymbol& g);

// ---- 2-elementary lattice machinery (invariant-lattice side) ----

// existence of an even 2-elementary lattice with given signature and (a, delta)
bool nikulin_two_elementary_exists(std::pair<size_t, size_t> sig, size_t a, int delta);

// U-summand splitting criterion for the invariant lattice family of
// signature (3, 21-r)
bool splits_U(size_t r, size_t a, int delta);

struct InvariantCandidate {
  GramLattice lattice;  // the invariant lattice
  size_t r;             // rank of the coinvariant side
};

// the classification of invariant lattices that do not split a U summand
std::vector<InvariantCandidate> candidate_invariant_lattices();

// the twelve coinvariant genera, in the order of candidate_invariant_lattices
std::vector<GenusSymbol> target_genera();

}  // namespace latgen
