#pragma once

#include <latgen/lattice.hpp>

#include <map>
#include <optional>
#include <vector>

namespace latgen {

// Finite quadratic form on a finite abelian group, q with values in Q/2Z and
// bilinear pairing b in Q/Z. Generators have orders d_i >= 2 forming a
// divisibility chain.
class FiniteQuadraticForm {
 public:
  FiniteQuadraticForm() = default;  // trivial group
  FiniteQuadraticForm(IVec orders, QVec q, QMat b, std::optional<QMat> coords = std::nullopt);

  size_t generator_count() const { return orders_.size(); }
  const Int& order(size_t i) const { return orders_[i]; }
  const IVec& orders() const { return orders_; }
  Int group_order() const;

  const Rat& q_value(size_t i) const { return q_[i]; }
  const QVec& q_values() const { return q_; }
  const QMat& b_matrix() const { return b_; }

  // q and b on arbitrary elements given by coefficient vectors
  Rat q_of(const IVec& c) const;
  Rat b_of(const IVec& x, const IVec& y) const;
  Int element_order(const IVec& c) const;

  bool trivial() const { return orders_.empty(); }

  // generator coordinates in the dual of the source lattice (rows), when the
  // form was computed by discriminant_form
  bool has_coords() const { return coords_.has_value(); }
  const QVec generator_coords(size_t i) const;

 private:
  IVec orders_;
  QVec q_;
  QMat b_;
  std::optional<QMat> coords_;
};

FiniteQuadraticForm discriminant_form(const GramLattice& l);

struct TwoElementaryInvariants {
  size_t r;
  size_t a;
  int delta;
  bool operator==(const TwoElementaryInvariants&) const = default;
};

// (rank, l(A), delta); throws if A_L is not 2-elementary
TwoElementaryInvariants two_elementary_invariants(const GramLattice& l);

FiniteQuadraticForm fqf_direct_sum(const FiniteQuadraticForm& a, const FiniteQuadraticForm& b);
FiniteQuadraticForm fqf_negate(const FiniteQuadraticForm& a);

std::vector<Int> fqf_primes(const FiniteQuadraticForm& f);
FiniteQuadraticForm p_primary_part(const FiniteQuadraticForm& f, const Int& p);

// ---- structure of p-primary parts ----

// scale data of the p-part of a form at an odd prime: one entry per scale
// p^k (k >= 1) with positive rank
struct OddScaleData {
  long k = 0;
  size_t n = 0;
  int eps = 1;    // Legendre class of the corresponding Jordan block
  int sigma = 0;  // Gauss signature mod 8 of this scale's piece
  bool operator==(const OddScaleData&) const = default;
};
std::vector<OddScaleData> odd_scales(const FiniteQuadraticForm& f, const Int& p);

// scale data of the 2-part computed from a deterministic orthogonal splitting
struct TwoAdicScaleData {
  long k = 0;
  size_t n = 0;
  bool type_one = false;
  int sigma = 0;    // Gauss signature mod 8 of this scale's piece
  int d = 1;        // det class in {1,3,5,7} of the corresponding Jordan block
  int t = 0;        // oddity (trace) mod 8
  bool operator==(const TwoAdicScaleData&) const = default;
};
std::vector<TwoAdicScaleData> two_adic_scales(const FiniteQuadraticForm& f);

// Kawauchi-Kojima style invariants of the 2-part: for j = 1, 2, 4, ..., the
// exact Gauss sum of j*q as a vector in the cyclotomic basis of Z[zeta_{2^t}].
std::vector<IVec> two_adic_gauss_invariants(const FiniteQuadraticForm& f);

// Milgram: signature of the form mod 8
int milgram_signature(const FiniteQuadraticForm& f);

bool fqf_isomorphic(const FiniteQuadraticForm& a, const FiniteQuadraticForm& b);

// exhaustive generator-matching test; feasible for group order <= ~4096
bool fqf_brute_force_isomorphic(const FiniteQuadraticForm& a, const FiniteQuadraticForm& b);

// order-2 elements x with q(x) = 0 mod 2Z, as coefficient vectors
std::vector<IVec> isotropic_two_torsion(const FiniteQuadraticForm& f);

}  // namespace latgen
