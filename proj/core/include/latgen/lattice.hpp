#pragma once

#include <latgen/matrix.hpp>
#include <latgen/normal_forms.hpp>

#include <string>
#include <utility>
#include <vector>

namespace latgen {

// An even integral lattice given by its Gram matrix in a fixed basis.
class GramLattice {
 public:
  GramLattice() = default;  // rank 0
  explicit GramLattice(IMat gram);

  const IMat& gram() const { return gram_; }
  size_t rank() const { return gram_.rows(); }
  Int det() const;

  bool operator==(const GramLattice& o) const { return gram_ == o.gram_; }

 private:
  IMat gram_;
};

using LatticeVector = IVec;  // coordinates in the lattice basis

struct SublatticeEmbedding {
  GramLattice ambient;
  IMat basis;        // k x n, rows are ambient-coordinate vectors
  IMat gram_induced; // basis * ambient.gram * basis^T

  SublatticeEmbedding() = default;
  SublatticeEmbedding(const GramLattice& amb, IMat b);

  size_t rank() const { return basis.rows(); }
  bool primitive() const { return rows_primitive(basis); }
  GramLattice lattice() const { return GramLattice(gram_induced); }
};

// catalog names: "u", "a<n>", "d<n>", "e6", "e7", "e8", "d12plus", "bw16",
// "m", "og10", and rank-one "<m>" (ASCII angle brackets, m even).
// ADE lattices are negative definite.
GramLattice catalog(const std::string& name, const Int& scale = 1);

GramLattice direct_sum(const GramLattice& a, const GramLattice& b);
GramLattice rescale(const GramLattice& l, const Int& n);

// exact counts of positive and negative eigenvalues
std::pair<size_t, size_t> signature(const GramLattice& l);

inline bool is_definite(const GramLattice& l) {
  auto [p, m] = signature(l);
  return p == 0 || m == 0;
}
inline bool is_negative_definite(const GramLattice& l) {
  return signature(l).first == 0;
}
inline bool is_positive_definite(const GramLattice& l) {
  return signature(l).second == 0;
}

// div_L(v) = gcd of the entries of gram * v; v != 0
Int divisibility(const GramLattice& l, const LatticeVector& v);

// whether the rational vector w lies in the dual lattice L*
bool in_dual(const GramLattice& l, const QVec& w);

// primitive sublattice orthogonal to s inside l
SublatticeEmbedding orthogonal_complement(const GramLattice& l, const SublatticeEmbedding& s);

// even overlattice generated by l and the given dual vectors.
// Returns the new Gram matrix together with the basis (rows, rational
// coordinates in the old basis).
struct Overlattice {
  GramLattice lattice;
  QMat basis;  // n x n, rows generate the overlattice in old coordinates
};
Overlattice overlattice(const GramLattice& l, const std::vector<QVec>& glue);

// block offsets of the U^3 + E8 + E8 + A2 presentation produced by
// catalog("og10"): {0, 2, 4, 6, 14, 22}
const std::vector<size_t>& og10_block_offsets();

}  // namespace latgen
