#pragma once

#include <latgen/fqf.hpp>
#include <latgen/lattice.hpp>

#include <optional>
#include <string>

namespace latgen {

struct LatticeIsometry {
  GramLattice lattice;
  IMat matrix;  // matrix * gram * matrix^T = gram

  LatticeIsometry(GramLattice l, IMat m);
  bool is_involution() const;
};

// (invariant, coinvariant): saturated kernels of (T - 1) and (T + 1)
std::pair<SublatticeEmbedding, SublatticeEmbedding> invariant_and_coinvariant(
    const LatticeIsometry& iso);

// the involution acting by -1 on m and +1 on n; m and n orthogonal with
// 2-power index in l
LatticeIsometry involution_from_splitting(const SublatticeEmbedding& m,
                                          const SublatticeEmbedding& n, const GramLattice& l);

// induced action on the discriminant group, as a matrix on the generators;
// sign() gives +-1 when the action is +-identity
struct DiscriminantAction {
  IMat matrix;       // entries mod generator orders
  IVec orders;
  std::optional<int> sign() const;
};
DiscriminantAction discriminant_action(const LatticeIsometry& iso);

// negative definite and free of short/long roots
bool is_geometric(const GramLattice& coinv);

struct Classification {
  std::string label;           // "E8(2)", "D12+(2)", "E6(2)", "M", "G12", "G16",
                               // "NEW-NONGEOMETRIC", "NEW-UNEXPECTED"
  int theorem_part = 0;        // 1, 2 or 3 for the classified rows
  std::string invariant_lattice;  // the paired invariant lattice, when classified
  bool geometric = false;
};

Classification classify(const GramLattice& coinv, int disc_action);

// the paper's geometric representatives
const GramLattice& g12_lattice();
const GramLattice& g16_lattice();

}  // namespace latgen
