#pragma once

#include <latgen/matrix.hpp>

namespace latgen {

// Row-style Hermite normal form of the module spanned by the rows of a.
// Pivots are positive, entries above a pivot reduced into [0, pivot).
// Zero rows are dropped, so the result is a basis of the row module.
IMat hnf(const IMat& a);

struct SnfResult {
  IMat s;  // diagonal, s(i,i) >= 0, divisibility chain
  IMat u;  // unimodular, u * a * v = s
  IMat v;
};

SnfResult snf(const IMat& a);

// diagonal of snf(a).s restricted to nonzero entries
IVec elementary_divisors(const IMat& a);

// basis (rows) of the saturated left kernel {x : x * a = 0}
IMat left_kernel(const IMat& a);

// saturation of the row span: (Q-span of rows) intersected with Z^n
IMat saturate_rows(const IMat& a);

// true iff the row span is a primitive (saturated) submodule of Z^n
bool rows_primitive(const IMat& a);

// inverse of a unimodular integer matrix
IMat inverse_unimodular(const IMat& u);

// solve x * a = b over the integers for a single row b; throws if unsolvable
IVec solve_left(const IMat& a, const IVec& b);

}  // namespace latgen
