#include <latgen/normal_forms.hpp>

#include <stdexcept>

namespace latgen {

namespace {

// in-place row HNF; returns rank. If u != nullptr it accumulates the row ops.
size_t hnf_in_place(IMat& a, IMat* u) {
  size_t m = a.rows(), n = a.cols();
  size_t row = 0;
  for (size_t col = 0; col < n && row < m; ++col) {
    // find a nonzero entry in this column at or below `row`
    size_t piv = row;
    while (piv < m && a(piv, col) == 0) ++piv;
    if (piv == m) continue;
    a.swap_rows(row, piv);
    if (u) u->swap_rows(row, piv);
    // euclidean elimination below the pivot
    for (size_t i = row + 1; i < m; ++i) {
      while (a(i, col) != 0) {
        Int q = fdiv(a(row, col), a(i, col));
        if (q != 0) {
          for (size_t j = 0; j < n; ++j) a(row, j) -= q * a(i, j);
          if (u)
            for (size_t j = 0; j < u->cols(); ++j) (*u)(row, j) -= q * (*u)(i, j);
        }
        a.swap_rows(row, i);
        if (u) u->swap_rows(row, i);
      }
    }
    if (a(row, col) < 0) {
      for (size_t j = 0; j < n; ++j) a(row, j) = -a(row, j);
      if (u)
        for (size_t j = 0; j < u->cols(); ++j) (*u)(row, j) = -(*u)(row, j);
    }
    // reduce entries above the pivot
    for (size_t i = 0; i < row; ++i) {
      Int q = fdiv(a(i, col), a(row, col));
      if (q != 0) {
        for (size_t j = 0; j < n; ++j) a(i, j) -= q * a(row, j);
        if (u)
          for (size_t j = 0; j < u->cols(); ++j) (*u)(i, j) -= q * (*u)(row, j);
      }
    }
    ++row;
  }
  return row;
}

}  // namespace

IMat hnf(const IMat& a) {
  IMat h = a;
  size_t rank = hnf_in_place(h, nullptr);
  return h.submatrix(0, rank, 0, h.cols());
}

SnfResult snf(const IMat& a) {
  size_t m = a.rows(), n = a.cols();
  SnfResult r{a, IMat::identity(m), IMat::identity(n)};
  IMat& s = r.s;
  size_t k = 0;
  size_t dim = std::min(m, n);
  while (k < dim) {
    // find nonzero pivot in the remaining block
    size_t pi = k, pj = k;
    bool found = false;
    for (size_t i = k; i < m && !found; ++i)
      for (size_t j = k; j < n && !found; ++j)
        if (s(i, j) != 0) {
          pi = i;
          pj = j;
          found = true;
        }
    if (!found) break;
    s.swap_rows(k, pi);
    r.u.swap_rows(k, pi);
    s.swap_cols(k, pj);
    r.v.swap_cols(k, pj);
    // clear row and column k
    bool dirty = true;
    while (dirty) {
      dirty = false;
      for (size_t i = k + 1; i < m; ++i) {
        while (s(i, k) != 0) {
          Int q = fdiv(s(k, k), s(i, k));
          if (q != 0) {
            for (size_t j = 0; j < n; ++j) s(k, j) -= q * s(i, j);
            for (size_t j = 0; j < m; ++j) r.u(k, j) -= q * r.u(i, j);
          }
          s.swap_rows(k, i);
          r.u.swap_rows(k, i);
        }
      }
      for (size_t j = k + 1; j < n; ++j) {
        while (s(k, j) != 0) {
          Int q = fdiv(s(k, k), s(k, j));
          if (q != 0) {
            for (size_t i = 0; i < m; ++i) s(i, k) -= q * s(i, j);
            for (size_t i = 0; i < n; ++i) r.v(i, k) -= q * r.v(i, j);
          }
          s.swap_cols(k, j);
          r.v.swap_cols(k, j);
        }
      }
      // row clearing may have refilled the column
      for (size_t i = k + 1; i < m; ++i)
        if (s(i, k) != 0) dirty = true;
    }
    // enforce divisibility: s(k,k) must divide every later entry
    if (s(k, k) < 0) {
      for (size_t j = 0; j < n; ++j) s(k, j) = -s(k, j);
      for (size_t j = 0; j < m; ++j) r.u(k, j) = -r.u(k, j);
    }
    bool redo = false;
    for (size_t i = k + 1; i < m && !redo; ++i)
      for (size_t j = k + 1; j < n && !redo; ++j)
        if (mod(s(i, j), s(k, k)) != 0) {
          // add row i to row k and restart this pivot
          for (size_t c = 0; c < n; ++c) s(k, c) += s(i, c);
          for (size_t c = 0; c < m; ++c) r.u(k, c) += r.u(i, c);
          redo = true;
        }
    if (!redo) ++k;
  }
  return r;
}

IVec elementary_divisors(const IMat& a) {
  SnfResult r = snf(a);
  IVec d;
  size_t dim = std::min(a.rows(), a.cols());
  for (size_t i = 0; i < dim; ++i)
    if (r.s(i, i) != 0) d.push_back(r.s(i, i));
  return d;
}

IMat left_kernel(const IMat& a) {
  SnfResult r = snf(a);
  size_t m = a.rows();
  size_t dim = std::min(a.rows(), a.cols());
  size_t rank = 0;
  for (size_t i = 0; i < dim; ++i)
    if (r.s(i, i) != 0) ++rank;
  // rows of u with index >= rank span the kernel; u unimodular => saturated
  IMat k(m - rank, m);
  for (size_t i = rank; i < m; ++i)
    for (size_t j = 0; j < m; ++j) k(i - rank, j) = r.u(i, j);
  return k;
}

IMat saturate_rows(const IMat& a) {
  SnfResult r = snf(a);
  size_t dim = std::min(a.rows(), a.cols());
  size_t rank = 0;
  for (size_t i = 0; i < dim; ++i)
    if (r.s(i, i) != 0) ++rank;
  // rowspan(a) = u^-1 * s * v^-1; saturation basis = first `rank` rows of v^-1
  IMat vinv = inverse_unimodular(r.v);
  IMat out(rank, a.cols());
  for (size_t i = 0; i < rank; ++i)
    for (size_t j = 0; j < a.cols(); ++j) out(i, j) = vinv(i, j);
  return hnf(out);
}

bool rows_primitive(const IMat& a) {
  for (const Int& d : elementary_divisors(a))
    if (d != 1) return false;
  return true;
}

IMat inverse_unimodular(const IMat& u) {
  QMat qinv = inverse(int_to_rat(u));
  return rat_to_int(qinv);
}

IVec solve_left(const IMat& a, const IVec& b) {
  // x * a = b  <=>  a^T x^T = b^T; use SNF of a: u a v = s => x = y u with y s v^{-1} = b
  SnfResult r = snf(a);
  IMat vinv = inverse_unimodular(r.v);
  // want y * s = b * v  (since y s v^-1 = b  =>  y s = b v)
  IVec bv = vec_mat(b, r.v);
  size_t m = a.rows();
  size_t dim = std::min(a.rows(), a.cols());
  IVec y(m, Int(0));
  for (size_t j = 0; j < bv.size(); ++j) {
    if (j < dim && r.s(j, j) != 0) {
      if (mod(bv[j], r.s(j, j)) != 0) throw std::domain_error("solve_left: no integral solution");
      y[j] = divexact(bv[j], r.s(j, j));
    } else if (bv[j] != 0) {
      throw std::domain_error("solve_left: inconsistent system");
    }
  }
  return vec_mat(y, r.u);
}

}  // namespace latgen
