#include <latgen/matrix.hpp>

#include <stdexcept>

namespace latgen {

IMat rat_to_int(const QMat& m) {
  IMat r(m.rows(), m.cols());
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) {
      const Rat& q = m(i, j);
      if (Int(q.get_den()) != 1) throw std::domain_error("rat_to_int: non-integral entry");
      r(i, j) = Int(q.get_num());
    }
  return r;
}

QMat int_to_rat(const IMat& m) {
  QMat r(m.rows(), m.cols());
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) r(i, j) = Rat(m(i, j));
  return r;
}

// Bareiss fraction-free determinant
Int det(const IMat& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("det: not square");
  size_t n = m.rows();
  if (n == 0) return 1;
  IMat a = m;
  Int prev(1);
  int sign = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i)
      for (size_t j = k + 1; j < n; ++j)
        a(i, j) = divexact(a(i, j) * a(k, k) - a(i, k) * a(k, j), prev);
    prev = a(k, k);
  }
  return sign > 0 ? a(n - 1, n - 1) : -a(n - 1, n - 1);
}

Rat det(const QMat& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("det: not square");
  size_t n = m.rows();
  if (n == 0) return 1;
  // clear denominators, use integer Bareiss
  Int den(1);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) den = lcm(den, Int(m(i, j).get_den()));
  IMat a(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      Rat q = m(i, j) * Rat(den);
      q.canonicalize();
      a(i, j) = Int(q.get_num());
    }
  Rat d(det(a));
  Rat scale(Int(1), pow_int(den, static_cast<unsigned long>(n)));
  scale.canonicalize();
  return d * scale;
}

QMat inverse(const QMat& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse: not square");
  size_t n = m.rows();
  QMat a = m;
  QMat inv = QMat::identity(n);
  for (size_t k = 0; k < n; ++k) {
    size_t p = k;
    while (p < n && a(p, k) == 0) ++p;
    if (p == n) throw std::domain_error("inverse: singular matrix");
    if (p != k) {
      a.swap_rows(k, p);
      inv.swap_rows(k, p);
    }
    Rat piv = a(k, k);
    for (size_t j = 0; j < n; ++j) {
      a(k, j) /= piv;
      inv(k, j) /= piv;
    }
    for (size_t i = 0; i < n; ++i) {
      if (i == k || a(i, k) == 0) continue;
      Rat f = a(i, k);
      for (size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(k, j);
        inv(i, j) -= f * inv(k, j);
      }
    }
  }
  return inv;
}

IMat block_diag(const IMat& a, const IMat& b) {
  IMat r(a.rows() + b.rows(), a.cols() + b.cols());
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
  for (size_t i = 0; i < b.rows(); ++i)
    for (size_t j = 0; j < b.cols(); ++j) r(a.rows() + i, a.cols() + j) = b(i, j);
  return r;
}

IMat stack_rows(const IMat& a, const IMat& b) {
  if (a.rows() == 0) return b;
  if (b.rows() == 0) return a;
  if (a.cols() != b.cols()) throw std::invalid_argument("stack_rows: column mismatch");
  IMat r(a.rows() + b.rows(), a.cols());
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
  for (size_t i = 0; i < b.rows(); ++i)
    for (size_t j = 0; j < b.cols(); ++j) r(a.rows() + i, j) = b(i, j);
  return r;
}

}  // namespace latgen
