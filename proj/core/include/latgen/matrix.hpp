#pragma once

#include <latgen/numeric.hpp>

#include <cassert>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <vector>

namespace latgen {

// Dense row-major matrix over an exact scalar (Int or Rat).
template <typename T>
class Mat {
 public:
  Mat() : rows_(0), cols_(0) {}
  Mat(size_t r, size_t c) : rows_(r), cols_(c), a_(r * c) {}
  Mat(size_t r, size_t c, std::initializer_list<T> vals) : rows_(r), cols_(c), a_(vals) {
    assert(a_.size() == r * c);
  }

  static Mat identity(size_t n) {
    Mat m(n, n);
    for (size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }

  T& operator()(size_t i, size_t j) { return a_[i * cols_ + j]; }
  const T& operator()(size_t i, size_t j) const { return a_[i * cols_ + j]; }

  bool operator==(const Mat& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }

  Mat transpose() const {
    Mat t(cols_, rows_);
    for (size_t i = 0; i < rows_; ++i)
      for (size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Mat operator*(const Mat& o) const {
    assert(cols_ == o.rows_);
    Mat r(rows_, o.cols_);
    for (size_t i = 0; i < rows_; ++i)
      for (size_t k = 0; k < cols_; ++k) {
        const T& x = (*this)(i, k);
        if (x == 0) continue;
        for (size_t j = 0; j < o.cols_; ++j) r(i, j) += x * o(k, j);
      }
    return r;
  }

  Mat operator+(const Mat& o) const {
    assert(rows_ == o.rows_ && cols_ == o.cols_);
    Mat r(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
    return r;
  }

  Mat operator-(const Mat& o) const {
    assert(rows_ == o.rows_ && cols_ == o.cols_);
    Mat r(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
    return r;
  }

  Mat operator*(const T& s) const {
    Mat r(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] * s;
    return r;
  }

  Mat operator-() const { return (*this) * T(-1); }

  bool is_symmetric() const {
    if (rows_ != cols_) return false;
    for (size_t i = 0; i < rows_; ++i)
      for (size_t j = i + 1; j < cols_; ++j)
        if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
  }

  bool is_zero() const {
    for (const T& x : a_)
      if (x != 0) return false;
    return true;
  }

  void swap_rows(size_t i, size_t j) {
    for (size_t k = 0; k < cols_; ++k) std::swap((*this)(i, k), (*this)(j, k));
  }
  void swap_cols(size_t i, size_t j) {
    for (size_t k = 0; k < rows_; ++k) std::swap((*this)(k, i), (*this)(k, j));
  }

  std::vector<T> row(size_t i) const {
    return std::vector<T>(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_);
  }

  // rows [r0, r1) and cols [c0, c1)
  Mat submatrix(size_t r0, size_t r1, size_t c0, size_t c1) const {
    Mat s(r1 - r0, c1 - c0);
    for (size_t i = r0; i < r1; ++i)
      for (size_t j = c0; j < c1; ++j) s(i - r0, j - c0) = (*this)(i, j);
    return s;
  }

  const std::vector<T>& data() const { return a_; }

 private:
  size_t rows_, cols_;
  std::vector<T> a_;
};

using IMat = Mat<Int>;
using QMat = Mat<Rat>;
using IVec = std::vector<Int>;
using QVec = std::vector<Rat>;

template <typename T>
std::ostream& operator<<(std::ostream& os, const Mat<T>& m) {
  os << "[";
  for (size_t i = 0; i < m.rows(); ++i) {
    os << (i ? " [" : "[");
    for (size_t j = 0; j < m.cols(); ++j) os << m(i, j) << (j + 1 < m.cols() ? ", " : "");
    os << "]" << (i + 1 < m.rows() ? ",\n" : "");
  }
  return os << "]";
}

IMat rat_to_int(const QMat& m);  // requires all denominators 1
QMat int_to_rat(const IMat& m);

// determinant by fraction-free (Bareiss) elimination
Int det(const IMat& m);
Rat det(const QMat& m);

// inverse of a nonsingular rational matrix
QMat inverse(const QMat& m);

// matrix * column vector
template <typename T>
std::vector<T> mat_vec(const Mat<T>& m, const std::vector<T>& v) {
  assert(m.cols() == v.size());
  std::vector<T> r(m.rows());
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) r[i] += m(i, j) * v[j];
  return r;
}

// row vector * matrix
template <typename T>
std::vector<T> vec_mat(const std::vector<T>& v, const Mat<T>& m) {
  assert(m.rows() == v.size());
  std::vector<T> r(m.cols());
  for (size_t i = 0; i < m.rows(); ++i) {
    if (v[i] == 0) continue;
    for (size_t j = 0; j < m.cols(); ++j) r[j] += v[i] * m(i, j);
  }
  return r;
}

template <typename T>
T dot(const std::vector<T>& a, const std::vector<T>& b) {
  assert(a.size() == b.size());
  T s{};
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// v * G * w^T
template <typename T>
T inner(const std::vector<T>& v, const Mat<T>& g, const std::vector<T>& w) {
  return dot(vec_mat(v, g), w);
}

IMat block_diag(const IMat& a, const IMat& b);
IMat stack_rows(const IMat& a, const IMat& b);

}  // namespace latgen
