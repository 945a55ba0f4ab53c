#include <latgen/reduction.hpp>

#include <stdexcept>

namespace latgen {

// integral LLL on a positive definite Gram matrix (Cohen, Alg. 2.6.3)
namespace {

struct LllState {
  size_t n;
  IMat g;            // gram of the current basis
  IMat h;            // transform rows
  std::vector<Int> d;  // d[0] = 1, d[i] = Gram det of first i vectors
  IMat lam;          // lambda(i,j), i > j (0-based storage)

  explicit LllState(const IMat& gram)
      : n(gram.rows()), g(gram), h(IMat::identity(gram.rows())), d(gram.rows() + 1),
        lam(gram.rows(), gram.rows()) {
    d[0] = 1;
  }

  void red(size_t k, size_t l) {
    Int two_lam = 2 * lam(k, l);
    if (abs(two_lam) <= d[l + 1]) return;
    // nearest integer to lambda/d
    Int q = fdiv(two_lam + d[l + 1], 2 * d[l + 1]);
    for (size_t j = 0; j < n; ++j) h(k, j) -= q * h(l, j);
    // gram row/col update
    for (size_t j = 0; j < n; ++j) g(k, j) -= q * g(l, j);
    for (size_t j = 0; j < n; ++j) g(j, k) -= q * g(j, l);
    lam(k, l) -= q * d[l + 1];
    for (size_t i = 0; i < l; ++i) lam(k, i) -= q * lam(l, i);
  }

  void swap(size_t k, size_t kmax) {
    h.swap_rows(k, k - 1);
    g.swap_rows(k, k - 1);
    g.swap_cols(k, k - 1);
    for (size_t j = 0; j + 1 < k; ++j) std::swap(lam(k, j), lam(k - 1, j));
    Int l = lam(k, k - 1);
    Int b = divexact(d[k - 1] * d[k + 1] + l * l, d[k]);
    for (size_t i = k + 1; i <= kmax; ++i) {
      Int t = lam(i, k);
      lam(i, k) = divexact(d[k + 1] * lam(i, k - 1) - l * t, d[k]);
      lam(i, k - 1) = divexact(b * t + l * lam(i, k), d[k + 1]);
    }
    d[k] = b;
  }
};

}  // namespace

LllResult lll_reduce(const GramLattice& l) {
  size_t n = l.rank();
  if (n == 0) return {l, IMat(0, 0)};
  auto [np, nm] = signature(l);
  if (np != 0 && nm != 0) throw std::invalid_argument("lll_reduce: lattice not definite");
  bool neg = (np == 0);
  IMat gram = neg ? -l.gram() : l.gram();

  LllState st(gram);
  size_t kmax = 0;
  st.d[1] = st.g(0, 0);
  size_t k = 1;
  while (k < n) {
    if (k > kmax) {
      kmax = k;
      for (size_t j = 0; j <= k; ++j) {
        Int u = st.g(k, j);
        for (size_t i = 0; i < j; ++i) u = divexact(st.d[i + 1] * u - st.lam(k, i) * st.lam(j, i), st.d[i]);
        if (j < k)
          st.lam(k, j) = u;
        else
          st.d[k + 1] = u;
      }
      if (st.d[k + 1] <= 0) throw std::logic_error("lll_reduce: degenerate Gram");
    }
    st.red(k, k - 1);
    // Lovasz: 4 (d_{k+1} d_{k-1} + lambda^2) < 3 d_k^2
    if (4 * (st.d[k + 1] * st.d[k - 1] + st.lam(k, k - 1) * st.lam(k, k - 1)) <
        3 * st.d[k] * st.d[k]) {
      st.swap(k, kmax);
      k = (k > 1) ? k - 1 : 1;
    } else {
      for (size_t l2 = k - 1; l2-- > 0;) st.red(k, l2);
      ++k;
    }
  }
  IMat out = neg ? -st.g : st.g;
  return {GramLattice(out), st.h};
}

}  // namespace latgen
