#include <latgen/numeric.hpp>

namespace latgen {

std::vector<Rat> bernoulli_upto(unsigned n) {
  // B_m = -1/(m+1) * sum_{k=0}^{m-1} C(m+1, k) B_k, B_1 = -1/2
  std::vector<Rat> b(n + 1);
  b[0] = 1;
  for (unsigned m = 1; m <= n; ++m) {
    Rat s(0);
    Int binom(1);  // C(m+1, 0)
    for (unsigned k = 0; k < m; ++k) {
      s += Rat(binom) * b[k];
      binom = divexact(binom * Int(m + 1 - k), Int(k + 1));
    }
    b[m] = -s / Rat(Int(m + 1));
    b[m].canonicalize();
  }
  return b;
}

Rat bernoulli_poly(unsigned n, const Rat& x) {
  // B_n(x) = sum_k C(n,k) B_k x^{n-k}
  std::vector<Rat> b = bernoulli_upto(n);
  Rat s(0);
  Int binom(1);
  for (unsigned k = 0; k <= n; ++k) {
    Rat xpow(1);
    for (unsigned i = 0; i < n - k; ++i) xpow *= x;
    s += Rat(binom) * b[k] * xpow;
    if (k < n) binom = divexact(binom * Int(n - k), Int(k + 1));
  }
  s.canonicalize();
  return s;
}

Int fundamental_discriminant(const Int& d) {
  if (d == 0) throw std::invalid_argument("fundamental discriminant of 0");
  // strip square factors
  Int m = d;
  Int core(1);
  Int sign = m < 0 ? Int(-1) : Int(1);
  m = abs(m);
  for (Int p(2); p * p <= m; p += 1) {
    long v = 0;
    while (mod(m, p) == 0) {
      m = divexact(m, p);
      ++v;
    }
    if (v % 2 == 1) core *= p;
  }
  core *= m;  // leftover prime
  core *= sign;
  if (mod(core - 1, Int(4)) == 0) return core;
  return 4 * core;
}

Rat l_value_1_minus(unsigned s, const Int& d) {
  // L(1-s, chi_d) = -B_{s,chi}/s with B_{s,chi} = |d|^{s-1} sum_a chi(a) B_s(a/|d|)
  if (d == 1) {
    // Riemann zeta: zeta(1-s) = -B_s / s
    std::vector<Rat> b = bernoulli_upto(s);
    Rat r = -b[s] / Rat(Int(s));
    r.canonicalize();
    return r;
  }
  Int ad = abs(d);
  Rat bs(0);
  for (Int a(1); a <= ad; a += 1) {
    int chi = kronecker(d, a);
    if (chi == 0) continue;
    Rat x(a, ad);
    x.canonicalize();
    bs += Rat(Int(chi)) * bernoulli_poly(s, x);
  }
  Rat adm(1);
  for (unsigned i = 0; i + 1 < s; ++i) adm *= Rat(ad);
  bs *= adm;
  Rat r = -bs / Rat(Int(s));
  r.canonicalize();
  return r;
}

std::string to_string(const Rat& q) {
  Rat c = q;
  c.canonicalize();
  if (Int(c.get_den()) == 1) return Int(c.get_num()).get_str();
  return Int(c.get_num()).get_str() + "/" + Int(c.get_den()).get_str();
}

}  // namespace latgen
