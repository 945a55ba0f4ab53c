#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace latgen {

using Int = mpz_class;
using Rat = mpq_class;

inline Int gcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Int lcm(const Int& a, const Int& b) {
  Int l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

inline Int divexact(const Int& a, const Int& b) {
  Int q;
  mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

// floor division, sign-correct for negative numerators
inline Int fdiv(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline Int mod(const Int& a, const Int& m) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

inline long mod_long(const Int& a, long m) {
  Int r = mod(a, Int(m));
  return r.get_si();
}

inline bool is_odd(const Int& a) { return mpz_odd_p(a.get_mpz_t()) != 0; }
inline bool is_even(const Int& a) { return mpz_even_p(a.get_mpz_t()) != 0; }

inline Int pow_int(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

// p-adic valuation; a != 0
inline long valuation(Int a, const Int& p) {
  if (a == 0) throw std::invalid_argument("valuation of zero");
  long v = 0;
  Int r;
  while (true) {
    Int q;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t());
    if (r != 0) break;
    a = q;
    ++v;
  }
  return v;
}

inline long valuation(const Rat& x, const Int& p) {
  if (x == 0) throw std::invalid_argument("valuation of zero");
  return valuation(Int(x.get_num()), p) - valuation(Int(x.get_den()), p);
}

// Kronecker symbol (a|b)
inline int kronecker(const Int& a, const Int& b) {
  return mpz_kronecker(a.get_mpz_t(), b.get_mpz_t());
}

inline int legendre(const Int& a, const Int& p) {
  return mpz_legendre(a.get_mpz_t(), p.get_mpz_t());
}

inline Int invmod(const Int& a, const Int& m) {
  Int r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
    throw std::domain_error("invmod: not invertible");
  return r;
}

// canonical representative of q in [0, 2) modulo 2Z
inline Rat mod2Z(const Rat& q) {
  Rat two(2);
  Rat r = q - two * Rat(fdiv(Int(q.get_num()), 2 * Int(q.get_den())));
  r.canonicalize();
  if (r < 0) r += two;
  if (r >= two) r -= two;
  return r;
}

// canonical representative in [0, 1) modulo Z
inline Rat mod1Z(const Rat& q) {
  Rat r = q - Rat(fdiv(Int(q.get_num()), Int(q.get_den())));
  r.canonicalize();
  if (r < 0) r += 1;
  if (r >= 1) r -= 1;
  return r;
}

// Bernoulli numbers B_0 .. B_n (B_1 = -1/2), exact
std::vector<Rat> bernoulli_upto(unsigned n);

// value of the Bernoulli polynomial B_n(x)
Rat bernoulli_poly(unsigned n, const Rat& x);

// fundamental discriminant of the quadratic field Q(sqrt(d)), d != 0.
// d = 1 (or a perfect square) gives 1 (trivial character).
Int fundamental_discriminant(const Int& d);

// L(1-s, chi_d) for the Kronecker character of fundamental discriminant d
Rat l_value_1_minus(unsigned s, const Int& d);

std::string to_string(const Rat& q);

}  // namespace latgen
