#include <latgen/genus.hpp>
#include <latgen/mass_rules.hpp>

#include <stdexcept>

namespace latgen {

namespace mass_detail {

namespace {

// M_p attached to a species: odd species 2t+1, signed even species (2t, sign)
Rat species_factor(const Int& p, long magnitude, int sign) {
  // sign = 0 for odd species
  Rat m(1, 2);
  if (sign == 0) {
    long t = magnitude / 2;  // magnitude odd = 2t+1
    for (long i = 1; i <= t; ++i) {
      Rat f = Rat(1) - Rat(1, pow_int(p, 2 * i));
      f.canonicalize();
      m /= f;
    }
    m.canonicalize();
    return m;
  }
  long t = magnitude / 2;
  if (t == 0) {
    if (sign < 0) return Rat(1, 4);
    return Rat(1, 2);  // "+0": conventional value, see calibration
  }
  for (long i = 1; i + 1 <= t; ++i) {
    Rat f = Rat(1) - Rat(1, pow_int(p, 2 * i));
    f.canonicalize();
    m /= f;
  }
  Rat last = Rat(1) - Rat(sign, pow_int(p, t));
  last.canonicalize();
  m /= last;
  m.canonicalize();
  return m;
}

long cross_exponent(const Rules& r, const std::vector<std::pair<long, long>>& scale_dims) {
  // scale_dims: (k, n) with n > 0, ascending k
  long c = 0;
  for (size_t i = 0; i < scale_dims.size(); ++i)
    for (size_t j = i + 1; j < scale_dims.size(); ++j) {
      long dk = scale_dims[j].first - scale_dims[i].first;
      long nn = scale_dims[i].second * scale_dims[j].second;
      long prod = dk * nn;
      switch (r.cross) {
        case 0:
          c += prod / 2;
          break;
        case 1:
          if (nn % 2 == 0)
            c += prod / 2;
          else if (dk % 2 == 0)
            c += prod / 2;
          break;
        case 2:
          if (nn % 2 == 0)
            c += prod / 2;
          else if (dk % 2 == 0)
            c += nn;
          break;
        default:
          throw std::logic_error("bad cross variant");
      }
    }
  return c;
}

}  // namespace

// local mass factor at an odd prime
Rat local_mass_odd(const Rules& r, const Int& p, const std::vector<OddBlock>& blocks) {
  Rat m(1);
  std::vector<std::pair<long, long>> dims;
  for (const auto& b : blocks) {
    if (b.n == 0) continue;
    dims.push_back({b.k, long(b.n)});
    if (b.n % 2 == 1) {
      m *= species_factor(p, long(b.n), 0);
    } else {
      // eps already encodes legendre(det, p); twist by (-1)^{n/2}
      int sign = b.eps * ((b.n / 2) % 2 == 1 ? legendre(Int(-1), p) : 1);
      m *= species_factor(p, long(b.n), sign);
    }
  }
  long c = cross_exponent(r, dims);
  m *= Rat(pow_int(p, c));
  m.canonicalize();
  return m;
}

// local mass factor at p = 2
Rat local_mass_two(const Rules& r, const std::vector<TwoBlock>& blocks) {
  Rat m(1);
  std::vector<std::pair<long, long>> dims;
  auto block_at = [&](long k) -> const TwoBlock* {
    for (const auto& b : blocks)
      if (b.k == k && b.n > 0) return &b;
    return nullptr;
  };
  auto is_bound = [&](const TwoBlock& b) {
    const TwoBlock* lo = block_at(b.k - 1);
    const TwoBlock* hi = block_at(b.k + 1);
    if (r.bound_def == 0) return lo != nullptr || hi != nullptr;
    return (lo && lo->type_one) || (hi && hi->type_one);
  };
  long n_ii_pairs = 0;
  long bound_two_dims = 0;
  for (const auto& b : blocks) {
    if (b.n == 0) continue;
    dims.push_back({b.k, long(b.n)});
    const TwoBlock* hi = block_at(b.k + 1);
    if (b.type_one && hi && hi->type_one) ++n_ii_pairs;
    if (!b.type_one && is_bound(b)) bound_two_dims += long(b.n);
  }
  for (const auto& b : blocks) {
    if (b.n == 0) continue;
    long n = long(b.n);
    bool bound = is_bound(b);
    long magnitude;
    int sign;
    if (!b.type_one) {
      if (bound && r.species_bound_two == 0) {
        magnitude = n + 1;
        sign = 0;
      } else {
        magnitude = n;
        int dclass = (b.d == 1 || b.d == 7) ? 1 : -1;
        int twist = ((n / 2) % 2 == 1) ? -1 : 1;  // kronecker((-1)^{n/2}, 2) sign on d
        // kronecker((-1)^{n/2} d, 2): odd residues: +1 iff = 1,7 mod 8
        int v = (twist == 1) ? b.d : (8 - b.d) % 8;
        sign = (v == 1 || v == 7) ? 1 : -1;
        (void)dclass;
      }
    } else if (bound) {
      switch (r.species_bound) {
        case 0:
          magnitude = n + 1;
          sign = (n % 2 == 1) ? 1 : 0;  // odd n -> even species n+1 signed +
          if (n % 2 == 0) {
            magnitude = n + 1;
            sign = 0;
          }
          break;
        case 1:
          magnitude = (n % 2 == 1) ? n : n + 1;
          sign = 0;
          break;
        case 2:
          magnitude = n + 1;
          sign = (n % 2 == 1) ? ((b.d == 1 || b.d == 7) ? -1 : 1) : 0;
          break;
        default:
          throw std::logic_error("bad bound variant");
      }
    } else if (n % 2 == 1) {
      if (r.species_free_odd == 0) {
        magnitude = n - 1;
        sign = (b.d == 1 || b.d == 7) ? -1 : 1;
        if (magnitude == 0 && sign > 0 && !r.plus_zero_half) sign = -1;
      } else {
        magnitude = n;
        sign = 0;
      }
    } else {
      if (r.species_free_even == 0) {
        if (b.t % 4 == 0) {
          magnitude = n;
          sign = 1;
        } else {
          magnitude = n - 2;
          sign = -1;
        }
      } else {
        magnitude = n - 1;
        sign = 0;
      }
    }
    m *= species_factor(Int(2), magnitude, sign);
  }
  long c = cross_exponent(r, dims);
  if (r.type_factor == 1) c += n_ii_pairs;
  if (r.type_factor == 2) c += n_ii_pairs - bound_two_dims;
  if (c >= 0)
    m *= Rat(pow_int(2, c));
  else
    m /= Rat(pow_int(2, -c));
  m.canonicalize();
  return m;
}

Rat standard_mass(size_t n, const Int& det_abs) {
  // exact zeta/L values; n >= 2
  Rat std_m(1);
  if (n % 2 == 1) {
    size_t s = (n - 1) / 2;
    for (size_t k = 1; k <= s; ++k) {
      Rat z = l_value_1_minus(2 * k, Int(1));  // zeta(1-2k)
      std_m *= abs(z) / 2;
    }
  } else {
    size_t s = n / 2;
    for (size_t k = 1; k + 1 <= s; ++k) {
      Rat z = l_value_1_minus(2 * k, Int(1));
      std_m *= abs(z) / 2;
    }
    Int d0 = fundamental_discriminant((s % 2 == 1) ? Int(-det_abs) : det_abs);
    Rat l = l_value_1_minus(s, d0);
    std_m *= abs(l) / 2;
  }
  std_m.canonicalize();
  return std_m;
}

Rat standard_local(size_t n, const Int& det_abs, const Int& p) {
  Rat denom(2);
  if (n % 2 == 1) {
    size_t s = (n - 1) / 2;
    for (size_t k = 1; k <= s; ++k) {
      Rat f = Rat(1) - Rat(1, pow_int(p, 2 * k));
      denom *= f;
    }
  } else {
    size_t s = n / 2;
    for (size_t k = 1; k + 1 <= s; ++k) {
      Rat f = Rat(1) - Rat(1, pow_int(p, 2 * k));
      denom *= f;
    }
    Int d0 = fundamental_discriminant((s % 2 == 1) ? Int(-det_abs) : det_abs);
    int chi = kronecker(d0, p);
    Rat f = Rat(1) - Rat(chi, pow_int(p, s));
    denom *= f;
  }
  Rat r = Rat(1) / denom;
  r.canonicalize();
  return r;
}

Rat mass_with_rules(const GenusSymbol& g_in, const Rules& rules) {
  if (g_in.sig.first != 0 && g_in.sig.second != 0)
    throw std::domain_error("mass: genus is indefinite");
  size_t n = g_in.rank();
  if (n == 0) throw std::domain_error("mass of the empty genus");
  if (n == 1) return Rat(1, 2);
  // flip to the positive definite orientation
  GenusSymbol g = g_in;
  if (g.sig.first == 0) {
    g.sig = {g_in.sig.second, 0};
    g.det = abs(g_in.det);
    for (auto& b : g.two) {
      if (b.n % 2 == 1) b.d = (b.d * 7) % 8;  // det *= (-1)^n
      b.t = int((8 - (b.t % 8)) % 8);
    }
    for (auto& [p, blocks] : g.odd) {
      int lm1 = legendre(Int(-1), p);
      for (auto& b : blocks)
        if (b.n % 2 == 1) b.eps *= lm1;
    }
  }
  Int det_abs = abs(g.det);
  Rat m = standard_mass(n, det_abs);
  // correction primes: p | 2 det
  std::vector<Int> ps;
  ps.push_back(2);
  for (const auto& [p, blocks] : g.odd)
    if (p != 2) ps.push_back(p);
  for (const Int& p : ps) {
    Rat local = (p == 2) ? local_mass_two(rules, g.two)
                         : local_mass_odd(rules, p, g.odd.at(p));
    m *= local / standard_local(n, det_abs, p);
  }
  m.canonicalize();
  if (m <= 0) throw std::logic_error("mass: nonpositive result");
  return m;
}

}  // namespace mass_detail

Rat mass(const GenusSymbol& g) {
  return mass_detail::mass_with_rules(g, mass_detail::Rules{});
}

}  // namespace latgen
