#include <latgen/genus.hpp>

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace latgen {

namespace {

int mod8(long x) { return int(((x % 8) + 8) % 8); }

// canonical oddity for a scale-1 type I piece of signature sigma
int canonical_t1(int sigma) {
  if (sigma == 5 || sigma == 7) return mod8(sigma - 4);
  return sigma;
}

int pow7(size_t e) { return (e % 2) ? 7 : 1; }

struct BuildError {};

std::vector<TwoBlock> build_two_blocks(size_t rank, const Int& det,
                                       const std::vector<TwoAdicScaleData>& scales) {
  std::vector<TwoBlock> blocks;
  size_t nh = 0;
  for (const auto& s : scales) nh += s.n;
  if (nh > rank) throw BuildError{};
  size_t n0 = rank - nh;
  if (n0 % 2 != 0) throw BuildError{};  // scale-0 of an even lattice is type II
  long v2 = det == 0 ? 0 : valuation(det, 2);
  int unit = mod8(mod_long(divexact(det, pow_int(2, v2)), 8));

  for (const auto& s : scales) {
    TwoBlock b;
    b.k = s.k;
    b.n = s.n;
    b.type_one = s.type_one;
    if (!s.type_one) {
      if (s.sigma != 0 && s.sigma != 4) throw std::logic_error("even 2-adic piece with odd signature");
      b.t = 0;
      b.d = (s.sigma == 0) ? pow7(s.n / 2) : (3 * pow7(s.n / 2 - 1)) % 8;
    } else if (s.k == 1) {
      int tf = canonical_t1(s.sigma);
      if (s.t == tf) {
        b.d = s.d;
        b.t = s.t;
      } else if (mod8(s.t + 4) == tf) {
        b.d = int((s.d * 5) % 8);
        b.t = tf;
      } else {
        throw std::logic_error("scale-1 oddity does not match its signature");
      }
    } else {
      b.d = s.d;
      b.t = s.t;
    }
    blocks.push_back(b);
  }
  // determinant bookkeeping for the unimodular block
  auto prod_d = [&]() {
    int p = 1;
    for (const auto& b : blocks) p = (p * b.d) % 8;
    return p;
  };
  auto flip_scale1 = [&]() -> bool {
    for (auto& b : blocks)
      if (b.k == 1 && b.type_one) {
        b.d = int((b.d * 5) % 8);
        b.t = mod8(b.t + 4);
        return true;
      }
    return false;
  };
  if (n0 == 0) {
    if (prod_d() != unit) {
      if (!flip_scale1() || prod_d() != unit) throw BuildError{};
    }
  } else {
    size_t m = n0 / 2;
    auto allowed = [&](int d0) {
      return d0 == pow7(m) || d0 == (3 * pow7(m - 1)) % 8;
    };
    // d0 = unit / prod_d; odd residues are self-inverse mod 8
    int d0 = int((unit * prod_d()) % 8);
    if (!allowed(d0)) {
      if (!flip_scale1()) throw BuildError{};
      d0 = int((unit * prod_d()) % 8);
      if (!allowed(d0)) throw BuildError{};
    }
    TwoBlock b0;
    b0.k = 0;
    b0.n = n0;
    b0.d = d0;
    b0.type_one = false;
    b0.t = 0;
    blocks.insert(blocks.begin(), b0);
  }
  return blocks;
}

std::vector<OddBlock> build_odd_blocks(size_t rank, const Int& det, const Int& p,
                                       const std::vector<OddScaleData>& scales) {
  std::vector<OddBlock> blocks;
  size_t nh = 0;
  int eps_prod = 1;
  for (const auto& s : scales) {
    nh += s.n;
    eps_prod *= s.eps;
  }
  if (nh > rank) throw BuildError{};
  size_t n0 = rank - nh;
  long vp = valuation(det, p);
  Int unit = divexact(det, pow_int(p, vp));
  int eps_total = legendre(unit, p);
  int eps0 = eps_total * eps_prod;
  if (n0 == 0) {
    if (eps0 != 1) throw BuildError{};
  } else {
    blocks.push_back({0, n0, eps0});
  }
  for (const auto& s : scales) blocks.push_back({s.k, s.n, s.eps});
  return blocks;
}

// global Conway-Sloane mod 8 relation: sig + sum_p excess_p == oddity (mod 8)
bool global_oddity_ok(const GenusSymbol& g) {
  long sig = long(g.sig.first) - long(g.sig.second);
  long oddity = 0;
  for (const auto& b : g.two) {
    oddity += b.t;
    if (b.k % 2 == 1 && (b.d == 3 || b.d == 5)) oddity += 4;
  }
  long excess = 0;
  for (const auto& [p, blocks] : g.odd) {
    long pl = p.get_si();
    for (const auto& b : blocks) {
      // n * (p^k - 1) mod 8
      long pk = 1;
      for (long i = 0; i < b.k; ++i) pk = (pk * pl) % 8;
      excess += long(b.n) * (pk - 1);
      if (b.k % 2 == 1 && b.eps == -1) excess += 4;
    }
  }
  return mod8(sig + excess) == mod8(oddity);
}

std::optional<GenusSymbol> build(std::pair<size_t, size_t> sig, const FiniteQuadraticForm& q) {
  size_t rank = sig.first + sig.second;
  GenusSymbol g;
  g.sig = sig;
  Int order = q.group_order();
  g.det = (sig.second % 2 == 0) ? order : -order;
  if (mod8(milgram_signature(q)) != mod8(long(sig.first) - long(sig.second))) return std::nullopt;
  try {
    for (const Int& p : fqf_primes(q)) {
      if (p == 2) continue;
      auto blocks = build_odd_blocks(rank, g.det, p, odd_scales(q, p));
      g.odd[p] = blocks;
    }
    g.two = build_two_blocks(rank, g.det, two_adic_scales(q));
  } catch (const BuildError&) {
    return std::nullopt;
  }
  g.two_gauss = two_adic_gauss_invariants(q);
  if (!global_oddity_ok(g)) return std::nullopt;
  return g;
}

}  // namespace

std::string GenusSymbol::to_string() const {
  std::ostringstream os;
  os << "II_(" << sig.first << "," << sig.second << ")";
  for (const auto& b : two) {
    if (b.k == 0) continue;
    os << " " << (Int(1) << b.k).get_str() << "^" << ((b.d == 1 || b.d == 7) ? "+" : "-") << b.n
       << "_" << (b.type_one ? "I" : "II");
  }
  for (const auto& [p, blocks] : odd) {
    for (const auto& b : blocks) {
      if (b.k == 0) continue;
      os << " " << pow_int(p, b.k).get_str() << "^" << (b.eps > 0 ? "+" : "-") << b.n;
    }
  }
  return os.str();
}

bool GenusSymbol::operator==(const GenusSymbol& o) const { return genus_equal(*this, o); }

bool genus_equal(const GenusSymbol& a, const GenusSymbol& b) {
  if (a.sig != b.sig || a.det != b.det) return false;
  if (a.odd != b.odd) return false;
  // 2-adic: compare scale ranks/types plus the intrinsic form invariants
  auto profile = [](const GenusSymbol& g) {
    std::vector<std::tuple<long, size_t, bool>> v;
    for (const auto& blk : g.two)
      if (blk.k > 0) v.push_back({blk.k, blk.n, blk.type_one});
    return v;
  };
  if (profile(a) != profile(b)) return false;
  return a.two_gauss == b.two_gauss;
}

GenusSymbol genus_symbol(const GramLattice& l) {
  auto g = build(signature(l), discriminant_form(l));
  if (!g) throw std::logic_error("genus_symbol: inconsistent lattice data");
  return *g;
}

std::optional<GenusSymbol> genus_from_form(std::pair<size_t, size_t> sig,
                                           const FiniteQuadraticForm& q) {
  return build(sig, q);
}

bool genus_exists(std::pair<size_t, size_t> sig, const FiniteQuadraticForm& q) {
  return build(sig, q).has_value();
}

namespace {

// assemble a 2-elementary finite quadratic form from block counts
FiniteQuadraticForm two_elementary_form(size_t w1, size_t w3, size_t u, size_t v) {
  size_t m = w1 + w3 + 2 * u + 2 * v;
  IVec orders(m, Int(2));
  QVec q(m, Rat(0));
  QMat b(m, m);
  size_t i = 0;
  for (size_t t = 0; t < w1; ++t, ++i) {
    q[i] = Rat(1, 2);
    b(i, i) = Rat(1, 2);
  }
  for (size_t t = 0; t < w3; ++t, ++i) {
    q[i] = Rat(3, 2);
    b(i, i) = Rat(1, 2);
  }
  for (size_t t = 0; t < u; ++t, i += 2) {
    b(i, i + 1) = b(i + 1, i) = Rat(1, 2);
  }
  for (size_t t = 0; t < v; ++t, i += 2) {
    q[i] = q[i + 1] = Rat(1);
    b(i, i) = b(i + 1, i + 1) = Rat(0);
    b(i, i + 1) = b(i + 1, i) = Rat(1, 2);
  }
  // b(i,i) must equal q(i) mod 1
  for (size_t t = 0; t < m; ++t) b(t, t) = mod1Z(q[t]);
  return FiniteQuadraticForm(orders, q, b);
}

}  // namespace

bool nikulin_two_elementary_exists(std::pair<size_t, size_t> sig, size_t a, int delta) {
  size_t rank = sig.first + sig.second;
  if (a > rank) return false;
  int sigma = mod8(long(sig.first) - long(sig.second));
  if (a == 0) {
    return delta == 0 && genus_exists(sig, FiniteQuadraticForm());
  }
  if (delta == 0) {
    if (a % 2 != 0) return false;
    if (sigma == 0) return genus_exists(sig, two_elementary_form(0, 0, a / 2, 0));
    if (sigma == 4) return genus_exists(sig, two_elementary_form(0, 0, a / 2 - 1, 1));
    return false;
  }
  // delta = 1: find w1^alpha w3^beta u^x v^y with alpha+beta >= 1 matching sigma
  for (size_t alpha = 0; alpha <= a; ++alpha) {
    for (size_t beta = 0; alpha + beta <= a; ++beta) {
      if (alpha + beta == 0) continue;
      size_t rest = a - alpha - beta;
      if (rest % 2 != 0) continue;
      for (size_t y = 0; y <= rest / 2 && y <= 1; ++y) {
        size_t x = rest / 2 - y;
        if (mod8(long(alpha) - long(beta) + 4 * long(y)) != sigma) continue;
        if (genus_exists(sig, two_elementary_form(alpha, beta, x, y))) return true;
      }
    }
  }
  return false;
}

bool splits_U(size_t r, size_t a, int delta) {
  if (r > 21) throw std::invalid_argument("splits_U: rank out of range");
  if (!nikulin_two_elementary_exists({3, 21 - r}, a, delta))
    throw std::invalid_argument("splits_U: inconsistent invariants");
  if (!(r <= 20 && a <= 22 - r)) return false;
  if (a == 22 - r && delta == 0 && r % 8 != 2) return false;
  return true;
}

std::vector<InvariantCandidate> candidate_invariant_lattices() {
  std::vector<InvariantCandidate> out;
  GramLattice u2 = catalog("u", 2);
  GramLattice u23 = direct_sum(direct_sum(u2, u2), u2);
  out.push_back({u23, 18});
  out.push_back({direct_sum(u23, catalog("d4")), 14});
  for (size_t r = 12; r <= 21; ++r) {
    GramLattice m = catalog("<2>");
    for (int i = 0; i < 2; ++i) m = direct_sum(m, catalog("<2>"));
    for (size_t i = 0; i < 21 - r; ++i) m = direct_sum(m, catalog("<-2>"));
    out.push_back({m, r});
  }
  return out;
}

std::vector<GenusSymbol> target_genera() {
  std::vector<GenusSymbol> out;
  FiniteQuadraticForm qa2 = discriminant_form(catalog("a2"));
  for (const auto& cand : candidate_invariant_lattices()) {
    FiniteQuadraticForm q = fqf_direct_sum(qa2, fqf_negate(discriminant_form(cand.lattice)));
    auto g = genus_from_form({0, cand.r}, q);
    if (!g) throw std::logic_error("target genus unexpectedly empty");
    out.push_back(*g);
  }
  return out;
}

}  // namespace latgen
