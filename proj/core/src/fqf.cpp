#include <latgen/fqf.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

namespace latgen {

namespace {

// ---- exact cyclotomic arithmetic in Z[zeta_{2^t}] = Z[x]/(x^{2^{t-1}}+1) ----

struct Cyc {
  long t = 3;  // working with 2^t-th roots of unity, t >= 3
  IVec v;      // coefficients of x^0 .. x^{2^{t-1}-1}

  explicit Cyc(long tt) : t(std::max(tt, 3l)), v(size_t(1) << (t - 1), Int(0)) {}

  // add c * zeta^{a} with zeta of order 2^t
  void add_root(Int a, const Int& c) {
    long m = 1l << t;
    long h = m / 2;
    long e = mod_long(a, m);
    if (e >= h)
      v[e - h] -= c;
    else
      v[e] += c;
  }

  bool operator==(const Cyc& o) const { return t == o.t && v == o.v; }

  // re-embed into Z[zeta_{2^T}] for T >= t
  Cyc lift(long T) const {
    Cyc r(T);
    long f = 1l << (T - t);
    for (size_t i = 0; i < v.size(); ++i)
      if (v[i] != 0) r.add_root(Int(long(i) * f), v[i]);
    return r;
  }

  bool is_zero() const {
    for (const Int& x : v)
      if (x != 0) return false;
    return true;
  }
};

// zeta_8^s inside Z[zeta_{2^t}] (t >= 3) scaled by c
void add_zeta8_power(Cyc& cy, long s, const Int& c) {
  long f = 1l << (cy.t - 3);
  cy.add_root(Int(((s % 8) + 8) % 8 * f), c);
}

// candidate value 2^{e/2} * zeta_8^{sigma}, e = log2 of the squared magnitude
Cyc gauss_candidate(long t, long e2, int sigma) {
  // e2 = log2(|G|^2); |G| = 2^{e2/2}
  Cyc c(t);
  if (e2 % 2 == 0) {
    Int mag = pow_int(2, e2 / 2);
    add_zeta8_power(c, sigma, mag);
  } else {
    // 2^{(e2-1)/2} * sqrt(2) * zeta8^sigma; sqrt(2) = zeta8 + zeta8^{-1}
    Int mag = pow_int(2, (e2 - 1) / 2);
    add_zeta8_power(c, sigma + 1, mag);
    add_zeta8_power(c, sigma - 1, mag);
  }
  return c;
}

// phase extraction: g must equal 2^{e2/2} zeta8^sigma for some sigma
int gauss_phase(const Cyc& g, long e2) {
  for (int s = 0; s < 8; ++s) {
    if (g == gauss_candidate(g.t, e2, s)) return s;
  }
  throw std::logic_error("gauss_phase: sum is not of root-of-unity shape");
}

Rat canon_q(const Rat& q) { return mod2Z(q); }
Rat canon_b(const Rat& b) { return mod1Z(b); }

}  // namespace

FiniteQuadraticForm::FiniteQuadraticForm(IVec orders, QVec q, QMat b, std::optional<QMat> coords)
    : orders_(std::move(orders)), q_(std::move(q)), b_(std::move(b)), coords_(std::move(coords)) {
  size_t m = orders_.size();
  if (q_.size() != m || b_.rows() != m || b_.cols() != m)
    throw std::invalid_argument("fqf: inconsistent sizes");
  for (size_t i = 0; i < m; ++i) {
    if (orders_[i] < 2) throw std::invalid_argument("fqf: generator order < 2");
    q_[i] = canon_q(q_[i]);
  }
  for (size_t i = 0; i < m; ++i)
    for (size_t j = 0; j < m; ++j) b_(i, j) = canon_b(b_(i, j));
  // consistency: b symmetric, b(i,i) = q(i) mod 1, orders kill values
  for (size_t i = 0; i < m; ++i) {
    if (canon_b(q_[i] - b_(i, i)) != 0) throw std::invalid_argument("fqf: b(i,i) != q(i) mod 1");
    Rat qn = q_[i] * Rat(orders_[i] * orders_[i]);
    qn.canonicalize();
    if (mod2Z(qn) != 0) throw std::invalid_argument("fqf: q not defined on the group");
    for (size_t j = 0; j < m; ++j) {
      if (b_(i, j) != b_(j, i)) throw std::invalid_argument("fqf: b not symmetric");
      Rat bn = b_(i, j) * Rat(orders_[i]);
      bn.canonicalize();
      if (mod1Z(bn) != 0) throw std::invalid_argument("fqf: b not defined on the group");
    }
  }
}

Int FiniteQuadraticForm::group_order() const {
  Int o(1);
  for (const Int& d : orders_) o *= d;
  return o;
}

Rat FiniteQuadraticForm::q_of(const IVec& c) const {
  size_t m = orders_.size();
  if (c.size() != m) throw std::invalid_argument("q_of: dimension mismatch");
  Rat s(0);
  for (size_t i = 0; i < m; ++i) {
    if (c[i] == 0) continue;
    s += Rat(c[i] * c[i]) * q_[i];
    for (size_t j = i + 1; j < m; ++j)
      if (c[j] != 0) s += Rat(2 * c[i] * c[j]) * b_(i, j);
  }
  s.canonicalize();
  return mod2Z(s);
}

Rat FiniteQuadraticForm::b_of(const IVec& x, const IVec& y) const {
  size_t m = orders_.size();
  Rat s(0);
  for (size_t i = 0; i < m; ++i)
    for (size_t j = 0; j < m; ++j)
      if (x[i] != 0 && y[j] != 0) s += Rat(x[i] * y[j]) * b_(i, j);
  s.canonicalize();
  return mod1Z(s);
}

Int FiniteQuadraticForm::element_order(const IVec& c) const {
  Int o(1);
  for (size_t i = 0; i < orders_.size(); ++i) {
    if (mod(c[i], orders_[i]) == 0) continue;
    o = lcm(o, divexact(orders_[i], gcd(c[i], orders_[i])));
  }
  return o;
}

const QVec FiniteQuadraticForm::generator_coords(size_t i) const {
  if (!coords_) throw std::logic_error("fqf: no source-lattice coordinates");
  QVec r(coords_->cols());
  for (size_t j = 0; j < coords_->cols(); ++j) r[j] = (*coords_)(i, j);
  return r;
}

FiniteQuadraticForm discriminant_form(const GramLattice& l) {
  size_t n = l.rank();
  if (n == 0) return FiniteQuadraticForm();
  SnfResult s = snf(l.gram());
  // generator i of A_L = column i of V divided by s_i (coordinates in the
  // lattice basis, as an element of L*)
  std::vector<size_t> idx;
  for (size_t i = 0; i < n; ++i)
    if (s.s(i, i) > 1) idx.push_back(i);
  size_t m = idx.size();
  IVec orders(m);
  QMat coords(m, n);
  for (size_t a = 0; a < m; ++a) {
    size_t i = idx[a];
    orders[a] = s.s(i, i);
    for (size_t j = 0; j < n; ++j) {
      coords(a, j) = Rat(s.v(j, i), s.s(i, i));
      coords(a, j).canonicalize();
    }
  }
  QMat g = int_to_rat(l.gram());
  QVec q(m);
  QMat b(m, m);
  for (size_t a = 0; a < m; ++a) {
    QVec ra = coords.row(a);
    q[a] = mod2Z(inner(ra, g, ra));
    for (size_t c = a; c < m; ++c) {
      QVec rc = coords.row(c);
      b(a, c) = mod1Z(inner(ra, g, rc));
      b(c, a) = b(a, c);
    }
  }
  return FiniteQuadraticForm(orders, q, b, coords);
}

TwoElementaryInvariants two_elementary_invariants(const GramLattice& l) {
  FiniteQuadraticForm f = discriminant_form(l);
  for (size_t i = 0; i < f.generator_count(); ++i)
    if (f.order(i) != 2) throw std::domain_error("lattice is not 2-elementary");
  int delta = 0;
  for (size_t i = 0; i < f.generator_count(); ++i)
    if (Int(f.q_value(i).get_den()) != 1) delta = 1;
  return {l.rank(), f.generator_count(), delta};
}

namespace {

// rebuild a form with a divisibility-chain generator set by CRT-merging the
// p-primary cyclic pieces
FiniteQuadraticForm normalize_chain(const IVec& orders, const QVec& q, const QMat& b,
                                    const std::optional<QMat>& coords) {
  size_t m = orders.size();
  FiniteQuadraticForm raw(orders, q, b);  // validates; used for q_of/b_of
  // p-primary cyclic pieces: (prime, order p^v, coefficient vector)
  struct Piece {
    Int p;
    Int ord;
    IVec c;
  };
  std::vector<Piece> pieces;
  for (size_t i = 0; i < m; ++i) {
    Int d = orders[i];
    Int rem = d;
    for (Int p(2); rem > 1; p += 1) {
      if (mod(rem, p) != 0) continue;
      long v = 0;
      while (mod(rem, p) == 0) {
        rem = divexact(rem, p);
        ++v;
      }
      Int pv = pow_int(p, v);
      IVec c(m, Int(0));
      c[i] = divexact(d, pv);
      pieces.push_back({p, pv, c});
    }
  }
  // group by prime, sort descending by order
  std::map<Int, std::vector<Piece>> per_p;
  for (auto& pc : pieces) per_p[pc.p].push_back(pc);
  size_t chain_len = 0;
  for (auto& [p, v] : per_p) {
    std::sort(v.begin(), v.end(), [](const Piece& a, const Piece& b) { return a.ord > b.ord; });
    chain_len = std::max(chain_len, v.size());
  }
  // slot j (0 = largest) combines the j-th largest piece of each prime
  size_t mm = chain_len;
  std::vector<IVec> gens(mm, IVec(m, Int(0)));
  IVec new_orders(mm, Int(1));
  for (auto& [p, v] : per_p) {
    for (size_t j = 0; j < v.size(); ++j) {
      for (size_t t = 0; t < m; ++t) gens[j][t] += v[j].c[t];
      new_orders[j] *= v[j].ord;
    }
  }
  // ascending chain
  std::reverse(gens.begin(), gens.end());
  std::reverse(new_orders.begin(), new_orders.end());
  QVec nq(mm);
  QMat nb(mm, mm);
  for (size_t i = 0; i < mm; ++i) {
    nq[i] = raw.q_of(gens[i]);
    for (size_t j = i; j < mm; ++j) {
      nb(i, j) = raw.b_of(gens[i], gens[j]);
      nb(j, i) = nb(i, j);
    }
  }
  std::optional<QMat> nc;
  if (coords) {
    QMat c(mm, coords->cols());
    for (size_t i = 0; i < mm; ++i)
      for (size_t j = 0; j < coords->cols(); ++j) {
        Rat s(0);
        for (size_t t = 0; t < m; ++t) s += Rat(gens[i][t]) * (*coords)(t, j);
        s.canonicalize();
        c(i, j) = s;
      }
    nc = c;
  }
  return FiniteQuadraticForm(new_orders, nq, nb, nc);
}

}  // namespace

FiniteQuadraticForm fqf_direct_sum(const FiniteQuadraticForm& a, const FiniteQuadraticForm& b) {
  size_t ma = a.generator_count(), mb = b.generator_count();
  IVec orders(ma + mb);
  QVec q(ma + mb);
  QMat bm(ma + mb, ma + mb);
  for (size_t i = 0; i < ma; ++i) {
    orders[i] = a.order(i);
    q[i] = a.q_value(i);
  }
  for (size_t i = 0; i < mb; ++i) {
    orders[ma + i] = b.order(i);
    q[ma + i] = b.q_value(i);
  }
  for (size_t i = 0; i < ma; ++i)
    for (size_t j = 0; j < ma; ++j) bm(i, j) = a.b_matrix()(i, j);
  for (size_t i = 0; i < mb; ++i)
    for (size_t j = 0; j < mb; ++j) bm(ma + i, ma + j) = b.b_matrix()(i, j);
  return normalize_chain(orders, q, bm, std::nullopt);
}

FiniteQuadraticForm fqf_negate(const FiniteQuadraticForm& a) {
  size_t m = a.generator_count();
  QVec q(m);
  QMat b(m, m);
  for (size_t i = 0; i < m; ++i) q[i] = mod2Z(-a.q_value(i));
  for (size_t i = 0; i < m; ++i)
    for (size_t j = 0; j < m; ++j) b(i, j) = mod1Z(-a.b_matrix()(i, j));
  std::optional<QMat> coords;
  return FiniteQuadraticForm(a.orders(), q, b, coords);
}

std::vector<Int> fqf_primes(const FiniteQuadraticForm& f) {
  std::set<Int> ps;
  for (size_t i = 0; i < f.generator_count(); ++i) {
    Int rem = f.order(i);
    for (Int p(2); rem > 1; p += 1) {
      if (mod(rem, p) != 0) continue;
      ps.insert(p);
      while (mod(rem, p) == 0) rem = divexact(rem, p);
    }
  }
  return std::vector<Int>(ps.begin(), ps.end());
}

FiniteQuadraticForm p_primary_part(const FiniteQuadraticForm& f, const Int& p) {
  size_t m = f.generator_count();
  std::vector<IVec> gens;
  IVec orders;
  for (size_t i = 0; i < m; ++i) {
    Int d = f.order(i);
    long v = 0;
    Int rem = d;
    while (mod(rem, p) == 0) {
      rem = divexact(rem, p);
      ++v;
    }
    if (v == 0) continue;
    Int pv = pow_int(p, v);
    IVec c(m, Int(0));
    c[i] = divexact(d, pv);
    gens.push_back(c);
    orders.push_back(pv);
  }
  size_t k = gens.size();
  QVec q(k);
  QMat b(k, k);
  for (size_t i = 0; i < k; ++i) {
    q[i] = f.q_of(gens[i]);
    for (size_t j = i; j < k; ++j) {
      b(i, j) = f.b_of(gens[i], gens[j]);
      b(j, i) = b(i, j);
    }
  }
  return FiniteQuadraticForm(orders, q, b);
}

namespace {

// ---- deterministic orthogonal splitting of a p-primary form ----

struct SplitFactor {
  long k = 0;            // scale p^k
  int kind = 0;          // 0 = rank-1 (W), 1 = U block, 2 = V block
  Int label = 1;         // W: numerator of q = label / p^k  (odd for p = 2)
  std::vector<IVec> gens;  // 1 or 2 coefficient vectors in the p-part basis
};

// order of x in the p-part form f (p-power)
long ordk(const FiniteQuadraticForm& f, const IVec& x, const Int& p) {
  Int o = f.element_order(x);
  return o == 1 ? 0 : valuation(o, p);
}

// denominator valuation of b(x,y)
long den_val(const Rat& b, const Int& p) {
  if (b == 0) return 0;
  return valuation(Int(b.get_den()), p);
}

std::vector<SplitFactor> split_p_part(const FiniteQuadraticForm& f, const Int& p) {
  std::vector<SplitFactor> out;
  if (f.trivial()) return out;
  size_t m = f.generator_count();
  std::vector<IVec> cur;
  for (size_t i = 0; i < m; ++i) {
    IVec e(m, Int(0));
    e[i] = 1;
    cur.push_back(e);
  }
  auto reduce_coeffs = [&](IVec& x) {
    for (size_t i = 0; i < m; ++i) x[i] = mod(x[i], f.order(i));
  };
  while (true) {
    // drop trivial generators
    std::vector<IVec> nz;
    for (auto& g : cur) {
      IVec h = g;
      reduce_coeffs(h);
      if (f.element_order(h) > 1) nz.push_back(h);
    }
    cur = nz;
    if (cur.empty()) break;
    long k = 0;
    for (auto& g : cur) k = std::max(k, ordk(f, g, p));
    Int pk = pow_int(p, k);
    // rank-1 split: a max-order generator with b(g,g) of full denominator
    long pick = -1;
    for (size_t i = 0; i < cur.size(); ++i) {
      if (ordk(f, cur[i], p) != k) continue;
      if (den_val(f.b_of(cur[i], cur[i]), p) == k) {
        pick = long(i);
        break;
      }
    }
    if (pick < 0 && p != 2) {
      // p odd: mix two max-order generators with a full-denominator pairing
      for (size_t i = 0; i < cur.size() && pick < 0; ++i) {
        if (ordk(f, cur[i], p) != k) continue;
        for (size_t j = 0; j < cur.size(); ++j) {
          if (j == i || ordk(f, cur[j], p) != k) continue;
          if (den_val(f.b_of(cur[i], cur[j]), p) == k) {
            for (size_t t = 0; t < m; ++t) cur[i][t] += cur[j][t];
            reduce_coeffs(cur[i]);
            pick = long(i);
            break;
          }
        }
      }
      if (pick < 0) throw std::logic_error("split: odd part not diagonalizable");
    }
    if (pick >= 0) {
      IVec g = cur[pick];
      Rat bgg = f.b_of(g, g);
      // q(g) = label / p^k mod 2Z
      Rat qg = f.q_of(g);
      Int label = Int(qg.get_num()) * divexact(pk, Int(qg.get_den()));
      SplitFactor fac{k, 0, mod(label, 2 * pk), {g}};
      out.push_back(fac);
      // complement corrections: h -= c*g with c = b(g,h)/b(g,g) in Z/p^k
      Int u = Int(bgg.get_num()) * divexact(pk, Int(bgg.get_den()));  // unit mod p^k
      Int uinv = invmod(mod(u, pk), pk);
      std::vector<IVec> rest;
      for (size_t i = 0; i < cur.size(); ++i) {
        if (long(i) == pick) continue;
        IVec h = cur[i];
        Rat bgh = f.b_of(g, h);
        if (bgh != 0) {
          Int w = Int(bgh.get_num()) * divexact(pk, Int(bgh.get_den()));
          Int c = mod(w * uinv, pk);
          for (size_t t = 0; t < m; ++t) h[t] -= c * g[t];
          reduce_coeffs(h);
        }
        rest.push_back(h);
      }
      cur = rest;
      continue;
    }
    // p = 2, type II at this scale: split a 2x2 block
    long gi = -1, hi = -1;
    for (size_t i = 0; i < cur.size() && gi < 0; ++i) {
      if (ordk(f, cur[i], p) != k) continue;
      for (size_t j = 0; j < cur.size(); ++j) {
        if (j == i) continue;
        if (den_val(f.b_of(cur[i], cur[j]), p) == k) {
          gi = long(i);
          hi = long(j);
          break;
        }
      }
    }
    if (gi < 0) throw std::logic_error("split: degenerate 2-adic scale");
    IVec g = cur[gi], h = cur[hi];
    // block pairing matrix scaled by 2^k, entries mod 2^k
    auto sc = [&](const Rat& r) {
      return mod(Int(r.get_num()) * divexact(pk, Int(r.get_den())), pk);
    };
    Int a11 = sc(f.b_of(g, g)), a12 = sc(f.b_of(g, h)), a22 = sc(f.b_of(h, h));
    Int dd = mod(a11 * a22 - a12 * a12, pk);
    if (gcd(dd, pk) != 1) throw std::logic_error("split: 2x2 block not unimodular");
    Int dinv = invmod(dd, pk);
    SplitFactor fac{k, 1, 1, {g, h}};
    // classify U vs V by the Gauss signature of the block (0 vs 4), done later
    fac.kind = 1;
    out.push_back(fac);
    std::vector<IVec> rest;
    for (size_t i = 0; i < cur.size(); ++i) {
      if (long(i) == gi || long(i) == hi) continue;
      IVec z = cur[i];
      Int b1 = sc(f.b_of(g, z)), b2 = sc(f.b_of(h, z));
      // [alpha beta] = [b1 b2] * inv([[a11 a12],[a12 a22]])
      Int alpha = mod((b1 * a22 - b2 * a12) * dinv, pk);
      Int beta = mod((b2 * a11 - b1 * a12) * dinv, pk);
      for (size_t t = 0; t < m; ++t) z[t] -= alpha * g[t] + beta * h[t];
      reduce_coeffs(z);
      rest.push_back(z);
    }
    cur = rest;
  }
  return out;
}

// exact Gauss sum of a collection of split factors of one scale (p = 2)
Cyc factor_gauss(const FiniteQuadraticForm& f, const std::vector<const SplitFactor*>& facs,
                 long t) {
  Cyc total(t);
  bool first = true;
  for (const SplitFactor* fac : facs) {
    Cyc part(t);
    long pk = 1l << fac->k;
    if (fac->kind == 0) {
      const IVec& g = fac->gens[0];
      Rat qg = f.q_of(g);
      for (long x = 0; x < pk; ++x) {
        Rat qq = qg * Rat(Int(x) * Int(x));
        qq.canonicalize();
        qq = mod2Z(qq);
        // e^{i pi q} = zeta_{2^t}^{ q * 2^{t-1} }
        Rat e = qq * Rat(pow_int(2, t - 1));
        e.canonicalize();
        part.add_root(Int(e.get_num()), 1);  // e is integral: q has 2-power denom <= 2^{t-1}
      }
    } else {
      const IVec& g = fac->gens[0];
      const IVec& h = fac->gens[1];
      Rat qg = f.q_of(g), qh = f.q_of(h), bgh = f.b_of(g, h);
      for (long x = 0; x < pk; ++x)
        for (long y = 0; y < pk; ++y) {
          Rat qq = qg * Rat(Int(x) * Int(x)) + qh * Rat(Int(y) * Int(y)) +
                   bgh * Rat(2 * Int(x) * Int(y));
          qq.canonicalize();
          qq = mod2Z(qq);
          Rat e = qq * Rat(pow_int(2, t - 1));
          e.canonicalize();
          part.add_root(Int(e.get_num()), 1);
        }
    }
    if (first) {
      total = part;
      first = false;
    } else {
      // multiply total *= part in the cyclotomic ring
      Cyc prod(t);
      long h2 = 1l << (t - 1);
      for (long i = 0; i < h2; ++i) {
        if (total.v[i] == 0) continue;
        for (long j = 0; j < h2; ++j) {
          if (part.v[j] == 0) continue;
          prod.add_root(Int(i + j), total.v[i] * part.v[j]);
        }
      }
      total = prod;
    }
  }
  return total;
}

}  // namespace

std::vector<OddScaleData> odd_scales(const FiniteQuadraticForm& f, const Int& p) {
  if (p == 2) throw std::invalid_argument("odd_scales: p must be odd");
  FiniteQuadraticForm fp = p_primary_part(f, p);
  std::vector<SplitFactor> facs = split_p_part(fp, p);
  std::map<long, OddScaleData> agg;
  for (const auto& fac : facs) {
    Int pk = pow_int(p, fac.k);
    // q(g) = num / p^k with num coprime to p
    Int num = fac.label;
    int eps = legendre(num, p);
    // jacobi(num/2, p^k) = (legendre(num,p) * legendre(2,p))^k
    int base = legendre(num, p) * legendre(2, p);
    int jac = (fac.k % 2 == 1) ? base : 1;
    int sigma;
    if (mod_long(pk, 4) == 1)
      sigma = (jac == 1) ? 0 : 4;
    else
      sigma = (jac == 1) ? 2 : 6;
    auto& d = agg[fac.k];
    d.k = fac.k;
    d.n += 1;
    d.eps *= eps;
    d.sigma = (d.sigma + sigma) % 8;
  }
  std::vector<OddScaleData> out;
  for (auto& [k, d] : agg) out.push_back(d);
  return out;
}

std::vector<TwoAdicScaleData> two_adic_scales(const FiniteQuadraticForm& f) {
  FiniteQuadraticForm f2 = p_primary_part(f, 2);
  std::vector<SplitFactor> facs = split_p_part(f2, 2);
  std::map<long, std::vector<const SplitFactor*>> per_k;
  for (auto& fac : facs) per_k[fac.k].push_back(&fac);
  std::vector<TwoAdicScaleData> out;
  for (auto& [k, fl] : per_k) {
    TwoAdicScaleData d;
    d.k = k;
    long t = k + 2;  // q-values have denominator 2^k, phases live in zeta_{2^{k+1}}
    long d_acc = 1, t_acc = 0;
    for (const SplitFactor* fac : fl) {
      if (fac->kind == 0) {
        d.n += 1;
        d.type_one = true;
        // lattice unit label u = label^{-1}; known mod 4 at scale 2, mod 8 above
        long mod_u = (k == 1) ? 4 : 8;
        Int u = invmod(mod(fac->label, Int(mod_u)), Int(mod_u));
        long ul = mod_long(u, mod_u);  // in {1,3} at scale 2
        d_acc = (d_acc * ul) % 8;
        t_acc = (t_acc + ul) % 8;
      } else {
        d.n += 2;
      }
    }
    // sigma of the whole scale piece by exact Gauss sum
    long tt = std::max<long>(t, 3);
    Cyc gs = factor_gauss(f2, fl, tt);
    long e2 = 0;  // log2(|piece|)
    Int o(1);
    for (const SplitFactor* fac : fl) o *= (fac->kind == 0) ? (Int(1) << fac->k) : (Int(1) << (2 * fac->k));
    e2 = valuation(o, 2);
    d.sigma = gauss_phase(gs, e2);
    // classify the 2x2 even blocks U vs V via per-block Gauss signatures
    for (const SplitFactor* fac : fl) {
      if (fac->kind == 0) continue;
      Cyc bg = factor_gauss(f2, {fac}, tt);
      int s = gauss_phase(bg, 2 * fac->k);
      if (s == 0) {
        d_acc = (d_acc * 7) % 8;
      } else if (s == 4) {
        d_acc = (d_acc * 3) % 8;
      } else {
        throw std::logic_error("two_adic_scales: even block with odd signature");
      }
    }
    d.d = int(d_acc);
    d.t = int(t_acc);
    out.push_back(d);
  }
  return out;
}

std::vector<IVec> two_adic_gauss_invariants(const FiniteQuadraticForm& f) {
  FiniteQuadraticForm f2 = p_primary_part(f, 2);
  std::vector<IVec> out;
  if (f2.trivial()) return out;
  size_t m = f2.generator_count();
  long v = 0;
  for (size_t i = 0; i < m; ++i) v = std::max(v, valuation(f2.order(i), 2));
  long t = std::max<long>(v + 1, 3);
  // bucket q-values: q = num / 2^v mod 2Z -> exponent num * 2^{t-1-v} of zeta_{2^t}
  std::vector<Int> counts(size_t(1) << t, Int(0));
  // enumerate the group incrementally
  IVec c(m, Int(0));
  Int total = f2.group_order();
  if (total > (Int(1) << 22)) throw std::domain_error("gauss invariants: 2-part too large");
  // plain odometer enumeration with direct q evaluation (groups here are small)
  while (true) {
    Rat q = f2.q_of(c);
    Rat e = q * Rat(pow_int(2, t - 1));
    e.canonicalize();
    counts[mod_long(Int(e.get_num()), 1l << t)] += 1;
    size_t i = 0;
    while (i < m) {
      c[i] += 1;
      if (c[i] < f2.order(i)) break;
      c[i] = 0;
      ++i;
    }
    if (i == m) break;
  }
  for (long j = 1; j <= (1l << v); j *= 2) {
    Cyc g(t);
    for (long r = 0; r < (1l << t); ++r)
      if (counts[r] != 0) g.add_root(Int(j) * r, counts[r]);
    out.push_back(g.v);
  }
  return out;
}

int milgram_signature(const FiniteQuadraticForm& f) {
  int sigma = 0;
  for (const Int& p : fqf_primes(f)) {
    if (p == 2) {
      for (const auto& d : two_adic_scales(f)) sigma = (sigma + d.sigma) % 8;
    } else {
      for (const auto& d : odd_scales(f, p)) sigma = (sigma + d.sigma) % 8;
    }
  }
  return sigma;
}

bool fqf_isomorphic(const FiniteQuadraticForm& a, const FiniteQuadraticForm& b) {
  IVec oa = a.orders(), ob = b.orders();
  if (oa != ob) return false;  // divisibility chains are canonical
  std::vector<Int> ps = fqf_primes(a);
  for (const Int& p : ps) {
    if (p == 2) continue;
    auto sa = odd_scales(a, p), sb = odd_scales(b, p);
    if (sa.size() != sb.size()) return false;
    for (size_t i = 0; i < sa.size(); ++i)
      if (sa[i].k != sb[i].k || sa[i].n != sb[i].n || sa[i].eps != sb[i].eps) return false;
  }
  // 2-part: scale ranks/types plus the full Gauss-sum invariants
  auto ta = two_adic_scales(a), tb = two_adic_scales(b);
  if (ta.size() != tb.size()) return false;
  for (size_t i = 0; i < ta.size(); ++i)
    if (ta[i].k != tb[i].k || ta[i].n != tb[i].n || ta[i].type_one != tb[i].type_one)
      return false;
  if (two_adic_gauss_invariants(a) != two_adic_gauss_invariants(b)) return false;
  return true;
}

std::vector<IVec> isotropic_two_torsion(const FiniteQuadraticForm& f) {
  size_t m = f.generator_count();
  std::vector<size_t> even_idx;
  for (size_t i = 0; i < m; ++i)
    if (is_even(f.order(i))) even_idx.push_back(i);
  std::vector<IVec> out;
  if (even_idx.size() > 26) throw std::domain_error("two-torsion too large to enumerate");
  for (unsigned long mask = 1; mask < (1ul << even_idx.size()); ++mask) {
    IVec c(m, Int(0));
    for (size_t t = 0; t < even_idx.size(); ++t)
      if ((mask >> t) & 1) {
        size_t i = even_idx[t];
        c[i] = divexact(f.order(i), Int(2));
      }
    if (f.q_of(c) == 0) out.push_back(c);
  }
  return out;
}

bool fqf_brute_force_isomorphic(const FiniteQuadraticForm& a, const FiniteQuadraticForm& b) {
  if (a.orders() != b.orders()) return false;
  if (a.trivial()) return true;
  Int oa = a.group_order();
  if (oa > 8192) throw std::domain_error("brute force isomorphism: group too large");
  size_t m = a.generator_count();
  // enumerate all elements of b, bucketed by (order, q)
  std::vector<IVec> elems;
  {
    IVec c(m, Int(0));
    while (true) {
      elems.push_back(c);
      size_t i = 0;
      while (i < m) {
        c[i] += 1;
        if (c[i] < b.order(i)) break;
        c[i] = 0;
        ++i;
      }
      if (i == m) break;
    }
  }
  std::map<std::pair<std::string, std::string>, std::vector<size_t>> buckets;
  for (size_t e = 0; e < elems.size(); ++e) {
    Int ord = b.element_order(elems[e]);
    Rat q = b.q_of(elems[e]);
    buckets[{ord.get_str(), to_string(q)}].push_back(e);
  }
  // backtracking: map generator i of a to an element of b with equal order/q
  std::vector<size_t> img(m, 0);
  std::function<bool(size_t)> rec = [&](size_t i) -> bool {
    if (i == m) {
      // check generation: HNF of images against relation lattice
      IMat gens(2 * m, m);
      for (size_t r = 0; r < m; ++r)
        for (size_t j = 0; j < m; ++j) gens(r, j) = elems[img[r]][j];
      for (size_t r = 0; r < m; ++r) gens(m + r, r) = b.order(r);
      Int covol(1);
      for (const Int& d : elementary_divisors(gens)) covol *= d;
      Int full(1);
      for (size_t r = 0; r < m; ++r) full *= b.order(r);
      // subgroup generated has order full / covol ... needs == full, i.e. covol == 1
      return covol == 1;
    }
    Int ordi = a.order(i);
    Rat qi = a.q_value(i);
    auto it = buckets.find({ordi.get_str(), to_string(qi)});
    if (it == buckets.end()) return false;
    for (size_t e : it->second) {
      bool ok = true;
      for (size_t j = 0; j < i && ok; ++j) {
        if (a.b_matrix()(i, j) != b.b_of(elems[e], elems[img[j]])) ok = false;
      }
      if (!ok) continue;
      img[i] = e;
      if (rec(i + 1)) return true;
    }
    return false;
  };
  return rec(0);
}

}  // namespace latgen
