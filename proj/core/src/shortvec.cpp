#include <latgen/shortvec.hpp>

#include <latgen/reduction.hpp>

#include <algorithm>
#include <stdexcept>

namespace latgen {

namespace {

struct FpData {
  size_t n;
  QVec q;
  QMat mu;
};

FpData decompose(const IMat& g) {
  size_t n = g.rows();
  QMat a = int_to_rat(g);
  FpData d{n, QVec(n), QMat(n, n)};
  for (size_t i = 0; i < n; ++i) {
    d.q[i] = a(i, i);
    if (d.q[i] <= 0) throw std::invalid_argument("enumeration: form not positive definite");
    for (size_t j = i + 1; j < n; ++j) {
      d.mu(i, j) = a(i, j) / a(i, i);
      d.mu(i, j).canonicalize();
    }
    for (size_t k = i + 1; k < n; ++k)
      for (size_t l = i + 1; l < n; ++l) {
        a(k, l) -= a(k, i) * a(i, l) / a(i, i);
        a(k, l).canonicalize();
      }
  }
  return d;
}

Int isqrt(const Int& a) {
  Int r;
  mpz_sqrt(r.get_mpz_t(), a.get_mpz_t());
  return r;
}

// enumerate all x != 0 with Q(x) <= bound; bound may shrink inside cb
void enumerate(const IMat& g, Rat& bound,
               const std::function<void(const IVec&, const Rat&)>& cb) {
  size_t n = g.rows();
  if (n == 0) return;
  FpData d = decompose(g);
  IVec x(n, Int(0));

  std::function<void(long, const Rat&)> rec = [&](long i, const Rat& acc) {
    if (i < 0) {
      bool zero = true;
      for (const Int& c : x)
        if (c != 0) zero = false;
      if (!zero) cb(x, acc);
      return;
    }
    // U_i = sum_{j>i} mu(i,j) x_j
    Rat u(0);
    for (size_t j = i + 1; j < n; ++j)
      if (x[j] != 0) u += d.mu(i, j) * Rat(x[j]);
    u.canonicalize();
    Rat t = bound - acc;  // remaining budget
    if (t < 0) return;
    Rat s2 = t / d.q[i];
    s2.canonicalize();
    // integer range: (x + u)^2 * q <= t
    auto ok = [&](const Int& v) {
      Rat w = Rat(v) + u;
      return d.q[i] * w * w <= t;
    };
    Int s = isqrt(fdiv(Int(s2.get_num()), Int(s2.get_den()))) + 1;
    Int center = fdiv(Int((-u).get_num()), Int((-u).get_den()));  // floor(-u)
    Int hi = center + s + 1;
    while (!ok(hi)) {
      hi -= 1;
      if (hi < center - s - 2) return;  // empty range
    }
    Int lo = center - s - 1;
    while (!ok(lo)) lo += 1;
    for (Int v = lo; v <= hi; v += 1) {
      x[i] = v;
      Rat w = Rat(v) + u;
      Rat step = d.q[i] * w * w;
      step.canonicalize();
      Rat acc2 = acc + step;
      acc2.canonicalize();
      if (acc2 <= bound) rec(i - 1, acc2);
    }
    x[i] = 0;
  };
  rec(long(n) - 1, Rat(0));
}

IVec to_original(const IVec& x, const IMat& transform) {
  return vec_mat(x, transform);
}

bool sign_canonical(IVec& v) {
  for (const Int& c : v) {
    if (c != 0) {
      if (c < 0)
        for (Int& a : v) a = -a;
      return true;
    }
  }
  return false;
}

}  // namespace

Int minimum(const GramLattice& l_pos) {
  if (l_pos.rank() == 0) throw std::invalid_argument("minimum of the empty lattice");
  if (!is_positive_definite(l_pos)) throw std::invalid_argument("minimum: not positive definite");
  LllResult red = lll_reduce(l_pos);
  const IMat& g = red.lattice.gram();
  Int best = g(0, 0);
  for (size_t i = 1; i < g.rows(); ++i) best = std::min(best, g(i, i));
  Rat bound(best);
  enumerate(g, bound, [&](const IVec&, const Rat& norm) {
    if (norm < Rat(best)) {
      best = Int(norm.get_num());
      bound = norm;
    }
  });
  return best;
}

std::vector<LatticeVector> vectors_of_norm(const GramLattice& l_pos, const Int& m,
                                           bool up_to_sign) {
  if (!is_positive_definite(l_pos)) throw std::invalid_argument("vectors_of_norm: not positive definite");
  LllResult red = lll_reduce(l_pos);
  Rat bound(m);
  std::vector<LatticeVector> out;
  enumerate(red.lattice.gram(), bound, [&](const IVec& x, const Rat& norm) {
    if (norm != Rat(m)) return;
    IVec v = to_original(x, red.transform);
    if (up_to_sign) sign_canonical(v);
    out.push_back(v);
  });
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::pair<LatticeVector, Int>> vectors_up_to(const GramLattice& l_pos,
                                                         const Int& bound_in) {
  if (!is_positive_definite(l_pos)) throw std::invalid_argument("vectors_up_to: not positive definite");
  LllResult red = lll_reduce(l_pos);
  Rat bound(bound_in);
  std::vector<std::pair<LatticeVector, Int>> out;
  enumerate(red.lattice.gram(), bound, [&](const IVec& x, const Rat& norm) {
    IVec v = to_original(x, red.transform);
    if (!sign_canonical(v)) return;
    out.push_back({v, Int(norm.get_num())});
  });
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

RootScanReport root_scan(const GramLattice& l_neg) {
  if (l_neg.rank() == 0) {
    RootScanReport r;
    r.minimum_norm = 0;
    return r;
  }
  if (!is_negative_definite(l_neg)) throw std::invalid_argument("root_scan: not negative definite");
  GramLattice pos = rescale(l_neg, -1);
  RootScanReport rep;
  rep.minimum_norm = minimum(pos);
  if (rep.minimum_norm == 2) {
    rep.has_short_root = true;
    auto roots = vectors_of_norm(pos, Int(2));
    if (!roots.empty()) rep.short_witness = roots.front();
  }
  if (rep.minimum_norm <= 6) {
    for (const auto& y : vectors_of_norm(pos, Int(6))) {
      if (divisibility(pos, y) == 3) {
        rep.has_long_root = true;
        rep.long_witness = y;
        break;
      }
    }
  }
  return rep;
}

}  // namespace latgen
