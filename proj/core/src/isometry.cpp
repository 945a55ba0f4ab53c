#include <latgen/isometry.hpp>

#include <latgen/fqf.hpp>
#include <latgen/normal_forms.hpp>
#include <latgen/reduction.hpp>
#include <latgen/shortvec.hpp>

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace latgen {

namespace {

using Row = std::vector<long>;

long to_long(const Int& a) {
  if (!a.fits_slong_p()) throw std::overflow_error("isometry: entry too large");
  return a.get_si();
}

struct SvTable {
  IMat gram;                  // positive definite, LLL-reduced
  std::vector<Row> vecs;      // all vectors with 0 < norm <= maxnorm, both signs
  std::vector<Row> gvecs;     // gram * v
  std::vector<long> norms;
  std::map<long, long> norm_counts;
  std::map<Row, int> index;

  explicit SvTable(const IMat& g, const Int& maxnorm) : gram(g) {
    size_t n = g.rows();
    auto pairs = vectors_up_to(GramLattice(g), maxnorm);
    vecs.reserve(2 * pairs.size());
    for (const auto& [v, norm] : pairs) {
      Row r(n), rn(n);
      for (size_t i = 0; i < n; ++i) {
        r[i] = to_long(v[i]);
        rn[i] = -r[i];
      }
      vecs.push_back(r);
      vecs.push_back(rn);
      norms.push_back(to_long(norm));
      norms.push_back(to_long(norm));
      norm_counts[to_long(norm)] += 2;
    }
    gvecs.resize(vecs.size());
    for (size_t t = 0; t < vecs.size(); ++t) {
      Row gv(n, 0);
      for (size_t i = 0; i < n; ++i) {
        long acc = 0;
        for (size_t j = 0; j < n; ++j) acc += to_long(g(i, j)) * vecs[t][j];
        gv[i] = acc;
      }
      gvecs[t] = gv;
      index[vecs[t]] = int(t);
    }
  }

  long prod(int a, int b) const {
    long acc = 0;
    const Row& x = vecs[a];
    const Row& gy = gvecs[b];
    for (size_t i = 0; i < x.size(); ++i) acc += x[i] * gy[i];
    return acc;
  }

  // v * gram * e_j
  long prod_basis(int a, size_t j) const { return gvecs[a][j]; }
};

// backtracking: images of the standard basis of `ga` inside the table of b
struct Matcher {
  const IMat& ga;
  const SvTable& sv;
  size_t n;
  std::vector<size_t> order;              // processing order of positions
  std::vector<std::vector<int>> cands;    // norm-matched candidates per position
  long budget;
  long nodes = 0;

  Matcher(const IMat& a, const SvTable& table, long b) : ga(a), sv(table), n(a.rows()), budget(b) {
    cands.resize(n);
    for (size_t i = 0; i < n; ++i) {
      long norm = to_long(ga(i, i));
      for (size_t t = 0; t < sv.vecs.size(); ++t)
        if (sv.norms[t] == norm) cands[i].push_back(int(t));
    }
    order.resize(n);
    for (size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](size_t x, size_t y) { return cands[x].size() < cands[y].size(); });
  }

  // extend a partial assignment img (indices by level) to a full one
  bool extend(std::vector<int>& img, size_t level) {
    if (level == n) return true;
    size_t pos = order[level];
    for (int c : cands[pos]) {
      if (++nodes > budget) throw IsometryBudgetExhausted();
      bool ok = true;
      for (size_t s = 0; s < level && ok; ++s) {
        if (sv.prod(c, img[s]) != to_long(ga(pos, order[s]))) ok = false;
      }
      if (!ok) continue;
      img[level] = c;
      if (extend(img, level + 1)) return true;
    }
    return false;
  }

  // assemble the row matrix from a full assignment
  IMat to_matrix(const std::vector<int>& img) const {
    IMat t(n, n);
    for (size_t level = 0; level < n; ++level) {
      size_t pos = order[level];
      for (size_t j = 0; j < n; ++j) t(pos, j) = sv.vecs[img[level]][j];
    }
    return t;
  }
};

IMat flip_to_positive(const GramLattice& l, bool& was_negative) {
  auto [np, nm] = signature(l);
  if (np != 0 && nm != 0) throw std::invalid_argument("isometry: lattice not definite");
  was_negative = (np == 0 && nm > 0);
  return was_negative ? -l.gram() : l.gram();
}

Int max_diag(const IMat& g) {
  Int m = g(0, 0);
  for (size_t i = 1; i < g.rows(); ++i) m = std::max(m, g(i, i));
  return m;
}

}  // namespace

Fingerprint fingerprint(const GramLattice& l) {
  Fingerprint f;
  f.rank = l.rank();
  f.det_abs = abs(l.det());
  if (f.rank == 0) return f;
  bool neg;
  IMat g = flip_to_positive(l, neg);
  GramLattice pos(g);
  f.min_norm = minimum(pos);
  auto pairs = vectors_up_to(pos, f.min_norm + 4);
  for (const auto& [v, norm] : pairs) {
    if (norm == f.min_norm)
      ++f.counts[0];
    else if (norm == f.min_norm + 2)
      ++f.counts[1];
    else if (norm == f.min_norm + 4)
      ++f.counts[2];
  }
  FiniteQuadraticForm q = discriminant_form(l);
  f.disc_orders = q.orders();
  f.delta2 = 0;
  for (size_t i = 0; i < q.generator_count(); ++i) {
    if (is_even(q.order(i))) {
      IVec c(q.generator_count(), Int(0));
      c[i] = divexact(q.order(i), Int(2));
      if (Int(q.q_of(c).get_den()) != 1) f.delta2 = 1;
    }
  }
  return f;
}

std::optional<IMat> is_isometric(const GramLattice& a, const GramLattice& b, long budget) {
  if (a.rank() != b.rank()) return std::nullopt;
  if (a.rank() == 0) return IMat(0, 0);
  if (a.det() != b.det()) return std::nullopt;
  bool nega, negb;
  IMat gpa = flip_to_positive(a, nega);
  IMat gpb = flip_to_positive(b, negb);
  if (nega != negb) return std::nullopt;

  LllResult ra = lll_reduce(GramLattice(gpa));
  LllResult rb = lll_reduce(GramLattice(gpb));
  const IMat& ga = ra.lattice.gram();
  const IMat& gb = rb.lattice.gram();

  Int need = max_diag(ga);
  SvTable svb(gb, need);
  {
    // quick invariant check: vector counts per norm must agree
    SvTable sva(ga, need);
    if (sva.norm_counts != svb.norm_counts) return std::nullopt;
  }
  Matcher m(ga, svb, budget);
  for (size_t i = 0; i < m.n; ++i)
    if (m.cands[i].empty()) return std::nullopt;
  std::vector<int> img(m.n, -1);
  if (!m.extend(img, 0)) return std::nullopt;
  IMat t = m.to_matrix(img);  // t * gb * t^T = ga
  // back to the original bases: s = ua^{-1} t ub satisfies s * b.gram * s^T = a.gram
  IMat s = inverse_unimodular(ra.transform) * t * rb.transform;
  if (s * b.gram() * s.transpose() != a.gram()) throw std::logic_error("is_isometric: bad transform");
  // orientation: the relation holds for the flipped grams iff it holds for the originals
  IMat sinv = inverse_unimodular(s);
  if (sinv * a.gram() * sinv.transpose() != b.gram())
    throw std::logic_error("is_isometric: inverse transform check failed");
  return sinv;
}

Int automorphism_order(const GramLattice& l, long budget) {
  if (l.rank() == 0) return 1;
  bool neg;
  IMat gp = flip_to_positive(l, neg);
  LllResult red = lll_reduce(GramLattice(gp));
  const IMat& g = red.lattice.gram();
  size_t n = g.rows();
  SvTable sv(g, max_diag(g));
  Matcher m(g, sv, budget);

  // standard basis vectors as table indices
  std::vector<int> basis_idx(n);
  for (size_t i = 0; i < n; ++i) {
    Row e(n, 0);
    e[i] = 1;
    auto it = sv.index.find(e);
    if (it == sv.index.end()) throw std::logic_error("automorphism_order: basis vector missing");
    basis_idx[i] = it->second;
  }

  std::deque<IMat> gens;
  Int total(1);
  for (size_t level = 0; level < n; ++level) {
    size_t pos = m.order[level];
    // generators fixing the previously pinned basis vectors
    std::vector<const IMat*> stab;
    for (const IMat& t : gens) {
      bool fixes = true;
      for (size_t s = 0; s < level && fixes; ++s) {
        size_t p = m.order[s];
        for (size_t j = 0; j < n && fixes; ++j)
          if (t(p, j) != (j == p ? 1 : 0)) fixes = false;
      }
      if (fixes) stab.push_back(&t);
    }
    auto apply = [&](const Row& v, const IMat& t) {
      Row r(n, 0);
      for (size_t i = 0; i < n; ++i) {
        if (v[i] == 0) continue;
        for (size_t j = 0; j < n; ++j) r[j] += v[i] * to_long(t(i, j));
      }
      return r;
    };
    std::set<Row> orbit;
    auto grow = [&]() {
      std::vector<Row> queue(orbit.begin(), orbit.end());
      while (!queue.empty()) {
        Row v = queue.back();
        queue.pop_back();
        for (const IMat* t : stab) {
          Row w = apply(v, *t);
          if (orbit.insert(w).second) queue.push_back(w);
        }
      }
    };
    Row e(n, 0);
    e[pos] = 1;
    orbit.insert(e);
    grow();
    for (int c : m.cands[pos]) {
      if (orbit.count(sv.vecs[c])) continue;
      // products with the pinned prefix must match the identity assignment
      bool ok = true;
      for (size_t s = 0; s < level && ok; ++s)
        if (sv.prod_basis(c, m.order[s]) != to_long(g(pos, m.order[s]))) ok = false;
      if (!ok) continue;
      std::vector<int> img(n, -1);
      for (size_t s = 0; s < level; ++s) img[s] = basis_idx[m.order[s]];
      img[level] = c;
      if (m.extend(img, level + 1)) {
        IMat t = m.to_matrix(img);
        if (t * g * t.transpose() != g) throw std::logic_error("automorphism_order: bad generator");
        gens.push_back(t);
        stab.push_back(&gens.back());
        grow();
      }
    }
    total *= Int(long(orbit.size()));
  }
  return total;
}

}  // namespace latgen
