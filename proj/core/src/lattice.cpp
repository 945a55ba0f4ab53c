#include <latgen/lattice.hpp>

#include <latgen/fqf.hpp>

#include <algorithm>
#include <stdexcept>

namespace latgen {

GramLattice::GramLattice(IMat gram) : gram_(std::move(gram)) {
  if (gram_.rows() != gram_.cols()) throw std::invalid_argument("gram matrix not square");
  if (!gram_.is_symmetric()) throw std::invalid_argument("gram matrix not symmetric");
  for (size_t i = 0; i < gram_.rows(); ++i)
    if (is_odd(gram_(i, i))) throw std::invalid_argument("lattice not even");
  if (gram_.rows() > 0 && latgen::det(gram_) == 0)
    throw std::invalid_argument("gram matrix degenerate");
}

Int GramLattice::det() const {
  if (rank() == 0) return 1;
  return latgen::det(gram_);
}

SublatticeEmbedding::SublatticeEmbedding(const GramLattice& amb, IMat b)
    : ambient(amb), basis(std::move(b)) {
  if (basis.cols() != amb.rank()) throw std::invalid_argument("embedding: dimension mismatch");
  gram_induced = basis * amb.gram() * basis.transpose();
  // rows must be independent
  IVec divs = elementary_divisors(basis);
  if (divs.size() != basis.rows()) throw std::invalid_argument("embedding: dependent rows");
}

namespace {

IMat chain_gram(size_t n, const std::vector<std::pair<size_t, size_t>>& edges) {
  IMat g(n, n);
  for (size_t i = 0; i < n; ++i) g(i, i) = -2;
  for (auto [a, b] : edges) {
    g(a, b) = 1;
    g(b, a) = 1;
  }
  return g;
}

IMat gram_a(size_t n) {
  std::vector<std::pair<size_t, size_t>> e;
  for (size_t i = 0; i + 1 < n; ++i) e.push_back({i, i + 1});
  return chain_gram(n, e);
}

IMat gram_d(size_t n) {
  if (n < 2) throw std::invalid_argument("d_n needs n >= 2");
  if (n == 2) return chain_gram(2, {});
  std::vector<std::pair<size_t, size_t>> e;
  for (size_t i = 0; i + 2 < n; ++i) e.push_back({i, i + 1});
  e.push_back({n - 3, n - 1});
  return chain_gram(n, e);
}

IMat gram_e(size_t n) {
  // Bourbaki numbering: chain 1-3-4-5-6(-7(-8)), node 2 attached to node 4
  std::vector<std::pair<size_t, size_t>> e = {{0, 2}, {2, 3}, {3, 4}, {1, 3}};
  for (size_t i = 4; i + 1 < n; ++i) e.push_back({i, i + 1});
  return chain_gram(n, e);
}

IMat gram_u() {
  IMat g(2, 2);
  g(0, 1) = 1;
  g(1, 0) = 1;
  return g;
}

// lattice from integer generator rows that span after dividing by den:
// returns basis (rows) of (1/den) * rowspan as a matrix over Q, then gram.
IMat gram_from_generators(const IMat& gens, const Int& den, const IMat& ambient_gram) {
  IMat b = hnf(gens);
  if (b.rows() != ambient_gram.rows()) throw std::logic_error("generators do not span");
  IMat num = b * ambient_gram * b.transpose();
  IMat g(num.rows(), num.cols());
  Int d2 = den * den;
  for (size_t i = 0; i < num.rows(); ++i)
    for (size_t j = 0; j < num.cols(); ++j) {
      if (mod(num(i, j), d2) != 0) throw std::logic_error("non-integral lattice construction");
      g(i, j) = divexact(num(i, j), d2);
    }
  return g;
}

// D12+ in Z^12 coordinates: D12 roots plus the half-sum spinor vector.
// Built at scale 2 so the Gram is even; caller rescales.
IMat gram_d12plus_times2() {
  size_t n = 12;
  // generators (x2): rows of 2*(e_i - e_{i+1}), 2*(e_11 + e_12), e_1+...+e_12
  IMat gens(n + 1, n);
  for (size_t i = 0; i + 1 < n; ++i) {
    gens(i, i) = 2;
    gens(i, i + 1) = -2;
  }
  gens(n - 1, n - 2) = 2;
  gens(n - 1, n - 1) = 2;
  for (size_t j = 0; j < n; ++j) gens(n, j) = 1;
  // ambient form: 2 * (minus standard euclidean), so that (1/2)-basis gives
  // D12+(2) = even negative definite
  IMat amb(n, n);
  for (size_t i = 0; i < n; ++i) amb(i, i) = -8;  // (-2 euclidean) * (2 den)^2 / ... see below
  // Work with den = 2: gram = B * amb * B^T / 4 where amb = -2 * I * ... we want
  // final quadratic form = -2 * euclidean. amb entries: -2 * identity scaled by 1:
  for (size_t i = 0; i < n; ++i) amb(i, i) = -2;
  return gram_from_generators(gens, 2, amb);
}

// Barnes-Wall BW16: {v in Z^16 : v mod 2 in RM(1,4), sum(v) = 0 mod 4},
// with the form -(euclidean)/2. Negative definite, det 2^8, min 4.
IMat gram_bw16() {
  size_t n = 16;
  std::vector<IVec> gen_rows;
  // RM(1,4) basis: all-ones and the four coordinate masks
  IVec ones(n, Int(1));
  gen_rows.push_back(ones);
  for (int b = 0; b < 4; ++b) {
    IVec r(n, Int(0));
    for (size_t i = 0; i < n; ++i)
      if ((i >> b) & 1) r[i] = 1;
    gen_rows.push_back(r);
  }
  for (size_t i = 0; i + 1 < n; ++i) {
    IVec r(n, Int(0));
    r[i] = 2;
    r[i + 1] = -2;
    gen_rows.push_back(r);
  }
  IVec last(n, Int(0));
  last[n - 1] = 4;
  gen_rows.push_back(last);

  IMat gens(gen_rows.size(), n);
  for (size_t i = 0; i < gen_rows.size(); ++i)
    for (size_t j = 0; j < n; ++j) gens(i, j) = gen_rows[i][j];
  IMat b = hnf(gens);
  if (b.rows() != n) throw std::logic_error("bw16 generators do not span");
  IMat num = b * b.transpose();
  IMat g(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      if (mod(num(i, j), Int(2)) != 0) throw std::logic_error("bw16: odd inner product");
      g(i, j) = -divexact(num(i, j), Int(2));
    }
  return g;
}

IMat gram_og10() {
  IMat g = gram_u();
  g = block_diag(g, gram_u());
  g = block_diag(g, gram_u());
  g = block_diag(g, gram_e(8));
  g = block_diag(g, gram_e(8));
  g = block_diag(g, gram_a(2));
  return g;
}

// the unique index-two even overlattice of D9(2) + <-24>
IMat gram_m_lattice() {
  GramLattice base = direct_sum(GramLattice(gram_d(9) * Int(2)), GramLattice(IMat(1, 1, {Int(-24)})));
  FiniteQuadraticForm a = discriminant_form(base);
  // search the order-2 isotropic elements for glue giving an even overlattice
  std::vector<QVec> best;
  size_t ng = a.generator_count();
  std::vector<long> idx(ng, 0);
  // iterate over elements x = sum c_i g_i with 2x = 0: c_i in {0, d_i/2}
  std::vector<size_t> half;
  for (size_t i = 0; i < ng; ++i)
    if (is_even(a.order(i))) half.push_back(i);
  for (unsigned long mask = 1; mask < (1ul << half.size()); ++mask) {
    QVec x(base.rank(), Rat(0));
    for (size_t t = 0; t < half.size(); ++t)
      if ((mask >> t) & 1) {
        size_t i = half[t];
        Rat c(a.order(i) / 2);
        const QVec& gi = a.generator_coords(i);
        for (size_t j = 0; j < x.size(); ++j) x[j] += c * gi[j];
      }
    for (auto& q : x) q.canonicalize();
    // q(x) = 0 mod 2Z required
    QMat qg = int_to_rat(base.gram());
    Rat norm = inner(x, qg, x);
    if (mod2Z(norm) != 0) continue;
    // denominator 2 exactly (else x is in L)
    Int den(1);
    for (auto& q : x) den = lcm(den, Int(q.get_den()));
    if (den == 1) continue;
    best = {x};
    break;  // generators are sorted, first hit is the canonical choice
  }
  if (best.empty()) throw std::logic_error("m lattice: no isotropic glue found");
  Overlattice m = overlattice(base, best);
  if (m.lattice.det() * 4 != base.det()) throw std::logic_error("m lattice: glue not index 2");
  return m.lattice.gram();
}

}  // namespace

GramLattice catalog(const std::string& name, const Int& scale) {
  if (scale == 0) throw std::invalid_argument("catalog: zero scale");
  IMat g;
  if (name == "u") {
    g = gram_u();
  } else if (name == "e6") {
    g = gram_e(6);
  } else if (name == "e7") {
    g = gram_e(7);
  } else if (name == "e8") {
    g = gram_e(8);
  } else if (name == "d12plus") {
    if (is_odd(scale)) throw std::invalid_argument("d12plus requires an even scale");
    return GramLattice(gram_d12plus_times2() * divexact(scale, Int(2)));
  } else if (name == "bw16") {
    g = gram_bw16();
  } else if (name == "m") {
    g = gram_m_lattice();
  } else if (name == "og10") {
    g = gram_og10();
  } else if (name.size() >= 2 && name.front() == 'a' && isdigit(name[1])) {
    g = gram_a(std::stoul(name.substr(1)));
  } else if (name.size() >= 2 && name.front() == 'd' && isdigit(name[1])) {
    g = gram_d(std::stoul(name.substr(1)));
  } else if (name.size() >= 3 && name.front() == '<' && name.back() == '>') {
    Int m(name.substr(1, name.size() - 2));
    if (m == 0 || is_odd(m)) throw std::invalid_argument("rank-one lattice must have even nonzero norm");
    g = IMat(1, 1, {m});
  } else {
    throw std::invalid_argument("unknown catalog lattice: " + name);
  }
  return GramLattice(g * scale);
}

GramLattice direct_sum(const GramLattice& a, const GramLattice& b) {
  return GramLattice(block_diag(a.gram(), b.gram()));
}

GramLattice rescale(const GramLattice& l, const Int& n) {
  if (n == 0) throw std::invalid_argument("rescale by zero");
  return GramLattice(l.gram() * n);
}

std::pair<size_t, size_t> signature(const GramLattice& l) {
  // symmetric congruence diagonalization over Q
  QMat a = int_to_rat(l.gram());
  size_t n = a.rows();
  size_t pos = 0, neg = 0;
  std::vector<bool> done(n, false);
  for (size_t step = 0; step < n; ++step) {
    // pick a nonzero diagonal pivot among the remaining rows
    size_t piv = n;
    for (size_t i = 0; i < n; ++i)
      if (!done[i] && a(i, i) != 0) {
        piv = i;
        break;
      }
    if (piv == n) {
      // all remaining diagonal entries vanish; find off-diagonal and mix
      size_t bi = n, bj = n;
      for (size_t i = 0; i < n && bi == n; ++i)
        if (!done[i])
          for (size_t j = 0; j < n; ++j)
            if (!done[j] && j != i && a(i, j) != 0) {
              bi = i;
              bj = j;
              break;
            }
      if (bi == n) break;  // remaining block is zero (degenerate input)
      for (size_t k = 0; k < n; ++k) {
        a(bi, k) += a(bj, k);
      }
      for (size_t k = 0; k < n; ++k) {
        a(k, bi) += a(k, bj);
      }
      piv = bi;
    }
    Rat d = a(piv, piv);
    if (d > 0)
      ++pos;
    else
      ++neg;
    done[piv] = true;
    for (size_t i = 0; i < n; ++i) {
      if (done[i] || a(i, piv) == 0) continue;
      Rat f = a(i, piv) / d;
      for (size_t j = 0; j < n; ++j) a(i, j) -= f * a(piv, j);
      for (size_t j = 0; j < n; ++j) a(j, i) -= f * a(j, piv);
    }
  }
  return {pos, neg};
}

Int divisibility(const GramLattice& l, const LatticeVector& v) {
  if (v.size() != l.rank()) throw std::invalid_argument("divisibility: dimension mismatch");
  bool zero = true;
  for (const Int& x : v)
    if (x != 0) zero = false;
  if (zero) throw std::invalid_argument("divisibility of the zero vector");
  IVec gv = mat_vec(l.gram(), v);
  Int g(0);
  for (const Int& x : gv) g = gcd(g, x);
  return g;
}

bool in_dual(const GramLattice& l, const QVec& w) {
  if (w.size() != l.rank()) throw std::invalid_argument("in_dual: dimension mismatch");
  QMat g = int_to_rat(l.gram());
  QVec wg = vec_mat(w, g);
  for (Rat& q : wg) {
    q.canonicalize();
    if (Int(q.get_den()) != 1) return false;
  }
  return true;
}

SublatticeEmbedding orthogonal_complement(const GramLattice& l, const SublatticeEmbedding& s) {
  if (s.ambient.gram() != l.gram()) throw std::invalid_argument("complement: wrong ambient");
  IMat pairing = l.gram() * s.basis.transpose();  // n x k
  IMat k = left_kernel(pairing);
  return SublatticeEmbedding(l, hnf(k));
}

Overlattice overlattice(const GramLattice& l, const std::vector<QVec>& glue) {
  size_t n = l.rank();
  QMat qg = int_to_rat(l.gram());
  // preconditions
  for (const QVec& w : glue) {
    if (!in_dual(l, w)) throw std::invalid_argument("overlattice: glue vector not in dual");
  }
  for (size_t i = 0; i < glue.size(); ++i) {
    if (mod2Z(inner(glue[i], qg, glue[i])) != 0)
      throw std::invalid_argument("overlattice: glue group not isotropic");
    for (size_t j = i + 1; j < glue.size(); ++j) {
      Rat b = inner(glue[i], qg, glue[j]);
      b.canonicalize();
      if (Int(b.get_den()) != 1)
        throw std::invalid_argument("overlattice: glue group not isotropic");
    }
  }
  // common denominator
  Int den(1);
  for (const QVec& w : glue)
    for (const Rat& q : w) den = lcm(den, Int(q.get_den()));
  IMat gens(n + glue.size(), n);
  for (size_t i = 0; i < n; ++i) gens(i, i) = den;
  for (size_t i = 0; i < glue.size(); ++i)
    for (size_t j = 0; j < n; ++j) {
      Rat q = glue[i][j] * Rat(den);
      q.canonicalize();
      gens(n + i, j) = Int(q.get_num());
    }
  IMat b = hnf(gens);
  if (b.rows() != n) throw std::logic_error("overlattice: rank drop");
  IMat num = b * l.gram() * b.transpose();
  IMat g(n, n);
  Int d2 = den * den;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      if (mod(num(i, j), d2) != 0) throw std::logic_error("overlattice: non-integral result");
      g(i, j) = divexact(num(i, j), d2);
    }
  Overlattice out;
  out.lattice = GramLattice(g);
  out.basis = QMat(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      out.basis(i, j) = Rat(b(i, j), den);
      out.basis(i, j).canonicalize();
    }
  return out;
}

const std::vector<size_t>& og10_block_offsets() {
  static const std::vector<size_t> off = {0, 2, 4, 6, 14, 22};
  return off;
}

}  // namespace latgen
