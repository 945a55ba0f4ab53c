#include <latgen/kneser.hpp>

#include <latgen/normal_forms.hpp>
#include <latgen/reduction.hpp>

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>
#include <thread>

namespace latgen {

std::vector<Int> default_prime_pool(const GramLattice& seed, size_t count) {
  Int bad = 2 * abs(seed.det());
  std::vector<Int> pool;
  for (Int p(3); pool.size() < count; p += 2) {
    bool prime = mpz_probab_prime_p(p.get_mpz_t(), 30) != 0;
    if (prime && gcd(p, bad) == 1) pool.push_back(p);
  }
  return pool;
}

LatticeVector admissible_lift(const GramLattice& l, const IVec& line, const Int& p) {
  if (mod(2 * abs(l.det()), p) == 0) throw std::invalid_argument("admissible_lift: p divides 2 det");
  size_t n = l.rank();
  if (line.size() != n) throw std::invalid_argument("admissible_lift: dimension mismatch");
  IVec y = line;
  bool zero = true;
  for (const Int& c : y)
    if (mod(c, p) != 0) zero = false;
  if (zero) throw std::invalid_argument("admissible_lift: line is zero mod p");
  Int c = inner(y, l.gram(), y);
  if (mod(c, p) != 0) throw std::invalid_argument("admissible_lift: line not isotropic");
  // even lattice and p odd: c = 0 mod 2p; solve c/(2p) + b(y, z) = 0 mod p
  IVec w = mat_vec(l.gram(), y);
  size_t j = n;
  for (size_t i = 0; i < n; ++i)
    if (mod(w[i], p) != 0) {
      j = i;
      break;
    }
  if (j == n) throw std::logic_error("admissible_lift: degenerate reduction");
  Int half = divexact(c, 2 * p);
  Int t = mod(-half * invmod(mod(w[j], p), p), p);
  y[j] += p * t;
  Int c2 = inner(y, l.gram(), y);
  if (mod(c2, 2 * p * p) != 0) throw std::logic_error("admissible_lift: correction failed");
  return y;
}

GramLattice neighbour(const GramLattice& l, const LatticeVector& y, const Int& p) {
  size_t n = l.rank();
  Int c = inner(y, l.gram(), y);
  if (mod(c, 2 * p * p) != 0) throw std::invalid_argument("neighbour: y not admissible");
  IVec w = mat_vec(l.gram(), y);
  size_t piv = n;
  for (size_t i = 0; i < n; ++i)
    if (mod(w[i], p) != 0) {
      piv = i;
      break;
    }
  if (piv == n) throw std::invalid_argument("neighbour: y in p L*");
  Int winv = invmod(mod(w[piv], p), p);
  // generators of p * L(y): p * (basis of L_y) and y
  IMat gens(n + 1, n);
  size_t r = 0;
  for (size_t i = 0; i < n; ++i) {
    if (i == piv) continue;
    Int coef = mod(-w[i] * winv, p);
    gens(r, i) = p;
    gens(r, piv) = p * coef;
    ++r;
  }
  gens(r, piv) = p * p;
  ++r;
  for (size_t i = 0; i < n; ++i) gens(r, i) = y[i];
  IMat b = hnf(gens);
  if (b.rows() != n) throw std::logic_error("neighbour: rank drop");
  IMat num = b * l.gram() * b.transpose();
  Int p2 = p * p;
  IMat g(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j2 = 0; j2 < n; ++j2) {
      if (mod(num(i, j2), p2) != 0) throw std::logic_error("neighbour: non-integral result");
      g(i, j2) = divexact(num(i, j2), p2);
    }
  GramLattice out(g);
  if (out.det() != l.det()) throw std::logic_error("neighbour: determinant changed");
  return lll_reduce(out).lattice;
}

std::vector<IVec> isotropic_lines_exhaustive(const GramLattice& l, const Int& p) {
  size_t n = l.rank();
  long pl = p.get_si();
  std::vector<IVec> out;
  // projective representatives: first nonzero coordinate = 1
  for (size_t lead = 0; lead < n; ++lead) {
    IVec v(n, Int(0));
    v[lead] = 1;
    size_t fr = n - lead - 1;  // free coordinates after `lead`
    std::vector<long> idx(fr, 0);
    while (true) {
      for (size_t t = 0; t < fr; ++t) v[lead + 1 + t] = idx[t];
      if (mod(inner(v, l.gram(), v), p) == 0) out.push_back(v);
      size_t t = 0;
      while (t < fr) {
        if (++idx[t] < pl) break;
        idx[t] = 0;
        ++t;
      }
      if (t == fr) break;
      if (fr == 0) break;
    }
    if (fr == 0) {
      // the single vector was already tested in the loop above only if fr>0
    }
  }
  return out;
}

std::vector<IVec> isotropic_lines_random(const GramLattice& l, const Int& p, size_t count,
                                         uint64_t seed) {
  size_t n = l.rank();
  long pl = p.get_si();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> dist(0, pl - 1);
  std::set<IVec> seen;
  std::vector<IVec> out;
  size_t attempts = 0;
  while (attempts < count) {
    ++attempts;
    IVec v(n, Int(0));
    bool zero = true;
    for (size_t i = 0; i < n; ++i) {
      long c = dist(rng);
      v[i] = c;
      if (c) zero = false;
    }
    if (zero) continue;
    // normalize: first nonzero coordinate = 1
    size_t lead = 0;
    while (mod(v[lead], p) == 0) ++lead;
    Int inv = invmod(v[lead], p);
    for (size_t i = 0; i < n; ++i) v[i] = mod(v[i] * inv, p);
    if (mod(inner(v, l.gram(), v), p) != 0) continue;
    if (seen.insert(v).second) out.push_back(v);
  }
  return out;
}

GramLattice nikulin_lattice() {
  GramLattice a18 = catalog("a1");
  for (int i = 0; i < 7; ++i) a18 = direct_sum(a18, catalog("a1"));
  QVec glue(8, Rat(1, 2));
  return overlattice(a18, {glue}).lattice;
}

namespace {

// deterministic DFS over isotropic two-torsion glue, reducing l(A) until the
// genus matches
bool glue_search(const GramLattice& cur, const GenusSymbol& target, size_t depth,
                 GramLattice& out) {
  GenusSymbol g = genus_symbol(cur);
  if (genus_equal(g, target)) {
    out = cur;
    return true;
  }
  if (depth == 0) return false;
  FiniteQuadraticForm q = discriminant_form(cur);
  std::vector<std::pair<long, IVec>> cands;
  for (const IVec& x : isotropic_two_torsion(q)) {
    long weight = 0;
    for (const Int& c : x)
      if (c != 0) ++weight;
    cands.push_back({weight, x});
  }
  std::sort(cands.begin(), cands.end());
  for (const auto& [wgt, x] : cands) {
    // coordinates of the glue vector in the lattice basis
    QVec glue(cur.rank(), Rat(0));
    for (size_t i = 0; i < q.generator_count(); ++i) {
      if (x[i] == 0) continue;
      QVec gi = q.generator_coords(i);
      for (size_t j = 0; j < glue.size(); ++j) glue[j] += Rat(x[i]) * gi[j];
    }
    Int den(1);
    for (Rat& c : glue) {
      c.canonicalize();
      den = lcm(den, Int(c.get_den()));
    }
    if (den == 1) continue;  // already in the lattice
    GramLattice next = overlattice(cur, {glue}).lattice;
    if (glue_search(next, target, depth - 1, out)) return true;
  }
  return false;
}

}  // namespace

GramLattice first_representative(const GenusSymbol& g) {
  // direct constructions for the paper's families
  std::vector<GramLattice> quick;
  {
    GramLattice a2 = catalog("a2");
    GramLattice nik = nikulin_lattice();
    quick.push_back(direct_sum(direct_sum(a2, catalog("e8")), nik));  // rank 18, case (1)
    quick.push_back(direct_sum(direct_sum(a2, nik), catalog("d4")));  // rank 14, case (2)
    quick.push_back(a2);
    quick.push_back(catalog("d4"));
    quick.push_back(catalog("e8"));
  }
  for (const GramLattice& c : quick) {
    if (c.rank() == g.rank() && genus_equal(genus_symbol(c), g)) return lll_reduce(c).lattice;
  }
  // case (3) shape: diag(-2 x (r-1), -6) plus glue steps
  if (g.sig.first == 0 && g.rank() >= 2) {
    size_t r = g.rank();
    GramLattice seed = catalog("a1");
    for (size_t i = 0; i + 2 < r; ++i) seed = direct_sum(seed, catalog("a1"));
    seed = direct_sum(seed, catalog("<-6>"));
    size_t max_steps = (r >= 12) ? (r - 12) : 0;
    GramLattice out;
    if (glue_search(seed, g, max_steps, out)) return lll_reduce(out).lattice;
  }
  throw std::runtime_error("first_representative: no construction found for this genus");
}

namespace {

struct Candidate {
  GramLattice gram;
  Fingerprint fp;
  std::string provenance;
};

void root_flags(const GramLattice& neg, const Fingerprint& fp, bool& short_root,
                bool& long_root) {
  // fingerprint already knows the minimum; reuse the scan for the flags
  RootScanReport rep = root_scan(neg);
  (void)fp;
  short_root = rep.has_short_root;
  long_root = rep.has_long_root;
}

}  // namespace

WalkState enumerate_genus(const GramLattice& seed, const WalkConfig& cfg_in) {
  WalkConfig cfg = cfg_in;
  if (cfg.primes.empty()) cfg.primes = default_prime_pool(seed, 3);
  for (const Int& p : cfg.primes)
    if (gcd(p, 2 * abs(seed.det())) != 1)
      throw std::invalid_argument("enumerate_genus: prime not coprime to 2 det");
  GenusSymbol g = genus_symbol(seed);
  bool negdef = g.sig.first == 0;
  if (!negdef && g.sig.second != 0)
    throw std::invalid_argument("enumerate_genus: seed not definite");

  WalkState st;
  st.mass_target = mass(g);
  st.accumulated = 0;

  auto aut_with_retry = [&](const GramLattice& l) -> Int {
    try {
      return automorphism_order(l, cfg.isometry_budget);
    } catch (const IsometryBudgetExhausted&) {
      return automorphism_order(l, 8 * cfg.isometry_budget);
    }
  };
  auto iso_with_retry = [&](const GramLattice& a, const GramLattice& b) {
    try {
      return is_isometric(a, b, cfg.isometry_budget).has_value();
    } catch (const IsometryBudgetExhausted&) {
      return is_isometric(a, b, 8 * cfg.isometry_budget).has_value();
    }
  };

  auto try_insert = [&](const GramLattice& reduced, Fingerprint fp,
                        const std::string& prov) -> bool {
    for (const auto& rec : st.classes) {
      if (!(rec.fp == fp)) continue;
      if (iso_with_retry(rec.gram, reduced)) return false;
    }
    IsometryClassRecord rec;
    rec.gram = reduced;
    rec.fp = fp;
    rec.aut_order = aut_with_retry(reduced);
    rec.weight = Rat(1) / Rat(rec.aut_order);
    rec.weight.canonicalize();
    rec.min_norm = fp.min_norm;
    GramLattice neg = negdef ? reduced : rescale(reduced, -1);
    root_flags(neg, fp, rec.has_short_root, rec.has_long_root);
    rec.provenance = prov;
    st.classes.push_back(std::move(rec));
    st.accumulated += st.classes.back().weight;
    st.accumulated.canonicalize();
    if (st.accumulated > st.mass_target)
      throw std::logic_error("enumerate_genus: accumulated weight exceeds the mass");
    return true;
  };

  {
    GramLattice red = lll_reduce(seed).lattice;
    try_insert(red, fingerprint(red), "seed");
  }

  std::mt19937_64 rng(cfg.rng_seed);
  int stall = 0;
  size_t sample = cfg.sample;
  while (st.accumulated != st.mass_target) {
    if (stall > cfg.max_stall_rounds) break;
    ++st.rounds;
    size_t from = size_t(rng() % st.classes.size());
    const Int& p = cfg.primes[size_t(rng() % cfg.primes.size())];
    const GramLattice& base = st.classes[from].gram;
    std::vector<IVec> lines = isotropic_lines_random(base, p, sample, rng());

    // parallel candidate construction; insertion stays sequential
    std::vector<Candidate> cands(lines.size());
    std::vector<char> valid(lines.size(), 0);
    auto work = [&](size_t begin, size_t end) {
      for (size_t i = begin; i < end; ++i) {
        try {
          LatticeVector y = admissible_lift(base, lines[i], p);
          GramLattice nb = neighbour(base, y, p);
          cands[i].gram = nb;
          cands[i].fp = fingerprint(nb);
          cands[i].provenance =
              "p=" + p.get_str() + " from=" + std::to_string(from) + " round=" + std::to_string(st.rounds);
          valid[i] = 1;
        } catch (const std::exception&) {
          valid[i] = 0;
        }
      }
    };
    int nthreads = std::max(1, cfg.threads);
    if (nthreads == 1 || lines.size() < 8) {
      work(0, lines.size());
    } else {
      std::vector<std::thread> pool;
      size_t chunk = (lines.size() + nthreads - 1) / nthreads;
      for (int t = 0; t < nthreads; ++t) {
        size_t b = std::min(lines.size(), size_t(t) * chunk);
        size_t e = std::min(lines.size(), b + chunk);
        if (b < e) pool.emplace_back(work, b, e);
      }
      for (auto& th : pool) th.join();
    }
    bool progress = false;
    for (size_t i = 0; i < lines.size(); ++i) {
      if (!valid[i]) continue;
      if (cfg.check_genus && !genus_equal(genus_symbol(cands[i].gram), g))
        throw std::logic_error("enumerate_genus: neighbour left the genus");
      if (try_insert(cands[i].gram, cands[i].fp, cands[i].provenance)) progress = true;
      if (st.accumulated == st.mass_target) break;
    }
    if (progress) {
      stall = 0;
      sample = cfg.sample;
    } else {
      ++stall;
      if (stall % 10 == 0) sample *= 2;  // densify after repeated stalls
    }
  }
  st.deficit = st.mass_target - st.accumulated;
  st.deficit.canonicalize();
  if (st.deficit == 0) {
    st.status = WalkStatus::Complete;
    st.deficit_prime = 1;
  } else {
    st.status = WalkStatus::Incomplete;
    Int den = st.deficit.get_den();
    Int biggest(1);
    Int rem = den;
    for (Int f(2); f * f <= rem; f += 1) {
      while (mod(rem, f) == 0) {
        biggest = f;
        rem = divexact(rem, f);
      }
    }
    if (rem > 1) biggest = rem;
    st.deficit_prime = biggest;
  }
  return st;
}

}  // namespace latgen
