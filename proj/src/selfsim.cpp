#include "zpl/selfsim.hpp"

#include <algorithm>

namespace zpl {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Simple: return "simple";
    case Verdict::NotSimple: return "not-simple";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

Mat VirtualEndo::phi() const { return F * inverse(U); }

Submodule VirtualEndo::domain() const { return hnf(L.ctx(), U); }

VirtualEndo make_endo(const LieLattice& L, const Mat& U, const Mat& F) {
  const PContext& ctx = L.ctx();
  int n = L.rank();
  if (U.rows() != n || U.cols() != n || F.rows() != n || F.cols() != n)
    throw Error(Err::RankMismatch, "U and F must be square of the lattice rank");
  if (!is_integral(ctx, U)) throw Error(Err::MalformedMatrix, "U has non-integral entries");
  if (!is_integral(ctx, F)) throw Error(Err::MalformedMatrix, "F has non-integral entries");
  if (rank(U) != n) throw Error(Err::Domain, "domain must have finite index");
  Submodule M = hnf(ctx, U);
  const Mat& H = M.gens();
  Mat FH = F * (inverse(U) * H);
  if (!is_subalgebra(L, M)) throw Error(Err::NotSubalgebra, "domain is not a subalgebra");
  LieLattice N = in_basis(L, H);
  if (auto bad = hom_defect(N, L, FH))
    throw Error(Err::NotHomomorphism, "brackets not preserved on basis pair (" + std::to_string(bad->first) + "," +
                                          std::to_string(bad->second) + ")");
  VirtualEndo e;
  e.L = L;
  e.U = H;
  e.F = FH;
  e.index_log = index_log(ctx, M);
  return e;
}

VirtualEndo transport(const VirtualEndo& e, const LieLattice& target, const Mat& P) {
  return make_endo(target, P * e.U, P * e.F);
}

namespace {

// Isolated lattice L cap span(V) for a rational column basis V.
Submodule lattice_of(const PContext& ctx, const Mat& V) {
  int n = V.rows();
  if (V.cols() == 0) return Submodule::zero(n);
  Mat W = V;
  for (int j = 0; j < W.cols(); ++j) {
    Vec c = W.col(j);
    long m = kInf;
    for (const Q& x : c) m = std::min(m, val(ctx, x));
    W.set_col(j, vscale(c, ctx.qpow(-m)));
  }
  return isolator(ctx, hnf(ctx, W));
}


// Rational roots of a polynomial (low to high coefficients), found by the rational root test.
std::vector<Q> rational_roots(const Poly& poly) {
  std::vector<Q> roots;
  int deg = static_cast<int>(poly.c.size()) - 1;
  if (deg < 1) return roots;
  Q lead = poly.c[deg];
  std::vector<Q> c(poly.c.size());
  for (int i = 0; i <= deg; ++i) c[i] = poly.c[i] / lead;
  // clear denominators: lambda = mu / D
  Z D = 1;
  for (const Q& x : c) mpz_lcm(D.get_mpz_t(), D.get_mpz_t(), x.get_den_mpz_t());
  std::vector<Z> ic(deg + 1);
  Z Dp = 1;
  for (int i = deg; i >= 0; --i) {
    Q v = c[i] * Q(Dp);
    ic[i] = v.get_num();
    Dp *= D;
  }
  int low = 0;
  while (low <= deg && ic[low] == 0) ++low;
  if (low > 0) roots.push_back(0);
  if (low >= deg) return roots;
  Z k = abs(ic[low]);
  if (k > Z("1000000000000")) return roots;
  auto eval = [&](const Z& mu) {
    Z s = 0;
    for (int i = deg; i >= low; --i) s = s * mu + ic[i];
    return s;
  };
  std::vector<Z> divs;
  for (Z q = 1; q * q <= k; ++q)
    if (k % q == 0) {
      divs.push_back(q);
      if (q * q != k) divs.push_back(k / q);
    }
  for (const Z& q : divs)
    for (int sg : {1, -1}) {
      Z mu = q * sg;
      if (eval(mu) == 0) {
        Q r(mu, D);
        r.canonicalize();
        roots.push_back(r);
      }
    }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

Mat mat_pow(const Mat& m, int k) {
  Mat r = Mat::identity(m.rows());
  for (int i = 0; i < k; ++i) r = r * m;
  return r;
}

}  // namespace

DomainChain domain_chain(const VirtualEndo& e, int n) {
  const PContext& ctx = e.L.ctx();
  Mat Phi = e.phi();
  Submodule M = e.domain();
  DomainChain ch;
  ch.D.push_back(M);
  int steps = std::max(n, 2);
  int total = std::max(2 * steps, 4 * e.L.rank() + 8);
  for (int k = 0; k < total; ++k) ch.D.push_back(preimage(ctx, Phi, ch.D.back(), M));
  std::vector<long> late = elementary_divisors(ctx, ch.D[total].gens());
  std::vector<long> mid = elementary_divisors(ctx, ch.D[total / 2].gens());
  std::sort(late.begin(), late.end());
  std::sort(mid.begin(), mid.end());
  int b = 0;
  for (size_t i = 0; i < late.size(); ++i)
    if (late[i] == mid[i]) ++b;
  int dim = e.L.rank();
  if (b == 0) {
    ch.stabilized_isolator = Submodule::zero(dim);
  } else if (b == dim) {
    ch.stabilized_isolator = Submodule::full(dim);
  } else {
    Mat V(dim, 0);
    for (const Q& lam : rational_roots(charpoly(Phi))) {
      if (val(ctx, lam) < 0) continue;
      Mat K = nullspace(mat_pow(Phi - Mat::identity(dim).scaled(lam), dim));
      V = colspace(hcat(V, K));
    }
    if (V.cols() == b) ch.stabilized_isolator = lattice_of(ctx, V);
  }
  ch.D.resize(n + 1);
  return ch;
}

bool is_invariant_ideal(const VirtualEndo& e, const Submodule& I) {
  const PContext& ctx = e.L.ctx();
  if (I.rank() == 0) return false;
  if (!is_ideal(e.L, I)) return false;
  if (!contains(ctx, e.domain(), I)) return false;
  Mat Phi = e.phi();
  for (int j = 0; j < I.rank(); ++j)
    if (!member(ctx, Phi * I.gens().col(j), I)) return false;
  return true;
}

namespace {

SimplicityVerdict simple(const std::string& strategy) {
  SimplicityVerdict v;
  v.status = Verdict::Simple;
  v.strategy = strategy;
  return v;
}

// Greatest Phi-invariant ideal subspace of Q^n.
Mat rational_core(const LieLattice& L, const Mat& Phi) {
  Mat V = Mat::identity(L.rank());
  while (V.cols() > 0) {
    Mat W = ideal_core(L, subspace_preimage(Phi, V, V));
    if (W.cols() == V.cols()) return V;
    V = W;
  }
  return V;
}

// Matrix of Phi restricted to the invariant subspace spanned by the columns of V.
Mat restricted_map(const Mat& Phi, const Mat& V) {
  Mat R(V.cols(), V.cols());
  for (int j = 0; j < V.cols(); ++j) {
    auto t = solve_in_span(V, Phi * V.col(j));
    if (!t) throw Error(Err::Domain, "subspace is not invariant");
    R.set_col(j, *t);
  }
  return R;
}

std::optional<Submodule> integral_fixpoint(const VirtualEndo& e, const Mat& Phi, const Submodule& S0, int cap,
                                           int* steps, bool* capped) {
  const PContext& ctx = e.L.ctx();
  int n = e.L.rank();
  Submodule S = S0;
  *capped = false;
  for (int k = 0; k < cap; ++k) {
    *steps = k + 1;
    if (S.rank() == 0) return S;
    Submodule T = intersect(ctx, S, preimage(ctx, Phi, S, S));
    if (!e.L.is_abelian())
      for (int i = 0; i < n; ++i) T = intersect(ctx, T, preimage(ctx, e.L.ad(unit_vec(n, i)), S, S));
    if (T == S) return S;
    S = T;
  }
  *capped = true;
  return std::nullopt;
}

}  // namespace

SimplicityVerdict simplicity(const VirtualEndo& e, const SimplicityConfig& cfg) {
  const PContext& ctx = e.L.ctx();
  const LieLattice& L = e.L;
  int n = L.rank();
  Mat Phi = e.phi();
  Submodule M = e.domain();
  Mat V = Mat::identity(n);
  if (cfg.rational_core) {
    V = rational_core(L, Phi);
    if (V.cols() == 0) return simple("rational-core");
  }
  std::string note;
  if (cfg.abelian && L.is_abelian()) {
    Poly cp = charpoly(restricted_map(Phi, V));
    Tri t = has_monic_integral_irreducible_factor(ctx, cp, cfg.degree_cap);
    if (t == Tri::False) return simple("abelian-charpoly");
    if (t == Tri::True) note = "characteristic polynomial has a monic integral factor";
  }
  if (cfg.metabelian && !L.is_abelian()) {
    std::vector<GoodBasis> gbs = good_basis_candidates(L);
    // abelian ideals of corank one that phi preserves: complements of rational eigenlines
    for (const Q& lam : rational_roots(charpoly(Phi))) {
      Mat T = Phi - Mat::identity(n).scaled(lam), Tn = Mat::identity(n);
      for (int i = 0; i < n; ++i) Tn = Tn * T;
      Mat W = colspace(Tn);
      if (W.cols() != n - 1) continue;
      if (auto gb = good_basis_for_ideal(L, lattice_of(ctx, W))) gbs.push_back(*gb);
    }
    for (const GoodBasis* gb = gbs.data(); gb != gbs.data() + gbs.size(); ++gb) {
      int d = gb->d();
      Mat Pg = gb->basis;
      Mat G = inverse(Pg) * Phi * Pg;
      bool keeps_J = true;
      for (int j = 1; j <= d; ++j) keeps_J = keeps_J && G(0, j) == 0;
      if (keeps_J) {
        Q lam0 = G(0, 0);
        Mat PJ = G.block(1, 1, d, d);
        Tri t = has_monic_integral_irreducible_factor(ctx, charpoly(PJ), cfg.degree_cap);
        if (t == Tri::False) {
          if (val(ctx, lam0) < 0) return simple("metabelian-split");
          Vec c(d);
          for (int i = 0; i < d; ++i) c[i] = -G(i + 1, 0);
          Vec w = inverse(PJ - Mat::identity(d).scaled(lam0)) * c;
          Vec vg(d + 1);
          vg[0] = 1;
          for (int i = 0; i < d; ++i) vg[i + 1] = w[i];
          Vec v = Pg * vg;
          Mat line = Mat::from_cols({v});
          if (ideal_core(L, line).cols() == 0) return simple("metabelian-split");
          Submodule ell = lattice_of(ctx, line);
          Vec g = ell.gens().col(0);
          for (long m = 0; m < 64; ++m) {
            Submodule I = span(ctx, {vscale(g, ctx.qpow(m))}, n);
            if (contains(ctx, M, I)) {
              if (is_invariant_ideal(e, I)) {
                SimplicityVerdict out;
                out.status = Verdict::NotSimple;
                out.strategy = "metabelian-split";
                out.witness = I;
                return out;
              }
              break;
            }
          }
        }
      }
    }
  }
  if (cfg.fixpoint) {
    Submodule S0 = intersect(ctx, M, lattice_of(ctx, V));
    int steps = 0;
    bool capped = false;
    auto S = integral_fixpoint(e, Phi, S0, cfg.cap, &steps, &capped);
    if (S) {
      if (S->rank() == 0) {
        SimplicityVerdict out = simple("integral-fixpoint");
        out.fixpoint_steps = steps;
        return out;
      }
      SimplicityVerdict out;
      out.status = Verdict::NotSimple;
      out.strategy = "integral-fixpoint";
      out.witness = *S;
      out.fixpoint_steps = steps;
      return out;
    }
    SimplicityVerdict out;
    out.fixpoint_steps = steps;
    if (!note.empty()) {
      // the invariant part exists but is not cut out over Q
      out.status = Verdict::NotSimple;
      out.strategy = "abelian-charpoly";
      out.reason = note + "; no rational witness";
      return out;
    }
    out.status = Verdict::Inconclusive;
    out.strategy = "integral-fixpoint";
    out.reason = "step cap reached";
    return out;
  }
  SimplicityVerdict out;
  if (!note.empty()) {
    out.status = Verdict::NotSimple;
    out.strategy = "abelian-charpoly";
    out.reason = note;
    return out;
  }
  out.reason = "no strategy applied";
  return out;
}

// ---------------------------------------------------------------- certificates

VirtualEndo abelian_cyclic_endo(const LieLattice& L, long k) {
  const PContext& ctx = L.ctx();
  int n = L.rank();
  if (!L.is_abelian()) throw Error(Err::NoCertificate, "cyclic construction needs an abelian lattice");
  Mat U = Mat::identity(n);
  U(n - 1, n - 1) = ctx.qpow(k);
  Mat F(n, n);
  for (int i = 0; i + 1 < n; ++i) F(i + 1, i) = 1;
  F(0, n - 1) = 1;
  return make_endo(L, U, F);
}

VirtualEndo codim1_endo(const LieLattice& L, const GoodBasis& gb, long m) {
  const PContext& ctx = L.ctx();
  if (L.is_abelian()) return abelian_cyclic_endo(L, m * gb.d());
  int n = L.rank();
  Mat Ug = Mat::identity(n);
  for (int i = 1; i < n; ++i) Ug(i, i) = ctx.qpow(m);
  return make_endo(L, gb.basis * Ug, gb.basis);
}

namespace {

Mat cols3(const Vec& a, const Vec& b, const Vec& c) { return Mat::from_cols({a, b, c}); }

// Odd-index constructions on A = p^s [[a,1],[c,0]] in good coordinates.
std::optional<std::pair<Mat, Mat>> companion_odd(const PContext& ctx, const Q& a, const Q& c, long l) {
  Q pl = ctx.qpow(l), pl1 = ctx.qpow(l + 1), p = ctx.qpow(1);
  Vec e0{1, 0, 0};
  if (val(ctx, c) == 1 && val(ctx, a) >= 1) {
    Mat U = cols3(e0, {0, pl, 0}, {0, 0, pl1});
    Mat F = cols3(e0, {0, 0, c / p}, {0, 1, -a});
    return std::make_pair(U, F);
  }
  if (ctx.p() != 2 && val(ctx, a) == 0 && val(ctx, c) == 0 && val(ctx, 4 * c + a * a) == 1) {
    Q h = a / 2;
    Mat U = cols3(e0, {0, pl, -pl * h}, {0, 0, pl1});
    Mat F = cols3(e0, {0, 0, (c + a * a / 4) / p}, {0, 1, -h});
    return std::make_pair(U, F);
  }
  if (ctx.p() != 2 && a == 0 && val(ctx, c) == 0 && is_square_unit(ctx, c)) {
    Vec m0{-1, 0, 0};
    if (c == 1) {
      Mat U = cols3(e0, {0, pl, -pl}, {0, 0, pl1});
      Mat F = cols3(m0, {0, 1, 1}, {0, 1, -(1 + p)});
      return std::make_pair(U, F);
    }
    Z f = sqrt_unit(ctx, c, 1);
    if (val(ctx, c - Q(f * f)) >= 2) f += ctx.pz();
    Q fq(f);
    Mat U = cols3(e0, {0, pl, -pl * fq}, {0, 0, pl1});
    Mat F = cols3(m0, {0, 0, (fq * fq - c) / p}, {0, 1, -fq});
    return std::make_pair(U, F);
  }
  return std::nullopt;
}

std::optional<std::pair<Mat, Mat>> unipotent_odd(const PContext& ctx, const Q& c, long l) {
  if (val(ctx, c) != 1) return std::nullopt;
  Q pl = ctx.qpow(l), pl1 = ctx.qpow(l + 1), p = ctx.qpow(1);
  Vec e0{1, 0, 0};
  Mat U = cols3(e0, {0, pl, 0}, {0, 0, pl1});
  Mat F = cols3(e0, {0, 1, c / p}, {0, 1, p});
  return std::make_pair(U, F);
}

VirtualEndo scalar_endo(const LieLattice& L, long k) {
  const PContext& ctx = L.ctx();
  int n = L.rank();
  if (L.is_abelian()) return abelian_cyclic_endo(L, k);
  Mat U = Mat::identity(n);
  Mat F(n, n);
  F(0, 0) = 1;
  if (n == 2) {
    U(1, 1) = ctx.qpow(k);
    F(1, 1) = 1;
  } else {
    U(1, 1) = ctx.qpow(k);
    F(2, 1) = 1;  // p^k x_1 -> x_2
    for (int i = 2; i + 1 < n; ++i) F(i + 1, i) = 1;
    F(1, n - 1) = 1;  // x_{d-1} -> x_1
  }
  return make_endo(L, U, F);
}

}  // namespace

VirtualEndo certify_matrix(const PContext& ctx, const Mat& A, long k) {
  if (k < 1) throw Error(Err::Domain, "index exponent must be positive");
  LieLattice L = metabelian_lattice(ctx, A);
  int d = A.rows();
  bool scalar = true;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) scalar = scalar && A(i, j) == (i == j ? A(0, 0) : Q(0));
  if (scalar) return scalar_endo(L, k);
  if (d == 2) {
    GoodBasis gb = good_basis_from(L, Mat::identity(3));
    if (k % 2 == 0) return codim1_endo(L, gb, k / 2);
    long l = (k - 1) / 2;
    long s = min_val(ctx, A);
    Mat Ap = A.scaled(1 / ctx.qpow(s));
    std::optional<std::pair<Mat, Mat>> uf;
    if (Ap(0, 0) == Ap(1, 1) && Ap(0, 0) != 0 && val(ctx, Ap(0, 1)) >= 1 && is_unit(ctx, Ap(0, 0))) {
      // p^s t (I + p^r [[0, 1], [c, 0]])
      Q t = Ap(0, 0);
      long r = val(ctx, Ap(0, 1) / t);
      if (r >= 1 && Ap(0, 1) == t * ctx.qpow(r)) uf = unipotent_odd(ctx, Ap(1, 0) / (t * ctx.qpow(r)), l);
    } else if (Ap(0, 1) == 1 && Ap(1, 1) == 0) {
      uf = companion_odd(ctx, Ap(0, 0), Ap(1, 0), l);
    }
    if (uf) return make_endo(L, uf->first, uf->second);
  }
  throw Error(Err::NoCertificate, "no explicit construction for this lattice at index p^" + std::to_string(k));
}

VirtualEndo certify(const PContext& ctx, const FamilyTag& tag, long k) {
  if (k < 1) throw Error(Err::Domain, "index exponent must be positive");
  Mat A = family_matrix(ctx, tag);
  switch (tag.family) {
    case Family::L0:
    case Family::L1:
    case Family::L6:
    case Family::Ld: return certify_matrix(ctx, A, k);
    case Family::Lab: {
      LieLattice L = metabelian_lattice(ctx, A);
      return codim1_endo(L, good_basis_from(L, Mat::identity(L.rank())), k);
    }
    case Family::L4:
    case Family::L5: {
      // same lattice presented as p^s [[a,1],[c,0]]
      FamilyTag t7;
      t7.family = Family::L7;
      t7.s = tag.s;
      if (tag.family == Family::L4) {
        t7.a = 0;
        t7.c = ctx.qpow(tag.t) * (tag.eps ? Q(ctx.rho()) : Q(1));
      } else {
        t7.a = ctx.qpow(tag.r);
        t7.c = tag.c;
      }
      return certify_matrix(ctx, family_matrix(ctx, t7), k);
    }
    default: return certify_matrix(ctx, A, k);
  }
}

bool in_index_p_list(const PContext& ctx, const FamilyTag& t) {
  switch (t.family) {
    case Family::L0:
    case Family::L1: return true;
    case Family::L2: return t.r >= 1 && val(ctx, t.c) == 1;
    case Family::L3: return false;
    case Family::L4: return t.t == 1 || (t.t == 0 && t.eps == 0);
    case Family::L5: return (t.r >= 1 && val(ctx, t.c) == 1) || (t.r == 0 && val(ctx, 4 * t.c + 1) == 1);
    default: throw Error(Err::Domain, "tag is not a rank-3 classification label");
  }
}

Decision decide_ss_index_3dim(const LieLattice& L) {
  const PContext& ctx = L.ctx();
  Recognition rec = recognize(L);
  Decision dec;
  dec.tag = rec.tag;
  dec.index_p = in_index_p_list(ctx, rec.tag);
  const NormalForm& nf = rec.nf;
  Mat A = nf.matrix(ctx);
  LieLattice N = metabelian_lattice(ctx, A);
  VirtualEndo cert;
  if (dec.index_p) {
    cert = certify_matrix(ctx, A, 1);
  } else {
    cert = codim1_endo(N, good_basis_from(N, Mat::identity(3)), 1);
    if (rank(A) == 1)
      dec.obstruction = "derived-rank-one";
    else if (nf.kind == NormalForm::Kind::Unipotent)
      dec.obstruction = "unipotent-valuation";
    else
      dec.obstruction = "companion-congruence";
  }
  dec.certificate = transport(cert, L, nf.basis);
  return dec;
}

Hereditary hereditary_3dim(const LieLattice& L) {
  const PContext& ctx = L.ctx();
  Recognition rec = recognize(L);
  Hereditary h;
  h.tag = rec.tag;
  if (rec.tag.family == Family::L0 || rec.tag.family == Family::L1) {
    h.hereditary = true;
    return h;
  }
  const NormalForm& nf = rec.nf;
  Mat A = nf.matrix(ctx);
  Mat P = nf.basis;
  Mat D = Mat::diag({1, ctx.qpow(1), 1});
  if (rank(A) == 1) {
    h.witness = Submodule::full(3);
  } else if (nf.kind == NormalForm::Kind::Unipotent) {
    h.witness = hnf(ctx, P * D);
  } else {
    Mat base = nf.s == 0 ? P.scaled(ctx.qpow(1)) : P;
    h.witness = hnf(ctx, base * D);
  }
  Restriction R = restrict_to(L, *h.witness);
  h.witness_verified = !decide_ss_index_3dim(R.lattice).index_p;
  return h;
}

bool nonss_hypotheses(const PContext& ctx, const std::vector<Q>& a, const std::vector<Q>& b) {
  int d = static_cast<int>(a.size());
  if (static_cast<int>(b.size()) != d - 1 || d < 1) return false;
  if (a[d - 1] == 0) return false;
  auto v = [&](const Q& x) { return val(ctx, x); };
  for (int i = 0; i + 1 < d - 1; ++i)
    if (!(v(b[i]) < v(b[i + 1]))) return false;
  for (int i = 0; i < d - 1; ++i)
    if (!(v(b[i]) < v(a[i]))) return false;
  if (d >= 2) {
    long vb = v(b[d - 2]);
    if (vb == kInf || !(vb + 1 < v(a[d - 1]))) return false;
  }
  return true;
}

std::optional<std::pair<std::vector<Q>, std::vector<Q>>> lab_shape(const LieLattice& L) {
  int n = L.rank();
  int d = n - 1;
  if (d < 1) return std::nullopt;
  for (int i = 1; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (!vzero(L.bracket_basis(i, j))) return std::nullopt;
  std::vector<Q> a(d), b(d - 1);
  Vec v1 = L.bracket_basis(0, 1);
  if (v1[0] != 0) return std::nullopt;
  for (int i = 1; i <= d; ++i) a[i - 1] = v1[i];
  for (int i = 1; i < d; ++i) {
    Vec v = L.bracket_basis(0, i + 1);
    for (int k = 0; k < n; ++k)
      if (k != i && v[k] != 0) return std::nullopt;
    b[i - 1] = v[i];
  }
  return std::make_pair(a, b);
}

NonssWitness witness_nonss(const LieLattice& L) {
  const PContext& ctx = L.ctx();
  auto shape = lab_shape(L);
  if (!shape) throw Error(Err::ShapeMismatch, "lattice is not presented as L(a,b)");
  const auto& [a, b] = *shape;
  int d = static_cast<int>(a.size());
  if (a[d - 1] == 0) throw Error(Err::ShapeMismatch, "a_d must be nonzero");
  for (const Q& bi : b)
    if (bi != 1) throw Error(Err::ShapeMismatch, "all b_i must equal 1");
  NonssWitness w;
  w.k.assign(d + 1, 0);
  long k0 = (d - 1) / 2 + 1;
  long k1 = 0;
  for (long i = 1; i <= d; ++i) k1 = std::max(k1, (i - 1) * k0 - (i - 1) * (i - 2) / 2);
  w.k[0] = k0;
  w.k[1] = k1;
  for (long i = 2; i <= d; ++i) w.k[i] = k1 - (i - 1) * k0 + (i - 1) * (i - 2) / 2;
  w.inequalities = true;
  for (long i = 1; i <= d; ++i) w.inequalities = w.inequalities && (k0 + k1 - w.k[i] > i - 1);
  Vec diag(d + 1);
  for (int i = 0; i <= d; ++i) diag[i] = ctx.qpow(w.k[i]);
  w.M = hnf(ctx, Mat::diag(diag));
  LieLattice R = in_basis(L, Mat::diag(diag));
  auto rs = lab_shape(R);
  if (rs) {
    w.a = rs->first;
    w.b = rs->second;
    w.hypotheses = nonss_hypotheses(ctx, w.a, w.b);
  }
  return w;
}

ShssResult shss_classify(const LieLattice& L) {
  const PContext& ctx = L.ctx();
  ctx.require_odd("shss classification");
  if (L.rank() < 2) throw Error(Err::Domain, "rank must be at least 2");
  if (!is_solvable(L)) throw Error(Err::Unsolvable, "lattice is not solvable");
  ShssResult res;
  if (L.is_abelian()) {
    res.shss = true;
    res.s = kInf;
    return res;
  }
  auto gb = find_good_basis(L);
  if (!gb) return res;
  const Mat& A = gb->A;
  int d = gb->d();
  bool scalar = true;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) scalar = scalar && A(i, j) == (i == j ? A(0, 0) : Q(0));
  if (scalar) {
    res.shss = true;
    res.s = val(ctx, A(0, 0));
    return res;
  }
  if (L.rank() == 3) {
    Hereditary h = hereditary_3dim(L);
    res.witness = h.witness;
    res.witness_kind = "rank-3";
    return res;
  }
  // cyclic reduction: <x_0, A^{d-1} z, ..., A z, z> is L(a, 1) when z is cyclic and A invertible
  if (det(A) == 0) return res;
  std::vector<Vec> tries;
  for (int i = 0; i < d; ++i) tries.push_back(unit_vec(d, i));
  Vec all(d, Q(1));
  tries.push_back(all);
  for (const Vec& z : tries) {
    std::vector<Vec> chain{z};
    for (int i = 1; i < d; ++i) chain.push_back(A * chain.back());
    Mat C(d, d);
    for (int i = 0; i < d; ++i) C.set_col(i, chain[d - 1 - i]);
    if (rank(C) != d) continue;
    int n = d + 1;
    Mat B(n, n);
    B.set_col(0, gb->basis.col(0));
    for (int i = 0; i < d; ++i) {
      Vec amb(n);
      for (int l = 0; l < d; ++l) amb = vadd(amb, vscale(gb->basis.col(l + 1), C(l, i)));
      B.set_col(i + 1, amb);
    }
    LieLattice N = in_basis(L, B);
    NonssWitness w = witness_nonss(N);
    res.witness = hnf(ctx, B * w.M.gens());
    res.witness_kind = "cyclic-reduction";
    return res;
  }
  return res;
}

}  // namespace zpl
