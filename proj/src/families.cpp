#include "zpl/families.hpp"

#include <algorithm>

namespace zpl {

const char* family_name(Family f) {
  switch (f) {
    case Family::L0: return "L0";
    case Family::L1: return "L1";
    case Family::L2: return "L2";
    case Family::L3: return "L3";
    case Family::L4: return "L4";
    case Family::L5: return "L5";
    case Family::L6: return "L6";
    case Family::L7: return "L7";
    case Family::Lab: return "Lab";
    case Family::Ld: return "Ld";
  }
  return "?";
}

Family parse_family(const std::string& s) {
  for (Family f : {Family::L0, Family::L1, Family::L2, Family::L3, Family::L4, Family::L5, Family::L6, Family::L7,
                   Family::Lab, Family::Ld})
    if (s == family_name(f)) return f;
  throw Error(Err::Parse, "unknown family '" + s + "'");
}

bool FamilyTag::operator==(const FamilyTag& o) const {
  return family == o.family && s == o.s && r == o.r && t == o.t && eps == o.eps && a == o.a && c == o.c &&
         avec == o.avec && bvec == o.bvec && d == o.d;
}

std::string describe(const FamilyTag& t) {
  std::string out = family_name(t.family);
  auto num = [](long v) { return std::to_string(v); };
  switch (t.family) {
    case Family::L0: break;
    case Family::L1:
    case Family::L3: out += "(" + num(t.s) + ")"; break;
    case Family::L2:
    case Family::L5: out += "(" + num(t.s) + "," + num(t.r) + "," + to_string(t.c) + ")"; break;
    case Family::L4: out += "(" + num(t.s) + "," + num(t.t) + "," + num(t.eps) + ")"; break;
    case Family::L6: out += "(" + to_string(t.a) + ")"; break;
    case Family::L7: out += "(" + num(t.s) + "," + to_string(t.a) + "," + to_string(t.c) + ")"; break;
    case Family::Ld: out = "L^" + num(t.d) + "(" + to_string(t.a) + ")"; break;
    case Family::Lab: {
      out = "L(";
      for (size_t i = 0; i < t.avec.size(); ++i) out += (i ? "," : "") + to_string(t.avec[i]);
      out += ";";
      for (size_t i = 0; i < t.bvec.size(); ++i) out += (i ? "," : "") + to_string(t.bvec[i]);
      out += ")";
      break;
    }
  }
  return out;
}

Mat family_matrix(const PContext& ctx, const FamilyTag& t) {
  if (t.s < 0 || t.r < 0 || t.t < 0) throw Error(Err::Domain, "negative exponent parameter");
  auto req = [&](const Q& x) { require_integral(ctx, x); };
  Q ps = ctx.qpow(t.s);
  switch (t.family) {
    case Family::L0: return Mat(2, 2);
    case Family::L1: return Mat::identity(2).scaled(ps);
    case Family::L2: {
      req(t.c);
      Q pr = ctx.qpow(t.r);
      return Mat::from_rows({{1, pr}, {pr * t.c, 1}}).scaled(ps);
    }
    case Family::L3: return Mat::from_rows({{0, 1}, {0, 0}}).scaled(ps);
    case Family::L4: {
      if (t.eps != 0 && t.eps != 1) throw Error(Err::Domain, "epsilon must be 0 or 1");
      Q rho = t.eps ? Q(ctx.rho()) : Q(1);
      ctx.require_odd("L4");
      return Mat::from_rows({{0, 1}, {ctx.qpow(t.t) * rho, 0}}).scaled(ps);
    }
    case Family::L5:
      req(t.c);
      return Mat::from_rows({{ctx.qpow(t.r), 1}, {t.c, 0}}).scaled(ps);
    case Family::L6: req(t.a); return Mat::identity(2).scaled(t.a);
    case Family::L7:
      req(t.a);
      req(t.c);
      return Mat::from_rows({{t.a, 1}, {t.c, 0}}).scaled(ps);
    case Family::Ld:
      if (t.d < 2) throw Error(Err::Domain, "L^d(a) needs d >= 2");
      req(t.a);
      return Mat::identity(t.d - 1).scaled(t.a);
    case Family::Lab: {
      int d = static_cast<int>(t.avec.size());
      if (d < 1 || static_cast<int>(t.bvec.size()) != d - 1) throw Error(Err::Domain, "L(a,b) needs |b| = |a| - 1");
      Mat A(d, d);
      for (int l = 0; l < d; ++l) {
        req(t.avec[l]);
        A(l, 0) = t.avec[l];
      }
      for (int i = 1; i < d; ++i) {
        req(t.bvec[i - 1]);
        A(i - 1, i) = t.bvec[i - 1];
      }
      return A;
    }
  }
  throw Error(Err::Domain, "unknown family");
}

LieLattice construct(const PContext& ctx, const FamilyTag& t) { return metabelian_lattice(ctx, family_matrix(ctx, t)); }

bool residually_nilpotent(const PContext& ctx, const FamilyTag& t) {
  switch (t.family) {
    case Family::L0:
    case Family::L3: return true;
    case Family::L1:
    case Family::L2: return t.s >= 1;
    case Family::L4: return t.s >= 1 || t.t >= 1;
    case Family::L5: return t.s >= 1 || (t.r >= 1 && val(ctx, t.c) >= 1);
    default: throw Error(Err::Domain, "residual nilpotency is tabulated for L0..L5 only");
  }
}

std::vector<Q> c_samples(const PContext& ctx) {
  const long p = ctx.p();
  std::vector<Q> out{Q(0), Q(1), Q(ctx.rho()), Q(p), Q(p * ctx.rho()), Q(p * p)};
  for (long want = 0; want <= 2; ++want)
    for (long c = 1; c < p * p * p; ++c)
      if (val(ctx, Q(4 * c + 1)) == want) {
        if (std::find(out.begin(), out.end(), Q(c)) == out.end()) out.push_back(Q(c));
        break;
      }
  return out;
}

std::vector<FamilyTag> rank3_grid(const PContext& ctx) {
  std::vector<FamilyTag> tags;
  auto add = [&](Family f, long s, long r, long t, int e, const Q& c) {
    FamilyTag x;
    x.family = f;
    x.s = s;
    x.r = r;
    x.t = t;
    x.eps = e;
    x.c = c;
    tags.push_back(x);
  };
  add(Family::L0, 0, 0, 0, 0, 0);
  std::vector<Q> cs = c_samples(ctx);
  for (long s = 0; s < 3; ++s) {
    add(Family::L1, s, 0, 0, 0, 0);
    add(Family::L3, s, 0, 0, 0, 0);
    for (long t = 0; t < 3; ++t)
      for (int e = 0; e < 2; ++e) add(Family::L4, s, 0, t, e, 0);
    for (long r = 0; r < 3; ++r)
      for (const Q& c : cs) {
        if (r >= 1) add(Family::L2, s, r, 0, 0, c);
        add(Family::L5, s, r, 0, 0, c);
      }
  }
  return tags;
}

Mat NormalForm::matrix(const PContext& ctx) const {
  Q ps = ctx.qpow(s);
  switch (kind) {
    case Kind::Zero: return Mat(2, 2);
    case Kind::Scalar: return Mat::identity(2).scaled(ps);
    case Kind::Unipotent: {
      Q pr = ctx.qpow(r);
      return Mat::from_rows({{1, pr}, {pr * c, 1}}).scaled(ps);
    }
    case Kind::Companion: return Mat::from_rows({{a, 1}, {c, 0}}).scaled(ps);
  }
  return Mat(2, 2);
}

namespace {

// v in {e1, e2, e1+e2} with (K v, v) a basis modulo p.
Vec cyclic_vector(const PContext& ctx, const Mat& K) {
  for (Vec v : {Vec{1, 0}, Vec{0, 1}, Vec{1, 1}}) {
    Vec kv = K * v;
    Q dt = kv[0] * v[1] - kv[1] * v[0];
    if (is_unit(ctx, dt)) return v;
  }
  throw Error(Err::Domain, "matrix is scalar modulo p");
}

Vec lift(const Mat& P, const Vec& j) {
  Vec out(P.rows());
  for (int l = 0; l < 2; ++l) out = vadd(out, vscale(P.col(l + 1), j[l]));
  return out;
}

bool rational_square(const Q& x, Q* root) {
  if (x < 0) return false;
  if (!mpz_perfect_square_p(x.get_num_mpz_t()) || !mpz_perfect_square_p(x.get_den_mpz_t())) return false;
  Z n, d;
  mpz_sqrt(n.get_mpz_t(), x.get_num_mpz_t());
  mpz_sqrt(d.get_mpz_t(), x.get_den_mpz_t());
  *root = Q(n, d);
  root->canonicalize();
  return true;
}

}  // namespace

NormalForm normal_form(const LieLattice& L) {
  const PContext& ctx = L.ctx();
  ctx.require_odd("classification");
  if (L.rank() != 3) throw Error(Err::Domain, "classification needs rank 3");
  if (!is_solvable(L)) throw Error(Err::Unsolvable, "lattice is not solvable");
  auto gb = find_good_basis(L);
  if (!gb) throw Error(Err::Unsupported, "no abelian ideal of rank 2 found");
  NormalForm nf;
  const Mat& A = gb->A;
  const Mat& P = gb->basis;
  if (A.is_zero()) {
    nf.kind = NormalForm::Kind::Zero;
    nf.basis = P;
    return nf;
  }
  nf.s = min_val(ctx, A);
  Mat Ap = A.scaled(1 / ctx.qpow(nf.s));
  bool scalar_mod_p = val(ctx, Ap(0, 1)) >= 1 && val(ctx, Ap(1, 0)) >= 1 && val(ctx, Ap(0, 0) - Ap(1, 1)) >= 1;
  nf.basis = Mat(3, 3);
  if (scalar_mod_p) {
    Q t = (Ap(0, 0) + Ap(1, 1)) / 2;
    Mat D = Ap - Mat::identity(2).scaled(t);
    nf.basis.set_col(0, vscale(P.col(0), 1 / t));
    if (D.is_zero()) {
      nf.kind = NormalForm::Kind::Scalar;
      nf.basis.set_col(1, P.col(1));
      nf.basis.set_col(2, P.col(2));
      return nf;
    }
    nf.kind = NormalForm::Kind::Unipotent;
    nf.r = min_val(ctx, D);
    Mat K = D.scaled(1 / (t * ctx.qpow(nf.r)));
    nf.c = -det(K);
    Vec v = cyclic_vector(ctx, K);
    nf.basis.set_col(1, lift(P, K * v));
    nf.basis.set_col(2, lift(P, v));
    return nf;
  }
  nf.kind = NormalForm::Kind::Companion;
  nf.a = Ap(0, 0) + Ap(1, 1);
  nf.c = -det(Ap);
  Vec v = cyclic_vector(ctx, Ap);
  nf.basis.set_col(0, P.col(0));
  nf.basis.set_col(1, lift(P, Ap * v));
  nf.basis.set_col(2, lift(P, v));
  return nf;
}

Recognition recognize(const LieLattice& L) {
  const PContext& ctx = L.ctx();
  Recognition rec;
  rec.nf = normal_form(L);
  const NormalForm& nf = rec.nf;
  FamilyTag& tag = rec.tag;
  tag.s = nf.s;
  rec.iso = nf.basis;
  switch (nf.kind) {
    case NormalForm::Kind::Zero:
      tag = FamilyTag{};
      tag.family = Family::L0;
      return rec;
    case NormalForm::Kind::Scalar: tag.family = Family::L1; return rec;
    case NormalForm::Kind::Unipotent:
      tag.family = Family::L2;
      tag.r = nf.r;
      tag.c = nf.c;
      return rec;
    case NormalForm::Kind::Companion: break;
  }
  if (nf.a == 0 && nf.c == 0) {
    tag.family = Family::L3;
    return rec;
  }
  if (nf.a == 0) {
    tag.family = Family::L4;
    tag.t = val(ctx, nf.c);
    Q u = nf.c / ctx.qpow(tag.t);
    tag.eps = is_square_unit(ctx, u) ? 0 : 1;
    Q target = u / (tag.eps ? Q(ctx.rho()) : Q(1));
    Q mu;
    if (!rational_square(target, &mu)) {
      mu = Q(sqrt_unit(ctx, target, ctx.precision()));
      rec.iso_exact = false;
      rec.precision = ctx.precision();
    }
    rec.iso.set_col(0, vscale(nf.basis.col(0), 1 / mu));
    rec.iso.set_col(1, vscale(nf.basis.col(1), 1 / mu));
    return rec;
  }
  tag.family = Family::L5;
  tag.r = val(ctx, nf.a);
  Q u = ctx.qpow(tag.r) / nf.a;
  tag.c = nf.c * u * u;
  rec.iso.set_col(0, vscale(nf.basis.col(0), u));
  rec.iso.set_col(1, vscale(nf.basis.col(1), u));
  return rec;
}

bool verify_iso(const LieLattice& src, const LieLattice& dst, const Mat& P, int prec) {
  const PContext& ctx = dst.ctx();
  if (P.rows() != dst.rank() || P.cols() != src.rank() || src.rank() != dst.rank()) return false;
  if (!is_integral(ctx, P) || !is_unit(ctx, det(P))) return false;
  for (int i = 0; i < src.rank(); ++i)
    for (int j = i + 1; j < src.rank(); ++j) {
      Vec diff = vsub(P * src.bracket_basis(i, j), dst.bracket(P.col(i), P.col(j)));
      for (const Q& x : diff) {
        if (prec <= 0 ? x != 0 : val(ctx, x) < prec) return false;
      }
    }
  return true;
}

}  // namespace zpl
