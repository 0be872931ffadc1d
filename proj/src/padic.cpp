#include "zpl/padic.hpp"

#include <algorithm>

namespace zpl {

const char* err_name(Err e) {
  switch (e) {
    case Err::MalformedScalar: return "malformed-scalar";
    case Err::EmptyModulus: return "empty-modulus";
    case Err::NonUnit: return "non-unit";
    case Err::UnsupportedPrime: return "unsupported-prime";
    case Err::HenselFailure: return "hensel-failure";
    case Err::NoRoot: return "no-root";
    case Err::MalformedPoly: return "malformed-polynomial";
    case Err::MalformedMatrix: return "malformed-matrix";
    case Err::RankMismatch: return "rank-mismatch";
    case Err::Antisymmetry: return "antisymmetry-violation";
    case Err::Jacobi: return "jacobi-violation";
    case Err::NonIntegral: return "non-integral-constant";
    case Err::NotClosed: return "not-closed";
    case Err::Singular: return "singular";
    case Err::NoCertificate: return "no-certificate";
    case Err::ShapeMismatch: return "shape-mismatch";
    case Err::Unsolvable: return "unsolvable";
    case Err::NotSubalgebra: return "not-subalgebra";
    case Err::NotHomomorphism: return "not-homomorphism";
    case Err::Domain: return "out-of-domain";
    case Err::NotIdeal: return "not-ideal";
    case Err::Unsupported: return "unsupported";
    case Err::Parse: return "parse-error";
  }
  return "error";
}

const char* tri_name(Tri t) {
  switch (t) {
    case Tri::False: return "false";
    case Tri::True: return "true";
    case Tri::Inconclusive: return "inconclusive";
  }
  return "?";
}

PContext::PContext(long p, int precision) : p_(p), pz_(p), precision_(precision) {
  if (p < 2 || mpz_probab_prime_p(pz_.get_mpz_t(), 30) == 0)
    throw Error(Err::Domain, "p = " + std::to_string(p) + " is not prime");
  if (precision < 1) throw Error(Err::EmptyModulus, "precision must be positive");
  if (p_ != 2) {
    Z e = (pz_ - 1) / 2;
    for (long r = 2; r < p_; ++r) {
      Z t;
      Z rz(r);
      mpz_powm(t.get_mpz_t(), rz.get_mpz_t(), e.get_mpz_t(), pz_.get_mpz_t());
      if (t != 1) {
        rho_ = r;
        break;
      }
    }
  }
}

const Z& PContext::rho() const {
  require_odd("rho");
  return rho_;
}

void PContext::require_odd(const char* what) const {
  if (p_ == 2) throw Error(Err::UnsupportedPrime, std::string(what) + " requires p >= 3");
}

Z PContext::pow(long k) const {
  if (k < 0) throw Error(Err::Domain, "negative exponent");
  Z r;
  mpz_pow_ui(r.get_mpz_t(), pz_.get_mpz_t(), static_cast<unsigned long>(k));
  return r;
}

Q PContext::qpow(long k) const {
  if (k >= 0) return Q(pow(k));
  return Q(Z(1), pow(-k));
}

long val(const PContext& ctx, const Z& x) {
  if (x == 0) return kInf;
  return static_cast<long>(mpz_remove(Z().get_mpz_t(), x.get_mpz_t(), ctx.pz().get_mpz_t()));
}

long val(const PContext& ctx, const Q& x) {
  if (x == 0) return kInf;
  return val(ctx, x.get_num()) - val(ctx, x.get_den());
}

bool is_integral(const PContext& ctx, const Q& x) {
  return mpz_divisible_p(x.get_den().get_mpz_t(), ctx.pz().get_mpz_t()) == 0;
}

void require_integral(const PContext& ctx, const Q& x) {
  if (!is_integral(ctx, x))
    throw Error(Err::MalformedScalar, to_string(x) + " is not a p-adic integer for p = " + std::to_string(ctx.p()));
}

bool is_unit(const PContext& ctx, const Q& x) { return x != 0 && val(ctx, x) == 0; }

Z mod_pow(const PContext& ctx, const Z& x, long N) {
  Z m = ctx.pow(N);
  Z r;
  mpz_mod(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
  return r;
}

Z residue(const PContext& ctx, const Q& x, long N) {
  if (N <= 0) throw Error(Err::EmptyModulus, "residue needs N >= 1");
  require_integral(ctx, x);
  Z m = ctx.pow(N);
  Z inv;
  mpz_invert(inv.get_mpz_t(), x.get_den().get_mpz_t(), m.get_mpz_t());
  Z r = x.get_num() * inv;
  mpz_mod(r.get_mpz_t(), r.get_mpz_t(), m.get_mpz_t());
  return r;
}

bool is_square_unit(const PContext& ctx, const Q& u) {
  ctx.require_odd("square-class test");
  if (!is_integral(ctx, u) || val(ctx, u) != 0) throw Error(Err::NonUnit, to_string(u) + " is not a unit");
  Z r = residue(ctx, u, 1);
  Z e = (ctx.pz() - 1) / 2;
  Z t;
  mpz_powm(t.get_mpz_t(), r.get_mpz_t(), e.get_mpz_t(), ctx.pz().get_mpz_t());
  return t == 1;
}

Z hensel_quadratic(const PContext& ctx, const Q& a, const Q& c, const Z& f0, long N) {
  if (N <= 0) throw Error(Err::EmptyModulus, "hensel needs N >= 1");
  Z m = ctx.pow(N);
  Z ar = residue(ctx, a, N), cr = residue(ctx, c, N);
  auto P = [&](const Z& f) {
    Z v = f * f + ar * f - cr;
    mpz_mod(v.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
    return v;
  };
  Z f = mod_pow(ctx, f0, N);
  if (mod_pow(ctx, P(f), 1) != 0) throw Error(Err::NoRoot, "f0 is not a root mod p");
  Z d = mod_pow(ctx, 2 * f + ar, 1);
  if (d == 0) throw Error(Err::HenselFailure, "root is not simple mod p");
  for (long it = 0; it <= N + 1 && P(f) != 0; ++it) {
    Z deriv = mod_pow(ctx, 2 * f + ar, N);
    Z inv;
    mpz_invert(inv.get_mpz_t(), deriv.get_mpz_t(), m.get_mpz_t());
    f = f - P(f) * inv;
    mpz_mod(f.get_mpz_t(), f.get_mpz_t(), m.get_mpz_t());
  }
  return f;
}

Z sqrt_unit(const PContext& ctx, const Q& u, long N) {
  if (!is_square_unit(ctx, u)) throw Error(Err::NoRoot, to_string(u) + " is not a square");
  Z r = residue(ctx, u, 1);
  for (long x = 1; x < ctx.p(); ++x) {
    Z xz(x);
    if (mod_pow(ctx, xz * xz - r, 1) == 0) return hensel_quadratic(ctx, Q(0), u, xz, N);
  }
  throw Error(Err::NoRoot, "no square root found");
}

NewtonPolygon newton_polygon(const PContext& ctx, const Poly& poly) {
  int deg = poly.degree();
  if (deg < 0 || poly.c.back() == 0) throw Error(Err::MalformedPoly, "zero or untrimmed polynomial");
  NewtonPolygon out;
  int low = 0;
  while (low < deg && poly.c[low] == 0) ++low;
  out.zero_roots = low;
  struct Pt {
    long x;
    long y;
  };
  std::vector<Pt> pts;
  for (int i = 0; i <= deg - low; ++i) {
    const Q& co = poly.c[deg - i];
    if (co == 0) continue;
    pts.push_back({i, val(ctx, co)});
  }
  // lower convex hull, left to right
  std::vector<Pt> hull;
  for (const Pt& q : pts) {
    while (hull.size() >= 2) {
      const Pt& a = hull[hull.size() - 2];
      const Pt& b = hull.back();
      // drop b when it lies on or above segment a-q
      Z lhs = Z(b.y - a.y) * (q.x - a.x);
      Z rhs = Z(q.y - a.y) * (b.x - a.x);
      if (lhs >= rhs)
        hull.pop_back();
      else
        break;
    }
    hull.push_back(q);
  }
  for (size_t i = 1; i < hull.size(); ++i) {
    Q s(Z(hull[i].y - hull[i - 1].y), Z(hull[i].x - hull[i - 1].x));
    s.canonicalize();
    out.slopes.push_back({s, hull[i].x - hull[i - 1].x});
  }
  return out;
}

std::vector<Slope> newton_slopes(const PContext& ctx, const Poly& poly) {
  NewtonPolygon np = newton_polygon(ctx, poly);
  if (np.zero_roots) throw Error(Err::MalformedPoly, "polynomial has zero roots; slope is infinite");
  return np.slopes;
}

Tri has_monic_integral_irreducible_factor(const PContext& ctx, const Poly& poly, int degree_cap) {
  if (poly.degree() < 1) throw Error(Err::MalformedPoly, "degree must be at least 1");
  if (poly.c.back() != 1) throw Error(Err::MalformedPoly, "polynomial is not monic");
  NewtonPolygon np = newton_polygon(ctx, poly);
  bool any_nonneg = np.zero_roots > 0;
  for (const Slope& s : np.slopes) any_nonneg = any_nonneg || s.slope >= 0;
  // all root valuations negative rules out integral factors in any degree
  if (!any_nonneg) return Tri::False;
  if (poly.degree() > degree_cap) return Tri::Inconclusive;
  // every irreducible factor over Q_p has roots of a single valuation, and the
  // factor is integral exactly when that valuation is nonnegative
  return Tri::True;
}

std::string to_string(const Q& x) {
  if (x.get_den() == 1) return x.get_num().get_str();
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

Q parse_scalar(const std::string& s) {
  Q q;
  if (s.empty() || q.set_str(s, 10) != 0) throw Error(Err::MalformedScalar, "bad scalar '" + s + "'");
  if (q.get_den() == 0) throw Error(Err::MalformedScalar, "zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

}  // namespace zpl
