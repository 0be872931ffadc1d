#pragma once

#include <gmpxx.h>

#include <climits>
#include <stdexcept>
#include <string>
#include <vector>

namespace zpl {

using Z = mpz_class;
using Q = mpq_class;

// Valuation of zero.
inline constexpr long kInf = LONG_MAX;

enum class Err {
  MalformedScalar,
  EmptyModulus,
  NonUnit,
  UnsupportedPrime,
  HenselFailure,
  NoRoot,
  MalformedPoly,
  MalformedMatrix,
  RankMismatch,
  Antisymmetry,
  Jacobi,
  NonIntegral,
  NotClosed,
  Singular,
  NoCertificate,
  ShapeMismatch,
  Unsolvable,
  NotSubalgebra,
  NotHomomorphism,
  Domain,
  NotIdeal,
  Unsupported,
  Parse,
};

const char* err_name(Err e);

struct Error : std::runtime_error {
  Err code;
  Error(Err c, const std::string& msg) : std::runtime_error(msg), code(c) {}
};

class PContext {
 public:
  explicit PContext(long p, int precision = 24);

  long p() const { return p_; }
  const Z& pz() const { return pz_; }
  int precision() const { return precision_; }

  // Smallest positive non-residue mod p; throws for p = 2.
  const Z& rho() const;

  Z pow(long k) const;
  // p^k for any integer k.
  Q qpow(long k) const;

  void require_odd(const char* what) const;

 private:
  long p_;
  Z pz_;
  int precision_;
  Z rho_;
};

long val(const PContext& ctx, const Z& x);
// Valuation in Z ∪ {kInf}; negative for non-integral rationals.
long val(const PContext& ctx, const Q& x);

bool is_integral(const PContext& ctx, const Q& x);
void require_integral(const PContext& ctx, const Q& x);
bool is_unit(const PContext& ctx, const Q& x);

// x mod p^N in [0, p^N).
Z residue(const PContext& ctx, const Q& x, long N);
Z mod_pow(const PContext& ctx, const Z& x, long N);

bool is_square_unit(const PContext& ctx, const Q& u);

// Root of f^2 + a f - c lifted from a simple root f0 mod p, returned mod p^N.
Z hensel_quadratic(const PContext& ctx, const Q& a, const Q& c, const Z& f0, long N);

// Square root of a unit square u, mod p^N.
Z sqrt_unit(const PContext& ctx, const Q& u, long N);

// Coefficients c[i] of lambda^i.
struct Poly {
  std::vector<Q> c;
  int degree() const { return static_cast<int>(c.size()) - 1; }
};

struct Slope {
  Q slope;
  long length;
  bool operator==(const Slope& o) const { return slope == o.slope && length == o.length; }
};

// Slopes of the Newton polygon built on (i, val(coefficient of lambda^(deg-i))).
// These equal the valuations of the roots, counted with multiplicity.
// Zero roots are reported with slope kInf-as-rational omitted and folded into
// zero_roots.
struct NewtonPolygon {
  std::vector<Slope> slopes;
  long zero_roots = 0;
};

NewtonPolygon newton_polygon(const PContext& ctx, const Poly& poly);
std::vector<Slope> newton_slopes(const PContext& ctx, const Poly& poly);

enum class Tri { False, True, Inconclusive };
const char* tri_name(Tri t);

Tri has_monic_integral_irreducible_factor(const PContext& ctx, const Poly& poly, int degree_cap = 4);

std::string to_string(const Q& x);
Q parse_scalar(const std::string& s);

}  // namespace zpl
