#include "zpl/oracle.hpp"

#include "zpl/simd.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <thread>

namespace zpl {

// ---------------------------------------------------------------- shapes

Mat SubmoduleShape::basis(const PContext& ctx, int d) const {
  int n = d + 1;
  Mat U = Mat::identity(n);
  Q p = ctx.qpow(1);
  if (kind == Kind::TopScaled) {
    U(0, 0) = p;
    return U;
  }
  U(i0, 0) = -Q(f[0]);
  U(i0, i0) = p;
  if (kind == Kind::Mixed)
    for (int i = k0; i < i0; ++i) U(i0, i) = -Q(f[i]);
  return U;
}

std::string SubmoduleShape::label() const {
  if (kind == Kind::TopScaled) return "top";
  std::string s = kind == Kind::MidScaled ? "mid(i0=" : "mixed(k0=" + std::to_string(k0) + ",i0=";
  s += std::to_string(i0) + ",f=";
  for (size_t i = 0; i < f.size(); ++i) {
    if (kind == Kind::Mixed && i > 0 && static_cast<int>(i) < k0) continue;
    s += (i ? " " : "") + std::to_string(f[i]);
  }
  return s + ")";
}

OracleFrame oracle_frame(const LieLattice& L) {
  OracleFrame fr;
  fr.gb = find_good_basis(L);
  fr.P = fr.gb ? fr.gb->basis : Mat::identity(L.rank());
  return fr;
}

std::vector<SubmoduleShape> enum_index_p(const LieLattice& L) {
  long p = L.ctx().p();
  int d = L.rank() - 1;
  std::vector<SubmoduleShape> out;
  out.push_back(SubmoduleShape{});
  for (int i0 = 1; i0 <= d; ++i0)
    for (long f0 = 0; f0 < p; ++f0) {
      SubmoduleShape s;
      s.kind = SubmoduleShape::Kind::MidScaled;
      s.i0 = i0;
      s.f = {f0};
      out.push_back(s);
    }
  for (int i0 = 2; i0 <= d; ++i0)
    for (int k0 = 1; k0 < i0; ++k0) {
      // odometer over f_0, f_{k0} (unit), f_{k0+1..i0-1}
      std::vector<long> f(i0, 0);
      f[k0] = 1;
      while (true) {
        SubmoduleShape s;
        s.kind = SubmoduleShape::Kind::Mixed;
        s.i0 = i0;
        s.k0 = k0;
        s.f = f;
        out.push_back(s);
        int pos = 0;
        while (true) {
          if (pos == i0) break;
          long lo = pos == k0 ? 1 : 0;
          if (++f[pos] < p) break;
          f[pos] = lo;
          pos = pos == 0 ? k0 : pos + 1;
        }
        if (pos == i0) break;
      }
    }
  return out;
}

Submodule shape_module(const LieLattice& L, const OracleFrame& fr, const SubmoduleShape& s) {
  return hnf(L.ctx(), fr.P * s.basis(L.ctx(), L.rank() - 1));
}

std::vector<SubmoduleShape> subalgebra_filter(const LieLattice& L, const std::vector<SubmoduleShape>& shapes) {
  OracleFrame fr = oracle_frame(L);
  std::vector<SubmoduleShape> out;
  for (const auto& s : shapes) {
    bool ok = fr.gb ? induced_B(L.ctx(), *fr.gb, s.basis(L.ctx(), fr.gb->d())).is_subalgebra
                    : is_subalgebra(L, shape_module(L, fr, s));
    if (ok) out.push_back(s);
  }
  return out;
}

// ---------------------------------------------------------------- arithmetic mod p^N

namespace {

using Row = std::vector<int64_t>;
using ModMat = std::vector<Row>;  // row-major

struct Ring {
  long p;
  long N;
  int64_t q;
  Ring(long p_, long N_) : p(p_), N(N_), q(1) {
    for (long i = 0; i < N; ++i) q *= p;
  }
  int64_t red(int64_t x) const {
    x %= q;
    return x < 0 ? x + q : x;
  }
  long v(int64_t x) const {
    x = red(x);
    if (x == 0) return N;
    long k = 0;
    while (x % p == 0) {
      x /= p;
      ++k;
    }
    return k;
  }
  int64_t inv(int64_t a) const {
    int64_t g = q, x = 0, x1 = 1, b = red(a);
    while (b) {
      int64_t t = g / b;
      g -= t * b;
      std::swap(g, b);
      x -= t * x1;
      std::swap(x, x1);
    }
    return red(x);
  }
  int64_t pw(long k) const {
    int64_t r = 1;
    for (long i = 0; i < k; ++i) r *= p;
    return r;
  }
};

int64_t res(const PContext& ctx, const Q& x, long N) { return residue(ctx, x, N).get_si(); }

// R X V = diag(p^e_0, ..., p^e_{rank-1}, 0, ...) mod q with R, V invertible.
struct Smith {
  ModMat R, V;
  std::vector<long> e;
};

Smith smith_mod(const Ring& rg, ModMat X, int cols) {
  int rows = static_cast<int>(X.size());
  Smith s;
  s.R.assign(rows, Row(rows, 0));
  for (int i = 0; i < rows; ++i) s.R[i][i] = 1;
  s.V.assign(cols, Row(cols, 0));
  for (int i = 0; i < cols; ++i) s.V[i][i] = 1;
  for (int k = 0; k < std::min(rows, cols); ++k) {
    long best = rg.N;
    int bi = -1, bj = -1;
    for (int i = k; i < rows && best > 0; ++i)
      for (int j = k; j < cols; ++j) {
        long v = rg.v(X[i][j]);
        if (v < best) {
          best = v;
          bi = i;
          bj = j;
          if (v == 0) break;
        }
      }
    if (bi < 0) break;
    std::swap(X[k], X[bi]);
    std::swap(s.R[k], s.R[bi]);
    for (int i = 0; i < rows; ++i) std::swap(X[i][k], X[i][bj]);
    for (int i = 0; i < cols; ++i) std::swap(s.V[i][k], s.V[i][bj]);
    // scale column k so that the pivot is p^best
    int64_t unit = X[k][k] / rg.pw(best);
    int64_t ui = rg.inv(unit);
    for (int i = 0; i < rows; ++i) X[i][k] = rg.red(X[i][k] * ui);
    for (int i = 0; i < cols; ++i) s.V[i][k] = rg.red(s.V[i][k] * ui);
    int64_t piv = rg.pw(best);
    for (int i = 0; i < rows; ++i) {
      if (i == k || X[i][k] == 0) continue;
      int64_t m = X[i][k] / piv;
      for (int j = 0; j < cols; ++j) X[i][j] = rg.red(X[i][j] - m * X[k][j]);
      for (int j = 0; j < rows; ++j) s.R[i][j] = rg.red(s.R[i][j] - m * s.R[k][j]);
    }
    for (int j = 0; j < cols; ++j) {
      if (j == k || X[k][j] == 0) continue;
      int64_t m = X[k][j] / piv;
      for (int i = 0; i < rows; ++i) X[i][j] = rg.red(X[i][j] - m * X[i][k]);
      for (int i = 0; i < cols; ++i) s.V[i][j] = rg.red(s.V[i][j] - m * s.V[i][k]);
    }
    s.e.push_back(best);
  }
  return s;
}

// Generators (with orders) of {z : X z = 0 mod q}.
void kernel_mod(const Ring& rg, const ModMat& X, int cols, std::vector<Row>& gens, std::vector<long>& order) {
  Smith s = smith_mod(rg, X, cols);
  int r = static_cast<int>(s.e.size());
  for (int k = 0; k < cols; ++k) {
    long o = k < r ? s.e[k] : rg.N;
    if (o == 0) continue;
    int64_t m = rg.pw(rg.N - o);
    Row g(cols);
    for (int i = 0; i < cols; ++i) g[i] = rg.red(s.V[i][k] * m);
    gens.push_back(g);
    order.push_back(o);
  }
}

// Some z with X z = b mod q.
std::optional<Row> solve_mod(const Ring& rg, const ModMat& X, int cols, const Row& b) {
  Smith s = smith_mod(rg, X, cols);
  int rows = static_cast<int>(X.size());
  Row rb(rows, 0);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < rows; ++j) rb[i] = rg.red(rb[i] + s.R[i][j] * b[j]);
  int r = static_cast<int>(s.e.size());
  Row w(cols, 0);
  for (int i = 0; i < rows; ++i) {
    if (i < r) {
      int64_t piv = rg.pw(s.e[i]);
      if (rb[i] % piv != 0) return std::nullopt;
      w[i] = rb[i] / piv;
    } else if (rb[i] != 0) {
      return std::nullopt;
    }
  }
  Row z(cols, 0);
  for (int i = 0; i < cols; ++i)
    for (int k = 0; k < cols; ++k) z[i] = rg.red(z[i] + s.V[i][k] * w[k]);
  return z;
}

// Echelon generators of the span of `gens`: pivots in increasing coordinate
// order, and every element is uniquely sum a_i g_i with 0 <= a_i < p^order_i.
void howell(const Ring& rg, std::vector<Row> pool, int len, std::vector<Row>& out, std::vector<long>& order,
            std::vector<int>& pivot) {
  for (int row = 0; row < len; ++row) {
    long best = rg.N;
    int bi = -1;
    for (size_t i = 0; i < pool.size(); ++i) {
      long v = rg.v(pool[i][row]);
      if (v < best) {
        best = v;
        bi = static_cast<int>(i);
      }
    }
    if (bi < 0) continue;
    Row g = pool[bi];
    pool.erase(pool.begin() + bi);
    int64_t ui = rg.inv(g[row] / rg.pw(best));
    for (auto& x : g) x = rg.red(x * ui);
    int64_t piv = rg.pw(best);
    for (auto& h : pool) {
      if (h[row] == 0) continue;
      int64_t m = h[row] / piv;
      for (int i = 0; i < len; ++i) h[i] = rg.red(h[i] - m * g[i]);
    }
    Row extra(len);
    int64_t m = rg.pw(rg.N - best);
    bool nz = false;
    for (int i = 0; i < len; ++i) {
      extra[i] = rg.red(g[i] * m);
      nz = nz || extra[i] != 0;
    }
    if (nz) pool.push_back(extra);
    out.push_back(g);
    order.push_back(rg.N - best);
    pivot.push_back(row);
  }
}

// Exact linear system (rows: equations) in the unknowns of HomSolutions.
Mat hom_system(const Mat& A, const Mat& B, const Q& f00, const Vec& r) {
  int d = A.rows();
  int m = d * d + d;
  auto FJ = [d](int k, int j) { return (k - 1) * d + (j - 1); };
  auto F0 = [d](int l) { return d * d + (l - 1); };
  std::vector<Vec> rows;
  for (int i = 1; i <= d; ++i)
    for (int j = i + 1; j <= d; ++j)
      for (int k = 1; k <= d; ++k) {
        Vec e(m);
        for (int l = 1; l <= d; ++l) {
          e[FJ(l, j)] += A(k - 1, l - 1) * r[i - 1];
          e[FJ(l, i)] -= A(k - 1, l - 1) * r[j - 1];
        }
        rows.push_back(e);
      }
  for (int i = 1; i <= d; ++i)
    for (int j = 1; j <= d; ++j) {
      Vec e(m);
      for (int l = 1; l <= d; ++l) {
        e[FJ(i, l)] += B(l - 1, j - 1);
        e[FJ(l, j)] -= f00 * A(i - 1, l - 1);
        e[F0(l)] += r[j - 1] * A(i - 1, l - 1);
      }
      rows.push_back(e);
    }
  Mat C(static_cast<int>(rows.size()), m);
  for (int i = 0; i < C.rows(); ++i)
    for (int j = 0; j < m; ++j) C(i, j) = rows[i][j];
  return C;
}

// Divides each equation by p^min(content, s) with s = min val(A). Lifting F_00
// or the top row changes coefficients by multiples of p^(N+s), so the scaled
// congruences still hold for every exact solution.
Mat normalize_rows(const PContext& ctx, const Mat& C, const Mat& A) {
  long s = min_val(ctx, A);
  if (s == kInf || s <= 0) return C;
  Mat out = C;
  for (int i = 0; i < C.rows(); ++i) {
    long v = kInf;
    for (int j = 0; j < C.cols(); ++j) v = std::min(v, val(ctx, C(i, j)));
    long k = std::min(v, s);
    if (k == kInf || k <= 0) continue;
    Q f = ctx.qpow(-k);
    for (int j = 0; j < C.cols(); ++j) out(i, j) = C(i, j) * f;
  }
  return out;
}

ModMat reduce(const PContext& ctx, const Mat& C, long N) {
  ModMat X(C.rows(), Row(C.cols()));
  for (int i = 0; i < C.rows(); ++i)
    for (int j = 0; j < C.cols(); ++j) X[i][j] = res(ctx, C(i, j), N);
  return X;
}

bool row_ok(const PContext& ctx, const Mat& B, const Vec& r, long N, bool full_rank) {
  int d = B.rows();
  bool zero = true;
  for (const Q& x : r) zero = zero && x == 0;
  if (full_rank && !zero) return false;
  for (int j = 0; j < d; ++j) {
    Q s = 0;
    for (int l = 0; l < d; ++l) s += r[l] * B(l, j);
    if (res(ctx, s, N) != 0) return false;
  }
  return true;
}

// Rank of (U F^-1)^n mod p, or n + 1 when F is singular mod p. Zero means
// phi^-1 is topologically nilpotent, so no nonzero submodule is invariant.
int lift_score(const Ring& r1, const ModMat& Umod, const Mat& F) {
  int n = F.rows();
  ModMat X(n, Row(2 * n, 0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) X[i][j] = r1.red(F(i, j).get_num().get_si());
    X[i][n + i] = 1;
  }
  // Gauss-Jordan mod p
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int i = c; i < n; ++i)
      if (X[i][c]) {
        piv = i;
        break;
      }
    if (piv < 0) return n + 1;
    std::swap(X[c], X[piv]);
    int64_t iv = r1.inv(X[c][c]);
    for (auto& x : X[c]) x = r1.red(x * iv);
    for (int i = 0; i < n; ++i)
      if (i != c && X[i][c]) {
        int64_t m = X[i][c];
        for (int j = 0; j < 2 * n; ++j) X[i][j] = r1.red(X[i][j] - m * X[c][j]);
      }
  }
  ModMat S(n, Row(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) S[i][j] = r1.red(S[i][j] + Umod[i][k] * X[k][n + j]);
  ModMat P = S;
  for (int t = 1; t < n; ++t) {
    ModMat Q(n, Row(n, 0));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) Q[i][j] = r1.red(Q[i][j] + P[i][k] * S[k][j]);
    P = Q;
  }
  return static_cast<int>(smith_mod(r1, P, n).e.size());
}

// Reductions mod q of the exact top rows r with r B = 0.
std::vector<Row> top_rows(const PContext& ctx, const Ring& rg, const Mat& B) {
  int d = B.rows();
  std::vector<Row> rows;
  Mat K = kernel_int(ctx, B.transpose());
  std::vector<Row> gens;
  for (int k = 0; k < K.cols(); ++k) {
    Row g(d);
    for (int i = 0; i < d; ++i) g[i] = res(ctx, K(i, k), rg.N);
    gens.push_back(g);
  }
  std::vector<Row> hb;
  std::vector<long> ho;
  std::vector<int> hp;
  howell(rg, gens, d, hb, ho, hp);
  std::vector<int64_t> digit(hb.size(), 0);
  while (true) {
    Row r(d, 0);
    for (size_t i = 0; i < hb.size(); ++i)
      for (int t = 0; t < d; ++t) r[t] = rg.red(r[t] + digit[i] * hb[i][t]);
    rows.push_back(r);
    size_t i = 0;
    while (i < hb.size() && ++digit[i] == rg.pw(ho[i])) digit[i++] = 0;
    if (i == hb.size()) break;
  }
  return rows;
}

const GoodBasis& need_gb(const OracleFrame& fr) {
  if (!fr.gb) throw Error(Err::Unsupported, "the congruence solver needs a metabelian lattice with a good basis");
  return *fr.gb;
}

}  // namespace

long HomSolutions::log_size() const {
  long s = 0;
  for (long o : order) s += o;
  return s;
}

HomSolutions hom_solutions_mod(const LieLattice& L, const SubmoduleShape& shape, long N, long f00,
                               const std::vector<long>& top_row) {
  const PContext& ctx = L.ctx();
  OracleFrame fr = oracle_frame(L);
  const GoodBasis& gb = need_gb(fr);
  int d = gb.d();
  if (N < 1) throw Error(Err::Domain, "level must be positive");
  Ring rg(ctx.p(), N);
  if (rg.q > simd::kMaxModulus) throw Error(Err::Domain, "p^N too large for the oracle");
  InducedB ib = induced_B(ctx, gb, shape.basis(ctx, d));
  if (!ib.is_subalgebra) throw Error(Err::NotSubalgebra, "shape " + shape.label() + " is not a subalgebra");
  Vec r(d);
  for (int i = 0; i < d && i < static_cast<int>(top_row.size()); ++i) r[i] = top_row[i];
  HomSolutions hs;
  hs.d = d;
  hs.N = N;
  if (!row_ok(ctx, ib.B, r, N, rank(ib.B) == d)) {
    hs.row_admissible = false;
    return hs;
  }
  Mat C = normalize_rows(ctx, hom_system(gb.A, ib.B, Q(f00), r), gb.A);
  kernel_mod(rg, reduce(ctx, C, N), C.cols(), hs.gens, hs.order);
  return hs;
}

// ---------------------------------------------------------------- candidates

namespace {

// Invariant subspaces of A mod p of dimension 2..d-1, as row-reduced bases.
void invariant_subspaces(const Ring& r1, const std::vector<Row>& A, int d, int dim, std::vector<std::vector<Row>>& out,
                         size_t limit) {
  // enumerate reduced row echelon bases via pivot sets
  std::vector<int> piv(dim);
  for (int i = 0; i < dim; ++i) piv[i] = i;
  while (true) {
    // free positions: for basis row a, columns > piv[a] not in piv
    std::vector<std::pair<int, int>> free;
    for (int a = 0; a < dim; ++a)
      for (int c = piv[a] + 1; c < d; ++c)
        if (std::find(piv.begin(), piv.end(), c) == piv.end()) free.emplace_back(a, c);
    std::vector<int64_t> val(free.size(), 0);
    while (true) {
      std::vector<Row> basis(dim, Row(d, 0));
      for (int a = 0; a < dim; ++a) basis[a][piv[a]] = 1;
      for (size_t t = 0; t < free.size(); ++t) basis[free[t].first][free[t].second] = val[t];
      // A-invariance: each A v lies in the span (check by reducing against pivots)
      bool inv = true;
      for (int a = 0; a < dim && inv; ++a) {
        Row w(d, 0);
        for (int i = 0; i < d; ++i)
          for (int j = 0; j < d; ++j) w[i] = r1.red(w[i] + A[i][j] * basis[a][j]);
        for (int b = 0; b < dim; ++b) {
          int64_t m = w[piv[b]];
          if (m)
            for (int i = 0; i < d; ++i) w[i] = r1.red(w[i] - m * basis[b][i]);
        }
        for (int i = 0; i < d; ++i) inv = inv && w[i] == 0;
      }
      if (inv) {
        out.push_back(basis);
        if (out.size() >= limit) return;
      }
      size_t t = 0;
      while (t < free.size() && ++val[t] == r1.q) val[t++] = 0;
      if (t == free.size()) break;
    }
    int a = dim - 1;
    while (a >= 0 && piv[a] == d - dim + a) --a;
    if (a < 0) break;
    ++piv[a];
    for (int b = a + 1; b < dim; ++b) piv[b] = piv[b - 1] + 1;
  }
}

constexpr size_t kLineLimit = 48;
constexpr size_t kSubspaceLimit = 48;

}  // namespace

std::vector<Submodule> default_candidates(const LieLattice& L, long N) {
  const PContext& ctx = L.ctx();
  OracleFrame fr = oracle_frame(L);
  if (!fr.gb) return {};
  const GoodBasis& gb = *fr.gb;
  int d = gb.d();
  int n = d + 1;
  Q p = ctx.qpow(1);
  std::vector<Mat> base;  // good coordinates
  auto jvec = [&](const Row& v) {
    Vec x(n);
    for (int i = 0; i < d; ++i) x[i + 1] = v[i];
    return x;
  };
  // I_i chain: <x_1..x_{i-1}, p x_i..p x_d>, from pJ to J
  for (int i = 1; i <= d + 1; ++i) {
    Mat G(n, d);
    for (int j = 1; j <= d; ++j) G(j, j - 1) = j < i ? Q(1) : p;
    base.push_back(G);
  }
  // A-invariant lines mod p^m plus p^m J
  for (long m = 1; m <= N; ++m) {
    Ring rg(ctx.p(), m);
    std::vector<Row> A(d, Row(d));
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) A[i][j] = res(ctx, gb.A(i, j), m);
    std::vector<Row> lines;
    bool overflow = false;
    for (int lead = 0; lead < d && !overflow; ++lead) {
      // v = (0..0, 1, *, ..., *) with v_lead = 1 and earlier entries divisible by p
      int tail = d - lead - 1;
      int64_t total = 1;
      for (int i = 0; i < lead; ++i) total *= rg.q / ctx.p();
      for (int i = 0; i < tail; ++i) total *= rg.q;
      for (int64_t code = 0; code < total && !overflow; ++code) {
        Row v(d, 0);
        int64_t c = code;
        for (int i = 0; i < lead; ++i) {
          v[i] = (c % (rg.q / ctx.p())) * ctx.p();
          c /= rg.q / ctx.p();
        }
        v[lead] = 1;
        for (int i = lead + 1; i < d; ++i) {
          v[i] = c % rg.q;
          c /= rg.q;
        }
        Row w(d, 0);
        for (int i = 0; i < d; ++i)
          for (int j = 0; j < d; ++j) w[i] = rg.red(w[i] + A[i][j] * v[j]);
        int64_t lam = w[lead];
        bool ok = true;
        for (int i = 0; i < d && ok; ++i) ok = rg.red(w[i] - lam * v[i]) == 0;
        if (ok) {
          lines.push_back(v);
          if (lines.size() > kLineLimit) overflow = true;
        }
      }
    }
    if (overflow) continue;
    for (const Row& v : lines) {
      Mat G(n, d + 1);
      G.set_col(0, jvec(v));
      for (int j = 1; j <= d; ++j) G(j, j) = ctx.qpow(m);
      base.push_back(G);
    }
  }
  // A-invariant subspaces mod p plus pJ
  if (d >= 3) {
    Ring r1(ctx.p(), 1);
    std::vector<Row> A(d, Row(d));
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) A[i][j] = res(ctx, gb.A(i, j), 1);
    for (int dim = 2; dim < d; ++dim) {
      std::vector<std::vector<Row>> subs;
      invariant_subspaces(r1, A, d, dim, subs, kSubspaceLimit + 1);
      if (subs.size() > kSubspaceLimit) continue;
      for (const auto& S : subs) {
        Mat G(n, dim + d);
        for (int a = 0; a < dim; ++a) G.set_col(a, jvec(S[a]));
        for (int j = 1; j <= d; ++j) G(j, dim + j - 1) = p;
        base.push_back(G);
      }
    }
  }
  // derived-series ideals, when inside J
  Mat Pinv = inverse(fr.P);
  for (const Submodule& S : {derived(L), iso_derived(L), center(L)}) {
    if (S.rank() == 0) continue;
    Mat G = Pinv * S.gens();
    bool inJ = true;
    for (int j = 0; j < G.cols(); ++j) inJ = inJ && G(0, j) == 0;
    if (inJ) base.push_back(G);
  }
  std::vector<Submodule> out;
  Mat qN = Mat::identity(n).scaled(ctx.qpow(N));
  Submodule pNL = hnf(ctx, qN);
  for (long k = 0; k < N; ++k)
    for (const Mat& G : base) {
      Submodule I = hnf(ctx, fr.P * G.scaled(ctx.qpow(k)));
      if (contains(ctx, pNL, I)) continue;
      if (!is_ideal(L, I)) continue;
      if (std::find(out.begin(), out.end(), I) != out.end()) continue;
      out.push_back(I);
    }
  return out;
}

// ---------------------------------------------------------------- exhaust

namespace {

struct CandidateData {
  Mat G;          // generators in good coordinates
  Mat W;          // membership functionals of G + p^N Z^n, rows, reduced mod q
};

struct Segment {
  int candidate;
  int offset, len;
};

// Coverage tables for one shape: T_I(F) = vec(W_I F C_I) mod q for every
// candidate I inside M, linear in the entries F_{kj} (k = 0..d, j = 1..d).
struct ShapeFrame {
  const PContext* ctx = nullptr;
  Ring rg{3, 1};
  int d = 0, n = 0;
  SubmoduleShape shape;
  Mat U;
  InducedB ib;
  bool fullB = false;
  std::vector<Segment> segs;
  std::vector<int32_t> lam;  // column-major, total x nu
  int total = 0, nu = 0;
  ModMat Umod;

  std::vector<int32_t> image(const Row& top, const Row* z) const {
    std::vector<int32_t> u(nu, 0), out(total, 0);
    for (int j = 1; j <= d; ++j) u[j - 1] = static_cast<int32_t>(top[j - 1]);
    if (z)
      for (int k = 1; k <= d; ++k)
        for (int j = 1; j <= d; ++j) u[k * d + (j - 1)] = static_cast<int32_t>((*z)[(k - 1) * d + (j - 1)]);
    if (total) simd::matvec_mod(lam.data(), total, nu, u.data(), static_cast<int32_t>(rg.q), out.data());
    return out;
  }
  void restrict_mask(const std::vector<int32_t>& t, std::vector<char>& mask) const {
    for (size_t s = 0; s < segs.size(); ++s)
      if (mask[s] && !simd::all_zero(t.data() + segs[s].offset, segs[s].len)) mask[s] = 0;
  }
  bool any_zero(const std::vector<int32_t>& t) const {
    for (const Segment& s : segs)
      if (simd::all_zero(t.data() + s.offset, s.len)) return true;
    return false;
  }
  UncoveredSample sample(long f00, const Row& top, const Row& z) const {
    UncoveredSample s;
    s.top_row.assign(top.begin(), top.end());
    Mat F(n, n);
    F(0, 0) = f00;
    for (int j = 1; j <= d; ++j) F(0, j) = top[j - 1];
    for (int k = 1; k <= d; ++k) {
      for (int j = 1; j <= d; ++j) F(k, j) = z[(k - 1) * d + (j - 1)];
      F(k, 0) = z[d * d + k - 1];
    }
    s.F = F;
    s.score = lift_score(Ring(rg.p, 1), Umod, F);
    return s;
  }
};

ShapeFrame shape_frame(const PContext& ctx, const Ring& rg, const GoodBasis& gb, const std::vector<Mat>& cands,
                       const SubmoduleShape& shape) {
  ShapeFrame f;
  f.ctx = &ctx;
  f.rg = rg;
  f.d = gb.d();
  f.n = f.d + 1;
  f.shape = shape;
  f.U = shape.basis(ctx, f.d);
  f.ib = induced_B(ctx, gb, f.U);
  f.fullB = rank(f.ib.B) == f.d;
  Mat Uinv = inverse(f.U);
  Submodule Mg = hnf(ctx, f.U);
  int d = f.d, n = f.n;
  f.nu = n * d;
  std::vector<std::vector<int32_t>> cols(f.nu);
  for (size_t ci = 0; ci < cands.size(); ci += 2) {
    const Mat& G = cands[ci];
    const Mat& W = cands[ci + 1];
    if (!contains(ctx, Mg, hnf(ctx, G))) continue;
    Mat C = Uinv * G;
    int g = C.cols();
    for (int k = 0; k <= d; ++k)
      for (int j = 1; j <= d; ++j) {
        auto& col = cols[k * d + (j - 1)];
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < g; ++b)
            col.push_back(static_cast<int32_t>(rg.red(res(ctx, W(a, k), rg.N) * res(ctx, C(j, b), rg.N))));
      }
    f.segs.push_back({static_cast<int>(ci / 2), f.total, n * g});
    f.total += n * g;
  }
  for (auto& c : cols) f.lam.insert(f.lam.end(), c.begin(), c.end());
  Ring r1(ctx.p(), 1);
  f.Umod.assign(n, Row(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) f.Umod[i][j] = r1.red(f.U(i, j).get_num().get_si());
  return f;
}

enum class Walk { Done, Stopped, TooLarge };

// Visits every element of span(gens) mod q projected to the ideal block, with
// the fixed top row; calls on_uncovered(z) for elements no candidate covers.
template <class Fn>
Walk walk_uncovered(const ShapeFrame& fr, const Row& top, const std::vector<Row>& gens, int64_t limit,
                    double* visited, Fn on_uncovered) {
  const Ring& rg = fr.rg;
  int d = fr.d, m = d * d + d;
  std::vector<Row> hb;
  std::vector<long> ho;
  std::vector<int> hp;
  howell(rg, gens, m, hb, ho, hp);
  std::vector<Row> walk;
  std::vector<int64_t> radix;
  for (size_t i = 0; i < hb.size(); ++i)
    if (hp[i] < d * d) {
      walk.push_back(hb[i]);
      radix.push_back(rg.pw(ho[i]));
    }
  double count = 1;
  for (int64_t r : radix) count *= double(r);
  if (count > double(limit)) return Walk::TooLarge;
  const int total = fr.total;
  const int32_t q = static_cast<int32_t>(rg.q);
  std::vector<std::vector<int32_t>> step(walk.size()), wrap(walk.size());
  for (size_t i = 0; i < walk.size(); ++i) {
    step[i] = fr.image(Row(d, 0), &walk[i]);
    wrap[i].resize(total);
    for (int t = 0; t < total; ++t) wrap[i][t] = static_cast<int32_t>(rg.red(-radix[i] * int64_t(step[i][t])));
  }
  std::vector<int32_t> acc = fr.image(top, nullptr);
  std::vector<int64_t> digit(walk.size(), 0);
  while (true) {
    *visited += 1;
    if (!fr.any_zero(acc)) {
      Row z(m, 0);
      for (size_t i = 0; i < walk.size(); ++i)
        for (int t = 0; t < m; ++t) z[t] = rg.red(z[t] + digit[i] * walk[i][t]);
      if (on_uncovered(z)) return Walk::Stopped;
    }
    size_t i = 0;
    while (i < walk.size()) {
      simd::add_mod(acc.data(), step[i].data(), total, q);
      if (++digit[i] < radix[i]) break;
      simd::add_mod(acc.data(), wrap[i].data(), total, q);
      digit[i] = 0;
      ++i;
    }
    if (i == walk.size()) return Walk::Done;
  }
}

struct Task {
  int shape;
  long f00;
};

struct Shared {
  const LieLattice* L;
  const ExhaustConfig* cfg;
  const GoodBasis* gb;
  std::vector<ShapeFrame> frames;
  Ring rg{3, 1};
};

ExhaustRecord run_task(const Shared& sh, const Task& task) {
  const PContext& ctx = sh.L->ctx();
  const ShapeFrame& fr = sh.frames[task.shape];
  const Ring& rg = fr.rg;
  const int d = fr.d;
  // guard digits only when the top row is forced to vanish exactly
  const long guard = fr.fullB ? sh.cfg->guard : 0;
  const Ring rw(rg.p, rg.N + guard);

  ExhaustRecord rec;
  rec.shape = fr.shape;
  rec.f00 = task.f00;
  for (int64_t k = 0; k < rw.q / rg.q; ++k) {
    const long fw = task.f00 + k * rg.q;
    for (const Row& top : top_rows(ctx, rg, fr.ib.B)) {
      Vec rv(d);
      for (int i = 0; i < d; ++i) rv[i] = Q(top[i]);
      if (!row_ok(ctx, fr.ib.B, rv, rg.N, fr.fullB)) continue;
      if (k == 0) ++rec.rows;
      std::vector<Row> wgens, gens;
      std::vector<long> worder;
      Mat Csys = normalize_rows(ctx, hom_system(sh.gb->A, fr.ib.B, Q(fw), rv), sh.gb->A);
      kernel_mod(rw, reduce(ctx, Csys, rw.N), Csys.cols(), wgens, worder);
      for (Row g : wgens) {
        for (auto& x : g) x = rg.red(x);
        if (std::any_of(g.begin(), g.end(), [](int64_t x) { return x != 0; })) gens.push_back(g);
      }
      std::vector<Row> hb;
      std::vector<long> ho;
      std::vector<int> hp;
      howell(rg, gens, d * d + d, hb, ho, hp);
      bool zero_row = std::all_of(top.begin(), top.end(), [](int64_t x) { return x == 0; });
      if (zero_row && k == 0) rec.orders = ho;

      // fast path: one candidate kills the fixed part and every generator
      std::vector<char> mask(fr.segs.size(), 1);
      fr.restrict_mask(fr.image(top, nullptr), mask);
      for (const Row& g : hb) fr.restrict_mask(fr.image(Row(d, 0), &g), mask);
      if (std::find(mask.begin(), mask.end(), 1) != mask.end()) {
        double sz = 1;
        for (long o : ho) sz *= std::pow(double(ctx.p()), double(o));
        rec.elements += sz;
        continue;
      }
      rec.fast_path = false;
      bool row_uncovered = false;
      Walk w = walk_uncovered(fr, top, hb, sh.cfg->element_limit, &rec.elements, [&](const Row& z) {
        row_uncovered = true;
        if (static_cast<int>(rec.uncovered.size()) < sh.cfg->sample_limit)
          rec.uncovered.push_back(fr.sample(task.f00, top, z));
        return true;
      });
      if (w == Walk::TooLarge) {
        rec.complete = false;
        rec.covered = false;
      }
      if (row_uncovered) {
        rec.covered = false;
        rec.uncovered_rows.push_back({fw, rw.q, std::vector<long>(top.begin(), top.end())});
      }
    }
  }
  return rec;
}

// Uncovered reductions of exact solutions (F_00 exactly f, top row exactly r),
// best lift scores first. Small modules are walked in full; larger ones are
// sampled with a fixed seed.
std::vector<UncoveredSample> exact_uncovered(const Shared& sh, const ShapeFrame& fr, long f00, const Q& f, const Vec& r,
                                             const Row& top, uint64_t seed) {
  const PContext& ctx = sh.L->ctx();
  const Ring& rg = fr.rg;
  int m = fr.d * fr.d + fr.d;
  Mat K = kernel_int(ctx, hom_system(sh.gb->A, fr.ib.B, f, r));
  std::vector<Row> gens;
  for (int k = 0; k < K.cols(); ++k) {
    Row g(K.rows());
    for (int i = 0; i < K.rows(); ++i) g[i] = res(ctx, K(i, k), rg.N);
    gens.push_back(g);
  }
  std::vector<UncoveredSample> best;
  auto offer = [&](const Row& z) {
    UncoveredSample s = fr.sample(f00, top, z);
    auto pos = std::upper_bound(best.begin(), best.end(), s.score,
                                [](int sc, const UncoveredSample& u) { return sc < u.score; });
    best.insert(pos, s);
    if (static_cast<int>(best.size()) > sh.cfg->sample_limit) best.pop_back();
    return best.front().score == 0;
  };
  double visited = 0;
  int64_t scanned = 0;
  Walk w = walk_uncovered(fr, top, gens, sh.cfg->scan_limit, &visited,
                          [&](const Row& z) { return offer(z) || ++scanned >= sh.cfg->scan_limit; });
  if (w == Walk::TooLarge) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int64_t> unif(0, rg.q - 1);
    for (int64_t t = 0; t < sh.cfg->scan_limit; ++t) {
      Row z(m, 0);
      for (const Row& g : gens) {
        int64_t a = unif(rng);
        for (int i = 0; i < m; ++i) z[i] = rg.red(z[i] + a * g[i]);
      }
      if (fr.any_zero(fr.image(top, &z))) continue;
      if (offer(z)) break;
    }
  }
  for (auto& s : best) s.exact = true;
  return best;
}

// Exact top row congruent to `top` with r B = 0.
std::optional<Vec> exact_row(const PContext& ctx, const Ring& rg, const Mat& B, const std::vector<long>& top) {
  int d = B.rows();
  Vec r(d);
  if (std::all_of(top.begin(), top.end(), [](long x) { return x == 0; })) return r;
  Mat K = kernel_int(ctx, B.transpose());
  if (K.cols() == 0) return std::nullopt;
  Row b(top.begin(), top.end());
  auto beta = solve_mod(rg, reduce(ctx, K, rg.N), K.cols(), b);
  if (!beta) return std::nullopt;
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < K.cols(); ++k) r[i] += K(i, k) * Q((*beta)[k]);
  return r;
}

}  // namespace

std::optional<VirtualEndo> lift_solution(const LieLattice& L, const SubmoduleShape& shape, long N, long f00,
                                         const UncoveredSample& s, std::optional<Q> f00_exact) {
  const PContext& ctx = L.ctx();
  OracleFrame fr = oracle_frame(L);
  const GoodBasis& gb = need_gb(fr);
  int d = gb.d();
  int n = d + 1;
  Ring rg(ctx.p(), N);
  Mat U = shape.basis(ctx, d);
  InducedB ib = induced_B(ctx, gb, U);
  auto rr = exact_row(ctx, rg, ib.B, s.top_row);
  if (!rr) return std::nullopt;
  const Vec& r = *rr;
  Row z(d * d + d);
  for (int k = 1; k <= d; ++k) {
    for (int j = 1; j <= d; ++j) z[(k - 1) * d + (j - 1)] = res(ctx, s.F(k, j), N);
    z[d * d + k - 1] = res(ctx, s.F(k, 0), N);
  }
  long sym = f00 > rg.q / 2 ? f00 - rg.q : f00;
  std::vector<Q> reps;
  if (f00_exact) reps.push_back(*f00_exact);
  for (long x : {sym, sym == f00 ? f00 - rg.q : f00, sym + rg.q})
    if (std::find(reps.begin(), reps.end(), Q(x)) == reps.end()) reps.push_back(Q(x));
  for (const Q& f : reps) {
    Mat C = hom_system(gb.A, ib.B, f, r);
    Mat K = kernel_int(ctx, C);
    if (K.cols() == 0) continue;
    auto alpha = solve_mod(rg, reduce(ctx, K, N), K.cols(), z);
    if (!alpha) continue;
    Vec ze(d * d + d);
    for (int i = 0; i < d * d + d; ++i)
      for (int k = 0; k < K.cols(); ++k) ze[i] += K(i, k) * Q((*alpha)[k]);
    Mat F(n, n);
    F(0, 0) = f;
    for (int j = 1; j <= d; ++j) F(0, j) = r[j - 1];
    for (int k = 1; k <= d; ++k) {
      for (int j = 1; j <= d; ++j) F(k, j) = ze[(k - 1) * d + (j - 1)];
      F(k, 0) = ze[d * d + k - 1];
    }
    try {
      return make_endo(L, fr.P * U, fr.P * F);
    } catch (const Error&) {
      continue;
    }
  }
  return std::nullopt;
}

ExhaustReport exhaust(const LieLattice& L, const ExhaustConfig& cfg) {
  const PContext& ctx = L.ctx();
  OracleFrame fr = oracle_frame(L);
  const GoodBasis& gb = need_gb(fr);
  if (cfg.N < 1) throw Error(Err::Domain, "level must be positive");
  Shared sh;
  sh.L = &L;
  sh.cfg = &cfg;
  sh.gb = &gb;
  sh.rg = Ring(ctx.p(), cfg.N);
  if (sh.rg.q > simd::kMaxModulus) throw Error(Err::Domain, "p^N too large for the oracle");
  int n = L.rank();

  ExhaustReport rep;
  rep.p = ctx.p();
  rep.N = cfg.N;
  std::vector<SubmoduleShape> all = enum_index_p(L);
  rep.shapes = static_cast<int>(all.size());
  std::vector<SubmoduleShape> shapes = subalgebra_filter(L, all);
  rep.subalgebras = static_cast<int>(shapes.size());

  std::vector<Submodule> cands = cfg.candidates.empty() ? default_candidates(L, cfg.N) : cfg.candidates;
  Mat Pinv = inverse(fr.P);
  Mat qN = Mat::identity(n).scaled(ctx.qpow(cfg.N));
  std::vector<Mat> cdata;  // pairs (generators, membership functionals) in good coordinates
  for (const Submodule& I : cands) {
    if (I.ambient() != n) throw Error(Err::RankMismatch, "candidate has the wrong ambient rank");
    if (!is_ideal(L, I)) throw Error(Err::NotIdeal, "candidate is not an ideal");
    Mat G = Pinv * I.gens();
    for (int j = 0; j < G.cols(); ++j)
      if (G(0, j) != 0) throw Error(Err::ShapeMismatch, "candidate must lie in the abelian ideal of the good basis");
    Submodule S = hnf(ctx, hcat(G, qN));
    cdata.push_back(G);
    cdata.push_back(inverse(S.gens()).scaled(ctx.qpow(cfg.N)));
  }
  rep.candidates = static_cast<int>(cands.size());
  for (const auto& s : shapes) sh.frames.push_back(shape_frame(ctx, sh.rg, gb, cdata, s));

  std::vector<Task> tasks;
  for (int s = 0; s < static_cast<int>(shapes.size()); ++s)
    for (long f = 0; f < sh.rg.q; ++f) tasks.push_back({s, f});
  std::vector<ExhaustRecord> out(tasks.size());
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    for (size_t i = next++; i < tasks.size(); i = next++) out[i] = run_task(sh, tasks[i]);
  };
  int jobs = std::max(1, cfg.jobs);
  std::vector<std::thread> pool;
  for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  for (const auto& r : out) {
    rep.covered = rep.covered && r.covered;
    rep.complete = rep.complete && r.complete;
  }
  rep.records = std::move(out);
  if (rep.covered || !cfg.lift) return rep;

  // lift phase, sequential in record order: uncovered reductions of exact
  // solutions first, best score first
  rep.lift.attempted = true;
  for (size_t ti = 0; ti < tasks.size() && !rep.lift.simple_lift_found; ++ti) {
    ExhaustRecord& rec = rep.records[ti];
    if (rec.covered) continue;
    const ShapeFrame& sf = sh.frames[tasks[ti].shape];
    long f00 = rec.f00;
    for (const auto& ur : rec.uncovered_rows) {
      if (rep.lift.tried >= cfg.lift_attempts || rep.lift.simple_lift_found) break;
      const auto& top = ur.top;
      const long qw = ur.modulus;
      const long sym = ur.f00 > qw / 2 ? ur.f00 - qw : ur.f00;
      auto r = exact_row(ctx, sh.rg, sf.ib.B, top);
      if (!r) continue;
      Row topr(top.begin(), top.end());
      uint64_t seed = (uint64_t(ti) << 20) ^ uint64_t(&ur - rec.uncovered_rows.data());
      std::vector<UncoveredSample> samples = exact_uncovered(sh, sf, f00, Q(sym), *r, topr, seed);
      for (const auto& s : samples) {
        if (rep.lift.tried >= cfg.lift_attempts) break;
        ++rep.lift.tried;
        auto e = lift_solution(L, sf.shape, cfg.N, f00, s, Q(sym));
        if (!e) continue;
        SimplicityVerdict v = simplicity(*e);
        rep.lift.verdict = v;
        if (v.status == Verdict::Simple) {
          rep.lift.simple_lift_found = true;
          rep.lift.endo = e;
          rep.lift.shape = sf.shape;
          rep.lift.f00 = f00;
          rep.lift.sample = s;
          break;
        }
      }
    }
    if (rep.lift.tried >= cfg.lift_attempts) break;
  }
  return rep;
}

}  // namespace zpl
