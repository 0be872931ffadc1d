#include "zpl/zmodlin.hpp"

#include <utility>

namespace zpl {

namespace {

void swap_cols(Mat& A, int a, int b) {
  if (a == b) return;
  for (int i = 0; i < A.rows(); ++i) std::swap(A(i, a), A(i, b));
}

void scale_col(Mat& A, int j, const Q& s) {
  for (int i = 0; i < A.rows(); ++i) A(i, j) *= s;
}

// col_a -= q * col_b
void axpy_col(Mat& A, int a, int b, const Q& q) {
  if (q == 0) return;
  for (int i = 0; i < A.rows(); ++i)
    if (A(i, b) != 0) A(i, a) -= q * A(i, b);
}

struct Echelon {
  std::vector<int> rows;
  std::vector<long> vals;
};

// Unimodular column elimination over Z_(p); V (if given) tracks the transform.
Echelon col_echelon(const PContext& ctx, Mat& A, Mat* V) {
  Echelon e;
  int piv = 0;
  for (int i = 0; i < A.rows() && piv < A.cols(); ++i) {
    int best = -1;
    long bv = kInf;
    for (int j = piv; j < A.cols(); ++j) {
      long v = val(ctx, A(i, j));
      if (v < bv) {
        bv = v;
        best = j;
      }
    }
    if (best < 0) continue;
    swap_cols(A, piv, best);
    if (V) swap_cols(*V, piv, best);
    Q pk = ctx.qpow(bv);
    Q u = A(i, piv) / pk;
    Q ui = 1 / u;
    scale_col(A, piv, ui);
    if (V) scale_col(*V, piv, ui);
    for (int j = piv + 1; j < A.cols(); ++j) {
      if (A(i, j) == 0) continue;
      Q q = A(i, j) / pk;
      axpy_col(A, j, piv, q);
      if (V) axpy_col(*V, j, piv, q);
    }
    e.rows.push_back(i);
    e.vals.push_back(bv);
    ++piv;
  }
  return e;
}

}  // namespace

Submodule Submodule::zero(int n) {
  Submodule m;
  m.n_ = n;
  m.g_ = Mat(n, 0);
  return m;
}

Submodule Submodule::full(int n) {
  Submodule m;
  m.n_ = n;
  m.g_ = Mat::identity(n);
  for (int i = 0; i < n; ++i) {
    m.piv_.push_back(i);
    m.pval_.push_back(0);
  }
  return m;
}

Submodule hnf(const PContext& ctx, const Mat& gens) {
  if (!is_integral(ctx, gens)) throw Error(Err::MalformedMatrix, "generator matrix has non-integral entries");
  Mat A = gens;
  Echelon e = col_echelon(ctx, A, nullptr);
  int m = static_cast<int>(e.rows.size());
  Mat H = A.cols_range(0, m);
  for (int j = 0; j < m; ++j) {
    int r = e.rows[j];
    long k = e.vals[j];
    for (int i = 0; i < j; ++i) {
      const Q& x = H(r, i);
      if (x == 0) continue;
      Q rem = k == 0 ? Q(0) : Q(residue(ctx, x, k));
      if (rem == x) continue;
      Q q = (x - rem) / ctx.qpow(k);
      axpy_col(H, i, j, q);
    }
  }
  Submodule s;
  s.n_ = gens.rows();
  s.g_ = H;
  s.piv_ = e.rows;
  s.pval_ = e.vals;
  return s;
}

Submodule span(const PContext& ctx, const std::vector<Vec>& gens, int n) {
  if (gens.empty()) return Submodule::zero(n);
  return hnf(ctx, Mat::from_cols(gens));
}

long index_log(const PContext&, const Submodule& M) {
  if (M.rank() < M.ambient()) return kInf;
  long s = 0;
  for (long v : M.pivot_vals()) s += v;
  return s;
}

Z index(const PContext& ctx, const Submodule& M) {
  long k = index_log(ctx, M);
  if (k == kInf) throw Error(Err::Domain, "submodule has infinite index");
  return ctx.pow(k);
}

Mat kernel_int(const PContext& ctx, const Mat& A) {
  if (!is_integral(ctx, A)) throw Error(Err::MalformedMatrix, "kernel_int needs an integral matrix");
  Mat W = A;
  Mat V = Mat::identity(A.cols());
  Echelon e = col_echelon(ctx, W, &V);
  int k = static_cast<int>(e.rows.size());
  return V.cols_range(k, A.cols());
}

Submodule isolator(const PContext& ctx, const Submodule& M) {
  int n = M.ambient();
  if (M.rank() == 0) return Submodule::zero(n);
  if (M.rank() == n) return Submodule::full(n);
  Mat W = kernel_int(ctx, M.gens().transpose());
  return hnf(ctx, kernel_int(ctx, W.transpose()));
}

namespace {

bool solve_tri(const PContext& ctx, const Vec& x, const Submodule& M, Vec* out) {
  if (static_cast<int>(x.size()) != M.ambient()) throw Error(Err::RankMismatch, "vector/module rank mismatch");
  Vec y = x;
  Vec t(M.rank());
  const Mat& G = M.gens();
  for (int j = 0; j < M.rank(); ++j) {
    int r = M.pivot_rows()[j];
    t[j] = y[r] / G(r, j);
    if (!is_integral(ctx, t[j])) return false;
    if (t[j] != 0)
      for (int i = r; i < M.ambient(); ++i) y[i] -= t[j] * G(i, j);
  }
  if (!vzero(y)) return false;
  if (out) *out = t;
  return true;
}

}  // namespace

bool member(const PContext& ctx, const Vec& x, const Submodule& M) { return solve_tri(ctx, x, M, nullptr); }

Vec coords(const PContext& ctx, const Vec& x, const Submodule& M) {
  Vec t;
  if (!solve_tri(ctx, x, M, &t)) throw Error(Err::Domain, "vector is not in the submodule");
  return t;
}

bool contains(const PContext& ctx, const Submodule& big, const Submodule& small) {
  if (big.ambient() != small.ambient()) throw Error(Err::RankMismatch, "ambient rank mismatch");
  for (int j = 0; j < small.rank(); ++j)
    if (!member(ctx, small.gens().col(j), big)) return false;
  return true;
}

Submodule intersect(const PContext& ctx, const Submodule& a, const Submodule& b) {
  if (a.ambient() != b.ambient()) throw Error(Err::RankMismatch, "ambient rank mismatch");
  int n = a.ambient();
  if (a.rank() == 0 || b.rank() == 0) return Submodule::zero(n);
  Mat K = kernel_int(ctx, hcat(a.gens(), b.gens().scaled(-1)));
  if (K.cols() == 0) return Submodule::zero(n);
  return hnf(ctx, a.gens() * K.block(0, 0, a.rank(), K.cols()));
}

Submodule msum(const PContext& ctx, const Submodule& a, const Submodule& b) {
  if (a.ambient() != b.ambient()) throw Error(Err::RankMismatch, "ambient rank mismatch");
  return hnf(ctx, hcat(a.gens(), b.gens()));
}

Submodule preimage(const PContext& ctx, const Mat& T, const Submodule& M, const Submodule& D) {
  if (T.cols() != D.ambient() || T.rows() != M.ambient()) throw Error(Err::RankMismatch, "preimage shape mismatch");
  if (D.rank() == 0) return D;
  Mat C = T * D.gens();
  long mv = min_val(ctx, C);
  Q s = (mv == kInf || mv >= 0) ? Q(1) : ctx.qpow(-mv);
  Mat big = hcat(C.scaled(s), M.gens().scaled(-s));
  Mat K = kernel_int(ctx, big);
  if (K.cols() == 0) return Submodule::zero(D.ambient());
  return hnf(ctx, D.gens() * K.block(0, 0, D.rank(), K.cols()));
}

Submodule image(const PContext& ctx, const Mat& T, const Submodule& M) {
  if (M.rank() == 0) return Submodule::zero(T.rows());
  return hnf(ctx, T * M.gens());
}

Submodule scale(const PContext& ctx, const Submodule& M, long k) {
  if (M.rank() == 0) return M;
  return hnf(ctx, M.gens().scaled(ctx.qpow(k)));
}

std::vector<long> elementary_divisors(const PContext& ctx, const Mat& A0) {
  Mat A = A0;
  std::vector<long> out;
  int t = 0;
  int n = std::min(A.rows(), A.cols());
  while (t < n) {
    long bv = kInf;
    int bi = -1, bj = -1;
    for (int i = t; i < A.rows(); ++i)
      for (int j = t; j < A.cols(); ++j) {
        long v = val(ctx, A(i, j));
        if (v < bv) {
          bv = v;
          bi = i;
          bj = j;
        }
      }
    if (bi < 0) break;
    for (int j = 0; j < A.cols(); ++j) std::swap(A(t, j), A(bi, j));
    swap_cols(A, t, bj);
    Q pv = A(t, t);
    for (int i = t + 1; i < A.rows(); ++i) {
      if (A(i, t) == 0) continue;
      Q f = A(i, t) / pv;
      for (int j = t; j < A.cols(); ++j) A(i, j) -= f * A(t, j);
    }
    for (int j = t + 1; j < A.cols(); ++j) {
      if (A(t, j) == 0) continue;
      Q f = A(t, j) / pv;
      for (int i = t; i < A.rows(); ++i) A(i, j) -= f * A(i, t);
    }
    out.push_back(bv);
    ++t;
  }
  return out;
}

}  // namespace zpl
