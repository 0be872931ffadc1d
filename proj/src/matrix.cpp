#include "zpl/matrix.hpp"

#include <utility>

namespace zpl {

Mat Mat::identity(int n) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Mat Mat::from_rows(const std::vector<std::vector<Q>>& rows) {
  int r = static_cast<int>(rows.size());
  int c = r ? static_cast<int>(rows[0].size()) : 0;
  Mat m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = rows[i][j];
  return m;
}

Mat Mat::from_cols(const std::vector<Vec>& cols) {
  int c = static_cast<int>(cols.size());
  int r = c ? static_cast<int>(cols[0].size()) : 0;
  Mat m(r, c);
  for (int j = 0; j < c; ++j)
    for (int i = 0; i < r; ++i) m(i, j) = cols[j][i];
  return m;
}

Mat Mat::diag(const Vec& d) {
  int n = static_cast<int>(d.size());
  Mat m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = d[i];
  return m;
}

Vec Mat::col(int j) const {
  Vec v(r_);
  for (int i = 0; i < r_; ++i) v[i] = (*this)(i, j);
  return v;
}

Vec Mat::row(int i) const {
  Vec v(c_);
  for (int j = 0; j < c_; ++j) v[j] = (*this)(i, j);
  return v;
}

void Mat::set_col(int j, const Vec& v) {
  for (int i = 0; i < r_; ++i) (*this)(i, j) = v[i];
}

Mat Mat::cols_range(int from, int to) const { return block(0, from, r_, to - from); }

Mat Mat::block(int r0, int c0, int nr, int nc) const {
  Mat m(nr, nc);
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nc; ++j) m(i, j) = (*this)(r0 + i, c0 + j);
  return m;
}

Mat Mat::transpose() const {
  Mat m(c_, r_);
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j) m(j, i) = (*this)(i, j);
  return m;
}

bool Mat::is_zero() const {
  for (const Q& x : a_)
    if (x != 0) return false;
  return true;
}

Mat Mat::operator*(const Mat& o) const {
  if (c_ != o.r_) throw Error(Err::RankMismatch, "matrix product shape mismatch");
  Mat m(r_, o.c_);
  for (int i = 0; i < r_; ++i)
    for (int k = 0; k < c_; ++k) {
      const Q& x = (*this)(i, k);
      if (x == 0) continue;
      for (int j = 0; j < o.c_; ++j)
        if (o(k, j) != 0) m(i, j) += x * o(k, j);
    }
  return m;
}

Vec Mat::operator*(const Vec& v) const {
  if (static_cast<int>(v.size()) != c_) throw Error(Err::RankMismatch, "matrix-vector shape mismatch");
  Vec out(r_);
  for (int i = 0; i < r_; ++i)
    for (int k = 0; k < c_; ++k)
      if ((*this)(i, k) != 0 && v[k] != 0) out[i] += (*this)(i, k) * v[k];
  return out;
}

Mat Mat::operator+(const Mat& o) const {
  Mat m = *this;
  for (size_t i = 0; i < a_.size(); ++i) m.a_[i] += o.a_[i];
  return m;
}

Mat Mat::operator-(const Mat& o) const {
  Mat m = *this;
  for (size_t i = 0; i < a_.size(); ++i) m.a_[i] -= o.a_[i];
  return m;
}

Mat Mat::scaled(const Q& s) const {
  Mat m = *this;
  for (Q& x : m.a_) x *= s;
  return m;
}

Mat hcat(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows()) throw Error(Err::RankMismatch, "hcat row mismatch");
  Mat m(a.rows(), a.cols() + b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
    for (int j = 0; j < b.cols(); ++j) m(i, a.cols() + j) = b(i, j);
  }
  return m;
}

Vec vadd(const Vec& a, const Vec& b) {
  Vec r = a;
  for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

Vec vsub(const Vec& a, const Vec& b) {
  Vec r = a;
  for (size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

Vec vscale(const Vec& a, const Q& s) {
  Vec r = a;
  for (Q& x : r) x *= s;
  return r;
}

bool vzero(const Vec& a) {
  for (const Q& x : a)
    if (x != 0) return false;
  return true;
}

Vec unit_vec(int n, int i) {
  Vec v(n);
  v[i] = 1;
  return v;
}

namespace {

// Row reduction to reduced echelon form; returns pivot columns.
std::vector<int> rref(Mat& m) {
  std::vector<int> piv;
  int r = 0;
  for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
    int sel = -1;
    for (int i = r; i < m.rows(); ++i)
      if (m(i, c) != 0) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    if (sel != r)
      for (int j = 0; j < m.cols(); ++j) std::swap(m(sel, j), m(r, j));
    Q inv = 1 / m(r, c);
    for (int j = 0; j < m.cols(); ++j) m(r, j) *= inv;
    for (int i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      Q f = m(i, c);
      for (int j = 0; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    piv.push_back(c);
    ++r;
  }
  return piv;
}

}  // namespace

int rank(const Mat& m) {
  Mat t = m;
  return static_cast<int>(rref(t).size());
}

Q det(const Mat& m) {
  if (m.rows() != m.cols()) throw Error(Err::RankMismatch, "det of non-square matrix");
  Mat t = m;
  int n = m.rows();
  Q d = 1;
  for (int c = 0; c < n; ++c) {
    int sel = -1;
    for (int i = c; i < n; ++i)
      if (t(i, c) != 0) {
        sel = i;
        break;
      }
    if (sel < 0) return 0;
    if (sel != c) {
      for (int j = 0; j < n; ++j) std::swap(t(sel, j), t(c, j));
      d = -d;
    }
    d *= t(c, c);
    for (int i = c + 1; i < n; ++i) {
      if (t(i, c) == 0) continue;
      Q f = t(i, c) / t(c, c);
      for (int j = c; j < n; ++j) t(i, j) -= f * t(c, j);
    }
  }
  return d;
}

Mat inverse(const Mat& m) {
  int n = m.rows();
  if (n != m.cols()) throw Error(Err::Singular, "inverse of non-square matrix");
  Mat aug = hcat(m, Mat::identity(n));
  std::vector<int> piv = rref(aug);
  if (static_cast<int>(piv.size()) < n || piv[n - 1] != n - 1) throw Error(Err::Singular, "matrix is singular");
  return aug.block(0, n, n, n);
}

Mat nullspace(const Mat& m) {
  Mat t = m;
  std::vector<int> piv = rref(t);
  std::vector<bool> is_piv(m.cols(), false);
  for (int c : piv) is_piv[c] = true;
  std::vector<Vec> basis;
  for (int f = 0; f < m.cols(); ++f) {
    if (is_piv[f]) continue;
    Vec v(m.cols());
    v[f] = 1;
    for (size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -t(static_cast<int>(r), f);
    basis.push_back(v);
  }
  if (basis.empty()) return Mat(m.cols(), 0);
  return Mat::from_cols(basis);
}

Mat colspace(const Mat& m) {
  Mat t = m.transpose();
  std::vector<int> piv = rref(t);
  Mat out(m.rows(), static_cast<int>(piv.size()));
  for (size_t k = 0; k < piv.size(); ++k)
    for (int i = 0; i < m.rows(); ++i) out(i, static_cast<int>(k)) = t(static_cast<int>(k), i);
  return out;
}

Poly charpoly(const Mat& m) {
  // Faddeev-LeVerrier
  int n = m.rows();
  Poly p;
  p.c.assign(n + 1, Q(0));
  p.c[n] = 1;
  Mat Mk(n, n);
  Mat I = Mat::identity(n);
  Q ck = 1;
  for (int k = 1; k <= n; ++k) {
    Mk = m * Mk + I.scaled(ck);
    Mat AM = m * Mk;
    Q tr = 0;
    for (int i = 0; i < n; ++i) tr += AM(i, i);
    ck = -tr / k;
    p.c[n - k] = ck;
  }
  return p;
}

long min_val(const PContext& ctx, const Mat& m) {
  long v = kInf;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) v = std::min(v, val(ctx, m(i, j)));
  return v;
}

bool is_integral(const PContext& ctx, const Mat& m) {
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (!is_integral(ctx, m(i, j))) return false;
  return true;
}

}  // namespace zpl

namespace zpl {

Mat subspace_intersect(const Mat& a, const Mat& b) {
  int n = a.rows();
  if (a.cols() == 0 || b.cols() == 0) return Mat(n, 0);
  Mat K = nullspace(hcat(a, b.scaled(-1)));
  if (K.cols() == 0) return Mat(n, 0);
  return colspace(a * K.block(0, 0, a.cols(), K.cols()));
}

Mat subspace_preimage(const Mat& T, const Mat& V, const Mat& D) {
  int n = D.rows();
  if (D.cols() == 0) return Mat(n, 0);
  Mat C = T * D;
  Mat K = nullspace(V.cols() == 0 ? C : hcat(C, V.scaled(-1)));
  if (K.cols() == 0) return Mat(n, 0);
  return colspace(D * K.block(0, 0, D.cols(), K.cols()));
}

bool subspace_contains(const Mat& big, const Mat& small) {
  if (small.cols() == 0) return true;
  if (big.cols() == 0) return colspace(small).cols() == 0;
  return rank(hcat(big, small)) == rank(big);
}

}  // namespace zpl
