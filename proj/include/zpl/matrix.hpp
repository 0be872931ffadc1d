#pragma once

#include "zpl/padic.hpp"

#include <vector>

namespace zpl {

using Vec = std::vector<Q>;

// Dense rational matrix, row-major.
class Mat {
 public:
  Mat() = default;
  Mat(int rows, int cols) : r_(rows), c_(cols), a_(static_cast<size_t>(rows) * cols) {}

  static Mat identity(int n);
  static Mat from_rows(const std::vector<std::vector<Q>>& rows);
  static Mat from_cols(const std::vector<Vec>& cols);
  static Mat diag(const Vec& d);

  int rows() const { return r_; }
  int cols() const { return c_; }
  Q& operator()(int i, int j) { return a_[static_cast<size_t>(i) * c_ + j]; }
  const Q& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * c_ + j]; }

  Vec col(int j) const;
  Vec row(int i) const;
  void set_col(int j, const Vec& v);
  Mat cols_range(int from, int to) const;
  Mat block(int r0, int c0, int nr, int nc) const;
  Mat transpose() const;

  bool operator==(const Mat& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }
  bool operator!=(const Mat& o) const { return !(*this == o); }
  bool is_zero() const;

  Mat operator*(const Mat& o) const;
  Vec operator*(const Vec& v) const;
  Mat operator+(const Mat& o) const;
  Mat operator-(const Mat& o) const;
  Mat scaled(const Q& s) const;

 private:
  int r_ = 0, c_ = 0;
  std::vector<Q> a_;
};

Mat hcat(const Mat& a, const Mat& b);
Vec vadd(const Vec& a, const Vec& b);
Vec vsub(const Vec& a, const Vec& b);
Vec vscale(const Vec& a, const Q& s);
bool vzero(const Vec& a);
Vec unit_vec(int n, int i);

// Field operations over Q.
int rank(const Mat& m);
Q det(const Mat& m);
Mat inverse(const Mat& m);  // throws Singular
// Basis (columns) of the rational null space.
Mat nullspace(const Mat& m);
// Column space basis (columns, reduced echelon).
Mat colspace(const Mat& m);
// Coefficients of the characteristic polynomial det(lambda - m), low to high.
Poly charpoly(const Mat& m);

// Minimal valuation of entries (kInf if zero).
long min_val(const PContext& ctx, const Mat& m);
bool is_integral(const PContext& ctx, const Mat& m);

// Rational subspaces given by column spans.
Mat subspace_intersect(const Mat& a, const Mat& b);
// {x in span D : T x in span V}
Mat subspace_preimage(const Mat& T, const Mat& V, const Mat& D);
bool subspace_contains(const Mat& big, const Mat& small);

}  // namespace zpl
