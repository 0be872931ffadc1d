#pragma once

#include "zpl/matrix.hpp"

namespace zpl {

// Sub-Z_p-module of Z_p^n in column Hermite form: column j has its first
// nonzero entry (the pivot) at row piv[j], pivot rows strictly increase, the
// pivot is a power of p, and entries of earlier columns in a pivot row are
// integers reduced below that pivot.
class Submodule {
 public:
  Submodule() = default;
  static Submodule zero(int n);
  static Submodule full(int n);

  int ambient() const { return n_; }
  int rank() const { return g_.cols(); }
  const Mat& gens() const { return g_; }
  const std::vector<int>& pivot_rows() const { return piv_; }
  const std::vector<long>& pivot_vals() const { return pval_; }

  bool operator==(const Submodule& o) const { return n_ == o.n_ && g_ == o.g_; }
  bool operator!=(const Submodule& o) const { return !(*this == o); }

 private:
  friend Submodule hnf(const PContext&, const Mat&);
  int n_ = 0;
  Mat g_;
  std::vector<int> piv_;
  std::vector<long> pval_;
};

Submodule hnf(const PContext& ctx, const Mat& gens);
Submodule span(const PContext& ctx, const std::vector<Vec>& gens, int n);

// log_p of the index, or kInf when not of full rank.
long index_log(const PContext& ctx, const Submodule& M);
// p^k as an integer; throws when infinite.
Z index(const PContext& ctx, const Submodule& M);

Submodule isolator(const PContext& ctx, const Submodule& M);
bool member(const PContext& ctx, const Vec& x, const Submodule& M);
// Coordinates of x in the Hermite basis of M; throws when x is not in M.
Vec coords(const PContext& ctx, const Vec& x, const Submodule& M);
bool contains(const PContext& ctx, const Submodule& big, const Submodule& small);
Submodule intersect(const PContext& ctx, const Submodule& a, const Submodule& b);
Submodule msum(const PContext& ctx, const Submodule& a, const Submodule& b);
// {x in D : T x in M}; T may have rational entries.
Submodule preimage(const PContext& ctx, const Mat& T, const Submodule& M, const Submodule& D);
// Image T(M) for a map with T(M) integral.
Submodule image(const PContext& ctx, const Mat& T, const Submodule& M);
Submodule scale(const PContext& ctx, const Submodule& M, long k);

// Saturated kernel {x in Z_p^c : A x = 0} of an integral matrix, as columns.
Mat kernel_int(const PContext& ctx, const Mat& A);

// Elementary divisor valuations of an integral matrix.
std::vector<long> elementary_divisors(const PContext& ctx, const Mat& A);

}  // namespace zpl
