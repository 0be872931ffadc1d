#pragma once

#include "zpl/lie.hpp"

namespace zpl {

// Basis x_0..x_d (columns, unimodular) with <x_1..x_d> an abelian ideal and
// [x_0, x_i] = sum_l A(l-1, i-1) x_l.
struct GoodBasis {
  Mat basis;
  Mat A;
  int d() const { return A.rows(); }
};

std::optional<GoodBasis> find_good_basis(const LieLattice& L);
// Good basis with the given isolated abelian ideal of corank one as its tail.
std::optional<GoodBasis> good_basis_for_ideal(const LieLattice& L, const Submodule& J);
// find_good_basis first, then other abelian ideals of corank one when
// [L,L] is central of rank one.
std::vector<GoodBasis> good_basis_candidates(const LieLattice& L);
// Validates that the given columns form a good basis and computes A.
GoodBasis good_basis_from(const LieLattice& L, const Mat& P);

struct InducedB {
  Mat B;
  bool is_subalgebra = false;
};

// U is the basis of M in good coordinates with U(0,i) = 0 for i >= 1.
InducedB induced_B(const PContext& ctx, const GoodBasis& gb, const Mat& U);
// Basis of a full-rank submodule M (ambient coordinates) adapted to the good basis,
// returned in good coordinates (lower triangular, U(0,i) = 0 for i >= 1).
Mat adapted_basis(const PContext& ctx, const GoodBasis& gb, const Submodule& M);

enum class HomStatus { Pass, ForcedZeroRow, CondA, CondB, CondC };
const char* hom_status_name(HomStatus s);

struct HomVerdict {
  HomStatus status = HomStatus::Pass;
  int i = -1, j = -1, k = -1;  // 1-based ideal indices of the first violation
  bool ok() const { return status == HomStatus::Pass; }
};

// F is the (d+1)x(d+1) matrix of phi: M -> L with respect to the good bases of M and L.
HomVerdict check_hom_metabelian(const Mat& A, const Mat& B, const Mat& F);

// The lattice with good basis e_0..e_d and matrix A.
LieLattice metabelian_lattice(const PContext& ctx, const Mat& A);

}  // namespace zpl
