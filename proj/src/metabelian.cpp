#include "zpl/metabelian.hpp"

namespace zpl {

namespace {

bool abelian_module(const LieLattice& L, const Submodule& J) {
  for (int a = 0; a < J.rank(); ++a)
    for (int b = a + 1; b < J.rank(); ++b)
      if (!vzero(L.bracket(J.gens().col(a), J.gens().col(b)))) return false;
  return true;
}

bool usable_ideal(const LieLattice& L, const Submodule& J) {
  return J.rank() == L.rank() - 1 && abelian_module(L, J) && is_ideal(L, J);
}

GoodBasis build(const LieLattice& L, const Submodule& J) {
  const PContext& ctx = L.ctx();
  int n = L.rank();
  Mat w = kernel_int(ctx, J.gens().transpose());
  int pick = -1;
  for (int i = 0; i < n && pick < 0; ++i)
    if (is_unit(ctx, w(i, 0))) pick = i;
  Mat P(n, n);
  P.set_col(0, unit_vec(n, pick));
  for (int j = 0; j < n - 1; ++j) P.set_col(j + 1, J.gens().col(j));
  return good_basis_from(L, P);
}

}  // namespace

GoodBasis good_basis_from(const LieLattice& L, const Mat& P) {
  const PContext& ctx = L.ctx();
  int n = L.rank();
  if (P.rows() != n || P.cols() != n) throw Error(Err::RankMismatch, "good basis must be square");
  if (!is_integral(ctx, P) || !is_unit(ctx, det(P))) throw Error(Err::Singular, "basis is not unimodular");
  int d = n - 1;
  Mat Jm = P.cols_range(1, n);
  for (int a = 0; a < d; ++a)
    for (int b = a + 1; b < d; ++b)
      if (!vzero(L.bracket(Jm.col(a), Jm.col(b)))) throw Error(Err::NotIdeal, "tail of basis is not abelian");
  GoodBasis gb;
  gb.basis = P;
  gb.A = Mat(d, d);
  Mat Pi = inverse(P);
  for (int i = 0; i < d; ++i) {
    Vec c = Pi * L.bracket(P.col(0), Jm.col(i));
    if (c[0] != 0) throw Error(Err::NotIdeal, "tail of basis is not an ideal");
    for (int l = 0; l < d; ++l) gb.A(l, i) = c[l + 1];
  }
  if (!is_integral(ctx, gb.A)) throw Error(Err::NotIdeal, "matrix of the basis is not integral");
  return gb;
}

std::optional<GoodBasis> find_good_basis(const LieLattice& L) {
  int n = L.rank();
  if (n == 0) return std::nullopt;
  if (L.is_abelian()) return good_basis_from(L, Mat::identity(n));
  Submodule I = iso_derived(L);
  if (usable_ideal(L, I)) return build(L, I);
  if (I.rank() < n - 1) {
    Submodule C = centralizer(L, I);
    if (usable_ideal(L, C)) return build(L, C);
    if (C.rank() == n && n == 3 && I.rank() == 1) {
      // [L,L] central of rank one: any rank-two isolated module containing it works
      for (int i = 0; i < n; ++i) {
        Submodule J = isolator(L.ctx(), msum(L.ctx(), I, span(L.ctx(), {unit_vec(n, i)}, n)));
        if (J.rank() == 2 && usable_ideal(L, J)) return build(L, J);
      }
    }
  }
  return std::nullopt;
}

std::optional<GoodBasis> good_basis_for_ideal(const LieLattice& L, const Submodule& J) {
  if (!usable_ideal(L, J) || isolator(L.ctx(), J) != J) return std::nullopt;
  return build(L, J);
}

std::vector<GoodBasis> good_basis_candidates(const LieLattice& L) {
  std::vector<GoodBasis> out;
  auto add = [&](const GoodBasis& gb) {
    Submodule J = hnf(L.ctx(), gb.basis.cols_range(1, L.rank()));
    for (const GoodBasis& o : out)
      if (hnf(L.ctx(), o.basis.cols_range(1, L.rank())) == J) return;
    out.push_back(gb);
  };
  if (auto gb = find_good_basis(L)) add(*gb);
  int n = L.rank();
  Submodule I = iso_derived(L);
  if (n == 3 && I.rank() == 1 && centralizer(L, I).rank() == n)
    for (int i = 0; i < n; ++i)
      if (auto gb = good_basis_for_ideal(L, isolator(L.ctx(), msum(L.ctx(), I, span(L.ctx(), {unit_vec(n, i)}, n)))))
        add(*gb);
  return out;
}

InducedB induced_B(const PContext& ctx, const GoodBasis& gb, const Mat& U) {
  int d = gb.d();
  if (U.rows() != d + 1 || U.cols() != d + 1) throw Error(Err::RankMismatch, "U has wrong size");
  for (int i = 1; i <= d; ++i)
    if (U(0, i) != 0) throw Error(Err::ShapeMismatch, "U must have U(0,i) = 0 for i >= 1");
  Mat Uh = U.block(1, 1, d, d);
  if (U(0, 0) == 0) throw Error(Err::Singular, "U is singular");
  InducedB r;
  r.B = (inverse(Uh) * gb.A * Uh).scaled(U(0, 0));
  r.is_subalgebra = is_integral(ctx, r.B);
  return r;
}

Mat adapted_basis(const PContext& ctx, const GoodBasis& gb, const Submodule& M) {
  int n = gb.d() + 1;
  if (M.ambient() != n || M.rank() != n) throw Error(Err::RankMismatch, "adapted basis needs a full-rank submodule");
  return hnf(ctx, inverse(gb.basis) * M.gens()).gens();
}

const char* hom_status_name(HomStatus s) {
  switch (s) {
    case HomStatus::Pass: return "pass";
    case HomStatus::ForcedZeroRow: return "forced-zero-row";
    case HomStatus::CondA: return "condition-a";
    case HomStatus::CondB: return "condition-b";
    case HomStatus::CondC: return "condition-c";
  }
  return "?";
}

HomVerdict check_hom_metabelian(const Mat& A, const Mat& B, const Mat& F) {
  int d = A.rows();
  if (B.rows() != d || F.rows() != d + 1 || F.cols() != d + 1) throw Error(Err::RankMismatch, "dimension mismatch");
  HomVerdict v;
  bool top_zero = true;
  for (int i = 1; i <= d; ++i) top_zero = top_zero && F(0, i) == 0;
  if (!top_zero && rank(B) == d) {
    v.status = HomStatus::ForcedZeroRow;
    return v;
  }
  Mat FJ = F.block(1, 1, d, d);
  Mat AF = A * FJ;
  for (int j = 1; j <= d; ++j) {
    Q s = 0;
    for (int l = 1; l <= d; ++l) s += F(0, l) * B(l - 1, j - 1);
    if (s != 0) {
      v.status = HomStatus::CondA;
      v.j = j;
      return v;
    }
  }
  for (int i = 1; i <= d; ++i)
    for (int j = i + 1; j <= d; ++j)
      for (int k = 1; k <= d; ++k)
        if (F(0, i) * AF(k - 1, j - 1) - F(0, j) * AF(k - 1, i - 1) != 0) {
          v.status = HomStatus::CondB;
          v.i = i;
          v.j = j;
          v.k = k;
          return v;
        }
  Mat FB = FJ * B;
  for (int i = 1; i <= d; ++i) {
    Q af0 = 0;
    for (int l = 1; l <= d; ++l) af0 += A(i - 1, l - 1) * F(l, 0);
    for (int j = 1; j <= d; ++j)
      if (FB(i - 1, j - 1) != F(0, 0) * AF(i - 1, j - 1) - F(0, j) * af0) {
        v.status = HomStatus::CondC;
        v.i = i;
        v.j = j;
        return v;
      }
  }
  return v;
}

LieLattice metabelian_lattice(const PContext& ctx, const Mat& A) {
  int d = A.rows();
  int n = d + 1;
  ScBuilder b(n);
  for (int i = 1; i <= d; ++i) {
    Vec v(n);
    for (int l = 1; l <= d; ++l) v[l] = A(l - 1, i - 1);
    b.set(0, i, v);
  }
  return LieLattice(ctx, n, b.take());
}

}  // namespace zpl
