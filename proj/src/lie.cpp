#include "zpl/lie.hpp"

namespace zpl {

const char* kind_name(Kind k) {
  switch (k) {
    case Kind::ModuleOnly: return "module-only";
    case Kind::Subalgebra: return "subalgebra";
    case Kind::Ideal: return "ideal";
  }
  return "?";
}

ScBuilder& ScBuilder::set(int i, int j, const Vec& v) {
  for (int k = 0; k < n_; ++k) {
    sc_[(static_cast<size_t>(i) * n_ + j) * n_ + k] = v[k];
    sc_[(static_cast<size_t>(j) * n_ + i) * n_ + k] = -v[k];
  }
  return *this;
}

LieLattice::LieLattice(const PContext& ctx, int n, std::vector<Q> sc) : ctx_(ctx), n_(n), sc_(std::move(sc)) {
  if (n < 0 || sc_.size() != static_cast<size_t>(n) * n * n)
    throw Error(Err::RankMismatch, "structure constant table has wrong size");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        if (!is_integral(ctx_, c(i, j, k)))
          throw Error(Err::NonIntegral, "constant c(" + std::to_string(i) + "," + std::to_string(j) + "," +
                                            std::to_string(k) + ") is not in Z_p");
        if (c(i, j, k) != -c(j, i, k))
          throw Error(Err::Antisymmetry,
                      "[x" + std::to_string(i) + ",x" + std::to_string(j) + "] is not antisymmetric");
      }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        Vec ei = unit_vec(n, i), ej = unit_vec(n, j), ek = unit_vec(n, k);
        Vec s = vadd(vadd(bracket(ei, bracket(ej, ek)), bracket(ej, bracket(ek, ei))), bracket(ek, bracket(ei, ej)));
        if (!vzero(s))
          throw Error(Err::Jacobi, "Jacobi identity fails on (" + std::to_string(i) + "," + std::to_string(j) + "," +
                                       std::to_string(k) + ")");
      }
}

Vec LieLattice::bracket(const Vec& x, const Vec& y) const {
  if (static_cast<int>(x.size()) != n_ || static_cast<int>(y.size()) != n_)
    throw Error(Err::RankMismatch, "bracket of vectors of wrong length");
  Vec r(n_);
  for (int i = 0; i < n_; ++i) {
    if (x[i] == 0) continue;
    for (int j = 0; j < n_; ++j) {
      if (y[j] == 0 || i == j) continue;
      Q xy = x[i] * y[j];
      for (int k = 0; k < n_; ++k)
        if (c(i, j, k) != 0) r[k] += xy * c(i, j, k);
    }
  }
  return r;
}

Vec LieLattice::bracket_basis(int i, int j) const {
  Vec r(n_);
  for (int k = 0; k < n_; ++k) r[k] = c(i, j, k);
  return r;
}

Mat LieLattice::ad(const Vec& x) const {
  Mat m(n_, n_);
  for (int j = 0; j < n_; ++j) m.set_col(j, bracket(x, unit_vec(n_, j)));
  return m;
}

bool LieLattice::is_abelian() const {
  for (const Q& q : sc_)
    if (q != 0) return false;
  return true;
}

bool is_subalgebra(const LieLattice& L, const Submodule& M) {
  const Mat& G = M.gens();
  for (int a = 0; a < G.cols(); ++a)
    for (int b = a + 1; b < G.cols(); ++b)
      if (!member(L.ctx(), L.bracket(G.col(a), G.col(b)), M)) return false;
  return true;
}

bool is_ideal(const LieLattice& L, const Submodule& M) {
  const Mat& G = M.gens();
  for (int i = 0; i < L.rank(); ++i)
    for (int b = 0; b < G.cols(); ++b)
      if (!member(L.ctx(), L.bracket(unit_vec(L.rank(), i), G.col(b)), M)) return false;
  return true;
}

Kind substructure_kind(const LieLattice& L, const Submodule& M) {
  if (is_ideal(L, M)) return Kind::Ideal;
  if (is_subalgebra(L, M)) return Kind::Subalgebra;
  return Kind::ModuleOnly;
}

Submodule bracket_module(const LieLattice& L, const Submodule& a, const Submodule& b) {
  std::vector<Vec> g;
  for (int i = 0; i < a.rank(); ++i)
    for (int j = 0; j < b.rank(); ++j) {
      Vec v = L.bracket(a.gens().col(i), b.gens().col(j));
      if (!vzero(v)) g.push_back(v);
    }
  return span(L.ctx(), g, L.rank());
}

Series series(const LieLattice& L, SeriesKind kind, int max_steps, bool isolated) {
  if (max_steps < 0) max_steps = 2 * L.rank() + 2;
  Series s;
  Submodule full = Submodule::full(L.rank());
  s.terms.push_back(full);
  for (int k = 0; k < max_steps; ++k) {
    const Submodule& cur = s.terms.back();
    if (cur.rank() == 0) break;
    Submodule nxt = kind == SeriesKind::Derived ? bracket_module(L, cur, cur) : bracket_module(L, full, cur);
    if (isolated) nxt = isolator(L.ctx(), nxt);
    bool same = nxt == cur;
    s.terms.push_back(nxt);
    if (same) break;
  }
  s.reaches_zero = s.terms.back().rank() == 0;
  return s;
}

bool is_solvable(const LieLattice& L) { return series(L, SeriesKind::Derived, -1, true).reaches_zero; }
bool is_nilpotent(const LieLattice& L) { return series(L, SeriesKind::LowerCentral, -1, true).reaches_zero; }

Submodule centralizer(const LieLattice& L, const Submodule& S) {
  int n = L.rank();
  if (S.rank() == 0) return Submodule::full(n);
  // rows: for each generator s, ad(s) applied to x, i.e. -[x, s]
  Mat stack(n * S.rank(), n);
  for (int b = 0; b < S.rank(); ++b) {
    Mat a = L.ad(S.gens().col(b));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) stack(b * n + i, j) = a(i, j);
  }
  Mat K = kernel_int(L.ctx(), stack);
  if (K.cols() == 0) return Submodule::zero(n);
  return hnf(L.ctx(), K);
}

Submodule center(const LieLattice& L) { return centralizer(L, Submodule::full(L.rank())); }

Submodule derived(const LieLattice& L) {
  Submodule full = Submodule::full(L.rank());
  return bracket_module(L, full, full);
}

Submodule iso_derived(const LieLattice& L) { return isolator(L.ctx(), derived(L)); }

std::optional<Vec> solve_in_span(const Mat& P, const Vec& v) {
  Mat aug = hcat(P, Mat::from_cols({vscale(v, -1)}));
  Mat K = nullspace(aug);
  int m = P.cols();
  for (int j = 0; j < K.cols(); ++j) {
    if (K(m, j) == 0) continue;
    Vec t(m);
    for (int i = 0; i < m; ++i) t[i] = K(i, j) / K(m, j);
    return t;
  }
  return std::nullopt;
}

LieLattice in_basis(const LieLattice& L, const Mat& P) {
  int m = P.cols();
  if (rank(P) != m) throw Error(Err::Singular, "basis columns are dependent");
  ScBuilder b(m);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      Vec v = L.bracket(P.col(i), P.col(j));
      auto t = solve_in_span(P, v);
      if (!t) throw Error(Err::NotClosed, "bracket leaves the span");
      for (const Q& q : *t)
        if (!is_integral(L.ctx(), q)) throw Error(Err::NotClosed, "bracket leaves the submodule");
      b.set(i, j, *t);
    }
  return LieLattice(L.ctx(), m, b.take());
}

Restriction restrict_to(const LieLattice& L, const Submodule& M) {
  if (!is_subalgebra(L, M)) throw Error(Err::NotClosed, "submodule is not a subalgebra");
  return {in_basis(L, M.gens()), M.gens()};
}

std::optional<std::pair<int, int>> hom_defect(const LieLattice& src, const LieLattice& dst, const Mat& F) {
  if (F.cols() != src.rank() || F.rows() != dst.rank()) throw Error(Err::RankMismatch, "map has wrong shape");
  for (int i = 0; i < src.rank(); ++i)
    for (int j = i + 1; j < src.rank(); ++j) {
      Vec lhs = F * src.bracket_basis(i, j);
      Vec rhs = dst.bracket(F.col(i), F.col(j));
      if (lhs != rhs) return std::make_pair(i, j);
    }
  return std::nullopt;
}

Mat ideal_core(const LieLattice& L, const Mat& V0) {
  int n = L.rank();
  Mat V = colspace(V0);
  while (V.cols() > 0) {
    Mat N = nullspace(V.transpose());  // annihilators of span V
    if (N.cols() == 0) return V;
    std::vector<std::vector<Q>> rows;
    for (int i = 0; i < n; ++i) {
      Mat c = N.transpose() * L.ad(unit_vec(n, i)) * V;
      for (int r = 0; r < c.rows(); ++r) rows.push_back(c.row(r));
    }
    Mat C = Mat::from_rows(rows);
    Mat K = nullspace(C);
    if (K.cols() == V.cols()) return V;
    V = K.cols() == 0 ? Mat(n, 0) : colspace(V * K);
  }
  return V;
}

}  // namespace zpl
