#pragma once

#include "zpl/zmodlin.hpp"

#include <optional>

namespace zpl {

// Lie lattice on Z_p^n given by structure constants [x_i,x_j] = sum_k c(i,j,k) x_k.
class LieLattice {
 public:
  LieLattice() = default;
  // Validates antisymmetry, integrality and Jacobi; throws Error naming the first failure.
  LieLattice(const PContext& ctx, int n, std::vector<Q> sc);

  const PContext& ctx() const { return ctx_; }
  int rank() const { return n_; }
  const Q& c(int i, int j, int k) const { return sc_[(static_cast<size_t>(i) * n_ + j) * n_ + k]; }
  const std::vector<Q>& constants() const { return sc_; }

  Vec bracket(const Vec& x, const Vec& y) const;
  Vec bracket_basis(int i, int j) const;
  // Matrix of ad(x): column j is [x, e_j].
  Mat ad(const Vec& x) const;
  bool is_abelian() const;

 private:
  PContext ctx_{3};
  int n_ = 0;
  std::vector<Q> sc_;
};

// Structure constants indexed (i*n+j)*n+k, filled antisymmetrically from the i<j entries.
class ScBuilder {
 public:
  explicit ScBuilder(int n) : n_(n), sc_(static_cast<size_t>(n) * n * n) {}
  // Sets [x_i, x_j] = v (and [x_j, x_i] = -v).
  ScBuilder& set(int i, int j, const Vec& v);
  std::vector<Q> take() { return std::move(sc_); }

 private:
  int n_;
  std::vector<Q> sc_;
};

enum class Kind { ModuleOnly, Subalgebra, Ideal };
const char* kind_name(Kind k);

Kind substructure_kind(const LieLattice& L, const Submodule& M);
bool is_subalgebra(const LieLattice& L, const Submodule& M);
bool is_ideal(const LieLattice& L, const Submodule& M);

// Submodule spanned by the brackets [a,b] of generators.
Submodule bracket_module(const LieLattice& L, const Submodule& a, const Submodule& b);

enum class SeriesKind { Derived, LowerCentral };

struct Series {
  std::vector<Submodule> terms;  // terms[0] = L
  bool reaches_zero = false;
};

Series series(const LieLattice& L, SeriesKind kind, int max_steps = -1, bool isolated = false);
bool is_solvable(const LieLattice& L);
bool is_nilpotent(const LieLattice& L);

Submodule center(const LieLattice& L);
Submodule centralizer(const LieLattice& L, const Submodule& S);
Submodule derived(const LieLattice& L);
Submodule iso_derived(const LieLattice& L);

// Structure constants of L in the basis given by the columns of P; the columns
// must span a subalgebra over Z_p (throws NotClosed otherwise).
LieLattice in_basis(const LieLattice& L, const Mat& P);

struct Restriction {
  LieLattice lattice;
  Mat basis;  // columns: basis of M in ambient coordinates
};
Restriction restrict_to(const LieLattice& L, const Submodule& M);

// F maps basis of src (columns) into dst coordinates; checks F[a,b] = [Fa,Fb].
// Returns the first failing pair when it is not a homomorphism.
std::optional<std::pair<int, int>> hom_defect(const LieLattice& src, const LieLattice& dst, const Mat& F);

// Largest ideal of L (over Q) contained in the column span of V; returns a basis (columns).
Mat ideal_core(const LieLattice& L, const Mat& V);

// Coordinates t with P t = v over Q, or nullopt when v is not in the column span.
std::optional<Vec> solve_in_span(const Mat& P, const Vec& v);

}  // namespace zpl
