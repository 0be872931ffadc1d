#pragma once

#include "zpl/metabelian.hpp"

#include <string>

namespace zpl {

enum class Family { L0, L1, L2, L3, L4, L5, L6, L7, Lab, Ld };
const char* family_name(Family f);
Family parse_family(const std::string& s);

struct FamilyTag {
  Family family = Family::L0;
  long s = 0, r = 0, t = 0;
  int eps = 0;
  Q a = 0, c = 0;
  std::vector<Q> avec, bvec;  // L(a,b)
  int d = 0;                  // rank of L^d(a)

  bool operator==(const FamilyTag& o) const;
};

std::string describe(const FamilyTag& t);

// Matrix A of the presentation (ideal part of the good basis e_0..e_d).
Mat family_matrix(const PContext& ctx, const FamilyTag& t);
LieLattice construct(const PContext& ctx, const FamilyTag& t);
bool residually_nilpotent(const PContext& ctx, const FamilyTag& t);

// Integral c values with one representative of each class that the rank-3
// classification distinguishes: val(c) in {0,1,2}, unit square / non-square,
// val(4c+1) in {0,1,2}, and c = 0.
std::vector<Q> c_samples(const PContext& ctx);
// Rank-3 tags L0..L5 with s, r, t in {0,1,2}, eps in {0,1}, c from c_samples.
std::vector<FamilyTag> rank3_grid(const PContext& ctx);

// Rational normal form of a rank-3 solvable lattice. In the basis `basis`
// (columns, ambient coordinates, unimodular) the matrix of L is
//   Zero:       0
//   Scalar:     p^s I
//   Unipotent:  p^s (I + p^r [[0,1],[c,0]]),  r >= 1
//   Companion:  p^s [[a,1],[c,0]]
struct NormalForm {
  enum class Kind { Zero, Scalar, Unipotent, Companion };
  Kind kind = Kind::Zero;
  long s = 0, r = 0;
  Q a = 0, c = 0;
  Mat basis;
  Mat matrix(const PContext& ctx) const;
};

NormalForm normal_form(const LieLattice& L);

struct Recognition {
  FamilyTag tag;
  NormalForm nf;
  Mat iso;             // columns: images in L of the standard basis of construct(tag)
  bool iso_exact = true;
  int precision = 0;   // when not exact, the iso holds modulo p^precision
};

Recognition recognize(const LieLattice& L);

// P sends the basis of src to elements of dst; checks that P is unimodular and
// preserves brackets exactly (prec <= 0) or modulo p^prec.
bool verify_iso(const LieLattice& src, const LieLattice& dst, const Mat& P, int prec = 0);

}  // namespace zpl
