#pragma once

#include "zpl/json_io.hpp"

#include <doctest.h>

#include <random>

namespace zt {

using namespace zpl;

inline FamilyTag tag(Family f, long s = 0, long r = 0, long t = 0, int eps = 0, const Q& c = 0) {
  FamilyTag x;
  x.family = f;
  x.s = s;
  x.r = r;
  x.t = t;
  x.eps = eps;
  x.c = c;
  return x;
}

inline FamilyTag ld(int d, const Q& a) {
  FamilyTag x;
  x.family = Family::Ld;
  x.d = d;
  x.a = a;
  return x;
}

inline Vec vec(std::initializer_list<long> xs) {
  Vec v;
  for (long x : xs) v.push_back(Q(x));
  return v;
}

inline Mat rows(std::initializer_list<std::initializer_list<long>> rs) {
  std::vector<std::vector<Q>> out;
  for (auto& r : rs) {
    std::vector<Q> row;
    for (long x : r) row.push_back(Q(x));
    out.push_back(row);
  }
  return Mat::from_rows(out);
}

// Random matrix in GL_n(Z_p): unit diagonal upper and lower factors with entries of valuation <= 2.
inline Mat random_gl(const PContext& ctx, int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> small(-4, 4), vdist(0, 2), unit(1, ctx.p() - 1);
  Mat Lo = Mat::identity(n), Up = Mat::identity(n);
  for (int i = 0; i < n; ++i) {
    Lo(i, i) = Q(unit(rng));
    for (int j = 0; j < i; ++j) Lo(i, j) = Q(small(rng)) * ctx.qpow(vdist(rng));
    for (int j = i + 1; j < n; ++j) Up(i, j) = Q(small(rng)) * ctx.qpow(vdist(rng));
  }
  return Lo * Up;
}

inline Submodule sub(const PContext& ctx, const Mat& gens) { return hnf(ctx, gens); }

}  // namespace zt
