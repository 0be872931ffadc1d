#include "util.hpp"

#include <set>

using namespace zt;

namespace {

Mat random_int(std::mt19937_64& rng, const PContext& ctx, int r, int c) {
  std::uniform_int_distribution<long> x(-6, 6), v(0, 2);
  Mat m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = Q(x(rng)) * ctx.qpow(v(rng));
  return m;
}

std::string key(const Submodule& M) { return to_json(M).dump(); }

}  // namespace

TEST_SUITE("zmodlin") {
  TEST_CASE("hnf examples") {
    PContext p3(3);
    Submodule a = hnf(p3, rows({{3, 0}, {0, 1}}));
    CHECK(a.rank() == 2);
    CHECK(a.pivot_vals() == std::vector<long>{1, 0});
    Submodule b = hnf(p3, rows({{1, 1}, {1, 1}}));
    CHECK(b.rank() == 1);
    CHECK(b == span(p3, {vec({1, 1})}, 2));
    CHECK(hnf(p3, rows({{2, 0}, {0, 2}})) == Submodule::full(2));
    CHECK_THROWS_AS(hnf(p3, Mat::from_rows({{Q(1, 3)}})), Error);
  }

  TEST_CASE("hnf is canonical under column operations") {
    std::mt19937_64 rng(3);
    PContext ctx(3);
    for (int it = 0; it < 60; ++it) {
      Mat g = random_int(rng, ctx, 3, 3);
      Mat h = g * random_gl(ctx, 3, rng);
      CHECK(hnf(ctx, g) == hnf(ctx, h));
    }
  }

  TEST_CASE("index examples") {
    PContext p3(3), p5(5);
    CHECK(index(p3, hnf(p3, Mat::diag(vec({3, 1, 1})))) == 3);
    CHECK(index(p5, hnf(p5, Mat::diag(vec({5, 5, 1})))) == 25);
    CHECK(index_log(p3, hnf(p3, rows({{1, 0}, {0, 1}, {0, 0}}))) == kInf);
  }

  TEST_CASE("isolator examples and laws") {
    PContext p3(3);
    CHECK(isolator(p3, span(p3, {vec({3, 9})}, 2)) == span(p3, {vec({1, 3})}, 2));
    CHECK(isolator(p3, Submodule::full(3)) == Submodule::full(3));
    CHECK(isolator(p3, hnf(p3, Mat::diag(vec({3, 1})))) == Submodule::full(2));
    std::mt19937_64 rng(9);
    for (int it = 0; it < 60; ++it) {
      Submodule M = hnf(p3, random_int(rng, p3, 3, 1 + it % 3));
      Submodule I = isolator(p3, M);
      CHECK(isolator(p3, I) == I);
      CHECK(I.rank() == M.rank());
      CHECK(contains(p3, I, M));
      if (index_log(p3, M) != kInf) CHECK(index_log(p3, I) <= index_log(p3, M));
    }
  }

  TEST_CASE("member intersect preimage examples") {
    PContext p3(3);
    CHECK_FALSE(member(p3, vec({1, 0}), hnf(p3, Mat::diag(vec({3, 1})))));
    CHECK(member(p3, vec({3, 7}), hnf(p3, Mat::diag(vec({3, 1})))));
    Submodule z = intersect(p3, span(p3, {vec({1, 0})}, 2), span(p3, {vec({0, 1})}, 2));
    CHECK(z.rank() == 0);
    Mat T = Mat::from_rows({{Q(1, 3)}});
    Submodule pre = preimage(p3, T, Submodule::full(1), Submodule::full(1));
    CHECK(pre == hnf(p3, Mat::from_rows({{Q(3)}})));
    CHECK_THROWS_AS(intersect(p3, Submodule::full(2), Submodule::full(3)), Error);
  }

  TEST_CASE("intersection, sum and preimage laws") {
    std::mt19937_64 rng(21);
    PContext ctx(3);
    for (int it = 0; it < 60; ++it) {
      Submodule a = hnf(ctx, random_int(rng, ctx, 3, 3)), b = hnf(ctx, random_int(rng, ctx, 3, 3));
      if (index_log(ctx, a) == kInf || index_log(ctx, b) == kInf) continue;
      Submodule i = intersect(ctx, a, b), s = msum(ctx, a, b);
      CHECK(index_log(ctx, i) >= std::max(index_log(ctx, a), index_log(ctx, b)));
      CHECK(contains(ctx, a, i));
      CHECK(contains(ctx, b, i));
      CHECK(contains(ctx, s, a));
      // index(a) index(b) = index(a + b) index(a n b)
      CHECK(index_log(ctx, a) + index_log(ctx, b) == index_log(ctx, s) + index_log(ctx, i));
      Mat T = random_int(rng, ctx, 3, 3);
      if (rng() % 2) T = T.scaled(Q(1, 3));
      Submodule D = hnf(ctx, random_int(rng, ctx, 3, 3));
      Submodule pre = preimage(ctx, T, a, D);
      CHECK(contains(ctx, D, pre));
      for (int j = 0; j < pre.rank(); ++j) CHECK(member(ctx, T * pre.gens().col(j), a));
    }
  }

  TEST_CASE("coordinates in the Hermite basis") {
    PContext p5(5);
    Submodule M = hnf(p5, rows({{5, 1}, {0, 5}}));
    Vec x = vadd(vscale(M.gens().col(0), 3), vscale(M.gens().col(1), -2));
    Vec t = coords(p5, x, M);
    CHECK(t == vec({3, -2}));
    CHECK_THROWS_AS(coords(p5, vec({1, 0}), M), Error);
  }

  TEST_CASE("index-p submodules of rank 3 by brute force") {
    // every index-p submodule is pL + <v1, v2> for residue vectors v1, v2
    for (long p : {3L, 5L}) {
      PContext ctx(p);
      std::set<std::string> seen;
      std::vector<Vec> res;
      for (long a = 0; a < p; ++a)
        for (long b = 0; b < p; ++b)
          for (long c = 0; c < p; ++c) res.push_back(vec({a, b, c}));
      for (const Vec& v : res)
        for (const Vec& w : res) {
          Mat g = hcat(Mat::identity(3).scaled(Q(p)), Mat::from_cols({v, w}));
          Submodule M = hnf(ctx, g);
          if (index_log(ctx, M) == 1) seen.insert(key(M));
        }
      CHECK(seen.size() == static_cast<size_t>(p * p + p + 1));
    }
  }

  TEST_CASE("kernels and elementary divisors") {
    PContext p3(3);
    Mat A = rows({{1, 2, 3}, {3, 6, 9}});
    Mat K = kernel_int(p3, A);
    CHECK(K.cols() == 2);
    CHECK((A * K).is_zero());
    CHECK(isolator(p3, hnf(p3, K)) == hnf(p3, K));
    CHECK(elementary_divisors(p3, rows({{3, 0}, {0, 9}})) == std::vector<long>{1, 2});
  }
}
