#include "util.hpp"

using namespace zt;

TEST_SUITE("families") {
  TEST_CASE("construct examples") {
    PContext p5(5), p3(3);
    LieLattice L1 = construct(p5, tag(Family::L1, 1));
    CHECK(L1.bracket_basis(0, 1) == vec({0, 5, 0}));
    CHECK(L1.bracket_basis(0, 2) == vec({0, 0, 5}));
    LieLattice L4 = construct(p5, ld(4, 5));
    CHECK(L4.rank() == 4);
    for (int i = 1; i < 4; ++i) CHECK(L4.bracket_basis(0, i) == vscale(unit_vec(4, i), 5));
    FamilyTag t;
    t.family = Family::Lab;
    t.avec = {Q(0), Q(0), Q(9)};
    t.bvec = {Q(1), Q(1)};
    LieLattice Lab = construct(p3, t);
    CHECK(Lab.rank() == 4);
    CHECK(Lab.bracket_basis(0, 1) == vec({0, 0, 0, 9}));
    CHECK(Lab.bracket_basis(0, 2) == vec({0, 1, 0, 0}));
    CHECK(Lab.bracket_basis(0, 3) == vec({0, 0, 1, 0}));
    CHECK_THROWS_AS(construct(PContext(2), tag(Family::L4)), Error);
    CHECK_THROWS_AS(construct(p3, tag(Family::L5, 0, 0, 0, 0, Q(1, 3))), Error);
  }

  TEST_CASE("recognize returns the constructing tag on the grid") {
    for (long p : {3L, 5L}) {
      PContext ctx(p);
      for (const FamilyTag& t : rank3_grid(ctx)) {
        Recognition r = recognize(construct(ctx, t));
        CHECK_MESSAGE(r.tag == t, describe(t) << " -> " << describe(r.tag));
      }
    }
  }

  TEST_CASE("recognize is invariant under basis changes") {
    std::mt19937_64 rng(99);
    PContext p3(3);
    std::vector<FamilyTag> grid = rank3_grid(p3);
    for (int it = 0; it < 60; ++it) {
      const FamilyTag& t = grid[rng() % grid.size()];
      LieLattice L = in_basis(construct(p3, t), random_gl(p3, 3, rng));
      Recognition r = recognize(L);
      CHECK_MESSAGE(r.tag == t, describe(t) << " -> " << describe(r.tag));
      LieLattice C = construct(p3, r.tag);
      CHECK(verify_iso(C, L, r.iso, r.iso_exact ? 0 : r.precision));
    }
  }

  TEST_CASE("L7 with a = 0 and c = 1 is L4(0,0,0)") {
    PContext p3(3);
    FamilyTag t;
    t.family = Family::L7;
    t.a = 0;
    t.c = 1;
    LieLattice L = construct(p3, t);
    Recognition r = recognize(L);
    CHECK(r.tag == tag(Family::L4, 0, 0, 0, 0));
    CHECK(verify_iso(construct(p3, r.tag), L, r.iso));
    CHECK(recognize(construct(p3, tag(Family::L0))).tag == tag(Family::L0));
  }

  TEST_CASE("residual nilpotency table") {
    PContext p3(3);
    CHECK_FALSE(residually_nilpotent(p3, tag(Family::L1, 0)));
    CHECK(residually_nilpotent(p3, tag(Family::L3, 0)));
    CHECK(residually_nilpotent(p3, tag(Family::L5, 0, 1, 0, 0, 3)));
    CHECK_FALSE(residually_nilpotent(p3, tag(Family::L5, 0, 1, 0, 0, 1)));
    CHECK(residually_nilpotent(p3, tag(Family::L4, 0, 0, 1, 0)));
    CHECK_THROWS_AS(residually_nilpotent(p3, ld(3, 1)), Error);
  }

  TEST_CASE("residual nilpotency matches the lower central series mod p") {
    // residually nilpotent iff ad(x_0) acts nilpotently on J mod p, i.e. A^2 = 0 mod p
    for (long p : {3L, 5L}) {
      PContext ctx(p);
      for (const FamilyTag& t : rank3_grid(ctx)) {
        Mat A = family_matrix(ctx, t);
        Mat A2 = A * A;
        bool nil = true;
        for (int i = 0; i < 2; ++i)
          for (int j = 0; j < 2; ++j) nil &= val(ctx, A2(i, j)) >= 1;
        CHECK_MESSAGE(residually_nilpotent(ctx, t) == nil, describe(t));
      }
    }
  }

  TEST_CASE("sampled c values cover each class") {
    for (long p : {3L, 5L}) {
      PContext ctx(p);
      std::vector<Q> cs = c_samples(ctx);
      std::vector<bool> v(3), w(3);
      bool sq = false, nsq = false;
      for (const Q& c : cs) {
        if (c == 0) continue;
        if (val(ctx, c) <= 2) v[val(ctx, c)] = true;
        long u = val(ctx, Q(4 * c + 1));
        if (u <= 2) w[u] = true;
        if (val(ctx, c) == 0) (is_square_unit(ctx, c) ? sq : nsq) = true;
      }
      CHECK(v == std::vector<bool>{true, true, true});
      CHECK(w == std::vector<bool>{true, true, true});
      CHECK(sq);
      CHECK(nsq);
    }
  }
}
