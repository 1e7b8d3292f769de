#include <gtest/gtest.h>

#include "orthlat/discform.hpp"
#include "orthlat/lattice.hpp"

using namespace orthlat;

namespace {
IntVector ints(std::initializer_list<long> xs) {
  IntVector v;
  for (long x : xs) v.push_back(x);
  return v;
}
}  // namespace

TEST(Build, Expressions) {
  Lattice u = build_lattice("U");
  EXPECT_EQ(u.gram(), (IntMatrix{{0, 1}, {1, 0}}));
  EXPECT_EQ(u.positive(), 1u);
  EXPECT_EQ(u.negative(), 1u);

  Lattice a3 = build_lattice("A3");
  EXPECT_EQ(a3.gram(), (IntMatrix{{-2, -1, 0}, {-1, -2, -1}, {0, -1, -2}}));

  Lattice l = build_lattice("2U + A2");
  EXPECT_EQ(l.rank(), 6u);
  EXPECT_EQ(l.positive(), 2u);
  EXPECT_EQ(l.negative(), 4u);

  EXPECT_EQ(build_lattice("2*U(2) + <-6>").gram()(0, 1), 2);
  EXPECT_EQ(build_lattice("gram [[2,1],[1,-2]]").det(), -5);
  EXPECT_THROW(build_lattice("<3>"), ParseError);
  EXPECT_THROW(build_lattice("U + "), ParseError);
  EXPECT_THROW(build_lattice("gram [[0,0],[0,0]]"), ParseError);
  EXPECT_EQ(parse_vector("(1/2, -3, 0)"), (RatVector{Rat(1, 2), -3, 0}));
}

TEST(Disc, GroupsAndLifts) {
  EXPECT_TRUE(discriminant_group(build_lattice("U")).orders.empty());

  Lattice l = build_lattice("U + A3");
  DiscGroup d = discriminant_group(l);
  ASSERT_EQ(d.orders, ints({4}));
  RatVector w{0, 0, Rat(3, 4), Rat(-2, 4), Rat(1, 4)};
  IntVector c = d.coordinates(w);
  EXPECT_EQ(gcd(c[0], Int(4)), 1);  // generator of C4

  for (const auto& expr : {"U + A3", "2U + <-6> + <-2>", "A2 + <4>", "2U(2) + A2"}) {
    Lattice m = build_lattice(expr);
    DiscGroup dg = discriminant_group(m);
    EXPECT_EQ(dg.order(), abs(m.det()));
    for (std::size_t i = 0; i < dg.size(); ++i) {
      // d * lift is integral and no smaller multiple is.
      for (Int k = 1; k <= dg.orders[i]; ++k) {
        RatVector v = dg.lifts[i];
        for (auto& x : v) x *= Rat(k);
        EXPECT_EQ(is_integral(v), k == dg.orders[i]) << expr;
      }
    }
  }
  EXPECT_EQ(discriminant_group(build_lattice("2U + <-6> + <-2>")).orders, ints({2, 6}));
}

TEST(Divisor, Examples) {
  EXPECT_EQ(divisor_and_star(build_lattice("U"), ints({1, 0})).div, 1);
  EXPECT_EQ(divisor_and_star(build_lattice("2U + <-6> + <-2>"), ints({0, 0, 0, 0, 1, 0})).div, 6);
  auto ds = divisor_and_star(build_lattice("U + A3"), ints({0, 0, 3, -2, 1}));
  EXPECT_EQ(ds.div, 4);
  EXPECT_EQ(ds.star, (RatVector{0, 0, Rat(3, 4), Rat(-1, 2), Rat(1, 4)}));
}

TEST(Complement, PaperGrams) {
  Lattice l = build_lattice("U + A3");
  Complement k1 = orthogonal_complement(l, ints({4, 4, 1, 2, -1}));
  EXPECT_EQ(k1.gram, (IntMatrix{{-2, -1, 1, -1}, {-1, -2, 1, -1}, {1, 1, -2, 1}, {-1, -1, 1, -2}}));
  Complement k2 = orthogonal_complement(l, ints({36, 144, 5, -30, 83}));
  EXPECT_EQ(k2.gram, (IntMatrix{{-54432, -13607, -7740, -10260},
                                {-13607, -3402, -1935, -2565},
                                {-7740, -1935, -1102, -1459},
                                {-10260, -2565, -1459, -1934}}));

  Complement a = orthogonal_complement(l, ints({1, -1, 0, 0, 0}));
  EXPECT_EQ(a.basis, (IntMatrix{{1, 0, 0, 0}, {1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}));
  EXPECT_EQ(a.gram, (IntMatrix{{2, 0, 0, 0}, {0, -2, -1, 0}, {0, -1, -2, -1}, {0, 0, -1, -2}}));
  Complement b = orthogonal_complement(l, ints({1, 0, 1, 0, 0}));
  EXPECT_EQ(b.gram, (IntMatrix{{0, 1, 0, 0}, {1, -2, 3, -1}, {0, 3, -6, 2}, {0, -1, 2, -2}}));

  Complement iso = orthogonal_complement(build_lattice("U"), ints({1, 0}));
  EXPECT_TRUE(iso.degenerate);
  EXPECT_EQ(iso.basis, (IntMatrix{{1}, {0}}));
}

TEST(Complement, SaturatedAndOrthogonal) {
  Lattice l = build_lattice("2U + A2");
  std::vector<IntVector> ws{ints({1, 2, 3, 4, 5, 6}), ints({0, 0, 7, -3, 2, 1}), ints({5, -1, 0, 2, 0, 3})};
  for (const auto& w : ws) {
    Complement c = orthogonal_complement(l, w);
    for (std::size_t j = 0; j < c.basis.cols(); ++j) EXPECT_EQ(l.inner(c.basis.column(j), w), 0);
    for (const auto& d : smith_normal_form(c.basis).divisors()) EXPECT_EQ(d, 1);
  }
}

TEST(Subspace, CanonicalForm) {
  IntMatrix a = IntMatrix::from_columns({ints({2, 0, 2}), ints({0, 1, 1})}, 3);
  IntMatrix b = IntMatrix::from_columns({ints({1, 1, 2}), ints({-1, 0, -1})}, 3);
  EXPECT_EQ(canonical_subspace(a), canonical_subspace(b));
  EXPECT_EQ(saturation(IntMatrix::from_columns({ints({2, 4, 6})}, 3)).column(0).size(), 3u);
  EXPECT_EQ(canonical_subspace(IntMatrix::from_columns({ints({-2, -4, -6})}, 3)).column(0), ints({1, 2, 3}));
}

TEST(Overlattice, Maximal) {
  Lattice l = build_lattice("2U + <-6> + <-2>");
  Overlattice o = maximal_overlattice(l);
  EXPECT_EQ(o.index, 2);
  EXPECT_EQ(o.lattice.gram(), build_lattice("2U + A2").gram());
  EXPECT_EQ(o.embed.transpose() * o.lattice.gram() * o.embed, l.gram());
  EXPECT_TRUE(is_maximal(o.lattice));
  EXPECT_EQ(abs(o.lattice.det()) * o.index * o.index, abs(l.det()));

  Overlattice again = maximal_overlattice(o.lattice);
  EXPECT_EQ(again.embed, IntMatrix::identity(6));

  Lattice a2 = build_lattice("A2");
  EXPECT_EQ(maximal_overlattice(a2).embed, IntMatrix::identity(2));

  Overlattice big = maximal_overlattice(build_lattice("2U(2) + A2"));
  EXPECT_EQ(big.index, 4);
  EXPECT_EQ(big.lattice.gram(), build_lattice("2U + A2").gram());
}
