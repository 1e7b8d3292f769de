#include <gtest/gtest.h>

#include "orthlat/discform.hpp"

using namespace orthlat;

namespace {

FiniteQuadraticForm form(std::initializer_list<long> orders, const RatMatrix& q) {
  IntVector o;
  for (long d : orders) o.push_back(d);
  return FiniteQuadraticForm(o, q);
}

// Paper's q_{K1}(a,b) = -3a^2/2 - b^2/4 - ab and q_{K2}(a,b) = -3a^2/2 - 3b^2/4 on C2 + C4.
FiniteQuadraticForm paper_k1() { return form({2, 4}, RatMatrix{{Rat(-3, 2), Rat(-1, 2)}, {Rat(-1, 2), Rat(-1, 4)}}); }
FiniteQuadraticForm paper_k2() { return form({2, 4}, RatMatrix{{Rat(-3, 2), 0}, {0, Rat(-3, 4)}}); }

}  // namespace

TEST(Fqf, MaximalExampleForm) {
  FiniteQuadraticForm q = disc_form_of(build_lattice("2U + <-6> + <-2>"));
  FiniteQuadraticForm paper = form({2, 2, 3}, RatMatrix{{Rat(-1, 2), 0, 0}, {0, Rat(-3, 2), 0}, {0, 0, Rat(-2, 3)}});
  EXPECT_FALSE(iso_fqf(q, paper).empty());
  EXPECT_EQ(isotropic_elements(q).size(), 2u);
  // Direct evaluation of the printed formula at (1,1,0).
  EXPECT_EQ(paper.q({1, 1, 0}), 0);
  EXPECT_EQ(isotropic_elements(paper), (std::vector<IntVector>{{0, 0, 0}, {1, 1, 0}}));
}

TEST(Fqf, TrivialAndA3) {
  FiniteQuadraticForm u = disc_form_of(build_lattice("U"));
  EXPECT_EQ(u.order(), 1);
  EXPECT_EQ(isotropic_elements(u).size(), 1u);
  FiniteQuadraticForm a3 = disc_form_of(build_lattice("A3"));
  EXPECT_EQ(a3.orders, IntVector{4});
  EXPECT_EQ(isotropic_elements(a3).size(), 1u);
  for (long c = 0; c < 4; ++c) EXPECT_EQ(a3.q({c}), mod2(Rat(-3 * c * c, 4)));
}

TEST(Fqf, IsoContainsPaperMap) {
  bool found = false;
  for (const auto& f : iso_fqf(paper_k1(), paper_k2()))
    if (f.images == IntMatrix{{1, 1}, {0, 3}}) found = true;
  EXPECT_TRUE(found);

  // The computed complement forms of the indefinite example agree with the printed ones.
  Lattice l = build_lattice("U + A3");
  Complement k1 = orthogonal_complement(l, {1, -1, 0, 0, 0});
  Complement k2 = orthogonal_complement(l, {1, 0, 1, 0, 0});
  EXPECT_FALSE(iso_fqf(disc_form_of(Lattice(k1.gram)), paper_k1()).empty());
  EXPECT_FALSE(iso_fqf(disc_form_of(Lattice(k2.gram)), paper_k2()).empty());

  EXPECT_TRUE(iso_fqf(disc_form_of(build_lattice("<-2>")), disc_form_of(build_lattice("A2"))).empty());
  auto self = iso_fqf(paper_k1(), paper_k1());
  EXPECT_NE(std::find(self.begin(), self.end(), identity_map({2, 4})), self.end());
}

TEST(Fqf, InversesAndBilinearity) {
  for (const auto& expr : {"U + A3", "2U + <-6> + <-2>", "2U(2) + A2", "A2 + A2 + <-4>"}) {
    FiniteQuadraticForm q = disc_form_of(build_lattice(expr));
    auto elems = q.elements();
    ASSERT_LE(elems.size(), 200u);
    for (const auto& x : elems)
      for (const auto& y : elems) {
        Rat lhs = mod1((q.q(q.add(x, y)) - q.q(x) - q.q(y)) / 2);
        ASSERT_EQ(lhs, q.b(x, y)) << expr;
        for (const auto& z : {elems[1 % elems.size()], elems.back()})
          ASSERT_EQ(q.b(q.add(x, z), y), mod1(q.b(x, y) + q.b(z, y)));
      }
    auto iso = isotropic_elements(q);
    for (const auto& x : iso) EXPECT_NE(std::find(iso.begin(), iso.end(), q.scale(x, -1)), iso.end());
    auto maps = iso_fqf(q, q);
    for (std::size_t i = 0; i < std::min<std::size_t>(maps.size(), 20); ++i) {
      FqfMap inv = inverse(maps[i]);
      EXPECT_TRUE(is_form_preserving(inv, q, q));
      EXPECT_TRUE(compose(inv, maps[i]).is_identity());
    }
    EXPECT_EQ(closure(maps, q.orders).size(), maps.size()) << expr;
  }
}

TEST(Fqf, UniqueGenus) {
  EXPECT_EQ(unique_genus_check(1, 4, disc_form_of(build_lattice("U + A3"))), GenusVerdict::applies);
  EXPECT_EQ(unique_genus_check(2, 4, disc_form_of(build_lattice("2U + A2"))), GenusVerdict::applies);
  EXPECT_EQ(unique_genus_check(0, 1, disc_form_of(build_lattice("<-2>"))), GenusVerdict::inconclusive);
}
