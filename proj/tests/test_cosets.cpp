#include <gtest/gtest.h>

#include <set>

#include "orthlat/cosets.hpp"

using namespace orthlat;

namespace {

std::vector<IntMatrix> oplus_generators(const Lattice& lp) {
  const std::size_t n = lp.rank();
  IntMatrix g1(n - 2, n - 2);
  for (std::size_t i = 0; i + 2 < n; ++i)
    for (std::size_t j = 0; j + 2 < n; ++j) g1(i, j) = lp.gram()(i + 2, j + 2);
  return generators_Oplus_split(lp, lorentzian_generators(Lattice(g1)));
}

IntMatrix paper_g2() {
  IntMatrix g = IntMatrix::identity(6);
  g(4, 4) = 0;
  g(5, 5) = 0;
  g(4, 5) = -1;
  g(5, 4) = -1;
  return g;
}

}  // namespace

TEST(Gamma, Counts) {
  EXPECT_EQ(gamma_n_transversal(1).index(), 1u);
  // |SL(2,Z/N)| by direct count.
  for (long n : {2, 3, 4, 5, 6}) {
    long count = 0;
    for (long a = 0; a < n; ++a)
      for (long b = 0; b < n; ++b)
        for (long c = 0; c < n; ++c)
          for (long d = 0; d < n; ++d)
            if (((a * d - b * c) % n + n) % n == 1 % n) ++count;
    Transversal t = gamma_n_transversal(n);
    EXPECT_EQ(static_cast<long>(t.index()), count) << n;
    std::set<std::vector<long>> seen;
    for (const auto& z : t.representatives) {
      EXPECT_EQ(determinant(z), 1);
      std::vector<long> r;
      for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) r.push_back(Int(((z(i, j) % n) + n) % n).get_si());
      seen.insert(r);
    }
    EXPECT_EQ(seen.size(), t.index());
  }
  EXPECT_EQ(gamma_n_transversal(2).index(), 6u);
  EXPECT_EQ(gamma_n_transversal(3).index(), 24u);
}

TEST(Cosets, StableInOplus2UA2) {
  Lattice lp = build_lattice("2U + A2");
  auto gens = oplus_generators(lp);
  SubgroupData g1(lp, IntMatrix::identity(6), make_group_spec(lp, "~O+"));
  Transversal t = coset_transversal(gens, g1.member_fn(), kDefaultCosetBudget, *g1.left_key());
  ASSERT_TRUE(t.complete);
  ASSERT_EQ(t.index(), 2u);
  EXPECT_EQ(t.representatives[0], IntMatrix::identity(6));
  // The second coset is the paper's g2 G1.
  EXPECT_TRUE(g1.member(inverse_unimodular(paper_g2()) * t.representatives[1]));
  EXPECT_FALSE(g1.member(t.representatives[1]));

  // Pairwise comparison gives the same transversal.
  Transversal p = coset_transversal(gens, g1.member_fn());
  EXPECT_EQ(p.representatives, t.representatives);
  // Determinism.
  EXPECT_EQ(coset_transversal(gens, g1.member_fn(), 100, *g1.left_key()).representatives, t.representatives);

  // Completeness: every s r lies in some r' G1.
  for (const auto& r : t.representatives)
    for (const auto& s : gens) {
      int hits = 0;
      for (const auto& y : t.representatives)
        if (g1.member(inverse_unimodular(y) * s * r)) ++hits;
      EXPECT_EQ(hits, 1);
    }

  SubgroupData whole(lp, IntMatrix::identity(6), make_group_spec(lp, "O+"));
  EXPECT_EQ(coset_transversal(gens, whole.member_fn(), 10, *whole.left_key()).index(), 1u);
  Transversal tiny = coset_transversal(gens, g1.member_fn(), 1, *g1.left_key());
  EXPECT_FALSE(tiny.complete);
}

TEST(Cosets, LineStabilizer) {
  Lattice lp = build_lattice("2U + A2");
  SubgroupData g1(lp, IntMatrix::identity(6), make_group_spec(lp, "~O+"));
  auto l1p = lorentzian_generators(build_lattice("U + A2"));
  auto stab = stab_line_generators(lp, IntMatrix::identity(6), l1p);
  IntMatrix e = IntMatrix::from_columns({IntVector{1, 0, 0, 0, 0, 0}}, 6);
  Transversal t = stab_coset_transversal(e, stab, g1.member_fn(), kDefaultCosetBudget, *g1.left_key());
  ASSERT_TRUE(t.complete);
  EXPECT_EQ(t.index(), 2u);
  EXPECT_EQ(stab_coset_transversal(e, stab, g1.member_fn()).index(), 2u);
  auto always = [](const IntMatrix&) { return true; };
  EXPECT_EQ(stab_coset_transversal(e, stab, always).index(), 1u);
  IntMatrix bad = IntMatrix::identity(6);
  bad(0, 0) = 0;
  bad(1, 1) = 0;
  bad(0, 1) = 1;
  bad(1, 0) = 1;
  EXPECT_THROW(stab_coset_transversal(e, {bad}, always), MathError);
}

TEST(Cosets, KeyMatchesMembership) {
  // Sublattice 2U + <-6> + <-2> inside 2U + A2.
  Lattice l = build_lattice("2U + <-6> + <-2>");
  Overlattice o = maximal_overlattice(l);
  Lattice lp = o.lattice;
  SubgroupData g1(lp, o.embed, make_group_spec(l, "~O+"));
  auto gens = oplus_generators(lp);
  Transversal t = coset_transversal(gens, g1.member_fn(), 500, *g1.left_key());
  ASSERT_TRUE(t.complete);
  Transversal p = coset_transversal(gens, g1.member_fn(), 500);
  EXPECT_EQ(p.index(), t.index());
  for (std::size_t i = 0; i < t.index(); ++i)
    for (std::size_t j = 0; j < t.index(); ++j) {
      const IntMatrix& x = t.representatives[i];
      const IntMatrix& y = t.representatives[j];
      EXPECT_EQ(g1.member(inverse_unimodular(y) * x), i == j);
    }
}
