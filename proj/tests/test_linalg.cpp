#include <gtest/gtest.h>

#include <random>

#include "orthlat/linalg.hpp"

using namespace orthlat;

namespace {

IntMatrix random_matrix(std::mt19937& rng, std::size_t m, std::size_t n, int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  IntMatrix a(m, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = d(rng);
  return a;
}

// gcd of all k x k minors, by explicit subset enumeration.
Int minor_gcd(const IntMatrix& a, std::size_t k) {
  Int g = 0;
  std::vector<std::size_t> rs, cs;
  auto choose = [](std::size_t n, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur;
    auto rec = [&](auto&& self, std::size_t start) -> void {
      if (cur.size() == k) {
        out.push_back(cur);
        return;
      }
      for (std::size_t i = start; i < n; ++i) {
        cur.push_back(i);
        self(self, i + 1);
        cur.pop_back();
      }
    };
    rec(rec, 0);
    return out;
  };
  for (const auto& r : choose(a.rows(), k))
    for (const auto& c : choose(a.cols(), k)) {
      IntMatrix s(k, k);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) s(i, j) = a(r[i], c[j]);
      g = gcd(g, determinant(s));
    }
  return g;
}

void check_snf(const IntMatrix& a) {
  auto s = smith_normal_form(a);
  ASSERT_EQ(s.P * a * s.Q, s.D);
  ASSERT_EQ(abs(determinant(s.P)), 1);
  ASSERT_EQ(abs(determinant(s.Q)), 1);
  const std::size_t l = std::min(a.rows(), a.cols());
  for (std::size_t i = 0; i < s.D.rows(); ++i)
    for (std::size_t j = 0; j < s.D.cols(); ++j)
      if (i != j) ASSERT_EQ(s.D(i, j), 0);
  bool seen_zero = false;
  for (std::size_t i = 0; i < l; ++i) {
    ASSERT_GE(s.D(i, i), 0);
    if (s.D(i, i) == 0) seen_zero = true;
    else ASSERT_FALSE(seen_zero);
    if (i + 1 < l && s.D(i + 1, i + 1) != 0) ASSERT_EQ(s.D(i + 1, i + 1) % s.D(i, i), 0);
  }
}

// Sign pattern by leading principal minors (valid when all are nonzero).
std::optional<Inertia> minor_inertia(const IntMatrix& g) {
  Inertia in;
  Int prev = 1;
  for (std::size_t k = 1; k <= g.rows(); ++k) {
    Int d = determinant(g.submatrix(0, 0, k, k));
    if (d == 0) return std::nullopt;
    if (sgn(d) == sgn(prev)) ++in.positive;
    else ++in.negative;
    prev = d;
  }
  return in;
}

}  // namespace

TEST(Smith, SmallExamples) {
  EXPECT_EQ(smith_normal_form(IntMatrix::identity(3)).D, IntMatrix::identity(3));
  EXPECT_EQ(smith_normal_form(IntMatrix{{0, 1}, {1, 0}}).D, IntMatrix::identity(2));
  IntMatrix a2{{-2, -1}, {-1, -2}};
  EXPECT_EQ(smith_normal_form(a2).D, (IntMatrix{{1, 0}, {0, 3}}));
  check_snf(IntMatrix(3, 2));
}

TEST(Smith, RowVectorKernelBasis) {
  auto s = smith_normal_form(IntMatrix{{4, 4, -4, -4, 0}});
  EXPECT_EQ(s.D(0, 0), 4);
  IntMatrix expect{{0, 1, 0, 0, 0}, {0, 0, 1, 0, 0}, {0, 0, 0, 1, 0}, {-1, 1, 1, -1, 0}, {0, 0, 0, 0, 1}};
  EXPECT_EQ(s.Q, expect);

  s = smith_normal_form(IntMatrix{{144, 36, 20, -28, -136}});
  EXPECT_EQ(s.D(0, 0), 4);
  EXPECT_EQ(s.Q.column(0), (IntVector{0, 0, 0, -5, 1}));
  EXPECT_EQ(s.Q.column(1), (IntVector{1, 0, 0, 180, -36}));
  EXPECT_EQ(s.Q.column(4), (IntVector{0, 0, 0, 34, -7}));
}

TEST(Smith, RandomMatricesAndMinorOracle) {
  std::mt19937 rng(17);
  for (int t = 0; t < 500; ++t) {
    std::size_t m = 1 + rng() % 4, n = 1 + rng() % 4;
    IntMatrix a = random_matrix(rng, m, n, -9, 9);
    check_snf(a);
    auto s = smith_normal_form(a);
    Int prod = 1;
    for (std::size_t k = 1; k <= std::min(m, n); ++k) {
      prod *= s.D(k - 1, k - 1);
      ASSERT_EQ(prod, minor_gcd(a, k)) << to_string(a);
    }
  }
}

TEST(Hermite, CanonicalForSameRowLattice) {
  std::mt19937 rng(5);
  for (int t = 0; t < 100; ++t) {
    IntMatrix a = random_matrix(rng, 3, 4, -5, 5);
    IntMatrix u = IntMatrix::identity(3);
    u.add_row(0, 1, Int(int(rng() % 7) - 3));
    u.add_row(2, 0, Int(int(rng() % 7) - 3));
    u.swap_rows(1, 2);
    EXPECT_EQ(hermite_rows(a), hermite_rows(u * a));
  }
  EXPECT_EQ(hermite_rows(IntMatrix{{2, 0}, {0, 3}, {4, 3}}), (IntMatrix{{2, 0}, {0, 3}}));
}

TEST(Diagonalize, PreservesInertia) {
  EXPECT_EQ(congruent_diagonalize(to_rat(IntMatrix{{2, 0}, {0, -3}})).D, to_rat(IntMatrix{{2, 0}, {0, -3}}));
  Inertia u = inertia(IntMatrix{{0, 1}, {1, 0}});
  EXPECT_EQ(u.positive, 1u);
  EXPECT_EQ(u.negative, 1u);

  std::mt19937 rng(11);
  int checked = 0;
  for (int t = 0; t < 300; ++t) {
    std::size_t n = 1 + rng() % 5;
    IntMatrix a = random_matrix(rng, n, n, -4, 4);
    IntMatrix g = a + a.transpose();
    auto d = congruent_diagonalize(to_rat(g));
    RatMatrix check = d.P.transpose() * to_rat(g) * d.P;
    ASSERT_EQ(check, d.D);
    auto oracle = minor_inertia(g);
    if (!oracle) continue;
    ++checked;
    ASSERT_EQ(inertia(g), *oracle);
  }
  EXPECT_GT(checked, 100);
}

TEST(Basics, DeterminantInverseSolve) {
  IntMatrix a{{2, 1, 0}, {1, 3, 1}, {0, 1, 4}};
  EXPECT_EQ(determinant(a), 18);
  EXPECT_EQ(determinant(to_rat(a)), Rat(18));
  EXPECT_EQ(inverse(to_rat(a)) * to_rat(a), RatMatrix::identity(3));
  RatVector x;
  ASSERT_TRUE(solve(to_rat(a), RatVector{1, 2, 3}, x));
  EXPECT_EQ(to_rat(a) * x, (RatVector{1, 2, 3}));
  EXPECT_FALSE(solve(to_rat(IntMatrix{{1, 1}, {1, 1}}), RatVector{1, 2}, x));
  Bezout b = bezout(-28, -136);
  EXPECT_EQ(b.g, 4);
  EXPECT_EQ(b.u, -5);
  EXPECT_EQ(b.v, 1);
}
