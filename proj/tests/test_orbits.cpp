#include <gtest/gtest.h>

#include <chrono>
#include <map>
#include <numeric>

#include "orthlat/orbits.hpp"

using namespace orthlat;

namespace {

RatVector rats(std::initializer_list<long> xs) {
  RatVector v;
  for (long x : xs) v.push_back(Rat(x));
  return v;
}

// Paper's q_{K1} on C2 + C4.
FiniteQuadraticForm paper_k1() {
  return FiniteQuadraticForm(IntVector{2, 4}, RatMatrix{{Rat(-3, 2), Rat(-1, 2)}, {Rat(-1, 2), Rat(-1, 4)}});
}

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

}  // namespace

TEST(Definite, PaperExample) {
  Lattice l = build_lattice("U + A3");
  RatVector v1 = rats({4, 4, 1, 2, -1}), v2 = rats({36, 144, 5, -30, 83});
  GroupSpec spec = make_group_spec(l, "~O+");
  auto start = std::chrono::steady_clock::now();
  OrbitVerdict r = equiv_definite_complement(l, spec, v1, v2);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  ASSERT_TRUE(r.equivalent());
  ASSERT_TRUE(r.witness);
  const RatMatrix& theta = *r.witness;
  EXPECT_TRUE(is_integral(theta));
  EXPECT_EQ(theta * v1, v2);
  EXPECT_EQ(spinor_norm(l, theta), 1);
  EXPECT_TRUE(disc_action(l, theta).is_identity());
  EXPECT_LT(secs, 60.0);

  EXPECT_TRUE(equiv_definite_complement(l, spec, v1, v1).equivalent());
  EXPECT_TRUE(equiv_definite_complement(l, spec, v2, v1).equivalent());
  OrbitVerdict bad = equiv_definite_complement(l, spec, v1, rats({4, 4, 1, 2, 0}));
  EXPECT_EQ(bad.verdict, Verdict::not_equivalent);
  // Same norm, different scale factor: (0,0,2) is twice a primitive vector.
  Lattice u = build_lattice("U + <-2>");
  EXPECT_EQ(equiv_definite_complement(u, make_group_spec(u, "O"), rats({0, 0, 2}), rats({1, 1, 0})).verdict,
            Verdict::not_equivalent);
  EXPECT_THROW(equiv_definite_complement(l, spec, rats({1, -1, 0, 0, 0}), rats({1, -1, 0, 0, 0})), MathError);
}

TEST(Indefinite, PaperExample) {
  Lattice l = build_lattice("U + A3");
  RatVector v1 = rats({1, -1, 0, 0, 0}), v2 = rats({1, 0, 1, 0, 0});
  GlueData g1 = glue_data(l, primitive_part(v1)), g2 = glue_data(l, primitive_part(v2));
  EXPECT_EQ(g1.d_k.orders, (IntVector{2, 4}));
  EXPECT_EQ(g2.d_k.orders, (IntVector{2, 4}));
  for (const GlueData* g : {&g1, &g2}) {
    EXPECT_EQ(g->h.size(), 2u);
    // |H|^2 = |D(<w>) + D(K)| / |D(L)|.
    Int total = 1;
    for (const auto& o : g->orders) total *= o;
    EXPECT_EQ(Int(g->h.size() * g->h.size()) * abs(l.det()), total);
    auto hk = g->h_k();
    ASSERT_EQ(hk.size(), 2u);
    // Some isomorphism to the printed form carries p_K(H) to <(1,0)>.
    bool found = false;
    for (const auto& f : iso_fqf(g->q_k, paper_k1())) {
      std::set<IntVector> img;
      for (const auto& x : hk) img.insert(f.apply(x));
      if (img == std::set<IntVector>{{0, 0}, {1, 0}}) found = true;
    }
    EXPECT_TRUE(found);
  }

  // The printed lifts x1, x2 generate D(K1) with the printed form.
  RatVector x1{Rat(3, 2), Rat(3, 2), 1, -1, 2}, x2{Rat(1, 2), Rat(1, 2), Rat(1, 4), Rat(-1, 2), Rat(3, 4)};
  EXPECT_EQ(mod2(l.norm(x1)), mod2(Rat(-3, 2)));
  EXPECT_EQ(mod2(l.norm(x2)), mod2(Rat(-1, 4)));
  EXPECT_EQ(mod1(l.inner(x1, x2)), mod1(Rat(-1, 2)));
  IntVector c1 = g1.glue_coordinates(x1), c2 = g1.glue_coordinates(x2);
  std::set<IntVector> gen;
  for (long a = 0; a < 2; ++a)
    for (long b = 0; b < 4; ++b) {
      IntVector s(c1.size());
      for (std::size_t i = 0; i < s.size(); ++i) s[i] = (a * c1[i] + b * c2[i]) % g1.orders[i];
      gen.insert(IntVector(s.begin() + 1, s.end()));
    }
  EXPECT_EQ(gen.size(), 8u);

  auto start = std::chrono::steady_clock::now();
  OrbitVerdict r = equiv_indefinite(l, make_group_spec(l, "~O"), v1, v2);
  EXPECT_TRUE(r.equivalent()) << r.reason;
  ASSERT_TRUE(r.induced);
  EXPECT_TRUE(r.induced->is_identity());
  OrbitVerdict up = upgrade_to_so_plus(l, v1, r);
  EXPECT_TRUE(up.equivalent());
  EXPECT_TRUE(orbit_equivalent(l, make_group_spec(l, "~SO+"), v1, v2).equivalent());
  EXPECT_LT(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(), 10.0);

  EXPECT_EQ(equiv_indefinite(l, make_group_spec(l, "~O"), v1, rats({2, -2, 0, 0, 0})).verdict, Verdict::not_equivalent);
  EXPECT_EQ(upgrade_to_so_plus(l, v1, OrbitVerdict{Verdict::not_equivalent, {}, {}, {}, ""}).verdict,
            Verdict::not_equivalent);
}

TEST(Indefinite, DiscGroupMismatch) {
  // Norm -4 vectors of U + A3 whose complements have different discriminant groups.
  Lattice l = build_lattice("U + A3");
  std::map<IntVector, IntVector> by_orders;
  for (long a = -2; a <= 2; ++a)
    for (long b = -2; b <= 2; ++b)
      for (long c = -1; c <= 1; ++c)
        for (long d = -1; d <= 1; ++d)
          for (long e = -1; e <= 1; ++e) {
            IntVector v{a, b, c, d, e};
            if (l.norm(v) != -4 || !is_primitive(v)) continue;
            by_orders.emplace(glue_data(l, v).d_k.orders, v);
          }
  ASSERT_GE(by_orders.size(), 2u);
  for (const auto& [o1, x] : by_orders)
    for (const auto& [o2, y] : by_orders) {
      if (o1 == o2) continue;
      OrbitVerdict r = equiv_indefinite(l, make_group_spec(l, "O"), to_rat(x), to_rat(y));
      EXPECT_EQ(r.verdict, Verdict::not_equivalent) << to_string(x) << " vs " << to_string(y);
    }
}

TEST(Indefinite, OrbitOracleUA2) {
  // Union-find over vectors of norm -2, -4, -6 in a box, joined by O(L) generators.
  Lattice l = build_lattice("U + A2");
  std::vector<IntMatrix> gens = lorentzian_generators(l);
  gens.push_back(scaled(IntMatrix::identity(4), Int(-1)));
  const long big = 6, small = 3;
  std::map<IntVector, std::size_t> index;
  std::vector<IntVector> vecs;
  for (long a = -big; a <= big; ++a)
    for (long b = -big; b <= big; ++b)
      for (long c = -big; c <= big; ++c)
        for (long d = -big; d <= big; ++d) {
          IntVector v{a, b, c, d};
          Int n = l.norm(v);
          if ((n == -2 || n == -4 || n == -6) && is_primitive(v)) {
            index[v] = vecs.size();
            vecs.push_back(v);
          }
        }
  UnionFind uf(vecs.size());
  for (std::size_t i = 0; i < vecs.size(); ++i)
    for (const auto& g : gens) {
      auto it = index.find(g * vecs[i]);
      if (it != index.end()) uf.unite(i, it->second);
    }
  std::vector<IntVector> inner;
  for (const auto& v : vecs)
    if (std::all_of(v.begin(), v.end(), [&](const Int& x) { return abs(x) <= small; })) inner.push_back(v);
  // One representative per union-find class within the inner box, per norm.
  std::map<std::size_t, IntVector> reps;
  for (const auto& v : inner) reps.emplace(uf.find(index[v]), v);
  GroupSpec spec = make_group_spec(l, "O");
  int decided = 0;
  for (const auto& v : inner) {
    for (const auto& [cls, r] : reps) {
      if (l.norm(r) != l.norm(v)) continue;
      OrbitVerdict verdict = orbit_equivalent(l, spec, to_rat(r), to_rat(v));
      if (verdict.verdict == Verdict::inconclusive) continue;
      ++decided;
      bool same = uf.find(index[v]) == cls;
      // Joined by generators implies equivalent; a positive verdict must be
      // matched by the oracle within the enlarged box.
      EXPECT_EQ(verdict.equivalent(), same) << to_string(v) << " vs " << to_string(r);
    }
  }
  EXPECT_GT(decided, 100);
}
