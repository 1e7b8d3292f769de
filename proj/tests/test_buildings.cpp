#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "orthlat/buildings.hpp"
#include "orthlat/discform.hpp"
#include "orthlat/isometry.hpp"

using namespace orthlat;

namespace {

IntVector unit(std::size_t n, std::size_t i) {
  IntVector v(n);
  v[i] = 1;
  return v;
}

// Primitive isotropic vectors of 2U + A2 from a box search.
std::vector<IntVector> isotropic_box(const Lattice& lp, long r) {
  std::vector<IntVector> out;
  IntVector v(6, Int(-r));
  while (true) {
    if (lp.norm(v) == 0 && is_primitive(v)) out.push_back(v);
    std::size_t i = 0;
    while (i < 6 && v[i] == r) v[i++] = -r;
    if (i == 6) break;
    ++v[i];
  }
  return out;
}

}  // namespace

TEST(Tau, RandomPairs) {
  Lattice lp = build_lattice("2U + A2");
  auto pool = isotropic_box(lp, 2);
  ASSERT_GT(pool.size(), 100u);
  std::mt19937 rng(20240601);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  for (int k = 0; k < 100; ++k) {
    const IntVector& x = pool[pick(rng)];
    const IntVector& y = pool[pick(rng)];
    IntMatrix t = tau(lp, x, y);
    EXPECT_EQ(t * x, y);
    EXPECT_TRUE(is_isometry(lp, t));
    EXPECT_EQ(spinor_norm(lp, t), 1);
  }
  IntVector e1 = unit(6, 0), f1 = unit(6, 1);
  EXPECT_EQ(tau(lp, e1, e1) * e1, e1);
  EXPECT_EQ(tau(lp, e1, f1) * e1, f1);
  EXPECT_THROW(tau(lp, IntVector{2, 0, 0, 0, 0, 0}, e1), MathError);
  EXPECT_THROW(tau(lp, IntVector{1, 1, 0, 0, 0, 0}, e1), MathError);
}

TEST(Buildings, Maximal) {
  BuildingContext ctx(build_lattice("2U + A2"));
  TitsBuilding b = building_maximal(ctx);
  EXPECT_EQ(b.lines.size(), 1u);
  EXPECT_EQ(b.planes.size(), 1u);
  EXPECT_EQ(b.edges.size(), 1u);
  EXPECT_TRUE(verify_building(b, ctx.maximal()));

  Lattice a3 = build_lattice("2U + A3");
  BuildingContext c3(a3);
  TitsBuilding b3 = building_maximal(c3);
  auto classes = enumerate_genus_definite(3, true, disc_form_of(c3.maximal()));
  EXPECT_EQ(b3.planes.size(), classes.size());
  EXPECT_EQ(b3.edges.size(), b3.planes.size());
  EXPECT_TRUE(verify_building(b3, c3.maximal()));
}

TEST(Buildings, Stable2UA2) {
  Lattice l = build_lattice("2U + A2");
  BuildingContext ctx(l);
  EXPECT_EQ(ctx.level(), 3);
  TitsBuilding b = building_descend(building_maximal(ctx), make_group_spec(l, "~O+"), ctx);
  EXPECT_TRUE(b.complete);
  EXPECT_EQ(b.coset_index, 2u);
  EXPECT_EQ(b.lines.size(), 1u);
  EXPECT_EQ(b.planes.size(), 1u);
  EXPECT_EQ(b.edges.size(), 1u);
  EXPECT_TRUE(verify_building(b, ctx.maximal()));
  EXPECT_EQ(isotropic_vector_orbits(make_group_spec(l, "~O+"), ctx).size(), 1u);

  std::string dot = to_dot(b);
  EXPECT_NE(dot.find("p0 [label=\"0\", style=filled, fillcolor=black"), std::string::npos);
  EXPECT_NE(dot.find("c0 [label=\"0\", style=filled, fillcolor=white"), std::string::npos);
  EXPECT_NE(dot.find("p0 -- c0;"), std::string::npos);
  EXPECT_EQ(dot, to_dot(building_descend(building_maximal(ctx), make_group_spec(l, "~O+"), ctx)));

  TitsBuilding back = parse_building(serialize(b));
  EXPECT_EQ(serialize(back), serialize(b));
  EXPECT_EQ(back.lines[0].basis, b.lines[0].basis);
  EXPECT_THROW(parse_building("orthlat-building 9\n"), ParseError);
  EXPECT_EQ(to_dot(TitsBuilding{}), "graph building {\n  node [shape=circle, width=0.3, fixedsize=true];\n}\n");

  // G1 = G2 leaves the building unchanged.
  TitsBuilding same = building_ascend(b, make_group_spec(l, "~O+"), make_group_spec(l, "~O+"), ctx);
  EXPECT_EQ(serialize(same).substr(serialize(same).find("lines")), serialize(b).substr(serialize(b).find("lines")));
}

TEST(Buildings, GeneralisedKummer) {
  Lattice l = build_lattice("2U + <-6> + <-2>");
  BuildingContext ctx(l);
  GroupSpec stable = make_group_spec(l, "~O+");
  TitsBuilding b = building_descend(building_maximal(ctx), stable, ctx);
  ASSERT_TRUE(b.complete);
  EXPECT_EQ(b.lines.size(), 2u);
  EXPECT_EQ(b.planes.size(), 2u);
  EXPECT_TRUE(verify_building(b, ctx.maximal()));
  // G1 preserves L inside Lp, and the paper's g2 l and g2 Pi leave L; with two
  // orbits each, node 1 is their orbit exactly when it leaves L too.
  RatMatrix to_l = inverse(to_rat(ctx.embed()));
  auto inside_l = [&](const IntMatrix& basis) { return is_integral(RatMatrix(to_l * to_rat(basis))); };
  IntMatrix g2l = IntMatrix::from_columns({IntVector{1, 1, 0, 0, 1, 0}}, 6);
  IntMatrix g2pi = IntMatrix::from_columns({IntVector{1, 1, 0, 0, 1, 0}, IntVector{0, 0, 1, 0, 0, 0}}, 6);
  EXPECT_FALSE(inside_l(g2l));
  EXPECT_FALSE(inside_l(g2pi));
  EXPECT_TRUE(inside_l(b.lines[0].basis));
  EXPECT_FALSE(inside_l(b.lines[1].basis));
  EXPECT_TRUE(inside_l(b.planes[0].basis));
  EXPECT_FALSE(inside_l(b.planes[1].basis));

  // Oracle for the edges: a line of Lp lies in L or not, and G1 preserves L.
  // Plane 1 contains e2 (in L).
  // e1 -> e2 under t(f2,-e1) t(f1,e2), both in the stable group of L.
  IntVector e1 = unit(6, 0), f1 = unit(6, 1), e2 = unit(6, 2), f2 = unit(6, 3);
  IntMatrix t = eichler_transvection(ctx.maximal(), f2, IntVector{-1, 0, 0, 0, 0, 0}) *
                eichler_transvection(ctx.maximal(), f1, e2);
  EXPECT_EQ(t * e1, e2);
  EXPECT_EQ(canonical_subspace(IntMatrix::from_columns({b.planes[1].basis.column(0), b.planes[1].basis.column(1), e2}, 6)),
            b.planes[1].basis);
  EXPECT_TRUE(SubgroupData(ctx.maximal(), ctx.embed(), stable).member(t));
  std::vector<BuildingEdge> expected{{0, 0, {}}, {0, 1, {}}, {1, 1, {}}};
  EXPECT_EQ(b.edges, expected);

  TitsBuilding up = building_ascend(b, stable, make_group_spec(l, "O+"), ctx);
  EXPECT_EQ(up.coset_index, 2u);
  EXPECT_EQ(up.lines.size(), 2u);
  EXPECT_EQ(up.planes.size(), 2u);
  EXPECT_EQ(up.edges, expected);
  EXPECT_TRUE(verify_building(up, ctx.maximal()));

  // Ascending to O+(Lp) recovers the maximal building.
  TitsBuilding full = building_ascend(b, stable, make_group_spec(ctx.maximal(), "O+"), ctx);
  EXPECT_EQ(full.lines.size(), 1u);
  EXPECT_EQ(full.planes.size(), 1u);
  EXPECT_EQ(full.edges.size(), 1u);
  EXPECT_TRUE(verify_building(full, ctx.maximal()));
  EXPECT_EQ(isotropic_vector_orbits(stable, ctx).size(), 2u);
}

TEST(Buildings, DescentMatchesCosetOrbits) {
  // Oracle: G1-orbits on lines (planes) of Lp are the Stab-orbits on the
  // left cosets g G1, computed here with pairwise membership tests.
  Lattice l = build_lattice("U + U(2) + A2");
  BuildingContext ctx(l);
  GroupSpec stable = make_group_spec(l, "~O+");
  SubgroupData g1(ctx.maximal(), ctx.embed(), stable);
  Transversal t = coset_transversal(ctx.generators(), g1.member_fn(), kDefaultCosetBudget, *g1.left_key());
  ASSERT_TRUE(t.complete);
  const auto& reps = t.representatives;
  std::vector<IntMatrix> inv;
  for (const auto& r : reps) inv.push_back(inverse_unimodular(r));
  auto count_orbits = [&](const std::vector<IntMatrix>& stab) {
    std::vector<std::size_t> parent(reps.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (std::size_t j = 0; j < reps.size(); ++j)
      for (const auto& s : stab)
        for (std::size_t i = 0; i < reps.size(); ++i)
          if (g1.member(inv[i] * s * reps[j])) {
            parent[find(i)] = find(j);
            break;
          }
    std::size_t c = 0;
    for (std::size_t i = 0; i < reps.size(); ++i) c += find(i) == i;
    return c;
  };
  IntMatrix id = IntMatrix::identity(6);
  TitsBuilding b = building_descend(building_maximal(ctx), stable, ctx);
  EXPECT_EQ(b.coset_index, 54u);
  EXPECT_EQ(b.lines.size(), count_orbits(ctx.line_stabilizer(id)));
  EXPECT_EQ(b.planes.size(), count_orbits(ctx.plane_stabilizer(id)));
  EXPECT_TRUE(verify_building(b, ctx.maximal()));
}
