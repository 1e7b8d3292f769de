#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "orthlat/cosets.hpp"
#include "orthlat/lattice.hpp"
#include "orthlat/ogroup.hpp"

namespace orthlat {

// Coordinates are those of the maximal lattice Lp throughout.
struct BuildingNode {
  IntMatrix basis;  // canonical basis of the primitive sublattice
  IntMatrix split;  // basis S(E) starting with E (x1, or x1 and x3); may be empty
};

struct BuildingEdge {
  std::size_t line = 0, plane = 0;
  IntMatrix witness;  // g in the group with g(line) inside the plane; may be empty
  friend bool operator==(const BuildingEdge& a, const BuildingEdge& b) {
    return a.line == b.line && a.plane == b.plane;
  }
};

struct TitsBuilding {
  std::vector<BuildingNode> lines;
  std::vector<BuildingNode> planes;
  std::vector<BuildingEdge> edges;
  std::string group_label;
  std::size_t coset_index = 1;  // |G2 : G1| used to produce it
  bool complete = true;
};

// Lp maximal with Gram U + U + L0 on its coordinates, together with a
// sublattice L (embed: L coordinates -> Lp coordinates).
class BuildingContext {
 public:
  explicit BuildingContext(const Lattice& l);
  BuildingContext(const Lattice& l, const Lattice& lp, const IntMatrix& embed);

  const Lattice& lattice() const { return l_; }
  const Lattice& maximal() const { return lp_; }
  const IntMatrix& embed() const { return embed_; }
  // Generators of O+(Lp).
  const std::vector<IntMatrix>& generators();
  // Generators of the O+(Lp)-stabilizer of the line or plane of a split basis.
  std::vector<IntMatrix> line_stabilizer(const IntMatrix& split);
  std::vector<IntMatrix> plane_stabilizer(const IntMatrix& split);
  // M = exponent of Lp / L and N = exponent of L^dual / M Lp.
  Int overlattice_exponent() const;
  Int level() const;

  std::size_t budget = kDefaultCosetBudget;

 private:
  Lattice l_, lp_;
  IntMatrix embed_;
  std::vector<IntMatrix> gens_;
  std::map<IntMatrix, std::vector<IntMatrix>> lorentz_cache_, definite_cache_;
};

// An element of O+(Lp) with tau x = y, for primitive isotropic x, y.
IntMatrix tau(const Lattice& lp, const IntVector& x, const IntVector& y);

TitsBuilding building_maximal(BuildingContext& ctx);
// G1 inside O+(Lp) given by a spec on L; b2 must be the building of O+(Lp).
TitsBuilding building_descend(const TitsBuilding& b2, const GroupSpec& g1, BuildingContext& ctx);
// Building of G2 from that of G1 (G1 inside G2 inside O+(Lp)).  Specs are on L,
// or on Lp when their Gram is that of Lp.
TitsBuilding building_ascend(const TitsBuilding& b1, const GroupSpec& g1, const GroupSpec& g2,
                             BuildingContext& ctx);
// Line-orbit representatives only.
std::vector<IntMatrix> isotropic_vector_orbits(const GroupSpec& g1, BuildingContext& ctx);

// Edge witnesses and node types, checked exactly.
bool verify_building(const TitsBuilding& b, const Lattice& lp);

std::string to_dot(const TitsBuilding& b);
std::string serialize(const TitsBuilding& b);
TitsBuilding parse_building(const std::string& text);

}  // namespace orthlat
