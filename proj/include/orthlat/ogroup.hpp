#pragma once

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "orthlat/discform.hpp"
#include "orthlat/lattice.hpp"

namespace orthlat {

// Group elements act on column coordinate vectors: x -> M x.
bool is_isometry(const Lattice& l, const RatMatrix& m);
bool is_isometry(const Lattice& l, const IntMatrix& m);

// x -> x - 2(x,w)/(w,w) w.
RatMatrix reflection(const Lattice& l, const RatVector& w);
// Reflection in w when it preserves L; throws otherwise.
IntMatrix integral_reflection(const Lattice& l, const IntVector& w);
bool reflection_is_integral(const Lattice& l, const IntVector& w);

// Real spinor norm, +1 or -1.
int spinor_norm(const Lattice& l, const RatMatrix& g);
int spinor_norm(const Lattice& l, const IntMatrix& g);

// Induced automorphism of D(L) in the generators of discriminant_group(l).
FqfMap disc_action(const Lattice& l, const RatMatrix& g);
FqfMap disc_action(const DiscGroup& d, const RatMatrix& g);

// t(e,a): v -> v - (a,v)e + (e,v)a - (a,a)/2 (e,v)e.
IntMatrix eichler_transvection(const Lattice& l, const IntVector& e, const IntVector& a);

// theta(Z,I) (left) or theta(I,Z) (right) on the first 2U block, identity elsewhere.
enum class Side { left, right };
IntMatrix sl2_embed(const IntMatrix& z, Side side, std::size_t rank);

// Lattice L = U + L1 with U on coordinates 0,1.  Returns the transvections
// t(x1,b), t(x2,b) over the basis of L1, gens_l1 extended by the identity,
// and -1.
std::vector<IntMatrix> generators_Oplus_split(const Lattice& l, const std::vector<IntMatrix>& gens_l1);

// Lp with split basis S (columns x1,...,xn with Gram U + U + L0).  Generators
// are returned in Lp coordinates.  gens_l1p generate O+(<x3,...>) and
// gens_l0 generate O(<x5,...>), both in their own coordinates.
std::vector<IntMatrix> stab_line_generators(const Lattice& lp, const IntMatrix& s,
                                            const std::vector<IntMatrix>& gens_l1p);
std::vector<IntMatrix> stab_plane_generators(const Lattice& lp, const IntMatrix& s,
                                             const std::vector<IntMatrix>& gens_l0);

// Vinberg's algorithm for a Lorentzian lattice of signature (1,n), n <= 4.
struct VinbergOptions {
  std::vector<Int> norms;                 // root norms (negative); empty: all candidates
  std::vector<IntVector> stabilizer_roots;  // simple roots of x0-perp; empty: computed
  std::size_t budget = 64;
  long max_level_numerator = 400;         // bound on (x0,v) while searching
};
struct VinbergResult {
  std::vector<IntVector> roots;
  bool terminated = false;
};
std::vector<Int> candidate_root_norms(const Lattice& l);
VinbergResult vinberg_roots(const Lattice& l, const IntVector& x0, const VinbergOptions& opts = {});
// Finite volume test for the chamber {x : (x,v) >= 0 for all roots v}.
bool has_finite_volume(const Lattice& l, const std::vector<IntVector>& roots, const IntVector& x0);
// Isometries in O+(L) permuting the given chamber walls.
std::vector<IntMatrix> chamber_symmetries(const Lattice& l, const std::vector<IntVector>& roots);
// Generators of O+(L) for L = U + L0 (U on coordinates 0,1), from a
// Vinberg chamber with all candidate root norms.
std::vector<IntMatrix> lorentzian_generators(const Lattice& l);
// Generators of O(L0) for definite L0.
std::vector<IntMatrix> definite_generators(const Lattice& l0);

enum class DiscCondition { any, trivial, in_subgroup };

struct GroupSpec {
  Lattice ambient;
  bool require_integral = true;
  bool require_det_one = false;
  bool require_spinor_positive = true;
  DiscCondition disc = DiscCondition::trivial;
  std::vector<FqfMap> subgroup;  // generators of A for in_subgroup
  std::vector<IntMatrix> extra_generators;

  // Filled on first use.
  mutable std::shared_ptr<const DiscGroup> disc_group;
  mutable std::shared_ptr<const std::set<IntMatrix>> subgroup_closure;
};

// Flags: "O", "O+", "SO", "SO+" optionally prefixed by "~" (stable).
GroupSpec make_group_spec(const Lattice& l, const std::string& flags);
std::string describe(const GroupSpec& spec);
bool is_member(const GroupSpec& spec, const RatMatrix& g);
bool is_member(const GroupSpec& spec, const IntMatrix& g);

}  // namespace orthlat
