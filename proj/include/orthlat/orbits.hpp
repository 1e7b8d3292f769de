#pragma once

#include <optional>
#include <string>
#include <vector>

#include "orthlat/discform.hpp"
#include "orthlat/lattice.hpp"
#include "orthlat/ogroup.hpp"

namespace orthlat {

enum class Verdict { equivalent, not_equivalent, inconclusive };
std::string to_string(Verdict v);

// Glue data for <w> + K inside L, in the generators of
// D(<w>) + D(K) = C_{|w^2|} + (discriminant_group of K).
struct GlueData {
  IntVector w;
  Complement k;
  FiniteQuadraticForm q_k;
  IntVector orders;                // |w^2| followed by the orders of D(K)
  std::vector<IntVector> h;        // all elements of H = L / (<w> + K), sorted
  std::vector<IntVector> h_gens;   // images of the basis of L
  std::vector<IntVector> iota;     // images of the D(L) generators
  IntMatrix lambda;                // column j: image of the j-th basis vector of L
  RatMatrix split_inverse;         // inverse of (w | basis of K)
  DiscGroup d_k;

  // Class of x in L^dual inside D(<w>) + D(K).
  IntVector glue_coordinates(const RatVector& x) const;
  // The D(K) part of the elements of H.
  std::vector<IntVector> h_k() const;
};
GlueData glue_data(const Lattice& l, const IntVector& w);

struct OrbitVerdict {
  Verdict verdict = Verdict::inconclusive;
  std::optional<RatMatrix> witness;   // g with g v1 = v2 (definite algorithm)
  std::optional<FqfMap> induced;      // induced map on D(L) (indefinite algorithm)
  std::optional<FqfMap> psi_bar;      // the map D(K1) -> D(K2) that was used
  std::string reason;
  bool equivalent() const { return verdict == Verdict::equivalent; }
};

// The orbit test for a non-isotropic v1 whose orthogonal complement is definite.
OrbitVerdict equiv_definite_complement(const Lattice& l, const GroupSpec& spec, const RatVector& v1,
                                       const RatVector& v2);

// The orbit test for O_A(L) when v1-perp is indefinite.  The disc condition
// of spec selects A; the other flags of spec are ignored.
OrbitVerdict equiv_indefinite(const Lattice& l, const GroupSpec& spec, const RatVector& v1, const RatVector& v2);

// Transfers an O_A verdict to SO+_A when v1-perp represents both 2 and -2.
OrbitVerdict upgrade_to_so_plus(const Lattice& l, const RatVector& v1, const OrbitVerdict& base,
                                long search_radius = 3);

// Dispatches on the complement of v1 and on the flags of spec.
OrbitVerdict orbit_equivalent(const Lattice& l, const GroupSpec& spec, const RatVector& v1, const RatVector& v2);

}  // namespace orthlat
