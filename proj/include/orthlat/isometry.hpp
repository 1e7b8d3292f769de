#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "orthlat/discform.hpp"
#include "orthlat/lattice.hpp"

namespace orthlat {

struct ShortVector {
  IntVector v;
  Int norm;
};

// Nonzero vectors with |v^2| <= bound for a definite Gram matrix, one per
// +- pair (first nonzero coordinate positive), sorted lexicographically.
std::vector<ShortVector> short_vectors(const IntMatrix& gram, const Int& bound);

// All integral x with (x - center)^T A (x - center) <= bound, A positive definite.
void enumerate_ellipsoid(const IntMatrix& a, const RatVector& center, const Rat& bound,
                         const std::function<void(const IntVector&)>& emit);

// Basis change T improving a definite Gram by pairwise size reduction.
IntMatrix size_reduce(const IntMatrix& gram);

// Basis change T such that T^T G T is the lexicographically smallest Gram
// among bases of short vectors (rank <= 4); size reduction otherwise.
IntMatrix reduced_definite_basis(const IntMatrix& gram);

// Every psi with psi^T G2 psi = G1, i.e. psi maps K1 coordinates to K2
// coordinates.  visit returns false to stop.
void for_each_isometry(const IntMatrix& g1, const IntMatrix& g2,
                       const std::function<bool(const IntMatrix&)>& visit);
std::vector<IntMatrix> iso_definite(const IntMatrix& g1, const IntMatrix& g2);
bool is_isometric_definite(const IntMatrix& g1, const IntMatrix& g2);

struct Representation {
  std::optional<IntVector> vector;
  bool exact = false;  // absence is conclusive
};
Representation represents_norm(const IntMatrix& gram, const Int& target, const Int& bound);

// Classes of even definite lattices of rank <= 3 with given sign and disc form.
std::vector<IntMatrix> enumerate_genus_definite(std::size_t rank, bool negative, const FiniteQuadraticForm& q);

}  // namespace orthlat
