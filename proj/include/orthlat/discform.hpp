#pragma once

#include <functional>
#include <set>
#include <vector>

#include "orthlat/lattice.hpp"

namespace orthlat {

Rat mod1(const Rat& x);
Rat mod2(const Rat& x);

// Finite quadratic form on C_{d_1} + ... + C_{d_k}.  Diagonal of q_matrix
// holds q(g_i) in [0,2); off-diagonal entries hold b(g_i,g_j) in [0,1).
struct FiniteQuadraticForm {
  IntVector orders;
  RatMatrix q_matrix;
  std::vector<RatVector> lifts;

  FiniteQuadraticForm() = default;
  FiniteQuadraticForm(IntVector orders, const RatMatrix& q);

  std::size_t size() const { return orders.size(); }
  Int order() const;
  IntVector reduce(IntVector x) const;
  IntVector add(const IntVector& x, const IntVector& y) const;
  IntVector scale(const IntVector& x, const Int& k) const;
  Int element_order(const IntVector& x) const;
  Rat q(const IntVector& x) const;
  Rat b(const IntVector& x, const IntVector& y) const;
  // All elements, first coordinate most significant.
  std::vector<IntVector> elements() const;
};

FiniteQuadraticForm disc_form_of(const Lattice& l);
FiniteQuadraticForm direct_sum(const FiniteQuadraticForm& a, const FiniteQuadraticForm& b);

std::vector<IntVector> isotropic_elements(const FiniteQuadraticForm& q);

// Homomorphism given by generator images: column i is the image of g_i.
struct FqfMap {
  IntMatrix images;
  IntVector domain_orders;
  IntVector codomain_orders;

  IntVector apply(const IntVector& x) const;
  bool is_identity() const;
  friend bool operator<(const FqfMap& a, const FqfMap& b) { return a.images < b.images; }
  friend bool operator==(const FqfMap& a, const FqfMap& b) { return a.images == b.images; }
};
FqfMap identity_map(const IntVector& orders);
// (after o before)
FqfMap compose(const FqfMap& after, const FqfMap& before);
FqfMap inverse(const FqfMap& f);

// Calls visit on every isomorphism with q2 o g = q1; stops early when visit returns false.
void for_each_iso(const FiniteQuadraticForm& q1, const FiniteQuadraticForm& q2,
                  const std::function<bool(const FqfMap&)>& visit);
std::vector<FqfMap> iso_fqf(const FiniteQuadraticForm& q1, const FiniteQuadraticForm& q2);
bool is_form_preserving(const FqfMap& f, const FiniteQuadraticForm& q1, const FiniteQuadraticForm& q2);

// Subgroup of O(q) generated by gens, as a set of image matrices.
std::set<IntMatrix> closure(const std::vector<FqfMap>& gens, const IntVector& orders);

enum class GenusVerdict { applies, inconclusive };
GenusVerdict unique_genus_check(std::size_t t_plus, std::size_t t_minus, const FiniteQuadraticForm& q);

std::string to_string(const FiniteQuadraticForm& q);

}  // namespace orthlat
