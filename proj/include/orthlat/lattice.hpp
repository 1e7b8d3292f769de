#pragma once

#include <string>
#include <vector>

#include "orthlat/linalg.hpp"

namespace orthlat {

// An even nondegenerate integral lattice given by its Gram matrix.
class Lattice {
 public:
  Lattice() = default;
  explicit Lattice(IntMatrix gram);

  const IntMatrix& gram() const { return gram_; }
  std::size_t rank() const { return gram_.rows(); }
  std::size_t positive() const { return pos_; }
  std::size_t negative() const { return neg_; }
  Int det() const { return det_; }
  bool is_definite() const { return pos_ == 0 || neg_ == 0; }

  Int inner(const IntVector& x, const IntVector& y) const { return bilinear(gram_, x, y); }
  Rat inner(const RatVector& x, const RatVector& y) const;
  Int norm(const IntVector& x) const { return inner(x, x); }
  Rat norm(const RatVector& x) const { return inner(x, x); }
  // x^T G as a row.
  IntVector dual_row(const IntVector& x) const;

  friend bool operator==(const Lattice& a, const Lattice& b) { return a.gram_ == b.gram_; }

 private:
  IntMatrix gram_;
  std::size_t pos_ = 0, neg_ = 0;
  Int det_ = 1;
};

Lattice hyperbolic_plane(const Int& scale = 1);
// Negative definite root lattice A_n.
Lattice root_lattice_A(std::size_t n);
Lattice rank_one(const Int& d);
Lattice direct_sum(const std::vector<Lattice>& parts);
Lattice rescaled(const Lattice& l, const Int& m);

// Parses EXPR := TERM ('+' TERM)*, TERM := [k'*'] BASE ['(' m ')'],
// BASE := 'U' | 'A' n | '<' d '>' | 'gram' [[..],..].  'U(m)' is U rescaled.
// Throws ParseError carrying the character offset.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t pos)
      : std::runtime_error(what + " at offset " + std::to_string(pos)), pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};
Lattice build_lattice(const std::string& expr);
RatVector parse_vector(const std::string& text);
IntMatrix parse_matrix(const std::string& text);

struct DiscGroup {
  IntVector orders;               // invariant factors > 1
  std::vector<RatVector> lifts;   // generator lifts in L (x) Q, reduced into [0,1)
  IntMatrix coord;                // rows of P(G) for the orders above

  std::size_t size() const { return orders.size(); }
  Int order() const;
  // Coordinates of x in L^dual, reduced modulo the orders.
  IntVector coordinates(const RatVector& x) const;
  RatVector lift(const IntVector& c) const;
};
DiscGroup discriminant_group(const Lattice& l);

struct DivisorStar {
  Int div;
  RatVector star;
};
DivisorStar divisor_and_star(const Lattice& l, const IntVector& x);

// Primitive sublattice spanned by columns.
struct Sublattice {
  IntMatrix basis;
};
// Basis of span_Q(B) intersected with Z^n.
IntMatrix saturation(const IntMatrix& b);
// Column Hermite form of the Z-span of the columns of B (zero columns dropped).
IntMatrix hermite_columns(const IntMatrix& b);
// Canonical form of the saturation of B; equal spans give equal output.
IntMatrix canonical_subspace(const IntMatrix& b);
bool is_primitive(const IntVector& x);
IntVector primitive_part(const RatVector& x);

struct Complement {
  IntMatrix basis;   // columns in L coordinates
  IntMatrix gram;
  bool degenerate = false;
};
// w^perp for primitive w via the row Smith form of w^T G.
Complement orthogonal_complement(const Lattice& l, const IntVector& w);
// Orthogonal complement of the span of the columns of B.
Complement orthogonal_complement_of(const Lattice& l, const IntMatrix& b);

struct Overlattice {
  Lattice lattice;
  IntMatrix embed;  // L coordinates -> overlattice coordinates
  Int index;
};
Overlattice maximal_overlattice(const Lattice& l);
bool is_maximal(const Lattice& l);

}  // namespace orthlat
