#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "orthlat/lattice.hpp"
#include "orthlat/ogroup.hpp"

namespace orthlat {

struct Transversal {
  std::vector<IntMatrix> representatives;
  bool complete = false;
  std::size_t index() const { return representatives.size(); }
};

using MemberFn = std::function<bool(const IntMatrix&)>;
// A coset invariant: equal keys exactly when the elements lie in the same
// left coset g G1.  Optional; without it cosets are compared pairwise.
using CosetKey = std::function<std::vector<Int>(const IntMatrix&)>;

constexpr std::size_t kDefaultCosetBudget = 10000;

// Left cosets G2 / G1, found by closing {1} under left multiplication by
// the generators of G2.
Transversal coset_transversal(const std::vector<IntMatrix>& gens, const MemberFn& member_g1,
                              std::size_t budget = kDefaultCosetBudget, const CosetKey& key = {});

// Right cosets Stab_G1(E) \ Stab_G2(E); stab_gens must stabilize the
// subspace spanned by the columns of e.
Transversal stab_coset_transversal(const IntMatrix& e, const std::vector<IntMatrix>& stab_gens,
                                   const MemberFn& member_g1, std::size_t budget = kDefaultCosetBudget,
                                   const CosetKey& key = {});

// One SL(2,Z) lift of each element of SL(2,Z/N).
Transversal gamma_n_transversal(long n);

// G1 inside O(Lp) given by a group spec on a finite-index sublattice L
// (embed maps L coordinates to Lp coordinates).
class SubgroupData {
 public:
  SubgroupData(const Lattice& lp, const IntMatrix& embed, GroupSpec spec);

  const Lattice& ambient() const { return lp_; }
  const GroupSpec& spec() const { return spec_; }
  const IntMatrix& embed() const { return embed_; }
  // Membership of g in O(Lp) coordinates.
  bool member(const IntMatrix& g) const;
  // Left coset invariant, available unless the disc condition is a subgroup A.
  std::optional<CosetKey> left_key() const;
  MemberFn member_fn() const;

 private:
  Lattice lp_;
  IntMatrix embed_;
  RatMatrix embed_inv_;
  GroupSpec spec_;
  DiscGroup disc_;
};

}  // namespace orthlat
