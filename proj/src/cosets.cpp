#include "orthlat/cosets.hpp"

#include <deque>
#include <map>
#include <numeric>

namespace orthlat {

namespace {

Transversal closure_bfs(const std::vector<IntMatrix>& gens, bool left,
                        const std::function<bool(const IntMatrix&, const IntMatrix&)>& same,
                        const CosetKey& key, std::size_t budget) {
  if (gens.empty()) return {{}, true};
  const std::size_t n = gens.front().rows();
  Transversal out;
  out.representatives.push_back(IntMatrix::identity(n));
  std::map<std::vector<Int>, std::size_t> seen;
  if (key) seen.emplace(key(out.representatives.front()), 0);
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    std::size_t r = queue.front();
    queue.pop_front();
    for (const auto& s : gens) {
      IntMatrix x = left ? s * out.representatives[r] : out.representatives[r] * s;
      bool fresh;
      std::vector<Int> k;
      if (key) {
        k = key(x);
        fresh = !seen.count(k);
      } else {
        fresh = std::none_of(out.representatives.begin(), out.representatives.end(),
                             [&](const IntMatrix& y) { return same(x, y); });
      }
      if (!fresh) continue;
      if (out.representatives.size() >= budget) return out;
      if (key) seen.emplace(std::move(k), out.representatives.size());
      queue.push_back(out.representatives.size());
      out.representatives.push_back(std::move(x));
    }
  }
  out.complete = true;
  return out;
}

// Column HNF of g.E followed by the images of the lifts reduced modulo it.
struct KeyData {
  IntMatrix embed;
  std::vector<RatVector> lifts;  // Lp coordinates
  bool det = false;
  std::optional<Lattice> spinor;  // set when the spinor norm is part of the key
};

RatVector reduce_modulo(const RatVector& v, const IntMatrix& h, const RatMatrix& h_inv) {
  RatVector c = h_inv * v;
  RatVector out = v;
  for (std::size_t j = 0; j < c.size(); ++j) {
    Int f;
    mpz_fdiv_q(f.get_mpz_t(), c[j].get_num_mpz_t(), c[j].get_den_mpz_t());
    if (f == 0) continue;
    for (std::size_t i = 0; i < v.size(); ++i) out[i] -= Rat(f * h(i, j));
  }
  return out;
}

std::vector<Int> make_key(const KeyData& d, const IntMatrix& g) {
  IntMatrix h = hermite_columns(g * d.embed);
  std::vector<Int> k;
  if (d.det) k.push_back(determinant(g));
  if (d.spinor) k.push_back(spinor_norm(*d.spinor, g));
  for (std::size_t i = 0; i < h.rows(); ++i)
    for (std::size_t j = 0; j < h.cols(); ++j) k.push_back(h(i, j));
  if (d.lifts.empty()) return k;
  RatMatrix h_inv = inverse(to_rat(h));
  RatMatrix gr = to_rat(g);
  for (const auto& x : d.lifts) {
    RatVector y = reduce_modulo(gr * x, h, h_inv);
    for (const auto& c : y) {
      k.push_back(c.get_num());
      k.push_back(c.get_den());
    }
  }
  return k;
}

}  // namespace

Transversal coset_transversal(const std::vector<IntMatrix>& gens, const MemberFn& member_g1, std::size_t budget,
                              const CosetKey& key) {
  auto same = [&](const IntMatrix& x, const IntMatrix& y) { return member_g1(inverse_unimodular(y) * x); };
  return closure_bfs(gens, true, same, key, budget);
}

Transversal stab_coset_transversal(const IntMatrix& e, const std::vector<IntMatrix>& stab_gens,
                                   const MemberFn& member_g1, std::size_t budget, const CosetKey& key) {
  IntMatrix canon = canonical_subspace(e);
  for (const auto& s : stab_gens)
    if (canonical_subspace(s * e) != canon) throw MathError("generator does not stabilize the subspace");
  auto same = [&](const IntMatrix& x, const IntMatrix& y) { return member_g1(x * inverse_unimodular(y)); };
  CosetKey right;
  if (key) right = [key](const IntMatrix& g) { return key(inverse_unimodular(g)); };
  return closure_bfs(stab_gens, false, same, right, budget);
}

Transversal gamma_n_transversal(long n) {
  if (n < 1) throw MathError("level must be positive");
  Transversal out;
  out.complete = true;
  if (n == 1) {
    out.representatives.push_back(IntMatrix::identity(2));
    return out;
  }
  auto md = [n](const Int& x) {
    Int r = x % n;
    return r < 0 ? Int(r + n) : r;
  };
  for (long a = 0; a < n; ++a)
    for (long b = 0; b < n; ++b)
      for (long c = 0; c < n; ++c)
        for (long d = 0; d < n; ++d) {
          if (md(Int(a * d - b * c)) != 1) continue;
          // Lift the bottom row to a coprime pair, then solve for the top row.
          Int cc, dd;
          bool found = false;
          for (long i = 0; i <= n && !found; ++i)
            for (long j = 0; j <= n && !found; ++j) {
              cc = c + i * n;
              dd = d + j * n;
              Int g;
              mpz_gcd(g.get_mpz_t(), cc.get_mpz_t(), dd.get_mpz_t());
              found = g == 1;
            }
          if (!found) throw MathError("internal error: no coprime lift");
          Bezout bz = bezout(cc, dd);  // u*cc + v*dd = 1
          Int a1 = bz.v, b1 = -bz.u;
          bool ok = false;
          for (long t = 0; t < n && !ok; ++t) {
            Int aa = a1 + t * cc, bb = b1 + t * dd;
            if (md(aa) == a && md(bb) == b) {
              out.representatives.push_back(IntMatrix{{aa, bb}, {cc, dd}});
              ok = true;
            }
          }
          if (!ok) throw MathError("internal error: SL2 lift failed");
        }
  return out;
}

SubgroupData::SubgroupData(const Lattice& lp, const IntMatrix& embed, GroupSpec spec)
    : lp_(lp), embed_(embed), embed_inv_(inverse(to_rat(embed))), spec_(std::move(spec)),
      disc_(discriminant_group(spec_.ambient)) {
  if (embed.rows() != lp.rank() || embed.cols() != spec_.ambient.rank())
    throw MathError("embedding has wrong shape");
  if (embed.transpose() * lp.gram() * embed != spec_.ambient.gram())
    throw MathError("embedding does not preserve the form");
}

bool SubgroupData::member(const IntMatrix& g) const { return is_member(spec_, embed_inv_ * to_rat(g) * to_rat(embed_)); }

MemberFn SubgroupData::member_fn() const {
  return [this](const IntMatrix& g) { return member(g); };
}

std::optional<CosetKey> SubgroupData::left_key() const {
  if (spec_.disc == DiscCondition::in_subgroup) return std::nullopt;
  auto d = std::make_shared<KeyData>();
  d->embed = embed_;
  d->det = spec_.require_det_one;
  if (spec_.require_spinor_positive) d->spinor = lp_;
  if (spec_.disc == DiscCondition::trivial)
    for (const auto& x : disc_.lifts) d->lifts.push_back(to_rat(embed_) * x);
  return CosetKey([d](const IntMatrix& g) { return make_key(*d, g); });
}

}  // namespace orthlat
