#include "orthlat/buildings.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "orthlat/discform.hpp"
#include "orthlat/isometry.hpp"

namespace orthlat {

namespace {

IntVector column(const IntMatrix& m, std::size_t j) {
  IntVector v(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) v[i] = m(i, j);
  return v;
}

IntMatrix lower_block(const IntMatrix& g, std::size_t from) {
  const std::size_t k = g.rows() - from;
  IntMatrix out(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) out(i, j) = g(i + from, j + from);
  return out;
}

IntVector unit_vector(std::size_t n, std::size_t i) {
  IntVector v(n);
  v[i] = 1;
  return v;
}

void check_standard_split(const Lattice& lp) {
  const IntMatrix& g = lp.gram();
  const std::size_t n = lp.rank();
  bool ok = n >= 4;
  for (std::size_t p = 0; ok && p < 4; p += 2) {
    ok = g(p, p) == 0 && g(p + 1, p + 1) == 0 && g(p, p + 1) == 1;
    for (std::size_t j = 0; ok && j < n; ++j)
      if (j != p && j != p + 1) ok = g(p, j) == 0 && g(p + 1, j) == 0;
  }
  if (!ok) throw MathError("maximal lattice is not in the form U + U + L0");
}

// Integral c with r . c = gcd(r).
IntVector bezout_row(const IntVector& r) {
  IntVector c(r.size());
  Int g = 0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    Bezout b = bezout(g, r[i]);
    for (std::size_t j = 0; j < i; ++j) c[j] *= b.u;
    c[i] = b.v;
    g = b.g;
  }
  return c;
}

// Element of O+(Lp) sending the primitive isotropic v to the first basis vector.
IntMatrix to_first_vector(const Lattice& lp, const IntVector& v) {
  const std::size_t n = lp.rank();
  IntMatrix g = IntMatrix::identity(n);
  if (v[0] != 0 || v[1] != 0) {
    IntMatrix x{{v[2], -v[1]}, {v[0], v[3]}};
    SmithForm s = smith_normal_form(x);
    IntMatrix p = s.P, q = s.Q;
    if (determinant(p) == -1)
      for (std::size_t j = 0; j < 2; ++j) p(0, j) = -p(0, j);
    if (determinant(q) == -1)
      for (std::size_t i = 0; i < 2; ++i) q(i, 0) = -q(i, 0);
    g = sl2_embed(p, Side::left, n) * sl2_embed(inverse_unimodular(q), Side::right, n);
  }
  IntVector w = g * v;
  if (w[0] != 0 || w[1] != 0) throw MathError("internal error: SL2 normalization failed");
  IntVector r = lp.dual_row(w);
  IntVector tail(r.begin() + 2, r.end());
  if (gcd_of(tail) != 1) throw MathError("isotropic vector has divisor > 1 in L1");
  IntVector c = bezout_row(tail);
  IntVector u(n), minus_w(n);
  for (std::size_t i = 2; i < n; ++i) u[i] = -c[i - 2];
  for (std::size_t i = 0; i < n; ++i) minus_w[i] = -w[i];
  IntMatrix t = eichler_transvection(lp, unit_vector(n, 1), minus_w) * eichler_transvection(lp, unit_vector(n, 0), u) * g;
  if (t * v != unit_vector(n, 0)) throw MathError("internal error: transvection chain failed");
  return t;
}

}  // namespace

IntMatrix tau(const Lattice& lp, const IntVector& x, const IntVector& y) {
  check_standard_split(lp);
  for (const IntVector* v : {&x, &y}) {
    if (v->size() != lp.rank()) throw MathError("vector has wrong length");
    if (lp.norm(*v) != 0 || !is_primitive(*v)) throw MathError("tau needs primitive isotropic vectors");
  }
  IntMatrix t = inverse_unimodular(to_first_vector(lp, y)) * to_first_vector(lp, x);
  if (t * x != y) throw MathError("internal error: tau does not map x to y");
  return t;
}

BuildingContext::BuildingContext(const Lattice& l) : l_(l) {
  Overlattice o = maximal_overlattice(l);
  lp_ = o.lattice;
  embed_ = o.embed;
  check_standard_split(lp_);
}

BuildingContext::BuildingContext(const Lattice& l, const Lattice& lp, const IntMatrix& embed)
    : l_(l), lp_(lp), embed_(embed) {
  check_standard_split(lp_);
  if (!is_maximal(lp_)) throw MathError("ambient lattice is not maximal");
  if (embed.transpose() * lp.gram() * embed != l.gram()) throw MathError("embedding does not preserve the form");
}

const std::vector<IntMatrix>& BuildingContext::generators() {
  if (gens_.empty()) {
    IntMatrix g1 = lower_block(lp_.gram(), 2);
    auto it = lorentz_cache_.find(g1);
    if (it == lorentz_cache_.end()) it = lorentz_cache_.emplace(g1, lorentzian_generators(Lattice(g1))).first;
    gens_ = generators_Oplus_split(lp_, it->second);
  }
  return gens_;
}

std::vector<IntMatrix> BuildingContext::line_stabilizer(const IntMatrix& split) {
  IntMatrix g1 = lower_block(split.transpose() * lp_.gram() * split, 2);
  auto it = lorentz_cache_.find(g1);
  if (it == lorentz_cache_.end()) it = lorentz_cache_.emplace(g1, lorentzian_generators(Lattice(g1))).first;
  return stab_line_generators(lp_, split, it->second);
}

std::vector<IntMatrix> BuildingContext::plane_stabilizer(const IntMatrix& split) {
  IntMatrix g0 = lower_block(split.transpose() * lp_.gram() * split, 4);
  auto it = definite_cache_.find(g0);
  if (it == definite_cache_.end()) it = definite_cache_.emplace(g0, definite_generators(Lattice(g0))).first;
  return stab_plane_generators(lp_, split, it->second);
}

Int BuildingContext::overlattice_exponent() const {
  IntVector d = smith_normal_form(embed_).divisors();
  return d.empty() ? Int(1) : d.back();
}

Int BuildingContext::level() const {
  RatMatrix dual = inverse(to_rat(embed_.transpose() * lp_.gram()));
  Int m = overlattice_exponent();
  Int n = 1;
  for (std::size_t i = 0; i < dual.rows(); ++i)
    for (std::size_t j = 0; j < dual.cols(); ++j) {
      Rat x = dual(i, j) / m;
      mpz_lcm(n.get_mpz_t(), n.get_mpz_t(), x.get_den_mpz_t());
    }
  return n;
}

namespace {

// Split basis of Lp whose plane <x1, x3> has complement isometric to c.
std::optional<IntMatrix> plane_with_complement(const Lattice& lp, const IntMatrix& c, long radius) {
  const std::size_t n = lp.rank(), m = n - 2;
  Lattice l1(lower_block(lp.gram(), 2));
  IntVector y(m, Int(-radius));
  while (true) {
    if (l1.norm(y) == 0 && is_primitive(y)) {
      IntVector r = l1.dual_row(y);
      if (gcd_of(r) == 1) {
        IntVector z = bezout_row(r);
        Int half = l1.norm(z) / 2;
        IntVector yp(m);
        for (std::size_t i = 0; i < m; ++i) yp[i] = z[i] - half * y[i];
        Complement k = orthogonal_complement_of(l1, IntMatrix::from_columns({y, yp}, m));
        if (is_isometric_definite(k.gram, c)) {
          IntMatrix s(n, n);
          s(0, 0) = 1;
          s(1, 1) = 1;
          for (std::size_t i = 0; i < m; ++i) {
            s(i + 2, 2) = y[i];
            s(i + 2, 3) = yp[i];
            for (std::size_t j = 0; j + 2 < m; ++j) s(i + 2, j + 4) = k.basis(i, j);
          }
          if (abs(determinant(s)) == 1) return s;
        }
      }
    }
    std::size_t i = 0;
    while (i < m && y[i] == radius) y[i++] = -radius;
    if (i == m) return std::nullopt;
    ++y[i];
  }
}

BuildingNode make_node(const IntMatrix& split, std::size_t dim) {
  std::vector<IntVector> cols{column(split, 0)};
  if (dim == 2) cols.push_back(column(split, 2));
  return {canonical_subspace(IntMatrix::from_columns(cols, split.rows())), split};
}

}  // namespace

TitsBuilding building_maximal(BuildingContext& ctx) {
  const Lattice& lp = ctx.maximal();
  const std::size_t n = lp.rank();
  TitsBuilding b;
  b.group_label = "O+(Lp)";
  b.lines.push_back(make_node(IntMatrix::identity(n), 1));
  if (n == 4) {
    b.planes.push_back(make_node(IntMatrix::identity(n), 2));
  } else {
    IntMatrix g0 = lower_block(lp.gram(), 4);
    for (const auto& c : enumerate_genus_definite(n - 4, true, disc_form_of(lp))) {
      if (is_isometric_definite(c, g0)) {
        b.planes.push_back(make_node(IntMatrix::identity(n), 2));
        continue;
      }
      auto s = plane_with_complement(lp, c, 3);
      if (!s) throw MathError("no plane found for a class of the genus of L0");
      b.planes.push_back(make_node(*s, 2));
    }
  }
  for (std::size_t i = 0; i < b.planes.size(); ++i) b.edges.push_back({0, i, IntMatrix::identity(n)});
  return b;
}

namespace {

// Membership in G1, through the coset key when one exists.
class Membership {
 public:
  Membership(const BuildingContext& ctx, const GroupSpec& spec)
      : data_(ctx.maximal(), spec.ambient.gram() == ctx.maximal().gram() ? IntMatrix::identity(ctx.maximal().rank())
                                                                         : ctx.embed(),
              spec),
        key_(data_.left_key()) {
    if (key_) identity_ = (*key_)(IntMatrix::identity(ctx.maximal().rank()));
  }
  bool operator()(const IntMatrix& g) const { return key_ ? (*key_)(g) == identity_ : data_.member(g); }
  MemberFn fn() const {
    return [this](const IntMatrix& g) { return (*this)(g); };
  }
  const CosetKey& key() const { return key_ ? *key_ : empty_; }
  std::vector<Int> right_key(const IntMatrix& g) const { return (*key_)(inverse_unimodular(g)); }

 private:
  SubgroupData data_;
  std::optional<CosetKey> key_;
  CosetKey empty_;
  std::vector<Int> identity_;
};

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  // The smaller index stays the root.
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

struct Refined {
  std::vector<BuildingNode> nodes;
  std::vector<std::vector<IntMatrix>> stab_transversals;  // Stab_G1 \ Stab_G2 of each node
  bool complete = true;
};

std::vector<IntMatrix> stabilizer(BuildingContext& ctx, const IntMatrix& split, std::size_t dim) {
  return dim == 1 ? ctx.line_stabilizer(split) : ctx.plane_stabilizer(split);
}

// Splits the O+(Lp)-orbit of e into G1-orbits.  With G = union of g_i G1,
// the nodes g_i^-1 e cover every G1-orbit, and g_i^-1 e ~ g_j^-1 e exactly
// when the right cosets G1 g_i^-1 and G1 g_j^-1 lie in one Stab(e)-orbit.
Refined refine_node(const BuildingNode& e, std::size_t dim, const Transversal& g, const Membership& in_g1,
                    BuildingContext& ctx) {
  const std::size_t m = g.index();
  const auto& reps = g.representatives;
  std::vector<IntMatrix> stab = stabilizer(ctx, e.split, dim);
  std::map<std::vector<Int>, std::size_t> index;
  if (in_g1.key())
    for (std::size_t i = 0; i < m; ++i) index.emplace(in_g1.key()(reps[i]), i);
  UnionFind uf(m);
  for (std::size_t j = 0; j < m; ++j)
    for (const auto& s : stab) {
      // G1 g_j^-1 s^-1 = G1 g_i^-1 iff s g_j G1 = g_i G1.
      IntMatrix x = s * reps[j];
      if (in_g1.key()) {
        auto it = index.find(in_g1.key()(x));
        if (it == index.end()) throw MathError("internal error: coset key outside the transversal");
        uf.unite(it->second, j);
      } else {
        for (std::size_t i = 0; i < m; ++i)
          if (in_g1(inverse_unimodular(reps[i]) * x)) {
            uf.unite(i, j);
            break;
          }
      }
    }
  std::map<std::size_t, std::size_t> orbit_size;
  for (std::size_t j = 0; j < m; ++j) ++orbit_size[uf.find(j)];
  Refined out;
  for (const auto& [j, size] : orbit_size) {
    IntMatrix c = inverse_unimodular(reps[j]);
    std::vector<IntMatrix> conj;
    for (const auto& s : stab) conj.push_back(c * s * reps[j]);
    Transversal t = stab_coset_transversal(c * e.basis, conj, in_g1.fn(), ctx.budget, in_g1.key());
    out.complete = out.complete && t.complete;
    // |Stab_G1 \ Stab_G| of the node is the length of its orbit on right cosets.
    if (t.complete && g.complete && t.index() != size)
      throw MathError("internal error: stabilizer transversal disagrees with the orbit length");
    out.nodes.push_back(make_node(c * e.split, dim));
    out.stab_transversals.push_back(std::move(t.representatives));
  }
  return out;
}

void check_maximal_building(const TitsBuilding& b2) {
  for (const auto* nodes : {&b2.lines, &b2.planes})
    for (const auto& n : *nodes)
      if (n.split.rows() == 0) throw MathError("descent needs split bases for the nodes of the maximal building");
}

TitsBuilding descend(const TitsBuilding& b2, const GroupSpec& spec, BuildingContext& ctx, bool with_planes) {
  check_maximal_building(b2);
  const Lattice& lp = ctx.maximal();
  const std::size_t n = lp.rank();
  Membership in_g1(ctx, spec);
  Transversal g = coset_transversal(ctx.generators(), in_g1.fn(), ctx.budget, in_g1.key());
  TitsBuilding out;
  out.group_label = describe(spec);
  out.coset_index = g.index();
  out.complete = g.complete;

  std::vector<std::vector<IntMatrix>> line_u;
  for (const auto& e : b2.lines) {
    Refined r = refine_node(e, 1, g, in_g1, ctx);
    out.complete = out.complete && r.complete;
    out.lines.insert(out.lines.end(), r.nodes.begin(), r.nodes.end());
    line_u.insert(line_u.end(), r.stab_transversals.begin(), r.stab_transversals.end());
  }
  if (!with_planes) return out;
  for (const auto& e : b2.planes) {
    Refined r = refine_node(e, 2, g, in_g1, ctx);
    out.complete = out.complete && r.complete;
    out.planes.insert(out.planes.end(), r.nodes.begin(), r.nodes.end());
  }

  Int level = ctx.level();
  if (!level.fits_slong_p()) throw MathError("level too large");
  const long nl = level.get_si();
  Transversal j = gamma_n_transversal(nl);
  for (std::size_t pi = 0; pi < out.planes.size(); ++pi) {
    const IntMatrix& s = out.planes[pi].split;
    IntMatrix s_inv = inverse_unimodular(s);
    for (const IntMatrix& z : {IntMatrix{{1, nl}, {0, 1}}, IntMatrix{{1, 0}, {nl, 1}}})
      if (!in_g1(s * sl2_embed(z, Side::left, n) * s_inv))
        throw MathError("internal error: Gamma(N) is not contained in the subgroup");
    // Lines in the plane up to Gamma(N): the first columns of J mod N.
    std::set<std::pair<Int, Int>> seen;
    std::vector<IntVector> ys;
    IntVector x1 = column(s, 0), x3 = column(s, 2);
    for (const auto& zm : j.representatives) {
      Int b = zm(0, 1) % nl, d = zm(1, 1) % nl;
      if (b < 0) b += nl;
      if (d < 0) d += nl;
      if (!seen.emplace(d, b).second) continue;
      IntVector y(n);
      for (std::size_t i = 0; i < n; ++i) y[i] = zm(1, 1) * x1[i] + zm(0, 1) * x3[i];
      ys.push_back(y);
    }
    for (std::size_t li = 0; li < out.lines.size(); ++li) {
      IntVector x = column(out.lines[li].split, 0);
      bool found = false;
      for (const auto& y : ys) {
        IntMatrix t = tau(lp, y, x);
        for (const auto& u : line_u[li]) {
          IntMatrix w = u * t;
          if (!in_g1(w)) continue;
          out.edges.push_back({li, pi, inverse_unimodular(w)});
          found = true;
          break;
        }
        if (found) break;
      }
    }
  }
  std::sort(out.edges.begin(), out.edges.end(), [](const BuildingEdge& a, const BuildingEdge& b) {
    return std::pair(a.line, a.plane) < std::pair(b.line, b.plane);
  });
  return out;
}

}  // namespace

TitsBuilding building_descend(const TitsBuilding& b2, const GroupSpec& g1, BuildingContext& ctx) {
  return descend(b2, g1, ctx, true);
}

std::vector<IntMatrix> isotropic_vector_orbits(const GroupSpec& g1, BuildingContext& ctx) {
  TitsBuilding b = descend(building_maximal(ctx), g1, ctx, false);
  std::vector<IntMatrix> out;
  for (const auto& l : b.lines) out.push_back(l.basis);
  if (!b.complete) throw MathError("coset enumeration exceeded its budget");
  return out;
}

namespace {

// g in O+(Lp) taking the plane of sa to the plane of sb; none if the
// complements L0 are not isometric.
std::optional<IntMatrix> plane_transfer(const Lattice& lp, const IntMatrix& sa, const IntMatrix& sb) {
  const std::size_t n = lp.rank();
  IntMatrix d = IntMatrix::identity(n);
  if (n > 4) {
    IntMatrix ga = lower_block(sa.transpose() * lp.gram() * sa, 4);
    IntMatrix gb = lower_block(sb.transpose() * lp.gram() * sb, 4);
    std::optional<IntMatrix> phi;
    for_each_isometry(ga, gb, [&](const IntMatrix& m) {
      phi = m;
      return false;
    });
    if (!phi) return std::nullopt;
    for (std::size_t i = 4; i < n; ++i)
      for (std::size_t j = 4; j < n; ++j) d(i, j) = (*phi)(i - 4, j - 4);
  }
  IntMatrix sa_inv = inverse_unimodular(sa);
  IntMatrix g = sb * d * sa_inv;
  if (spinor_norm(lp, g) != 1) {
    // -1 on the first hyperbolic plane of sa keeps its plane and flips the spinor norm.
    IntMatrix c = IntMatrix::identity(n);
    c(0, 0) = -1;
    c(1, 1) = -1;
    g = g * sa * c * sa_inv;
  }
  return g;
}

struct Merge {
  std::vector<std::size_t> rep;       // new index of each node
  std::vector<IntMatrix> transfer;    // element of G2 taking the node to its representative
  std::vector<BuildingNode> kept;
  bool complete = true;
};

Merge merge_nodes(const std::vector<BuildingNode>& nodes, std::size_t dim, const std::vector<IntMatrix>& hs,
                  const Membership& in_g1, BuildingContext& ctx) {
  const Lattice& lp = ctx.maximal();
  const std::size_t n = lp.rank();
  Merge m;
  std::vector<std::size_t> kept_index;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<IntMatrix>> stab_cache;
  for (std::size_t b = 0; b < nodes.size(); ++b) {
    if (nodes[b].split.rows() == 0) throw MathError("ascent needs split bases for the nodes");
    bool joined = false;
    for (std::size_t k = 0; k < kept_index.size() && !joined; ++k) {
      const std::size_t a = kept_index[k];
      for (std::size_t hi = 0; hi < hs.size() && !joined; ++hi) {
        IntMatrix hsplit = hs[hi] * nodes[a].split;
        std::optional<IntMatrix> ghat;
        if (dim == 1)
          ghat = tau(lp, column(hsplit, 0), column(nodes[b].split, 0));
        else
          ghat = plane_transfer(lp, hsplit, nodes[b].split);
        if (!ghat) continue;
        auto& js = stab_cache[{hi, a}];
        if (js.empty()) {
          Transversal r = stab_coset_transversal(hs[hi] * nodes[a].basis, stabilizer(ctx, hsplit, dim), in_g1.fn(),
                                                 ctx.budget, in_g1.key());
          m.complete = m.complete && r.complete;
          for (const auto& x : r.representatives) js.push_back(inverse_unimodular(x));
        }
        for (const auto& j : js) {
          IntMatrix w = *ghat * j;
          if (!in_g1(w)) continue;
          m.rep.push_back(k);
          m.transfer.push_back(inverse_unimodular(w * hs[hi]));
          joined = true;
          break;
        }
      }
    }
    if (!joined) {
      m.rep.push_back(kept_index.size());
      m.transfer.push_back(IntMatrix::identity(n));
      kept_index.push_back(b);
      m.kept.push_back(nodes[b]);
    }
  }
  return m;
}

}  // namespace

TitsBuilding building_ascend(const TitsBuilding& b1, const GroupSpec& g1, const GroupSpec& g2, BuildingContext& ctx) {
  Membership in_g1(ctx, g1), in_g2(ctx, g2);
  Transversal t = coset_transversal(ctx.generators(), in_g1.fn(), ctx.budget, in_g1.key());
  std::vector<IntMatrix> hs;
  for (const auto& r : t.representatives)
    if (in_g2(r)) hs.push_back(inverse_unimodular(r));
  TitsBuilding out;
  out.group_label = describe(g2);
  out.coset_index = hs.size();
  Merge lines = merge_nodes(b1.lines, 1, hs, in_g1, ctx);
  Merge planes = merge_nodes(b1.planes, 2, hs, in_g1, ctx);
  out.complete = b1.complete && t.complete && lines.complete && planes.complete;
  out.lines = lines.kept;
  out.planes = planes.kept;
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& e : b1.edges) {
    std::size_t l = lines.rep[e.line], p = planes.rep[e.plane];
    if (!seen.emplace(l, p).second) continue;
    IntMatrix w;
    if (e.witness.rows() != 0)
      w = planes.transfer[e.plane] * e.witness * inverse_unimodular(lines.transfer[e.line]);
    out.edges.push_back({l, p, w});
  }
  std::sort(out.edges.begin(), out.edges.end(), [](const BuildingEdge& a, const BuildingEdge& b) {
    return std::pair(a.line, a.plane) < std::pair(b.line, b.plane);
  });
  return out;
}

bool verify_building(const TitsBuilding& b, const Lattice& lp) {
  for (const auto* nodes : {&b.lines, &b.planes}) {
    const std::size_t dim = nodes == &b.lines ? 1 : 2;
    for (const auto& v : *nodes) {
      if (v.basis.cols() != dim || canonical_subspace(v.basis) != v.basis) return false;
      IntMatrix g = v.basis.transpose() * lp.gram() * v.basis;
      for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j)
          if (g(i, j) != 0) return false;
    }
  }
  for (const auto& e : b.edges) {
    if (e.line >= b.lines.size() || e.plane >= b.planes.size()) return false;
    if (e.witness.rows() == 0) continue;
    if (!is_isometry(lp, e.witness)) return false;
    const IntMatrix& p = b.planes[e.plane].basis;
    IntVector x = e.witness * column(b.lines[e.line].basis, 0);
    IntMatrix both = IntMatrix::from_columns({column(p, 0), column(p, 1), x}, lp.rank());
    if (canonical_subspace(both) != p) return false;
  }
  return true;
}

std::string to_dot(const TitsBuilding& b) {
  std::ostringstream os;
  os << "graph building {\n";
  os << "  node [shape=circle, width=0.3, fixedsize=true];\n";
  for (std::size_t i = 0; i < b.lines.size(); ++i)
    os << "  p" << i << " [label=\"" << i << "\", style=filled, fillcolor=black, fontcolor=white];\n";
  for (std::size_t i = 0; i < b.planes.size(); ++i)
    os << "  c" << i << " [label=\"" << i << "\", style=filled, fillcolor=white];\n";
  for (const auto& e : b.edges) os << "  p" << e.line << " -- c" << e.plane << ";\n";
  os << "}\n";
  return os.str();
}

namespace {

void write_node(std::ostream& os, const char* kind, std::size_t i, const BuildingNode& v) {
  os << kind << " " << i;
  for (std::size_t j = 0; j < v.basis.cols(); ++j) os << " " << to_string(column(v.basis, j));
  os << "\n";
}

}  // namespace

std::string serialize(const TitsBuilding& b) {
  std::ostringstream os;
  os << "orthlat-building 1\n";
  os << "group " << b.group_label << "\n";
  os << "complete " << (b.complete ? 1 : 0) << "\n";
  os << "index " << b.coset_index << "\n";
  os << "lines " << b.lines.size() << "\n";
  for (std::size_t i = 0; i < b.lines.size(); ++i) write_node(os, "line", i, b.lines[i]);
  os << "planes " << b.planes.size() << "\n";
  for (std::size_t i = 0; i < b.planes.size(); ++i) write_node(os, "plane", i, b.planes[i]);
  os << "edges " << b.edges.size() << "\n";
  for (const auto& e : b.edges) os << "edge " << e.line << " " << e.plane << "\n";
  return os.str();
}

TitsBuilding parse_building(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  auto fail = [](const std::string& why) { return ParseError("building document: " + why, 0); };
  if (!std::getline(is, line) || line != "orthlat-building 1") throw fail("missing or unsupported header");
  TitsBuilding b;
  std::size_t expected_lines = 0, expected_planes = 0, expected_edges = 0;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string word;
    ls >> word;
    if (word == "group") {
      std::getline(ls >> std::ws, b.group_label);
    } else if (word == "complete") {
      int c;
      ls >> c;
      b.complete = c != 0;
    } else if (word == "index") {
      ls >> b.coset_index;
    } else if (word == "lines") {
      ls >> expected_lines;
    } else if (word == "planes") {
      ls >> expected_planes;
    } else if (word == "edges") {
      ls >> expected_edges;
    } else if (word == "line" || word == "plane") {
      std::size_t i;
      ls >> i;
      auto& nodes = word == "line" ? b.lines : b.planes;
      if (i != nodes.size()) throw fail("node labels out of order");
      std::vector<IntVector> cols;
      std::string v;
      while (ls >> v) cols.push_back(to_int(parse_vector(v)));
      if (cols.empty()) throw fail("node without basis");
      nodes.push_back({IntMatrix::from_columns(cols, cols.front().size()), IntMatrix()});
    } else if (word == "edge") {
      BuildingEdge e;
      ls >> e.line >> e.plane;
      if (!ls) throw fail("bad edge line");
      b.edges.push_back(e);
    } else {
      throw fail("unknown record '" + word + "'");
    }
  }
  if (b.lines.size() != expected_lines || b.planes.size() != expected_planes || b.edges.size() != expected_edges)
    throw fail("counts do not match the records");
  return b;
}

}  // namespace orthlat
