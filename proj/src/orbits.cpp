#include "orthlat/orbits.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "orthlat/isometry.hpp"

namespace orthlat {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::equivalent: return "equivalent";
    case Verdict::not_equivalent: return "not equivalent";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "";
}

namespace {

IntVector reduce_mod(IntVector x, const IntVector& orders) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] %= orders[i];
    if (x[i] < 0) x[i] += orders[i];
  }
  return x;
}

IntVector add_mod(const IntVector& a, const IntVector& b, const IntVector& orders) {
  IntVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return reduce_mod(r, orders);
}

// Subgroup of the finite abelian group with given orders generated by gens.
std::vector<IntVector> span(const std::vector<IntVector>& gens, const IntVector& orders) {
  std::set<IntVector> seen{IntVector(orders.size())};
  std::vector<IntVector> frontier{IntVector(orders.size())};
  while (!frontier.empty()) {
    std::vector<IntVector> next;
    for (const auto& x : frontier)
      for (const auto& g : gens) {
        IntVector y = add_mod(x, g, orders);
        if (seen.insert(y).second) next.push_back(y);
      }
    frontier.swap(next);
  }
  return {seen.begin(), seen.end()};
}

struct ScaleData {
  IntVector w1, w2;
  std::string failure;  // empty when the preliminary tests pass
};

// Primitive integral multiples w_i = c_i v_i and the norm and scale tests.
ScaleData scale_test(const Lattice& l, const RatVector& v1, const RatVector& v2) {
  if (v1.size() != l.rank() || v2.size() != l.rank()) throw MathError("vector has wrong length");
  if (l.norm(v1) == 0) throw MathError("v1 is isotropic");
  ScaleData s;
  s.w1 = primitive_part(v1);
  s.w2 = primitive_part(v2);
  if (l.norm(v1) != l.norm(v2)) {
    s.failure = "norms differ";
    return s;
  }
  auto factor = [](const IntVector& w, const RatVector& v) {
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i] != 0) return Rat(Rat(w[i]) / v[i]);
    return Rat(0);
  };
  if (factor(s.w1, v1) != factor(s.w2, v2)) s.failure = "scale factors differ";
  return s;
}

RatMatrix split_matrix(const IntVector& w, const IntMatrix& kb) {
  const std::size_t n = w.size();
  RatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, 0) = w[i];
    for (std::size_t j = 0; j + 1 < n; ++j) m(i, j + 1) = kb(i, j);
  }
  return m;
}

}  // namespace

IntVector GlueData::glue_coordinates(const RatVector& x) const {
  RatVector ak = split_inverse * x;
  Int ww = orders[0];
  Rat a = ak[0] * Rat(ww);
  if (a.get_den() != 1) throw MathError("vector is not in the dual lattice");
  IntVector out{a.get_num()};
  RatVector kpart(ak.begin() + 1, ak.end());
  IntVector c = d_k.coordinates(kpart);
  out.insert(out.end(), c.begin(), c.end());
  return reduce_mod(out, orders);
}

std::vector<IntVector> GlueData::h_k() const {
  std::set<IntVector> out;
  for (const auto& x : h) out.insert(IntVector(x.begin() + 1, x.end()));
  return {out.begin(), out.end()};
}

GlueData glue_data(const Lattice& l, const IntVector& w) {
  GlueData g;
  g.w = w;
  Int ww = l.norm(w);
  if (ww == 0) throw MathError("glue data needs a non-isotropic vector");
  g.k = orthogonal_complement(l, w);
  Lattice k(g.k.gram);
  g.d_k = discriminant_group(k);
  g.q_k = disc_form_of(k);
  g.orders = IntVector{abs(ww)};
  g.orders.insert(g.orders.end(), g.d_k.orders.begin(), g.d_k.orders.end());
  g.split_inverse = inverse(split_matrix(w, g.k.basis));

  const std::size_t n = l.rank();
  std::vector<IntVector> cols;
  for (std::size_t j = 0; j < n; ++j) {
    RatVector e(n);
    e[j] = 1;
    cols.push_back(g.glue_coordinates(e));
  }
  g.lambda = IntMatrix::from_columns(cols, g.orders.size());
  g.h_gens = cols;
  g.h = span(cols, g.orders);
  for (const auto& lift : discriminant_group(l).lifts) g.iota.push_back(g.glue_coordinates(lift));
  return g;
}

OrbitVerdict equiv_definite_complement(const Lattice& l, const GroupSpec& spec, const RatVector& v1,
                                       const RatVector& v2) {
  ScaleData s = scale_test(l, v1, v2);
  OrbitVerdict out;
  if (!s.failure.empty()) {
    out.verdict = Verdict::not_equivalent;
    out.reason = s.failure;
    return out;
  }
  Complement k1 = orthogonal_complement(l, s.w1);
  Complement k2 = orthogonal_complement(l, s.w2);
  if (k1.basis.cols() > 0 && !Lattice(k1.gram).is_definite())
    throw MathError("complement of v1 is indefinite; use the indefinite test");
  RatMatrix iota1_inv = inverse(split_matrix(s.w1, k1.basis));
  RatMatrix iota2 = split_matrix(s.w2, k2.basis);
  const std::size_t n = l.rank();
  auto try_psi = [&](const IntMatrix& psi) {
    RatMatrix d = RatMatrix::identity(n);
    for (std::size_t i = 0; i + 1 < n; ++i)
      for (std::size_t j = 0; j + 1 < n; ++j) d(i + 1, j + 1) = psi(i, j);
    RatMatrix theta = iota2 * d * iota1_inv;
    if (!is_member(spec, theta)) return true;
    out.verdict = Verdict::equivalent;
    out.witness = theta;
    return false;
  };
  if (n == 1) {
    try_psi(IntMatrix(0, 0));
  } else {
    for_each_isometry(k1.gram, k2.gram, try_psi);
  }
  if (!out.equivalent()) {
    out.verdict = Verdict::not_equivalent;
    out.reason = "no isometry of the complements extends into the group";
  } else if (*out.witness * v1 != v2) {
    throw MathError("internal error: witness does not map v1 to v2");
  }
  return out;
}

OrbitVerdict equiv_indefinite(const Lattice& l, const GroupSpec& spec, const RatVector& v1, const RatVector& v2) {
  OrbitVerdict out;
  ScaleData s = scale_test(l, v1, v2);
  if (!s.failure.empty()) {
    out.verdict = Verdict::not_equivalent;
    out.reason = s.failure;
    return out;
  }
  GlueData g1 = glue_data(l, s.w1), g2 = glue_data(l, s.w2);
  Lattice k1(g1.k.gram), k2(g2.k.gram);
  if (k1.is_definite()) throw MathError("complement of v1 is definite; use the definite test");
  if (k1.positive() != k2.positive() || k1.negative() != k2.negative() || iso_fqf(g1.q_k, g2.q_k).empty()) {
    out.verdict = Verdict::not_equivalent;
    out.reason = "complements are not in the same genus";
    return out;
  }
  if (unique_genus_check(k1.positive(), k1.negative(), g1.q_k) != GenusVerdict::applies) {
    out.reason = "cannot certify that the complement is unique in its genus";
    return out;
  }
  if (unique_genus_check(l.positive(), l.negative(), disc_form_of(l)) != GenusVerdict::applies) {
    out.reason = "cannot certify that O(L) -> O(D(L)) is surjective";
    return out;
  }
  if (g1.h.size() != g2.h.size()) {
    out.verdict = Verdict::not_equivalent;
    out.reason = "glue groups differ";
    return out;
  }

  // Canonical representative of x + H2.
  std::set<IntVector> h2(g2.h.begin(), g2.h.end());
  auto coset_key = [&](const IntVector& x) {
    IntVector best;
    for (const auto& h : g2.h) {
      IntVector y = add_mod(x, h, g2.orders);
      if (best.empty() || y < best) best = y;
    }
    return best;
  };
  FiniteQuadraticForm ql = disc_form_of(l);
  std::map<IntVector, IntVector> preimage;
  for (const auto& y : ql.elements()) {
    IntVector img(g2.orders.size());
    for (std::size_t j = 0; j < y.size(); ++j)
      for (Int t = 0; t < y[j]; ++t) img = add_mod(img, g2.iota[j], g2.orders);
    preimage[coset_key(img)] = y;
  }

  for_each_iso(g1.q_k, g2.q_k, [&](const FqfMap& psi) {
    auto phi = [&](const IntVector& x) {
      IntVector y{x[0]};
      IntVector kx(x.begin() + 1, x.end());
      IntVector ky = psi.apply(kx);
      y.insert(y.end(), ky.begin(), ky.end());
      return reduce_mod(y, g2.orders);
    };
    for (const auto& h : g1.h)
      if (!h2.count(phi(h))) return true;
    std::vector<IntVector> cols;
    for (const auto& x : g1.iota) {
      auto it = preimage.find(coset_key(phi(x)));
      if (it == preimage.end()) return true;
      cols.push_back(it->second);
    }
    FqfMap induced{IntMatrix::from_columns(cols, ql.size()), ql.orders, ql.orders};
    bool ok = true;
    if (spec.disc == DiscCondition::trivial) {
      ok = induced.is_identity();
    } else if (spec.disc == DiscCondition::in_subgroup) {
      if (!spec.subgroup_closure)
        spec.subgroup_closure = std::make_shared<std::set<IntMatrix>>(closure(spec.subgroup, ql.orders));
      ok = spec.subgroup_closure->count(induced.images) > 0;
    }
    if (!ok) return true;
    out.verdict = Verdict::equivalent;
    out.induced = induced;
    out.psi_bar = psi;
    return false;
  });
  if (!out.equivalent()) {
    out.verdict = Verdict::not_equivalent;
    out.reason = "no isometry of the discriminant forms respects the gluing and the disc condition";
  }
  return out;
}

OrbitVerdict upgrade_to_so_plus(const Lattice& l, const RatVector& v1, const OrbitVerdict& base, long search_radius) {
  if (base.verdict != Verdict::equivalent) return base;
  Complement k = orthogonal_complement(l, primitive_part(v1));
  auto plus = represents_norm(k.gram, 2, search_radius);
  auto minus = represents_norm(k.gram, -2, search_radius);
  if (plus.vector && minus.vector) {
    OrbitVerdict out = base;
    out.reason = "complement represents 2 and -2";
    return out;
  }
  OrbitVerdict out;
  out.reason = "complement does not visibly represent both 2 and -2";
  return out;
}

OrbitVerdict orbit_equivalent(const Lattice& l, const GroupSpec& spec, const RatVector& v1, const RatVector& v2) {
  IntVector w1 = primitive_part(v1);
  Complement k = orthogonal_complement(l, w1);
  if (k.basis.cols() == 0 || Lattice(k.gram).is_definite()) return equiv_definite_complement(l, spec, v1, v2);
  OrbitVerdict base = equiv_indefinite(l, spec, v1, v2);
  if (spec.require_det_one || spec.require_spinor_positive) return upgrade_to_so_plus(l, v1, base);
  return base;
}

}  // namespace orthlat
