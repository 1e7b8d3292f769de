#include "orthlat/ogroup.hpp"

#include <algorithm>

#include "orthlat/isometry.hpp"

namespace orthlat {

namespace {

RatVector col(const RatMatrix& m, std::size_t j) { return m.column(j); }

RatVector sub(const RatVector& a, const RatVector& b) {
  RatVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

RatVector add(const RatVector& a, const RatVector& b) {
  RatVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

bool is_zero(const RatVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rat& x) { return x == 0; });
}

int sign_of_reflection(const Rat& norm) { return norm < 0 ? 1 : -1; }

// Embeds a square matrix on the coordinates [offset, offset + m.rows()).
IntMatrix pad(const IntMatrix& m, std::size_t offset, std::size_t n) {
  IntMatrix r = IntMatrix::identity(n);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(offset + i, offset + j) = m(i, j);
  return r;
}

IntVector unit(std::size_t n, std::size_t i) {
  IntVector v(n);
  v[i] = 1;
  return v;
}

IntMatrix minus_identity(std::size_t n) { return scaled(IntMatrix::identity(n), Int(-1)); }

// S g S^{-1} for unimodular S.
IntMatrix conjugate_back(const IntMatrix& s, const IntMatrix& g) { return s * g * inverse_unimodular(s); }

}  // namespace

bool is_isometry(const Lattice& l, const RatMatrix& m) {
  if (m.rows() != l.rank() || m.cols() != l.rank()) return false;
  RatMatrix g = to_rat(l.gram());
  return m.transpose() * g * m == g;
}

bool is_isometry(const Lattice& l, const IntMatrix& m) {
  if (m.rows() != l.rank() || m.cols() != l.rank()) return false;
  return m.transpose() * l.gram() * m == l.gram();
}

RatMatrix reflection(const Lattice& l, const RatVector& w) {
  const std::size_t n = l.rank();
  if (w.size() != n) throw MathError("reflection vector has wrong length");
  Rat ww = l.norm(w);
  if (ww == 0) throw MathError("cannot reflect in an isotropic vector");
  RatMatrix g = to_rat(l.gram());
  RatVector row(n);  // w^T G
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) row[j] += w[i] * g(i, j);
  RatMatrix r = RatMatrix::identity(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) r(i, j) -= Rat(2) * w[i] * row[j] / ww;
  return r;
}

bool reflection_is_integral(const Lattice& l, const IntVector& w) {
  Int ww = l.norm(w);
  if (ww == 0) return false;
  for (const auto& x : l.dual_row(w))
    if ((Int(2) * x) % ww != 0) return false;
  return true;
}

IntMatrix integral_reflection(const Lattice& l, const IntVector& w) {
  if (!reflection_is_integral(l, w)) throw MathError("reflection does not preserve the lattice");
  return to_int(reflection(l, to_rat(w)));
}

int spinor_norm(const Lattice& l, const RatMatrix& g) {
  if (!is_isometry(l, g)) throw MathError("spinor norm of a non-isometry");
  const std::size_t n = l.rank();
  Diagonalization dg = congruent_diagonalize(to_rat(l.gram()));
  RatMatrix h = g;
  int sign = 1;
  auto apply_reflection = [&](const RatVector& w) {
    h = reflection(l, w) * h;
    sign *= sign_of_reflection(l.norm(w));
  };
  for (std::size_t i = 0; i < n; ++i) {
    RatVector b = col(dg.P, i);
    RatVector hb = h * b;
    RatVector u = sub(hb, b);
    if (is_zero(u)) continue;
    if (l.norm(u) != 0) {
      apply_reflection(u);
    } else {
      // h b + b is anisotropic here; the second reflection fixes the sign of b.
      apply_reflection(add(hb, b));
      apply_reflection(b);
    }
  }
  if (h != RatMatrix::identity(n)) throw MathError("reflection decomposition failed");
  return sign;
}

int spinor_norm(const Lattice& l, const IntMatrix& g) { return spinor_norm(l, to_rat(g)); }

FqfMap disc_action(const DiscGroup& d, const RatMatrix& g) {
  FqfMap f;
  f.domain_orders = d.orders;
  f.codomain_orders = d.orders;
  std::vector<IntVector> cols;
  for (const auto& lift : d.lifts) cols.push_back(d.coordinates(g * lift));
  f.images = IntMatrix::from_columns(cols, d.size());
  return f;
}

FqfMap disc_action(const Lattice& l, const RatMatrix& g) {
  if (!is_integral(g) || !is_isometry(l, g)) throw MathError("disc action needs an integral isometry");
  return disc_action(discriminant_group(l), g);
}

IntMatrix eichler_transvection(const Lattice& l, const IntVector& e, const IntVector& a) {
  const std::size_t n = l.rank();
  if (e.size() != n || a.size() != n) throw MathError("transvection vectors have wrong length");
  if (l.norm(e) != 0) throw MathError("transvection needs an isotropic vector");
  if (l.inner(e, a) != 0) throw MathError("transvection needs (e,a) = 0");
  Int half = l.norm(a) / 2;
  IntVector ae = l.dual_row(a), ee = l.dual_row(e);
  IntMatrix t = IntMatrix::identity(n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) t(i, j) += -ae[j] * e[i] + ee[j] * a[i] - half * ee[j] * e[i];
  return t;
}

IntMatrix sl2_embed(const IntMatrix& z, Side side, std::size_t rank) {
  if (z.rows() != 2 || z.cols() != 2) throw MathError("SL2 element must be 2x2");
  if (determinant(z) != 1) throw MathError("SL2 element must have determinant 1");
  if (rank < 4) throw MathError("ambient lattice must contain 2U");
  const Int a = z(0, 0), b = z(0, 1), c = z(1, 0), d = z(1, 1);
  IntMatrix blk;
  if (side == Side::left)
    blk = IntMatrix{{d, 0, c, 0}, {0, a, 0, -b}, {b, 0, a, 0}, {0, -c, 0, d}};
  else
    blk = IntMatrix{{d, 0, 0, -c}, {0, a, b, 0}, {0, c, d, 0}, {-b, 0, 0, a}};
  return pad(blk, 0, rank);
}

std::vector<IntMatrix> generators_Oplus_split(const Lattice& l, const std::vector<IntMatrix>& gens_l1) {
  const std::size_t n = l.rank();
  const IntMatrix& g = l.gram();
  if (n < 2 || g(0, 0) != 0 || g(1, 1) != 0 || g(0, 1) != 1)
    throw MathError("lattice does not split U on its first coordinates");
  for (std::size_t j = 2; j < n; ++j)
    if (g(0, j) != 0 || g(1, j) != 0) throw MathError("lattice does not split U on its first coordinates");
  std::vector<IntMatrix> out;
  for (std::size_t j = 2; j < n; ++j) {
    out.push_back(eichler_transvection(l, unit(n, 0), unit(n, j)));
    out.push_back(eichler_transvection(l, unit(n, 1), unit(n, j)));
  }
  for (const auto& h : gens_l1) {
    if (h.rows() != n - 2) throw MathError("generator of L1 has wrong size");
    out.push_back(pad(h, 2, n));
  }
  out.push_back(minus_identity(n));
  return out;
}

namespace {

// Gram of Lp in the basis S, checked to be U + U + L0.
Lattice split_lattice(const Lattice& lp, const IntMatrix& s) {
  const std::size_t n = lp.rank();
  if (s.rows() != n || s.cols() != n || abs(determinant(s)) != 1)
    throw MathError("split basis must be unimodular");
  IntMatrix g = s.transpose() * lp.gram() * s;
  if (n < 4) throw MathError("split basis needs 2U");
  for (std::size_t p = 0; p < 4; p += 2) {
    if (g(p, p) != 0 || g(p + 1, p + 1) != 0 || g(p, p + 1) != 1)
      throw MathError("split basis does not start with 2U");
    for (std::size_t j = 0; j < n; ++j)
      if (j != p && j != p + 1 && (g(p, j) != 0 || g(p + 1, j) != 0))
        throw MathError("split basis does not start with 2U");
  }
  return Lattice(g);
}

}  // namespace

std::vector<IntMatrix> stab_line_generators(const Lattice& lp, const IntMatrix& s,
                                            const std::vector<IntMatrix>& gens_l1p) {
  Lattice ls = split_lattice(lp, s);
  const std::size_t n = ls.rank();
  std::vector<IntMatrix> out;
  for (std::size_t j = 2; j < n; ++j) out.push_back(eichler_transvection(ls, unit(n, 0), unit(n, j)));
  for (const auto& h : gens_l1p) {
    if (h.rows() != n - 2) throw MathError("generator of L1' has wrong size");
    out.push_back(pad(h, 2, n));
  }
  out.push_back(minus_identity(n));
  for (auto& g : out) g = conjugate_back(s, g);
  return out;
}

std::vector<IntMatrix> stab_plane_generators(const Lattice& lp, const IntMatrix& s,
                                             const std::vector<IntMatrix>& gens_l0) {
  Lattice ls = split_lattice(lp, s);
  const std::size_t n = ls.rank();
  std::vector<IntMatrix> out;
  out.push_back(eichler_transvection(ls, unit(n, 0), unit(n, 3)));
  out.push_back(eichler_transvection(ls, unit(n, 1), unit(n, 2)));
  out.push_back(eichler_transvection(ls, unit(n, 0), unit(n, 2)));
  for (std::size_t j = 4; j < n; ++j) {
    out.push_back(eichler_transvection(ls, unit(n, 0), unit(n, j)));
    out.push_back(eichler_transvection(ls, unit(n, 2), unit(n, j)));
  }
  for (const auto& h : gens_l0) {
    if (h.rows() != n - 4) throw MathError("generator of L0' has wrong size");
    out.push_back(pad(h, 4, n));
  }
  out.push_back(minus_identity(n));
  for (auto& g : out) g = conjugate_back(s, g);
  return out;
}

std::vector<IntMatrix> definite_generators(const Lattice& l0) {
  if (l0.rank() == 0) return {};
  return iso_definite(l0.gram(), l0.gram());
}

std::vector<Int> candidate_root_norms(const Lattice& l) {
  DiscGroup d = discriminant_group(l);
  Int exponent = d.orders.empty() ? Int(1) : d.orders.back();
  std::vector<Int> out;
  for (Int e = 1; e <= exponent; ++e)
    if (exponent % e == 0) out.push_back(Int(-2) * e);
  return out;
}

namespace {

bool is_root(const Lattice& l, const IntVector& v) {
  return l.norm(v) < 0 && is_primitive(v) && reflection_is_integral(l, v);
}

// Integral c with r . c = gcd(r).
IntVector bezout_vector(const IntVector& r) {
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

// Generalized cross product of the rows of an (n-1) x n matrix.
IntVector cross(const IntMatrix& m) {
  const std::size_t n = m.cols();
  IntVector p(n);
  for (std::size_t j = 0; j < n; ++j) {
    IntMatrix minor(n - 1, n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i)
      for (std::size_t k = 0, c = 0; k < n; ++k)
        if (k != j) minor(i, c++) = m(i, k);
    p[j] = (j % 2 == 0 ? 1 : -1) * determinant(minor);
  }
  return p;
}

void for_each_subset(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& f) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  if (k > n) return;
  for (;;) {
    f(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

std::size_t rank_of(const std::vector<IntVector>& vs, std::size_t n) {
  if (vs.empty()) return 0;
  std::vector<RatVector> rows;
  for (const auto& v : vs) rows.push_back(to_rat(v));
  RatMatrix m(rows.size(), n);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = rows[i][j];
  return rank(m);
}

// Simple roots of the root system of the definite lattice x0-perp.
std::vector<IntVector> stabilizer_simple_roots(const Lattice& l, const IntVector& x0, const std::vector<Int>& norms) {
  Complement k = orthogonal_complement(l, x0);
  if (k.basis.cols() == 0) return {};
  Int bound = 0;
  for (const auto& k2 : norms) bound = std::max(bound, Int(-k2));
  std::vector<IntVector> positive;
  for (const auto& s : short_vectors(k.gram, bound)) {
    IntVector v = k.basis * s.v;
    Int nv = l.norm(v);
    if (std::find(norms.begin(), norms.end(), nv) == norms.end() || !is_root(l, v)) continue;
    // Positive: first nonzero coordinate positive in L coordinates.
    auto it = std::find_if(v.begin(), v.end(), [](const Int& x) { return x != 0; });
    if (*it < 0)
      for (auto& x : v) x = -x;
    positive.push_back(v);
  }
  Int big = 1;
  for (const auto& v : positive)
    for (const auto& x : v) big = std::max(big, Int(2 * abs(x) + 1));
  auto height = [&](const IntVector& v) {
    Int h = 0;
    for (const auto& x : v) h = h * big + x;
    return h;
  };
  std::sort(positive.begin(), positive.end(),
            [&](const IntVector& a, const IntVector& b) { return height(a) < height(b); });
  std::vector<IntVector> simple;
  const std::size_t n = l.rank();
  for (const auto& r : positive) {
    bool in_cone = false;
    if (!simple.empty()) {
      RatMatrix a(n, simple.size());
      for (std::size_t j = 0; j < simple.size(); ++j)
        for (std::size_t i = 0; i < n; ++i) a(i, j) = simple[j][i];
      RatVector c;
      if (solve(a, to_rat(r), c))
        in_cone = std::all_of(c.begin(), c.end(), [](const Rat& x) { return x >= 0; });
    }
    if (!in_cone) simple.push_back(r);
  }
  return simple;
}

// Roots v with (x0,v) = m and v^2 = -k, sorted.
std::vector<IntVector> roots_at_level(const Lattice& l, const IntVector& x0, const Complement& perp,
                                      const Int& m, const Int& k) {
  IntVector r = l.dual_row(x0);
  Int d = gcd_of(r);
  if (m % d != 0) return {};
  IntVector vp = bezout_vector(r);
  for (auto& x : vp) x *= m / d;
  Rat x0sq = Rat(l.norm(x0));
  RatVector w = to_rat(vp);
  for (std::size_t i = 0; i < w.size(); ++i) w[i] -= Rat(m) / x0sq * Rat(x0[i]);
  RatVector z;
  if (!solve(to_rat(perp.basis), w, z)) throw MathError("level vector outside the complement");
  for (auto& x : z) x = -x;
  IntMatrix a = scaled(perp.gram, Int(-1));
  Rat bound = Rat(k) + Rat(m * m) / x0sq;
  std::vector<IntVector> out;
  enumerate_ellipsoid(a, z, bound, [&](const IntVector& c) {
    IntVector v = vp;
    IntVector bc = perp.basis * c;
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += bc[i];
    if (l.norm(v) == -k && is_root(l, v)) out.push_back(v);
  });
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

bool has_finite_volume(const Lattice& l, const std::vector<IntVector>& roots, const IntVector& x0) {
  const std::size_t n = l.rank();
  if (rank_of(roots, n) < n) return false;
  std::vector<IntVector> rows;
  for (const auto& v : roots) rows.push_back(l.dual_row(v));
  bool ok = true;
  for_each_subset(roots.size(), n - 1, [&](const std::vector<std::size_t>& idx) {
    if (!ok) return;
    IntMatrix m(n - 1, n);
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = rows[idx[i]][j];
    IntVector p = cross(m);
    if (std::all_of(p.begin(), p.end(), [](const Int& x) { return x == 0; })) return;
    bool nonneg = true, nonpos = true;
    for (const auto& v : roots) {
      Int s = l.inner(p, v);
      if (s < 0) nonneg = false;
      if (s > 0) nonpos = false;
    }
    if (!nonneg && !nonpos) return;  // not an edge of the chamber cone
    if (!nonneg)
      for (auto& x : p) x = -x;
    if (l.norm(p) < 0 || l.inner(p, x0) <= 0) ok = false;
  });
  return ok;
}

VinbergResult vinberg_roots(const Lattice& l, const IntVector& x0_in, const VinbergOptions& opts) {
  if (l.positive() != 1 || l.rank() > 5) throw MathError("Vinberg's algorithm needs signature (1,n) with n <= 4");
  if (l.norm(x0_in) <= 0) throw MathError("base vector must have positive norm");
  IntVector x0 = primitive_part(to_rat(x0_in));
  std::vector<Int> norms = opts.norms.empty() ? candidate_root_norms(l) : opts.norms;
  for (const auto& k : norms)
    if (k >= 0) throw MathError("root norms must be negative");

  VinbergResult res;
  if (opts.stabilizer_roots.empty()) {
    res.roots = stabilizer_simple_roots(l, x0, norms);
  } else {
    for (const auto& v : opts.stabilizer_roots)
      if (l.inner(v, x0) != 0 || !is_root(l, v)) throw MathError("supplied stabilizer root is invalid");
    res.roots = opts.stabilizer_roots;
  }

  struct Level {
    Rat t;
    Int m, k;
  };
  std::vector<Level> levels;
  for (long m = 1; m <= opts.max_level_numerator; ++m)
    for (const auto& k : norms) levels.push_back({Rat(Int(m) * m, -k), Int(m), Int(-k)});
  std::stable_sort(levels.begin(), levels.end(), [](const Level& a, const Level& b) { return a.t < b.t; });

  Complement perp = orthogonal_complement(l, x0);
  if (has_finite_volume(l, res.roots, x0)) {
    res.terminated = true;
    return res;
  }
  for (std::size_t i = 0; i < levels.size(); ++i) {
    for (const auto& v : roots_at_level(l, x0, perp, levels[i].m, levels[i].k)) {
      bool fits = std::all_of(res.roots.begin(), res.roots.end(),
                              [&](const IntVector& r) { return l.inner(v, r) >= 0; });
      if (fits) res.roots.push_back(v);
    }
    if (res.roots.size() > opts.budget) return res;
    bool level_done = i + 1 == levels.size() || levels[i + 1].t != levels[i].t;
    if (level_done && has_finite_volume(l, res.roots, x0)) {
      res.terminated = true;
      return res;
    }
  }
  return res;
}

std::vector<IntMatrix> chamber_symmetries(const Lattice& l, const std::vector<IntVector>& roots) {
  const std::size_t n = l.rank(), r = roots.size();
  std::vector<std::size_t> basis_idx;
  std::vector<IntVector> chosen;
  for (std::size_t i = 0; i < r && chosen.size() < n; ++i) {
    chosen.push_back(roots[i]);
    if (rank_of(chosen, n) == chosen.size())
      basis_idx.push_back(i);
    else
      chosen.pop_back();
  }
  if (basis_idx.size() < n) throw MathError("chamber walls do not span the space");
  RatMatrix src(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) src(i, j) = roots[basis_idx[j]][i];
  RatMatrix src_inv = inverse(src);

  std::vector<IntMatrix> out;
  std::vector<std::size_t> perm(r);
  std::vector<bool> used(r, false);
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == r) {
      RatMatrix dst(n, n);
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) dst(k, j) = roots[perm[basis_idx[j]]][k];
      RatMatrix g = dst * src_inv;
      if (!is_integral(g)) return;
      IntMatrix gi = to_int(g);
      if (!is_isometry(l, gi) || gi == IntMatrix::identity(n)) return;
      for (std::size_t j = 0; j < r; ++j)
        if (gi * roots[j] != roots[perm[j]]) return;
      out.push_back(gi);
      return;
    }
    for (std::size_t c = 0; c < r; ++c) {
      if (used[c] || l.norm(roots[c]) != l.norm(roots[i])) continue;
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j) ok = l.inner(roots[c], roots[perm[j]]) == l.inner(roots[i], roots[j]);
      if (!ok) continue;
      used[c] = true;
      perm[i] = c;
      self(self, i + 1);
      used[c] = false;
    }
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<IntMatrix> lorentzian_generators(const Lattice& l) {
  const std::size_t n = l.rank();
  if (n < 2 || l.gram()(0, 0) != 0 || l.gram()(1, 1) != 0 || l.gram()(0, 1) != 1)
    throw MathError("lattice must start with U");
  IntVector x0(n);
  x0[0] = x0[1] = 1;
  std::vector<IntMatrix> gens;
  if (n == 2) {
    // O+(U) is generated by the reflection in e - f.
    gens.push_back(integral_reflection(l, IntVector{1, -1}));
    return gens;
  }
  VinbergResult vr = vinberg_roots(l, x0);
  if (!vr.terminated) throw MathError("Vinberg's algorithm did not terminate within its budget");
  for (const auto& v : vr.roots) gens.push_back(integral_reflection(l, v));
  for (const auto& g : chamber_symmetries(l, vr.roots)) gens.push_back(g);
  return gens;
}

GroupSpec make_group_spec(const Lattice& l, const std::string& flags) {
  GroupSpec s;
  s.ambient = l;
  std::string f = flags;
  s.disc = DiscCondition::any;
  if (!f.empty() && f[0] == '~') {
    s.disc = DiscCondition::trivial;
    f = f.substr(1);
  }
  if (f == "O") {
    s.require_spinor_positive = false;
  } else if (f == "O+") {
  } else if (f == "SO") {
    s.require_det_one = true;
    s.require_spinor_positive = false;
  } else if (f == "SO+") {
    s.require_det_one = true;
  } else {
    throw MathError("unknown group flags '" + flags + "'");
  }
  return s;
}

std::string describe(const GroupSpec& spec) {
  std::string s = spec.disc == DiscCondition::trivial ? "~" : "";
  s += spec.require_det_one ? "SO" : "O";
  if (spec.require_spinor_positive) s += "+";
  if (spec.disc == DiscCondition::in_subgroup) s += "_A";
  return s;
}

bool is_member(const GroupSpec& spec, const RatMatrix& g) {
  const Lattice& l = spec.ambient;
  if (!is_isometry(l, g)) return false;
  if (spec.require_integral && !is_integral(g)) return false;
  if (spec.require_det_one && determinant(g) != 1) return false;
  if (spec.require_spinor_positive && spinor_norm(l, g) != 1) return false;
  if (spec.disc == DiscCondition::any) return true;
  if (!is_integral(g)) return false;
  if (!spec.disc_group) spec.disc_group = std::make_shared<DiscGroup>(discriminant_group(l));
  FqfMap f = disc_action(*spec.disc_group, g);
  if (spec.disc == DiscCondition::trivial) return f.is_identity();
  if (!spec.subgroup_closure)
    spec.subgroup_closure = std::make_shared<std::set<IntMatrix>>(closure(spec.subgroup, spec.disc_group->orders));
  return spec.subgroup_closure->count(f.images) > 0;
}

bool is_member(const GroupSpec& spec, const IntMatrix& g) { return is_member(spec, to_rat(g)); }

}  // namespace orthlat
