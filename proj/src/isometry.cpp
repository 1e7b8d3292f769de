#include "orthlat/isometry.hpp"

#include <algorithm>
#include <cmath>

namespace orthlat {

namespace {

// Sign s with s*G positive definite; throws for indefinite input.
int definite_sign(const IntMatrix& g) {
  Inertia in = inertia(g);
  if (in.zero == 0 && in.negative == 0) return 1;
  if (in.zero == 0 && in.positive == 0) return -1;
  throw MathError("form is not definite");
}

bool first_nonzero_positive(const IntVector& v) {
  for (const auto& x : v)
    if (x != 0) return x > 0;
  return false;
}

// Fincke-Pohst enumeration of all integral x with (x-z)^T A (x-z) <= bound,
// A positive definite; the zero vector is skipped when z = 0.
void fincke_pohst(const IntMatrix& a, const RatVector& z, const Rat& bound,
                  const std::function<void(const IntVector&)>& emit) {
  const std::size_t n = a.rows();
  const bool centered = std::any_of(z.begin(), z.end(), [](const Rat& v) { return v != 0; });
  RatMatrix q = to_rat(a);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      q(j, i) = q(i, j);
      q(i, j) /= q(i, i);
    }
    for (std::size_t k = i + 1; k < n; ++k)
      for (std::size_t l = k; l < n; ++l) q(k, l) -= q(k, i) * q(i, l);
  }
  IntVector x(n);
  auto rec = [&](auto&& self, std::size_t i, const Rat& remaining) -> void {
    Rat c = 0;
    for (std::size_t j = i + 1; j < n; ++j)
      c += q(i, j) * (Rat(x[j]) - z[j]);
    c -= z[i];
    double r = std::sqrt(std::max(0.0, Rat(remaining / q(i, i)).get_d()));
    double center = -c.get_d();
    long lo = static_cast<long>(std::floor(center - r)) - 1;
    long hi = static_cast<long>(std::ceil(center + r)) + 1;
    for (long xi = lo; xi <= hi; ++xi) {
      Rat t = Rat(xi) + c;
      Rat val = q(i, i) * t * t;
      if (val > remaining) continue;
      x[i] = xi;
      if (i == 0) {
        bool zero = std::all_of(x.begin(), x.end(), [](const Int& v) { return v == 0; });
        if (!zero || centered) emit(x);
      } else {
        self(self, i - 1, remaining - val);
      }
    }
    x[i] = 0;
  };
  if (n > 0) rec(rec, n - 1, bound);
}

}  // namespace

void enumerate_ellipsoid(const IntMatrix& a, const RatVector& center, const Rat& bound,
                         const std::function<void(const IntVector&)>& emit) {
  if (center.size() != a.rows()) throw MathError("center has wrong length");
  if (definite_sign(a) != 1) throw MathError("ellipsoid form must be positive definite");
  fincke_pohst(a, center, bound, emit);
}

IntMatrix size_reduce(const IntMatrix& gram) {
  const std::size_t n = gram.rows();
  IntMatrix a = scaled(gram, Int(definite_sign(gram)));
  IntMatrix t = IntMatrix::identity(n);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j || a(i, i) == 0) continue;
        Int twice = 2 * a(i, j);
        // r = nearest integer to a_ij / a_ii
        Int r;
        Int num = twice + a(i, i), den = 2 * a(i, i);
        mpz_fdiv_q(r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        if (r == 0) continue;
        Int newnorm = a(j, j) - 2 * r * a(i, j) + r * r * a(i, i);
        if (newnorm >= a(j, j)) continue;
        t.add_col(j, i, Int(-r));
        a.add_col(j, i, Int(-r));
        a.add_row(j, i, Int(-r));
        changed = true;
      }
  }
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) { return a(x, x) < a(y, y); });
  IntMatrix sorted(n, n);
  for (std::size_t k = 0; k < n; ++k) sorted.set_column(k, t.column(idx[k]));
  return sorted;
}

std::vector<ShortVector> short_vectors(const IntMatrix& gram, const Int& bound) {
  int s = definite_sign(gram);
  IntMatrix t = size_reduce(gram);
  IntMatrix a = scaled(IntMatrix(t.transpose() * gram * t), Int(s));
  std::vector<ShortVector> out;
  fincke_pohst(a, RatVector(a.rows()), Rat(bound), [&](const IntVector& y) {
    IntVector v = t * y;
    if (!first_nonzero_positive(v)) return;
    out.push_back({v, bilinear(gram, v, v)});
  });
  std::sort(out.begin(), out.end(), [](const ShortVector& x, const ShortVector& y) { return x.v < y.v; });
  return out;
}

namespace {

std::vector<IntVector> both_signs(const std::vector<ShortVector>& sv) {
  std::vector<IntVector> out;
  for (const auto& s : sv) {
    out.push_back(s.v);
    IntVector m = s.v;
    for (auto& x : m) x = -x;
    out.push_back(m);
  }
  return out;
}

}  // namespace

IntMatrix reduced_definite_basis(const IntMatrix& gram) {
  const std::size_t n = gram.rows();
  IntMatrix t0 = size_reduce(gram);
  if (n > 4 || n == 0) return t0;
  IntMatrix g0 = t0.transpose() * gram * t0;
  Int bound = 0;
  for (std::size_t i = 0; i < n; ++i) bound = std::max(bound, Int(abs(g0(i, i))));
  std::vector<IntVector> vecs = both_signs(short_vectors(gram, bound));
  std::stable_sort(vecs.begin(), vecs.end(), [&](const IntVector& x, const IntVector& y) {
    return abs(bilinear(gram, x, x)) < abs(bilinear(gram, y, y));
  });

  std::vector<std::size_t> norm_start(vecs.size());
  for (std::size_t c = 0; c < vecs.size(); ++c) {
    std::size_t s = c;
    Int nc = abs(bilinear(gram, vecs[c], vecs[c]));
    while (s > 0 && abs(bilinear(gram, vecs[s - 1], vecs[s - 1])) == nc) --s;
    norm_start[c] = s;
  }
  std::vector<Int> best_key;
  IntMatrix best = t0;
  std::vector<std::size_t> pick(n);
  auto key_of = [&](const IntMatrix& g) {
    std::vector<Int> k;
    for (std::size_t i = 0; i < n; ++i) k.push_back(abs(g(i, i)));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) k.push_back(g(i, j));
    return k;
  };
  best_key = key_of(g0);
  auto rec = [&](auto&& self, std::size_t k, std::size_t start) -> void {
    if (k == n) {
      std::vector<IntVector> cols;
      for (auto p : pick) cols.push_back(vecs[p]);
      IntMatrix t = IntMatrix::from_columns(cols, n);
      if (abs(determinant(t)) != 1) return;
      IntMatrix g = t.transpose() * gram * t;
      auto key = key_of(g);
      if (key < best_key) {
        best_key = key;
        best = t;
      }
      return;
    }
    // Nondecreasing norms: a sorted basis never has a larger key.
    for (std::size_t c = start; c < vecs.size(); ++c) {
      pick[k] = c;
      self(self, k + 1, norm_start[c]);
    }
  };
  rec(rec, 0, 0);
  return best;
}

namespace {

void isometries_reduced(const IntMatrix& g1, const IntMatrix& g2,
                        const std::function<bool(const IntMatrix&)>& visit) {
  const std::size_t n = g1.rows();
  if (g2.rows() != n) throw MathError("isometry test: rank mismatch");
  if (n == 0) {
    visit(IntMatrix(0, 0));
    return;
  }
  int s1 = definite_sign(g1), s2 = definite_sign(g2);
  if (s1 != s2 || determinant(g1) != determinant(g2)) return;
  Int bound = 0;
  for (std::size_t i = 0; i < n; ++i) bound = std::max(bound, Int(abs(g1(i, i))));
  std::vector<IntVector> vecs = both_signs(short_vectors(g2, bound));
  std::vector<IntVector> gv;  // G2 v
  for (const auto& v : vecs) gv.push_back(g2 * v);
  std::vector<std::vector<std::size_t>> cand(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t c = 0; c < vecs.size(); ++c) {
      Int nrm = 0;
      for (std::size_t k = 0; k < n; ++k) nrm += vecs[c][k] * gv[c][k];
      if (nrm == g1(i, i)) cand[i].push_back(c);
    }
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return cand[a].size() < cand[b].size(); });

  std::vector<std::size_t> pick(n);
  IntMatrix psi(n, n);
  bool stop = false;
  auto rec = [&](auto&& self, std::size_t k) -> void {
    if (k == n) {
      if (!visit(psi)) stop = true;
      return;
    }
    std::size_t i = order[k];
    for (std::size_t c : cand[i]) {
      bool ok = true;
      for (std::size_t m = 0; m < k && ok; ++m) {
        Int ip = 0;
        for (std::size_t t = 0; t < n; ++t) ip += vecs[c][t] * gv[pick[m]][t];
        if (ip != g1(i, order[m])) ok = false;
      }
      if (!ok) continue;
      pick[k] = c;
      psi.set_column(i, vecs[c]);
      self(self, k + 1);
      if (stop) return;
    }
  };
  rec(rec, 0);
}

}  // namespace

void for_each_isometry(const IntMatrix& g1, const IntMatrix& g2,
                       const std::function<bool(const IntMatrix&)>& visit) {
  if (g1.rows() == 0 || g1.rows() != g2.rows()) {
    isometries_reduced(g1, g2, visit);
    return;
  }
  definite_sign(g1);
  // Work with a reduced basis of K1 so the candidate norms stay small.
  IntMatrix t = size_reduce(g1);
  IntMatrix t_inv = inverse_unimodular(t);
  isometries_reduced(t.transpose() * g1 * t, g2, [&](const IntMatrix& m) { return visit(m * t_inv); });
}

std::vector<IntMatrix> iso_definite(const IntMatrix& g1, const IntMatrix& g2) {
  std::vector<IntMatrix> out;
  for_each_isometry(g1, g2, [&](const IntMatrix& m) {
    out.push_back(m);
    return true;
  });
  return out;
}

bool is_isometric_definite(const IntMatrix& g1, const IntMatrix& g2) {
  bool found = false;
  for_each_isometry(g1, g2, [&](const IntMatrix&) {
    found = true;
    return false;
  });
  return found;
}

Representation represents_norm(const IntMatrix& gram, const Int& target, const Int& bound) {
  Inertia in = inertia(gram);
  const std::size_t n = gram.rows();
  if (in.positive == 0 || in.negative == 0) {
    int s = in.positive > 0 ? 1 : -1;
    if (target == 0 || sgn(target) != s) return {std::nullopt, true};
    for (const auto& sv : short_vectors(gram, abs(target)))
      if (sv.norm == target) return {sv.v, true};
    return {std::nullopt, true};
  }
  for (long r = 1; r <= bound.get_si(); ++r) {
    std::vector<long> c(n, -r);
    for (;;) {
      bool shell = std::any_of(c.begin(), c.end(), [&](long x) { return x == r || x == -r; });
      if (shell) {
        IntVector v(c.begin(), c.end());
        if (bilinear(gram, v, v) == target) return {v, false};
      }
      std::size_t k = 0;
      while (k < n && c[k] == r) c[k++] = -r;
      if (k == n) break;
      ++c[k];
    }
  }
  return {std::nullopt, false};
}

std::vector<IntMatrix> enumerate_genus_definite(std::size_t rank, bool negative, const FiniteQuadraticForm& q) {
  if (rank > 3) throw MathError("genus enumeration is limited to rank <= 3");
  const Int det = q.order();
  const Int sign = negative ? -1 : 1;
  std::vector<IntMatrix> forms;  // positive definite reduced candidates
  if (rank == 0) {
    if (det == 1) return {IntMatrix(0, 0)};
    return {};
  }
  if (rank == 1) {
    if (det % 2 == 0) forms.push_back(IntMatrix{{det}});
  } else if (rank == 2) {
    // 0 <= 2b <= a <= c, ac - b^2 = det, a^2 <= 4 det / 3.
    for (Int a = 2; 3 * a * a <= 4 * det; a += 2)
      for (Int b = 0; 2 * b <= a; ++b) {
        Int num = det + b * b;
        if (num % a != 0) continue;
        Int c = num / a;
        if (c < a || c % 2 != 0) continue;
        forms.push_back(IntMatrix{{a, b}, {b, c}});
      }
  } else {
    // |2 g_ij| <= g_ii <= g_jj and g11 g22 g33 <= 2 det.
    for (Int a = 2; a * a * a <= 2 * det; a += 2)
      for (Int b = a; a * b * b <= 2 * det; b += 2)
        for (Int c = b; a * b * c <= 2 * det; c += 2)
          for (Int x = -a / 2; x <= a / 2; ++x)
            for (Int y = -a / 2; y <= a / 2; ++y)
              for (Int z = -b / 2; z <= b / 2; ++z) {
                IntMatrix g{{a, x, y}, {x, b, z}, {y, z, c}};
                if (determinant(g) != det) continue;
                if (inertia(g).positive != 3) continue;
                forms.push_back(g);
              }
  }
  std::vector<IntMatrix> classes;
  for (const auto& f : forms) {
    IntMatrix g = scaled(f, sign);
    if (iso_fqf(disc_form_of(Lattice(g)), q).empty()) continue;
    bool known = false;
    for (const auto& c : classes)
      if (is_isometric_definite(g, c)) known = true;
    if (!known) classes.push_back(g);
  }
  return classes;
}

}  // namespace orthlat
