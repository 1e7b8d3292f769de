#include "orthlat/linalg.hpp"

#include <algorithm>
#include <utility>

namespace orthlat {

namespace {

Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

// Smith form of a single row by a right-to-left gcd sweep: the pivot is the
// last nonzero column and every other column is cleared against it, keeping
// the original column order for the kernel part of Q.
SmithForm row_smith(const IntMatrix& a) {
  const std::size_t n = a.cols();
  SmithForm s{IntMatrix::identity(1), IntMatrix(1, n), IntMatrix::identity(n)};
  IntVector v = a.row(0);
  std::size_t p = n;
  for (std::size_t j = n; j-- > 0;)
    if (v[j] != 0) {
      p = j;
      break;
    }
  if (p == n) return s;

  IntMatrix q = IntMatrix::identity(n);
  if (v[p] < 0) {
    v[p] = -v[p];
    q.negate_col(p);
  }
  for (std::size_t j = p; j-- > 0;) {
    if (v[j] == 0) continue;
    if (v[j] % v[p] == 0) {
      Int k = -(v[j] / v[p]);
      q.add_col(j, p, k);
      v[j] = 0;
      continue;
    }
    Bezout b = bezout(v[j], v[p]);
    Int aj = v[j] / b.g, ap = v[p] / b.g;
    IntVector cj = q.column(j), cp = q.column(p);
    IntVector pivot(n), kernel(n);
    for (std::size_t i = 0; i < n; ++i) {
      pivot[i] = b.u * cj[i] + b.v * cp[i];
      kernel[i] = ap * cj[i] - aj * cp[i];
    }
    q.set_column(p, pivot);
    q.set_column(j, kernel);
    v[p] = b.g;
    v[j] = 0;
  }
  // Pivot first, remaining columns in original order.
  std::vector<IntVector> cols;
  cols.push_back(q.column(p));
  for (std::size_t j = 0; j < n; ++j)
    if (j != p) cols.push_back(q.column(j));
  s.Q = IntMatrix::from_columns(cols, n);
  s.D(0, 0) = v[p];
  return s;
}

}  // namespace

RatMatrix to_rat(const IntMatrix& m) {
  RatMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rat(m(i, j));
  return r;
}

RatVector to_rat(const IntVector& v) {
  RatVector r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = Rat(v[i]);
  return r;
}

bool is_integral(const RatMatrix& m) {
  for (const auto& x : m.data())
    if (x.get_den() != 1) return false;
  return true;
}

bool is_integral(const RatVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rat& x) { return x.get_den() == 1; });
}

IntMatrix to_int(const RatMatrix& m) {
  IntMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j).get_den() != 1) throw MathError("matrix is not integral");
      r(i, j) = m(i, j).get_num();
    }
  return r;
}

IntVector to_int(const RatVector& v) {
  IntVector r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].get_den() != 1) throw MathError("vector is not integral");
    r[i] = v[i].get_num();
  }
  return r;
}

IntMatrix block_diagonal(const std::vector<IntMatrix>& blocks) {
  std::size_t n = 0;
  for (const auto& b : blocks) n += b.rows();
  IntMatrix m(n, n);
  std::size_t off = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) m(off + i, off + j) = b(i, j);
    off += b.rows();
  }
  return m;
}

bool is_symmetric(const IntMatrix& m) {
  if (m.rows() != m.cols()) return false;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i + 1; j < m.cols(); ++j)
      if (m(i, j) != m(j, i)) return false;
  return true;
}

Int determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw MathError("determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  // Bareiss fraction-free elimination.
  IntMatrix a = m;
  Int sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        a(i, j) = a(k, k) * a(i, j) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), a(i, j).get_mpz_t(), prev.get_mpz_t());
      }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

Rat determinant(const RatMatrix& m) {
  if (m.rows() != m.cols()) throw MathError("determinant of non-square matrix");
  RatMatrix a = m;
  const std::size_t n = a.rows();
  Rat det = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a(p, k) == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      a.swap_rows(k, p);
      det = -det;
    }
    det *= a(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a(i, k) == 0) continue;
      Rat f = a(i, k) / a(k, k);
      a.add_row(i, k, -f);
    }
  }
  return det;
}

RatMatrix inverse(const RatMatrix& m) {
  if (m.rows() != m.cols()) throw MathError("inverse of non-square matrix");
  const std::size_t n = m.rows();
  RatMatrix a = m, inv = RatMatrix::identity(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a(p, k) == 0) ++p;
    if (p == n) throw MathError("singular matrix");
    a.swap_rows(k, p);
    inv.swap_rows(k, p);
    Rat piv = a(k, k);
    for (std::size_t j = 0; j < n; ++j) {
      a(k, j) /= piv;
      inv(k, j) /= piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || a(i, k) == 0) continue;
      Rat f = -a(i, k);
      a.add_row(i, k, f);
      inv.add_row(i, k, f);
    }
  }
  return inv;
}

IntMatrix inverse_unimodular(const IntMatrix& m) { return to_int(inverse(to_rat(m))); }

namespace {
// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(RatMatrix& a) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && a(p, c) == 0) ++p;
    if (p == a.rows()) continue;
    a.swap_rows(r, p);
    Rat piv = a(r, c);
    for (std::size_t j = 0; j < a.cols(); ++j) a(r, j) /= piv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || a(i, c) == 0) continue;
      Rat f = -a(i, c);
      a.add_row(i, r, f);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}
}  // namespace

std::size_t rank(const RatMatrix& m) {
  RatMatrix a = m;
  return rref(a).size();
}

bool solve(const RatMatrix& a, const RatVector& b, RatVector& x) {
  if (b.size() != a.rows()) throw MathError("solve dimension mismatch");
  RatMatrix aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  auto pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == a.cols()) return false;
  x.assign(a.cols(), Rat(0));
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(r, a.cols());
  return true;
}

Bezout bezout(const Int& a, const Int& b) {
  Int r0 = abs(a), r1 = abs(b);
  Int s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (r1 != 0) {
    Int q = r0 / r1;
    Int tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = s0 - q * s1;
    s0 = s1;
    s1 = tmp;
    tmp = t0 - q * t1;
    t0 = t1;
    t1 = tmp;
  }
  if (a < 0) s0 = -s0;
  if (b < 0) t0 = -t0;
  return {r0, s0, t0};
}

Int gcd_of(const IntVector& v) {
  Int g = 0;
  for (const auto& x : v) g = gcd(g, x);
  return g;
}

Int lcm_of_denominators(const RatVector& v) {
  Int l = 1;
  for (const auto& x : v) l = lcm(l, Int(x.get_den()));
  return l;
}

IntVector SmithForm::divisors() const {
  IntVector d;
  for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i)
    if (D(i, i) != 0) d.push_back(D(i, i));
  return d;
}

SmithForm smith_normal_form(const IntMatrix& input) {
  const std::size_t m = input.rows(), n = input.cols();
  if (m == 1 && n > 0) return row_smith(input);
  IntMatrix a = input, p = IntMatrix::identity(m), q = IntMatrix::identity(n);
  const std::size_t lim = std::min(m, n);
  for (std::size_t t = 0; t < lim; ++t) {
    // Pivot: smallest nonzero |entry| in the trailing block.
    auto move_min_to_pivot = [&](bool whole_block) -> bool {
      std::size_t bi = m, bj = n;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j) {
          if (!whole_block && i != t && j != t) continue;
          if (a(i, j) == 0) continue;
          if (bi == m || abs(a(i, j)) < abs(a(bi, bj))) {
            bi = i;
            bj = j;
          }
        }
      if (bi == m) return false;
      a.swap_rows(t, bi);
      p.swap_rows(t, bi);
      a.swap_cols(t, bj);
      q.swap_cols(t, bj);
      return true;
    };
    if (!move_min_to_pivot(true)) break;
    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (a(i, t) == 0) continue;
        Int k = -floor_div(a(i, t), a(t, t));
        a.add_row(i, t, k);
        p.add_row(i, t, k);
        if (a(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (a(t, j) == 0) continue;
        Int k = -floor_div(a(t, j), a(t, t));
        a.add_col(j, t, k);
        q.add_col(j, t, k);
        if (a(t, j) != 0) clean = false;
      }
      if (!clean) {
        move_min_to_pivot(false);
        continue;
      }
      // Divisibility of the trailing block by the pivot.
      std::size_t bad = m;
      for (std::size_t i = t + 1; i < m && bad == m; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (a(i, j) % a(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad == m) break;
      a.add_row(t, bad, Int(1));
      p.add_row(t, bad, Int(1));
    }
    if (a(t, t) < 0) {
      a.negate_row(t);
      p.negate_row(t);
    }
  }
  return {p, a, q};
}

IntMatrix hermite_rows(const IntMatrix& input) {
  IntMatrix h = input;
  const std::size_t m = h.rows(), n = h.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    for (;;) {
      std::size_t best = m;
      for (std::size_t i = r; i < m; ++i)
        if (h(i, c) != 0 && (best == m || abs(h(i, c)) < abs(h(best, c)))) best = i;
      if (best == m) break;
      h.swap_rows(r, best);
      bool clean = true;
      for (std::size_t i = r + 1; i < m; ++i) {
        if (h(i, c) == 0) continue;
        h.add_row(i, r, Int(-floor_div(h(i, c), h(r, c))));
        if (h(i, c) != 0) clean = false;
      }
      if (clean) break;
    }
    if (r >= m || h(r, c) == 0) continue;
    if (h(r, c) < 0) h.negate_row(r);
    for (std::size_t i = 0; i < r; ++i)
      if (h(i, c) != 0) h.add_row(i, r, Int(-floor_div(h(i, c), h(r, c))));
    ++r;
  }
  return h.submatrix(0, 0, r, n);
}

Diagonalization congruent_diagonalize(const RatMatrix& g) {
  const std::size_t n = g.rows();
  if (n != g.cols()) throw MathError("congruent_diagonalize: non-square input");
  RatMatrix a = g, p = RatMatrix::identity(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t j = k + 1;
      while (j < n && a(j, j) == 0) ++j;
      if (j < n) {
        a.swap_rows(k, j);
        a.swap_cols(k, j);
        p.swap_cols(k, j);
      } else {
        j = k + 1;
        while (j < n && a(k, j) == 0) ++j;
        if (j == n) continue;  // row k already zero
        // x -> x + y: new diagonal entry 2 a(k,j) != 0.
        a.add_col(k, j, Rat(1));
        a.add_row(k, j, Rat(1));
        p.add_col(k, j, Rat(1));
      }
    }
    for (std::size_t j = k + 1; j < n; ++j) {
      if (a(k, j) == 0) continue;
      Rat c = -a(k, j) / a(k, k);
      a.add_col(j, k, c);
      a.add_row(j, k, c);
      p.add_col(j, k, c);
    }
  }
  return {p, a};
}

Inertia inertia(const RatMatrix& g) {
  auto d = congruent_diagonalize(g);
  Inertia in;
  for (std::size_t i = 0; i < d.D.rows(); ++i) {
    int s = sgn(d.D(i, i));
    if (s > 0)
      ++in.positive;
    else if (s < 0)
      ++in.negative;
    else
      ++in.zero;
  }
  return in;
}

Inertia inertia(const IntMatrix& g) { return inertia(to_rat(g)); }

std::string to_string(const Int& x) { return x.get_str(); }
std::string to_string(const Rat& x) { return x.get_str(); }

}  // namespace orthlat
