#include "orthlat/lattice.hpp"

#include <cctype>
#include <optional>
#include <set>

#include "orthlat/discform.hpp"
#include "orthlat/isometry.hpp"

namespace orthlat {

Lattice::Lattice(IntMatrix gram) : gram_(std::move(gram)) {
  if (!is_symmetric(gram_)) throw MathError("Gram matrix is not symmetric");
  for (std::size_t i = 0; i < gram_.rows(); ++i)
    if (gram_(i, i) % 2 != 0) throw MathError("lattice is not even: odd diagonal entry");
  det_ = determinant(gram_);
  if (det_ == 0) throw MathError("Gram matrix is degenerate");
  Inertia in = inertia(gram_);
  pos_ = in.positive;
  neg_ = in.negative;
}

Rat Lattice::inner(const RatVector& x, const RatVector& y) const {
  Rat s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < y.size(); ++j) s += x[i] * gram_(i, j) * y[j];
  }
  return s;
}

IntVector Lattice::dual_row(const IntVector& x) const { return gram_.transpose() * x; }

Lattice hyperbolic_plane(const Int& scale) { return Lattice(IntMatrix{{0, scale}, {scale, 0}}); }

Lattice root_lattice_A(std::size_t n) {
  if (n == 0) throw MathError("A_0 is empty");
  IntMatrix g(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    g(i, i) = -2;
    if (i + 1 < n) g(i, i + 1) = g(i + 1, i) = -1;
  }
  return Lattice(g);
}

Lattice rank_one(const Int& d) { return Lattice(IntMatrix{{d}}); }

Lattice direct_sum(const std::vector<Lattice>& parts) {
  std::vector<IntMatrix> blocks;
  for (const auto& p : parts) blocks.push_back(p.gram());
  return Lattice(block_diagonal(blocks));
}

Lattice rescaled(const Lattice& l, const Int& m) { return Lattice(scaled(l.gram(), m)); }

namespace {

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  Lattice expr() {
    std::vector<Lattice> parts;
    for (;;) {
      auto t = term();
      parts.insert(parts.end(), t.begin(), t.end());
      skip();
      if (pos_ == s_.size()) break;
      expect('+');
    }
    return direct_sum(parts);
  }

  RatVector vector() {
    RatVector v;
    expect('(');
    skip();
    if (peek() == ')') {
      ++pos_;
      return v;
    }
    for (;;) {
      Int num = integer();
      Int den = 1;
      skip();
      if (peek() == '/') {
        ++pos_;
        den = integer();
        if (den == 0) fail("zero denominator");
      }
      Rat r(num, den);
      r.canonicalize();
      v.push_back(r);
      skip();
      if (peek() == ',') {
        ++pos_;
        continue;
      }
      expect(')');
      break;
    }
    return v;
  }

  IntMatrix matrix() {
    std::vector<IntVector> rows;
    expect('[');
    for (;;) {
      expect('[');
      IntVector row;
      for (;;) {
        row.push_back(integer());
        skip();
        if (peek() == ',') {
          ++pos_;
          continue;
        }
        expect(']');
        break;
      }
      rows.push_back(row);
      skip();
      if (peek() == ',') {
        ++pos_;
        continue;
      }
      expect(']');
      break;
    }
    IntMatrix m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols()) fail("ragged matrix");
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  void finish() {
    skip();
    if (pos_ != s_.size()) fail("trailing input");
  }

 private:
  std::vector<Lattice> term() {
    skip();
    long count = 1;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      count = integer().get_si();
      skip();
      if (peek() == '*') ++pos_;
      if (count < 1) fail("multiplicity must be positive");
    }
    skip();
    std::size_t start = pos_;
    Lattice base;
    try {
      base = base_term();
      skip();
      if (peek() == '(') {
        ++pos_;
        Int m = integer();
        expect(')');
        if (m == 0) fail("zero rescaling");
        base = rescaled(base, m);
      }
    } catch (const MathError& e) {
      throw ParseError(e.what(), start);
    }
    return std::vector<Lattice>(count, base);
  }

  Lattice base_term() {
    char c = peek();
    if (c == 'U') {
      ++pos_;
      return hyperbolic_plane();
    }
    if (c == 'A') {
      ++pos_;
      Int n = integer();
      if (n < 1 || n > 64) fail("bad root lattice rank");
      return root_lattice_A(n.get_ui());
    }
    if (c == '<') {
      ++pos_;
      Int d = integer();
      expect('>');
      return rank_one(d);
    }
    if (s_.compare(pos_, 4, "gram") == 0) {
      pos_ += 4;
      skip();
      return Lattice(matrix());
    }
    fail("expected U, A<n>, <d> or gram");
    return {};
  }

  Int integer() {
    skip();
    std::size_t start = pos_;
    if (peek() == '-' || peek() == '+') ++pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    std::string tok = s_.substr(start, pos_ - start);
    if (tok.empty() || tok == "-" || tok == "+") fail("expected integer");
    if (tok[0] == '+') tok.erase(0, 1);
    return Int(tok);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  void expect(char c) {
    skip();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, pos_); }

  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

Lattice build_lattice(const std::string& expr) {
  Parser p(expr);
  Lattice l = p.expr();
  p.finish();
  return l;
}

RatVector parse_vector(const std::string& text) {
  Parser p(text);
  RatVector v = p.vector();
  p.finish();
  return v;
}

IntMatrix parse_matrix(const std::string& text) {
  Parser p(text);
  IntMatrix m = p.matrix();
  p.finish();
  return m;
}

Int DiscGroup::order() const {
  Int n = 1;
  for (const auto& d : orders) n *= d;
  return n;
}

IntVector DiscGroup::coordinates(const RatVector& x) const {
  RatVector c = to_rat(coord) * x;
  IntVector out(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i].get_den() != 1) throw MathError("vector is not in the dual lattice");
    Int r = c[i].get_num() % orders[i];
    if (r < 0) r += orders[i];
    out[i] = r;
  }
  return out;
}

RatVector DiscGroup::lift(const IntVector& c) const {
  RatVector x(coord.cols(), Rat(0));
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) x[j] += Rat(c[i]) * lifts[i][j];
  return x;
}

DiscGroup discriminant_group(const Lattice& l) {
  const std::size_t n = l.rank();
  SmithForm s = smith_normal_form(l.gram());
  DiscGroup d;
  d.coord = IntMatrix(0, n);
  std::vector<IntVector> rows;
  for (std::size_t i = 0; i < n; ++i) {
    if (s.D(i, i) == 1) continue;
    d.orders.push_back(s.D(i, i));
    rows.push_back(s.P.row(i));
    // Q e_i / d_i satisfies P G (Q e_i / d_i) = e_i.
    RatVector lift(n);
    for (std::size_t j = 0; j < n; ++j) {
      Rat v(s.Q(j, i), s.D(i, i));
      v.canonicalize();
      Int fl;
      mpz_fdiv_q(fl.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
      lift[j] = v - Rat(fl);
    }
    d.lifts.push_back(lift);
  }
  IntMatrix c(rows.size(), n);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Int acc = 0;
      for (std::size_t k = 0; k < n; ++k) acc += rows[i][k] * l.gram()(k, j);
      c(i, j) = acc;
    }
  d.coord = c;
  return d;
}

DivisorStar divisor_and_star(const Lattice& l, const IntVector& x) {
  Int div = gcd_of(l.dual_row(x));
  if (div == 0) throw MathError("divisor of the zero vector");
  RatVector star(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    star[i] = Rat(x[i], div);
    star[i].canonicalize();
  }
  return {div, star};
}

IntMatrix saturation(const IntMatrix& b) {
  SmithForm s = smith_normal_form(b);
  std::size_t r = s.divisors().size();
  IntMatrix pinv = inverse_unimodular(s.P);
  return pinv.columns(0, r);
}

IntMatrix hermite_columns(const IntMatrix& b) { return hermite_rows(b.transpose()).transpose(); }

IntMatrix canonical_subspace(const IntMatrix& b) { return hermite_columns(saturation(b)); }

bool is_primitive(const IntVector& x) { return gcd_of(x) == 1; }

IntVector primitive_part(const RatVector& x) {
  Int den = lcm_of_denominators(x);
  IntVector v(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) v[i] = Rat(x[i] * den).get_num();
  Int g = gcd_of(v);
  if (g == 0) throw MathError("primitive part of zero vector");
  for (auto& c : v) c /= g;
  return v;
}

namespace {
Complement finish_complement(const Lattice& l, IntMatrix basis) {
  Complement c;
  c.gram = basis.transpose() * l.gram() * basis;
  c.basis = std::move(basis);
  c.degenerate = c.gram.rows() > 0 && determinant(c.gram) == 0;
  return c;
}
}  // namespace

Complement orthogonal_complement(const Lattice& l, const IntVector& w) {
  if (!is_primitive(w)) throw MathError("orthogonal_complement needs a primitive vector");
  IntMatrix row(1, w.size());
  IntVector wh = l.dual_row(w);
  for (std::size_t j = 0; j < w.size(); ++j) row(0, j) = wh[j];
  SmithForm s = smith_normal_form(row);
  return finish_complement(l, s.Q.columns(1, w.size() - 1));
}

Complement orthogonal_complement_of(const Lattice& l, const IntMatrix& b) {
  IntMatrix a = b.transpose() * l.gram();
  SmithForm s = smith_normal_form(a);
  std::size_t r = s.divisors().size();
  return finish_complement(l, s.Q.columns(r, l.rank() - r));
}

namespace {

bool starts_with_two_planes(const IntMatrix& g) {
  const std::size_t n = g.rows();
  if (n < 4) return false;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Int want = (j < 4 && (i ^ 1) == j) ? 1 : 0;
      if (g(i, j) != want) return false;
    }
  return true;
}

// Primitive isotropic vector pairing to 1 with the lattice, searched in
// boxes of growing radius.
std::optional<IntVector> unimodular_isotropic(const Lattice& l, int max_radius) {
  const std::size_t n = l.rank();
  for (int r = 1; r <= max_radius; ++r) {
    std::vector<int> c(n, -r);
    for (;;) {
      bool on_shell = false;
      for (int x : c)
        if (x == r || x == -r) on_shell = true;
      if (on_shell) {
        IntVector v(c.begin(), c.end());
        if (l.norm(v) == 0 && gcd_of(l.dual_row(v)) == 1) return v;
      }
      std::size_t k = 0;
      while (k < n && c[k] == r) c[k++] = -r;
      if (k == n) break;
      ++c[k];
    }
  }
  return std::nullopt;
}

// Basis change T (columns) splitting off a hyperbolic plane as the first two
// basis vectors.
std::optional<IntMatrix> split_plane(const Lattice& l) {
  if (l.rank() >= 2 && l.gram()(0, 0) == 0 && l.gram()(0, 1) == 1 && l.gram()(1, 1) == 0) {
    bool done = true;
    for (std::size_t j = 2; j < l.rank(); ++j)
      if (l.gram()(0, j) != 0 || l.gram()(1, j) != 0) done = false;
    if (done) return IntMatrix::identity(l.rank());
  }
  if (l.positive() == 0 || l.negative() == 0) return std::nullopt;
  auto e = unimodular_isotropic(l, l.rank() <= 5 ? 3 : 2);
  if (!e) return std::nullopt;
  IntMatrix row(1, l.rank());
  IntVector eh = l.dual_row(*e);
  for (std::size_t j = 0; j < l.rank(); ++j) row(0, j) = eh[j];
  IntVector f = smith_normal_form(row).Q.column(0);
  Int half = l.norm(f) / 2;
  for (std::size_t i = 0; i < f.size(); ++i) f[i] -= half * (*e)[i];
  Complement c = orthogonal_complement_of(l, IntMatrix::from_columns({*e, f}, l.rank()));
  std::vector<IntVector> cols{*e, f};
  for (std::size_t j = 0; j < c.basis.cols(); ++j) cols.push_back(c.basis.column(j));
  return IntMatrix::from_columns(cols, l.rank());
}

// Basis change bringing l to 2U + L0 with L0 in reduced form, when possible.
IntMatrix split_normal_basis(const Lattice& l) {
  const std::size_t n = l.rank();
  IntMatrix t = IntMatrix::identity(n);
  if (!starts_with_two_planes(l.gram())) {
    auto t1 = split_plane(l);
    if (!t1) return t;
    Lattice rest(t1->transpose() * l.gram() * *t1);
    Lattice inner(rest.gram().submatrix(2, 2, n - 2, n - 2));
    auto t2 = split_plane(inner);
    if (!t2) return t;
    IntMatrix lift = IntMatrix::identity(n);
    for (std::size_t i = 0; i < n - 2; ++i)
      for (std::size_t j = 0; j < n - 2; ++j) lift(2 + i, 2 + j) = (*t2)(i, j);
    t = *t1 * lift;
  }
  IntMatrix g = t.transpose() * l.gram() * t;
  if (!starts_with_two_planes(g)) return IntMatrix::identity(n);
  if (n > 4) {
    IntMatrix g0 = g.submatrix(4, 4, n - 4, n - 4);
    IntMatrix r = reduced_definite_basis(g0);
    IntMatrix lift = IntMatrix::identity(n);
    for (std::size_t i = 0; i < n - 4; ++i)
      for (std::size_t j = 0; j < n - 4; ++j) lift(4 + i, 4 + j) = r(i, j);
    t = t * lift;
  }
  return t;
}

}  // namespace

Overlattice maximal_overlattice(const Lattice& l) {
  const std::size_t n = l.rank();
  FiniteQuadraticForm q = disc_form_of(l);
  std::vector<IntVector> chosen;
  std::set<IntVector> subgroup{IntVector(q.size(), Int(0))};
  for (const auto& x : q.elements()) {
    if (subgroup.count(x) || q.q(x) != 0) continue;
    bool orth = true;
    for (const auto& h : chosen)
      if (q.b(x, h) != 0) orth = false;
    if (!orth) continue;
    chosen.push_back(x);
    std::set<IntVector> grown = subgroup;
    for (const auto& h : subgroup)
      for (IntVector y = q.add(h, x); !grown.count(y); y = q.add(y, x)) grown.insert(y);
    subgroup = std::move(grown);
  }

  DiscGroup d = discriminant_group(l);
  std::vector<RatVector> gens;
  for (std::size_t i = 0; i < n; ++i) {
    RatVector e(n, Rat(0));
    e[i] = 1;
    gens.push_back(e);
  }
  for (const auto& x : chosen) gens.push_back(d.lift(x));
  Int den = 1;
  for (const auto& g : gens) den = lcm(den, lcm_of_denominators(g));
  IntMatrix m(n, gens.size());
  for (std::size_t j = 0; j < gens.size(); ++j)
    for (std::size_t i = 0; i < n; ++i) m(i, j) = Rat(gens[j][i] * den).get_num();
  RatMatrix basis = scaled(to_rat(hermite_columns(m)), Rat(Rat(1) / Rat(den)));

  IntMatrix gram = to_int(basis.transpose() * to_rat(l.gram()) * basis);
  Lattice over(gram);
  IntMatrix t = split_normal_basis(over);
  Overlattice out;
  out.lattice = Lattice(t.transpose() * gram * t);
  out.embed = to_int(inverse(basis * to_rat(t)));
  out.index = abs(determinant(out.embed));
  return out;
}

bool is_maximal(const Lattice& l) { return isotropic_elements(disc_form_of(l)).size() == 1; }

}  // namespace orthlat
