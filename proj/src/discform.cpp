#include "orthlat/discform.hpp"

#include <map>

namespace orthlat {

namespace {
Rat mod_rat(const Rat& x, const Int& m) {
  Int num = x.get_num(), den = x.get_den();
  Int md = m * den;
  Int r = num % md;
  if (r < 0) r += md;
  Rat out(r, den);
  out.canonicalize();
  return out;
}
}  // namespace

Rat mod1(const Rat& x) { return mod_rat(x, 1); }
Rat mod2(const Rat& x) { return mod_rat(x, 2); }

FiniteQuadraticForm::FiniteQuadraticForm(IntVector ords, const RatMatrix& q)
    : orders(std::move(ords)), q_matrix(q) {
  for (std::size_t i = 0; i < q_matrix.rows(); ++i)
    for (std::size_t j = 0; j < q_matrix.cols(); ++j)
      q_matrix(i, j) = i == j ? mod2(q_matrix(i, j)) : mod1(q_matrix(i, j));
}

Int FiniteQuadraticForm::order() const {
  Int n = 1;
  for (const auto& d : orders) n *= d;
  return n;
}

IntVector FiniteQuadraticForm::reduce(IntVector x) const {
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] %= orders[i];
    if (x[i] < 0) x[i] += orders[i];
  }
  return x;
}

IntVector FiniteQuadraticForm::add(const IntVector& x, const IntVector& y) const {
  IntVector z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = x[i] + y[i];
  return reduce(z);
}

IntVector FiniteQuadraticForm::scale(const IntVector& x, const Int& k) const {
  IntVector z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = x[i] * k;
  return reduce(z);
}

Int FiniteQuadraticForm::element_order(const IntVector& x) const {
  Int o = 1;
  for (std::size_t i = 0; i < x.size(); ++i) {
    Int g = gcd(x[i], orders[i]);
    o = lcm(o, Int(orders[i] / g));
  }
  return o;
}

Rat FiniteQuadraticForm::q(const IntVector& x) const {
  Rat s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    s += Rat(x[i] * x[i]) * q_matrix(i, i);
    for (std::size_t j = i + 1; j < x.size(); ++j) s += Rat(2 * x[i] * x[j]) * q_matrix(i, j);
  }
  return mod2(s);
}

Rat FiniteQuadraticForm::b(const IntVector& x, const IntVector& y) const {
  Rat s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < y.size(); ++j) {
      if (y[j] == 0) continue;
      const Rat& v = i == j ? q_matrix(i, i) : q_matrix(i, j);
      s += Rat(x[i] * y[j]) * v;
    }
  }
  return mod1(s);
}

std::vector<IntVector> FiniteQuadraticForm::elements() const {
  std::vector<IntVector> out;
  IntVector x(orders.size(), Int(0));
  for (;;) {
    out.push_back(x);
    std::size_t k = orders.size();
    while (k > 0) {
      --k;
      if (++x[k] < orders[k]) break;
      x[k] = 0;
      if (k == 0) return out;
    }
    if (orders.empty()) return out;
  }
}

FiniteQuadraticForm disc_form_of(const Lattice& l) {
  DiscGroup d = discriminant_group(l);
  const std::size_t k = d.size();
  RatMatrix m(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) m(i, j) = l.inner(d.lifts[i], d.lifts[j]);
  FiniteQuadraticForm q(d.orders, m);
  q.lifts = d.lifts;
  return q;
}

FiniteQuadraticForm direct_sum(const FiniteQuadraticForm& a, const FiniteQuadraticForm& b) {
  IntVector orders = a.orders;
  orders.insert(orders.end(), b.orders.begin(), b.orders.end());
  const std::size_t n = orders.size(), k = a.size();
  RatMatrix m(n, n);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) m(i, j) = a.q_matrix(i, j);
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) m(k + i, k + j) = b.q_matrix(i, j);
  return FiniteQuadraticForm(orders, m);
}

std::vector<IntVector> isotropic_elements(const FiniteQuadraticForm& q) {
  std::vector<IntVector> out;
  for (const auto& x : q.elements())
    if (q.q(x) == 0) out.push_back(x);
  return out;
}

IntVector FqfMap::apply(const IntVector& x) const {
  IntVector y(codomain_orders.size(), Int(0));
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (x[j] == 0) continue;
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += images(i, j) * x[j];
  }
  for (std::size_t i = 0; i < y.size(); ++i) {
    y[i] %= codomain_orders[i];
    if (y[i] < 0) y[i] += codomain_orders[i];
  }
  return y;
}

bool FqfMap::is_identity() const {
  if (domain_orders != codomain_orders) return false;
  for (std::size_t i = 0; i < images.rows(); ++i)
    for (std::size_t j = 0; j < images.cols(); ++j) {
      Int want = i == j ? 1 : 0;
      Int v = (images(i, j) - want) % codomain_orders[i];
      if (v != 0) return false;
    }
  return true;
}

FqfMap identity_map(const IntVector& orders) {
  return {IntMatrix::identity(orders.size()), orders, orders};
}

FqfMap compose(const FqfMap& after, const FqfMap& before) {
  FqfMap f{IntMatrix(after.codomain_orders.size(), before.domain_orders.size()), before.domain_orders,
           after.codomain_orders};
  for (std::size_t j = 0; j < before.domain_orders.size(); ++j)
    f.images.set_column(j, after.apply(before.images.column(j)));
  return f;
}

FqfMap inverse(const FqfMap& f) {
  FiniteQuadraticForm dom(f.domain_orders, RatMatrix(f.domain_orders.size(), f.domain_orders.size()));
  std::map<IntVector, IntVector> pre;
  for (const auto& x : dom.elements()) pre[f.apply(x)] = x;
  FqfMap g{IntMatrix(f.domain_orders.size(), f.codomain_orders.size()), f.codomain_orders, f.domain_orders};
  for (std::size_t j = 0; j < f.codomain_orders.size(); ++j) {
    IntVector e(f.codomain_orders.size(), Int(0));
    e[j] = 1;
    auto it = pre.find(e);
    if (it == pre.end()) throw MathError("inverse of a non-surjective map");
    g.images.set_column(j, it->second);
  }
  return g;
}

bool is_form_preserving(const FqfMap& f, const FiniteQuadraticForm& q1, const FiniteQuadraticForm& q2) {
  for (std::size_t i = 0; i < q1.size(); ++i) {
    IntVector gi = f.images.column(i);
    if (q2.q(gi) != q1.q_matrix(i, i)) return false;
    for (std::size_t j = i + 1; j < q1.size(); ++j)
      if (q2.b(gi, f.images.column(j)) != q1.q_matrix(i, j)) return false;
  }
  return true;
}

void for_each_iso(const FiniteQuadraticForm& q1, const FiniteQuadraticForm& q2,
                  const std::function<bool(const FqfMap&)>& visit) {
  if (q1.order() != q2.order()) return;
  const std::size_t k = q1.size();
  if (k == 0) {
    visit(FqfMap{IntMatrix(q2.size(), 0), q1.orders, q2.orders});
    return;
  }
  struct Candidate {
    IntVector x;
    Int ord;
    Rat qv;
  };
  std::vector<Candidate> elems;
  for (const auto& x : q2.elements()) elems.push_back({x, q2.element_order(x), q2.q(x)});

  std::vector<std::vector<std::size_t>> options(k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t c = 0; c < elems.size(); ++c)
      if (elems[c].ord == q1.orders[i] && elems[c].qv == q1.q_matrix(i, i)) options[i].push_back(c);

  std::vector<std::size_t> pick(k);
  FqfMap f{IntMatrix(q2.size(), k), q1.orders, q2.orders};
  const std::vector<IntVector> domain = q1.elements();
  bool stop = false;

  auto injective = [&]() {
    for (std::size_t t = 1; t < domain.size(); ++t) {
      IntVector y = f.apply(domain[t]);
      bool zero = true;
      for (const auto& c : y)
        if (c != 0) zero = false;
      if (zero) return false;
    }
    return true;
  };

  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (stop) return;
    if (i == k) {
      if (injective() && !visit(f)) stop = true;
      return;
    }
    for (std::size_t c : options[i]) {
      const IntVector& y = elems[c].x;
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j)
        if (q2.b(elems[pick[j]].x, y) != q1.q_matrix(j, i)) ok = false;
      if (!ok) continue;
      pick[i] = c;
      f.images.set_column(i, y);
      self(self, i + 1);
      if (stop) return;
    }
  };
  rec(rec, 0);
}

std::vector<FqfMap> iso_fqf(const FiniteQuadraticForm& q1, const FiniteQuadraticForm& q2) {
  std::vector<FqfMap> out;
  for_each_iso(q1, q2, [&](const FqfMap& f) {
    out.push_back(f);
    return true;
  });
  return out;
}

std::set<IntMatrix> closure(const std::vector<FqfMap>& gens, const IntVector& orders) {
  std::set<IntMatrix> seen;
  FqfMap id = identity_map(orders);
  std::vector<FqfMap> frontier{id};
  seen.insert(id.images);
  while (!frontier.empty()) {
    std::vector<FqfMap> next;
    for (const auto& a : frontier)
      for (const auto& g : gens) {
        FqfMap c = compose(g, a);
        if (seen.insert(c.images).second) next.push_back(c);
      }
    frontier = std::move(next);
  }
  return seen;
}

GenusVerdict unique_genus_check(std::size_t t_plus, std::size_t t_minus, const FiniteQuadraticForm& q) {
  std::size_t l = 0;
  for (const auto& d : q.orders)
    if (d > 1) ++l;
  bool ok = t_plus >= 1 && t_minus >= 1 && t_plus + t_minus >= 3 && t_plus + t_minus >= 2 + l;
  return ok ? GenusVerdict::applies : GenusVerdict::inconclusive;
}

std::string to_string(const FiniteQuadraticForm& q) {
  std::string s = "orders " + to_string(q.orders) + " q " + to_string(q.q_matrix);
  return s;
}

}  // namespace orthlat
