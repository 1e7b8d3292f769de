#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "orthlat/buildings.hpp"
#include "orthlat/discform.hpp"
#include "orthlat/orbits.hpp"

using namespace orthlat;

namespace {

constexpr int kExitError = 1;
constexpr int kExitUndecided = 3;  // inconclusive verdict or incomplete enumeration

// Comma list of stable, plus, so, disc=FILE; or the short form ~SO+ etc.
GroupSpec parse_group(const Lattice& l, const std::string& text) {
  if (!text.empty() && (text[0] == '~' || text[0] == 'O' || text[0] == 'S')) return make_group_spec(l, text);
  bool stable = false, plus = false, so = false;
  std::string disc_file;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "stable") stable = true;
    else if (item == "plus") plus = true;
    else if (item == "so") so = true;
    else if (item.rfind("disc=", 0) == 0) disc_file = item.substr(5);
    else if (!item.empty()) throw ParseError("unknown group flag '" + item + "'", text.find(item));
  }
  GroupSpec spec = make_group_spec(l, std::string(stable ? "~" : "") + (so ? "SO" : "O") + (plus ? "+" : ""));
  if (!disc_file.empty()) {
    // One matrix literal per line: images of the generators of D(L), as columns.
    std::ifstream in(disc_file);
    if (!in) throw MathError("cannot read " + disc_file);
    DiscGroup d = discriminant_group(l);
    spec.disc = DiscCondition::in_subgroup;
    std::string line;
    while (std::getline(in, line)) {
      if (line.find_first_not_of(" \t") == std::string::npos) continue;
      spec.subgroup.push_back(FqfMap{parse_matrix(line), d.orders, d.orders});
    }
  }
  return spec;
}

void print_matrix(std::ostream& os, const std::string& name, const IntMatrix& m) {
  os << name << ":\n";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << "  ";
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? " " : "") << to_string(m(i, j));
    os << "\n";
  }
}

void print_matrix(std::ostream& os, const std::string& name, const RatMatrix& m) {
  os << name << ":\n";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << "  ";
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? " " : "") << to_string(m(i, j));
    os << "\n";
  }
}

int lattice_info(const std::string& expr) {
  Lattice l = build_lattice(expr);
  print_matrix(std::cout, "gram", l.gram());
  std::cout << "rank: " << l.rank() << "\n";
  std::cout << "signature: (" << l.positive() << "," << l.negative() << ")\n";
  std::cout << "determinant: " << to_string(l.det()) << "\n";
  DiscGroup d = discriminant_group(l);
  std::cout << "discriminant group: ";
  if (d.orders.empty()) std::cout << "trivial";
  for (std::size_t i = 0; i < d.orders.size(); ++i) std::cout << (i ? " + " : "") << "C" << to_string(d.orders[i]);
  std::cout << "\n";
  std::cout << "discriminant form: " << to_string(disc_form_of(l)) << "\n";
  std::cout << "maximal: " << (is_maximal(l) ? "yes" : "no") << "\n";
  return 0;
}

int overlattice(const std::string& expr) {
  Lattice l = build_lattice(expr);
  Overlattice o = maximal_overlattice(l);
  print_matrix(std::cout, "maximal gram", o.lattice.gram());
  print_matrix(std::cout, "embedding", o.embed);
  std::cout << "index: " << to_string(o.index) << "\n";
  bool ok = o.embed.transpose() * o.lattice.gram() * o.embed == l.gram();
  std::cout << "gram transport: " << (ok ? "verified" : "FAILED") << "\n";
  return ok ? 0 : kExitError;
}

int orbit_eq(const std::string& expr, const std::string& group, const std::string& a, const std::string& b) {
  Lattice l = build_lattice(expr);
  GroupSpec spec = parse_group(l, group);
  RatVector v1 = parse_vector(a), v2 = parse_vector(b);
  if (v1.size() != l.rank() || v2.size() != l.rank()) throw MathError("vector length differs from the rank");
  if (l.norm(v1) == 0 || l.norm(v2) == 0)
    throw MathError("isotropic vector; use 'building' or 'cosets' for isotropic orbits");
  OrbitVerdict r = orbit_equivalent(l, spec, v1, v2);
  std::cout << "group: " << describe(spec) << "\n";
  std::cout << "verdict: " << to_string(r.verdict);
  if (r.witness) {
    bool ok = *r.witness * v1 == v2 && is_member(spec, *r.witness);
    std::cout << " (witness " << (ok ? "verified" : "NOT verified") << ")";
  } else if (r.equivalent()) {
    std::cout << " (no explicit witness; induced map on D(L) checked)";
  }
  std::cout << "\n";
  if (!r.reason.empty()) std::cout << "reason: " << r.reason << "\n";
  if (r.witness) print_matrix(std::cout, "witness", *r.witness);
  if (r.induced) print_matrix(std::cout, "induced map on D(L)", r.induced->images);
  return r.verdict == Verdict::inconclusive ? kExitUndecided : 0;
}

}  // namespace

namespace {

std::vector<IntVector> parse_vector_list(const std::string& text) {
  // "(a,b,..);(c,d,..)"
  std::vector<IntVector> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';'))
    if (!item.empty()) out.push_back(to_int(parse_vector(item)));
  return out;
}

int vinberg(const std::string& expr, const std::string& base, const std::string& norms,
            const std::string& stabilizer) {
  Lattice l = build_lattice(expr);
  VinbergOptions opts;
  if (!norms.empty()) {
    std::stringstream ss(norms);
    std::string item;
    while (std::getline(ss, item, ',')) opts.norms.push_back(Int(item));
  }
  if (!stabilizer.empty()) opts.stabilizer_roots = parse_vector_list(stabilizer);
  IntVector x0 = to_int(parse_vector(base));
  VinbergResult r = vinberg_roots(l, x0, opts);
  for (const auto& v : r.roots) std::cout << "root " << to_string(v) << " norm " << to_string(l.norm(v)) << "\n";
  std::cout << "terminated: " << (r.terminated ? "yes (finite volume verified)" : "no") << "\n";
  return r.terminated ? 0 : kExitUndecided;
}

int building(const std::string& expr, const std::string& group, const std::string& dot_file,
             const std::string& out_file, const std::string& ascend, std::size_t budget) {
  Lattice l = build_lattice(expr);
  GroupSpec spec = parse_group(l, group);
  BuildingContext ctx(l);
  ctx.budget = budget;
  std::cerr << "maximal overlattice rank " << ctx.maximal().rank() << ", level " << to_string(ctx.level()) << "\n";
  TitsBuilding b = building_descend(building_maximal(ctx), spec, ctx);
  std::cerr << "descent done: " << b.coset_index << " cosets\n";
  if (!ascend.empty()) {
    GroupSpec g2 = parse_group(l, ascend);
    TitsBuilding up = building_ascend(b, spec, g2, ctx);
    up.complete = up.complete && b.complete;
    b = up;
  }
  bool ok = verify_building(b, ctx.maximal());
  std::cout << serialize(b);
  std::cout << "verification: " << (ok ? "edge witnesses verified" : "FAILED") << "\n";
  if (!dot_file.empty()) {
    std::ofstream(dot_file) << to_dot(b);
  }
  if (!out_file.empty()) {
    std::ofstream(out_file) << serialize(b);
  }
  if (!ok) return kExitError;
  if (!b.complete) {
    std::cout << "incomplete: a coset enumeration exceeded the budget\n";
    return kExitUndecided;
  }
  return 0;
}

int cosets(const std::string& expr, const std::string& group, std::size_t budget) {
  Lattice l = build_lattice(expr);
  GroupSpec spec = parse_group(l, group);
  BuildingContext ctx(l);
  SubgroupData g1(ctx.maximal(), ctx.embed(), spec);
  auto key = g1.left_key();
  Transversal t = coset_transversal(ctx.generators(), g1.member_fn(), budget, key ? *key : CosetKey{});
  std::cout << "ambient: O+(Lp), Lp gram " << to_string(ctx.maximal().gram()) << "\n";
  std::cout << "subgroup: " << describe(spec) << " of " << expr << "\n";
  std::cout << "index: " << t.index() << (t.complete ? "" : " (incomplete)") << "\n";
  for (std::size_t i = 0; i < t.index(); ++i) std::cout << "g" << i << " " << to_string(t.representatives[i]) << "\n";
  return t.complete ? 0 : kExitUndecided;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Integral lattices, orthogonal groups and Tits buildings"};
  app.require_subcommand(1);
  std::size_t threads = 1;
  app.add_option("--threads", threads, "Worker threads (results do not depend on it)");
  int status = 0;

  auto* lat = app.add_subcommand("lattice", "Lattice invariants");
  lat->require_subcommand(1);
  auto* info = lat->add_subcommand("info", "Gram, signature, D(L), q_L, maximality");
  std::string expr;
  info->add_option("expr", expr, "Lattice expression")->required();
  info->callback([&] { status = lattice_info(expr); });

  auto* over = app.add_subcommand("overlattice", "Maximal overlattice and embedding");
  over->add_option("expr", expr, "Lattice expression")->required();
  over->callback([&] { status = overlattice(expr); });

  auto* orb = app.add_subcommand("orbit-eq", "Decide whether v1 and v2 lie in one orbit");
  std::string group = "O", v1, v2;
  orb->add_option("expr", expr, "Lattice expression")->required();
  orb->add_option("--group", group, "Group flags: stable,plus,so,disc=FILE or ~SO+ form");
  orb->add_option("v1", v1, "First vector, e.g. (4,4,1,2,-1)")->required();
  orb->add_option("v2", v2, "Second vector")->required();
  orb->callback([&] { status = orbit_eq(expr, group, v1, v2); });

  auto* vin = app.add_subcommand("vinberg", "Vinberg roots of a Lorentzian lattice");
  std::string base, norms, stab;
  vin->add_option("expr", expr, "Lattice expression")->required();
  vin->add_option("--base", base, "Controlling vector x0")->required();
  vin->add_option("--norms", norms, "Comma list of root norms, e.g. -2,-6");
  vin->add_option("--stabilizer-roots", stab, "Simple roots of x0-perp, e.g. (1,-1,0,0);(0,0,-1,0)");
  vin->callback([&] { status = vinberg(expr, base, norms, stab); });

  auto* bld = app.add_subcommand("building", "Tits building of a subgroup of O+(L)");
  std::string dot, out, ascend;
  std::size_t budget = kDefaultCosetBudget;
  bld->add_option("expr", expr, "Lattice expression")->required();
  bld->add_option("--group", group, "Group flags")->required();
  bld->add_option("--dot", dot, "Write the building as DOT");
  bld->add_option("--out", out, "Write the plain-text building document");
  bld->add_option("--ascend", ascend, "Also identify nodes under this larger group");
  bld->add_option("--budget", budget, "Coset budget");
  bld->callback([&] { status = building(expr, group, dot, out, ascend, budget); });

  auto* cos = app.add_subcommand("cosets", "Transversal of O+(Lp) / G");
  cos->add_option("expr", expr, "Lattice expression")->required();
  cos->add_option("--group", group, "Group flags")->required();
  cos->add_option("--budget", budget, "Coset budget");
  cos->callback([&] { status = cosets(expr, group, budget); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return status;
}
