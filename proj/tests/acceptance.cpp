// Acceptance checks. One PASS/FAIL line per criterion; every comparison is
// exact (tolerance 0). Exit status is nonzero if any criterion fails.

#include <algorithm>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "ffdyn/dynsys.hpp"
#include "ffdyn/errors.hpp"
#include "ffdyn/interp.hpp"
#include "ffdyn/reveng.hpp"
#include "support.hpp"

using namespace ffdyn;

namespace {

const std::filesystem::path kFixtures = FFDYN_FIXTURES;

struct Report {
  bool ok = true;
  std::vector<std::string> failures;
  std::vector<std::string> notes;
  std::string summary;

  void check(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      failures.push_back(what);
    }
  }
};

std::string fmt(const std::vector<MultiPoly>& ps) {
  std::string out;
  for (std::size_t i = 0; i < ps.size(); ++i) out += (i ? ", " : "") + format_poly(ps[i]);
  return out;
}

MultiPoly z3poly(const std::string& text, const std::vector<std::string>& vars) {
  return parse_poly(text, vars, Field::prime(3));
}

// ------------------------------------------------------------------ AC1

Report ac1() {
  Report r;
  const RepProblem prob = load_problem(kFixtures / "rep_xyz.json");
  const RepSolution sol = solve_rep(prob);
  const std::vector<std::string> reference = {"x+z+x^2", "x+y^2", "1+y+y^2"};
  std::size_t exact = 0;
  for (std::size_t s = 0; s < 3; ++s) {
    const auto& c = sol.coordinates[s];
    r.check(c.solutions.rank == 4, c.variable + ": rank " + std::to_string(c.solutions.rank));
    r.check(c.solutions.nullity() == 5, c.variable + ": nullity " + std::to_string(c.solutions.nullity()));
    const std::string got = format_poly(c.solutions.particular);
    if (got == reference[s]) {
      ++exact;
      continue;
    }
    const MultiPoly ref = z3poly(reference[s], c.samples.deps);
    const bool fallback = is_solution(ref, c.samples);
    r.check(fallback, c.variable + ": " + reference[s] + " fails is_solution");
    r.notes.push_back("f_" + c.variable + ": particular " + got + " differs bit-exactly from " + reference[s] +
                      "; fallback is_solution(" + reference[s] + ") = " + (fallback ? "true" : "false") +
                      ", difference in vanishing subspace = " +
                      (in_vanishing_subspace(c, ref - c.solutions.particular) ? "true" : "false"));
  }
  r.check(sol.total_count() == 14348907, "total count " + sol.total_count().str());
  r.summary = "rank 4 / nullity 5 per coordinate, " + std::to_string(exact) + "/3 particulars bit-exact, rest via " +
              "is_solution fallback, total " + sol.total_count().str();
  return r;
}

// ------------------------------------------------------------------ AC2

Report ac2() {
  Report r;
  const RepProblem prob = load_problem(kFixtures / "rep_xyz.json");
  const RepSolution sol = solve_rep(prob);
  const std::map<std::string, std::vector<std::string>> texts = {
      {"x", {"1+2x+2z+xz", "2z+z^2", "1+2z+2x^2+x^2z", "1+2x+2z+xz^2", "1+2z+2x^2+x^2z^2"}},
      {"y", {"2+x+xy+y^2", "2+2y+x^2+2y^2", "1+2x+2y^2+xy^2", "y+2y^2+x^2y", "2y+y^2+x^2y^2"}},
      {"z", {"2+z+2y+yz", "1+2z+2y^2+y^2z", "2+z+2y+yz^2", "1+2z+2y^2+y^2z^2", "2z+z^2"}}};
  std::map<std::string, std::vector<MultiPoly>> candidates;
  std::size_t vanishing = 0;
  for (const auto& [name, list] : texts) {
    const auto& coord = sol.coordinates[prob.variable_index(name)];
    for (const auto& t : list) {
      const MultiPoly g = z3poly(t, coord.samples.deps);
      candidates[name].push_back(g);
      bool zero = true;
      for (const auto& pt : coord.samples.points) zero = zero && g.evaluate(pt) == 0;
      r.check(zero, name + ": " + t + " does not vanish on the samples");
      vanishing += zero ? 1 : 0;
    }
  }
  r.check(verify_candidate_basis(sol, candidates), "verify_candidate_basis returned false");
  r.summary = std::to_string(vanishing) + "/15 basis polynomials vanish on their samples; verify_candidate_basis = true";
  return r;
}

// ------------------------------------------------------------------ AC3

Report ac3() {
  Report r;
  const RepProblem prob = load_problem(kFixtures / "rep_xyz.json");
  const auto [a, b] = build_system(project_transitions(prob, prob.variable_index("x")));
  const std::vector<std::vector<int>> expected = {{1, 1, 0, 0, 1, 0, 0, 0, 0, 2},
                                                  {1, 2, 1, 2, 1, 1, 1, 2, 1, 1},
                                                  {1, 1, 1, 1, 1, 1, 1, 1, 1, 0},
                                                  {1, 0, 1, 0, 0, 1, 0, 0, 0, 1}};
  r.check(a.rows() == 4 && a.cols() == 9, "shape " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  std::size_t matching = 0;
  for (std::size_t i = 0; i < std::min<std::size_t>(4, a.rows()); ++i) {
    bool row_ok = b[i].prime_value() == static_cast<Residue>(expected[i][9]);
    for (std::size_t j = 0; j < 9 && j < a.cols(); ++j) {
      row_ok = row_ok && a(i, j).prime_value() == static_cast<Residue>(expected[i][j]);
    }
    r.check(row_ok, "row " + std::to_string(i + 1) + " differs");
    matching += row_ok ? 1 : 0;
  }
  r.summary = std::to_string(matching) + "/4 rows of the 4x9 augmented matrix match";
  return r;
}

// ------------------------------------------------------------------ AC4

Report ac4() {
  Report r;
  const Field k = Field::extension(3, "X^2+X+2");
  const FieldElement al = k.generator();
  const SampleProblem sp = load_samples(kFixtures / "samples_lagrange.json");
  const DfPnSolution sol = solve_df_pn(sp.samples, Basis::parse(k, "a,1"));
  const Vector& c = sol.lagrange.particular.coefficients();
  const Vector expected = {k.parse("2a+2"), k.parse("2"), k.parse("a+2"), k.one()};
  r.check(c == expected, "coefficients " + sol.lagrange.particular.to_string());
  r.check(c.size() == 4 && c[0] == al.pow(3) && c[2] == al.pow(6), "coefficients differ from a^3, 2, a^6, 1");
  const std::vector<std::string> pair = {"2+x1+2*x1*x2+x2^2", "2+2*x1+x1^2+2*x1*x2+2*x2^2"};
  const std::vector<std::string> vars = {"x1", "x2"};
  r.check(sol.components.size() == 2 && sol.components[0] == z3poly(pair[0], vars) &&
              sol.components[1] == z3poly(pair[1], vars),
          "multivariate pair " + fmt(sol.components));
  const auto [vm, rhs] = build_vandermonde(sol.points, sol.values);
  const std::size_t row = static_cast<std::size_t>(
      std::find(sol.points.begin(), sol.points.end(), al + k.one()) - sol.points.begin());
  const bool has_row = row < sol.points.size();
  r.check(has_row && vm(row, 2) == al + k.from_integer(2), "Vandermonde entry (a+1)^2 is not a+2");
  r.check(has_row && !(vm(row, 2) == k.from_integer(2) * al + k.one()), "Vandermonde carries 2a+1");
  r.notes.push_back("Vandermonde entry (a+1)^2 = " + (has_row ? vm(row, 2).to_string() : std::string("?")) +
                    " (an entry of 2a+1 would be wrong)");
  r.summary = "P0 = " + sol.lagrange.particular.to_string() + "; components " + fmt(sol.components);
  return r;
}

// ------------------------------------------------------------------ AC5

Report ac5() {
  Report r;
  const Field z3 = Field::prime(3);
  // Rows x1 = 0..2, columns x3 = 0..2.
  const std::vector<Residue> f2 = {1, 1, 1, 1, 0, 0, 1, 0, 0};
  const std::vector<Residue> f3 = {2, 2, 1, 2, 2, 1, 0, 0, 0};
  const MultiPoly g2 = interpolate_full_table(z3, {"x1", "x3"}, f2);
  const MultiPoly g3 = interpolate_full_table(z3, {"x1", "x3"}, f3);
  r.check(format_poly(g2) == "1+2*x1^2*x3^2", "f2 = " + format_poly(g2));
  r.check(g3 == z3poly("2+x1+2x3+x1x3+2x1^2+x3^2+2x1^2x3+2x1x3^2+x1^2x3^2", {"x1", "x3"}), "f3 = " + format_poly(g3));

  const Dsf d = load_system(kFixtures / "network_3var.json");
  r.check(d.updates()[1] == g2.over(d.variable_names()) && d.updates()[2] == g3.over(d.variable_names()),
          "system file updates differ from the interpolated tables");
  const auto fps = fixed_points(d);
  r.check(fps == std::vector<State>{{2, 1, 0}}, std::to_string(fps.size()) + " fixed points");
  const StateSpace ss = build_state_space(d);
  r.check(ss.size() == 18, std::to_string(ss.size()) + " vertices");
  r.summary = "f2 = " + format_poly(g2) + "; f3 has " + std::to_string(g3.terms().size()) +
              " terms; fixed points {(2,1,0)}; " + std::to_string(ss.size()) + " vertices";
  return r;
}

// ------------------------------------------------------------------ AC6

Report ac6() {
  Report r;
  const Dsf d = load_system(kFixtures / "system_xyz.json");
  const State target = {1, 2, 0};
  const auto grid = preimage(d, target, SearchDomain::full_grid);
  const bool found = std::find(grid.begin(), grid.end(), State{1, 1, 2}) != grid.end();
  r.check(found, "(1,1,2) missing from the full-grid preimage");
  std::string listed;
  for (const auto& s : grid) listed += format_state(s) + " ";
  const auto declared = preimage(d, target, SearchDomain::declared);
  r.notes.push_back("F(1,1,0) = " + format_state(d.evaluate({1, 1, 0})) + ", not (1,2,0); F(1,1,2) = " +
                    format_state(d.evaluate({1, 1, 2})) + ". (1,1,2) lies outside the declared domain z in {0,1}");
  r.notes.push_back("declared-domain preimage with reduce mode: " + std::to_string(declared.size()) + " states");
  r.summary = "full-grid preimage of (1,2,0): " + listed + "contains (1,1,2)";
  return r;
}

// ------------------------------------------------------------------ AC7

std::uint64_t ipow(std::uint64_t b, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

Report ac7() {
  Report r;
  std::ostringstream summary;

  // Field axioms.
  const std::vector<Field> fields = {Field::prime(2),        Field::prime(3),           Field::prime(65521),
                                     Field::extension(2, 2), Field::extension(2, 3),    Field::extension(3, "X^2+X+2"),
                                     Field::extension(5, 3), Field::extension(65521, 2)};
  for (const Field& k : fields) {
    std::size_t bad = 0;
    for (int i = 0; i < 10000; ++i) {
      const FieldElement a = testing::random_element(k), b = testing::random_element(k), c = testing::random_element(k);
      bool ok = (a + b) + c == a + (b + c) && (a * b) * c == a * (b * c) && a + b == b + a && a * b == b * a &&
                a * (b + c) == a * b + a * c && a + k.zero() == a && a * k.one() == a && a + (-a) == k.zero();
      if (!a.is_zero()) ok = ok && a * a.inverse() == k.one();
      bad += ok ? 0 : 1;
    }
    r.check(bad == 0, k.name() + ": " + std::to_string(bad) + " axiom failures");
  }
  // Multiplicative group order, exhaustive.
  std::size_t group_fields = 0;
  for (const Field& k : {Field::prime(9973), Field::extension(2, 13), Field::extension(3, 8),
                         Field::extension(3, "X^2+X+2"), Field::extension(7, 4), Field::extension(97, 2)}) {
    const std::uint64_t q = k.order();
    std::set<std::uint64_t> seen;
    std::size_t bad = 0;
    for (std::uint64_t i = 1; i < q; ++i) {
      const FieldElement a = k.from_index(i);
      seen.insert(a.index());
      if (!a.pow(q - 1).is_one()) ++bad;
    }
    r.check(bad == 0 && seen.size() == q - 1, k.name() + ": group order check failed");
    ++group_fields;
  }
  summary << fields.size() << " fields x 10^4 axiom triples, " << group_fields << " exhaustive group checks; ";

  // Reduction preserves evaluation, exhaustively up to 3^6 points.
  std::size_t reduce_cases = 0;
  for (auto [p, n] : std::vector<std::pair<std::uint64_t, std::size_t>>{{2, 6}, {3, 6}, {5, 4}, {7, 3}, {3, 2}}) {
    const Field f = Field::prime(p);
    const auto vars = default_variables(n);
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<std::pair<std::vector<std::uint64_t>, std::int64_t>> terms;
      for (int t = 0; t < 5; ++t) {
        std::vector<std::uint64_t> e(n);
        for (auto& x : e) x = testing::uniform(3 * p);
        terms.emplace_back(e, static_cast<std::int64_t>(testing::uniform(p)) - 1);
      }
      const MultiPoly g = MultiPoly::reduce(f, vars, terms);
      for (const auto& pt : testing::grid(p, n)) {
        Residue want = 0;
        for (const auto& [exps, c] : terms) {
          Residue v = reduce_signed(c, p);
          for (std::size_t i = 0; i < n; ++i) {
            for (std::uint64_t e = 0; e < exps[i]; ++e) v = v * pt[i] % p;
          }
          want = (want + v) % p;
        }
        r.check(g.evaluate(pt) == want, "reduce changed a value over Z_" + std::to_string(p));
        ++reduce_cases;
      }
    }
  }
  summary << reduce_cases << " reduce evaluations; ";

  // Planted interpolation round trips.
  std::size_t planted_bad = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::uint64_t p = std::vector<std::uint64_t>{2, 3, 5}[testing::uniform(3)];
    const std::size_t n = 1 + testing::uniform(p == 5 ? 2 : 3);
    const Field f = Field::prime(p);
    const auto vars = default_variables(n);
    const MultiPoly planted = testing::random_poly(f, vars);
    auto pts = testing::grid(p, n);
    std::shuffle(pts.begin(), pts.end(), testing::rng());
    pts.resize(1 + testing::uniform(pts.size()));
    SampleSet s{f, vars, pts, {}, {}};
    for (const auto& pt : pts) s.values.push_back(planted.evaluate(pt));
    const PolySolutionSet set = solve_df_zp(s);
    const bool ok = is_solution(set.particular, s) && set.nullity() == ipow(p, n) - pts.size();
    // The planted polynomial is in the family: its difference vanishes on S.
    const MultiPoly diff = planted - set.particular;
    bool in_family = true;
    for (const auto& pt : pts) in_family = in_family && diff.evaluate(pt) == 0;
    planted_bad += ok && in_family ? 0 : 1;
  }
  r.check(planted_bad == 0, std::to_string(planted_bad) + " planted round trips failed");
  summary << "1000 planted round trips; ";

  // One-variable oracle equivalence.
  std::size_t oracle_cases = 0;
  for (std::uint64_t p : {2, 3}) {
    const Field f = Field::prime(p);
    const std::vector<std::string> vars{"x"};
    for (std::uint64_t mask = 1; mask < (1u << p); ++mask) {
      std::vector<std::vector<Residue>> pts;
      for (Residue x = 0; x < p; ++x) {
        if (mask & (1u << x)) pts.push_back({x});
      }
      for (std::uint64_t assign = 0; assign < ipow(p, pts.size()); ++assign) {
        SampleSet s{f, vars, pts, {}, {}};
        for (std::uint64_t i = 0, rest = assign; i < pts.size(); ++i, rest /= p) s.values.push_back(rest % p);
        std::set<std::string> oracle;
        for (std::uint64_t idx = 0; idx < ipow(p, p); ++idx) {
          MultiPoly g(f, vars);
          for (std::uint64_t e = 0, rest = idx; e < p; ++e, rest /= p) {
            const std::vector<std::uint64_t> ex{e};
            g.add_term(ex, rest % p);
          }
          bool match = true;
          for (std::size_t i = 0; i < pts.size(); ++i) match = match && g.evaluate(pts[i]) == s.values[i];
          if (match) oracle.insert(format_poly(g));
        }
        std::set<std::string> got;
        for (const auto& g : enumerate_solutions(solve_df_zp(s)).polynomials) got.insert(format_poly(g));
        r.check(got == oracle, "oracle mismatch over Z_" + std::to_string(p));
        ++oracle_cases;
      }
    }
  }
  summary << oracle_cases << " one-variable oracle cases; ";

  // Lagrange against the Vandermonde solve.
  std::size_t lagrange_cases = 0;
  for (const Field& k : {Field::extension(2, 2), Field::extension(2, 3), Field::extension(3, "X^2+X+2")}) {
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<std::uint64_t> idx(k.order());
      for (std::uint64_t i = 0; i < idx.size(); ++i) idx[i] = i;
      std::shuffle(idx.begin(), idx.end(), testing::rng());
      const std::size_t m = 1 + testing::uniform(k.order());
      Vector pts, vals;
      for (std::size_t i = 0; i < m; ++i) {
        pts.push_back(k.from_index(idx[i]));
        vals.push_back(testing::random_element(k));
      }
      Vector coeffs = lagrange_interpolate(pts, vals).coefficients();
      coeffs.resize(m, k.zero());
      const auto [vm, rhs] = build_vandermonde(pts, vals);
      r.check(coeffs == solve_affine(vm, rhs).particular, "Lagrange differs from Vandermonde over " + k.name());
      ++lagrange_cases;
    }
  }
  summary << lagrange_cases << " Lagrange/Vandermonde cases";
  r.summary = summary.str();
  return r;
}

// ------------------------------------------------------------------ AC8

Dsf random_system(const std::vector<std::uint64_t>& domains) {
  std::vector<VariableSpec> vars;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < domains.size(); ++i) {
    vars.push_back({"v" + std::to_string(i), domains[i]});
    names.push_back(vars.back().name);
  }
  const Field f = choose_prime_field(vars, std::nullopt);
  std::vector<MultiPoly> ups;
  for (std::size_t i = 0; i < vars.size(); ++i) ups.push_back(testing::sparse_poly(f, names, 6));
  return Dsf(vars, f, ups);
}

Report ac8() {
  Report r;
  std::vector<Dsf> systems = {load_system(kFixtures / "network_3var.json"),
                              load_system(kFixtures / "system_xyz.json")};
  for (const auto& shape : std::vector<std::vector<std::uint64_t>>{
           {2, 2, 2, 2, 2, 2, 2, 2}, {3, 3, 3, 3, 3}, {5, 5, 5, 5}, {11, 11, 11}, {10, 10, 10, 10}}) {
    systems.push_back(random_system(shape));
  }
  std::uint64_t largest = 0;
  std::uint64_t largest_adjoint = 0;
  for (const Dsf& d : systems) {
    const StateSpace ss = build_state_space(d);
    const std::uint64_t n = ss.size();
    r.check(n <= 10000, "space too large");
    largest = std::max(largest, n);
    std::set<State> loops;
    std::size_t bad = 0;
    std::vector<std::vector<State>> by_target(n);
    for (std::uint64_t i = 0; i < n; ++i) {
      const State s = ss.state(i);
      const State t = d.step(s);
      // Out-degree 1: the stored arc is the unique step image.
      if (ss.successor(i) >= n || ss.state(ss.successor(i)) != t) ++bad;
      if (t == s) loops.insert(s);
      by_target[ss.index(t)].push_back(s);
    }
    r.check(bad == 0, std::to_string(bad) + " bad arcs");
    const AttractorReport rep = attractors(ss);
    std::uint64_t basins = 0;
    for (const auto& a : rep.attractors) basins += a.basin_size;
    r.check(basins == n, "basin sizes sum to " + std::to_string(basins) + " of " + std::to_string(n));
    const auto fps = fixed_points(d);
    r.check(std::set<State>(fps.begin(), fps.end()) == loops && rep.fixed_points() == fps,
            "fixed points differ from self-loops");
    // Adjointness: x in preimage(y) iff step(x) = y, for every pair.
    if (n <= 1331) {
      std::size_t adj_bad = 0;
      for (std::uint64_t j = 0; j < n; ++j) adj_bad += preimage(d, ss.state(j)) != by_target[j] ? 1 : 0;
      r.check(adj_bad == 0, std::to_string(adj_bad) + " preimage mismatches");
      largest_adjoint = std::max(largest_adjoint, n);
    }
  }
  r.summary = std::to_string(systems.size()) + " systems up to " + std::to_string(largest) +
              " states: out-degree 1, basin sums, fixed points = self-loops; preimage/step adjointness "
              "exhaustive up to " +
              std::to_string(largest_adjoint) + " states";
  return r;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Report()>>> criteria = {
      {"AC1", ac1}, {"AC2", ac2}, {"AC3", ac3}, {"AC4", ac4},
      {"AC5", ac5}, {"AC6", ac6}, {"AC7", ac7}, {"AC8", ac8}};
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Report rep;
    try {
      rep = run();
    } catch (const std::exception& e) {
      rep.ok = false;
      rep.failures.push_back(std::string("exception: ") + e.what());
    }
    std::cout << (rep.ok ? "PASS " : "FAIL ") << name << " (exact, tolerance 0): " << rep.summary << "\n";
    for (const auto& n : rep.notes) std::cout << "    note: " << n << "\n";
    for (const auto& f : rep.failures) std::cout << "    failure: " << f << "\n";
    failed += rep.ok ? 0 : 1;
  }
  std::cout << (failed ? "FAILED " : "ALL PASSED ") << criteria.size() - failed << "/" << criteria.size() << "\n";
  return failed ? 1 : 0;
}
