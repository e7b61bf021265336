#include "ffdyn/cli.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "ffdyn/dynsys.hpp"
#include "ffdyn/errors.hpp"
#include "ffdyn/field.hpp"
#include "ffdyn/interp.hpp"
#include "ffdyn/reveng.hpp"
#include "json_util.hpp"
#include "scanner.hpp"

namespace ffdyn {
namespace {

using ojson = nlohmann::ordered_json;

struct CliConfig {
  std::string input;
  std::string format = "text";
  std::string method = "zp";
  std::optional<std::uint64_t> p;
  std::optional<unsigned> n;
  std::string irreducible;
  std::string basis;
  std::string range_mode;
  std::string search = "declared";
  std::string target;
  std::string start;
  std::size_t max_steps = 1000;
  bool enumerate = false;
  std::uint64_t cap = 0;  // 0: command default
  std::string output;
  std::string expression;
  std::uint64_t exponent = 0;
};

std::string count_string(const BigCount& c) { return c.str(); }

std::string join(const std::vector<std::string>& items, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? sep : "") + items[i];
  return out;
}

ojson state_json(const State& s) { return ojson(s); }

ojson states_json(const std::vector<State>& states) {
  ojson arr = ojson::array();
  for (const auto& s : states) arr.push_back(state_json(s));
  return arr;
}

// ------------------------------------------------------------------ solve

void enumerate_text(std::ostream& out, const PolySolutionSet& set, std::size_t cap, const std::string& indent) {
  const Enumeration e = enumerate_solutions(set, cap);
  out << indent << "solutions:\n";
  for (const auto& f : e.polynomials) out << indent << "  " << format_poly(f) << "\n";
  if (e.truncated) out << indent << "  ... truncated at " << cap << "\n";
}

ojson enumerate_json(const PolySolutionSet& set, std::size_t cap) {
  const Enumeration e = enumerate_solutions(set, cap);
  ojson list = ojson::array();
  for (const auto& f : e.polynomials) list.push_back(format_poly(f));
  return ojson{{"solutions", list}, {"truncated", e.truncated}};
}

void solution_text(std::ostream& out, const PolySolutionSet& set, const CliConfig& cfg, const std::string& indent) {
  out << indent << "particular: " << format_poly(set.particular) << "\n";
  out << indent << "nullity: " << set.nullity() << "\n";
  out << indent << "count: " << count_string(set.solution_count()) << "\n";
  out << indent << "rank: " << set.rank << "\n";
  out << indent << "basis:\n";
  for (std::size_t i = 0; i < set.basis.size(); ++i) {
    out << indent << "  g" << i + 1 << ": " << format_poly(set.basis[i]) << "\n";
  }
  if (cfg.enumerate) enumerate_text(out, set, cfg.cap ? cfg.cap : 10000, indent);
}

ojson solution_json(const PolySolutionSet& set, const CliConfig& cfg) {
  ojson basis = ojson::array();
  for (const auto& g : set.basis) basis.push_back(format_poly(g));
  ojson j{{"particular", format_poly(set.particular)},
          {"nullity", set.nullity()},
          {"count", count_string(set.solution_count())},
          {"rank", set.rank},
          {"basis", basis}};
  if (cfg.enumerate) j["enumeration"] = enumerate_json(set, cfg.cap ? cfg.cap : 10000);
  return j;
}

void cmd_solve(const CliConfig& cfg, std::ostream& out) {
  if (cfg.method == "zp" && (!cfg.irreducible.empty() || !cfg.basis.empty())) {
    throw SchemaError("--irreducible and --basis require --method lagrange");
  }
  SampleProblem prob = load_samples(cfg.input);
  if (cfg.p) {
    prob.samples.field = choose_prime_field(prob.variables, cfg.p);
    check_samples(prob.samples);
  }
  const SampleSet& s = prob.samples;

  if (cfg.method == "zp") {
    const PolySolutionSet set = solve_df_zp(s);
    if (cfg.format == "json") {
      ojson j{{"method", "zp"}, {"field", s.field.name()}, {"variables", s.deps}};
      j.update(solution_json(set, cfg));
      out << j.dump(2) << "\n";
    } else {
      out << "field: " << s.field.name() << "\n";
      out << "variables: " << join(s.deps, ",") << "\n";
      solution_text(out, set, cfg, "");
    }
    return;
  }

  const std::uint64_t p = s.field.characteristic();
  const auto n = static_cast<unsigned>(s.deps.size());
  const Field k = cfg.irreducible.empty() ? Field::extension(p, n) : Field::extension(p, cfg.irreducible);
  if (k.degree() != n) {
    throw SchemaError("the irreducible polynomial has degree " + std::to_string(k.degree()) + " but there are " +
                      std::to_string(n) + " variables");
  }
  const Basis basis = cfg.basis.empty() ? Basis::polynomial(k) : Basis::parse(k, cfg.basis);
  const DfPnSolution sol = solve_df_pn(s, basis);
  std::vector<std::string> basis_text;
  for (const auto& e : basis.elements()) basis_text.push_back(e.to_string());

  if (cfg.format == "json") {
    ojson comps = ojson::object();
    for (std::size_t i = 0; i < sol.components.size(); ++i) comps[s.deps[i]] = format_poly(sol.components[i]);
    ojson points = ojson::array();
    for (std::size_t i = 0; i < sol.points.size(); ++i) {
      points.push_back({{"point", sol.points[i].to_string()}, {"value", sol.values[i].to_string()}});
    }
    ojson j{{"method", "lagrange"},
            {"field", k.name()},
            {"variables", s.deps},
            {"lambda_basis", basis_text},
            {"samples", points},
            {"particular", sol.lagrange.particular.to_string()},
            {"vanishing", sol.lagrange.vanishing.to_string()},
            {"components", comps}};
    out << j.dump(2) << "\n";
    return;
  }
  out << "field: " << k.name() << "\n";
  out << "variables: " << join(s.deps, ",") << "\n";
  out << "lambda basis: " << join(basis_text, ",") << "\n";
  out << "samples:\n";
  for (std::size_t i = 0; i < sol.points.size(); ++i) {
    out << "  " << sol.points[i].to_string() << " -> " << sol.values[i].to_string() << "\n";
  }
  out << "particular: " << sol.lagrange.particular.to_string() << "\n";
  out << "vanishing: " << sol.lagrange.vanishing.to_string() << "\n";
  out << "components:\n";
  for (std::size_t i = 0; i < sol.components.size(); ++i) {
    out << "  " << s.deps[i] << ": " << format_poly(sol.components[i]) << "\n";
  }
}

// -------------------------------------------------------------------- rev

RepProblem load_rep(const CliConfig& cfg) {
  RepProblem prob = load_problem(cfg.input);
  if (cfg.p) prob.field = choose_prime_field(prob.variables, cfg.p);
  return prob;
}

void cmd_rev(const CliConfig& cfg, std::ostream& out) {
  const RepProblem prob = load_rep(cfg);
  const RepSolution sol = solve_rep(prob);
  if (cfg.format == "json") {
    ojson coords = ojson::array();
    for (std::size_t s = 0; s < sol.coordinates.size(); ++s) {
      ojson c{{"variable", sol.coordinates[s].variable}, {"deps", prob.dep_names(s)}};
      c.update(solution_json(sol.coordinates[s].solutions, cfg));
      coords.push_back(std::move(c));
    }
    ojson j{{"field", prob.field.name()},
            {"transitions", prob.transitions.size()},
            {"coordinates", coords},
            {"total_count", count_string(sol.total_count())}};
    out << j.dump(2) << "\n";
    return;
  }
  out << "field: " << prob.field.name() << "\n";
  out << "transitions: " << prob.transitions.size() << "\n";
  for (std::size_t s = 0; s < sol.coordinates.size(); ++s) {
    out << "f_" << sol.coordinates[s].variable << "(" << join(prob.dep_names(s), ",") << "):\n";
    solution_text(out, sol.coordinates[s].solutions, cfg, "  ");
  }
  out << "total: " << count_string(sol.total_count()) << "\n";
}

// -------------------------------------------------------------------- dyn

Dsf load_dynamics(const CliConfig& cfg) {
  const auto doc = detail::read_json_file(cfg.input);
  std::optional<Dsf> d;
  if (doc.is_object() && doc.contains("updates")) {
    d = load_system(cfg.input);
    if (cfg.p) {
      // Re-read the updates over the requested prime.
      const Field f = choose_prime_field(d->variables(), cfg.p);
      std::vector<MultiPoly> ups;
      for (const auto& u : d->updates()) ups.push_back(parse_poly(format_poly(u), d->variable_names(), f));
      Dsf reread(d->variables(), f, std::move(ups), d->range_mode());
      d.emplace(std::move(reread));
    }
  } else {
    const RepProblem prob = load_rep(cfg);
    d = system_from_solution(prob, solve_rep(prob));
  }
  if (!cfg.range_mode.empty()) {
    const RangeMode m = cfg.range_mode == "strict" ? RangeMode::strict : RangeMode::reduce;
    Dsf remoded(d->variables(), d->field(), d->updates(), m);
    d.emplace(std::move(remoded));
  }
  return *d;
}

void system_header(std::ostream& out, const Dsf& d) {
  out << "field: " << d.field().name() << "\n";
  out << "range mode: " << (d.range_mode() == RangeMode::strict ? "strict" : "reduce") << "\n";
  for (std::size_t i = 0; i < d.dimension(); ++i) {
    out << "f_" << d.variables()[i].name << " = " << format_poly(d.updates()[i]) << "\n";
  }
}

State parse_state_arg(const std::string& text, const Dsf& d, const char* flag) {
  if (text.empty()) throw SchemaError(std::string(flag) + " is required");
  State s = parse_state(text);
  if (s.size() != d.dimension()) {
    throw SchemaError(std::string(flag) + " has " + std::to_string(s.size()) + " coordinates, expected " +
                      std::to_string(d.dimension()));
  }
  return s;
}

void cmd_dyn(const std::string& sub, const CliConfig& cfg, std::ostream& out) {
  const Dsf d = load_dynamics(cfg);
  const std::uint64_t cap = cfg.cap ? cfg.cap : kDefaultStateCap;
  const bool json = cfg.format == "json";
  if (sub != "state-space" && cfg.format == "dot") throw SchemaError("--format dot is only for state-space");

  if (sub == "fixed-points") {
    const auto fps = fixed_points(d, cap);
    if (json) {
      out << ojson{{"fixed_points", states_json(fps)}}.dump(2) << "\n";
    } else {
      out << "fixed points: " << fps.size() << "\n";
      for (const auto& s : fps) out << format_state(s) << "\n";
    }
  } else if (sub == "attractors") {
    const StateSpace ss = build_state_space(d, cap);
    const AttractorReport rep = attractors(ss);
    if (json) {
      ojson list = ojson::array();
      for (const auto& a : rep.attractors) {
        list.push_back({{"cycle", states_json(a.cycle)}, {"length", a.cycle.size()}, {"basin_size", a.basin_size}});
      }
      out << ojson{{"states", ss.size()}, {"attractors", list}}.dump(2) << "\n";
    } else {
      out << "states: " << ss.size() << "\n";
      out << "attractors: " << rep.attractors.size() << "\n";
      for (const auto& a : rep.attractors) {
        std::vector<std::string> cyc;
        for (const auto& s : a.cycle) cyc.push_back(format_state(s));
        out << "length " << a.cycle.size() << ", basin " << a.basin_size << ": " << join(cyc, " -> ") << "\n";
      }
    }
  } else if (sub == "preimage") {
    const State target = parse_state_arg(cfg.target, d, "--target");
    const SearchDomain dom = cfg.search == "full-grid" ? SearchDomain::full_grid : SearchDomain::declared;
    const auto pre = preimage(d, target, dom, cap);
    if (json) {
      out << ojson{{"target", state_json(target)}, {"search", cfg.search}, {"preimage", states_json(pre)}}.dump(2)
          << "\n";
    } else {
      out << "preimage of " << format_state(target) << " (" << cfg.search << "): " << pre.size() << "\n";
      for (const auto& s : pre) out << format_state(s) << "\n";
    }
  } else if (sub == "trajectory") {
    const State start = parse_state_arg(cfg.start, d, "--start");
    const Trajectory t = trajectory(d, start, cfg.max_steps);
    if (json) {
      ojson j{{"states", states_json(t.states)}};
      j["cycle_entry"] = t.cycle_entry ? ojson(*t.cycle_entry) : ojson(nullptr);
      out << j.dump(2) << "\n";
    } else {
      for (std::size_t i = 0; i < t.states.size(); ++i) out << i << ": " << format_state(t.states[i]) << "\n";
      if (t.cycle_entry) {
        out << "returns to step " << *t.cycle_entry << ", cycle length " << t.states.size() - *t.cycle_entry
            << "\n";
      } else {
        out << "no repeat within " << cfg.max_steps << " steps\n";
      }
    }
  } else {
    const StateSpace ss = build_state_space(d, cap);
    if (cfg.format == "dot") {
      out << export_dot(ss);
    } else if (json) {
      ojson states = ojson::array();
      ojson edges = ojson::array();
      for (std::uint64_t i = 0; i < ss.size(); ++i) {
        states.push_back(state_json(ss.state(i)));
        edges.push_back({i, ss.successor(i)});
      }
      out << ojson{{"variables", d.variable_names()}, {"states", states}, {"edges", edges}}.dump(2) << "\n";
    } else {
      system_header(out, d);
      out << "states: " << ss.size() << "\n";
      for (std::uint64_t i = 0; i < ss.size(); ++i) {
        out << format_state(ss.state(i)) << " -> " << format_state(ss.state(ss.successor(i))) << "\n";
      }
    }
  }
}

// ------------------------------------------------------------------ field

// expr := term (("+"|"-") term)*; term := unary (("*"|"/")? unary)*;
// unary := "-" unary | atom ("^" uint)?; atom := uint | "a" | "(" expr ")".
class ElementExpr {
 public:
  ElementExpr(const Field& k, std::string_view text) : k_(k), sc_(text) {}

  FieldElement parse() {
    if (sc_.at_end()) sc_.fail("empty expression");
    FieldElement v = expr();
    if (!sc_.at_end()) sc_.fail("unexpected input");
    return v;
  }

 private:
  FieldElement expr() {
    FieldElement v = term();
    for (;;) {
      if (sc_.accept('+')) {
        v += term();
      } else if (sc_.accept('-')) {
        v -= term();
      } else {
        return v;
      }
    }
  }
  FieldElement term() {
    FieldElement v = unary();
    for (;;) {
      if (sc_.accept('*')) {
        v *= unary();
      } else if (sc_.accept('/')) {
        v = v / unary();
      } else if (sc_.at_digit() || sc_.peek() == 'a' || sc_.peek() == '(') {
        v *= unary();
      } else {
        return v;
      }
    }
  }
  FieldElement unary() {
    if (sc_.accept('-')) return -unary();
    FieldElement v = atom();
    if (sc_.accept('^')) v = v.pow(sc_.read_uint());
    return v;
  }
  FieldElement atom() {
    if (sc_.accept('(')) {
      FieldElement v = expr();
      sc_.expect(')');
      return v;
    }
    if (sc_.accept('a')) {
      if (k_.is_prime_field()) sc_.fail("'a' is not defined in a prime field");
      return k_.generator();
    }
    const std::uint64_t v = sc_.read_uint();
    return k_.from_integer(static_cast<std::int64_t>(v % k_.characteristic()));
  }

  Field k_;
  detail::Scanner sc_;
};

Field field_from(const CliConfig& cfg) {
  if (!cfg.p) throw SchemaError("--p is required");
  if (!cfg.irreducible.empty()) {
    const Field k = Field::extension(*cfg.p, cfg.irreducible);
    if (cfg.n && *cfg.n != k.degree()) throw SchemaError("--n disagrees with the degree of --irreducible");
    return k;
  }
  const unsigned n = cfg.n.value_or(1);
  return n == 1 ? Field::prime(*cfg.p) : Field::extension(*cfg.p, n);
}

void cmd_field(const std::string& sub, const CliConfig& cfg, std::ostream& out) {
  if (sub == "irreducible") {
    if (!cfg.p || !cfg.n) throw SchemaError("--p and --n are required");
    if (!is_prime(*cfg.p)) throw NotPrime(std::to_string(*cfg.p) + " is not prime");
    if (*cfg.n == 0) throw SchemaError("--n must be at least 1");
    const auto m = find_irreducible(*cfg.p, *cfg.n);
    if (cfg.format == "json") {
      out << ojson{{"p", *cfg.p}, {"n", *cfg.n}, {"irreducible", format_modulus(m)}, {"coefficients", m}}.dump(2)
          << "\n";
    } else {
      out << format_modulus(m) << "\n";
    }
    return;
  }
  const Field k = field_from(cfg);
  const FieldElement a = ElementExpr(k, cfg.expression).parse();
  FieldElement r = a;
  if (sub == "inv") {
    r = a.inverse();
  } else if (sub == "pow") {
    r = a.pow(cfg.exponent);
  }
  if (cfg.format == "json") {
    const auto c = r.coefficients();
    out << ojson{{"field", k.name()}, {"value", r.to_string()}, {"coefficients", std::vector<Residue>(c.begin(), c.end())}}
               .dump(2)
        << "\n";
  } else {
    out << r.to_string() << "\n";
  }
}

// ---------------------------------------------------------------- driver

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const Inconsistent*>(&e) || dynamic_cast<const RangeViolation*>(&e)) return kExitInconsistent;
  if (dynamic_cast<const TooLarge*>(&e)) return kExitTooLarge;
  if (dynamic_cast<const Error*>(&e)) return kExitSchema;
  return kExitFailure;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CliConfig cfg;
  CLI::App app{"Polynomial interpolation, reverse engineering and dynamics over finite fields", "ffdyn"};
  app.require_subcommand(1);

  const auto add_format = [&](CLI::App* sub, std::vector<std::string> allowed) {
    sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember(std::move(allowed)));
  };
  const auto add_output = [&](CLI::App* sub) { sub->add_option("--output", cfg.output, "Write output to this file"); };

  auto* solve = app.add_subcommand("solve", "Interpolate a partially defined function from a sample file");
  solve->add_option("input", cfg.input, "Sample file (JSON)")->required()->check(CLI::ExistingFile);
  solve->add_option("--method", cfg.method, "zp: linear system over Z_p; lagrange: through GF(p^n)")
      ->check(CLI::IsMember({"zp", "lagrange"}));
  solve->add_option("--p", cfg.p, "Override the working prime");
  solve->add_option("--irreducible", cfg.irreducible, "Modulus of GF(p^n), e.g. X^2+X+2");
  solve->add_option("--basis", cfg.basis, "Basis of GF(p^n) over Z_p, e.g. a,1");
  solve->add_flag("--enumerate", cfg.enumerate, "List individual solutions");
  solve->add_option("--cap", cfg.cap, "Maximum number of enumerated solutions");
  add_format(solve, {"text", "json"});
  add_output(solve);

  auto* rev = app.add_subcommand("rev", "Reverse-engineer update polynomials from time series");
  rev->add_option("input", cfg.input, "Problem file (JSON)")->required()->check(CLI::ExistingFile);
  rev->add_option("--p", cfg.p, "Override the working prime");
  rev->add_flag("--enumerate", cfg.enumerate, "List individual solutions per variable");
  rev->add_option("--cap", cfg.cap, "Maximum number of enumerated solutions per variable");
  add_format(rev, {"text", "json"});
  add_output(rev);

  auto* dyn = app.add_subcommand("dyn", "Analyse the dynamics of a system");
  dyn->require_subcommand(1);
  std::vector<CLI::App*> dyn_subs;
  for (const char* name : {"fixed-points", "attractors", "preimage", "trajectory", "state-space"}) {
    auto* sub = dyn->add_subcommand(name);
    sub->add_option("input", cfg.input, "System file or problem file (JSON)")->required()->check(CLI::ExistingFile);
    sub->add_option("--p", cfg.p, "Override the working prime");
    sub->add_option("--range-mode", cfg.range_mode, "Out-of-domain update values")
        ->check(CLI::IsMember({"reduce", "strict"}));
    sub->add_option("--cap", cfg.cap, "Maximum number of states");
    add_output(sub);
    dyn_subs.push_back(sub);
  }
  dyn_subs[0]->description("List the fixed points");
  dyn_subs[1]->description("List the cycles and their basin sizes");
  dyn_subs[2]->description("List the states mapped to --target");
  dyn_subs[2]->add_option("--target", cfg.target, "Target state, e.g. 1,2,0")->required();
  dyn_subs[2]->add_option("--search", cfg.search, "declared: the declared domains; full-grid: all of Z_p^n")
      ->check(CLI::IsMember({"declared", "full-grid"}));
  dyn_subs[3]->description("Iterate from --start until a state repeats");
  dyn_subs[3]->add_option("--start", cfg.start, "Start state, e.g. 0,0,0")->required();
  dyn_subs[3]->add_option("--max-steps", cfg.max_steps, "Maximum number of steps");
  dyn_subs[4]->description("Print the state transition graph");
  for (std::size_t i = 0; i < 4; ++i) add_format(dyn_subs[i], {"text", "json"});
  add_format(dyn_subs[4], {"text", "json", "dot"});

  auto* field = app.add_subcommand("field", "Finite field utilities");
  field->require_subcommand(1);
  std::vector<CLI::App*> field_subs;
  for (const char* name : {"irreducible", "eval", "inv", "pow"}) {
    auto* sub = field->add_subcommand(name);
    sub->add_option("--p", cfg.p, "Characteristic")->required();
    sub->add_option("--n", cfg.n, "Extension degree");
    add_format(sub, {"text", "json"});
    add_output(sub);
    field_subs.push_back(sub);
  }
  field_subs[0]->description("Smallest monic irreducible polynomial of degree --n");
  field_subs[1]->description("Evaluate an expression in a, e.g. \"(2a+1)*a^3/2\"");
  field_subs[2]->description("Multiplicative inverse");
  field_subs[3]->description("Power of an element");
  for (std::size_t i = 1; i < 4; ++i) {
    field_subs[i]->add_option("--irreducible", cfg.irreducible, "Modulus, e.g. X^2+X+2");
    field_subs[i]->add_option("element", cfg.expression, "Element expression")->required();
  }
  field_subs[3]->add_option("exponent", cfg.exponent, "Nonnegative exponent")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitSchema;
  }

  std::ostringstream buffer;
  try {
    if (solve->parsed()) {
      cmd_solve(cfg, buffer);
    } else if (rev->parsed()) {
      cmd_rev(cfg, buffer);
    } else if (dyn->parsed()) {
      for (auto* sub : dyn_subs) {
        if (sub->parsed()) cmd_dyn(sub->get_name(), cfg, buffer);
      }
    } else {
      for (auto* sub : field_subs) {
        if (sub->parsed()) cmd_field(sub->get_name(), cfg, buffer);
      }
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }

  if (cfg.output.empty()) {
    out << buffer.str();
  } else {
    std::ofstream file(cfg.output);
    if (!(file << buffer.str())) {
      err << "error: cannot write " << cfg.output << "\n";
      return kExitFailure;
    }
  }
  return kExitOk;
}

}  // namespace ffdyn
