#include "ffdyn/dynsys.hpp"

#include <algorithm>
#include <future>
#include <map>
#include <sstream>
#include <thread>

#include "json_util.hpp"
#include "scanner.hpp"

namespace ffdyn {

Dsf::Dsf(std::vector<VariableSpec> variables, Field field, std::vector<MultiPoly> updates, RangeMode mode)
    : variables_(std::move(variables)), field_(field), mode_(mode) {
  if (variables_.empty()) throw SchemaError("a system needs at least one variable");
  if (!field_.is_prime_field()) throw FieldMismatch("systems are defined over a prime field");
  if (updates.size() != variables_.size()) {
    throw DimensionMismatch(std::to_string(updates.size()) + " updates for " + std::to_string(variables_.size()) +
                            " variables");
  }
  for (const auto& v : variables_) {
    if (v.domain < 2 || v.domain > field_.characteristic()) {
      throw BadPrime("domain of " + v.name + " (" + std::to_string(v.domain) + ") does not fit in " + field_.name());
    }
  }
  const auto names = variable_names();
  updates_.reserve(updates.size());
  for (const auto& u : updates) {
    if (!(u.field() == field_)) throw FieldMismatch("update over " + u.field().name() + ", system over " + field_.name());
    updates_.push_back(u.over(names));
  }
}

std::vector<std::string> Dsf::variable_names() const {
  std::vector<std::string> out;
  for (const auto& v : variables_) out.push_back(v.name);
  return out;
}

std::vector<std::uint64_t> Dsf::domains() const {
  std::vector<std::uint64_t> out;
  for (const auto& v : variables_) out.push_back(v.domain);
  return out;
}

State Dsf::evaluate(const State& x) const {
  if (x.size() != variables_.size()) {
    throw DimensionMismatch("state has " + std::to_string(x.size()) + " coordinates, system has " +
                            std::to_string(variables_.size()));
  }
  for (Residue c : x) {
    if (c >= field_.characteristic()) throw DomainViolation(format_state(x) + " is outside " + field_.name());
  }
  State y(x.size());
  for (std::size_t i = 0; i < updates_.size(); ++i) y[i] = updates_[i].evaluate(x);
  return y;
}

State Dsf::step(const State& x) const {
  if (x.size() != variables_.size()) {
    throw DimensionMismatch("state has " + std::to_string(x.size()) + " coordinates, system has " +
                            std::to_string(variables_.size()));
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] >= variables_[i].domain) {
      throw DomainViolation(format_state(x) + ": " + variables_[i].name + " is outside X_" +
                            std::to_string(variables_[i].domain));
    }
  }
  State y = evaluate(x);
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i] < variables_[i].domain) continue;
    if (mode_ == RangeMode::strict) {
      throw RangeViolation("update of " + variables_[i].name + " at " + format_state(x) + " gives " +
                           std::to_string(y[i]) + ", outside X_" + std::to_string(variables_[i].domain));
    }
    y[i] %= variables_[i].domain;
  }
  return y;
}

std::uint64_t Dsf::state_count(std::uint64_t cap) const {
  std::uint64_t total = 1;
  for (const auto& v : variables_) {
    if (total > cap / v.domain) {
      throw TooLarge("state space exceeds the cap of " + std::to_string(cap) + " states");
    }
    total *= v.domain;
  }
  return total;
}

Dsf load_system(const std::filesystem::path& path) {
  using detail::json;
  const json doc = detail::read_json_file(path);
  auto variables = detail::parse_variables(doc);
  const Field field = choose_prime_field(variables, detail::optional_prime(doc));
  RangeMode mode = RangeMode::reduce;
  if (doc.contains("range_mode")) {
    const std::string m = detail::as_string(doc.at("range_mode"), "range_mode");
    if (m == "strict") {
      mode = RangeMode::strict;
    } else if (m != "reduce") {
      throw SchemaError("range_mode must be \"reduce\" or \"strict\"");
    }
  }
  const json& updates = detail::require(doc, "updates", "system");
  if (!updates.is_object()) throw SchemaError("\"updates\" must map variable names to polynomials");
  std::vector<std::string> names;
  for (const auto& v : variables) names.push_back(v.name);
  for (const auto& [name, _] : updates.items()) {
    if (std::find(names.begin(), names.end(), name) == names.end()) {
      throw SchemaError("update for unknown variable \"" + name + "\"");
    }
  }
  std::vector<MultiPoly> polys;
  for (const auto& v : variables) {
    if (!updates.contains(v.name)) throw SchemaError("no update for variable \"" + v.name + "\"");
    const std::string text = detail::as_string(updates.at(v.name), "updates." + v.name);
    try {
      polys.push_back(parse_poly(text, names, field));
    } catch (const ParseError& e) {
      throw SchemaError("updates." + v.name + ": " + e.what());
    }
  }
  return Dsf(std::move(variables), field, std::move(polys), mode);
}

Dsf system_from_solution(const RepProblem& prob, const RepSolution& sol, RangeMode mode) {
  return Dsf(prob.variables, prob.field, sol.particular(), mode);
}

// ----------------------------------------------------------- StateSpace

StateSpace::StateSpace(std::vector<std::uint64_t> domains, std::vector<std::uint64_t> successor)
    : domains_(std::move(domains)), successor_(std::move(successor)) {}

State StateSpace::state(std::uint64_t index) const {
  State s(domains_.size());
  for (std::size_t i = domains_.size(); i-- > 0;) {
    s[i] = index % domains_[i];
    index /= domains_[i];
  }
  return s;
}

std::uint64_t StateSpace::index(const State& s) const {
  if (s.size() != domains_.size()) throw DimensionMismatch("state dimension mismatch");
  std::uint64_t idx = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] >= domains_[i]) throw DomainViolation(format_state(s) + " is outside the declared domains");
    idx = idx * domains_[i] + s[i];
  }
  return idx;
}

StateSpace build_state_space(const Dsf& d, std::uint64_t cap) {
  const std::uint64_t total = d.state_count(cap);
  StateSpace shape(d.domains(), {});
  std::vector<std::uint64_t> succ(total);
  const auto fill = [&](std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t i = begin; i < end; ++i) succ[i] = shape.index(d.step(shape.state(i)));
  };
  // Chunks write disjoint slots, so the result does not depend on the split.
  const std::uint64_t workers = std::max<std::uint64_t>(1, std::min<std::uint64_t>(std::thread::hardware_concurrency(), total / 16384));
  if (workers == 1) {
    fill(0, total);
  } else {
    std::vector<std::future<void>> jobs;
    const std::uint64_t chunk = (total + workers - 1) / workers;
    for (std::uint64_t b = 0; b < total; b += chunk) {
      jobs.push_back(std::async(std::launch::async, fill, b, std::min(total, b + chunk)));
    }
    for (auto& j : jobs) j.get();
  }
  return StateSpace(d.domains(), std::move(succ));
}

std::vector<State> fixed_points(const Dsf& d, std::uint64_t cap) {
  const StateSpace ss = build_state_space(d, cap);
  std::vector<State> out;
  for (std::uint64_t i = 0; i < ss.size(); ++i) {
    if (ss.successor(i) == i) out.push_back(ss.state(i));
  }
  return out;
}

std::vector<State> AttractorReport::fixed_points() const {
  std::vector<State> out;
  for (const auto& a : attractors) {
    if (a.cycle.size() == 1) out.push_back(a.cycle.front());
  }
  return out;
}

AttractorReport attractors(const StateSpace& ss) {
  constexpr std::size_t kUnset = SIZE_MAX;
  constexpr std::size_t kOnPath = SIZE_MAX - 1;
  const std::uint64_t n = ss.size();
  std::vector<std::size_t> basin(n, kUnset);
  std::vector<std::vector<std::uint64_t>> cycles;
  std::vector<std::uint64_t> path;
  for (std::uint64_t start = 0; start < n; ++start) {
    if (basin[start] != kUnset) continue;
    path.clear();
    std::uint64_t cur = start;
    while (basin[cur] == kUnset) {
      basin[cur] = kOnPath;
      path.push_back(cur);
      cur = ss.successor(cur);
    }
    std::size_t id;
    if (basin[cur] == kOnPath) {
      // Closed a new cycle at cur.
      id = cycles.size();
      auto at = std::find(path.begin(), path.end(), cur);
      cycles.emplace_back(at, path.end());
    } else {
      id = basin[cur];
    }
    for (std::uint64_t v : path) basin[v] = id;
  }

  // Canonical order: each cycle rotated to its smallest state, cycles sorted.
  for (auto& c : cycles) std::rotate(c.begin(), std::min_element(c.begin(), c.end()), c.end());
  std::vector<std::size_t> order(cycles.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return cycles[a][0] < cycles[b][0]; });
  std::vector<std::size_t> rank(cycles.size());
  for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = i;

  AttractorReport report;
  report.attractors.resize(cycles.size());
  for (std::size_t i = 0; i < cycles.size(); ++i) {
    auto& a = report.attractors[rank[i]];
    for (std::uint64_t v : cycles[i]) a.cycle.push_back(ss.state(v));
  }
  report.basin_of.resize(n);
  for (std::uint64_t v = 0; v < n; ++v) {
    report.basin_of[v] = rank[basin[v]];
    ++report.attractors[report.basin_of[v]].basin_size;
  }
  return report;
}

AttractorReport attractors(const Dsf& d, std::uint64_t cap) { return attractors(build_state_space(d, cap)); }

std::vector<State> preimage(const Dsf& d, const State& target, SearchDomain domain, std::uint64_t cap) {
  if (target.size() != d.dimension()) throw DimensionMismatch("target dimension mismatch");
  std::vector<State> out;
  if (domain == SearchDomain::declared) {
    const std::uint64_t total = d.state_count(cap);
    State x(d.dimension(), 0);
    for (std::uint64_t idx = 0; idx < total; ++idx) {
      if (d.step(x) == target) out.push_back(x);
      // Mixed-radix increment, last coordinate fastest.
      for (std::size_t i = x.size(); i-- > 0;) {
        if (++x[i] < d.variables()[i].domain) break;
        x[i] = 0;
      }
    }
    return out;
  }
  const std::uint64_t p = d.field().characteristic();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < d.dimension(); ++i) {
    if (total > cap / p) throw TooLarge("full grid exceeds the cap of " + std::to_string(cap) + " states");
    total *= p;
  }
  State x(d.dimension(), 0);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::uint64_t rest = idx;
    for (std::size_t i = x.size(); i-- > 0;) {
      x[i] = rest % p;
      rest /= p;
    }
    if (d.evaluate(x) == target) out.push_back(x);
  }
  return out;
}

Trajectory trajectory(const Dsf& d, const State& start, std::size_t max_steps) {
  Trajectory t;
  std::map<State, std::size_t> seen;
  State cur = start;
  d.step(start);  // validates the start state
  t.states.push_back(cur);
  seen.emplace(cur, 0);
  for (std::size_t k = 0; k < max_steps; ++k) {
    cur = d.step(cur);
    auto [it, inserted] = seen.emplace(cur, t.states.size());
    if (!inserted) {
      t.cycle_entry = it->second;
      break;
    }
    t.states.push_back(cur);
  }
  return t;
}

std::string format_state(const State& s) {
  std::string out = "(";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
  return out + ")";
}

State parse_state(std::string_view text) {
  detail::Scanner sc(text);
  const bool paren = sc.accept('(');
  State s;
  do {
    s.push_back(sc.read_uint());
  } while (sc.accept(','));
  if (paren) sc.expect(')');
  if (!sc.at_end()) sc.fail("unexpected trailing input");
  return s;
}

std::string export_dot(const StateSpace& ss) {
  std::ostringstream out;
  out << "digraph state_space {\n";
  for (std::uint64_t i = 0; i < ss.size(); ++i) {
    out << "  s" << i << " [label=\"" << format_state(ss.state(i)) << "\"];\n";
  }
  for (std::uint64_t i = 0; i < ss.size(); ++i) out << "  s" << i << " -> s" << ss.successor(i) << ";\n";
  out << "}\n";
  return out.str();
}

}  // namespace ffdyn
