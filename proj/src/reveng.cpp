#include "ffdyn/reveng.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json_util.hpp"

namespace ffdyn {

std::uint64_t smallest_prime_at_least(std::uint64_t n) {
  if (n <= 2) return 2;
  while (!is_prime(n)) ++n;
  return n;
}

Field choose_prime_field(const std::vector<VariableSpec>& variables, std::optional<std::uint64_t> requested) {
  std::uint64_t largest = 2;
  for (const auto& v : variables) largest = std::max(largest, v.domain);
  if (!requested) return Field::prime(smallest_prime_at_least(largest));
  if (!is_prime(*requested)) throw BadPrime("p = " + std::to_string(*requested) + " is not prime");
  if (*requested < largest) {
    throw BadPrime("p = " + std::to_string(*requested) + " is smaller than the largest domain " +
                   std::to_string(largest));
  }
  return Field::prime(*requested);
}

std::size_t RepProblem::variable_index(const std::string& name) const {
  for (std::size_t i = 0; i < variables.size(); ++i) {
    if (variables[i].name == name) return i;
  }
  throw SchemaError("unknown variable \"" + name + "\"");
}

std::vector<std::string> RepProblem::dep_names(std::size_t s) const {
  std::vector<std::string> out;
  for (std::size_t i : deps.at(s)) out.push_back(variables[i].name);
  return out;
}

std::vector<std::string> RepProblem::variable_names() const {
  std::vector<std::string> out;
  for (const auto& v : variables) out.push_back(v.name);
  return out;
}

RepProblem make_problem(std::vector<VariableSpec> variables,
                        const std::vector<std::vector<std::vector<Residue>>>& trajectories,
                        const std::map<std::string, std::vector<std::string>>& deps,
                        std::optional<std::uint64_t> p) {
  if (variables.empty()) throw SchemaError("no variables");
  RepProblem prob{variables, choose_prime_field(variables, p), {}, {}, {}};
  for (const auto& traj : trajectories) {
    const std::size_t first = prob.data.size();
    for (const auto& row : traj) {
      const std::size_t r = prob.data.size();
      if (row.size() != variables.size()) {
        throw SchemaError("row " + std::to_string(r + 1) + " has " + std::to_string(row.size()) +
                          " entries, expected " + std::to_string(variables.size()));
      }
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (row[i] >= variables[i].domain) {
          throw DomainViolation("row " + std::to_string(r + 1) + ": " + variables[i].name + " = " +
                                std::to_string(row[i]) + " is outside X_" + std::to_string(variables[i].domain));
        }
      }
      prob.data.push_back(row);
    }
    for (std::size_t r = first; r + 1 < prob.data.size(); ++r) prob.transitions.push_back({r, r + 1});
  }
  if (prob.transitions.empty()) throw SchemaError("need at least two consecutive rows (one transition)");

  for (const auto& [name, _] : deps) prob.variable_index(name);
  prob.deps.resize(variables.size());
  for (std::size_t s = 0; s < variables.size(); ++s) {
    auto it = deps.find(variables[s].name);
    std::vector<std::size_t> idx;
    if (it == deps.end()) {
      for (std::size_t i = 0; i < variables.size(); ++i) idx.push_back(i);
    } else {
      for (const auto& d : it->second) idx.push_back(prob.variable_index(d));
      std::sort(idx.begin(), idx.end());
      idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    }
    prob.deps[s] = std::move(idx);
  }
  return prob;
}

namespace {

std::vector<std::vector<Residue>> read_csv_rows(const std::filesystem::path& path,
                                                const std::vector<VariableSpec>& variables) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open " + path.string());
  const auto split = [](const std::string& line) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      cell.erase(0, cell.find_first_not_of(" \t\r"));
      cell.erase(cell.find_last_not_of(" \t\r") + 1);
      cells.push_back(cell);
    }
    return cells;
  };
  std::string line;
  if (!std::getline(in, line)) throw SchemaError(path.string() + ": empty CSV");
  const auto header = split(line);
  std::vector<std::size_t> column_of(variables.size());
  for (std::size_t i = 0; i < variables.size(); ++i) {
    auto it = std::find(header.begin(), header.end(), variables[i].name);
    if (it == header.end()) throw SchemaError(path.string() + ": no column for variable " + variables[i].name);
    column_of[i] = static_cast<std::size_t>(it - header.begin());
  }
  std::vector<std::vector<Residue>> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto cells = split(line);
    if (cells.size() != header.size()) {
      throw SchemaError(path.string() + ":" + std::to_string(line_no) + ": wrong number of columns");
    }
    std::vector<Residue> row;
    for (std::size_t c : column_of) {
      try {
        std::size_t used = 0;
        const unsigned long long v = std::stoull(cells[c], &used);
        if (used != cells[c].size()) throw std::invalid_argument("trailing");
        row.push_back(v);
      } catch (const std::exception&) {
        throw SchemaError(path.string() + ":" + std::to_string(line_no) + ": bad integer \"" + cells[c] + "\"");
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

RepProblem load_problem(const std::filesystem::path& path) {
  using detail::json;
  const json doc = detail::read_json_file(path);
  auto variables = detail::parse_variables(doc);

  std::vector<std::vector<std::vector<Residue>>> trajectories;
  const auto parse_rows = [](const json& rows, const std::string& where) {
    if (!rows.is_array()) throw SchemaError(where + " must be an array of rows");
    std::vector<std::vector<Residue>> out;
    for (std::size_t j = 0; j < rows.size(); ++j) {
      out.push_back(detail::parse_row(rows[j], where + "[" + std::to_string(j) + "]"));
    }
    return out;
  };
  if (doc.contains("trajectories")) {
    const json& trajs = doc.at("trajectories");
    if (!trajs.is_array()) throw SchemaError("\"trajectories\" must be an array");
    for (std::size_t t = 0; t < trajs.size(); ++t) {
      trajectories.push_back(parse_rows(trajs[t], "trajectories[" + std::to_string(t) + "]"));
    }
  } else {
    const json& data = detail::require(doc, "data", "problem");
    if (data.is_string()) {
      trajectories.push_back(read_csv_rows(path.parent_path() / data.get<std::string>(), variables));
    } else {
      trajectories.push_back(parse_rows(data, "data"));
    }
  }

  std::map<std::string, std::vector<std::string>> deps;
  if (doc.contains("deps")) {
    const json& d = doc.at("deps");
    if (!d.is_object()) throw SchemaError("\"deps\" must map variable names to name lists");
    for (const auto& [name, list] : d.items()) {
      if (!list.is_array()) throw SchemaError("deps." + name + " must be an array");
      std::vector<std::string> names;
      for (const auto& n : list) names.push_back(detail::as_string(n, "deps." + name));
      deps[name] = std::move(names);
    }
  }
  return make_problem(std::move(variables), trajectories, deps, detail::optional_prime(doc));
}

SampleProblem load_samples(const std::filesystem::path& path) {
  using detail::json;
  const json doc = detail::read_json_file(path);
  SampleProblem out{detail::parse_variables(doc), SampleSet{Field::prime(2), {}, {}, {}, {}}};
  const Field field = choose_prime_field(out.variables, detail::optional_prime(doc));

  std::vector<std::size_t> dep_idx;
  if (doc.contains("deps")) {
    const json& d = doc.at("deps");
    if (!d.is_array()) throw SchemaError("\"deps\" must be an array of variable names");
    for (const auto& n : d) {
      const std::string name = detail::as_string(n, "deps");
      auto it = std::find_if(out.variables.begin(), out.variables.end(),
                             [&](const VariableSpec& v) { return v.name == name; });
      if (it == out.variables.end()) throw SchemaError("unknown variable \"" + name + "\" in deps");
      dep_idx.push_back(static_cast<std::size_t>(it - out.variables.begin()));
    }
    std::sort(dep_idx.begin(), dep_idx.end());
    dep_idx.erase(std::unique(dep_idx.begin(), dep_idx.end()), dep_idx.end());
  } else {
    for (std::size_t i = 0; i < out.variables.size(); ++i) dep_idx.push_back(i);
  }

  SampleSet s{field, {}, {}, {}, {}};
  for (std::size_t i : dep_idx) s.deps.push_back(out.variables[i].name);
  const json& samples = detail::require(doc, "samples", "sample file");
  if (!samples.is_array() || samples.empty()) throw SchemaError("\"samples\" must be a nonempty array");
  for (std::size_t j = 0; j < samples.size(); ++j) {
    const std::string where = "samples[" + std::to_string(j) + "]";
    const auto in = detail::parse_row(detail::require(samples[j], "in", where), where + ".in");
    const auto value = detail::as_uint(detail::require(samples[j], "out", where), where + ".out");
    if (in.size() != out.variables.size()) {
      throw SchemaError(where + ": expected " + std::to_string(out.variables.size()) + " inputs");
    }
    for (std::size_t i = 0; i < in.size(); ++i) {
      if (in[i] >= out.variables[i].domain) {
        throw DomainViolation(where + ": " + out.variables[i].name + " = " + std::to_string(in[i]) +
                              " is outside X_" + std::to_string(out.variables[i].domain));
      }
    }
    if (value >= field.characteristic()) {
      throw DomainViolation(where + ": output " + std::to_string(value) + " is outside " + field.name());
    }
    std::vector<Residue> pt;
    for (std::size_t i : dep_idx) pt.push_back(in[i]);
    s.points.push_back(std::move(pt));
    s.values.push_back(value);
    s.labels.push_back("sample " + std::to_string(j + 1));
  }
  check_samples(s);
  out.samples = std::move(s);
  return out;
}

SampleSet project_transitions(const RepProblem& prob, std::size_t s) {
  if (s >= prob.variables.size()) throw DimensionMismatch("variable index out of range");
  SampleSet out{prob.field, prob.dep_names(s), {}, {}, {}};
  for (const auto& t : prob.transitions) {
    std::vector<Residue> pt;
    for (std::size_t i : prob.deps[s]) pt.push_back(prob.data[t.from][i]);
    out.points.push_back(std::move(pt));
    out.values.push_back(prob.data[t.to][s]);
    out.labels.push_back("row " + std::to_string(t.from + 1));
  }
  try {
    check_samples(out);
  } catch (const InconsistentData& e) {
    throw InconsistentData("variable " + prob.variables[s].name + ": " + e.what());
  }
  return out;
}

BigCount RepSolution::total_count() const {
  BigCount total = 1;
  for (const auto& c : coordinates) total *= c.solutions.solution_count();
  return total;
}

std::vector<MultiPoly> RepSolution::particular() const {
  std::vector<MultiPoly> out;
  for (const auto& c : coordinates) out.push_back(c.solutions.particular);
  return out;
}

RepSolution solve_rep(const RepProblem& prob) {
  RepSolution sol;
  for (std::size_t s = 0; s < prob.variables.size(); ++s) {
    SampleSet samples = project_transitions(prob, s);
    PolySolutionSet set = solve_df_zp(samples);
    sol.coordinates.push_back({prob.variables[s].name, std::move(samples), std::move(set)});
  }
  return sol;
}

bool in_vanishing_subspace(const CoordinateSolution& coord, const MultiPoly& g) {
  if (!(g.field() == coord.samples.field)) return false;
  for (const auto& v : g.used_variables()) {
    const auto& deps = coord.samples.deps;
    if (std::find(deps.begin(), deps.end(), v) == deps.end()) return false;
  }
  return is_solution(coord.solutions.particular + g.over(coord.samples.deps), coord.samples);
}

bool verify_candidate_basis(const RepSolution& sol, const std::map<std::string, std::vector<MultiPoly>>& candidates) {
  for (const auto& [name, polys] : candidates) {
    auto it = std::find_if(sol.coordinates.begin(), sol.coordinates.end(),
                           [&](const CoordinateSolution& c) { return c.variable == name; });
    if (it == sol.coordinates.end()) return false;
    for (const auto& g : polys) {
      if (!in_vanishing_subspace(*it, g)) return false;
    }
  }
  return true;
}

}  // namespace ffdyn
