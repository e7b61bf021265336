#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ffdyn/interp.hpp"

namespace ffdyn {

/// A variable ranging over X_m = {0, ..., m-1}, embedded in Z_p.
struct VariableSpec {
  std::string name;
  std::uint64_t domain = 2;
};

/// Smallest prime >= n (n >= 2).
std::uint64_t smallest_prime_at_least(std::uint64_t n);

/// Resolves the working prime: `requested` if given (must be prime and at
/// least every domain size, else BadPrime), otherwise the smallest prime
/// covering the largest domain.
Field choose_prime_field(const std::vector<VariableSpec>& variables, std::optional<std::uint64_t> requested);

/// A prime-field interpolation instance read from a sample file: the declared variables and
/// the samples projected onto the chosen deps.
struct SampleProblem {
  std::vector<VariableSpec> variables;
  SampleSet samples;
};

/// JSON sample file {"p"?, "variables", "samples": [{"in", "out"}], "deps"?}.
/// Inputs are full variable vectors; missing deps means all variables.
/// Throws SchemaError (including an empty sample list), DomainViolation,
/// BadPrime, InconsistentData.
SampleProblem load_samples(const std::filesystem::path& path);

struct Transition {
  std::size_t from;  // row index into RepProblem::data
  std::size_t to;
};

/// Observed time series plus dependency constraints.
struct RepProblem {
  std::vector<VariableSpec> variables;
  Field field;
  std::vector<std::vector<Residue>> data;
  std::vector<Transition> transitions;
  /// deps[s] lists variable indices (ascending declaration order) that
  /// variable s may depend on.
  std::vector<std::vector<std::size_t>> deps;

  std::size_t variable_index(const std::string& name) const;
  std::vector<std::string> dep_names(std::size_t s) const;
  std::vector<std::string> variable_names() const;
};

/// Validates and assembles a problem from trajectories (each a list of
/// consecutive rows). Missing deps entries default to all variables.
/// Throws SchemaError, DomainViolation, BadPrime.
RepProblem make_problem(std::vector<VariableSpec> variables,
                        const std::vector<std::vector<std::vector<Residue>>>& trajectories,
                        const std::map<std::string, std::vector<std::string>>& deps,
                        std::optional<std::uint64_t> p = std::nullopt);

/// JSON problem file; see README for the schema. "data" may be a row list or
/// the path of a CSV file (header = variable names) relative to the JSON.
RepProblem load_problem(const std::filesystem::path& path);

/// Samples for f_s: rows r_1..r_m projected to deps(s) mapped to r_{s,j+1}.
/// Throws InconsistentData naming the colliding rows.
SampleSet project_transitions(const RepProblem& prob, std::size_t s);

struct CoordinateSolution {
  std::string variable;
  SampleSet samples;
  PolySolutionSet solutions;
};

struct RepSolution {
  std::vector<CoordinateSolution> coordinates;

  /// Product of the per-coordinate counts.
  BigCount total_count() const;
  /// F = (f_1, ..., f_n), each over its own deps.
  std::vector<MultiPoly> particular() const;
};

RepSolution solve_rep(const RepProblem& prob);

/// True iff g lies in the vanishing subspace of the coordinate, i.e. the
/// particular solution plus g is still a solution.
bool in_vanishing_subspace(const CoordinateSolution& coord, const MultiPoly& g);

/// Checks every candidate against the vanishing subspace of its coordinate
/// (keyed by variable name). Unknown names yield false.
bool verify_candidate_basis(const RepSolution& sol, const std::map<std::string, std::vector<MultiPoly>>& candidates);

}  // namespace ffdyn
