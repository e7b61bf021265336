#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ffdyn/poly.hpp"
#include "ffdyn/reveng.hpp"

namespace ffdyn {

using State = std::vector<Residue>;

/// How an update value outside its variable's declared domain is treated.
enum class RangeMode {
  /// o -> o mod m_i.
  reduce,
  /// RangeViolation.
  strict,
};

enum class SearchDomain {
  /// X_{m_1} x ... x X_{m_n}, with step() semantics.
  declared,
  /// All of Z_p^n, raw polynomial evaluation without range handling.
  full_grid,
};

inline constexpr std::uint64_t kDefaultStateCap = 1'000'000;

/// Dynamical system over finite sets: one reduced update polynomial per
/// variable, iterated synchronously.
class Dsf {
 public:
  /// Each update may be over any subset of the variable names.
  /// Throws DimensionMismatch, FieldMismatch, SchemaError.
  Dsf(std::vector<VariableSpec> variables, Field field, std::vector<MultiPoly> updates,
      RangeMode mode = RangeMode::reduce);

  const std::vector<VariableSpec>& variables() const { return variables_; }
  const Field& field() const { return field_; }
  /// Updates re-expressed over the full variable list.
  const std::vector<MultiPoly>& updates() const { return updates_; }
  RangeMode range_mode() const { return mode_; }
  std::size_t dimension() const { return variables_.size(); }
  std::vector<std::string> variable_names() const;
  std::vector<std::uint64_t> domains() const;

  /// Raw evaluation F(x) over Z_p for any x in Z_p^n.
  State evaluate(const State& x) const;
  /// One synchronous update from a declared state, honouring the range mode.
  /// Throws DomainViolation for an out-of-domain input, RangeViolation in
  /// strict mode.
  State step(const State& x) const;

  /// Product of the declared domain sizes; TooLarge above `cap`.
  std::uint64_t state_count(std::uint64_t cap = kDefaultStateCap) const;

 private:
  std::vector<VariableSpec> variables_;
  Field field_;
  std::vector<MultiPoly> updates_;
  RangeMode mode_;
};

/// JSON system file {"variables", "p"?, "updates": {name: text}, "range_mode"?}.
Dsf load_system(const std::filesystem::path& path);

/// The system F = particular solution of a reverse-engineering problem.
Dsf system_from_solution(const RepProblem& prob, const RepSolution& sol, RangeMode mode = RangeMode::reduce);

/// Functional digraph x -> step(x) on the declared states. States are indexed
/// in lexicographic order (first variable most significant).
class StateSpace {
 public:
  StateSpace(std::vector<std::uint64_t> domains, std::vector<std::uint64_t> successor);

  std::uint64_t size() const { return successor_.size(); }
  const std::vector<std::uint64_t>& domains() const { return domains_; }
  std::uint64_t successor(std::uint64_t index) const { return successor_[index]; }
  const std::vector<std::uint64_t>& successors() const { return successor_; }

  State state(std::uint64_t index) const;
  std::uint64_t index(const State& s) const;

 private:
  std::vector<std::uint64_t> domains_;
  std::vector<std::uint64_t> successor_;
};

/// Throws TooLarge when the declared product exceeds `cap`.
StateSpace build_state_space(const Dsf& d, std::uint64_t cap = kDefaultStateCap);

/// Sorted lexicographically.
std::vector<State> fixed_points(const Dsf& d, std::uint64_t cap = kDefaultStateCap);

struct Attractor {
  /// Cycle starting at its lexicographically smallest state; length 1 for a
  /// fixed point.
  std::vector<State> cycle;
  std::uint64_t basin_size = 0;
};

struct AttractorReport {
  /// Ordered by first cycle state.
  std::vector<Attractor> attractors;
  /// Attractor index reached from each state index.
  std::vector<std::size_t> basin_of;

  std::vector<State> fixed_points() const;
};

AttractorReport attractors(const StateSpace& ss);
AttractorReport attractors(const Dsf& d, std::uint64_t cap = kDefaultStateCap);

/// Every x in the search domain with F(x) = target, sorted.
std::vector<State> preimage(const Dsf& d, const State& target, SearchDomain domain = SearchDomain::declared,
                            std::uint64_t cap = kDefaultStateCap);

struct Trajectory {
  /// Distinct states in visiting order, starting with the start state.
  std::vector<State> states;
  /// Index into `states` of the state the walk returned to, if it did.
  std::optional<std::size_t> cycle_entry;
};

Trajectory trajectory(const Dsf& d, const State& start, std::size_t max_steps);

/// Graphviz digraph: one node per state labelled "(v1,...,vn)" in index
/// order, then one edge per arc.
std::string export_dot(const StateSpace& ss);

std::string format_state(const State& s);
/// "1,2,0" or "(1,2,0)". Throws ParseError.
State parse_state(std::string_view text);

}  // namespace ffdyn
