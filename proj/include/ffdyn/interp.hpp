#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "ffdyn/field.hpp"
#include "ffdyn/linalg.hpp"
#include "ffdyn/poly.hpp"

namespace ffdyn {

using BigCount = boost::multiprecision::cpp_int;

/// A partially defined function S -> Z_p given by its graph. Points are over
/// the `deps` variables, in that order.
struct SampleSet {
  Field field;
  std::vector<std::string> deps;
  std::vector<std::vector<Residue>> points;
  std::vector<Residue> values;
  /// Optional per-sample names used in error messages (e.g. "row 3").
  std::vector<std::string> labels;

  std::size_t size() const { return points.size(); }
  std::string label(std::size_t i) const;
};

/// Checks shapes and ranges, then that equal points carry equal values.
/// Throws DimensionMismatch, DomainViolation or InconsistentData (naming
/// both colliding samples).
void check_samples(const SampleSet& s);

/// The sample system: one row per sample, one column per monomial of
/// monomial_order(|deps|, p); entry = point^exponent. Throws SchemaError on an
/// empty sample set.
std::pair<Matrix, Vector> build_system(const SampleSet& s);

/// particular + span(basis): every reduced polynomial over `deps` that
/// matches the samples.
struct PolySolutionSet {
  MultiPoly particular;
  std::vector<MultiPoly> basis;
  std::size_t rank = 0;

  std::size_t nullity() const { return basis.size(); }
  BigCount solution_count() const;
};

/// Free-variables-zero particular solution plus one vanishing polynomial per
/// free column. Throws InconsistentData.
PolySolutionSet solve_df_zp(const SampleSet& s);

struct Enumeration {
  std::vector<MultiPoly> polynomials;
  bool truncated = false;
};

/// Members particular + sum c_i basis_i, coefficient tuples in lexicographic
/// order, at most `cap` of them.
Enumeration enumerate_solutions(const PolySolutionSet& set, std::size_t cap = 10000);

/// Unique reduced interpolant of a total function Z_p^k -> Z_p. Values are in
/// grid order: the first variable is the most significant digit, so index
/// (v_1, ..., v_k) = sum v_i p^(k-i). Throws DimensionMismatch unless
/// |values| = p^k.
MultiPoly interpolate_full_table(const Field& field, std::vector<std::string> variables,
                                 std::span<const Residue> values);

/// True iff f matches every sample and mentions no variable outside deps.
bool is_solution(const MultiPoly& f, const SampleSet& s);

/// Unique polynomial of degree <= m-1 through (points[i], values[i]).
/// Throws DuplicatePoint or DimensionMismatch.
UniPoly lagrange_interpolate(const Vector& points, const Vector& values);

/// Monic prod (x - a_i). Throws DuplicatePoint.
UniPoly vanishing_poly(const Vector& points);

/// The m x m Vandermonde matrix a_i^k, k = 0..m-1, and the
/// right-hand side.
std::pair<Matrix, Vector> build_vandermonde(const Vector& points, const Vector& values);

/// Coordinate functions of g under the basis: returns F = (F_1..F_n) over
/// Z_p with lambda(F(v)) = g(lambda(v)) for every v in Z_p^n.
std::vector<MultiPoly> uni_to_multi(const UniPoly& g, const Basis& basis,
                                    std::vector<std::string> variables = {});

struct LagrangeSolution {
  UniPoly particular;
  UniPoly vanishing;
};

struct DfPnSolution {
  LagrangeSolution lagrange;
  /// Sample points under lambda.
  Vector points;
  Vector values;
  /// uni_to_multi(lagrange.particular), over the sample set's deps.
  std::vector<MultiPoly> components;
};

/// Interpolation through GF(p^n): n = |deps| must equal the basis field's
/// degree. Throws DimensionMismatch or InconsistentData.
DfPnSolution solve_df_pn(const SampleSet& s, const Basis& basis);

}  // namespace ffdyn
