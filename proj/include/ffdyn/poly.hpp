#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ffdyn/field.hpp"
#include "ffdyn/linalg.hpp"

namespace ffdyn {

/// Per-variable exponents of a monomial.
using ExponentVector = std::vector<unsigned>;

/// Canonical column order for monomials: ascending total degree, then
/// ascending largest single exponent, then descending lexicographic order.
/// For two variables over Z_3 this gives 1, x, z, xz, x^2, z^2, x^2z, xz^2, x^2z^2.
struct MonomialLess {
  bool operator()(const ExponentVector& a, const ExponentVector& b) const;
};

/// All p^nvars reduced monomials (exponents in [0, p-1]) in MonomialLess order.
std::vector<ExponentVector> monomial_order(std::size_t nvars, std::uint64_t p);

/// Reduced exponent under x^p = x: 0 stays 0, e >= 1 maps into [1, p-1].
unsigned reduce_exponent(std::uint64_t e, std::uint64_t p);

/// Reduced multivariate polynomial over Z_p: every exponent is at most p-1
/// and no stored coefficient is zero. Two MultiPolys over the same variables
/// are equal iff they define the same function Z_p^n -> Z_p.
class MultiPoly {
 public:
  using Terms = std::map<ExponentVector, Residue, MonomialLess>;

  /// Zero polynomial. The field must be a prime field.
  MultiPoly(Field field, std::vector<std::string> variables);

  static MultiPoly constant(Field field, std::vector<std::string> variables, Residue c);
  static MultiPoly variable(Field field, std::vector<std::string> variables, std::size_t index);
  /// Builds the reduced form of an arbitrary polynomial given as
  /// (exponents, signed coefficient) pairs.
  static MultiPoly reduce(Field field, std::vector<std::string> variables,
                          const std::vector<std::pair<std::vector<std::uint64_t>, std::int64_t>>& terms);
  /// Coefficient vector in monomial_order(variables, p) column order.
  static MultiPoly from_coefficients(Field field, std::vector<std::string> variables, const Vector& coeffs);

  const Field& field() const { return field_; }
  std::uint64_t characteristic() const { return field_.characteristic(); }
  const std::vector<std::string>& variables() const { return vars_; }
  const Terms& terms() const { return terms_; }

  /// Adds c * x^exps, reducing exponents first.
  void add_term(std::span<const std::uint64_t> exps, Residue c);
  Residue coefficient(const ExponentVector& exps) const;
  bool is_zero() const { return terms_.empty(); }
  unsigned total_degree() const;
  /// Names of variables appearing with a positive exponent.
  std::vector<std::string> used_variables() const;

  /// Throws DimensionMismatch when the point length differs from the
  /// variable count.
  Residue evaluate(std::span<const Residue> point) const;

  /// Same polynomial over another variable list; every used variable must be
  /// present. Throws DimensionMismatch otherwise.
  MultiPoly over(const std::vector<std::string>& variables) const;

  MultiPoly operator+(const MultiPoly& o) const;
  MultiPoly operator-(const MultiPoly& o) const;
  MultiPoly operator*(const MultiPoly& o) const;
  MultiPoly operator-() const;
  MultiPoly scaled(Residue c) const;

  std::string to_string() const;

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.field_ == b.field_ && a.vars_ == b.vars_ && a.terms_ == b.terms_;
  }

 private:
  void require_compatible(const MultiPoly& o) const;
  void accumulate(ExponentVector exps, Residue c);

  Field field_;
  std::vector<std::string> vars_;
  Terms terms_;
};

/// Terms in ascending monomial order, e.g. "1+2*x1^2*x3^2"; zero prints "0".
std::string format_poly(const MultiPoly& f);

/// Grammar: terms joined by "+" (or "-"); a term is a product of integer
/// coefficients and var or var^k factors, with "*" optional between a
/// coefficient and a variable and between variables. Whitespace is ignored.
/// Throws ParseError carrying the offending position.
MultiPoly parse_poly(std::string_view text, std::vector<std::string> variables, const Field& field);

/// Default variable names x1..xn.
std::vector<std::string> default_variables(std::size_t n);

/// Univariate polynomial over any field, coefficients ascending with no
/// trailing zeros.
class UniPoly {
 public:
  explicit UniPoly(Field field);
  UniPoly(Field field, Vector coefficients);
  /// x - c.
  static UniPoly linear_root(const FieldElement& c);
  static UniPoly x(Field field);

  const Field& field() const { return field_; }
  const Vector& coefficients() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  FieldElement coefficient(std::size_t k) const;

  FieldElement evaluate(const FieldElement& a) const;

  UniPoly operator+(const UniPoly& o) const;
  UniPoly operator-(const UniPoly& o) const;
  UniPoly operator*(const UniPoly& o) const;
  UniPoly scaled(const FieldElement& c) const;

  /// Ascending, multi-term coefficients parenthesised: "(2a+2)+2*x+(a+2)*x^2+x^3".
  std::string to_string(std::string_view var = "x") const;

  friend bool operator==(const UniPoly& a, const UniPoly& b) {
    return a.field_ == b.field_ && a.coeffs_ == b.coeffs_;
  }

 private:
  void trim();

  Field field_;
  Vector coeffs_;
};

}  // namespace ffdyn
