#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "ffdyn/errors.hpp"

/// Exact arithmetic in Z_p and GF(p^n).
///
/// A Field is a cheap, copyable handle to immutable field data. Handles for the
/// same (p, modulus) pair compare equal and may be shared across threads.
/// Elements are stored in the polynomial basis in ascending powers of the
/// generator a (the class of X modulo the defining polynomial), always fully
/// reduced, so equality is coefficient-wise.
namespace ffdyn {

using Residue = std::uint64_t;

bool is_prime(std::uint64_t n);

Residue add_mod(Residue a, Residue b, std::uint64_t p);
Residue sub_mod(Residue a, Residue b, std::uint64_t p);
Residue mul_mod(Residue a, Residue b, std::uint64_t p);
Residue pow_mod(Residue a, std::uint64_t e, std::uint64_t p);
/// Inverse modulo a prime. Throws DivisionByZero for a == 0.
Residue inv_mod(Residue a, std::uint64_t p);
/// Least nonnegative residue of a signed integer.
Residue reduce_signed(std::int64_t v, std::uint64_t p);

namespace detail {
struct FieldData;
}

class FieldElement;

class Field {
 public:
  /// Z_p. Throws NotPrime.
  static Field prime(std::uint64_t p);
  /// GF(p^n) over the smallest monic irreducible of degree n (see find_irreducible).
  static Field extension(std::uint64_t p, unsigned n);
  /// GF(p^n) over a caller-supplied monic irreducible, coefficients ascending
  /// (constant term first, leading 1 last). Throws InvalidModulus.
  static Field extension(std::uint64_t p, std::span<const Residue> modulus);
  /// Same, from text such as "X^2+X+2".
  static Field extension(std::uint64_t p, std::string_view modulus_text);

  std::uint64_t characteristic() const;
  unsigned degree() const;
  /// p^n.
  std::uint64_t order() const;
  bool is_prime_field() const { return degree() == 1; }
  /// Ascending, monic, length degree()+1.
  std::span<const Residue> modulus() const;
  std::string modulus_text() const;
  /// "Z_3" or "GF(3^2)[X^2+X+2]".
  std::string name() const;

  FieldElement zero() const;
  FieldElement one() const;
  /// Image of an integer under Z -> Z_p -> K.
  FieldElement from_integer(std::int64_t v) const;
  /// The generator a = X mod modulus.
  FieldElement generator() const;
  /// Ascending coefficient vector; each entry must be < p and the length at
  /// most degree(). Throws DimensionMismatch / DomainViolation.
  FieldElement element(std::span<const Residue> ascending) const;
  /// Inverse of FieldElement::index().
  FieldElement from_index(std::uint64_t index) const;
  /// Parses the textual element form ("2a+1", "a^6", "7"); powers of a are
  /// reduced modulo the defining polynomial. Throws ParseError.
  FieldElement parse(std::string_view text) const;

  friend bool operator==(const Field& a, const Field& b) { return a.data_ == b.data_; }

 private:
  explicit Field(const detail::FieldData* data) : data_(data) {}
  friend class FieldElement;

  const detail::FieldData* data_;
};

class FieldElement {
 public:
  using Coefficients = boost::container::small_vector<Residue, 4>;

  Field field() const { return Field(field_); }
  /// Ascending powers of the generator; length equals the field degree.
  std::span<const Residue> coefficients() const { return {coeffs_.data(), coeffs_.size()}; }
  /// The Z_p value when the element lies in the prime subfield.
  /// Throws DomainViolation otherwise.
  Residue prime_value() const;
  bool in_prime_subfield() const;
  bool is_zero() const;
  bool is_one() const;
  /// Sum c_i p^i; a bijection onto [0, p^n).
  std::uint64_t index() const;

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator-() const;
  FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
  FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
  FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }

  /// Throws DivisionByZero.
  FieldElement inverse() const;
  FieldElement operator/(const FieldElement& o) const { return *this * o.inverse(); }
  FieldElement pow(std::uint64_t k) const;

  /// Descending powers of a, e.g. "2a+1", "a^2+2", "0".
  std::string to_string() const;

  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.field_ == b.field_ && a.coeffs_ == b.coeffs_;
  }

 private:
  FieldElement(const detail::FieldData* f, Coefficients c) : field_(f), coeffs_(std::move(c)) {}
  friend class Field;
  void require_same(const FieldElement& o) const;

  const detail::FieldData* field_;
  Coefficients coeffs_;
};

/// Smallest monic irreducible of degree n over Z_p, where candidates are
/// ranked by the integer sum c_i p^i of their non-leading coefficients
/// (constant term least significant). Ascending coefficients, monic.
std::vector<Residue> find_irreducible(std::uint64_t p, unsigned n);

/// Rabin's irreducibility test. Input must be monic of degree >= 1.
bool is_irreducible(std::uint64_t p, std::span<const Residue> monic_ascending);

/// "X^2+X+2" style text. Coefficients in [0,p), terms by descending degree.
std::string format_modulus(std::span<const Residue> ascending);
std::vector<Residue> parse_modulus(std::string_view text, std::uint64_t p);

/// Ordered basis of K over Z_p, realising the correspondence
/// (a_1,...,a_n) -> a_1 e_1 + ... + a_n e_n.
class Basis {
 public:
  /// {a^{n-1}, ..., a, 1}: (x_1, x_2) -> x_1 a + x_2 for n = 2.
  static Basis polynomial(const Field& k);
  /// Throws DimensionMismatch on a wrong count, InvalidBasis when dependent.
  Basis(const Field& k, std::vector<FieldElement> elements);
  /// Comma-separated element list, e.g. "a,1".
  static Basis parse(const Field& k, std::string_view text);

  const Field& field() const { return field_; }
  const std::vector<FieldElement>& elements() const { return elements_; }

  FieldElement lambda(std::span<const Residue> point) const;
  std::vector<Residue> lambda_inverse(const FieldElement& e) const;

 private:
  Field field_;
  std::vector<FieldElement> elements_;
  // Row-major n x n matrix over Z_p mapping ascending coefficients to basis
  // coordinates.
  std::vector<Residue> to_coords_;
};

}  // namespace ffdyn
