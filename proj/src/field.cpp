#include "ffdyn/field.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <utility>

#include "scanner.hpp"

namespace ffdyn {

namespace detail {

struct FieldData {
  std::uint64_t p;
  unsigned n;
  std::uint64_t order;
  std::vector<Residue> modulus;  // ascending, monic, size n + 1
};

}  // namespace detail

namespace {

using detail::FieldData;
using Poly = std::vector<Residue>;  // ascending coefficients over Z_p

constexpr std::uint64_t kOrderLimit = std::uint64_t{1} << 63;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// a mod f, f monic.
void reduce_by(Poly& a, const Poly& f, std::uint64_t p) {
  trim(a);
  const std::size_t df = f.size() - 1;
  while (a.size() > df) {
    const Residue lead = a.back();
    const std::size_t shift = a.size() - 1 - df;
    for (std::size_t i = 0; i < df; ++i) {
      a[shift + i] = sub_mod(a[shift + i], mul_mod(lead, f[i], p), p);
    }
    a.pop_back();
    trim(a);
  }
}

Poly mul_poly(const Poly& a, const Poly& b, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      r[i + j] = add_mod(r[i + j], mul_mod(a[i], b[j], p), p);
    }
  }
  return r;
}

Poly powmod_poly(Poly base, std::uint64_t e, const Poly& f, std::uint64_t p) {
  Poly result{1};
  reduce_by(base, f, p);
  while (e > 0) {
    if (e & 1) {
      result = mul_poly(result, base, p);
      reduce_by(result, f, p);
    }
    e >>= 1;
    if (e > 0) {
      base = mul_poly(base, base, p);
      reduce_by(base, f, p);
    }
  }
  return result;
}

// Remainder of a by b for arbitrary nonzero b.
Poly rem_poly(Poly a, const Poly& b, std::uint64_t p) {
  const Residue inv_lead = inv_mod(b.back(), p);
  Poly monic(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) monic[i] = mul_mod(b[i], inv_lead, p);
  reduce_by(a, monic, p);
  return a;
}

Poly gcd_poly(Poly a, Poly b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = rem_poly(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

std::vector<unsigned> prime_divisors(unsigned n) {
  std::vector<unsigned> out;
  for (unsigned q = 2; q * q <= n; ++q) {
    if (n % q == 0) {
      out.push_back(q);
      while (n % q == 0) n /= q;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// X^(p^k) mod f.
Poly frobenius_power_of_x(unsigned k, const Poly& f, std::uint64_t p) {
  Poly h{0, 1};
  reduce_by(h, f, p);
  for (unsigned i = 0; i < k; ++i) h = powmod_poly(h, p, f, p);
  return h;
}

std::uint64_t checked_order(std::uint64_t p, unsigned n) {
  std::uint64_t q = 1;
  for (unsigned i = 0; i < n; ++i) {
    if (q > (kOrderLimit - 1) / p) {
      throw InvalidModulus("field order " + std::to_string(p) + "^" + std::to_string(n) +
                           " exceeds 2^63");
    }
    q *= p;
  }
  return q;
}

const FieldData* intern(std::uint64_t p, std::vector<Residue> modulus) {
  static std::mutex mu;
  static std::map<std::pair<std::uint64_t, std::vector<Residue>>, std::unique_ptr<FieldData>> registry;
  const std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(p, modulus);
  auto it = registry.find(key);
  if (it != registry.end()) return it->second.get();
  const auto n = static_cast<unsigned>(modulus.size() - 1);
  auto data = std::make_unique<FieldData>(FieldData{p, n, checked_order(p, n), std::move(modulus)});
  const FieldData* raw = data.get();
  registry.emplace(std::move(key), std::move(data));
  return raw;
}

void append_term(std::string& out, Residue c, std::size_t power, char symbol, bool star) {
  if (c == 0) return;
  if (!out.empty()) out += '+';
  if (power == 0) {
    out += std::to_string(c);
    return;
  }
  if (c != 1) {
    out += std::to_string(c);
    if (star) out += '*';
  }
  out += symbol;
  if (power > 1) out += '^' + std::to_string(power);
}

// Sum of terms [c][*]sym[^k] joined by + or -, combined into ascending
// coefficients (unbounded degree).
Poly parse_univariate(std::string_view text, std::uint64_t p, char sym_lower, char sym_upper,
                      bool allow_symbol) {
  detail::Scanner sc(text);
  Poly acc;
  if (sc.at_end()) sc.fail("empty expression");
  bool first = true;
  while (!sc.at_end()) {
    bool negate = false;
    if (!first) {
      if (sc.accept('-')) {
        negate = true;
      } else {
        sc.expect('+');
      }
    } else if (sc.accept('-')) {
      negate = true;
    }
    first = false;
    Residue coeff = 1;
    bool have_coeff = false;
    if (sc.at_digit()) {
      coeff = sc.read_uint() % p;
      have_coeff = true;
      sc.accept('*');
    }
    std::uint64_t power = 0;
    const char c = sc.peek();
    if (c == sym_lower || c == sym_upper) {
      if (!allow_symbol) sc.fail("generator symbol not available in a prime field");
      sc.advance(1);
      power = 1;
      if (sc.accept('^')) power = sc.read_uint();
    } else if (!have_coeff) {
      sc.fail("expected term");
    }
    if (power > 4096) sc.fail("exponent too large");
    if (acc.size() <= power) acc.resize(power + 1, 0);
    const Residue term = negate ? sub_mod(0, coeff, p) : coeff;
    acc[power] = add_mod(acc[power], term, p);
  }
  return acc;
}

// Gauss-Jordan inverse of a row-major n x n matrix over Z_p; empty if singular.
std::vector<Residue> invert_mod_p(std::vector<Residue> m, std::size_t n, std::uint64_t p) {
  std::vector<Residue> inv(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) inv[i * n + i] = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m[piv * n + col] == 0) ++piv;
    if (piv == n) return {};
    for (std::size_t j = 0; j < n; ++j) {
      std::swap(m[piv * n + j], m[col * n + j]);
      std::swap(inv[piv * n + j], inv[col * n + j]);
    }
    const Residue s = inv_mod(m[col * n + col], p);
    for (std::size_t j = 0; j < n; ++j) {
      m[col * n + j] = mul_mod(m[col * n + j], s, p);
      inv[col * n + j] = mul_mod(inv[col * n + j], s, p);
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || m[r * n + col] == 0) continue;
      const Residue f = m[r * n + col];
      for (std::size_t j = 0; j < n; ++j) {
        m[r * n + j] = sub_mod(m[r * n + j], mul_mod(f, m[col * n + j], p), p);
        inv[r * n + j] = sub_mod(inv[r * n + j], mul_mod(f, inv[col * n + j], p), p);
      }
    }
  }
  return inv;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // Deterministic for all 64-bit n with these witnesses.
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

Residue add_mod(Residue a, Residue b, std::uint64_t p) {
  const Residue s = a + b;
  return (s >= p || s < a) ? s - p : s;
}

Residue sub_mod(Residue a, Residue b, std::uint64_t p) { return a >= b ? a - b : a + (p - b); }

Residue mul_mod(Residue a, Residue b, std::uint64_t p) {
  return static_cast<Residue>(static_cast<unsigned __int128>(a) * b % p);
}

Residue pow_mod(Residue a, std::uint64_t e, std::uint64_t p) {
  Residue r = 1 % p;
  a %= p;
  while (e > 0) {
    if (e & 1) r = mul_mod(r, a, p);
    a = mul_mod(a, a, p);
    e >>= 1;
  }
  return r;
}

Residue inv_mod(Residue a, std::uint64_t p) {
  a %= p;
  if (a == 0) throw DivisionByZero("inverse of zero modulo " + std::to_string(p));
  // Extended Euclid on signed 128-bit values.
  __int128 r0 = p, r1 = a, t0 = 0, t1 = 1;
  while (r1 != 0) {
    const __int128 q = r0 / r1;
    std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
    std::tie(t0, t1) = std::make_pair(t1, t0 - q * t1);
  }
  if (t0 < 0) t0 += p;
  return static_cast<Residue>(t0);
}

Residue reduce_signed(std::int64_t v, std::uint64_t p) {
  if (v >= 0) return static_cast<Residue>(v) % p;
  const Residue m = static_cast<Residue>(-(v + 1)) % p;  // avoids overflow at INT64_MIN
  return sub_mod(p - 1, m, p);
}

// ---------------------------------------------------------------- Field

Field Field::prime(std::uint64_t p) {
  if (!is_prime(p)) throw NotPrime(std::to_string(p) + " is not prime");
  return Field(intern(p, {0, 1}));
}

Field Field::extension(std::uint64_t p, unsigned n) {
  if (!is_prime(p)) throw NotPrime(std::to_string(p) + " is not prime");
  if (n == 0) throw InvalidModulus("extension degree must be at least 1");
  checked_order(p, n);
  return Field(intern(p, find_irreducible(p, n)));
}

Field Field::extension(std::uint64_t p, std::span<const Residue> modulus) {
  if (!is_prime(p)) throw NotPrime(std::to_string(p) + " is not prime");
  Poly f(modulus.begin(), modulus.end());
  for (Residue c : f) {
    if (c >= p) throw InvalidModulus("modulus coefficient out of range [0,p)");
  }
  trim(f);
  if (f.size() < 2) throw InvalidModulus("modulus must have degree at least 1");
  if (f.back() != 1) throw InvalidModulus("modulus must be monic");
  checked_order(p, static_cast<unsigned>(f.size() - 1));
  if (!is_irreducible(p, f)) throw InvalidModulus(format_modulus(f) + " is reducible over Z_" + std::to_string(p));
  return Field(intern(p, std::move(f)));
}

Field Field::extension(std::uint64_t p, std::string_view modulus_text) {
  if (!is_prime(p)) throw NotPrime(std::to_string(p) + " is not prime");
  const Poly f = parse_modulus(modulus_text, p);
  return extension(p, std::span<const Residue>(f));
}

std::uint64_t Field::characteristic() const { return data_->p; }
unsigned Field::degree() const { return data_->n; }
std::uint64_t Field::order() const { return data_->order; }
std::span<const Residue> Field::modulus() const { return data_->modulus; }
std::string Field::modulus_text() const { return format_modulus(data_->modulus); }

std::string Field::name() const {
  if (data_->n == 1) return "Z_" + std::to_string(data_->p);
  return "GF(" + std::to_string(data_->p) + "^" + std::to_string(data_->n) + ")[" + modulus_text() + "]";
}

FieldElement Field::zero() const { return FieldElement(data_, FieldElement::Coefficients(data_->n, 0)); }

FieldElement Field::one() const { return from_integer(1); }

FieldElement Field::from_integer(std::int64_t v) const {
  FieldElement::Coefficients c(data_->n, 0);
  c[0] = reduce_signed(v, data_->p);
  return FieldElement(data_, std::move(c));
}

FieldElement Field::generator() const {
  Poly x{0, 1};
  reduce_by(x, data_->modulus, data_->p);
  FieldElement::Coefficients c(data_->n, 0);
  std::copy(x.begin(), x.end(), c.begin());
  return FieldElement(data_, std::move(c));
}

FieldElement Field::element(std::span<const Residue> ascending) const {
  if (ascending.size() > data_->n) {
    throw DimensionMismatch("element has " + std::to_string(ascending.size()) +
                            " coefficients, field degree is " + std::to_string(data_->n));
  }
  FieldElement::Coefficients c(data_->n, 0);
  for (std::size_t i = 0; i < ascending.size(); ++i) {
    if (ascending[i] >= data_->p) throw DomainViolation("coefficient out of range [0,p)");
    c[i] = ascending[i];
  }
  return FieldElement(data_, std::move(c));
}

FieldElement Field::from_index(std::uint64_t index) const {
  if (index >= data_->order) throw DomainViolation("element index out of range");
  FieldElement::Coefficients c(data_->n, 0);
  for (unsigned i = 0; i < data_->n; ++i) {
    c[i] = index % data_->p;
    index /= data_->p;
  }
  return FieldElement(data_, std::move(c));
}

FieldElement Field::parse(std::string_view text) const {
  Poly acc = parse_univariate(text, data_->p, 'a', 'A', data_->n > 1);
  reduce_by(acc, data_->modulus, data_->p);
  FieldElement::Coefficients c(data_->n, 0);
  std::copy(acc.begin(), acc.end(), c.begin());
  return FieldElement(data_, std::move(c));
}

// --------------------------------------------------------- FieldElement

void FieldElement::require_same(const FieldElement& o) const {
  if (field_ != o.field_) {
    throw FieldMismatch("operands belong to " + Field(field_).name() + " and " + Field(o.field_).name());
  }
}

bool FieldElement::in_prime_subfield() const {
  return std::all_of(coeffs_.begin() + 1, coeffs_.end(), [](Residue c) { return c == 0; });
}

Residue FieldElement::prime_value() const {
  if (!in_prime_subfield()) throw DomainViolation(to_string() + " is not in the prime subfield");
  return coeffs_[0];
}

bool FieldElement::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](Residue c) { return c == 0; });
}

bool FieldElement::is_one() const { return coeffs_[0] == 1 && in_prime_subfield(); }

std::uint64_t FieldElement::index() const {
  std::uint64_t idx = 0;
  for (std::size_t i = coeffs_.size(); i-- > 0;) idx = idx * field_->p + coeffs_[i];
  return idx;
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  require_same(o);
  Coefficients c(coeffs_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = add_mod(coeffs_[i], o.coeffs_[i], field_->p);
  return FieldElement(field_, std::move(c));
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
  require_same(o);
  Coefficients c(coeffs_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = sub_mod(coeffs_[i], o.coeffs_[i], field_->p);
  return FieldElement(field_, std::move(c));
}

FieldElement FieldElement::operator-() const {
  Coefficients c(coeffs_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = sub_mod(0, coeffs_[i], field_->p);
  return FieldElement(field_, std::move(c));
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
  require_same(o);
  const std::uint64_t p = field_->p;
  const unsigned n = field_->n;
  if (n == 1) return FieldElement(field_, Coefficients{mul_mod(coeffs_[0], o.coeffs_[0], p)});
  boost::container::small_vector<Residue, 8> prod(2 * n - 1, 0);
  for (unsigned i = 0; i < n; ++i) {
    if (coeffs_[i] == 0) continue;
    for (unsigned j = 0; j < n; ++j) {
      prod[i + j] = add_mod(prod[i + j], mul_mod(coeffs_[i], o.coeffs_[j], p), p);
    }
  }
  const auto& f = field_->modulus;
  for (std::size_t d = prod.size() - 1; d >= n; --d) {
    const Residue lead = prod[d];
    if (lead == 0) continue;
    for (unsigned i = 0; i < n; ++i) {
      prod[d - n + i] = sub_mod(prod[d - n + i], mul_mod(lead, f[i], p), p);
    }
  }
  return FieldElement(field_, Coefficients(prod.begin(), prod.begin() + n));
}

FieldElement FieldElement::pow(std::uint64_t k) const {
  FieldElement result = Field(field_).one();
  FieldElement base = *this;
  while (k > 0) {
    if (k & 1) result *= base;
    k >>= 1;
    if (k > 0) base *= base;
  }
  return result;
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of zero in " + Field(field_).name());
  if (field_->n == 1) return FieldElement(field_, Coefficients{inv_mod(coeffs_[0], field_->p)});
  return pow(field_->order - 2);
}

std::string FieldElement::to_string() const {
  std::string out;
  for (std::size_t i = coeffs_.size(); i-- > 0;) append_term(out, coeffs_[i], i, 'a', false);
  return out.empty() ? "0" : out;
}

// ------------------------------------------------------ irreducibles

bool is_irreducible(std::uint64_t p, std::span<const Residue> monic_ascending) {
  Poly f(monic_ascending.begin(), monic_ascending.end());
  trim(f);
  if (f.size() < 2 || f.back() != 1) return false;
  const auto n = static_cast<unsigned>(f.size() - 1);
  if (n == 1) return true;
  if (f[0] == 0) return false;
  // f irreducible iff X^(p^n) = X mod f and gcd(X^(p^(n/q)) - X, f) = 1 for
  // every prime q | n.
  Poly x{0, 1};
  Poly h = frobenius_power_of_x(n, f, p);
  trim(h);
  if (h != x) return false;
  for (unsigned q : prime_divisors(n)) {
    Poly g = frobenius_power_of_x(n / q, f, p);
    if (g.size() < 2) g.resize(2, 0);
    g[1] = sub_mod(g[1], 1, p);
    trim(g);
    if (g.empty()) return false;
    if (gcd_poly(f, g, p).size() != 1) return false;
  }
  return true;
}

std::vector<Residue> find_irreducible(std::uint64_t p, unsigned n) {
  if (!is_prime(p)) throw NotPrime(std::to_string(p) + " is not prime");
  if (n == 0) throw InvalidModulus("extension degree must be at least 1");
  if (n == 1) return {0, 1};
  const std::uint64_t count = checked_order(p, n);
  Poly f(n + 1, 0);
  f[n] = 1;
  for (std::uint64_t code = 0; code < count; ++code) {
    std::uint64_t rest = code;
    for (unsigned i = 0; i < n; ++i) {
      f[i] = rest % p;
      rest /= p;
    }
    if (f[0] == 0) continue;
    if (is_irreducible(p, f)) return f;
  }
  throw InvalidModulus("no irreducible polynomial found");  // unreachable for prime p
}

std::string format_modulus(std::span<const Residue> ascending) {
  std::string out;
  for (std::size_t i = ascending.size(); i-- > 0;) append_term(out, ascending[i], i, 'X', false);
  return out.empty() ? "0" : out;
}

std::vector<Residue> parse_modulus(std::string_view text, std::uint64_t p) {
  Poly f = parse_univariate(text, p, 'x', 'X', true);
  trim(f);
  return f;
}

// ------------------------------------------------------------- Basis

Basis Basis::polynomial(const Field& k) {
  std::vector<FieldElement> els;
  const FieldElement a = k.generator();
  for (unsigned i = k.degree(); i-- > 0;) els.push_back(a.pow(i));
  return Basis(k, std::move(els));
}

Basis::Basis(const Field& k, std::vector<FieldElement> elements) : field_(k), elements_(std::move(elements)) {
  const unsigned n = k.degree();
  if (elements_.size() != n) {
    throw DimensionMismatch("basis needs " + std::to_string(n) + " elements, got " +
                            std::to_string(elements_.size()));
  }
  // Column j of M holds the ascending coefficients of basis element j, so
  // M * coords = coefficients and coords = M^{-1} * coefficients.
  std::vector<Residue> m(static_cast<std::size_t>(n) * n);
  for (unsigned j = 0; j < n; ++j) {
    if (!(elements_[j].field() == k)) throw FieldMismatch("basis element from another field");
    const auto c = elements_[j].coefficients();
    for (unsigned i = 0; i < n; ++i) m[i * n + j] = c[i];
  }
  to_coords_ = invert_mod_p(std::move(m), n, k.characteristic());
  if (to_coords_.empty()) throw InvalidBasis("basis elements are linearly dependent over Z_p");
}

Basis Basis::parse(const Field& k, std::string_view text) {
  std::vector<FieldElement> els;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    els.push_back(k.parse(text.substr(start, comma == std::string_view::npos ? comma : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return Basis(k, std::move(els));
}

FieldElement Basis::lambda(std::span<const Residue> point) const {
  if (point.size() != elements_.size()) {
    throw DimensionMismatch("point has " + std::to_string(point.size()) + " coordinates, basis has " +
                            std::to_string(elements_.size()));
  }
  FieldElement acc = field_.zero();
  for (std::size_t i = 0; i < point.size(); ++i) {
    if (point[i] >= field_.characteristic()) throw DomainViolation("coordinate out of range [0,p)");
    acc += elements_[i] * field_.from_integer(static_cast<std::int64_t>(point[i]));
  }
  return acc;
}

std::vector<Residue> Basis::lambda_inverse(const FieldElement& e) const {
  if (!(e.field() == field_)) throw FieldMismatch("element from another field");
  const std::size_t n = elements_.size();
  const std::uint64_t p = field_.characteristic();
  const auto c = e.coefficients();
  std::vector<Residue> out(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    Residue s = 0;
    for (std::size_t j = 0; j < n; ++j) s = add_mod(s, mul_mod(to_coords_[i * n + j], c[j], p), p);
    out[i] = s;
  }
  return out;
}

}  // namespace ffdyn
