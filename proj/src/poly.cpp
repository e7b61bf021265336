#include "ffdyn/poly.hpp"

#include <algorithm>
#include <numeric>

#include "scanner.hpp"

namespace ffdyn {

bool MonomialLess::operator()(const ExponentVector& a, const ExponentVector& b) const {
  const auto total = [](const ExponentVector& v) { return std::accumulate(v.begin(), v.end(), 0UL); };
  const auto largest = [](const ExponentVector& v) { return v.empty() ? 0U : *std::max_element(v.begin(), v.end()); };
  const auto ta = total(a), tb = total(b);
  if (ta != tb) return ta < tb;
  const auto ma = largest(a), mb = largest(b);
  if (ma != mb) return ma < mb;
  return b < a;
}

std::vector<ExponentVector> monomial_order(std::size_t nvars, std::uint64_t p) {
  constexpr std::uint64_t kLimit = 1U << 24;
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < nvars; ++i) {
    if (count > kLimit / p) throw TooLarge("monomial basis of size " + std::to_string(p) + "^" + std::to_string(nvars));
    count *= p;
  }
  std::vector<ExponentVector> out;
  out.reserve(count);
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    ExponentVector e(nvars);
    std::uint64_t rest = idx;
    for (std::size_t i = nvars; i-- > 0;) {
      e[i] = static_cast<unsigned>(rest % p);
      rest /= p;
    }
    out.push_back(std::move(e));
  }
  std::sort(out.begin(), out.end(), MonomialLess{});
  return out;
}

unsigned reduce_exponent(std::uint64_t e, std::uint64_t p) {
  if (e == 0) return 0;
  if (e < p) return static_cast<unsigned>(e);
  return static_cast<unsigned>((e - 1) % (p - 1) + 1);
}

std::vector<std::string> default_variables(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= n; ++i) out.push_back("x" + std::to_string(i));
  return out;
}

// ------------------------------------------------------------ MultiPoly

MultiPoly::MultiPoly(Field field, std::vector<std::string> variables)
    : field_(field), vars_(std::move(variables)) {
  if (!field_.is_prime_field()) throw FieldMismatch("multivariate polynomials are over a prime field");
}

MultiPoly MultiPoly::constant(Field field, std::vector<std::string> variables, Residue c) {
  MultiPoly f(field, std::move(variables));
  f.accumulate(ExponentVector(f.vars_.size(), 0), c % field.characteristic());
  return f;
}

MultiPoly MultiPoly::variable(Field field, std::vector<std::string> variables, std::size_t index) {
  MultiPoly f(field, std::move(variables));
  if (index >= f.vars_.size()) throw DimensionMismatch("variable index out of range");
  ExponentVector e(f.vars_.size(), 0);
  e[index] = 1;
  // x^1 reduces to itself for every p >= 2.
  f.accumulate(std::move(e), 1);
  return f;
}

MultiPoly MultiPoly::reduce(Field field, std::vector<std::string> variables,
                            const std::vector<std::pair<std::vector<std::uint64_t>, std::int64_t>>& terms) {
  MultiPoly f(field, std::move(variables));
  for (const auto& [exps, c] : terms) f.add_term(exps, reduce_signed(c, field.characteristic()));
  return f;
}

MultiPoly MultiPoly::from_coefficients(Field field, std::vector<std::string> variables, const Vector& coeffs) {
  MultiPoly f(field, std::move(variables));
  const auto order = monomial_order(f.vars_.size(), field.characteristic());
  if (coeffs.size() != order.size()) {
    throw DimensionMismatch("expected " + std::to_string(order.size()) + " coefficients, got " +
                            std::to_string(coeffs.size()));
  }
  for (std::size_t i = 0; i < order.size(); ++i) f.accumulate(order[i], coeffs[i].prime_value());
  return f;
}

void MultiPoly::accumulate(ExponentVector exps, Residue c) {
  if (c == 0) return;
  const std::uint64_t p = characteristic();
  auto [it, inserted] = terms_.try_emplace(std::move(exps), c);
  if (!inserted) {
    it->second = add_mod(it->second, c, p);
    if (it->second == 0) terms_.erase(it);
  }
}

void MultiPoly::add_term(std::span<const std::uint64_t> exps, Residue c) {
  if (exps.size() != vars_.size()) {
    throw DimensionMismatch("term has " + std::to_string(exps.size()) + " exponents, polynomial has " +
                            std::to_string(vars_.size()) + " variables");
  }
  ExponentVector e(exps.size());
  for (std::size_t i = 0; i < exps.size(); ++i) e[i] = reduce_exponent(exps[i], characteristic());
  accumulate(std::move(e), c % characteristic());
}

Residue MultiPoly::coefficient(const ExponentVector& exps) const {
  auto it = terms_.find(exps);
  return it == terms_.end() ? 0 : it->second;
}

unsigned MultiPoly::total_degree() const {
  unsigned d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, std::accumulate(e.begin(), e.end(), 0U));
  return d;
}

std::vector<std::string> MultiPoly::used_variables() const {
  std::vector<bool> used(vars_.size(), false);
  for (const auto& [e, c] : terms_) {
    for (std::size_t i = 0; i < e.size(); ++i) used[i] = used[i] || e[i] > 0;
  }
  std::vector<std::string> out;
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (used[i]) out.push_back(vars_[i]);
  }
  return out;
}

Residue MultiPoly::evaluate(std::span<const Residue> point) const {
  if (point.size() != vars_.size()) {
    throw DimensionMismatch("point has " + std::to_string(point.size()) + " coordinates, polynomial has " +
                            std::to_string(vars_.size()) + " variables");
  }
  const std::uint64_t p = characteristic();
  Residue sum = 0;
  for (const auto& [e, c] : terms_) {
    Residue t = c;
    for (std::size_t i = 0; i < e.size() && t != 0; ++i) {
      if (e[i] > 0) t = mul_mod(t, pow_mod(point[i], e[i], p), p);
    }
    sum = add_mod(sum, t, p);
  }
  return sum;
}

MultiPoly MultiPoly::over(const std::vector<std::string>& variables) const {
  std::vector<std::size_t> target(vars_.size(), SIZE_MAX);
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    auto it = std::find(variables.begin(), variables.end(), vars_[i]);
    if (it != variables.end()) target[i] = static_cast<std::size_t>(it - variables.begin());
  }
  MultiPoly out(field_, variables);
  for (const auto& [e, c] : terms_) {
    ExponentVector ne(variables.size(), 0);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (target[i] == SIZE_MAX) throw DimensionMismatch("variable " + vars_[i] + " is not in the target list");
      ne[target[i]] = e[i];
    }
    out.accumulate(std::move(ne), c);
  }
  return out;
}

void MultiPoly::require_compatible(const MultiPoly& o) const {
  if (!(field_ == o.field_)) throw FieldMismatch("polynomials over " + field_.name() + " and " + o.field_.name());
  if (vars_ != o.vars_) throw FieldMismatch("polynomials over different variable lists");
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
  require_compatible(o);
  MultiPoly out = *this;
  for (const auto& [e, c] : o.terms_) out.accumulate(e, c);
  return out;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly out(field_, vars_);
  for (const auto& [e, c] : terms_) out.terms_.emplace(e, sub_mod(0, c, characteristic()));
  return out;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const { return *this + (-o); }

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
  require_compatible(o);
  const std::uint64_t p = characteristic();
  MultiPoly out(field_, vars_);
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : o.terms_) {
      ExponentVector e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = reduce_exponent(std::uint64_t{ea[i]} + eb[i], p);
      out.accumulate(std::move(e), mul_mod(ca, cb, p));
    }
  }
  return out;
}

MultiPoly MultiPoly::scaled(Residue c) const {
  MultiPoly out(field_, vars_);
  c %= characteristic();
  for (const auto& [e, v] : terms_) out.accumulate(e, mul_mod(v, c, characteristic()));
  return out;
}

std::string MultiPoly::to_string() const { return format_poly(*this); }

std::string format_poly(const MultiPoly& f) {
  if (f.is_zero()) return "0";
  std::string out;
  const auto& vars = f.variables();
  for (const auto& [e, c] : f.terms()) {
    if (!out.empty()) out += '+';
    std::string powers;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!powers.empty()) powers += '*';
      powers += vars[i];
      if (e[i] > 1) powers += '^' + std::to_string(e[i]);
    }
    if (powers.empty()) {
      out += std::to_string(c);
    } else if (c == 1) {
      out += powers;
    } else {
      out += std::to_string(c) + '*' + powers;
    }
  }
  return out;
}

MultiPoly parse_poly(std::string_view text, std::vector<std::string> variables, const Field& field) {
  MultiPoly out(field, variables);
  const std::uint64_t p = field.characteristic();
  detail::Scanner sc(text);
  if (sc.at_end()) sc.fail("empty polynomial");

  const auto match_variable = [&]() -> std::size_t {
    const std::string_view rest = sc.rest();
    std::size_t best = SIZE_MAX, best_len = 0;
    for (std::size_t i = 0; i < variables.size(); ++i) {
      const auto& v = variables[i];
      if (v.size() > best_len && rest.substr(0, v.size()) == v) {
        best = i;
        best_len = v.size();
      }
    }
    if (best == SIZE_MAX) sc.fail("unknown variable");
    sc.advance(best_len);
    return best;
  };

  bool first_term = true;
  while (!sc.at_end()) {
    bool negate = false;
    if (first_term) {
      negate = sc.accept('-');
    } else if (sc.accept('-')) {
      negate = true;
    } else {
      sc.expect('+');
    }
    first_term = false;

    Residue coeff = 1;
    std::vector<std::uint64_t> exps(variables.size(), 0);
    bool first_factor = true;
    while (true) {
      const bool starred = !first_factor && sc.accept('*');
      if (sc.at_digit()) {
        if (!first_factor && !starred) sc.fail("expected '*' before a coefficient");
        coeff = mul_mod(coeff, sc.read_uint() % p, p);
      } else if (sc.at_alpha()) {
        const std::size_t v = match_variable();
        std::uint64_t e = 1;
        if (sc.accept('^')) e = sc.read_uint();
        exps[v] = reduce_exponent(exps[v] + reduce_exponent(e, p), p);
      } else if (first_factor || starred) {
        sc.fail("expected coefficient or variable");
      } else {
        break;
      }
      first_factor = false;
    }
    out.add_term(exps, negate ? sub_mod(0, coeff, p) : coeff);
  }
  return out;
}

// -------------------------------------------------------------- UniPoly

UniPoly::UniPoly(Field field) : field_(field) {}

UniPoly::UniPoly(Field field, Vector coefficients) : field_(field), coeffs_(std::move(coefficients)) {
  for (const auto& c : coeffs_) {
    if (!(c.field() == field_)) throw FieldMismatch("coefficient from another field");
  }
  trim();
}

UniPoly UniPoly::linear_root(const FieldElement& c) {
  const Field k = c.field();
  return UniPoly(k, Vector{-c, k.one()});
}

UniPoly UniPoly::x(Field field) { return UniPoly(field, Vector{field.zero(), field.one()}); }

void UniPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

FieldElement UniPoly::coefficient(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : field_.zero(); }

FieldElement UniPoly::evaluate(const FieldElement& a) const {
  if (!(a.field() == field_)) throw FieldMismatch("evaluation point from another field");
  FieldElement acc = field_.zero();
  for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * a + coeffs_[i];
  return acc;
}

UniPoly UniPoly::operator+(const UniPoly& o) const {
  if (!(field_ == o.field_)) throw FieldMismatch("polynomials over different fields");
  Vector c(std::max(coeffs_.size(), o.coeffs_.size()), field_.zero());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = coefficient(i) + o.coefficient(i);
  return UniPoly(field_, std::move(c));
}

UniPoly UniPoly::operator-(const UniPoly& o) const { return *this + o.scaled(-field_.one()); }

UniPoly UniPoly::operator*(const UniPoly& o) const {
  if (!(field_ == o.field_)) throw FieldMismatch("polynomials over different fields");
  if (is_zero() || o.is_zero()) return UniPoly(field_);
  Vector c(coeffs_.size() + o.coeffs_.size() - 1, field_.zero());
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i].is_zero()) continue;
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) c[i + j] += coeffs_[i] * o.coeffs_[j];
  }
  return UniPoly(field_, std::move(c));
}

UniPoly UniPoly::scaled(const FieldElement& c) const {
  Vector out;
  out.reserve(coeffs_.size());
  for (const auto& v : coeffs_) out.push_back(v * c);
  return UniPoly(field_, std::move(out));
}

std::string UniPoly::to_string(std::string_view var) const {
  if (is_zero()) return "0";
  std::string out;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    const FieldElement& c = coeffs_[k];
    if (c.is_zero()) continue;
    if (!out.empty()) out += '+';
    std::string cs = c.to_string();
    if (cs.find('+') != std::string::npos) cs = "(" + cs + ")";
    if (k == 0) {
      out += cs;
      continue;
    }
    if (!c.is_one()) out += cs + '*';
    out += var;
    if (k > 1) out += '^' + std::to_string(k);
  }
  return out;
}

}  // namespace ffdyn
