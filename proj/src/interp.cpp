#include "ffdyn/interp.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace ffdyn {

std::string SampleSet::label(std::size_t i) const {
  if (i < labels.size() && !labels[i].empty()) return labels[i];
  return "sample " + std::to_string(i + 1);
}

void check_samples(const SampleSet& s) {
  if (!s.field.is_prime_field()) throw FieldMismatch("sample sets are over a prime field");
  if (s.points.size() != s.values.size()) {
    throw DimensionMismatch(std::to_string(s.points.size()) + " points but " + std::to_string(s.values.size()) +
                            " values");
  }
  const std::uint64_t p = s.field.characteristic();
  std::map<std::vector<Residue>, std::size_t> seen;
  for (std::size_t i = 0; i < s.points.size(); ++i) {
    const auto& pt = s.points[i];
    if (pt.size() != s.deps.size()) {
      throw DimensionMismatch(s.label(i) + " has " + std::to_string(pt.size()) + " coordinates, expected " +
                              std::to_string(s.deps.size()));
    }
    for (Residue c : pt) {
      if (c >= p) throw DomainViolation(s.label(i) + " has coordinate " + std::to_string(c) + " outside Z_" + std::to_string(p));
    }
    if (s.values[i] >= p) throw DomainViolation(s.label(i) + " has value outside Z_" + std::to_string(p));
    auto [it, inserted] = seen.emplace(pt, i);
    if (!inserted && s.values[it->second] != s.values[i]) {
      std::string where = "(";
      for (std::size_t k = 0; k < pt.size(); ++k) where += (k ? "," : "") + std::to_string(pt[k]);
      where += ")";
      throw InconsistentData(s.label(it->second) + " and " + s.label(i) + " share point " + where +
                             " but map to " + std::to_string(s.values[it->second]) + " and " +
                             std::to_string(s.values[i]));
    }
  }
}

std::pair<Matrix, Vector> build_system(const SampleSet& s) {
  if (s.points.empty()) throw SchemaError("sample set is empty");
  check_samples(s);
  const std::uint64_t p = s.field.characteristic();
  const auto order = monomial_order(s.deps.size(), p);
  Matrix a(s.field, s.size(), order.size());
  Vector b;
  b.reserve(s.size());
  for (std::size_t r = 0; r < s.size(); ++r) {
    const auto& pt = s.points[r];
    for (std::size_t c = 0; c < order.size(); ++c) {
      Residue v = 1;
      for (std::size_t i = 0; i < pt.size(); ++i) {
        if (order[c][i] > 0) v = mul_mod(v, pow_mod(pt[i], order[c][i], p), p);
      }
      a(r, c) = s.field.from_integer(static_cast<std::int64_t>(v));
    }
    b.push_back(s.field.from_integer(static_cast<std::int64_t>(s.values[r])));
  }
  return {std::move(a), std::move(b)};
}

BigCount PolySolutionSet::solution_count() const {
  BigCount count = 1;
  const BigCount p = particular.characteristic();
  for (std::size_t i = 0; i < basis.size(); ++i) count *= p;
  return count;
}

PolySolutionSet solve_df_zp(const SampleSet& s) {
  auto [a, b] = build_system(s);
  AffineSolutionSet sol;
  try {
    sol = solve_affine(a, b);
  } catch (const Inconsistent& e) {
    throw InconsistentData(e.what());
  }
  PolySolutionSet out{MultiPoly::from_coefficients(s.field, s.deps, sol.particular), {}, sol.rank};
  out.basis.reserve(sol.basis.size());
  for (const auto& v : sol.basis) out.basis.push_back(MultiPoly::from_coefficients(s.field, s.deps, v));
  return out;
}

Enumeration enumerate_solutions(const PolySolutionSet& set, std::size_t cap) {
  Enumeration out;
  const std::uint64_t p = set.particular.characteristic();
  const std::size_t k = set.basis.size();
  std::vector<Residue> digits(k, 0);
  while (true) {
    if (out.polynomials.size() == cap) {
      out.truncated = true;
      break;
    }
    MultiPoly f = set.particular;
    for (std::size_t i = 0; i < k; ++i) {
      if (digits[i] != 0) f = f + set.basis[i].scaled(digits[i]);
    }
    out.polynomials.push_back(std::move(f));
    std::size_t i = k;
    while (i > 0) {
      --i;
      if (++digits[i] < p) break;
      digits[i] = 0;
      if (i == 0) return out;
    }
    if (k == 0) return out;
  }
  return out;
}

namespace {

// Inverse of the p x p matrix V[v][e] = v^e (0^0 = 1) over Z_p, from
// delta_a(x) = 1 - (x - a)^(p-1) = 1 - sum_j a^(p-1-j) x^j. Row e maps a value
// table to the coefficient of x^e.
std::vector<Residue> inverse_power_table(std::uint64_t p) {
  if (p > (1U << 12)) throw TooLarge("full-table interpolation needs p <= 4096");
  std::vector<Residue> inv(p * p);
  for (std::uint64_t e = 0; e < p; ++e) {
    for (std::uint64_t a = 0; a < p; ++a) {
      inv[e * p + a] = sub_mod(e == 0 ? 1 : 0, pow_mod(a, p - 1 - e, p), p);
    }
  }
  return inv;
}

}  // namespace

MultiPoly interpolate_full_table(const Field& field, std::vector<std::string> variables,
                                 std::span<const Residue> values) {
  if (!field.is_prime_field()) throw FieldMismatch("full-table interpolation is over a prime field");
  const std::uint64_t p = field.characteristic();
  const std::size_t k = variables.size();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < k; ++i) {
    if (total > (std::uint64_t{1} << 26) / p) throw TooLarge("table too large");
    total *= p;
  }
  if (values.size() != total) {
    throw DimensionMismatch("table has " + std::to_string(values.size()) + " entries, expected " +
                            std::to_string(total));
  }
  std::vector<Residue> a(values.begin(), values.end());
  for (Residue v : a) {
    if (v >= p) throw DomainViolation("table value outside Z_" + std::to_string(p));
  }
  const std::vector<Residue> inv = inverse_power_table(p);
  // Transform one axis at a time; axis i has stride p^(k-1-i).
  std::vector<Residue> fiber(p);
  std::uint64_t stride = total;
  for (std::size_t axis = 0; axis < k; ++axis) {
    stride /= p;
    const std::uint64_t block = stride * p;
    for (std::uint64_t base = 0; base < total; base += block) {
      for (std::uint64_t off = 0; off < stride; ++off) {
        for (std::uint64_t v = 0; v < p; ++v) fiber[v] = a[base + off + v * stride];
        for (std::uint64_t e = 0; e < p; ++e) {
          Residue s = 0;
          for (std::uint64_t v = 0; v < p; ++v) s = add_mod(s, mul_mod(inv[e * p + v], fiber[v], p), p);
          a[base + off + e * stride] = s;
        }
      }
    }
  }
  MultiPoly out(field, std::move(variables));
  std::vector<std::uint64_t> exps(k);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    if (a[idx] == 0) continue;
    std::uint64_t rest = idx;
    for (std::size_t i = k; i-- > 0;) {
      exps[i] = rest % p;
      rest /= p;
    }
    out.add_term(exps, a[idx]);
  }
  return out;
}

bool is_solution(const MultiPoly& f, const SampleSet& s) {
  if (!(f.field() == s.field)) return false;
  for (const auto& v : f.used_variables()) {
    if (std::find(s.deps.begin(), s.deps.end(), v) == s.deps.end()) return false;
  }
  const MultiPoly g = f.over(s.deps);
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (g.evaluate(s.points[i]) != s.values[i]) return false;
  }
  return true;
}

namespace {

void require_distinct(const Vector& points) {
  std::set<std::uint64_t> seen;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!seen.insert(points[i].index()).second) {
      throw DuplicatePoint("interpolation point " + points[i].to_string() + " repeated (position " +
                           std::to_string(i + 1) + ")");
    }
  }
}

// q = g / (x - a) for a root a of g, by synthetic division.
UniPoly divide_by_root(const UniPoly& g, const FieldElement& a) {
  const Vector& c = g.coefficients();
  const Field& k = g.field();
  if (c.size() < 2) return UniPoly(k);
  Vector q(c.size() - 1, k.zero());
  FieldElement carry = k.zero();
  for (std::size_t i = c.size() - 1; i-- > 0;) {
    carry = c[i + 1] + carry * a;
    q[i] = carry;
  }
  return UniPoly(k, std::move(q));
}

}  // namespace

UniPoly vanishing_poly(const Vector& points) {
  if (points.empty()) throw DimensionMismatch("no points");
  require_distinct(points);
  const Field k = points.front().field();
  UniPoly v(k, Vector{k.one()});
  for (const auto& a : points) v = v * UniPoly::linear_root(a);
  return v;
}

UniPoly lagrange_interpolate(const Vector& points, const Vector& values) {
  if (points.size() != values.size()) throw DimensionMismatch("points and values differ in length");
  const UniPoly full = vanishing_poly(points);
  const Field& k = full.field();
  UniPoly sum(k);
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (values[i].is_zero()) continue;
    // prod_{j != i} (x - a_j) / (a_i - a_j)
    const UniPoly basis = divide_by_root(full, points[i]);
    sum = sum + basis.scaled(values[i] * basis.evaluate(points[i]).inverse());
  }
  return sum;
}

std::pair<Matrix, Vector> build_vandermonde(const Vector& points, const Vector& values) {
  if (points.size() != values.size()) throw DimensionMismatch("points and values differ in length");
  if (points.empty()) throw DimensionMismatch("no points");
  const Field k = points.front().field();
  const std::size_t m = points.size();
  Matrix a(k, m, m);
  for (std::size_t i = 0; i < m; ++i) {
    FieldElement pw = k.one();
    for (std::size_t j = 0; j < m; ++j) {
      a(i, j) = pw;
      pw *= points[i];
    }
  }
  return {std::move(a), values};
}

std::vector<MultiPoly> uni_to_multi(const UniPoly& g, const Basis& basis, std::vector<std::string> variables) {
  const Field& k = basis.field();
  if (!(g.field() == k)) throw FieldMismatch("polynomial and basis over different fields");
  const unsigned n = k.degree();
  if (variables.empty()) variables = default_variables(n);
  if (variables.size() != n) throw DimensionMismatch("need one variable name per basis element");
  const std::uint64_t p = k.characteristic();
  const std::uint64_t q = k.order();
  std::vector<std::vector<Residue>> tables(n, std::vector<Residue>(q));
  std::vector<Residue> v(n);
  for (std::uint64_t idx = 0; idx < q; ++idx) {
    std::uint64_t rest = idx;
    for (std::size_t i = n; i-- > 0;) {
      v[i] = rest % p;
      rest /= p;
    }
    const auto coords = basis.lambda_inverse(g.evaluate(basis.lambda(v)));
    for (unsigned j = 0; j < n; ++j) tables[j][idx] = coords[j];
  }
  const Field zp = Field::prime(p);
  std::vector<MultiPoly> out;
  out.reserve(n);
  for (unsigned j = 0; j < n; ++j) out.push_back(interpolate_full_table(zp, variables, tables[j]));
  return out;
}

DfPnSolution solve_df_pn(const SampleSet& s, const Basis& basis) {
  const Field& k = basis.field();
  if (s.deps.size() != k.degree()) {
    throw DimensionMismatch("sample points have " + std::to_string(s.deps.size()) +
                            " coordinates but the extension has degree " + std::to_string(k.degree()));
  }
  if (k.characteristic() != s.field.characteristic()) throw FieldMismatch("extension over a different prime");
  if (s.points.empty()) throw SchemaError("sample set is empty");
  check_samples(s);
  Vector pts, vals;
  std::set<std::vector<Residue>> seen;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!seen.insert(s.points[i]).second) continue;
    pts.push_back(basis.lambda(s.points[i]));
    vals.push_back(k.from_integer(static_cast<std::int64_t>(s.values[i])));
  }
  DfPnSolution out{{lagrange_interpolate(pts, vals), vanishing_poly(pts)}, pts, vals, {}};
  out.components = uni_to_multi(out.lagrange.particular, basis, s.deps);
  return out;
}

}  // namespace ffdyn
