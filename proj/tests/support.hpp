#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ffdyn/field.hpp"
#include "ffdyn/poly.hpp"

namespace testing {

using ffdyn::Field;
using ffdyn::FieldElement;
using ffdyn::Residue;

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20260415);
  return gen;
}

inline std::uint64_t uniform(std::uint64_t n) { return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(rng()); }

inline FieldElement random_element(const Field& k) {
  std::vector<Residue> c(k.degree());
  for (auto& x : c) x = uniform(k.characteristic());
  return k.element(c);
}

inline FieldElement random_nonzero(const Field& k) {
  for (;;) {
    FieldElement a = random_element(k);
    if (!a.is_zero()) return a;
  }
}

// Reduced polynomial with roughly `density` of its monomials set.
inline ffdyn::MultiPoly random_poly(const Field& f, const std::vector<std::string>& vars, double density = 0.5) {
  ffdyn::MultiPoly out(f, vars);
  std::bernoulli_distribution keep(density);
  for (const auto& e : ffdyn::monomial_order(vars.size(), f.characteristic())) {
    if (!keep(rng())) continue;
    std::vector<std::uint64_t> exps(e.begin(), e.end());
    out.add_term(exps, uniform(f.characteristic()));
  }
  return out;
}

// A polynomial with at most `terms` random monomials.
inline ffdyn::MultiPoly sparse_poly(const Field& f, const std::vector<std::string>& vars, int terms = 4) {
  ffdyn::MultiPoly out(f, vars);
  for (int t = 0; t < terms; ++t) {
    std::vector<std::uint64_t> e(vars.size());
    for (auto& x : e) x = uniform(f.characteristic());
    out.add_term(e, uniform(f.characteristic()));
  }
  return out;
}

// All points of Z_p^n, first coordinate most significant.
inline std::vector<std::vector<Residue>> grid(std::uint64_t p, std::size_t n) {
  std::vector<std::vector<Residue>> out;
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= p;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::vector<Residue> pt(n);
    std::uint64_t rest = idx;
    for (std::size_t i = n; i-- > 0;) {
      pt[i] = rest % p;
      rest /= p;
    }
    out.push_back(std::move(pt));
  }
  return out;
}

// Schoolbook reference product of ascending coefficient vectors modulo a
// monic modulus, all arithmetic in plain integers.
inline std::vector<Residue> reference_mul(const std::vector<Residue>& a, const std::vector<Residue>& b,
                                          const std::vector<Residue>& modulus, std::uint64_t p) {
  const std::size_t n = modulus.size() - 1;
  std::vector<unsigned __int128> prod(2 * n, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) prod[i + j] = (prod[i + j] + (unsigned __int128)a[i] * b[j]) % p;
  }
  for (std::size_t d = 2 * n; d-- > n;) {
    const auto c = prod[d] % p;
    if (c == 0) continue;
    prod[d] = 0;
    for (std::size_t k = 0; k < n; ++k) {
      prod[d - n + k] = (prod[d - n + k] + (unsigned __int128)(p - c) * modulus[k]) % p;
    }
  }
  std::vector<Residue> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<Residue>(prod[i] % p);
  return out;
}

}  // namespace testing
