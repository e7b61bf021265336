#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "ffdyn/errors.hpp"
#include "ffdyn/poly.hpp"
#include "support.hpp"

using namespace ffdyn;

namespace {

using Raw = std::vector<std::pair<std::vector<std::uint64_t>, std::int64_t>>;

// Unreduced evaluation with repeated multiplication.
Residue eval_raw(const Raw& terms, const std::vector<Residue>& pt, std::uint64_t p) {
  Residue total = 0;
  for (const auto& [exps, c] : terms) {
    Residue v = reduce_signed(c, p);
    for (std::size_t i = 0; i < exps.size(); ++i) {
      for (std::uint64_t e = 0; e < exps[i]; ++e) v = v * pt[i] % p;
    }
    total = (total + v) % p;
  }
  return total;
}

std::vector<std::vector<Residue>> all_points(const MultiPoly& f) {
  return testing::grid(f.characteristic(), f.variables().size());
}

bool same_function(const MultiPoly& f, const MultiPoly& g) {
  for (const auto& pt : all_points(f)) {
    if (f.evaluate(pt) != g.evaluate(pt)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("monomial order") {
  using E = ExponentVector;
  CHECK(monomial_order(2, 3) == std::vector<E>{{0, 0}, {1, 0}, {0, 1}, {1, 1}, {2, 0}, {0, 2}, {2, 1}, {1, 2}, {2, 2}});
  CHECK(monomial_order(1, 3) == std::vector<E>{{0}, {1}, {2}});
  CHECK(monomial_order(2, 2) == std::vector<E>{{0, 0}, {1, 0}, {0, 1}, {1, 1}});
  CHECK(monomial_order(0, 5) == std::vector<E>{E{}});

  const auto order = monomial_order(3, 3);
  CHECK(order.size() == 27);
  CHECK(std::is_sorted(order.begin(), order.end(), MonomialLess{}));
  CHECK(std::set<E>(order.begin(), order.end()).size() == 27);
  CHECK_THROWS_AS(monomial_order(30, 3), TooLarge);
}

TEST_CASE("evaluation") {
  const Field z3 = Field::prime(3);
  const MultiPoly f1 = parse_poly("x+z+x^2", {"x", "z"}, z3);
  CHECK(f1.evaluate(std::vector<Residue>{1, 0}) == 2);
  const MultiPoly f2 = parse_poly("1+2*x1^2*x3^2", {"x1", "x3"}, z3);
  CHECK(f2.evaluate(std::vector<Residue>{2, 1}) == 0);
  CHECK(MultiPoly(z3, {"x", "y"}).evaluate(std::vector<Residue>{2, 1}) == 0);
  CHECK_THROWS_AS(f1.evaluate(std::vector<Residue>{1}), DimensionMismatch);
}

TEST_CASE("reduction under x^p = x") {
  const Field z3 = Field::prime(3);
  const std::vector<std::string> x{"x"};
  CHECK(MultiPoly::reduce(z3, x, {{{3}, 1}}) == MultiPoly::variable(z3, x, 0));
  CHECK(format_poly(MultiPoly::reduce(z3, x, {{{4}, 1}})) == "x^2");
  CHECK(format_poly(MultiPoly::reduce(z3, x, {{{0}, -1}})) == "2");
  const MultiPoly f = parse_poly("1+x+2*x^2", x, z3);
  CHECK(MultiPoly::reduce(z3, x, {{{0}, 1}, {{1}, 1}, {{2}, 2}}) == f);
  CHECK(reduce_exponent(0, 3) == 0);
  CHECK(reduce_exponent(3, 3) == 1);
  CHECK(reduce_exponent(4, 3) == 2);
  CHECK(reduce_exponent(5, 3) == 1);
  CHECK(reduce_exponent(1000000, 2) == 1);
}

TEST_CASE("reduce preserves evaluation, exhaustive for p^n <= 3^6") {
  const std::vector<std::pair<std::uint64_t, std::size_t>> shapes = {{2, 1}, {2, 4}, {2, 6}, {3, 1}, {3, 3},
                                                                     {3, 6}, {5, 2}, {5, 4}, {7, 3}};
  for (auto [p, n] : shapes) {
    CAPTURE(p);
    CAPTURE(n);
    const Field f = Field::prime(p);
    const auto vars = default_variables(n);
    const auto pts = testing::grid(p, n);
    for (int trial = 0; trial < 20; ++trial) {
      Raw terms;
      for (int t = 0; t < 6; ++t) {
        std::vector<std::uint64_t> e(n);
        for (auto& x : e) x = testing::uniform(3 * p + 2);
        terms.emplace_back(e, static_cast<std::int64_t>(testing::uniform(2 * p)) - static_cast<std::int64_t>(p));
      }
      const MultiPoly r = MultiPoly::reduce(f, vars, terms);
      std::size_t mismatches = 0;
      for (const auto& pt : pts) mismatches += r.evaluate(pt) != eval_raw(terms, pt, p) ? 1 : 0;
      CHECK(mismatches == 0);
      for (const auto& [exps, c] : r.terms()) {
        CHECK(c != 0);
        for (unsigned e : exps) CHECK(e <= p - 1);
      }
      CHECK(r.total_degree() <= n * (p - 1));
    }
  }
}

TEST_CASE("arithmetic") {
  const Field z3 = Field::prime(3);
  const std::vector<std::string> xz{"x", "z"};
  const MultiPoly x = MultiPoly::variable(z3, {"x"}, 0);
  CHECK(x * (x * x) == x);
  const MultiPoly f1 = parse_poly("x+z+x^2", xz, z3);
  CHECK(f1 + MultiPoly(z3, xz) == f1);
  CHECK((f1 - f1).is_zero());
  CHECK(f1.scaled(2) == -f1);

  const MultiPoly g1 = parse_poly("1+2x+2z+xz", xz, z3);
  const MultiPoly sum = f1 + g1;
  for (auto [pt, v] : std::vector<std::pair<std::vector<Residue>, Residue>>{
           {{1, 0}, 2}, {{2, 1}, 1}, {{1, 1}, 0}, {{0, 1}, 1}}) {
    CHECK(sum.evaluate(pt) == v);
  }
  CHECK_THROWS_AS(f1 + parse_poly("x", {"x"}, z3), FieldMismatch);
  CHECK_THROWS_AS(f1 + parse_poly("x", xz, Field::prime(5)), FieldMismatch);
  CHECK_THROWS_AS(MultiPoly(Field::extension(3, 2), xz), FieldMismatch);
}

TEST_CASE("ring laws on random triples") {
  for (std::uint64_t p : {2, 3, 5}) {
    const Field f = Field::prime(p);
    const auto vars = default_variables(p == 5 ? 2 : 3);
    for (int i = 0; i < 200; ++i) {
      const MultiPoly a = testing::random_poly(f, vars), b = testing::random_poly(f, vars),
                      c = testing::random_poly(f, vars);
      CHECK((a + b) + c == a + (b + c));
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * b == b * a);
      CHECK(a + b == b + a);
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a * MultiPoly::constant(f, vars, 1) == a);
    }
  }
}

TEST_CASE("products agree with pointwise products") {
  const Field f = Field::prime(3);
  const auto vars = default_variables(3);
  for (int i = 0; i < 50; ++i) {
    const MultiPoly a = testing::random_poly(f, vars), b = testing::random_poly(f, vars);
    const MultiPoly ab = a * b;
    for (const auto& pt : testing::grid(3, 3)) CHECK(ab.evaluate(pt) == a.evaluate(pt) * b.evaluate(pt) % 3);
  }
}

TEST_CASE("reduced representation is unique") {
  // All 2^(2^2) reduced polynomials in two variables over Z_2 define
  // distinct functions, and so do all 3^3 in one variable over Z_3.
  for (auto [p, n] : std::vector<std::pair<std::uint64_t, std::size_t>>{{2, 2}, {3, 1}, {2, 3}}) {
    const Field f = Field::prime(p);
    const auto vars = default_variables(n);
    const auto order = monomial_order(n, p);
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < order.size(); ++i) total *= p;
    std::set<std::vector<Residue>> tables;
    for (std::uint64_t c = 0; c < total; ++c) {
      MultiPoly g(f, vars);
      std::uint64_t rest = c;
      for (const auto& e : order) {
        std::vector<std::uint64_t> exps(e.begin(), e.end());
        g.add_term(exps, rest % p);
        rest /= p;
      }
      std::vector<Residue> table;
      for (const auto& pt : testing::grid(p, n)) table.push_back(g.evaluate(pt));
      tables.insert(table);
    }
    CHECK(tables.size() == total);
  }
  const Field f = Field::prime(3);
  const auto vars = default_variables(3);
  for (int i = 0; i < 100; ++i) {
    const MultiPoly a = testing::random_poly(f, vars), b = testing::random_poly(f, vars);
    CHECK((a == b) == same_function(a, b));
    CHECK(same_function(a, a + b - b));
  }
}

TEST_CASE("format and parse") {
  const Field z3 = Field::prime(3);
  const std::vector<std::string> v13{"x1", "x3"};
  const MultiPoly f2 = MultiPoly::reduce(z3, v13, {{{0, 0}, 1}, {{2, 2}, 2}});
  CHECK(format_poly(f2) == "1+2*x1^2*x3^2");
  CHECK(format_poly(MultiPoly(z3, v13)) == "0");
  const MultiPoly f1 = parse_poly("x+z+x^2", {"x", "z"}, z3);
  CHECK(f1 == MultiPoly::reduce(z3, {"x", "z"}, {{{1, 0}, 1}, {{0, 1}, 1}, {{2, 0}, 1}}));
  CHECK(format_poly(f1) == "x+z+x^2");

  CHECK(parse_poly(" 2 x1 ^2 * x3 + 4 ", v13, z3) == parse_poly("1+2*x1^2*x3", v13, z3));
  CHECK(parse_poly("x1 - x3", v13, z3) == parse_poly("x1+2*x3", v13, z3));
  CHECK(parse_poly("x1^4", v13, z3) == parse_poly("x1^2", v13, z3));
  CHECK(parse_poly("2*3*x1", v13, z3).is_zero());
  CHECK(parse_poly("0", v13, z3).is_zero());

  // Longest variable name wins.
  const MultiPoly g = parse_poly("x10*x1", {"x1", "x10"}, Field::prime(5));
  CHECK(g.coefficient({1, 1}) == 1);

  try {
    parse_poly("x1+*x3", v13, z3);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.position() == 3);
  }
  CHECK_THROWS_AS(parse_poly("x2", v13, z3), ParseError);
  CHECK_THROWS_AS(parse_poly("", v13, z3), ParseError);
  CHECK_THROWS_AS(parse_poly("x1+", v13, z3), ParseError);
  CHECK_THROWS_AS(parse_poly("x1^", v13, z3), ParseError);
}

TEST_CASE("format/parse round trip on random polynomials") {
  for (std::uint64_t p : {2, 3, 7}) {
    const Field f = Field::prime(p);
    const auto vars = default_variables(3);
    for (int i = 0; i < 300; ++i) {
      const MultiPoly a = testing::random_poly(f, vars, 0.3);
      CHECK(parse_poly(format_poly(a), vars, f) == a);
    }
  }
}

TEST_CASE("variable lists") {
  const Field z3 = Field::prime(3);
  const MultiPoly f = parse_poly("1+x*z", {"x", "y", "z"}, z3);
  CHECK(f.used_variables() == std::vector<std::string>{"x", "z"});
  const MultiPoly g = f.over({"z", "x"});
  CHECK(g.evaluate(std::vector<Residue>{2, 1}) == 0);
  CHECK_THROWS_AS(f.over({"x", "y"}), DimensionMismatch);
  CHECK(default_variables(3) == std::vector<std::string>{"x1", "x2", "x3"});
}

TEST_CASE("univariate polynomials") {
  const Field k = Field::extension(3, "X^2+X+2");
  const FieldElement a = k.generator();
  const UniPoly x = UniPoly::x(k);
  const UniPoly p = (x - UniPoly(k, {a})) * (x - UniPoly(k, {k.one()}));
  CHECK(p.degree() == 2);
  CHECK(p.evaluate(a).is_zero());
  CHECK(p.evaluate(k.one()).is_zero());
  CHECK_FALSE(p.evaluate(k.zero()).is_zero());
  CHECK(UniPoly(k).degree() == -1);
  CHECK(UniPoly(k, {k.one(), k.zero(), k.zero()}).degree() == 0);
  CHECK(UniPoly(k, {k.parse("2a+2"), k.from_integer(2), a.pow(6), k.one()}).to_string() == "(2a+2)+2*x+(a+2)*x^2+x^3");
  CHECK((p - p).degree() == -1);
  CHECK(p.scaled(k.zero()).degree() == -1);
  for (int i = 0; i < 100; ++i) {
    const UniPoly f(k, {testing::random_element(k), testing::random_element(k), testing::random_element(k)});
    const UniPoly g(k, {testing::random_element(k), testing::random_element(k)});
    const FieldElement t = testing::random_element(k);
    CHECK((f * g).evaluate(t) == f.evaluate(t) * g.evaluate(t));
    CHECK((f + g).evaluate(t) == f.evaluate(t) + g.evaluate(t));
  }
}
