#include <doctest.h>

#include "eqgb/core.hpp"
#include "eqgb/errors.hpp"
#include "eqgb/text.hpp"
#include "oracles.hpp"

using namespace eqgb;

namespace {

Monomial mono(const char* s) { return parse_monomial(s); }
Polynomial poly(const char* s) { return parse_polynomial(s); }

}  // namespace

TEST_SUITE("core") {

TEST_CASE("variable precedence is column first") {
  CHECK(var_less({2, 1}, {1, 2}));
  CHECK(var_less({1, 1}, {2, 1}));
  CHECK_FALSE(var_less({1, 2}, {1, 2}));
}

TEST_CASE("shift order on small cases") {
  CHECK(cmp_shift(mono("x[2,1]"), mono("x[1,2]")) == Ordering::Less);
  CHECK(cmp_shift(mono("x[1,1]^5"), mono("x[1,2]")) == Ordering::Less);
  CHECK(cmp_shift(mono("x[1,1]*x[1,2]"), mono("x[1,2]")) == Ordering::Greater);
  CHECK(cmp_shift(mono("1"), mono("x[1,1]")) == Ordering::Less);
  CHECK(cmp_shift(mono("x[1,3]*x[2,1]"), mono("x[2,1]*x[1,3]")) == Ordering::Equal);
}

TEST_CASE("shift order agrees with the variable scan") {
  oracle::Gen g(7);
  for (int i = 0; i < 3000; ++i) {
    const auto a = g.monomial(3, 8);
    const auto b = g.monomial(3, 8);
    REQUIRE(cmp_shift(a, b) == oracle::cmp(a, b));
  }
}

TEST_CASE("order laws on random monomials and shifts") {
  oracle::Gen g(11);
  for (int i = 0; i < 2000; ++i) {
    const auto q = g.monomial(3, 8);
    const auto q1 = g.monomial(3, 8);
    const auto q2 = g.monomial(3, 8);
    const auto w = std::max<std::uint32_t>(1, std::max(q1.max_col(), q2.max_col()));
    const auto pi = ShiftMap::from_images(g.images(w, w + g.uniform(0, 4)));
    // 1 is the minimum and multiplication never lowers a monomial.
    CHECK(cmp_shift(Monomial(), q) != Ordering::Greater);
    CHECK(cmp_shift(q2, q1 * q2) != Ordering::Greater);
    // Shifts never lower a monomial.
    CHECK(cmp_shift(q1, apply_shift(pi, q1)) != Ordering::Greater);
    // Compatibility with the action and with multiplication.
    const auto o = cmp_shift(q1, q2);
    CHECK(cmp_shift(q * apply_shift(pi, q1), q * apply_shift(pi, q2)) == o);
  }
}

TEST_CASE("monomial arithmetic") {
  const auto a = mono("x[1,1]^2*x[2,3]");
  const auto b = mono("x[1,1]*x[1,2]");
  CHECK(a.degree() == 3);
  CHECK(a.max_col() == 3);
  CHECK(a.max_row() == 2);
  CHECK(a.columns() == std::vector<std::uint32_t>{1, 3});
  CHECK(a.lcm(b) == mono("x[1,1]^2*x[1,2]*x[2,3]"));
  CHECK(mono("x[1,1]").divides(a));
  CHECK_FALSE(b.divides(a));
  CHECK(a.divided_by(mono("x[1,1]")) == mono("x[1,1]*x[2,3]"));
  CHECK_THROWS_AS((void)a.divided_by(b), PreconditionError);
  CHECK(mono("x[1,2]").coprime(mono("x[2,1]")));
  CHECK_THROWS_AS(Monomial::variable(0, 1), RangeError);
  // Repeated factors merge.
  CHECK(Monomial({{VarIndex{1, 1}, 1}, {VarIndex{1, 1}, 2}}) == mono("x[1,1]^3"));
}

TEST_CASE("shift maps") {
  const ShiftMap p({{1, 2}, {2, 5}});
  CHECK(p(1) == 2);
  CHECK(p(2) == 5);
  CHECK(p(3) == 6);
  const ShiftMap q({{3, 4}});
  CHECK(q(1) == 1);
  CHECK(q(2) == 2);
  CHECK(q(3) == 4);
  CHECK(q(5) == 6);
  CHECK(ShiftMap().is_identity());
  CHECK(ShiftMap({{2, 2}}).is_identity());
  CHECK(ShiftMap({{2, 2}}) == ShiftMap());
  // Not extendable to an increasing map.
  CHECK_THROWS_AS(ShiftMap({{1, 3}, {3, 4}}), PreconditionError);
  CHECK_THROWS_AS(ShiftMap({{3, 2}}), PreconditionError);
  CHECK_THROWS_AS(ShiftMap({{0, 2}}), RangeError);
  const auto c = compose_shifts(q, p);
  for (std::uint32_t x = 1; x < 12; ++x) CHECK(c(x) == q(p(x)));
  const auto r = p.canonical();
  for (std::uint32_t x = 1; x < 12; ++x) CHECK(r(x) == p(x));
}

TEST_CASE("rigid extension agrees on the explicit points") {
  const ShiftMap p({{2, 4}});
  const auto r = p.rigid_on(3);
  CHECK(r(1) == 3);
  CHECK(r(2) == 4);
  CHECK(r(3) == 5);
}

TEST_CASE("apply_shift is an injective action") {
  oracle::Gen g(3);
  for (int i = 0; i < 500; ++i) {
    const auto a = g.monomial(2, 5);
    const auto b = g.monomial(2, 5);
    Polynomial f(std::vector<Term>{{Rational(2), a}, {Rational(-3, 2), b}});
    const auto p1 = ShiftMap::from_images(g.images(5, 9));
    const auto p2 = ShiftMap::from_images(g.images(9, 12));
    CHECK(apply_shift(compose_shifts(p2, p1), f) == apply_shift(p2, apply_shift(p1, f)));
    CHECK(apply_shift(p1, f).size() == f.size());
  }
}

TEST_CASE("polynomial arithmetic") {
  const auto f = poly("x[1,2] + 2*x[1,1]");
  const auto g = poly("x[1,2] - x[1,1]");
  CHECK(f - g == poly("3*x[1,1]"));
  CHECK((f - f).is_zero());
  CHECK(f.leading_monomial() == mono("x[1,2]"));
  CHECK(f * g == poly("x[1,2]^2 + x[1,1]*x[1,2] - 2*x[1,1]^2"));
  CHECK(poly("3*x[1,2] + x[1,1]").monic() == poly("x[1,2] + 1/3*x[1,1]"));
  CHECK_THROWS_AS((void)Polynomial().leading_monomial(), PreconditionError);
  auto h = f;
  h.sub_mul(Rational(1), mono("x[1,1]"), g);
  CHECK(h == f - poly("x[1,1]*x[1,2] - x[1,1]^2"));
}

TEST_CASE("compression") {
  const auto f = poly("x[1,7]*x[2,3] - x[2,9]");
  const auto [g, pi] = compress(f);
  CHECK(g == poly("x[1,2]*x[2,1] - x[2,3]"));
  CHECK(apply_shift(pi, g) == f);
  CHECK_THROWS_AS(compress(Polynomial()), PreconditionError);
  // Compressed representatives agree along an orbit.
  const ShiftMap p({{1, 2}, {2, 4}, {3, 11}});
  CHECK(compress(apply_shift(p, g)).first == g);
}

TEST_CASE("text roundtrip and errors") {
  for (const char* s : {"x[1,2]^3*x[2,5] - 1/2*x[1,1] + 7", "0", "-x[1,1]", "1"}) {
    const auto f = poly(s);
    CHECK(parse_polynomial(to_string(f)) == f);
  }
  CHECK(to_string(poly("x[1,1] + x[1,2]")) == "x[1,2] + x[1,1]");
  CHECK(to_string(ShiftMap()) == "id");
  CHECK(to_string(ShiftMap({{1, 2}, {2, 3}})) == "1->2, 2->3");
  CHECK_THROWS_AS(parse_polynomial("x[1,2"), ParseError);
  CHECK_THROWS_AS(parse_polynomial("x[0,2]"), RangeError);
  CHECK_THROWS_AS(parse_polynomial("x[3,1]", 2), RangeError);
  CHECK_THROWS_AS(parse_polynomial("1/0"), ParseError);
  CHECK_THROWS_AS(parse_monomial("2*x[1,1]"), ParseError);
  try {
    (void)parse_polynomial("x[1,1] + y");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 9);
  }
}

TEST_CASE("polynomial order is total") {
  const auto a = poly("x[1,2] + x[1,1]");
  const auto b = poly("x[1,2]");
  CHECK(cmp_poly(a, b) == Ordering::Greater);
  CHECK(cmp_poly(b, a) == Ordering::Less);
  CHECK(cmp_poly(a, a) == Ordering::Equal);
}

}  // TEST_SUITE
