#include <doctest.h>

#include "eqgb/chains.hpp"
#include "eqgb/errors.hpp"
#include "eqgb/finite.hpp"
#include "eqgb/text.hpp"
#include "oracles.hpp"

using namespace eqgb;

namespace {

Polynomial poly(const char* s) { return parse_polynomial(s); }

FPoly fp(std::vector<std::pair<Exponents, long>> ts, OrderKind order) {
  FPoly f;
  for (auto& [e, c] : ts) f.terms.push_back(FTerm{e, Rational(c)});
  return normalized(std::move(f), order);
}

// Random homogeneous polynomial of degree d in n variables.
FPoly random_form(oracle::Gen& g, std::size_t n, std::int32_t d, OrderKind order) {
  const auto mons = oracle::monomials_of_degree(n, d);
  FPoly f;
  const auto k = g.uniform(1, 3);
  for (std::uint32_t i = 0; i < k; ++i) {
    const auto& m = mons[g.uniform(0, static_cast<std::uint32_t>(mons.size() - 1))];
    const long coeffs[] = {-2, -1, 1, 3};
    f.terms.push_back(FTerm{m, Rational(coeffs[g.uniform(0, 3)])});
  }
  return normalized(std::move(f), order);
}

}  // namespace

TEST_SUITE("finite") {

TEST_CASE("monomial orders") {
  using E = Exponents;
  CHECK(compare_exponents(E{1, 0, 0}, E{0, 5, 5}, OrderKind::Lex) > 0);
  CHECK(compare_exponents(E{1, 0, 0}, E{0, 5, 5}, OrderKind::DegRevLex) < 0);
  // Same degree: the smaller exponent at the last position wins.
  CHECK(compare_exponents(E{0, 2, 0}, E{1, 0, 1}, OrderKind::DegRevLex) > 0);
  CHECK(compare_exponents(E{1, 1, 0}, E{2, 0, 0}, OrderKind::DegRevLex) < 0);
  CHECK(compare_exponents(E{1, 1}, E{1, 1}, OrderKind::Lex) == 0);
}

TEST_CASE("normal form and S-polynomial") {
  const auto o = OrderKind::Lex;
  const auto f = fp({{{1, 1}, 1}, {{0, 0}, -1}}, o);  // xy - 1
  const auto g = fp({{{1, 0}, 1}, {{0, 1}, -1}}, o);  // x - y
  const std::vector<FPoly> basis{g};
  CHECK(normal_form(f, basis, o) == fp({{{0, 2}, 1}, {{0, 0}, -1}}, o));
  CHECK(s_polynomial(f, g, o) == fp({{{0, 2}, 1}, {{0, 0}, -1}}, o));
}

TEST_CASE("reduced bases generate the same ideal") {
  oracle::Gen g(31);
  for (auto order : {OrderKind::Lex, OrderKind::DegRevLex}) {
    for (int round = 0; round < 15; ++round) {
      std::vector<FPoly> in;
      for (int i = 0; i < 3; ++i) in.push_back(random_form(g, 4, static_cast<std::int32_t>(g.uniform(1, 2)), order));
      const auto gb = finite_groebner(in, order);
      // Reduced and monic.
      for (std::size_t i = 0; i < gb.size(); ++i) {
        CHECK(gb[i].terms[0].coeff == 1);
        for (std::size_t j = 0; j < gb.size(); ++j) {
          if (i == j) continue;
          for (const auto& t : gb[i].terms) CHECK_FALSE(exps_divide(gb[j].lead(), t.exps));
        }
        if (i > 0) CHECK(compare_exponents(gb[i - 1].lead(), gb[i].lead(), order) < 0);
      }
      for (std::int32_t d = 1; d <= 4; ++d) CHECK(oracle::same_in_degree(in, gb, 4, d));
      for (std::size_t i = 0; i < gb.size(); ++i)
        for (std::size_t j = i + 1; j < gb.size(); ++j)
          CHECK(normal_form(s_polynomial(gb[i], gb[j], order), gb, order).is_zero());
    }
  }
}

TEST_CASE("degree bound and size cap") {
  const auto o = OrderKind::DegRevLex;
  const std::vector<FPoly> in{fp({{{1, 0, 0}, 1}, {{0, 1, 0}, 1}}, o), fp({{{0, 2, 0}, 1}, {{0, 0, 2}, 1}}, o)};
  FiniteGBOptions cap;
  cap.max_basis = 1;
  CHECK_THROWS_AS(finite_groebner(in, o, cap), ResourceLimit);
  FiniteGBOptions bound;
  bound.degree_bound = 2;
  const auto low = finite_groebner(in, o, bound);
  for (std::int32_t d = 1; d <= 2; ++d) CHECK(oracle::same_in_degree(in, low, 3, d));
}

}  // TEST_SUITE

TEST_SUITE("chains") {

TEST_CASE("frame positions follow the shift order") {
  const Frame f(2, 3);
  CHECK(f.size() == 6);
  const std::uint32_t c3 = 3, c1 = 1;
  CHECK(f.position(2, std::span(&c3, 1)) == 0);
  CHECK(f.position(1, std::span(&c1, 1)) == 5);
  for (std::size_t p = 0; p < f.size(); ++p) {
    const auto k = f.key(p);
    CHECK(f.position(k.row, k.cols) == p);
    if (p > 0) {
      const auto prev = f.key(p - 1);
      CHECK(cmp_shift(Monomial::variable(k.row, k.cols[0]), Monomial::variable(prev.row, prev.cols[0])) ==
            Ordering::Less);
    }
  }
  const Frame d(1, 3, 2);
  CHECK(d.size() == 9);
  CHECK(d.key(0).cols == std::vector<std::uint32_t>{3, 3});
  CHECK_THROWS_AS(f.position(3, std::span(&c1, 1)), RangeError);
  CHECK_THROWS_AS(Frame(0, 3), PreconditionError);
}

TEST_CASE("frame conversion roundtrip") {
  const Frame f(2, 4);
  const auto p = poly("x[1,4]*x[2,1] - 3*x[2,2]^2 + 1");
  CHECK(from_frame(to_frame(p, f, OrderKind::Lex), f) == p);
  CHECK_THROWS_AS(to_frame(poly("x[1,5]"), f, OrderKind::Lex), RangeError);
  const Frame g(2, 6);
  const ShiftMap pi({{1, 2}, {4, 6}});
  CHECK(from_frame(shift_into(to_frame(p, f, OrderKind::Lex), f, g, pi, OrderKind::Lex), g) == apply_shift(pi, p));
}

TEST_CASE("shift sets") {
  for (std::uint32_t n = 0; n <= 6; ++n)
    for (std::uint32_t k = 0; k <= n; ++k) CHECK(shift_set(k, n).size() == oracle::binomial_coefficient(n, k));
  CHECK_THROWS_AS(shift_set(3, 2), PreconditionError);
}

TEST_CASE("orbit truncation") {
  const GeneratorSet g{1, {poly("x[1,1] + x[1,2]")}};
  CHECK(orbit_generators(g, 4).gens.size() == 6);
  CHECK(orbit_generators(g, 1).gens.empty());
  const GeneratorSet w{1, {poly("x[1,2]")}};
  // x[1,2] moves to columns 2..4 only.
  CHECK(orbit_generators(w, 4).gens.size() == 3);
  const auto a = orbit_generators(g, 3, OrderKind::DegRevLex);
  const auto b = truncated({poly("x[1,1]"), poly("x[1,2]"), poly("x[1,3]")}, 1, 3, OrderKind::DegRevLex);
  CHECK(ideal_equal(a, b));
  CHECK_FALSE(ideal_equal(orbit_generators(g, 2, OrderKind::DegRevLex),
                          truncated({poly("x[1,1]"), poly("x[1,2]")}, 1, 2, OrderKind::DegRevLex)));
}

TEST_CASE("orbit chain of a linear form stabilizes at 2") {
  const auto rep = detect_stabilization(orbit_chain(GeneratorSet{1, {poly("x[1,1] + x[1,2]")}}), 5);
  REQUIRE(rep.n0);
  CHECK(*rep.n0 == 2);
  CHECK(rep.verified_up_to == 5);
  REQUIRE(rep.levels.size() == 5);
  CHECK(rep.levels[0].generators == 0);
  CHECK(rep.levels[1].from_below == false);
  for (std::size_t i = 2; i < 5; ++i) {
    CHECK(rep.levels[i].equal == true);
    CHECK(rep.levels[i].from_below == true);
    CHECK(rep.levels[i].gb_size == i + 1);
  }
}

TEST_CASE("constant orbit chain stabilizes at 1") {
  const auto rep = detect_stabilization(orbit_chain(GeneratorSet{1, {poly("x[1,1]")}}), 4);
  REQUIRE(rep.n0);
  CHECK(*rep.n0 == 1);
  const auto x1 = truncated({poly("x[1,1]")}, 1, 2, OrderKind::DegRevLex);
  CHECK(ideal_equal(x1, truncated({poly("x[1,1]"), poly("x[1,1]*x[1,2]")}, 1, 2, OrderKind::DegRevLex)));
  CHECK_FALSE(ideal_equal(x1, truncated({poly("x[1,1]*x[1,2]")}, 1, 2, OrderKind::DegRevLex)));
  const auto gb = finite_buchberger(truncated({poly("x[1,1]+x[1,2]"), poly("x[1,2]+x[1,3]"), poly("x[1,1]+x[1,3]")}, 1, 3));
  CHECK(gb.gens.size() == 3);
  for (const auto& g : gb.gens) CHECK(g.terms.size() == 1);
}

TEST_CASE("a late generator is reported as not stabilized") {
  const GeneratorSet g{1, {poly("x[1,1]*x[1,4]")}};
  const auto rep = detect_stabilization(orbit_chain(g), 5);
  CHECK_FALSE(rep.n0);
  const auto more = detect_stabilization(orbit_chain(g), 6);
  REQUIRE(more.n0);
  CHECK(*more.n0 == 4);
  StabilizationOptions one;
  one.min_beyond = 1;
  const auto early = detect_stabilization(orbit_chain(g), 5, one);
  REQUIRE(early.n0);
  CHECK(*early.n0 == 4);
}

TEST_CASE("non-invariant providers are rejected") {
  Chain bad;
  bad.provider = [](std::uint32_t n) {
    // x[1,n] alone: the previous level's generator is lost.
    return truncated({Polynomial(Monomial::variable(1, n))}, 1, n, OrderKind::DegRevLex);
  };
  CHECK_THROWS_AS(detect_stabilization(bad, 4), PreconditionError);
  CHECK_THROWS_AS(detect_stabilization(orbit_chain(GeneratorSet{1, {poly("x[1,1]")}}), 0), PreconditionError);
}

TEST_CASE("truncation oracle") {
  const GeneratorSet input{2, {poly("x[1,1]*x[2,2] - x[1,2]*x[2,1]")}};
  for (std::uint32_t n = 2; n <= 4; ++n) CHECK(truncation_oracle_check(input, input, n));
  const GeneratorSet wrong{2, {poly("x[1,1]*x[2,2]")}};
  CHECK_FALSE(truncation_oracle_check(wrong, input, 3));
}

}  // TEST_SUITE
