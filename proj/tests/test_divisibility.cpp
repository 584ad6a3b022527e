#include <doctest.h>

#include "eqgb/divisibility.hpp"
#include "eqgb/errors.hpp"
#include "eqgb/text.hpp"
#include "oracles.hpp"

using namespace eqgb;

namespace {

Monomial mono(const char* s) { return parse_monomial(s); }

}  // namespace

TEST_SUITE("divisibility") {

TEST_CASE("witness and cofactor") {
  const auto a = mono("x[1,1]*x[1,2]");
  const auto b = mono("x[1,2]*x[1,3]^2*x[2,3]");
  const auto w = pi_divides(a, b);
  REQUIRE(w);
  CHECK(to_string(w->shift) == "1->2, 2->3");
  CHECK(to_string(w->cofactor) == "x[1,3]*x[2,3]");
  CHECK(apply_shift(w->shift, a) * w->cofactor == b);
}

TEST_CASE("empty columns of the divisor still need room") {
  CHECK_FALSE(pi_divides(mono("x[1,3]"), mono("x[1,2]")));
  CHECK(pi_divides(mono("x[1,3]"), mono("x[1,3]")));
  CHECK(pi_divides(mono("x[1,1]*x[1,3]"), mono("x[1,1]*x[1,2]*x[1,4]")));
  CHECK_FALSE(pi_divides(mono("x[1,1]*x[1,3]"), mono("x[1,1]*x[1,2]")));
}

TEST_CASE("rows are never moved") {
  CHECK_FALSE(pi_divides(mono("x[1,1]*x[2,2]"), mono("x[2,1]*x[1,2]")));
  CHECK_FALSE(pi_divides(mono("x[1,1]"), mono("x[2,5]")));
  CHECK(pi_divides(mono("x[2,1]"), mono("x[2,5]")));
}

TEST_CASE("greedy search agrees with enumeration") {
  oracle::Gen g(2024);
  for (int i = 0; i < 3000; ++i) {
    const auto a = g.monomial(2, 5, 3);
    const auto b = g.monomial(2, 8, 8);
    const auto w = pi_divides(a, b);
    REQUIRE(w.has_value() == oracle::pi_divides(a, b));
    if (w) CHECK(apply_shift(w->shift, a) * w->cofactor == b);
  }
}

TEST_CASE("rigid witness moves the whole generator") {
  const auto a = mono("x[1,2]");
  const auto b = mono("x[1,4]");
  const auto w = pi_divides_rigid(a, b, 3);
  REQUIRE(w);
  CHECK(w->shift(1) == 3);
  CHECK(w->shift(2) == 4);
  CHECK(w->shift(3) == 5);
}

TEST_CASE("diagonal divisibility agrees with enumeration") {
  oracle::Gen g(99);
  for (int i = 0; i < 1500; ++i) {
    const auto a = g.monomial(4, 4, 3);
    const auto b = g.monomial(6, 6, 7);
    const auto w = pi_divides_diagonal(a, b);
    REQUIRE(w.has_value() == oracle::pi_divides_diagonal(a, b));
  }
  const auto w = pi_divides_diagonal(mono("x[1,2]"), mono("x[2,3]"));
  REQUIRE(w);
  CHECK(w->shift(1) == 2);
  CHECK(w->shift(2) == 3);
}

TEST_CASE("even cycles") {
  CHECK(to_string(even_cycle_monomial(2)) == "x[1,1]*x[2,1]*x[1,2]*x[2,2]");
  CHECK(even_cycle_monomial(5).degree() == 10);
  CHECK_THROWS_AS(even_cycle_monomial(1), PreconditionError);
  std::vector<Monomial> cycles;
  for (std::uint32_t k = 2; k <= 5; ++k) cycles.push_back(even_cycle_monomial(k));
  CHECK(is_antichain(cycles, true));
  for (const auto& a : cycles)
    for (const auto& b : cycles)
      if (!(a == b)) CHECK_FALSE(oracle::pi_divides_diagonal(a, b));
}

TEST_CASE("minimalize keeps an antichain generating the same final segment") {
  oracle::Gen g(5);
  for (int round = 0; round < 40; ++round) {
    std::vector<Monomial> ms;
    for (int i = 0; i < 12; ++i) ms.push_back(g.monomial(2, 4, 3));
    const auto basis = minimalize(ms);
    const std::vector<Monomial> gens(basis.generators().begin(), basis.generators().end());
    CHECK(is_antichain(gens));
    for (const auto& m : ms) CHECK(in_final_segment(m, basis));
    for (std::size_t i = 1; i < gens.size(); ++i) CHECK(cmp_shift(gens[i - 1], gens[i]) == Ordering::Less);
  }
  CHECK(minimalize({mono("x[1,2]"), mono("x[1,1]"), mono("x[1,1]")}).size() == 1);
}

}  // TEST_SUITE
