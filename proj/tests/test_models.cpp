#include <doctest.h>

#include <algorithm>

#include "eqgb/errors.hpp"
#include "eqgb/models.hpp"
#include "oracles.hpp"

using namespace eqgb;

namespace {

std::vector<oracle::QRow> rational_rows(const DesignMatrix& a) {
  std::vector<oracle::QRow> m(a.rows, oracle::QRow(a.cols));
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = 0; j < a.cols; ++j) m[i][j] = a.at(i, j);
  return m;
}

bool in_kernel(const DesignMatrix& a, const IntVector& v) {
  const auto img = a.apply(v);
  return std::all_of(img.begin(), img.end(), [](std::int64_t x) { return x == 0; });
}

SimplicialComplex random_complex(oracle::Gen& g, std::uint32_t m) {
  std::vector<Face> faces;
  const auto k = g.uniform(1, 4);
  for (std::uint32_t i = 0; i < k; ++i) {
    Face f;
    for (std::uint32_t v = 1; v <= m; ++v)
      if (g.uniform(0, 1)) f.push_back(v);
    if (f.empty()) f.push_back(g.uniform(1, m));
    faces.push_back(f);
  }
  return make_complex(m, faces);
}

const SimplicialComplex independence = make_complex(2, {{1}, {2}});
const SimplicialComplex no3way = make_complex(3, {{1, 2}, {1, 3}, {2, 3}});
const SimplicialComplex path = make_complex(3, {{1, 2}, {2, 3}});

}  // namespace

TEST_SUITE("models") {

TEST_CASE("complexes are normalized") {
  const auto c = make_complex(3, {{2, 1}, {1, 2, 3}, {3}, {1, 2, 3}});
  CHECK(c.facets == std::vector<Face>{{1, 2, 3}});
  CHECK(make_complex(3, {{3}, {1}}).facets == std::vector<Face>{{1}, {3}});
  CHECK_THROWS_AS(make_complex(2, {{3}}), RangeError);
  CHECK_THROWS_AS(make_complex(2, {{0}}), RangeError);
}

TEST_CASE("flattening and marginals") {
  const TableShape s{{2, 3}};
  CHECK(s.cells() == 6);
  for (std::size_t c = 0; c < 6; ++c) CHECK(flatten(s, unflatten(s, c)) == c);
  CHECK(flatten(s, std::vector<std::uint32_t>{1, 2}) == 1);
  CHECK(flatten(s, std::vector<std::uint32_t>{2, 1}) == 3);
  CHECK_THROWS_AS(flatten(s, std::vector<std::uint32_t>{3, 1}), RangeError);
  const IntVector u{1, 2, 3, 4, 5, 6};
  CHECK(marginal(u, s, {1}) == IntVector{6, 15});
  CHECK(marginal(u, s, {2}) == IntVector{5, 7, 9});
  CHECK(marginal(u, s, {1, 2}) == u);
}

TEST_CASE("design matrix stacks the facet marginals") {
  const TableShape s{{2, 3}};
  const auto a = design_matrix(independence, s);
  CHECK(a.rows == 5);
  CHECK(a.cols == 6);
  const IntVector u{1, 2, 3, 4, 5, 6};
  CHECK(a.apply(u) == IntVector{6, 15, 5, 7, 9});
  CHECK_THROWS_AS(design_matrix(independence, TableShape{{2}}), PreconditionError);
  const auto n3 = design_matrix(no3way, TableShape{{2, 2, 2}});
  CHECK(n3.rows == 12);
  CHECK(n3.cols == 8);
  CHECK(lattice_kernel(n3).size() == 1);
}

TEST_CASE("lattice kernel is a saturated basis of the kernel") {
  const std::vector<std::pair<SimplicialComplex, TableShape>> cases{
      {independence, {{2, 2}}}, {independence, {{3, 4}}}, {no3way, {{2, 2, 2}}},
      {path, {{2, 3, 2}}},      {make_complex(3, {{1}, {2, 3}}), {{2, 2, 2}}}};
  for (const auto& [c, s] : cases) {
    const auto a = design_matrix(c, s);
    const auto basis = lattice_kernel(a);
    const auto r = oracle::rank(rational_rows(a));
    CHECK(integer_rank(a) == r);
    CHECK(basis.size() == a.cols - r);
    for (const auto& v : basis) {
      CHECK(in_kernel(a, v));
      const auto first = std::find_if(v.begin(), v.end(), [](std::int64_t x) { return x != 0; });
      REQUIRE(first != v.end());
      CHECK(*first > 0);
    }
    // Every kernel vector with entries in {-1, 0, 1} has integral coordinates.
    if (a.cols > 12) continue;
    std::vector<std::vector<std::int64_t>> rows(basis.begin(), basis.end());
    IntVector v(a.cols, -1);
    for (;;) {
      if (in_kernel(a, v)) {
        const auto x = oracle::solve_rows(rows, v);
        REQUIRE(x);
        for (const auto& q : *x) CHECK(q.get_den() == 1);
      }
      std::size_t i = 0;
      while (i < v.size() && v[i] == 1) v[i++] = -1;
      if (i == v.size()) break;
      ++v[i];
    }
  }
}

TEST_CASE("toric ideal matches the fiber dimension count") {
  const std::vector<std::tuple<SimplicialComplex, TableShape, std::int32_t>> cases{
      {independence, {{2, 3}}, 3}, {independence, {{3, 3}}, 3}, {path, {{2, 2, 2}}, 3}, {no3way, {{2, 2, 2}}, 4}};
  for (const auto& [c, s, dmax] : cases) {
    const auto a = design_matrix(c, s);
    ToricOptions opts;
    opts.order = OrderKind::DegRevLex;
    const auto gb = toric_ideal(a, opts);
    const auto layout = frame_layout(s, {static_cast<std::uint32_t>(s.dims.size())});
    for (const auto& f : gb) CHECK(in_kernel(a, move_from_binomial(f, layout).table));
    for (std::int32_t d = 1; d <= dmax; ++d) {
      CHECK(oracle::rank_mod_p(oracle::macaulay_int(gb, a.cols, d)) == oracle::toric_dimension(a, d));
    }
  }
}

TEST_CASE("independence Markov counts") {
  for (auto [r1, r2] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 2}, {2, 3}, {3, 3}, {3, 4}}) {
    const auto moves = markov_basis(independence, TableShape{{r1, r2}});
    CHECK(moves.size() == oracle::binomial_coefficient(r1, 2) * oracle::binomial_coefficient(r2, 2));
    for (const auto& b : moves) CHECK(move_degree(b) == 2);
  }
}

TEST_CASE("Markov basis connects fibers and is minimal") {
  const auto a = design_matrix(independence, TableShape{{3, 3}});
  auto moves = markov_basis(a);
  CHECK(verify_markov_fibers(a, moves, 4));
  CHECK(oracle::fibers_connected(a, moves, 4));
  moves.pop_back();
  std::string why;
  CHECK_FALSE(verify_markov_fibers(a, moves, 4, &why));
  CHECK_FALSE(why.empty());
  CHECK_FALSE(oracle::fibers_connected(a, moves, 4));
}

TEST_CASE("no-3-way 2x2x2 has one degree-4 move") {
  const auto a = design_matrix(no3way, TableShape{{2, 2, 2}});
  const auto moves = markov_basis(a);
  REQUIRE(moves.size() == 1);
  CHECK(move_degree(moves[0]) == 4);
  CHECK(moves[0].table == IntVector{1, -1, -1, 1, -1, 1, 1, -1});
  CHECK(oracle::fibers_connected(a, moves, 4));
}

TEST_CASE("path model is quadratic") {
  for (const auto& s : {TableShape{{2, 2, 2}}, TableShape{{2, 3, 2}}}) {
    const auto a = design_matrix(path, s);
    const auto moves = markov_basis(a);
    CHECK_FALSE(moves.empty());
    for (const auto& b : moves) CHECK(move_degree(b) == 2);
    CHECK(oracle::fibers_connected(a, moves, 4));
  }
}

TEST_CASE("decomposability agrees with the chordal characterization") {
  CHECK(is_decomposable(path));
  CHECK(is_decomposable(independence));
  CHECK(is_decomposable(make_complex(3, {{1, 2, 3}})));
  CHECK_FALSE(is_decomposable(no3way));
  const auto d = decompose(path);
  REQUIRE(d);
  CHECK(d->separator == Face{2});
  CHECK(d->parts.size() == 2);
  oracle::Gen g(8);
  for (int i = 0; i < 200; ++i) {
    const auto c = random_complex(g, g.uniform(1, 5));
    CHECK(is_decomposable(c) == oracle::decomposable(c));
  }
}

TEST_CASE("independent sets and envelopes") {
  CHECK(is_independent_set(path, {1, 3}));
  CHECK_FALSE(is_independent_set(path, {1, 2}));
  CHECK_THROWS_AS(is_independent_set(path, {4}), RangeError);
  CHECK(envelope(path, {1, 3}).facets == path.facets);
  CHECK(envelope(no3way, {3}).facets == std::vector<Face>{{1, 2, 3}});
  CHECK_THROWS_AS(independent_set_chain(path, {1, 2}, {2, 2, 2}), PreconditionError);
  CHECK_THROWS_AS(independent_set_chain(path, {}, {2, 2, 2}), PreconditionError);
}

TEST_CASE("refinement gives kernel containment") {
  oracle::Gen g(12);
  for (int i = 0; i < 20; ++i) {
    const auto m = g.uniform(2, 4);
    const auto big = random_complex(g, m);
    std::vector<Face> sub;
    for (const auto& f : big.facets) {
      Face h;
      for (auto v : f)
        if (g.uniform(0, 2)) h.push_back(v);
      if (!h.empty()) sub.push_back(h);
    }
    if (sub.empty()) sub.push_back({big.facets[0][0]});
    const auto small = make_complex(m, sub);
    TableShape s;
    for (std::uint32_t v = 0; v < m; ++v) s.dims.push_back(2);
    const auto a1 = design_matrix(small, s);
    for (const auto& v : lattice_kernel(design_matrix(big, s))) CHECK(in_kernel(a1, v));
  }
}

TEST_CASE("independence chain stabilizes at 2") {
  const auto rep = independent_set_instance(independence, {2}, {2, 0}, 4);
  REQUIRE(rep.stabilization.n0);
  CHECK(*rep.stabilization.n0 == 2);
  CHECK(rep.within_bound == true);
  for (const auto& c : rep.containment) {
    CHECK(c.kernel);
    CHECK(c.ideal);
  }
}

TEST_CASE("path with both ends growing is not yet stable at n = 3") {
  const auto rep = independent_set_instance(path, {1, 3}, {0, 2, 0}, 3);
  CHECK_FALSE(rep.stabilization.n0);
  CHECK_FALSE(rep.within_bound);
  REQUIRE(rep.containment.size() == 3);
  for (const auto& c : rep.containment) {
    CHECK(c.kernel);
    CHECK(c.ideal);
  }
}

}  // TEST_SUITE
