#include "eqgb/models.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <memory>
#include <numeric>
#include <sstream>

#include <gmpxx.h>

#include "eqgb/errors.hpp"

namespace eqgb {

SimplicialComplex make_complex(std::uint32_t m, std::vector<Face> faces) {
  for (auto& f : faces) {
    for (auto v : f) {
      if (v < 1 || v > m) throw RangeError("vertex " + std::to_string(v) + " outside [" + std::to_string(m) + "]");
    }
    std::sort(f.begin(), f.end());
    f.erase(std::unique(f.begin(), f.end()), f.end());
  }
  std::sort(faces.begin(), faces.end());
  faces.erase(std::unique(faces.begin(), faces.end()), faces.end());
  SimplicialComplex out{m, {}};
  for (std::size_t i = 0; i < faces.size(); ++i) {
    bool contained = false;
    for (std::size_t j = 0; j < faces.size() && !contained; ++j) {
      contained = j != i && faces[j].size() > faces[i].size() &&
                  std::includes(faces[j].begin(), faces[j].end(), faces[i].begin(), faces[i].end());
    }
    if (!contained) out.facets.push_back(faces[i]);
  }
  return out;
}

std::size_t TableShape::cells() const noexcept {
  std::size_t n = 1;
  for (auto d : dims) n *= d;
  return n;
}

std::size_t flatten(const TableShape& shape, std::span<const std::uint32_t> index) {
  if (index.size() != shape.dims.size()) throw RangeError("index has the wrong number of coordinates");
  std::size_t cell = 0;
  for (std::size_t i = 0; i < index.size(); ++i) {
    if (index[i] < 1 || index[i] > shape.dims[i]) throw RangeError("table index out of range");
    cell = cell * shape.dims[i] + (index[i] - 1);
  }
  return cell;
}

std::vector<std::uint32_t> unflatten(const TableShape& shape, std::size_t cell) {
  std::vector<std::uint32_t> index(shape.dims.size());
  for (std::size_t i = shape.dims.size(); i-- > 0;) {
    index[i] = static_cast<std::uint32_t>(cell % shape.dims[i]) + 1;
    cell /= shape.dims[i];
  }
  return index;
}

namespace {

TableShape sub_shape(const TableShape& shape, const Face& face) {
  TableShape out;
  for (auto v : face) out.dims.push_back(shape.dims.at(v - 1));
  return out;
}

std::vector<std::uint32_t> project(const std::vector<std::uint32_t>& index, const Face& face) {
  std::vector<std::uint32_t> out;
  for (auto v : face) out.push_back(index[v - 1]);
  return out;
}

}  // namespace

IntVector marginal(std::span<const std::int64_t> u, const TableShape& shape, const Face& face) {
  if (u.size() != shape.cells()) throw PreconditionError("table size does not match shape");
  const TableShape sub = sub_shape(shape, face);
  IntVector out(sub.cells(), 0);
  for (std::size_t c = 0; c < u.size(); ++c) out[flatten(sub, project(unflatten(shape, c), face))] += u[c];
  return out;
}

IntVector DesignMatrix::apply(std::span<const std::int64_t> u) const {
  IntVector out(rows, 0);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) out[i] += at(i, j) * u[j];
  }
  return out;
}

DesignMatrix design_matrix(const SimplicialComplex& complex, const TableShape& shape) {
  if (shape.dims.size() != complex.m) throw PreconditionError("shape needs one dimension per vertex");
  DesignMatrix a;
  a.shape = shape;
  a.cols = shape.cells();
  std::vector<std::size_t> offsets;
  for (const auto& f : complex.facets) {
    if (f.empty()) throw PreconditionError("facets must be nonempty");
    offsets.push_back(a.rows);
    a.rows += sub_shape(shape, f).cells();
  }
  a.entries.assign(a.rows * a.cols, 0);
  for (std::size_t c = 0; c < a.cols; ++c) {
    const auto index = unflatten(shape, c);
    for (std::size_t k = 0; k < complex.facets.size(); ++k) {
      const auto& f = complex.facets[k];
      const std::size_t r = offsets[k] + flatten(sub_shape(shape, f), project(index, f));
      a.entries[r * a.cols + c] = 1;
    }
  }
  return a;
}

namespace {

using ZRow = std::vector<mpz_class>;

// Row echelon form of [A^T | I] on the first a.rows columns; returns the
// rank and leaves the kernel rows at the bottom.
std::size_t hermite(const DesignMatrix& a, std::vector<ZRow>& m) {
  const std::size_t w = a.rows;
  m.assign(a.cols, ZRow(w + a.cols, 0));
  for (std::size_t j = 0; j < a.cols; ++j) {
    for (std::size_t i = 0; i < w; ++i) m[j][i] = a.at(i, j);
    m[j][w + j] = 1;
  }
  std::size_t rank = 0;
  for (std::size_t c = 0; c < w && rank < m.size(); ++c) {
    while (true) {
      std::size_t piv = m.size();
      for (std::size_t r = rank; r < m.size(); ++r) {
        if (m[r][c] != 0 && (piv == m.size() || abs(m[r][c]) < abs(m[piv][c]))) piv = r;
      }
      if (piv == m.size()) break;
      std::swap(m[rank], m[piv]);
      bool clean = true;
      for (std::size_t r = rank + 1; r < m.size(); ++r) {
        if (m[r][c] == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), m[r][c].get_mpz_t(), m[rank][c].get_mpz_t());
        for (std::size_t k = c; k < m[r].size(); ++k) m[r][k] -= q * m[rank][k];
        if (m[r][c] != 0) clean = false;
      }
      if (clean) {
        ++rank;
        break;
      }
    }
  }
  return rank;
}

std::int64_t l1(const IntVector& v) {
  std::int64_t s = 0;
  for (auto x : v) s += x < 0 ? -x : x;
  return s;
}

void sign_normalize(IntVector& v) {
  auto it = std::find_if(v.begin(), v.end(), [](std::int64_t x) { return x != 0; });
  if (it != v.end() && *it < 0) {
    for (auto& x : v) x = -x;
  }
}

bool vector_less(const IntVector& a, const IntVector& b) {
  const auto la = l1(a);
  const auto lb = l1(b);
  if (la != lb) return la < lb;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

std::size_t integer_rank(const DesignMatrix& a) {
  std::vector<ZRow> m;
  return hermite(a, m);
}

std::vector<IntVector> lattice_kernel(const DesignMatrix& a) {
  std::vector<ZRow> m;
  const std::size_t rank = hermite(a, m);
  std::vector<IntVector> basis;
  for (std::size_t r = rank; r < m.size(); ++r) {
    IntVector v(a.cols);
    for (std::size_t j = 0; j < a.cols; ++j) {
      const mpz_class& x = m[r][a.rows + j];
      if (!x.fits_slong_p()) throw ResourceLimit("kernel entry does not fit in 64 bits");
      v[j] = x.get_si();
    }
    basis.push_back(std::move(v));
  }
  // Pairwise length reduction until no sum or difference is shorter.
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      for (std::size_t j = 0; j < basis.size(); ++j) {
        if (i == j) continue;
        for (int s : {-1, 1}) {
          IntVector t = basis[i];
          for (std::size_t k = 0; k < t.size(); ++k) t[k] += s * basis[j][k];
          if (l1(t) < l1(basis[i])) {
            basis[i] = std::move(t);
            changed = true;
          }
        }
      }
    }
  }
  for (auto& v : basis) sign_normalize(v);
  std::sort(basis.begin(), basis.end(), vector_less);
  return basis;
}

std::vector<std::size_t> frame_layout(const TableShape& shape, const Face& t) {
  if (t.empty()) throw PreconditionError("frame layout needs at least one column coordinate");
  const std::uint32_t n = shape.dims.at(t.front() - 1);
  Face rest;
  TableShape rest_shape;
  for (std::uint32_t v = 1; v <= shape.dims.size(); ++v) {
    if (std::find(t.begin(), t.end(), v) != t.end()) {
      if (shape.dims[v - 1] != n) throw PreconditionError("column coordinates must share one size");
      continue;
    }
    rest.push_back(v);
    rest_shape.dims.push_back(shape.dims[v - 1]);
  }
  const Frame frame(static_cast<std::uint32_t>(rest_shape.cells()), n, static_cast<std::uint32_t>(t.size()));
  std::vector<std::size_t> layout(frame.size());
  std::vector<std::uint32_t> index(shape.dims.size());
  for (std::size_t p = 0; p < frame.size(); ++p) {
    const VarKey k = frame.key(p);
    const auto r = unflatten(rest_shape, k.row - 1);
    for (std::size_t i = 0; i < rest.size(); ++i) index[rest[i] - 1] = r[i];
    for (std::size_t i = 0; i < t.size(); ++i) index[t[i] - 1] = k.cols[i];
    layout[p] = flatten(shape, index);
  }
  return layout;
}

namespace {

std::vector<std::size_t> resolve_layout(const DesignMatrix& a, const std::vector<std::size_t>& layout) {
  if (!layout.empty()) {
    if (layout.size() != a.cols) throw PreconditionError("layout size does not match the matrix");
    return layout;
  }
  if (!a.shape.dims.empty()) {
    return frame_layout(a.shape, Face{static_cast<std::uint32_t>(a.shape.dims.size())});
  }
  std::vector<std::size_t> out(a.cols);
  for (std::size_t p = 0; p < a.cols; ++p) out[p] = a.cols - 1 - p;
  return out;
}

// Reduced degrevlex basis of the toric ideal in the given layout.
std::vector<FPoly> saturated_basis(const DesignMatrix& a, const std::vector<std::size_t>& layout,
                                   const FiniteGBOptions& gbopts) {
  const OrderKind drl = OrderKind::DegRevLex;
  const std::size_t nv = a.cols;
  std::vector<FPoly> gens;
  for (const auto& v : lattice_kernel(a)) {
    IntVector e(nv);
    for (std::size_t p = 0; p < nv; ++p) e[p] = v[layout[p]];
    gens.push_back(binomial(e, drl));
  }
  if (gens.empty()) return gens;
  // I : x_i^inf. With x_i last in degrevlex, a homogeneous basis element is
  // divisible by x_i exactly when its leading monomial is.
  for (std::size_t i = 0; i < nv; ++i) {
    std::vector<std::size_t> to_last(nv);
    std::vector<std::size_t> back(nv);
    for (std::size_t p = 0; p < nv; ++p) to_last[p] = p < i ? p : (p == i ? nv - 1 : p - 1);
    for (std::size_t p = 0; p < nv; ++p) back[to_last[p]] = p;
    std::vector<FPoly> moved;
    for (const auto& g : gens) moved.push_back(permuted(g, to_last, drl));
    auto gb = finite_groebner(std::move(moved), drl, gbopts);
    gens.clear();
    for (auto& g : gb) {
      std::int32_t k = std::numeric_limits<std::int32_t>::max();
      for (const auto& t : g.terms) k = std::min(k, t.exps[nv - 1]);
      for (auto& t : g.terms) t.exps[nv - 1] -= k;
      gens.push_back(permuted(g, back, drl));
    }
  }
  return finite_groebner(std::move(gens), drl, gbopts);
}

}  // namespace

std::vector<FPoly> toric_ideal(const DesignMatrix& a, const ToricOptions& options) {
  const auto layout = resolve_layout(a, options.layout);
  auto gb = saturated_basis(a, layout, options.gb);
  if (options.order == OrderKind::DegRevLex) return gb;
  for (auto& g : gb) g = normalized(std::move(g), options.order);
  return finite_groebner(std::move(gb), options.order, options.gb);
}

Move move_from_binomial(const FPoly& f, std::span<const std::size_t> layout) {
  if (f.terms.size() != 2) throw PreconditionError("expected a binomial");
  Move b;
  b.table.assign(layout.size(), 0);
  for (std::size_t p = 0; p < layout.size(); ++p) {
    b.table[layout[p]] = static_cast<std::int64_t>(f.terms[0].exps[p]) - f.terms[1].exps[p];
  }
  sign_normalize(b.table);
  return b;
}

std::int64_t move_degree(const Move& b) {
  std::int64_t pos = 0;
  for (auto x : b.table) pos += x > 0 ? x : 0;
  return pos;
}

std::vector<Move> markov_basis(const DesignMatrix& a) {
  const OrderKind drl = OrderKind::DegRevLex;
  const auto layout = resolve_layout(a, {});
  auto candidates = saturated_basis(a, layout, {});
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const FPoly& x, const FPoly& y) { return degree(x) < degree(y); });
  // Greedy by degree: keep a binomial unless the ones kept so far already
  // generate it. For a homogeneous ideal a degree-truncated basis decides
  // membership in that degree.
  std::vector<FPoly> kept;
  std::vector<FPoly> truncated_gb;
  std::int64_t gb_degree = -1;
  bool stale = false;
  for (const auto& f : candidates) {
    const std::int64_t d = degree(f);
    if (stale || d != gb_degree) {
      FiniteGBOptions opts;
      opts.degree_bound = d;
      truncated_gb = kept.empty() ? std::vector<FPoly>{} : finite_groebner(kept, drl, opts);
      gb_degree = d;
      stale = false;
    }
    if (!contains(truncated_gb, f, drl)) {
      kept.push_back(f);
      stale = true;
    }
  }
  std::vector<Move> out;
  for (const auto& f : kept) out.push_back(move_from_binomial(f, layout));
  std::sort(out.begin(), out.end(), [](const Move& x, const Move& y) {
    const auto dx = move_degree(x);
    const auto dy = move_degree(y);
    if (dx != dy) return dx < dy;
    return std::lexicographical_compare(y.table.begin(), y.table.end(), x.table.begin(), x.table.end());
  });
  return out;
}

std::vector<Move> markov_basis(const SimplicialComplex& complex, const TableShape& shape) {
  return markov_basis(design_matrix(complex, shape));
}

namespace {

std::string table_text(const IntVector& u) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < u.size(); ++i) os << (i ? "," : "") << u[i];
  os << ')';
  return os.str();
}

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

}  // namespace

bool verify_markov_fibers(const DesignMatrix& a, std::span<const Move> moves, std::int64_t sum_bound,
                          std::string* witness) {
  const std::size_t n = a.cols;
  for (std::int64_t s = 0; s <= sum_bound; ++s) {
    std::map<IntVector, std::vector<IntVector>> fibers;
    IntVector u(n, 0);
    auto rec = [&](auto&& self, std::size_t cell, std::int64_t left) -> void {
      if (cell + 1 == n || n == 0) {
        if (n > 0) u[cell] = left;
        fibers[a.apply(u)].push_back(u);
        if (n > 0) u[cell] = 0;
        return;
      }
      for (std::int64_t x = left; x >= 0; --x) {
        u[cell] = x;
        self(self, cell + 1, left - x);
      }
      u[cell] = 0;
    };
    rec(rec, 0, s);
    for (const auto& [key, tables] : fibers) {
      if (tables.size() < 2) continue;
      std::map<IntVector, std::size_t> id;
      for (std::size_t i = 0; i < tables.size(); ++i) id.emplace(tables[i], i);
      UnionFind uf(tables.size());
      for (std::size_t i = 0; i < tables.size(); ++i) {
        for (const auto& b : moves) {
          for (int sign : {1, -1}) {
            IntVector v = tables[i];
            bool ok = true;
            for (std::size_t k = 0; k < n && ok; ++k) {
              v[k] += sign * b.table[k];
              ok = v[k] >= 0;
            }
            if (!ok) continue;
            auto it = id.find(v);
            if (it != id.end()) uf.unite(i, it->second);
          }
        }
      }
      for (std::size_t i = 1; i < tables.size(); ++i) {
        if (uf.find(i) != uf.find(0)) {
          if (witness) *witness = "tables " + table_text(tables[0]) + " and " + table_text(tables[i]) + " are not connected";
          return false;
        }
      }
    }
  }
  return true;
}

bool is_independent_set(const SimplicialComplex& complex, const Face& t) {
  for (auto v : t) {
    if (v < 1 || v > complex.m) throw RangeError("vertex outside the ground set");
  }
  for (const auto& f : complex.facets) {
    std::size_t hits = 0;
    for (auto v : t) hits += std::count(f.begin(), f.end(), v);
    if (hits > 1) return false;
  }
  return true;
}

namespace {

Face vertices(const std::vector<Face>& facets) {
  Face out;
  for (const auto& f : facets) out.insert(out.end(), f.begin(), f.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool is_face(const std::vector<Face>& facets, const Face& s) {
  if (s.empty()) return true;
  return std::any_of(facets.begin(), facets.end(),
                     [&](const Face& f) { return std::includes(f.begin(), f.end(), s.begin(), s.end()); });
}

std::optional<Decomposition> decompose_facets(const std::vector<Face>& facets) {
  Decomposition d;
  d.facets = facets;
  if (facets.size() <= 1) return d;
  const std::size_t k = facets.size();
  if (k > 20) throw ResourceLimit("too many facets for the decomposition search");
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << (k - 1)); ++mask) {
    std::vector<Face> left{facets[0]};
    std::vector<Face> right;
    for (std::size_t i = 1; i < k; ++i) ((mask >> (i - 1)) & 1 ? right : left).push_back(facets[i]);
    if (right.empty()) continue;
    const Face v1 = vertices(left);
    const Face v2 = vertices(right);
    Face s;
    std::set_intersection(v1.begin(), v1.end(), v2.begin(), v2.end(), std::back_inserter(s));
    if (!is_face(left, s) || !is_face(right, s)) continue;
    auto dl = decompose_facets(left);
    if (!dl) continue;
    auto dr = decompose_facets(right);
    if (!dr) continue;
    d.separator = s;
    d.parts.push_back(std::move(*dl));
    d.parts.push_back(std::move(*dr));
    return d;
  }
  return std::nullopt;
}

}  // namespace

std::optional<Decomposition> decompose(const SimplicialComplex& complex) {
  return decompose_facets(complex.facets);
}

bool is_decomposable(const SimplicialComplex& complex) { return decompose(complex).has_value(); }

SimplicialComplex envelope(const SimplicialComplex& complex, const Face& t) {
  Face rest;
  for (std::uint32_t v = 1; v <= complex.m; ++v) {
    if (std::find(t.begin(), t.end(), v) == t.end()) rest.push_back(v);
  }
  std::vector<Face> faces{rest};
  for (auto v : t) {
    Face f = rest;
    f.push_back(v);
    faces.push_back(std::move(f));
  }
  std::erase_if(faces, [](const Face& f) { return f.empty(); });
  return make_complex(complex.m, std::move(faces));
}

namespace {

struct InstanceSetup {
  SimplicialComplex complex;
  Face t;
  std::vector<std::uint32_t> dims;
  std::uint32_t rows = 1;

  TableShape shape(std::uint32_t n) const {
    TableShape s{dims};
    for (auto v : t) s.dims[v - 1] = n;
    return s;
  }

  TruncatedIdeal level(const SimplicialComplex& c, std::uint32_t n) const {
    const TableShape s = shape(n);
    ToricOptions opts;
    opts.layout = frame_layout(s, t);
    opts.order = OrderKind::DegRevLex;
    return TruncatedIdeal{Frame(rows, n, static_cast<std::uint32_t>(t.size())),
                          toric_ideal(design_matrix(c, s), opts)};
  }
};

InstanceSetup setup(const SimplicialComplex& complex, Face t, const std::vector<std::uint32_t>& dims) {
  if (dims.size() != complex.m) throw PreconditionError("dims needs one entry per vertex");
  if (t.empty()) throw PreconditionError("T must be nonempty");
  std::sort(t.begin(), t.end());
  t.erase(std::unique(t.begin(), t.end()), t.end());
  if (!is_independent_set(complex, t)) throw PreconditionError("T is not an independent set of the complex");
  InstanceSetup s{complex, t, dims, 1};
  for (std::uint32_t v = 1; v <= complex.m; ++v) {
    if (std::find(t.begin(), t.end(), v) != t.end()) continue;
    if (dims[v - 1] == 0) throw PreconditionError("dimensions must be positive");
    s.rows *= dims[v - 1];
  }
  return s;
}

}  // namespace

Chain independent_set_chain(const SimplicialComplex& complex, const Face& t,
                            const std::vector<std::uint32_t>& dims) {
  auto s = std::make_shared<InstanceSetup>(setup(complex, t, dims));
  return Chain{[s](std::uint32_t n) { return s->level(s->complex, n); }, Invariance::Pi};
}

IndependentSetReport independent_set_instance(const SimplicialComplex& complex, const Face& t,
                                              const std::vector<std::uint32_t>& dims,
                                              std::uint32_t n_max,
                                              const StabilizationOptions& options) {
  auto s = std::make_shared<InstanceSetup>(setup(complex, t, dims));
  auto cache = std::make_shared<std::map<std::uint32_t, TruncatedIdeal>>();
  Chain chain{[s, cache](std::uint32_t n) {
                auto it = cache->find(n);
                if (it == cache->end()) it = cache->emplace(n, s->level(s->complex, n)).first;
                return it->second;
              },
              Invariance::Pi};
  IndependentSetReport report;
  report.stabilization = detect_stabilization(chain, n_max, options);

  const SimplicialComplex env = envelope(complex, s->t);
  for (std::uint32_t n = 1; n <= n_max; ++n) {
    ContainmentCheck check;
    check.n = n;
    const TableShape shape = s->shape(n);
    const DesignMatrix a = design_matrix(complex, shape);
    check.kernel = true;
    for (const auto& v : lattice_kernel(design_matrix(env, shape))) {
      const IntVector img = a.apply(v);
      if (std::any_of(img.begin(), img.end(), [](std::int64_t x) { return x != 0; })) check.kernel = false;
    }
    const TruncatedIdeal model = chain.provider(n);
    check.ideal = true;
    for (const auto& g : s->level(env, n).gens) {
      if (!contains(model.gens, g, OrderKind::DegRevLex)) check.ideal = false;
    }
    report.containment.push_back(check);
  }
  if (report.stabilization.n0) report.within_bound = *report.stabilization.n0 <= 2 * s->t.size();
  return report;
}

}  // namespace eqgb
