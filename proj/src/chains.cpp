#include "eqgb/chains.hpp"

#include <algorithm>
#include <stdexcept>

#include "eqgb/errors.hpp"

namespace eqgb {

Frame::Frame(std::uint32_t rows, std::uint32_t n, std::uint32_t arity)
    : rows_(rows), n_(n), arity_(arity), size_(rows) {
  if (rows == 0 || arity == 0) throw PreconditionError("frame needs at least one row and one column coordinate");
  for (std::uint32_t i = 0; i < arity; ++i) size_ *= n;
}

std::size_t Frame::position(std::uint32_t row, std::span<const std::uint32_t> cols) const {
  if (row < 1 || row > rows_ || cols.size() != arity_) throw RangeError("variable outside frame");
  std::size_t rank = 0;
  for (auto c : cols) {
    if (c < 1 || c > n_) throw RangeError("column outside frame");
    rank = rank * n_ + (c - 1);
  }
  rank = rank * rows_ + (row - 1);
  return size_ - 1 - rank;
}

VarKey Frame::key(std::size_t position) const {
  std::size_t rank = size_ - 1 - position;
  VarKey k;
  k.row = static_cast<std::uint32_t>(rank % rows_) + 1;
  rank /= rows_;
  k.cols.assign(arity_, 1);
  for (std::uint32_t i = arity_; i-- > 0;) {
    k.cols[i] = static_cast<std::uint32_t>(rank % n_) + 1;
    rank /= n_;
  }
  return k;
}

FPoly to_frame(const Polynomial& f, const Frame& frame, OrderKind order) {
  if (frame.arity() != 1) throw PreconditionError("polynomial conversion needs an arity-1 frame");
  FPoly out;
  for (const auto& [m, c] : f.terms()) {
    Exponents e(frame.size(), 0);
    for (const auto& [v, x] : m.factors()) {
      const std::uint32_t col = v.col;
      e[frame.position(v.row, std::span(&col, 1))] = static_cast<std::int32_t>(x);
    }
    out.terms.push_back(FTerm{std::move(e), c});
  }
  return normalized(std::move(out), order);
}

Polynomial from_frame(const FPoly& f, const Frame& frame) {
  if (frame.arity() != 1) throw PreconditionError("polynomial conversion needs an arity-1 frame");
  std::vector<Term> terms;
  for (const auto& t : f.terms) {
    std::vector<Monomial::Factor> fs;
    for (std::size_t p = 0; p < t.exps.size(); ++p) {
      if (t.exps[p] == 0) continue;
      VarKey k = frame.key(p);
      fs.emplace_back(VarIndex{k.row, k.cols[0]}, static_cast<std::uint32_t>(t.exps[p]));
    }
    terms.push_back(Term{t.coeff, Monomial(std::move(fs))});
  }
  return Polynomial(terms);
}

TruncatedIdeal truncated(const std::vector<Polynomial>& gens, std::uint32_t rows, std::uint32_t n,
                         OrderKind order) {
  TruncatedIdeal out{Frame(rows, n), {}};
  for (const auto& g : gens) {
    if (!g.is_zero()) out.gens.push_back(to_frame(g, out.frame, order));
  }
  return out;
}

FPoly shift_into(const FPoly& f, const Frame& from, const Frame& to, const ShiftMap& pi,
                 OrderKind order) {
  if (from.rows() != to.rows() || from.arity() != to.arity()) {
    throw PreconditionError("frames differ in rows or arity");
  }
  std::vector<std::size_t> target(from.size());
  for (std::size_t p = 0; p < from.size(); ++p) {
    VarKey k = from.key(p);
    for (auto& c : k.cols) c = pi(c);
    target[p] = to.position(k.row, k.cols);
  }
  FPoly out;
  for (const auto& t : f.terms) {
    Exponents e(to.size(), 0);
    for (std::size_t p = 0; p < t.exps.size(); ++p) e[target[p]] = t.exps[p];
    out.terms.push_back(FTerm{std::move(e), t.coeff});
  }
  return normalized(std::move(out), order);
}

TruncatedIdeal finite_buchberger(const TruncatedIdeal& ideal, OrderKind order,
                                 const FiniteGBOptions& options) {
  return TruncatedIdeal{ideal.frame, finite_groebner(ideal.gens, order, options)};
}

std::vector<ShiftMap> shift_set(std::uint32_t k, std::uint32_t n) {
  if (k > n) throw PreconditionError("shift_set needs k <= n");
  std::vector<ShiftMap> out;
  std::vector<std::uint32_t> cur;
  auto rec = [&](auto&& self, std::uint32_t start) -> void {
    if (cur.size() == k) {
      out.push_back(ShiftMap::from_images(cur));
      return;
    }
    for (std::uint32_t v = start; v + (k - cur.size()) <= n + 1; ++v) {
      cur.push_back(v);
      self(self, v + 1);
      cur.pop_back();
    }
  };
  rec(rec, 1);
  return out;
}

namespace {

void dedupe(std::vector<FPoly>& ps, OrderKind order) {
  auto less = [order](const FPoly& a, const FPoly& b) {
    const std::size_t k = std::min(a.terms.size(), b.terms.size());
    for (std::size_t i = 0; i < k; ++i) {
      int c = compare_exponents(a.terms[i].exps, b.terms[i].exps, order);
      if (c != 0) return c < 0;
      if (a.terms[i].coeff != b.terms[i].coeff) return a.terms[i].coeff < b.terms[i].coeff;
    }
    return a.terms.size() < b.terms.size();
  };
  for (auto& p : ps) p = monic(std::move(p));
  std::sort(ps.begin(), ps.end(), less);
  ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
}

}  // namespace

TruncatedIdeal orbit_generators(const GeneratorSet& gens, std::uint32_t n, OrderKind order) {
  TruncatedIdeal out{Frame(gens.ring_width, n), {}};
  for (const auto& g : gens.gens) {
    if (g.is_zero()) continue;
    const std::uint32_t w = width(g);
    if (w > n) continue;
    if (w == 0) {
      out.gens.push_back(to_frame(g, out.frame, order));
      continue;
    }
    for (const auto& pi : shift_set(w, n)) out.gens.push_back(to_frame(apply_shift(pi, g), out.frame, order));
  }
  dedupe(out.gens, order);
  return out;
}

TruncatedIdeal orbit_generators(const TruncatedIdeal& ideal, std::uint32_t n, OrderKind order) {
  const Frame& from = ideal.frame;
  TruncatedIdeal out{Frame(from.rows(), n, from.arity()), {}};
  for (const auto& pi : shift_set(from.n(), n)) {
    for (const auto& g : ideal.gens) out.gens.push_back(shift_into(g, from, out.frame, pi, order));
  }
  dedupe(out.gens, order);
  return out;
}

bool ideal_equal(const TruncatedIdeal& a, const TruncatedIdeal& b, OrderKind order) {
  if (!(a.frame == b.frame)) throw PreconditionError("ideal_equal needs matching frames");
  std::vector<FPoly> ga;
  std::vector<FPoly> gb;
  for (const auto& f : a.gens) ga.push_back(normalized(f, order));
  for (const auto& f : b.gens) gb.push_back(normalized(f, order));
  return finite_groebner(std::move(ga), order) == finite_groebner(std::move(gb), order);
}

bool contains(std::span<const FPoly> reduced_gb, const FPoly& f, OrderKind order) {
  return normal_form(f, reduced_gb, order).is_zero();
}

Chain orbit_chain(const GeneratorSet& gens) {
  return Chain{[gens](std::uint32_t n) { return orbit_generators(gens, n); }, Invariance::Pi};
}

namespace {

// Generators of <union over k <= top of Pi_{k,n} G_k>.
std::vector<FPoly> lifted(const std::vector<TruncatedIdeal>& gbs, std::uint32_t top, std::uint32_t n,
                          OrderKind order) {
  std::vector<FPoly> out;
  for (std::uint32_t k = 1; k <= top; ++k) {
    auto part = orbit_generators(gbs[k - 1], n, order).gens;
    out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  dedupe(out, order);
  return out;
}

bool homogeneous(const FPoly& f) {
  return std::all_of(f.terms.begin(), f.terms.end(),
                     [&](const FTerm& t) { return total_degree(t.exps) == total_degree(f.lead()); });
}

// <gens> == <target>, given <gens> is contained in <target> and target is a
// reduced basis. Homogeneous input only needs a basis of <gens> up to the
// top degree of target.
bool generates(std::vector<FPoly> gens, const std::vector<FPoly>& target, OrderKind order,
               const FiniteGBOptions& gbopts) {
  const bool graded = std::all_of(gens.begin(), gens.end(), homogeneous) &&
                      std::all_of(target.begin(), target.end(), homogeneous);
  if (!graded) return finite_groebner(std::move(gens), order, gbopts) == target;
  FiniteGBOptions opts = gbopts;
  std::int64_t top = 0;
  for (const auto& g : target) top = std::max(top, degree(g));
  opts.degree_bound = top;
  const auto gb = finite_groebner(std::move(gens), order, opts);
  return std::all_of(target.begin(), target.end(), [&](const FPoly& f) { return contains(gb, f, order); });
}

}  // namespace

StabilizationReport detect_stabilization(const Chain& chain, std::uint32_t n_max,
                                         const StabilizationOptions& options) {
  if (n_max == 0) throw PreconditionError("n_max must be positive");
  const OrderKind order = options.order;
  StabilizationReport report;
  report.n_max = n_max;
  report.min_beyond = options.min_beyond;

  std::vector<TruncatedIdeal> gbs;
  for (std::uint32_t n = 1; n <= n_max; ++n) {
    TruncatedIdeal level = chain.provider(n);
    if (level.frame.n() != n) throw PreconditionError("provider returned a frame of the wrong size");
    std::vector<FPoly> gens;
    for (const auto& g : level.gens) gens.push_back(normalized(g, order));
    LevelReport lr;
    lr.n = n;
    lr.generators = gens.size();
    TruncatedIdeal gb{level.frame, finite_groebner(std::move(gens), order, options.gb)};
    lr.gb_size = gb.gens.size();
    for (const auto& g : gb.gens) lr.max_degree = std::max(lr.max_degree, degree(g));
    if (n > 1) {
      const TruncatedIdeal& prev = gbs.back();
      for (const auto& pi : shift_set(n - 1, n)) {
        for (const auto& g : prev.gens) {
          if (!contains(gb.gens, shift_into(g, prev.frame, gb.frame, pi, order), order)) {
            throw PreconditionError("chain is not invariant: a shift of level " + std::to_string(n - 1) +
                                    " leaves level " + std::to_string(n));
          }
        }
      }
    }
    gbs.push_back(std::move(gb));
    report.levels.push_back(lr);
  }

  // I_n is generated from below iff it equals the orbit of all lower levels.
  std::vector<bool> from_below(n_max + 1, true);
  for (std::uint32_t n = 2; n <= n_max; ++n) {
    from_below[n] = generates(lifted(gbs, n - 1, n, order), gbs[n - 1].gens, order, options.gb);
    report.levels[n - 1].from_below = from_below[n];
  }
  std::uint32_t n0 = n_max;
  while (n0 > 1 && from_below[n0]) --n0;
  if (n0 + options.min_beyond > n_max) {
    report.verified_up_to = n_max;
    return report;
  }

  // Direct check of the definition; also confirms the inductive shortcut.
  for (std::uint32_t n = n0 + 1; n <= n_max; ++n) {
    bool eq = generates(lifted(gbs, n0, n, order), gbs[n - 1].gens, order, options.gb);
    if (!eq) throw std::logic_error("stabilization check is not monotone");
    report.levels[n - 1].equal = true;
  }
  report.n0 = n0;
  report.verified_up_to = n_max;
  return report;
}

bool truncation_oracle_check(const GeneratorSet& eq_basis, const GeneratorSet& input,
                             std::uint32_t n) {
  const std::uint32_t r = std::max(eq_basis.ring_width, input.ring_width);
  GeneratorSet a = eq_basis;
  GeneratorSet b = input;
  a.ring_width = r;
  b.ring_width = r;
  return finite_groebner(orbit_generators(a, n).gens, OrderKind::Lex) ==
         finite_groebner(orbit_generators(b, n).gens, OrderKind::Lex);
}

void certify(GBResult& result, const GeneratorSet& input, std::span<const std::uint32_t> ns) {
  std::vector<CertificateEntry> entries;
  for (auto n : ns) entries.push_back(CertificateEntry{n, truncation_oracle_check(result.basis, input, n)});
  result.certificate = std::move(entries);
}

}  // namespace eqgb
