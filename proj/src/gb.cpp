#include "eqgb/gb.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "eqgb/divisibility.hpp"
#include "eqgb/errors.hpp"

namespace eqgb {

std::uint32_t width(const Polynomial& f) { return f.max_col(); }

ReductionTrace reduce(const Polynomial& f, const GeneratorSet& basis, bool full) {
  ReductionTrace trace;
  Polynomial p = f;
  Polynomial rem;
  while (!p.is_zero()) {
    const Monomial head = p.leading_monomial();
    const Rational lc = p.leading_coeff();
    bool stepped = false;
    for (std::size_t i = 0; i < basis.gens.size(); ++i) {
      const Polynomial& g = basis.gens[i];
      if (g.is_zero()) continue;
      auto w = pi_divides_rigid(g.leading_monomial(), head, width(g));
      if (!w) continue;
      Polynomial shifted = apply_shift(w->shift, g);
      Rational c = lc / shifted.leading_coeff();
      p.sub_mul(c, w->cofactor, shifted);
      if (!p.is_zero() && cmp_shift(p.leading_monomial(), head) != Ordering::Less) {
        throw std::logic_error("reduction step did not lower the leading monomial");
      }
      trace.steps.push_back(ReductionStep{c, w->cofactor, w->shift, i, head});
      stepped = true;
      break;
    }
    if (stepped) continue;
    if (!full) break;
    Polynomial lead(head, lc);
    rem += lead;
    p -= lead;
  }
  trace.remainder = rem + p;
  return trace;
}

Polynomial replay(const ReductionTrace& trace, const GeneratorSet& basis) {
  Polynomial out = trace.remainder;
  for (const auto& s : trace.steps) {
    out.sub_mul(-s.coeff, s.cofactor, apply_shift(s.shift, basis.gens.at(s.gen_index)));
  }
  return out;
}

namespace {

// All increasing k-subsets of [n], lexicographic.
std::vector<std::vector<std::uint32_t>> subsets(std::uint32_t n, std::uint32_t k) {
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<std::uint32_t> cur;
  auto rec = [&](auto&& self, std::uint32_t start) -> void {
    if (cur.size() == k) {
      out.push_back(cur);
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

std::vector<std::uint32_t> images(const ShiftMap& p, std::uint32_t w) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t c = 1; c <= w; ++c) out.push_back(p(c));
  return out;
}

}  // namespace

std::vector<std::pair<ShiftMap, ShiftMap>> interleavings(std::uint32_t wg, std::uint32_t wh) {
  const std::uint32_t n = wg + wh;
  std::vector<std::pair<ShiftMap, ShiftMap>> out;
  for (const auto& s : subsets(n, wg)) {
    for (const auto& t : subsets(n, wh)) {
      std::vector<std::uint32_t> u;
      std::set_union(s.begin(), s.end(), t.begin(), t.end(), std::back_inserter(u));
      if (!u.empty() && u.back() != u.size()) continue;
      out.emplace_back(ShiftMap::from_images(s), ShiftMap::from_images(t));
    }
  }
  return out;
}

Polynomial s_polynomial(const Polynomial& g, const Polynomial& h, const ShiftMap& sigma,
                        const ShiftMap& tau) {
  if (g.is_zero() || h.is_zero()) throw PreconditionError("S-polynomial of the zero polynomial");
  const Polynomial sg = apply_shift(sigma, g);
  const Polynomial th = apply_shift(tau, h);
  const Monomial& a = sg.leading_monomial();
  const Monomial& b = th.leading_monomial();
  const Monomial L = a.lcm(b);
  Polynomial out = sg.mul_term(Term{1, L.divided_by(a)});
  out.sub_mul(sg.leading_coeff() / th.leading_coeff(), L.divided_by(b), th);
  return out;
}

namespace {

void sort_polys(std::vector<Polynomial>& ps) {
  std::sort(ps.begin(), ps.end(),
            [](const Polynomial& a, const Polynomial& b) { return cmp_poly(a, b) == Ordering::Less; });
}

Polynomial compressed(const Polynomial& f) { return compress(f).first; }

std::vector<Polynomial> column_permutations(const Polynomial& f) {
  auto [g, _] = compress(f);
  const std::uint32_t w = width(g);
  if (w > 6) throw ResourceLimit("symmetric expansion limited to generators spanning at most 6 columns");
  std::vector<std::uint32_t> perm(w);
  std::iota(perm.begin(), perm.end(), 1);
  std::vector<Polynomial> out;
  do {
    std::vector<Term> terms;
    for (const auto& [m, c] : g.terms()) {
      std::vector<Monomial::Factor> fs;
      for (const auto& [v, e] : m.factors()) fs.emplace_back(VarIndex{v.row, perm[v.col - 1]}, e);
      terms.push_back(Term{c, Monomial(std::move(fs))});
    }
    out.push_back(Polynomial(terms).monic());
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

struct PairScan {
  const CompletionLimits& limits;
  const CompletionOptions& options;
  GBStats& stats;
  bool over_limit = false;

  // Visits each scheduled S-pair of (g, h); `same` marks a self-pair.
  template <typename Visit>
  void scan(const Polynomial& g, const Polynomial& h, bool same, Visit&& visit) {
    const std::uint32_t wg = width(g);
    const std::uint32_t wh = width(h);
    for (const auto& [sigma, tau] : interleavings(wg, wh)) {
      const auto si = images(sigma, wg);
      const auto ti = images(tau, wh);
      if (same && !(si < ti)) continue;
      const std::uint32_t span = std::max(si.empty() ? 0 : si.back(), ti.empty() ? 0 : ti.back());
      if (span > limits.max_width) {
        ++stats.spairs_over_limit;
        over_limit = true;
        continue;
      }
      const Monomial a = apply_shift(sigma, g.leading_monomial());
      const Monomial b = apply_shift(tau, h.leading_monomial());
      if (options.coprime_skip && a.coprime(b)) {
        ++stats.spairs_coprime;
        continue;
      }
      if (a.lcm(b).degree() > limits.max_degree) {
        ++stats.spairs_over_limit;
        over_limit = true;
        continue;
      }
      visit(sigma, tau);
    }
  }
};

}  // namespace

GeneratorSet normalize_generators(const GeneratorSet& input, bool symmetric) {
  GeneratorSet out{input.ring_width, {}};
  for (const auto& g : input.gens) {
    if (g.is_zero()) continue;
    if (g.max_row() > input.ring_width) throw RangeError("generator row exceeds the ring width");
    if (symmetric) {
      for (auto& p : column_permutations(g)) out.gens.push_back(std::move(p));
    } else {
      out.gens.push_back(g.monic());
    }
  }
  sort_polys(out.gens);
  out.gens.erase(std::unique(out.gens.begin(), out.gens.end()), out.gens.end());
  return out;
}

GeneratorSet auto_reduce(const GeneratorSet& basis) {
  std::vector<Polynomial> sorted;
  for (const auto& g : basis.gens) {
    if (!g.is_zero()) sorted.push_back(g.monic());
  }
  sort_polys(sorted);
  GeneratorSet kept{basis.ring_width, {}};
  std::vector<Monomial> heads;
  for (auto& g : sorted) {
    if (in_final_segment(g.leading_monomial(), heads)) continue;
    heads.push_back(g.leading_monomial());
    kept.gens.push_back(std::move(g));
  }
  for (std::size_t k = 0; k < kept.gens.size(); ++k) {
    GeneratorSet others{basis.ring_width, {}};
    for (std::size_t j = 0; j < kept.gens.size(); ++j) {
      if (j != k) others.gens.push_back(kept.gens[j]);
    }
    kept.gens[k] = reduce(kept.gens[k], others, true).remainder.monic();
  }
  sort_polys(kept.gens);
  return kept;
}

GBResult equivariant_buchberger(const GeneratorSet& input, const CompletionLimits& limits,
                                const CompletionOptions& options) {
  if (limits.max_width == 0 || limits.max_degree == 0 || limits.max_passes == 0) {
    throw PreconditionError("completion limits must be positive");
  }
  GBResult result;
  GeneratorSet normalized = normalize_generators(input, options.symmetric);
  if (normalized.gens.empty()) throw PreconditionError("completion needs a nonzero generator");

  // Inter-reduce the input so the working basis holds no redundant elements.
  GeneratorSet basis{input.ring_width, {}};
  for (const auto& g : normalized.gens) {
    Polynomial r = reduce(g, basis, true).remainder;
    if (r.is_zero()) continue;
    basis.gens.push_back(options.symmetric ? compressed(r).monic() : r.monic());
  }

  PairScan scan{limits, options, result.stats};
  std::size_t old_size = 0;
  bool passes_exhausted = false;
  for (;;) {
    const GeneratorSet snapshot = basis;
    std::vector<Polynomial> fresh;
    for (std::size_t j = 0; j < snapshot.gens.size(); ++j) {
      for (std::size_t i = 0; i <= j; ++i) {
        if (j < old_size) continue;
        scan.scan(snapshot.gens[i], snapshot.gens[j], i == j,
                  [&](const ShiftMap& sigma, const ShiftMap& tau) {
                    ++result.stats.spairs_reduced;
                    Polynomial s = s_polynomial(snapshot.gens[i], snapshot.gens[j], sigma, tau);
                    Polynomial r = reduce(s, snapshot, true).remainder;
                    if (!r.is_zero()) fresh.push_back(r.monic());
                  });
      }
    }
    old_size = snapshot.gens.size();
    ++result.stats.passes;

    sort_polys(fresh);
    for (const auto& f : fresh) {
      Polynomial r = reduce(f, basis, true).remainder;
      if (r.is_zero()) continue;
      if (options.symmetric) r = compressed(r);
      basis.gens.push_back(r.monic());
    }
    if (basis.gens.size() == old_size) break;
    if (result.stats.passes >= limits.max_passes) {
      passes_exhausted = true;
      break;
    }
  }

  result.basis = auto_reduce(basis);
  result.status = (scan.over_limit || passes_exhausted) ? CompletionStatus::LimitExceeded
                                                        : CompletionStatus::Completed;
  return result;
}

bool verify_spairs(const GeneratorSet& basis, std::uint32_t max_width, bool include_coprime) {
  CompletionLimits limits{max_width, ~0u, 1};
  CompletionOptions options{false, !include_coprime};
  GBStats stats;
  PairScan scan{limits, options, stats};
  bool ok = true;
  for (std::size_t j = 0; j < basis.gens.size() && ok; ++j) {
    for (std::size_t i = 0; i <= j && ok; ++i) {
      scan.scan(basis.gens[i], basis.gens[j], i == j, [&](const ShiftMap& sigma, const ShiftMap& tau) {
        if (!ok) return;
        Polynomial s = s_polynomial(basis.gens[i], basis.gens[j], sigma, tau);
        if (!reduce(s, basis, true).remainder.is_zero()) ok = false;
      });
    }
  }
  return ok;
}

bool is_member(const Polynomial& f, const GBResult& result) {
  if (result.status != CompletionStatus::Completed) {
    throw PreconditionError("membership needs a completed basis");
  }
  return reduce(f, result.basis, true).remainder.is_zero();
}

}  // namespace eqgb
