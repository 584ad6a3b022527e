#include "eqgb/finite.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include "eqgb/errors.hpp"

namespace eqgb {

int compare_exponents(const Exponents& a, const Exponents& b, OrderKind order) noexcept {
  if (order == OrderKind::DegRevLex) {
    const auto da = total_degree(a);
    const auto db = total_degree(b);
    if (da != db) return da < db ? -1 : 1;
    for (std::size_t i = a.size(); i-- > 0;) {
      if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
    }
    return 0;
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  }
  return 0;
}

std::int64_t total_degree(const Exponents& e) noexcept {
  std::int64_t d = 0;
  for (auto x : e) d += x;
  return d;
}

bool exps_divide(const Exponents& a, const Exponents& b) noexcept {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
  }
  return true;
}

FPoly normalized(FPoly f, OrderKind order) {
  auto& ts = f.terms;
  std::sort(ts.begin(), ts.end(), [order](const FTerm& x, const FTerm& y) {
    return compare_exponents(x.exps, y.exps, order) > 0;
  });
  std::vector<FTerm> out;
  for (auto& t : ts) {
    if (!out.empty() && out.back().exps == t.exps) {
      out.back().coeff += t.coeff;
    } else {
      if (!out.empty() && out.back().coeff == 0) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && out.back().coeff == 0) out.pop_back();
  f.terms = std::move(out);
  return f;
}

FPoly monic(FPoly f) {
  if (f.is_zero()) return f;
  const Rational inv = 1 / f.terms.front().coeff;
  for (auto& t : f.terms) t.coeff *= inv;
  return f;
}

FPoly permuted(const FPoly& f, std::span<const std::size_t> perm, OrderKind order) {
  FPoly out;
  for (const auto& t : f.terms) {
    Exponents e(t.exps.size(), 0);
    for (std::size_t i = 0; i < t.exps.size(); ++i) e[perm[i]] = t.exps[i];
    out.terms.push_back(FTerm{std::move(e), t.coeff});
  }
  return normalized(std::move(out), order);
}

FPoly binomial(std::span<const std::int64_t> move, OrderKind order) {
  Exponents plus(move.size(), 0);
  Exponents minus(move.size(), 0);
  for (std::size_t i = 0; i < move.size(); ++i) {
    if (move[i] > 0) plus[i] = static_cast<std::int32_t>(move[i]);
    if (move[i] < 0) minus[i] = static_cast<std::int32_t>(-move[i]);
  }
  FPoly f;
  f.terms.push_back(FTerm{std::move(plus), 1});
  f.terms.push_back(FTerm{std::move(minus), -1});
  return normalized(std::move(f), order);
}

std::int64_t degree(const FPoly& f) noexcept {
  std::int64_t d = 0;
  for (const auto& t : f.terms) d = std::max(d, total_degree(t.exps));
  return d;
}

namespace {

Exponents exps_sub(const Exponents& a, const Exponents& b) {
  Exponents out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

Exponents exps_lcm(const Exponents& a, const Exponents& b) {
  Exponents out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = std::max(a[i], b[i]);
  return out;
}

bool exps_coprime(const Exponents& a, const Exponents& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != 0 && b[i] != 0) return false;
  }
  return true;
}

// f - c * x^s * g, both sorted descending; the result stays sorted because
// multiplication by a monomial preserves any term order.
std::vector<FTerm> sub_scaled(const std::vector<FTerm>& f, const Rational& c, const Exponents& s,
                              const std::vector<FTerm>& g, OrderKind order) {
  std::vector<FTerm> out;
  out.reserve(f.size() + g.size());
  std::size_t i = 0;
  std::size_t j = 0;
  Exponents shifted;
  auto shifted_at = [&](std::size_t k) {
    shifted.resize(s.size());
    for (std::size_t v = 0; v < s.size(); ++v) shifted[v] = g[k].exps[v] + s[v];
  };
  bool have = false;
  while (i < f.size() || j < g.size()) {
    if (j < g.size() && !have) {
      shifted_at(j);
      have = true;
    }
    int cmp = 0;
    if (i == f.size()) {
      cmp = -1;
    } else if (j == g.size()) {
      cmp = 1;
    } else {
      cmp = compare_exponents(f[i].exps, shifted, order);
    }
    if (cmp > 0) {
      out.push_back(f[i++]);
    } else if (cmp < 0) {
      out.push_back(FTerm{shifted, -c * g[j].coeff});
      ++j;
      have = false;
    } else {
      Rational v = f[i].coeff - c * g[j].coeff;
      if (v != 0) out.push_back(FTerm{f[i].exps, std::move(v)});
      ++i;
      ++j;
      have = false;
    }
  }
  return out;
}

}  // namespace

FPoly normal_form(const FPoly& f, std::span<const FPoly> basis, OrderKind order) {
  std::vector<FTerm> p = f.terms;
  FPoly rem;
  while (!p.empty()) {
    const FTerm& lt = p.front();
    const FPoly* div = nullptr;
    for (const auto& g : basis) {
      if (!g.is_zero() && exps_divide(g.lead(), lt.exps)) {
        div = &g;
        break;
      }
    }
    if (div == nullptr) {
      rem.terms.push_back(lt);
      p.erase(p.begin());
      continue;
    }
    const Rational c = lt.coeff / div->terms.front().coeff;
    const Exponents s = exps_sub(lt.exps, div->lead());
    p = sub_scaled(p, c, s, div->terms, order);
  }
  return rem;
}

FPoly s_polynomial(const FPoly& f, const FPoly& g, OrderKind order) {
  const Exponents L = exps_lcm(f.lead(), g.lead());
  std::vector<FTerm> left;
  const Exponents sf = exps_sub(L, f.lead());
  for (const auto& t : f.terms) {
    Exponents e(t.exps.size());
    for (std::size_t v = 0; v < e.size(); ++v) e[v] = t.exps[v] + sf[v];
    left.push_back(FTerm{std::move(e), t.coeff / f.terms.front().coeff});
  }
  const Rational c = 1 / g.terms.front().coeff;
  FPoly out;
  out.terms = sub_scaled(left, c, exps_sub(L, g.lead()), g.terms, order);
  return out;
}

std::vector<FPoly> finite_groebner(std::vector<FPoly> gens, OrderKind order,
                                   const FiniteGBOptions& options) {
  for (auto& g : gens) g = normalized(std::move(g), order);
  std::erase_if(gens, [](const FPoly& g) { return g.is_zero(); });
  std::sort(gens.begin(), gens.end(), [order](const FPoly& a, const FPoly& b) {
    return compare_exponents(a.lead(), b.lead(), order) < 0;
  });

  struct Pair {
    std::size_t i;
    std::size_t j;
    Exponents lcm;
    std::int64_t deg;
  };
  // Normal strategy: smallest lcm first, ties by index.
  auto pair_less = [order](const Pair& a, const Pair& b) {
    if (a.deg != b.deg) return a.deg < b.deg;
    const int c = compare_exponents(a.lcm, b.lcm, order);
    if (c != 0) return c < 0;
    return std::tie(a.j, a.i) < std::tie(b.j, b.i);
  };
  std::vector<FPoly> G;
  std::set<Pair, decltype(pair_less)> pairs(pair_less);
  // pending[j][i] for i < j: the pair is still queued.
  std::vector<std::vector<char>> pending;
  auto is_pending = [&](std::size_t a, std::size_t b) {
    if (a > b) std::swap(a, b);
    return pending[b][a] != 0;
  };

  auto add = [&](FPoly f) {
    const std::size_t k = G.size();
    G.push_back(monic(std::move(f)));
    if (G.size() > options.max_basis) throw ResourceLimit("finite Gröbner basis exceeded its size cap");
    pending.emplace_back(k, 1);
    for (std::size_t i = 0; i < k; ++i) {
      Exponents L = exps_lcm(G[i].lead(), G[k].lead());
      const auto d = total_degree(L);
      pairs.insert(Pair{i, k, std::move(L), d});
    }
  };

  for (auto& g : gens) {
    FPoly r = normal_form(g, G, order);
    if (!r.is_zero()) add(std::move(r));
  }

  while (!pairs.empty()) {
    const Pair pr = std::move(pairs.extract(pairs.begin()).value());
    pending[pr.j][pr.i] = 0;

    if (exps_coprime(G[pr.i].lead(), G[pr.j].lead())) continue;
    if (options.degree_bound && pr.deg > *options.degree_bound) continue;
    bool chain = false;
    for (std::size_t l = 0; l < G.size() && !chain; ++l) {
      if (l == pr.i || l == pr.j || !exps_divide(G[l].lead(), pr.lcm)) continue;
      chain = !is_pending(pr.i, l) && !is_pending(pr.j, l);
    }
    if (chain) continue;

    FPoly r = normal_form(s_polynomial(G[pr.i], G[pr.j], order), G, order);
    if (!r.is_zero()) add(std::move(r));
  }

  // Reduce: keep minimal leading monomials, then tail-reduce.
  std::sort(G.begin(), G.end(), [order](const FPoly& a, const FPoly& b) {
    return compare_exponents(a.lead(), b.lead(), order) < 0;
  });
  std::vector<FPoly> minimal;
  for (auto& g : G) {
    bool redundant = std::any_of(minimal.begin(), minimal.end(),
                                 [&](const FPoly& h) { return exps_divide(h.lead(), g.lead()); });
    if (!redundant) minimal.push_back(std::move(g));
  }
  std::vector<FPoly> reduced;
  reduced.reserve(minimal.size());
  for (std::size_t k = 0; k < minimal.size(); ++k) {
    std::vector<FPoly> others;
    for (std::size_t j = 0; j < minimal.size(); ++j) {
      if (j != k) others.push_back(j < k ? reduced[j] : minimal[j]);
    }
    reduced.push_back(monic(normal_form(minimal[k], others, order)));
  }
  return reduced;
}

}  // namespace eqgb
