#include "eqgb/divisibility.hpp"

#include <algorithm>
#include <map>

#include "eqgb/errors.hpp"

namespace eqgb {

namespace {

// One nonzero column of a monomial: (column, [(row, exp)...]) with rows
// ascending.
struct Column {
  std::uint32_t col;
  std::span<const Monomial::Factor> entries;
};

std::vector<Column> column_view(const Monomial& m) {
  std::vector<Column> out;
  auto fs = m.factors();
  std::size_t i = 0;
  while (i < fs.size()) {
    std::size_t j = i;
    while (j < fs.size() && fs[j].first.col == fs[i].first.col) ++j;
    out.push_back(Column{fs[i].first.col, fs.subspan(i, j - i)});
    i = j;
  }
  return out;
}

bool dominates(const Column& big, const Column& small) {
  auto it = big.entries.begin();
  for (const auto& [v, e] : small.entries) {
    while (it != big.entries.end() && it->first.row < v.row) ++it;
    if (it == big.entries.end() || it->first.row != v.row || it->second < e) return false;
  }
  return true;
}

}  // namespace

std::optional<DivisibilityWitness> pi_divides(const Monomial& a, const Monomial& b) {
  const auto ua = column_view(a);
  const auto vb = column_view(b);
  std::vector<ShiftMap::Point> points;
  points.reserve(ua.size());
  std::uint32_t prev_src = 0;
  std::uint32_t prev_dst = 0;
  std::size_t next = 0;
  for (const auto& u : ua) {
    // The target must leave room for the (empty) columns strictly between
    // this one and the previous matched column.
    const std::uint32_t lowest = prev_dst + (u.col - prev_src);
    while (next < vb.size() && (vb[next].col < lowest || !dominates(vb[next], u))) ++next;
    if (next == vb.size()) return std::nullopt;
    points.emplace_back(u.col, vb[next].col);
    prev_src = u.col;
    prev_dst = vb[next].col;
    ++next;
  }
  ShiftMap shift(std::move(points));
  return DivisibilityWitness{shift, b.divided_by(apply_shift(shift, a))};
}

std::optional<DivisibilityWitness> pi_divides_rigid(const Monomial& a, const Monomial& b,
                                                     std::uint32_t width) {
  auto w = pi_divides(a, b);
  if (w) w->shift = w->shift.rigid_on(width);
  return w;
}

namespace {

Monomial apply_diagonal(const std::map<std::uint32_t, std::uint32_t>& pi, const Monomial& m) {
  std::vector<Monomial::Factor> fs;
  for (const auto& [v, e] : m.factors()) fs.emplace_back(VarIndex{pi.at(v.row), pi.at(v.col)}, e);
  return Monomial(std::move(fs));
}

struct DiagonalSearch {
  const Monomial& a;
  const Monomial& b;
  std::vector<std::uint32_t> domain;  // indices used by a, ascending
  std::uint32_t target_max;
  std::map<std::uint32_t, std::uint32_t> pi;

  // Every factor of a whose indices are both assigned must divide into b.
  bool partial_ok() const {
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> need;
    for (const auto& [v, e] : a.factors()) {
      auto r = pi.find(v.row);
      auto c = pi.find(v.col);
      if (r == pi.end() || c == pi.end()) continue;
      need[{r->second, c->second}] += e;
    }
    for (const auto& [rc, e] : need) {
      if (b.exponent(VarIndex{rc.first, rc.second}) < e) return false;
    }
    return true;
  }

  bool search(std::size_t k, std::uint32_t prev_src, std::uint32_t prev_dst) {
    if (k == domain.size()) return true;
    const std::uint32_t src = domain[k];
    for (std::uint32_t dst = prev_dst + (src - prev_src); dst <= target_max; ++dst) {
      pi[src] = dst;
      if (partial_ok() && search(k + 1, src, dst)) return true;
    }
    pi.erase(src);
    return false;
  }
};

}  // namespace

std::optional<DivisibilityWitness> pi_divides_diagonal(const Monomial& a, const Monomial& b) {
  std::vector<std::uint32_t> domain;
  for (const auto& [v, _] : a.factors()) {
    domain.push_back(v.row);
    domain.push_back(v.col);
  }
  std::sort(domain.begin(), domain.end());
  domain.erase(std::unique(domain.begin(), domain.end()), domain.end());
  std::uint32_t target_max = 0;
  for (const auto& [v, _] : b.factors()) target_max = std::max({target_max, v.row, v.col});

  DiagonalSearch s{a, b, domain, target_max, {}};
  if (!s.search(0, 0, 0)) return std::nullopt;
  std::vector<ShiftMap::Point> points(s.pi.begin(), s.pi.end());
  Monomial image = apply_diagonal(s.pi, a);
  return DivisibilityWitness{ShiftMap(std::move(points)), b.divided_by(image)};
}

bool in_final_segment(const Monomial& m, std::span<const Monomial> generators) {
  return std::any_of(generators.begin(), generators.end(),
                     [&](const Monomial& g) { return pi_divides(g, m).has_value(); });
}

bool in_final_segment(const Monomial& m, const FinalSegmentBasis& basis) {
  return in_final_segment(m, basis.generators());
}

FinalSegmentBasis minimalize(std::vector<Monomial> monomials) {
  std::sort(monomials.begin(), monomials.end(), ShiftLess{});
  monomials.erase(std::unique(monomials.begin(), monomials.end()), monomials.end());
  // Pi-divisibility refines the shift order, so a divisor always sits
  // earlier in the sorted list.
  FinalSegmentBasis out;
  for (const auto& m : monomials) {
    if (!in_final_segment(m, out.generators_)) out.generators_.push_back(m);
  }
  return out;
}

bool is_antichain(std::span<const Monomial> monomials, bool diagonal) {
  for (std::size_t i = 0; i < monomials.size(); ++i) {
    for (std::size_t j = 0; j < monomials.size(); ++j) {
      if (i == j) continue;
      const bool divides = diagonal ? pi_divides_diagonal(monomials[i], monomials[j]).has_value()
                                    : pi_divides(monomials[i], monomials[j]).has_value();
      if (divides) return false;
    }
  }
  return true;
}

Monomial even_cycle_monomial(std::uint32_t k) {
  if (k < 2) throw PreconditionError("even cycles need at least two rows");
  std::vector<Monomial::Factor> fs;
  for (std::uint32_t i = 1; i <= k; ++i) {
    fs.push_back({VarIndex{i, i}, 1});
    fs.push_back({VarIndex{i, i == k ? 1 : i + 1}, 1});
  }
  return Monomial(std::move(fs));
}

}  // namespace eqgb
