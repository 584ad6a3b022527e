#include "eqgb/core.hpp"

#include <algorithm>

#include "eqgb/errors.hpp"

namespace eqgb {

// ---------------------------------------------------------------- Monomial

Monomial::Monomial(std::vector<Factor> factors) {
  std::sort(factors.begin(), factors.end(),
            [](const Factor& a, const Factor& b) { return var_less(a.first, b.first); });
  for (const auto& [v, e] : factors) {
    if (v.row == 0 || v.col == 0) throw RangeError("row and column indices start at 1");
    if (e == 0) continue;
    if (!factors_.empty() && factors_.back().first == v) {
      factors_.back().second += e;
    } else {
      factors_.emplace_back(v, e);
    }
  }
}

Monomial Monomial::variable(std::uint32_t row, std::uint32_t col, std::uint32_t exp) {
  return Monomial({{VarIndex{row, col}, exp}});
}

std::uint32_t Monomial::exponent(VarIndex v) const noexcept {
  auto it = std::lower_bound(factors_.begin(), factors_.end(), v,
                             [](const Factor& f, VarIndex x) { return var_less(f.first, x); });
  return (it != factors_.end() && it->first == v) ? it->second : 0;
}

std::uint64_t Monomial::degree() const noexcept {
  std::uint64_t d = 0;
  for (const auto& f : factors_) d += f.second;
  return d;
}

std::uint32_t Monomial::max_col() const noexcept {
  return factors_.empty() ? 0 : factors_.back().first.col;
}

std::uint32_t Monomial::max_row() const noexcept {
  std::uint32_t r = 0;
  for (const auto& f : factors_) r = std::max(r, f.first.row);
  return r;
}

std::vector<std::uint32_t> Monomial::columns() const {
  std::vector<std::uint32_t> cols;
  for (const auto& f : factors_) {
    if (cols.empty() || cols.back() != f.first.col) cols.push_back(f.first.col);
  }
  return cols;
}

bool Monomial::divides(const Monomial& other) const noexcept {
  auto it = other.factors_.begin();
  for (const auto& [v, e] : factors_) {
    while (it != other.factors_.end() && var_less(it->first, v)) ++it;
    if (it == other.factors_.end() || !(it->first == v) || it->second < e) return false;
  }
  return true;
}

Monomial Monomial::divided_by(const Monomial& divisor) const {
  if (!divisor.divides(*this)) throw PreconditionError("monomial quotient is not exact");
  Monomial q;
  auto it = divisor.factors_.begin();
  for (const auto& [v, e] : factors_) {
    std::uint32_t sub = 0;
    if (it != divisor.factors_.end() && it->first == v) {
      sub = it->second;
      ++it;
    }
    if (e > sub) q.factors_.emplace_back(v, e - sub);
  }
  return q;
}

Monomial Monomial::lcm(const Monomial& other) const {
  Monomial out;
  auto a = factors_.begin();
  auto b = other.factors_.begin();
  while (a != factors_.end() || b != other.factors_.end()) {
    if (b == other.factors_.end() || (a != factors_.end() && var_less(a->first, b->first))) {
      out.factors_.push_back(*a++);
    } else if (a == factors_.end() || var_less(b->first, a->first)) {
      out.factors_.push_back(*b++);
    } else {
      out.factors_.emplace_back(a->first, std::max(a->second, b->second));
      ++a;
      ++b;
    }
  }
  return out;
}

bool Monomial::coprime(const Monomial& other) const noexcept {
  auto a = factors_.begin();
  auto b = other.factors_.begin();
  while (a != factors_.end() && b != other.factors_.end()) {
    if (a->first == b->first) return false;
    if (var_less(a->first, b->first)) {
      ++a;
    } else {
      ++b;
    }
  }
  return true;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial out;
  auto a = factors_.begin();
  auto b = other.factors_.begin();
  while (a != factors_.end() || b != other.factors_.end()) {
    if (b == other.factors_.end() || (a != factors_.end() && var_less(a->first, b->first))) {
      out.factors_.push_back(*a++);
    } else if (a == factors_.end() || var_less(b->first, a->first)) {
      out.factors_.push_back(*b++);
    } else {
      out.factors_.emplace_back(a->first, a->second + b->second);
      ++a;
      ++b;
    }
  }
  return out;
}

std::size_t Monomial::hash() const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (const auto& [v, e] : factors_) {
    for (std::uint64_t x : {std::uint64_t{v.row}, std::uint64_t{v.col}, std::uint64_t{e}}) {
      h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
  }
  return h;
}

Ordering cmp_shift(const Monomial& a, const Monomial& b) noexcept {
  auto fa = a.factors();
  auto fb = b.factors();
  auto ia = fa.rbegin();
  auto ib = fb.rbegin();
  while (ia != fa.rend() && ib != fb.rend()) {
    if (ia->first == ib->first) {
      if (ia->second != ib->second) {
        return ia->second > ib->second ? Ordering::Greater : Ordering::Less;
      }
      ++ia;
      ++ib;
    } else {
      return var_less(ib->first, ia->first) ? Ordering::Greater : Ordering::Less;
    }
  }
  if (ia != fa.rend()) return Ordering::Greater;
  if (ib != fb.rend()) return Ordering::Less;
  return Ordering::Equal;
}

// ---------------------------------------------------------------- ShiftMap

ShiftMap::ShiftMap(std::vector<Point> points) : points_(std::move(points)) {
  std::sort(points_.begin(), points_.end());
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const auto [d, e] = points_[i];
    if (d == 0 || e == 0) throw RangeError("shift maps act on positive integers");
    if (i == 0) {
      if (e < d) throw PreconditionError("shift map would not be increasing below its first point");
      continue;
    }
    const auto [pd, pe] = points_[i - 1];
    if (pd == d) throw PreconditionError("shift map lists a column twice");
    if (e <= pe || e - pe < d - pd) {
      throw PreconditionError("explicit points do not extend to a strictly increasing map");
    }
  }
}

ShiftMap ShiftMap::from_images(std::span<const std::uint32_t> images) {
  std::vector<Point> pts;
  pts.reserve(images.size());
  for (std::size_t i = 0; i < images.size(); ++i) {
    pts.emplace_back(static_cast<std::uint32_t>(i + 1), images[i]);
  }
  return ShiftMap(std::move(pts));
}

std::uint32_t ShiftMap::operator()(std::uint32_t col) const noexcept {
  auto it = std::upper_bound(points_.begin(), points_.end(), col,
                             [](std::uint32_t c, const Point& p) { return c < p.first; });
  if (it == points_.begin()) return col;
  --it;
  return it->second + (col - it->first);
}

bool ShiftMap::is_identity() const noexcept { return canonical().points_.empty(); }

ShiftMap ShiftMap::canonical() const {
  ShiftMap out;
  Point prev{0, 0};
  for (const auto& p : points_) {
    if (p.second != prev.second + (p.first - prev.first)) out.points_.push_back(p);
    prev = p;
  }
  return out;
}

ShiftMap ShiftMap::rigid_on(std::uint32_t width) const {
  ShiftMap out;
  for (std::uint32_t c = 1; c <= width; ++c) {
    std::uint32_t image = (*this)(c);
    if (!points_.empty() && c < points_.front().first) {
      image = points_.front().second - (points_.front().first - c);
    }
    out.points_.emplace_back(c, image);
  }
  for (const auto& p : points_) {
    if (p.first > width) out.points_.push_back(p);
  }
  return out;
}

bool ShiftMap::operator==(const ShiftMap& other) const {
  return canonical().points_ == other.canonical().points_;
}

ShiftMap compose_shifts(const ShiftMap& p2, const ShiftMap& p1) {
  std::uint32_t bound = 0;
  for (const auto& p : p1.points()) bound = std::max(bound, p.first);
  for (const auto& p : p2.points()) bound = std::max(bound, p.first);
  std::vector<ShiftMap::Point> pts;
  for (std::uint32_t c = 1; c <= bound + 1; ++c) pts.emplace_back(c, p2(p1(c)));
  return ShiftMap(std::move(pts)).canonical();
}

Monomial apply_shift(const ShiftMap& p, const Monomial& m) {
  std::vector<Monomial::Factor> fs;
  fs.reserve(m.factors().size());
  for (const auto& [v, e] : m.factors()) fs.emplace_back(VarIndex{v.row, p(v.col)}, e);
  return Monomial(std::move(fs));
}

// -------------------------------------------------------------- Polynomial

Polynomial::Polynomial(const Monomial& m, Rational c) {
  if (c != 0) terms_.emplace(m, std::move(c));
}

Polynomial::Polynomial(const std::vector<Term>& terms) {
  for (const auto& t : terms) add_term(t.mono, t.coeff);
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

std::optional<Term> Polynomial::leading_term() const {
  if (terms_.empty()) return std::nullopt;
  const auto& [m, c] = *terms_.rbegin();
  return Term{c, m};
}

const Monomial& Polynomial::leading_monomial() const {
  if (terms_.empty()) throw PreconditionError("the zero polynomial has no leading monomial");
  return terms_.rbegin()->first;
}

const Rational& Polynomial::leading_coeff() const {
  if (terms_.empty()) throw PreconditionError("the zero polynomial has no leading coefficient");
  return terms_.rbegin()->second;
}

std::uint32_t Polynomial::max_col() const noexcept {
  std::uint32_t c = 0;
  for (const auto& [m, _] : terms_) c = std::max(c, m.max_col());
  return c;
}

std::uint32_t Polynomial::max_row() const noexcept {
  std::uint32_t r = 0;
  for (const auto& [m, _] : terms_) r = std::max(r, m.max_row());
  return r;
}

std::uint64_t Polynomial::degree() const noexcept {
  std::uint64_t d = 0;
  for (const auto& [m, _] : terms_) d = std::max(d, m.degree());
  return d;
}

std::vector<std::uint32_t> Polynomial::columns() const {
  std::vector<std::uint32_t> cols;
  for (const auto& [m, _] : terms_) {
    for (const auto& f : m.factors()) cols.push_back(f.first.col);
  }
  std::sort(cols.begin(), cols.end());
  cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
  return cols;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
  Polynomial out = *this;
  out += other;
  return out;
}

Polynomial Polynomial::operator-(const Polynomial& other) const {
  Polynomial out = *this;
  out -= other;
  return out;
}

Polynomial Polynomial::operator-() const { return scaled(-1); }

Polynomial Polynomial::operator*(const Polynomial& other) const {
  Polynomial out;
  for (const auto& [m, c] : terms_) {
    for (const auto& [m2, c2] : other.terms_) out.add_term(m * m2, c * c2);
  }
  return out;
}

Polynomial Polynomial::mul_term(const Term& t) const {
  Polynomial out;
  if (t.coeff == 0) return out;
  for (const auto& [m, c] : terms_) out.terms_.emplace_hint(out.terms_.end(), m * t.mono, c * t.coeff);
  return out;
}

Polynomial Polynomial::scaled(const Rational& c) const {
  if (c == 0) return {};
  Polynomial out = *this;
  for (auto& [_, coeff] : out.terms_) coeff *= c;
  return out;
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return {};
  Rational inv = 1 / leading_coeff();
  return scaled(inv);
}

void Polynomial::sub_mul(const Rational& c, const Monomial& m, const Polynomial& p) {
  for (const auto& [mono, coeff] : p.terms_) add_term(m * mono, -c * coeff);
}

bool Polynomial::operator==(const Polynomial& other) const {
  if (terms_.size() != other.terms_.size()) return false;
  auto a = terms_.begin();
  auto b = other.terms_.begin();
  for (; a != terms_.end(); ++a, ++b) {
    if (!(a->first == b->first) || a->second != b->second) return false;
  }
  return true;
}

Polynomial apply_shift(const ShiftMap& p, const Polynomial& f) {
  std::vector<Term> terms;
  terms.reserve(f.size());
  for (const auto& [m, c] : f.terms()) terms.push_back(Term{c, apply_shift(p, m)});
  return Polynomial(terms);
}

std::pair<Polynomial, ShiftMap> compress(const Polynomial& f) {
  if (f.is_zero()) throw PreconditionError("cannot compress the zero polynomial");
  const auto cols = f.columns();
  std::vector<Term> terms;
  for (const auto& [m, c] : f.terms()) {
    std::vector<Monomial::Factor> fs;
    for (const auto& [v, e] : m.factors()) {
      auto pos = std::lower_bound(cols.begin(), cols.end(), v.col) - cols.begin();
      fs.emplace_back(VarIndex{v.row, static_cast<std::uint32_t>(pos + 1)}, e);
    }
    terms.push_back(Term{c, Monomial(std::move(fs))});
  }
  return {Polynomial(terms), ShiftMap::from_images(cols)};
}

Ordering cmp_poly(const Polynomial& a, const Polynomial& b) {
  auto ia = a.terms().rbegin();
  auto ib = b.terms().rbegin();
  for (; ia != a.terms().rend() && ib != b.terms().rend(); ++ia, ++ib) {
    auto c = cmp_shift(ia->first, ib->first);
    if (c != Ordering::Equal) return c;
    if (ia->second != ib->second) return ia->second < ib->second ? Ordering::Less : Ordering::Greater;
  }
  if (ia != a.terms().rend()) return Ordering::Greater;
  if (ib != b.terms().rend()) return Ordering::Less;
  return Ordering::Equal;
}

}  // namespace eqgb
