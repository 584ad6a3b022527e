#pragma once

// Sparse monomials and polynomials in the indeterminates x[i,j] (i a row in
// [r], j a positive column index), the shift order on monomials, and the
// action of the monoid of strictly increasing maps on column indices.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace eqgb {

using Rational = mpq_class;

struct VarIndex {
  std::uint32_t row = 1;
  std::uint32_t col = 1;

  bool operator==(const VarIndex&) const = default;
};

/// Variable precedence of the shift order: column first, then row.
constexpr bool var_less(VarIndex a, VarIndex b) noexcept {
  return a.col < b.col || (a.col == b.col && a.row < b.row);
}

enum class Ordering { Less, Equal, Greater };

/// A monomial as a finite map VarIndex -> positive exponent, stored as a
/// vector sorted by ascending variable precedence.
class Monomial {
 public:
  using Factor = std::pair<VarIndex, std::uint32_t>;

  Monomial() = default;

  /// Accepts factors in any order; repeated variables are merged and zero
  /// exponents dropped.
  explicit Monomial(std::vector<Factor> factors);

  static Monomial variable(std::uint32_t row, std::uint32_t col, std::uint32_t exp = 1);

  std::span<const Factor> factors() const noexcept { return factors_; }
  bool is_one() const noexcept { return factors_.empty(); }
  std::uint32_t exponent(VarIndex v) const noexcept;
  std::uint64_t degree() const noexcept;

  /// Largest column index in the support (0 for the unit monomial).
  std::uint32_t max_col() const noexcept;
  std::uint32_t max_row() const noexcept;
  /// Distinct columns of the support, ascending.
  std::vector<std::uint32_t> columns() const;

  bool divides(const Monomial& other) const noexcept;
  /// Exact quotient; throws PreconditionError if `divisor` does not divide.
  Monomial divided_by(const Monomial& divisor) const;
  Monomial lcm(const Monomial& other) const;
  bool coprime(const Monomial& other) const noexcept;

  Monomial operator*(const Monomial& other) const;
  bool operator==(const Monomial&) const = default;

  std::size_t hash() const noexcept;

 private:
  std::vector<Factor> factors_;
};

/// The shift order: locate the largest variable (by column, then row) on
/// which the exponents differ; the monomial with the larger exponent there
/// is Greater.
Ordering cmp_shift(const Monomial& a, const Monomial& b) noexcept;

struct ShiftLess {
  bool operator()(const Monomial& a, const Monomial& b) const noexcept {
    return cmp_shift(a, b) == Ordering::Less;
  }
};

struct Term {
  Rational coeff;
  Monomial mono;
};

/// An element of the monoid of strictly increasing maps P -> P.
///
/// Stored as finitely many explicit points d_1 < ... < d_s with images
/// e_1 < ... < e_s. Other columns follow the extension rule:
///   c < d_1            -> c
///   d_i < c < d_{i+1}  -> e_i + (c - d_i)
///   c > d_s            -> e_s + (c - d_s)
/// A point list is accepted only when this extension is strictly increasing,
/// i.e. e_1 >= d_1 and e_{i+1} - e_i >= d_{i+1} - d_i.
class ShiftMap {
 public:
  using Point = std::pair<std::uint32_t, std::uint32_t>;

  ShiftMap() = default;  // identity
  explicit ShiftMap(std::vector<Point> points);
  /// The map 1 -> images[0], 2 -> images[1], ...
  static ShiftMap from_images(std::span<const std::uint32_t> images);

  std::uint32_t operator()(std::uint32_t col) const noexcept;

  std::span<const Point> points() const noexcept { return points_; }
  bool is_identity() const noexcept;

  /// Equivalent map with the fewest explicit points.
  ShiftMap canonical() const;
  /// Equivalent map listing every column in [1, width] explicitly; columns
  /// below the first explicit point are translated rigidly with it instead
  /// of fixed. Used when a shift found from a leading monomial has to move
  /// a whole polynomial.
  ShiftMap rigid_on(std::uint32_t width) const;

  /// Equality of the underlying functions.
  bool operator==(const ShiftMap& other) const;

 private:
  std::vector<Point> points_;
};

/// c -> p2(p1(c)).
ShiftMap compose_shifts(const ShiftMap& p2, const ShiftMap& p1);

Monomial apply_shift(const ShiftMap& p, const Monomial& m);

class Polynomial {
 public:
  using TermMap = std::map<Monomial, Rational, ShiftLess>;

  Polynomial() = default;
  Polynomial(const Monomial& m, Rational c = 1);  // NOLINT(google-explicit-constructor)
  explicit Polynomial(const std::vector<Term>& terms);

  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }
  /// Terms in ascending shift order.
  const TermMap& terms() const noexcept { return terms_; }

  std::optional<Term> leading_term() const;
  /// Leading monomial; throws PreconditionError on the zero polynomial.
  const Monomial& leading_monomial() const;
  const Rational& leading_coeff() const;

  std::uint32_t max_col() const noexcept;
  std::uint32_t max_row() const noexcept;
  std::uint64_t degree() const noexcept;
  std::vector<std::uint32_t> columns() const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial operator+(const Polynomial& other) const;
  Polynomial operator-(const Polynomial& other) const;
  Polynomial operator-() const;
  Polynomial operator*(const Polynomial& other) const;

  Polynomial mul_term(const Term& t) const;
  Polynomial scaled(const Rational& c) const;
  /// Divides by the leading coefficient; zero stays zero.
  Polynomial monic() const;

  /// this -= c * m * p, in place.
  void sub_mul(const Rational& c, const Monomial& m, const Polynomial& p);

  bool operator==(const Polynomial& other) const;

 private:
  void add_term(const Monomial& m, const Rational& c);

  TermMap terms_;
};

Polynomial apply_shift(const ShiftMap& p, const Polynomial& f);

/// Canonical column compression: returns (g, pi) where g uses exactly the
/// columns 1..w, pi maps 1..w onto f's w distinct columns in order, and
/// f == apply_shift(pi, g). Throws PreconditionError on f = 0.
std::pair<Polynomial, ShiftMap> compress(const Polynomial& f);

/// Total order on polynomials: compares term lists from the top down.
Ordering cmp_poly(const Polynomial& a, const Polynomial& b);

}  // namespace eqgb

template <>
struct std::hash<eqgb::Monomial> {
  std::size_t operator()(const eqgb::Monomial& m) const noexcept { return m.hash(); }
};
