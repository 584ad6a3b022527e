#pragma once

// Classical Gröbner bases in finitely many variables.
//
// Exponent vectors are stored in significance layout: position 0 holds the
// most significant variable. Lex compares positions left to right;
// DegRevLex compares total degree first and then favours the smaller
// exponent at the last differing position. Callers that need a different
// variable precedence permute positions before calling in.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "eqgb/core.hpp"

namespace eqgb {

enum class OrderKind { Lex, DegRevLex };

using Exponents = std::vector<std::int32_t>;

struct FTerm {
  Exponents exps;
  Rational coeff;

  bool operator==(const FTerm& o) const { return exps == o.exps && coeff == o.coeff; }
};

/// Terms sorted in strictly descending order for the order the polynomial
/// was last normalized with; no zero coefficients.
struct FPoly {
  std::vector<FTerm> terms;

  bool is_zero() const noexcept { return terms.empty(); }
  const Exponents& lead() const { return terms.front().exps; }
  bool operator==(const FPoly&) const = default;
};

int compare_exponents(const Exponents& a, const Exponents& b, OrderKind order) noexcept;
std::int64_t total_degree(const Exponents& e) noexcept;
bool exps_divide(const Exponents& a, const Exponents& b) noexcept;

/// Sorts terms, merges equal monomials, drops zeros.
FPoly normalized(FPoly f, OrderKind order);
FPoly monic(FPoly f);
/// Moves exponent positions: result.exps[perm[i]] = f.exps[i].
FPoly permuted(const FPoly& f, std::span<const std::size_t> perm, OrderKind order);
/// x^b+ - x^b- from an integer vector.
FPoly binomial(std::span<const std::int64_t> move, OrderKind order);
std::int64_t degree(const FPoly& f) noexcept;

struct FiniteGBOptions {
  /// Skip S-pairs whose lcm exceeds this degree. Only meaningful for
  /// homogeneous input with a degree-compatible order.
  std::optional<std::int64_t> degree_bound;
  std::size_t max_basis = 20000;
};

/// Reduced Gröbner basis: monic, sorted by ascending leading monomial.
/// Throws ResourceLimit if the working basis outgrows options.max_basis.
std::vector<FPoly> finite_groebner(std::vector<FPoly> gens, OrderKind order,
                                   const FiniteGBOptions& options = {});

/// Full normal form modulo `basis` (need not be a Gröbner basis).
FPoly normal_form(const FPoly& f, std::span<const FPoly> basis, OrderKind order);

/// S-polynomial in the classical sense.
FPoly s_polynomial(const FPoly& f, const FPoly& g, OrderKind order);

}  // namespace eqgb
