#pragma once

// Divisibility up to the shift action: a |_Pi b iff pi(a) divides b for some
// strictly increasing pi. With monomials read column by column this is the
// Higman embedding order of the column exponent vectors under componentwise
// comparison, where empty columns of `a` still need their own (possibly
// empty) column of `b`.

#include <optional>
#include <span>
#include <vector>

#include "eqgb/core.hpp"

namespace eqgb {

struct DivisibilityWitness {
  /// Explicit on the support columns of the divisor (or, in diagonal mode,
  /// on every index it uses).
  ShiftMap shift;
  Monomial cofactor;
};

/// Greedy leftmost embedding. Returns the lexicographically least witness,
/// or nullopt when a does not Pi-divide b.
std::optional<DivisibilityWitness> pi_divides(const Monomial& a, const Monomial& b);

/// Divisibility when pi moves both indices: x[i,j] -> x[pi(i), pi(j)].
/// Monomials are read as squares of a grid. Backtracking search; returns the
/// lexicographically least witness.
std::optional<DivisibilityWitness> pi_divides_diagonal(const Monomial& a, const Monomial& b);

/// Same as pi_divides but the witness is rigid on every column of [1, width]:
/// the shift to apply to a whole generator whose leading monomial is `a`.
std::optional<DivisibilityWitness> pi_divides_rigid(const Monomial& a, const Monomial& b,
                                                     std::uint32_t width);

/// An antichain of monomials under Pi-divisibility.
class FinalSegmentBasis {
 public:
  FinalSegmentBasis() = default;

  std::span<const Monomial> generators() const noexcept { return generators_; }
  std::size_t size() const noexcept { return generators_.size(); }

 private:
  friend FinalSegmentBasis minimalize(std::vector<Monomial> monomials);
  std::vector<Monomial> generators_;
};

bool in_final_segment(const Monomial& m, const FinalSegmentBasis& basis);
bool in_final_segment(const Monomial& m, std::span<const Monomial> generators);

/// Smallest subset generating the same final segment, sorted by the shift
/// order. Duplicates collapse to one copy.
FinalSegmentBasis minimalize(std::vector<Monomial> monomials);

bool is_antichain(std::span<const Monomial> monomials, bool diagonal = false);

/// x[1,1] x[1,2] x[2,2] x[2,3] ... x[k,k] x[k,1]: the even cycle of length
/// 2k in the bipartite row/column graph. Requires k >= 2.
Monomial even_cycle_monomial(std::uint32_t k);

}  // namespace eqgb
