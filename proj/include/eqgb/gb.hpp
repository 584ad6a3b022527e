#pragma once

// Gröbner bases up to the shift action: reduction modulo all shifts of a
// generator set, S-pairs over interleaved column placements, and a
// pass-based completion with explicit limits.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "eqgb/core.hpp"

namespace eqgb {

struct GeneratorSet {
  std::uint32_t ring_width = 1;
  std::vector<Polynomial> gens;
};

struct ReductionStep {
  Rational coeff;
  Monomial cofactor;
  ShiftMap shift;
  std::size_t gen_index = 0;
  /// Leading monomial of the working polynomial before this step.
  Monomial head;
};

/// input == remainder + sum(coeff * cofactor * shift(gens[gen_index])).
struct ReductionTrace {
  std::vector<ReductionStep> steps;
  Polynomial remainder;
};

/// Reduces `f` modulo every shift of every generator. With `full` the lower
/// terms are reduced as well, so no remainder monomial lies in the final
/// segment of the generators' leading monomials.
ReductionTrace reduce(const Polynomial& f, const GeneratorSet& basis, bool full = true);

/// Rebuilds the reduced polynomial from a trace.
Polynomial replay(const ReductionTrace& trace, const GeneratorSet& basis);

/// All pairs (sigma, tau) of increasing maps [wg] -> [wg+wh], [wh] -> [wg+wh]
/// whose images together form an initial segment [1, u]; every other
/// placement is a shift of one of these. Sorted deterministically.
std::vector<std::pair<ShiftMap, ShiftMap>> interleavings(std::uint32_t wg, std::uint32_t wh);

/// (L/a) sigma(g) - (lc(sigma g)/lc(tau h)) (L/b) tau(h) with a, b the shifted
/// leading monomials and L their lcm.
Polynomial s_polynomial(const Polynomial& g, const Polynomial& h, const ShiftMap& sigma,
                        const ShiftMap& tau);

struct CompletionLimits {
  std::uint32_t max_width = 8;   // column span of any S-pair placement
  std::uint32_t max_degree = 12; // degree of the S-pair lcm
  std::uint32_t max_passes = 16;
};

struct CompletionOptions {
  /// Treat the input as generating a symmetric-group-invariant ideal: each
  /// generator is joined by its column permutations and new elements are
  /// stored compressed. Off by default, since compression is unsound for
  /// ideals that are only shift-invariant (x[1,2] does not generate x[1,1]).
  bool symmetric = false;
  /// Skip S-pairs whose shifted leading monomials are coprime.
  bool coprime_skip = true;
};

enum class CompletionStatus { Completed, LimitExceeded };

struct CertificateEntry {
  std::uint32_t n = 0;
  bool equal = false;
};

struct GBStats {
  std::size_t passes = 0;
  std::size_t spairs_reduced = 0;
  std::size_t spairs_coprime = 0;
  std::size_t spairs_over_limit = 0;
};

struct GBResult {
  GeneratorSet basis;
  CompletionStatus status = CompletionStatus::Completed;
  /// Filled by certify() (chains.hpp) when requested.
  std::optional<std::vector<CertificateEntry>> certificate;
  GBStats stats;
};

/// Monic, nonzero, deduplicated copy of the input. In symmetric mode also
/// adds every column permutation, compressed.
GeneratorSet normalize_generators(const GeneratorSet& input, bool symmetric);

GBResult equivariant_buchberger(const GeneratorSet& input, const CompletionLimits& limits,
                                const CompletionOptions& options = {});

/// Drops generators whose leading monomial is Pi-divisible by another's,
/// tail-reduces the rest, and sorts by leading monomial.
GeneratorSet auto_reduce(const GeneratorSet& basis);

/// Re-runs every scheduled S-pair against `basis` (coprime pairs included
/// when `include_coprime`); true iff all reduce to zero.
bool verify_spairs(const GeneratorSet& basis, std::uint32_t max_width, bool include_coprime = false);

/// Throws PreconditionError unless result.status is Completed.
bool is_member(const Polynomial& f, const GBResult& result);

/// Width used for shift placements: the largest column index.
std::uint32_t width(const Polynomial& f);

}  // namespace eqgb
