#pragma once

// Truncations to finitely many columns, the classical engine applied to
// them, and stabilization of invariant chains of ideals.
//
// A Frame fixes the variables of one truncation: x[row, c] with c ranging
// over [n]^arity. Arity 1 is the ordinary grid; higher arity carries the
// diagonal action pi(c_1, ..., c_a) = (pi(c_1), ..., pi(c_a)).

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "eqgb/core.hpp"
#include "eqgb/finite.hpp"
#include "eqgb/gb.hpp"

namespace eqgb {

struct VarKey {
  std::uint32_t row = 1;
  std::vector<std::uint32_t> cols;

  bool operator==(const VarKey&) const = default;
};

/// Positions run from the most significant variable (largest column tuple in
/// lex order, then largest row) down to x[1, (1, ..., 1)]. For arity 1 this
/// is the shift order restricted to [rows] x [n].
class Frame {
 public:
  Frame(std::uint32_t rows, std::uint32_t n, std::uint32_t arity = 1);

  std::uint32_t rows() const noexcept { return rows_; }
  std::uint32_t n() const noexcept { return n_; }
  std::uint32_t arity() const noexcept { return arity_; }
  std::size_t size() const noexcept { return size_; }

  std::size_t position(std::uint32_t row, std::span<const std::uint32_t> cols) const;
  VarKey key(std::size_t position) const;

  bool operator==(const Frame&) const = default;

 private:
  std::uint32_t rows_;
  std::uint32_t n_;
  std::uint32_t arity_;
  std::size_t size_;
};

struct TruncatedIdeal {
  Frame frame;
  std::vector<FPoly> gens;
};

/// Arity-1 conversions. to_frame throws RangeError when f uses a row or
/// column outside the frame.
FPoly to_frame(const Polynomial& f, const Frame& frame, OrderKind order);
Polynomial from_frame(const FPoly& f, const Frame& frame);

TruncatedIdeal truncated(const std::vector<Polynomial>& gens, std::uint32_t rows, std::uint32_t n,
                         OrderKind order = OrderKind::Lex);

/// Moves f from frame `from` into frame `to` through pi (applied to every
/// column coordinate). Throws RangeError if an image leaves `to`.
FPoly shift_into(const FPoly& f, const Frame& from, const Frame& to, const ShiftMap& pi,
                 OrderKind order);

/// Reduced Gröbner basis of the truncation, same frame.
TruncatedIdeal finite_buchberger(const TruncatedIdeal& ideal, OrderKind order = OrderKind::Lex,
                                 const FiniteGBOptions& options = {});

/// All strictly increasing maps [k] -> [n], lexicographic by image list.
/// Throws PreconditionError if k > n.
std::vector<ShiftMap> shift_set(std::uint32_t k, std::uint32_t n);

/// Every shift of every generator that fits in [n]; a generator of width w
/// is moved by the maps of shift_set(w, n). Generators wider than n are
/// skipped.
TruncatedIdeal orbit_generators(const GeneratorSet& gens, std::uint32_t n,
                                OrderKind order = OrderKind::Lex);
/// Frame-level version: moves I (frame k) into frame n by shift_set(k, n).
TruncatedIdeal orbit_generators(const TruncatedIdeal& ideal, std::uint32_t n,
                                OrderKind order = OrderKind::Lex);

/// Same frame required; compares reduced Gröbner bases.
bool ideal_equal(const TruncatedIdeal& a, const TruncatedIdeal& b,
                 OrderKind order = OrderKind::DegRevLex);

/// `reduced_gb` must be a Gröbner basis for `order`.
bool contains(std::span<const FPoly> reduced_gb, const FPoly& f, OrderKind order);

enum class Invariance { Pi, SymmetricGroup };

struct Chain {
  std::function<TruncatedIdeal(std::uint32_t)> provider;
  Invariance invariance = Invariance::Pi;
};

/// The chain n -> <all shifts of gens into [n]>.
Chain orbit_chain(const GeneratorSet& gens);

struct LevelReport {
  std::uint32_t n = 0;
  std::size_t generators = 0;
  std::size_t gb_size = 0;
  std::int64_t max_degree = 0;
  /// Whether the orbit of the levels up to the reported n0 equals I_n;
  /// unset for n <= n0 or when the chain did not stabilize.
  std::optional<bool> equal;
  /// Whether I_n equals the orbit of all lower levels (n >= 2).
  std::optional<bool> from_below;
};

struct StabilizationOptions {
  /// Levels beyond n0 that must be checked before n0 is accepted.
  std::uint32_t min_beyond = 2;
  OrderKind order = OrderKind::DegRevLex;
  FiniteGBOptions gb;
};

struct StabilizationReport {
  std::optional<std::uint32_t> n0;
  std::uint32_t verified_up_to = 0;
  std::uint32_t n_max = 0;
  std::uint32_t min_beyond = 0;
  std::vector<LevelReport> levels;
};

/// Smallest n0 such that <union over k <= n0 of Pi_{k,n} I_k> == I_n for
/// every n in (n0, n_max], with at least min_beyond such n. Throws
/// PreconditionError if the provider is caught violating invariance.
StabilizationReport detect_stabilization(const Chain& chain, std::uint32_t n_max,
                                         const StabilizationOptions& options = {});

/// Reduced lex bases of the orbits of both sets in [n] coincide.
bool truncation_oracle_check(const GeneratorSet& eq_basis, const GeneratorSet& input,
                             std::uint32_t n);

/// Runs truncation_oracle_check at each n and stores the verdicts in
/// result.certificate.
void certify(GBResult& result, const GeneratorSet& input, std::span<const std::uint32_t> ns);

}  // namespace eqgb
