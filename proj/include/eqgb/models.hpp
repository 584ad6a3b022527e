#pragma once

// Hierarchical models on contingency tables: simplicial complexes, marginal
// maps and their design matrices, integer kernels, toric ideals and Markov
// bases, plus the chains obtained by letting some table dimensions grow.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "eqgb/chains.hpp"
#include "eqgb/finite.hpp"

namespace eqgb {

using Face = std::vector<std::uint32_t>;
using IntVector = std::vector<std::int64_t>;

/// Stored as facets: each sorted, none contained in another, and the facet
/// list sorted. Vertices are 1-based.
struct SimplicialComplex {
  std::uint32_t m = 0;
  std::vector<Face> facets;
};

/// Normalizes the facet list. Throws RangeError on a vertex outside [m].
SimplicialComplex make_complex(std::uint32_t m, std::vector<Face> faces);

struct TableShape {
  std::vector<std::uint32_t> dims;

  std::size_t cells() const noexcept;
};

/// Lexicographic flattening, last coordinate fastest. Indices are 1-based.
std::size_t flatten(const TableShape& shape, std::span<const std::uint32_t> index);
std::vector<std::uint32_t> unflatten(const TableShape& shape, std::size_t cell);

/// Sums of u over the fibers of the projection onto the coordinates in F.
IntVector marginal(std::span<const std::int64_t> u, const TableShape& shape, const Face& face);

struct DesignMatrix {
  /// Table the columns index; may be empty for a hand-built matrix.
  TableShape shape;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::int64_t> entries;  // row-major

  std::int64_t at(std::size_t i, std::size_t j) const { return entries[i * cols + j]; }
  IntVector apply(std::span<const std::int64_t> u) const;
};

/// One 0/1 block per facet, facet-major; within a block rows follow the
/// lexicographic order of the facet's marginal cells.
DesignMatrix design_matrix(const SimplicialComplex& complex, const TableShape& shape);

/// Lattice basis of the integer kernel: Hermite reduction of [A^T | I],
/// followed by pairwise length reduction. Each vector's first nonzero entry
/// is positive.
std::vector<IntVector> lattice_kernel(const DesignMatrix& a);
std::size_t integer_rank(const DesignMatrix& a);

struct ToricOptions {
  /// Cell at each exponent position. When empty: the arity-1 frame layout
  /// with the last table coordinate as column if the matrix carries its
  /// shape, else cells in descending order.
  std::vector<std::size_t> layout;
  OrderKind order = OrderKind::Lex;
  FiniteGBOptions gb;
};

/// Layout for a frame whose rows flatten the coordinates outside `t` and
/// whose column tuple lists the coordinates in `t` (all of equal size).
std::vector<std::size_t> frame_layout(const TableShape& shape, const Face& t);

/// Reduced Gröbner basis of the toric ideal of A, computed from the kernel
/// lattice by saturating with respect to each variable in turn. Polynomials
/// use options.layout.
std::vector<FPoly> toric_ideal(const DesignMatrix& a, const ToricOptions& options = {});

struct Move {
  IntVector table;
};

/// Minimal binomial generating set of the toric ideal, one move per sign
/// pair, first nonzero entry positive; sorted by degree, then table.
std::vector<Move> markov_basis(const DesignMatrix& a);
std::vector<Move> markov_basis(const SimplicialComplex& complex, const TableShape& shape);

Move move_from_binomial(const FPoly& f, std::span<const std::size_t> layout);
std::int64_t move_degree(const Move& b);

/// Checks that every fiber of nonnegative tables with entry sum at most
/// sum_bound is connected by the moves (either sign). On failure `witness`
/// (if given) receives a description of a disconnected fiber.
bool verify_markov_fibers(const DesignMatrix& a, std::span<const Move> moves, std::int64_t sum_bound,
                          std::string* witness = nullptr);

bool is_independent_set(const SimplicialComplex& complex, const Face& t);

struct Decomposition {
  std::vector<Face> facets;
  /// Empty for a simplex; otherwise the separator S of the split.
  Face separator;
  std::vector<Decomposition> parts;
};

std::optional<Decomposition> decompose(const SimplicialComplex& complex);
bool is_decomposable(const SimplicialComplex& complex);

/// {([m] \ T) + {t} : t in T} together with the faces of [m] \ T.
SimplicialComplex envelope(const SimplicialComplex& complex, const Face& t);

struct ContainmentCheck {
  std::uint32_t n = 0;
  bool kernel = false;  // kernel basis of the envelope lies in ker A
  bool ideal = false;   // envelope toric ideal lies in the model's
};

struct IndependentSetReport {
  StabilizationReport stabilization;
  std::vector<ContainmentCheck> containment;
  /// n0 <= 2 #T, when n0 was found.
  std::optional<bool> within_bound;
};

/// The chain n -> toric ideal of the model with every dimension in T set to
/// n, in the frame with rows = cells outside T and columns [n]^#T under the
/// diagonal shift action. `dims` gives all m dimensions; entries for T are
/// ignored. Throws PreconditionError unless T is independent.
Chain independent_set_chain(const SimplicialComplex& complex, const Face& t,
                            const std::vector<std::uint32_t>& dims);

IndependentSetReport independent_set_instance(const SimplicialComplex& complex, const Face& t,
                                              const std::vector<std::uint32_t>& dims,
                                              std::uint32_t n_max,
                                              const StabilizationOptions& options = {});

}  // namespace eqgb
