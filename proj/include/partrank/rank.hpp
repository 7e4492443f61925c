#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "partrank/tensor.hpp"

namespace partrank {

/// One term A (x) B of a partition decomposition. `a` lives on the axes in
/// `split` (the representative containing axis 0), `b` on the rest. Both
/// factors are nonzero; over finite fields the first nonzero entry of `a`
/// is normalized to 1.
struct PartitionTerm {
    AxisSplit split;
    Tensor a;
    Tensor b;

    bool operator==(const PartitionTerm& o) const {
        return split == o.split && a == o.a && b == o.b;
    }
    bool operator<(const PartitionTerm& o) const;
};

struct PartitionDecomposition {
    std::vector<std::size_t> dims;
    Field field;
    std::vector<PartitionTerm> terms;

    std::size_t length() const { return terms.size(); }
    Tensor evaluate() const;
    void sort_canonical();
};

/// Adds sign * (term evaluated on the full index range) into acc.
void accumulate_term(Tensor& acc, const PartitionTerm& term, int sign);

enum class LowerBoundTag { exhaustive_search, none };

struct RankCertificate {
    std::size_t value;
    PartitionDecomposition witness;
    LowerBoundTag tag;
};

struct SearchOptions {
    std::uint64_t node_budget = 10'000'000;
};

/// Splits available to the search, ordered by |I| then lexicographically.
/// With slice_only set, restricted to splits with a singleton side.
std::vector<AxisSplit> enumerate_splits(std::size_t order, bool slice_only);

/// Decides whether T is a sum of at most r partition terms over its
/// (finite) field; returns a verified witness on success. Depth-first
/// search over canonical terms with T <- T - A(x)B recursion; the only
/// cuts are the zero shortcut and the exact closed-form solve when one
/// term remains. For order 2 the decision reduces to matrix rank and any
/// supported field is accepted.
std::optional<PartitionDecomposition> prank_at_most(const Tensor& t, std::size_t r,
                                                    const SearchOptions& opts = {});

std::optional<PartitionDecomposition> slice_rank_at_most(const Tensor& t, std::size_t r,
                                                         const SearchOptions& opts = {});

/// Iterative deepening on r. Over finite fields (and for order 2 over any
/// field) the certificate carries the exhaustive-search lower-bound tag.
/// Over the rationals with order >= 3 the value is a witness-verified
/// upper bound (best flattening skeleton) and the tag is `none`.
RankCertificate prank(const Tensor& t, const SearchOptions& opts = {});
RankCertificate slice_rank(const Tensor& t, const SearchOptions& opts = {});

struct FullRankSubmatrix {
    std::vector<std::size_t> rows;
    std::vector<std::size_t> cols;
    std::size_t rank;
};

/// Largest invertible submatrix, lexicographically least (rows, cols)
/// among maximizers (greedy bases of the row and column matroids).
FullRankSubmatrix max_full_rank_submatrix(const Tensor& matrix);
FullRankSubmatrix max_full_rank_submatrix(const ExactMatrix& m);

struct ReconstructionReport {
    std::vector<std::pair<std::size_t, std::size_t>> violations; // 0-based (row, col)
    std::size_t checked = 0;
};

/// Verifies A(x,y) = A[{x},Y] A[X,Y]^{-1} A[X,{y}] for every x outside X
/// and y outside Y. Throws SingularBlock when A[X,Y] is not invertible.
ReconstructionReport reconstruct_outside(const Tensor& matrix,
                                         const std::vector<std::size_t>& rows,
                                         const std::vector<std::size_t>& cols);

/// Row terms + column terms + a rank-<=r remainder block; at most 3*rank
/// terms in total, summing exactly to the input matrix.
PartitionDecomposition three_r_decomposition(const Tensor& matrix);

/// Rank-many rank-one terms reconstructing a matrix exactly (skeleton
/// decomposition through a maximal invertible block).
PartitionDecomposition matrix_skeleton_decomposition(const Tensor& matrix);

/// Sum of r random canonical terms on seeded random splits, so the result
/// has partition rank (slice rank, with slice_only) at most r by
/// construction. Deterministic for a fixed seed.
Tensor random_bounded_prank_tensor(const std::vector<std::size_t>& dims, const Field& field,
                                   std::size_t r, std::uint64_t seed, bool slice_only = false);

namespace detail {
/// The generic finite-field search without the order-2 shortcut; exposed
/// so tests can cross-check the engine against matrix rank.
std::optional<PartitionDecomposition> search_decomposition(const Tensor& t, std::size_t r,
                                                           bool slice_only,
                                                           const SearchOptions& opts = {});
} // namespace detail

} // namespace partrank
