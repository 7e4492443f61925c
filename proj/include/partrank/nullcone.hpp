#pragma once

#include "partrank/rank.hpp"

namespace partrank {

/// Three subspaces of K^n given by rows of basis matrices; certificate
/// operations require dim V_1 + dim V_2 + dim V_3 < n.
struct SubspaceTriple {
    std::size_t n;
    std::array<ExactMatrix, 3> bases; // basis vectors as rows; 0-row matrices allowed

    std::size_t dim(std::size_t i) const { return bases[i].rows(); }
    std::size_t dim_sum() const { return dim(0) + dim(1) + dim(2); }
};

/// Exponent triple of a one-parameter subgroup of SL_n x SL_n x SL_n;
/// each vector sums to zero.
struct OneParamSubgroup {
    std::array<std::vector<long long>, 3> exponents;
};

/// lambda_i(t) = diag(t^{n-n_i} (n_i times), t^{-n_i} (n-n_i times)).
OneParamSubgroup build_1psg(std::size_t n, std::size_t n1, std::size_t n2, std::size_t n3);

/// Minimum of exp_1[i]+exp_2[j]+exp_3[k] over the support of T; throws
/// ZeroTensor on the zero tensor.
long long weight_on_support(const OneParamSubgroup& psg, const Tensor& t);

/// After an exact change of basis sending each V_i to a coordinate
/// subspace, checks that the associated one-parameter subgroup acts with
/// weight >= n - n_1 - n_2 - n_3 > 0 on the whole support, i.e.
/// lambda(t) T -> 0 as t -> 0.
bool certify_nullcone(const Tensor& t, const SubspaceTriple& triple);

/// V_i spanned by the order-1 factors of the slice terms on axis i;
/// requires every term to have a singleton side.
SubspaceTriple triple_from_slice_decomposition(const PartitionDecomposition& dec);

/// k = ceil(sqrt(r+1)) and the invariant degree m = k^3.
std::pair<std::size_t, std::size_t> d3_degree_bound(std::size_t r);

} // namespace partrank
