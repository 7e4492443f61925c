#include "partrank/nullcone.hpp"

namespace partrank {

OneParamSubgroup build_1psg(std::size_t n, std::size_t n1, std::size_t n2, std::size_t n3) {
    if (n1 + n2 + n3 >= n)
        throw DimensionSumTooLarge("build_1psg: need n_1 + n_2 + n_3 < n");
    OneParamSubgroup psg;
    const std::size_t ns[3] = {n1, n2, n3};
    for (std::size_t i = 0; i < 3; ++i) {
        psg.exponents[i].assign(n, 0);
        for (std::size_t j = 0; j < n; ++j)
            psg.exponents[i][j] = j < ns[i] ? static_cast<long long>(n - ns[i])
                                            : -static_cast<long long>(ns[i]);
    }
    return psg;
}

long long weight_on_support(const OneParamSubgroup& psg, const Tensor& t) {
    if (t.order() != 3) throw IndexOutOfRange("weight_on_support: order-3 tensor required");
    const std::size_t n = psg.exponents[0].size();
    for (std::size_t i = 0; i < 3; ++i)
        if (t.dim(i) != n) throw IndexOutOfRange("weight_on_support: dimension mismatch");
    bool found = false;
    long long best = 0;
    for (std::size_t f = 0; f < t.size(); ++f) {
        if (t[f].is_zero()) continue;
        const std::vector<std::size_t> idx = t.unflatten_index(f);
        long long w = psg.exponents[0][idx[0]] + psg.exponents[1][idx[1]] +
                      psg.exponents[2][idx[2]];
        if (!found || w < best) best = w;
        found = true;
    }
    if (!found) throw ZeroTensor("weight_on_support: zero tensor has empty support");
    return best;
}

namespace {

Tensor apply_matrix_along_axis(const Tensor& t, const ExactMatrix& m, std::size_t axis) {
    Tensor out(t.dims(), t.field());
    std::vector<std::size_t> src(t.order());
    for (std::size_t f = 0; f < t.size(); ++f) {
        if (t[f].is_zero()) continue;
        src = t.unflatten_index(f);
        const std::size_t y = src[axis];
        for (std::size_t x = 0; x < t.dim(axis); ++x) {
            if (m.at(x, y).is_zero()) continue;
            src[axis] = x;
            out.at(src) = out.at(src) + m.at(x, y) * t[f];
        }
        src[axis] = y;
    }
    return out;
}

// invertible g with g v_a = e_a for the basis rows v_a of `basis`
ExactMatrix basis_to_coordinates(const ExactMatrix& basis, std::size_t n, const Field& field) {
    const std::size_t k = basis.rows();
    if (k == 0) return ExactMatrix::identity(n, field);
    RrefResult rr = rref(basis);
    if (rr.rank != k) throw Error("subspace basis vectors are linearly dependent");
    std::vector<bool> pivot(n, false);
    for (std::size_t c : rr.pivot_columns) pivot[c] = true;
    ExactMatrix cols(n, n, field);
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i < n; ++i) cols.at(i, j) = basis.at(j, i);
    std::size_t next = k;
    for (std::size_t j = 0; j < n; ++j) {
        if (pivot[j]) continue;
        cols.at(j, next++) = Scalar::one(field);
    }
    return invert(cols);
}

} // namespace

bool certify_nullcone(const Tensor& t, const SubspaceTriple& triple) {
    if (t.order() != 3) throw IndexOutOfRange("certify_nullcone: order-3 tensor required");
    const std::size_t n = triple.n;
    for (std::size_t i = 0; i < 3; ++i)
        if (t.dim(i) != n) throw IndexOutOfRange("certify_nullcone: dimension mismatch");
    if (triple.dim_sum() >= n)
        throw DimensionSumTooLarge("certify_nullcone: need dim V_1 + dim V_2 + dim V_3 < n");

    Tensor moved = t;
    for (std::size_t i = 0; i < 3; ++i)
        moved = apply_matrix_along_axis(moved, basis_to_coordinates(triple.bases[i], n, t.field()), i);

    OneParamSubgroup psg = build_1psg(n, triple.dim(0), triple.dim(1), triple.dim(2));
    const long long need = static_cast<long long>(n) - static_cast<long long>(triple.dim_sum());
    return weight_on_support(psg, moved) >= need;
}

SubspaceTriple triple_from_slice_decomposition(const PartitionDecomposition& dec) {
    if (dec.dims.size() != 3)
        throw IndexOutOfRange("triple_from_slice_decomposition: order-3 decomposition required");
    const std::size_t n = dec.dims[0];
    if (dec.dims[1] != n || dec.dims[2] != n)
        throw IndexOutOfRange("triple_from_slice_decomposition: cubical tensor required");

    std::array<std::vector<const Tensor*>, 3> vectors;
    for (const PartitionTerm& term : dec.terms) {
        const std::size_t order = dec.dims.size();
        if (term.split.axes.size() == 1) {
            vectors[term.split.axes[0]].push_back(&term.a);
        } else if (order - term.split.axes.size() == 1) {
            vectors[term.split.complement(order)[0]].push_back(&term.b);
        } else {
            throw NonSliceTerm("triple_from_slice_decomposition: a term has no singleton side");
        }
    }

    SubspaceTriple triple{n,
                          {ExactMatrix(vectors[0].size(), n, dec.field),
                           ExactMatrix(vectors[1].size(), n, dec.field),
                           ExactMatrix(vectors[2].size(), n, dec.field)}};
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t row = 0; row < vectors[i].size(); ++row)
            for (std::size_t c = 0; c < n; ++c) triple.bases[i].at(row, c) = (*vectors[i][row])[c];
        if (rank(triple.bases[i]) != vectors[i].size())
            throw Error("triple_from_slice_decomposition: dependent slice vectors "
                        "(decomposition is not minimal)");
    }
    return triple;
}

std::pair<std::size_t, std::size_t> d3_degree_bound(std::size_t r) {
    if (r < 1) throw IndexOutOfRange("d3_degree_bound: need r >= 1");
    std::size_t k = 1;
    while (k * k < r + 1) ++k;
    return {k, k * k * k};
}

} // namespace partrank
