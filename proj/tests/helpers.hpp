#pragma once

#include "partrank/equations.hpp"
#include "partrank/rank.hpp"

// Small construction helpers shared by the test suites. Indices here are
// 0-based (internal convention).

namespace partrank::testing {

inline ExactMatrix mat(const Field& f, const std::vector<std::vector<long>>& rows) {
    ExactMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size(), f);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < rows[r].size(); ++c)
            m.at(r, c) = Scalar::from_int(f, rows[r][c]);
    return m;
}

inline Tensor mat_tensor(const Field& f, const std::vector<std::vector<long>>& rows) {
    Tensor t({rows.size(), rows[0].size()}, f);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < rows[r].size(); ++c)
            t.at({r, c}) = Scalar::from_int(f, rows[r][c]);
    return t;
}

inline Tensor ten(const Field& f, const std::vector<std::size_t>& dims,
                  const std::vector<std::pair<std::vector<std::size_t>, long>>& entries) {
    Tensor t(dims, f);
    for (const auto& [idx, v] : entries) t.at(idx) = Scalar::from_int(f, v);
    return t;
}

inline ExactMatrix stack_rows(const ExactMatrix& a, const ExactMatrix& b) {
    ExactMatrix s(a.rows() + b.rows(), a.cols(), a.field());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) s.at(r, c) = a.at(r, c);
    for (std::size_t r = 0; r < b.rows(); ++r)
        for (std::size_t c = 0; c < b.cols(); ++c) s.at(a.rows() + r, c) = b.at(r, c);
    return s;
}

/// Monomial builder for tensor-entry polynomials: vars is a list of
/// (index tuple, power).
inline Poly tmono(const std::vector<std::size_t>& sizes, long coef,
                  const std::vector<std::pair<std::vector<std::size_t>, unsigned>>& vars) {
    Poly p = Poly::tensor_vars(sizes, Field::rational());
    Exponents e(p.var_count(), 0);
    for (const auto& [tuple, pow] : vars) e[p.var_id(tuple)] += pow;
    p.add_term(e, Scalar::from_int(Field::rational(), coef));
    return p;
}

inline Poly pmono(std::size_t n, const Field& f, long coef,
                  const std::vector<std::pair<std::size_t, unsigned>>& vars) {
    Poly p = Poly::point_vars(n, f);
    Exponents e(n, 0);
    for (const auto& [v, pow] : vars) e[v] += pow;
    p.add_term(e, Scalar::from_int(f, coef));
    return p;
}

/// x11*x22 - x12*x21 on m x m variables (top-left 2x2 block), d = 2.
inline Poly determinant2(std::size_t m = 2) {
    return tmono({m, m}, 1, {{{0, 0}, 1}, {{1, 1}, 1}}) -
           tmono({m, m}, 1, {{{0, 1}, 1}, {{1, 0}, 1}});
}

} // namespace partrank::testing
