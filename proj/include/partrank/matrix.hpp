#pragma once

#include <cstddef>
#include <vector>

#include "partrank/scalar.hpp"

namespace partrank {

/// Dense matrix of Scalars over one common field, row-major.
class ExactMatrix {
public:
    ExactMatrix(std::size_t rows, std::size_t cols, const Field& field)
        : rows_(rows), cols_(cols), field_(field), a_(rows * cols, Scalar::zero(field)) {}

    static ExactMatrix identity(std::size_t n, const Field& field) {
        ExactMatrix m(n, n, field);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Scalar::one(field);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const Field& field() const { return field_; }

    Scalar& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    const Scalar& at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

    bool operator==(const ExactMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && field_ == o.field_ && a_ == o.a_;
    }

    bool is_zero() const {
        for (const Scalar& s : a_)
            if (!s.is_zero()) return false;
        return true;
    }

    ExactMatrix transposed() const {
        ExactMatrix t(cols_, rows_, field_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
        return t;
    }

    ExactMatrix submatrix(const std::vector<std::size_t>& rows,
                          const std::vector<std::size_t>& cols) const;

    std::string str() const;

private:
    std::size_t rows_, cols_;
    Field field_;
    std::vector<Scalar> a_;
};

struct RrefResult {
    ExactMatrix reduced;
    std::size_t rank;
    std::vector<std::size_t> pivot_columns;
};

/// Reduced row echelon form, exact over the matrix field. Pivot choice is
/// the first nonzero entry in each column, so the output is deterministic.
/// Over the rationals the forward pass is fraction-free (Bareiss) on a
/// denominator-cleared copy; the final form is fully reduced.
RrefResult rref(const ExactMatrix& m);

std::size_t rank(const ExactMatrix& m);

/// Canonical basis of the right kernel {v : Mv = 0}, one vector per free
/// column of the RREF, in ascending free-column order.
std::vector<std::vector<Scalar>> kernel_basis(const ExactMatrix& m);

/// Inverse of a square matrix; throws SingularMatrix when rank < size.
ExactMatrix invert(const ExactMatrix& m);

ExactMatrix multiply(const ExactMatrix& a, const ExactMatrix& b);
ExactMatrix add(const ExactMatrix& a, const ExactMatrix& b);
ExactMatrix subtract(const ExactMatrix& a, const ExactMatrix& b);

std::vector<Scalar> matvec(const ExactMatrix& m, const std::vector<Scalar>& v);

} // namespace partrank
