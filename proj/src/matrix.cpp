#include "partrank/matrix.hpp"

#include <sstream>

namespace partrank {

ExactMatrix ExactMatrix::submatrix(const std::vector<std::size_t>& rows,
                                   const std::vector<std::size_t>& cols) const {
    ExactMatrix s(rows.size(), cols.size(), field_);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i] >= rows_) throw IndexOutOfRange("row index out of range");
        for (std::size_t j = 0; j < cols.size(); ++j) {
            if (cols[j] >= cols_) throw IndexOutOfRange("column index out of range");
            s.at(i, j) = at(rows[i], cols[j]);
        }
    }
    return s;
}

std::string ExactMatrix::str() const {
    std::ostringstream os;
    for (std::size_t r = 0; r < rows_; ++r) {
        os << (r == 0 ? "[" : " ");
        for (std::size_t c = 0; c < cols_; ++c) os << (c ? " " : "[") << at(r, c).str();
        os << "]" << (r + 1 == rows_ ? "]" : "\n");
    }
    return os.str();
}

namespace {

// Gauss-Jordan over a finite field, first-nonzero pivoting.
RrefResult rref_fp(ExactMatrix m) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t pr = row;
        while (pr < m.rows() && m.at(pr, col).is_zero()) ++pr;
        if (pr == m.rows()) continue;
        if (pr != row)
            for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m.at(row, c), m.at(pr, c));
        Scalar inv = m.at(row, col).inverse();
        for (std::size_t c = col; c < m.cols(); ++c) m.at(row, c) = m.at(row, c) * inv;
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == row || m.at(r, col).is_zero()) continue;
            Scalar factor = m.at(r, col);
            for (std::size_t c = col; c < m.cols(); ++c)
                m.at(r, c) = m.at(r, c) - factor * m.at(row, c);
        }
        pivots.push_back(col);
        ++row;
    }
    return RrefResult{std::move(m), pivots.size(), std::move(pivots)};
}

// Rational case: clear denominators row-wise, run fraction-free (Bareiss)
// forward elimination on integers, then back-substitute and normalize
// pivots to 1. Row scaling does not change the row space, and RREF is a
// row-space invariant, so the result is the RREF of the input.
RrefResult rref_rational(const ExactMatrix& input) {
    const std::size_t nr = input.rows(), nc = input.cols();
    std::vector<std::vector<mpz_class>> n(nr, std::vector<mpz_class>(nc));
    for (std::size_t r = 0; r < nr; ++r) {
        mpz_class lcm = 1;
        for (std::size_t c = 0; c < nc; ++c)
            mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), input.at(r, c).rational().get_den().get_mpz_t());
        for (std::size_t c = 0; c < nc; ++c) {
            mpq_class v = input.at(r, c).rational() * lcm;
            n[r][c] = v.get_num();
        }
    }

    std::vector<std::size_t> pivots;
    mpz_class prev = 1;
    std::size_t row = 0;
    for (std::size_t col = 0; col < nc && row < nr; ++col) {
        std::size_t pr = row;
        while (pr < nr && n[pr][col] == 0) ++pr;
        if (pr == nr) continue;
        if (pr != row) n[row].swap(n[pr]);
        const mpz_class pivot = n[row][col];
        for (std::size_t r = row + 1; r < nr; ++r) {
            for (std::size_t c = col + 1; c < nc; ++c) {
                mpz_class t = n[r][c] * pivot - n[r][col] * n[row][c];
                mpz_divexact(n[r][c].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            n[r][col] = 0;
        }
        prev = pivot;
        pivots.push_back(col);
        ++row;
    }

    // Back substitution in rationals on the echelon rows.
    const Field f = Field::rational();
    ExactMatrix out(nr, nc, f);
    std::vector<std::vector<mpq_class>> q(pivots.size(), std::vector<mpq_class>(nc));
    for (std::size_t r = 0; r < pivots.size(); ++r)
        for (std::size_t c = 0; c < nc; ++c) q[r][c] = mpq_class(n[r][c]);
    for (std::size_t ri = pivots.size(); ri-- > 0;) {
        const std::size_t pc = pivots[ri];
        mpq_class inv = 1 / q[ri][pc];
        for (std::size_t c = pc; c < nc; ++c) {
            q[ri][c] *= inv;
            q[ri][c].canonicalize();
        }
        for (std::size_t r = 0; r < ri; ++r) {
            if (q[r][pc] == 0) continue;
            mpq_class factor = q[r][pc];
            for (std::size_t c = pc; c < nc; ++c) {
                q[r][c] -= factor * q[ri][c];
                q[r][c].canonicalize();
            }
        }
    }
    for (std::size_t r = 0; r < pivots.size(); ++r)
        for (std::size_t c = 0; c < nc; ++c) out.at(r, c) = Scalar::from_rational(q[r][c]);
    return RrefResult{std::move(out), pivots.size(), std::move(pivots)};
}

} // namespace

RrefResult rref(const ExactMatrix& m) {
    if (m.field().is_rational()) return rref_rational(m);
    return rref_fp(m);
}

std::size_t rank(const ExactMatrix& m) { return rref(m).rank; }

std::vector<std::vector<Scalar>> kernel_basis(const ExactMatrix& m) {
    RrefResult r = rref(m);
    const Field f = m.field();
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t c : r.pivot_columns) is_pivot[c] = true;

    std::vector<std::vector<Scalar>> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        std::vector<Scalar> v(m.cols(), Scalar::zero(f));
        v[free] = Scalar::one(f);
        for (std::size_t i = 0; i < r.pivot_columns.size(); ++i)
            v[r.pivot_columns[i]] = -r.reduced.at(i, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

ExactMatrix invert(const ExactMatrix& m) {
    if (m.rows() != m.cols()) throw SingularMatrix("invert: matrix not square");
    const std::size_t n = m.rows();
    if (n == 0) return m; // the empty matrix is its own inverse
    ExactMatrix aug(n, 2 * n, m.field());
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) aug.at(r, c) = m.at(r, c);
        aug.at(r, n + r) = Scalar::one(m.field());
    }
    RrefResult rr = rref(aug);
    if (rr.rank < n || rr.pivot_columns[n - 1] != n - 1)
        throw SingularMatrix("invert: singular matrix");
    ExactMatrix inv(n, n, m.field());
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) inv.at(r, c) = rr.reduced.at(r, n + c);
    return inv;
}

ExactMatrix multiply(const ExactMatrix& a, const ExactMatrix& b) {
    if (a.cols() != b.rows() || !(a.field() == b.field()))
        throw FieldMismatch("multiply: incompatible matrices");
    ExactMatrix c(a.rows(), b.cols(), a.field());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a.at(i, k).is_zero()) continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                c.at(i, j) = c.at(i, j) + a.at(i, k) * b.at(k, j);
        }
    return c;
}

ExactMatrix add(const ExactMatrix& a, const ExactMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw FieldMismatch("add: incompatible matrices");
    ExactMatrix c(a.rows(), a.cols(), a.field());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c.at(i, j) = a.at(i, j) + b.at(i, j);
    return c;
}

ExactMatrix subtract(const ExactMatrix& a, const ExactMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw FieldMismatch("subtract: incompatible matrices");
    ExactMatrix c(a.rows(), a.cols(), a.field());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c.at(i, j) = a.at(i, j) - b.at(i, j);
    return c;
}

std::vector<Scalar> matvec(const ExactMatrix& m, const std::vector<Scalar>& v) {
    if (v.size() != m.cols()) throw FieldMismatch("matvec: size mismatch");
    std::vector<Scalar> out(m.rows(), Scalar::zero(m.field()));
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            if (!m.at(r, c).is_zero() && !v[c].is_zero()) out[r] = out[r] + m.at(r, c) * v[c];
    return out;
}

} // namespace partrank
