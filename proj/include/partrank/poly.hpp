#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "partrank/tensor.hpp"

namespace partrank {

/// Variable universe of a polynomial: entries x_{i_1..i_d} of a tensor
/// with given per-axis sizes, or point coordinates x_1..x_n.
enum class VarUniverse { tensor_entries, points };

/// Dense exponent vector over the variable universe.
using Exponents = std::vector<std::uint8_t>;

/// Graded lexicographic order; variables are ordered by their index
/// tuples (axis-1 index first), i.e. by variable id.
struct GradedLexLess {
    bool operator()(const Exponents& x, const Exponents& y) const {
        unsigned dx = 0, dy = 0;
        for (std::uint8_t e : x) dx += e;
        for (std::uint8_t e : y) dy += e;
        if (dx != dy) return dx < dy;
        return x < y;
    }
};

/// Sparse multivariate polynomial with exact coefficients. No zero
/// coefficients are stored.
class Poly {
public:
    using TermMap = std::map<Exponents, Scalar, GradedLexLess>;

    static Poly tensor_vars(std::vector<std::size_t> axis_sizes, const Field& field);
    static Poly point_vars(std::size_t n, const Field& field);

    VarUniverse universe() const { return universe_; }
    const std::vector<std::size_t>& axis_sizes() const { return sizes_; }
    std::size_t num_points() const { return sizes_[0]; }
    std::size_t var_count() const { return var_count_; }
    const Field& field() const { return field_; }

    std::size_t var_id(const std::vector<std::size_t>& tuple) const;
    std::vector<std::size_t> var_tuple(std::size_t id) const;

    void add_term(const Exponents& e, const Scalar& c);
    const TermMap& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    /// Total degree of the leading term (0 for the zero polynomial).
    std::size_t degree() const;
    bool is_homogeneous() const;

    const Exponents& leading_monomial() const;

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly operator-() const;
    Poly scaled(const Scalar& c) const;

    bool operator==(const Poly& o) const {
        return universe_ == o.universe_ && sizes_ == o.sizes_ && terms_ == o.terms_;
    }

    /// Monomial x_{tuple} (tensor universe) or x_i (point universe).
    Poly variable(std::size_t var) const;

    /// Splits f = x_var * high + rest where rest does not involve x_var.
    /// Requires the exponent of x_var to be at most 1 in every term.
    std::pair<Poly, Poly> split_by_var(std::size_t var) const;

    /// Relabels indices axis-wise: tuple[i] -> perms[i][tuple[i]].
    Poly relabel(const std::vector<std::vector<std::size_t>>& perms) const;

    /// Evaluation at a tensor of exactly the universe's sizes; integer and
    /// rational coefficients are mapped into the tensor's field.
    Scalar evaluate(const Tensor& t) const;

    /// Evaluation with per-axis injections [m'] -> [n_i]: the variable
    /// x_{tuple} reads T(inj[1][t_1], .., inj[d][t_d]).
    Scalar evaluate_injection(const Tensor& t,
                              const std::vector<std::vector<std::size_t>>& inj) const;

    /// Point-universe evaluation.
    Scalar evaluate_points(const std::vector<Scalar>& values) const;

    /// Rational coefficients only: clears denominators, divides by the
    /// integer content and makes the leading coefficient positive.
    void normalize_integer_content();

    std::string str() const;

private:
    Poly(VarUniverse u, std::vector<std::size_t> sizes, const Field& field);

    VarUniverse universe_;
    std::vector<std::size_t> sizes_; // axis sizes, or {n} for points
    std::size_t var_count_;
    Field field_;
    TermMap terms_;
};

/// Maps a coefficient into a target field: identity on matching fields,
/// and the natural ring map Z_(p) -> GF(p) on rationals whose denominator
/// is prime to p.
Scalar map_coefficient(const Scalar& c, const Field& target);

/// Evaluates an integer-coefficient polynomial at integer points mod a
/// prime (no Field registration needed; used for mod-p spot checks).
long eval_mod_prime(const Poly& f, const std::vector<long>& values, long p);

/// All exponent vectors of the given total degree, lexicographically
/// descending (x_1^deg first).
std::vector<Exponents> monomials_of_degree(std::size_t nvars, std::size_t deg);

} // namespace partrank
