#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "partrank/matrix.hpp"
#include "partrank/scalar.hpp"

namespace partrank {

/// Seeded generator for reproducible experiments. mt19937_64 has a fully
/// specified output sequence; values are drawn with plain modulo so the
/// same seed yields the same bytes on every platform (the tiny modulo
/// bias is irrelevant here).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }
    std::uint64_t below(std::uint64_t k) { return eng_() % k; }
    bool chance(double p) {
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53 < p;
    }

private:
    std::mt19937_64 eng_;
};

/// Dense order-d tensor over one field; entries row-major, indices
/// 0-based internally. File formats and documentation use 1-based
/// indices, matching standard mathematical convention.
class Tensor {
public:
    Tensor(std::vector<std::size_t> dims, const Field& field);

    std::size_t order() const { return dims_.size(); }
    const std::vector<std::size_t>& dims() const { return dims_; }
    std::size_t dim(std::size_t axis) const { return dims_[axis]; }
    const Field& field() const { return field_; }
    std::size_t size() const { return a_.size(); }

    const Scalar& operator[](std::size_t flat) const { return a_[flat]; }
    Scalar& operator[](std::size_t flat) { return a_[flat]; }

    const Scalar& at(const std::vector<std::size_t>& idx) const { return a_[flatten_index(idx)]; }
    Scalar& at(const std::vector<std::size_t>& idx) { return a_[flatten_index(idx)]; }

    std::size_t flatten_index(const std::vector<std::size_t>& idx) const;
    std::vector<std::size_t> unflatten_index(std::size_t flat) const;

    bool is_zero() const {
        for (const Scalar& s : a_)
            if (!s.is_zero()) return false;
        return true;
    }

    bool operator==(const Tensor& o) const {
        return dims_ == o.dims_ && field_ == o.field_ && a_ == o.a_;
    }

private:
    std::vector<std::size_t> dims_;
    Field field_;
    std::vector<Scalar> a_;
};

/// Per-axis index subsets, each strictly increasing and within bounds.
using IndexSubsets = std::vector<std::vector<std::size_t>>;

/// Proper nonempty subset of the axes; stored canonically as the
/// representative containing axis 0.
struct AxisSplit {
    std::vector<std::size_t> axes; // sorted, contains 0

    static AxisSplit canonical(std::vector<std::size_t> axes, std::size_t order);
    std::vector<std::size_t> complement(std::size_t order) const;

    bool operator==(const AxisSplit& o) const = default;
    bool operator<(const AxisSplit& o) const {
        if (axes.size() != o.axes.size()) return axes.size() < o.axes.size();
        return axes < o.axes;
    }
};

Tensor subtensor(const Tensor& t, const IndexSubsets& subsets);

/// Matrix with rows indexed by the axes in `split` and columns by the
/// rest, both in lexicographic order of the index tuples.
ExactMatrix flatten(const Tensor& t, const AxisSplit& split);

/// result(x_1..x_d) = t(s_1^{-1}x_1, .., s_d^{-1}x_d).
Tensor apply_index_permutations(const Tensor& t, const std::vector<std::vector<std::size_t>>& perms);

/// Deterministic for a fixed seed. Each entry is nonzero with frequency
/// `sparsity`; nonzero values are uniform over the nonzero field elements,
/// or uniform small integers over the rationals.
Tensor random_tensor(const std::vector<std::size_t>& dims, const Field& field,
                     std::uint64_t seed, double sparsity);

/// All index tuples of `dims` in lexicographic (row-major) order.
class MultiIndex {
public:
    explicit MultiIndex(const std::vector<std::size_t>& dims)
        : dims_(dims), idx_(dims.size(), 0), done_(dims.empty()) {
        for (std::size_t d : dims)
            if (d == 0) done_ = true;
    }
    bool done() const { return done_; }
    const std::vector<std::size_t>& operator*() const { return idx_; }
    void advance() {
        for (std::size_t i = dims_.size(); i-- > 0;) {
            if (++idx_[i] < dims_[i]) return;
            idx_[i] = 0;
        }
        done_ = true;
    }

private:
    std::vector<std::size_t> dims_;
    std::vector<std::size_t> idx_;
    bool done_;
};

} // namespace partrank
