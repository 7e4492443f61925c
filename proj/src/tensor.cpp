#include "partrank/tensor.hpp"

#include <algorithm>

namespace partrank {

Tensor::Tensor(std::vector<std::size_t> dims, const Field& field)
    : dims_(std::move(dims)), field_(field) {
    if (dims_.empty()) throw IndexOutOfRange("tensor must have order >= 1");
    std::size_t n = 1;
    for (std::size_t d : dims_) {
        if (d == 0) throw IndexOutOfRange("tensor dimensions must be positive");
        n *= d;
    }
    a_.assign(n, Scalar::zero(field_));
}

std::size_t Tensor::flatten_index(const std::vector<std::size_t>& idx) const {
    if (idx.size() != dims_.size()) throw IndexOutOfRange("index order mismatch");
    std::size_t flat = 0;
    for (std::size_t i = 0; i < idx.size(); ++i) {
        if (idx[i] >= dims_[i]) throw IndexOutOfRange("index out of range");
        flat = flat * dims_[i] + idx[i];
    }
    return flat;
}

std::vector<std::size_t> Tensor::unflatten_index(std::size_t flat) const {
    std::vector<std::size_t> idx(dims_.size());
    for (std::size_t i = dims_.size(); i-- > 0;) {
        idx[i] = flat % dims_[i];
        flat /= dims_[i];
    }
    return idx;
}

AxisSplit AxisSplit::canonical(std::vector<std::size_t> axes, std::size_t order) {
    std::sort(axes.begin(), axes.end());
    axes.erase(std::unique(axes.begin(), axes.end()), axes.end());
    if (axes.empty() || axes.size() >= order)
        throw IndexOutOfRange("axis split must be a proper nonempty subset");
    for (std::size_t a : axes)
        if (a >= order) throw IndexOutOfRange("axis out of range");
    if (axes.front() != 0) {
        // take the complement, which contains axis 0
        std::vector<std::size_t> comp;
        std::size_t j = 0;
        for (std::size_t a = 0; a < order; ++a) {
            if (j < axes.size() && axes[j] == a)
                ++j;
            else
                comp.push_back(a);
        }
        axes = std::move(comp);
    }
    return AxisSplit{std::move(axes)};
}

std::vector<std::size_t> AxisSplit::complement(std::size_t order) const {
    std::vector<std::size_t> comp;
    std::size_t j = 0;
    for (std::size_t a = 0; a < order; ++a) {
        if (j < axes.size() && axes[j] == a)
            ++j;
        else
            comp.push_back(a);
    }
    return comp;
}

Tensor subtensor(const Tensor& t, const IndexSubsets& subsets) {
    if (subsets.size() != t.order()) throw IndexOutOfRange("subtensor: order mismatch");
    std::vector<std::size_t> dims(t.order());
    for (std::size_t i = 0; i < t.order(); ++i) {
        const auto& x = subsets[i];
        if (x.empty()) throw IndexOutOfRange("subtensor: empty index subset");
        for (std::size_t j = 0; j < x.size(); ++j) {
            if (x[j] >= t.dim(i)) throw IndexOutOfRange("subtensor: index out of range");
            if (j > 0 && x[j] <= x[j - 1])
                throw IndexOutOfRange("subtensor: subsets must be strictly increasing");
        }
        dims[i] = x.size();
    }
    Tensor s(dims, t.field());
    std::vector<std::size_t> src(t.order());
    for (MultiIndex mi(dims); !mi.done(); mi.advance()) {
        for (std::size_t i = 0; i < t.order(); ++i) src[i] = subsets[i][(*mi)[i]];
        s.at(*mi) = t.at(src);
    }
    return s;
}

ExactMatrix flatten(const Tensor& t, const AxisSplit& split) {
    const std::vector<std::size_t> comp = split.complement(t.order());
    std::size_t nr = 1, nc = 1;
    for (std::size_t a : split.axes) nr *= t.dim(a);
    for (std::size_t a : comp) nc *= t.dim(a);
    ExactMatrix m(nr, nc, t.field());
    std::vector<std::size_t> idx(t.order());
    for (std::size_t flat = 0; flat < t.size(); ++flat) {
        const Scalar& v = t[flat];
        if (v.is_zero()) continue;
        idx = t.unflatten_index(flat);
        std::size_t r = 0, c = 0;
        for (std::size_t a : split.axes) r = r * t.dim(a) + idx[a];
        for (std::size_t a : comp) c = c * t.dim(a) + idx[a];
        m.at(r, c) = v;
    }
    return m;
}

Tensor apply_index_permutations(const Tensor& t,
                                const std::vector<std::vector<std::size_t>>& perms) {
    if (perms.size() != t.order()) throw IndexOutOfRange("permutation count mismatch");
    for (std::size_t i = 0; i < t.order(); ++i) {
        if (perms[i].size() != t.dim(i)) throw IndexOutOfRange("permutation size mismatch");
        std::vector<bool> seen(t.dim(i), false);
        for (std::size_t v : perms[i]) {
            if (v >= t.dim(i) || seen[v]) throw IndexOutOfRange("not a permutation");
            seen[v] = true;
        }
    }
    Tensor out(t.dims(), t.field());
    std::vector<std::size_t> dst(t.order());
    for (std::size_t flat = 0; flat < t.size(); ++flat) {
        const std::vector<std::size_t> src = t.unflatten_index(flat);
        for (std::size_t i = 0; i < t.order(); ++i) dst[i] = perms[i][src[i]];
        out.at(dst) = t[flat];
    }
    return out;
}

Tensor random_tensor(const std::vector<std::size_t>& dims, const Field& field,
                     std::uint64_t seed, double sparsity) {
    Tensor t(dims, field);
    Rng rng(seed);
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (!rng.chance(sparsity)) continue;
        if (field.is_finite()) {
            unsigned p = field.characteristic();
            t[i] = Scalar::from_int(field, 1 + static_cast<long>(rng.below(p - 1)));
        } else {
            // uniform nonzero integers in [-5,5]
            long v = static_cast<long>(rng.below(10)) - 5;
            if (v >= 0) ++v;
            t[i] = Scalar::from_int(field, v);
        }
    }
    return t;
}

} // namespace partrank
