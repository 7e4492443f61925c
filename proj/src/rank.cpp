#include "partrank/rank.hpp"

#include <algorithm>
#include <cstdint>

namespace partrank {

namespace {

int cmp_scalar(const Scalar& x, const Scalar& y) {
    if (x < y) return -1;
    if (y < x) return 1;
    return 0;
}

int cmp_entries(const Tensor& x, const Tensor& y) {
    if (x.size() != y.size()) return x.size() < y.size() ? -1 : 1;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (int c = cmp_scalar(x[i], y[i])) return c;
    return 0;
}

std::vector<std::size_t> axes_dims(const std::vector<std::size_t>& dims,
                                   const std::vector<std::size_t>& axes) {
    std::vector<std::size_t> out;
    out.reserve(axes.size());
    for (std::size_t a : axes) out.push_back(dims[a]);
    return out;
}

} // namespace

bool PartitionTerm::operator<(const PartitionTerm& o) const {
    if (!(split == o.split)) return split < o.split;
    if (int c = cmp_entries(a, o.a)) return c < 0;
    return cmp_entries(b, o.b) < 0;
}

void accumulate_term(Tensor& acc, const PartitionTerm& term, int sign) {
    const std::vector<std::size_t> comp = term.split.complement(acc.order());
    std::vector<std::size_t> full(acc.order());
    for (std::size_t af = 0; af < term.a.size(); ++af) {
        if (term.a[af].is_zero()) continue;
        const std::vector<std::size_t> ai = term.a.unflatten_index(af);
        for (std::size_t bf = 0; bf < term.b.size(); ++bf) {
            if (term.b[bf].is_zero()) continue;
            const std::vector<std::size_t> bi = term.b.unflatten_index(bf);
            for (std::size_t k = 0; k < term.split.axes.size(); ++k)
                full[term.split.axes[k]] = ai[k];
            for (std::size_t k = 0; k < comp.size(); ++k) full[comp[k]] = bi[k];
            Scalar v = term.a[af] * term.b[bf];
            acc.at(full) = sign > 0 ? acc.at(full) + v : acc.at(full) - v;
        }
    }
}

Tensor PartitionDecomposition::evaluate() const {
    Tensor acc(dims, field);
    for (const PartitionTerm& t : terms) accumulate_term(acc, t, +1);
    return acc;
}

void PartitionDecomposition::sort_canonical() { std::sort(terms.begin(), terms.end()); }

std::vector<AxisSplit> enumerate_splits(std::size_t order, bool slice_only) {
    std::vector<AxisSplit> splits;
    for (std::uint32_t mask = 1; mask + 1 < (1u << order); ++mask) {
        if (!(mask & 1)) continue; // representative contains axis 0
        std::vector<std::size_t> axes;
        for (std::size_t a = 0; a < order; ++a)
            if (mask & (1u << a)) axes.push_back(a);
        if (slice_only && std::min(axes.size(), order - axes.size()) != 1) continue;
        splits.push_back(AxisSplit{std::move(axes)});
    }
    std::sort(splits.begin(), splits.end());
    return splits;
}

// ---------------------------------------------------------------------------
// Finite-field search engine. Residuals are unsigned arrays mod p; a
// candidate term is (split index, a-vector, b-vector) with the first
// nonzero entry of a normalized to 1. Terms are enumerated in increasing
// (split, a, b) order and each recursion level starts at the previous
// level's term, so witnesses come out sorted and permutation-equivalent
// branches are visited once.
// ---------------------------------------------------------------------------

namespace {

struct Cursor {
    std::size_t split;
    std::vector<unsigned> a, b;
};

bool cursor_less(const Cursor& x, const Cursor& y) {
    if (x.split != y.split) return x.split < y.split;
    if (x.a != y.a) return x.a < y.a;
    return x.b < y.b;
}

bool inc_vec(std::vector<unsigned>& v, unsigned p) {
    for (std::size_t i = v.size(); i-- > 0;) {
        if (++v[i] < p) return true;
        v[i] = 0;
    }
    return false;
}

// first nonzero entry equals 1 (zero vector is not canonical)
bool is_canonical(const std::vector<unsigned>& v) {
    for (unsigned x : v) {
        if (x == 0) continue;
        return x == 1;
    }
    return false;
}

struct SplitLayout {
    AxisSplit split;
    std::size_t a_size, b_size;
    std::vector<std::uint32_t> a_of_flat, b_of_flat; // per full flat index
    std::vector<std::uint32_t> flat_of;              // inverse: [ai*b_size+bi] -> flat
};

class Engine {
public:
    Engine(const Tensor& t, bool slice_only, const SearchOptions& opts)
        : dims_(t.dims()), p_(t.field().characteristic()), budget_(opts.node_budget) {
        inv_.assign(p_, 0);
        for (unsigned v = 1; v < p_; ++v)
            for (unsigned u = 1; u < p_; ++u)
                if ((u * v) % p_ == 1) inv_[v] = u;
        for (AxisSplit& s : enumerate_splits(t.order(), slice_only)) {
            SplitLayout lay;
            lay.split = s;
            const std::vector<std::size_t> comp = s.complement(t.order());
            std::size_t as = 1, bs = 1;
            for (std::size_t a : s.axes) as *= dims_[a];
            for (std::size_t a : comp) bs *= dims_[a];
            lay.a_size = as;
            lay.b_size = bs;
            lay.a_of_flat.resize(t.size());
            lay.b_of_flat.resize(t.size());
            lay.flat_of.resize(t.size());
            for (std::size_t f = 0; f < t.size(); ++f) {
                const std::vector<std::size_t> idx = t.unflatten_index(f);
                std::size_t ai = 0, bi = 0;
                for (std::size_t a : s.axes) ai = ai * dims_[a] + idx[a];
                for (std::size_t a : comp) bi = bi * dims_[a] + idx[a];
                lay.a_of_flat[f] = static_cast<std::uint32_t>(ai);
                lay.b_of_flat[f] = static_cast<std::uint32_t>(bi);
                lay.flat_of[ai * bs + bi] = static_cast<std::uint32_t>(f);
            }
            layouts_.push_back(std::move(lay));
        }
        res_.resize(t.size());
        for (std::size_t f = 0; f < t.size(); ++f) {
            res_[f] = t[f].fp_value();
            if (res_[f]) ++nonzero_;
        }
    }

    std::optional<std::vector<Cursor>> run(std::size_t depth) {
        path_.clear();
        if (dfs(depth, nullptr)) return path_;
        return std::nullopt;
    }

private:
    bool residual_zero() const { return nonzero_ == 0; }

    // support-based update: only the nonzero a x b cells touch the residual
    void apply(const Cursor& c, bool subtract) {
        const SplitLayout& lay = layouts_[c.split];
        for (std::size_t ai = 0; ai < lay.a_size; ++ai) {
            if (!c.a[ai]) continue;
            const std::uint32_t* row = &lay.flat_of[ai * lay.b_size];
            for (std::size_t bi = 0; bi < lay.b_size; ++bi) {
                if (!c.b[bi]) continue;
                const unsigned t = (c.a[ai] * c.b[bi]) % p_;
                unsigned& cell = res_[row[bi]];
                const bool was = cell != 0;
                cell = subtract ? (cell + p_ - t) % p_ : (cell + t) % p_;
                nonzero_ += std::size_t(cell != 0) - std::size_t(was);
            }
        }
    }

    void tick() {
        if (++nodes_ > budget_)
            throw BudgetExceeded("rank search exceeded the node budget of " +
                                 std::to_string(budget_) + " nodes");
    }

    // Exact base case: the residual equals a single canonical term iff some
    // flattening factors as an outer product. Candidates over all splits,
    // least admissible one wins.
    bool solve_single(const Cursor* min_term) {
        tick();
        std::optional<Cursor> best;
        for (std::size_t s = 0; s < layouts_.size(); ++s) {
            const SplitLayout& lay = layouts_[s];
            scratch_.assign(lay.a_size * lay.b_size, 0);
            for (std::size_t f = 0; f < res_.size(); ++f)
                scratch_[lay.a_of_flat[f] * lay.b_size + lay.b_of_flat[f]] = res_[f];
            std::size_t first = 0;
            while (first < scratch_.size() && scratch_[first] == 0) ++first;
            if (first == scratch_.size()) continue; // zero residual is handled upstream
            const std::size_t a0 = first / lay.b_size, b0 = first % lay.b_size;
            const unsigned piv_inv = inv_[scratch_[a0 * lay.b_size + b0]];
            std::vector<unsigned> u(lay.a_size), v(lay.b_size);
            for (std::size_t a = 0; a < lay.a_size; ++a)
                u[a] = (scratch_[a * lay.b_size + b0] * piv_inv) % p_;
            for (std::size_t b = 0; b < lay.b_size; ++b) v[b] = scratch_[a0 * lay.b_size + b];
            bool ok = true;
            for (std::size_t a = 0; a < lay.a_size && ok; ++a)
                for (std::size_t b = 0; b < lay.b_size && ok; ++b)
                    if (scratch_[a * lay.b_size + b] != (u[a] * v[b]) % p_) ok = false;
            if (!ok) continue;
            Cursor c{s, std::move(u), std::move(v)};
            if (min_term && cursor_less(c, *min_term)) continue;
            if (!best || cursor_less(c, *best)) best = std::move(c);
        }
        if (!best) return false;
        path_.push_back(std::move(*best));
        apply(path_.back(), true);
        return true;
    }

    bool first_cursor(std::size_t split, Cursor& c) {
        if (split >= layouts_.size()) return false;
        c.split = split;
        c.a.assign(layouts_[split].a_size, 0);
        c.b.assign(layouts_[split].b_size, 0);
        c.a.back() = 1;
        c.b.back() = 1;
        return true;
    }

    bool advance(Cursor& c) {
        if (inc_vec(c.b, p_)) return true;
        // b wrapped to zero: step a to the next canonical vector
        do {
            if (!inc_vec(c.a, p_)) return first_cursor(c.split + 1, c);
        } while (!is_canonical(c.a));
        c.b.assign(layouts_[c.split].b_size, 0);
        c.b.back() = 1;
        return true;
    }

    bool dfs(std::size_t depth, const Cursor* min_term) {
        if (residual_zero()) return true;
        if (depth == 0) return false;
        if (depth == 1) return solve_single(min_term);
        Cursor cur;
        if (min_term)
            cur = *min_term;
        else if (!first_cursor(0, cur))
            return false;
        for (;;) {
            tick();
            apply(cur, true);
            path_.push_back(cur);
            if (dfs(depth - 1, &cur)) return true;
            path_.pop_back();
            apply(cur, false);
            if (!advance(cur)) return false;
        }
    }

    std::vector<std::size_t> dims_;
    unsigned p_;
    std::uint64_t budget_;
    std::uint64_t nodes_ = 0;
    std::vector<unsigned> inv_;
    std::vector<SplitLayout> layouts_;
    std::vector<unsigned> res_;
    std::size_t nonzero_ = 0;
    std::vector<unsigned> scratch_;
    std::vector<Cursor> path_;

public:
    PartitionDecomposition to_decomposition(const std::vector<Cursor>& path,
                                            const Field& field) const {
        PartitionDecomposition dec{dims_, field, {}};
        for (const Cursor& c : path) {
            const SplitLayout& lay = layouts_[c.split];
            Tensor a(axes_dims(dims_, lay.split.axes), field);
            Tensor b(axes_dims(dims_, lay.split.complement(dims_.size())), field);
            for (std::size_t i = 0; i < c.a.size(); ++i)
                a[i] = Scalar::from_int(field, static_cast<long>(c.a[i]));
            for (std::size_t i = 0; i < c.b.size(); ++i)
                b[i] = Scalar::from_int(field, static_cast<long>(c.b[i]));
            dec.terms.push_back(PartitionTerm{lay.split, std::move(a), std::move(b)});
        }
        return dec;
    }
};

std::optional<PartitionDecomposition> search_at_most(const Tensor& t, std::size_t r,
                                                     bool slice_only,
                                                     const SearchOptions& opts) {
    Engine eng(t, slice_only, opts);
    if (auto path = eng.run(r)) return eng.to_decomposition(*path, t.field());
    return std::nullopt;
}

// Upper-bound decomposition over any field: best single-flattening skeleton.
PartitionDecomposition best_flattening_skeleton(const Tensor& t, bool slice_only) {
    std::optional<PartitionDecomposition> best;
    for (const AxisSplit& s : enumerate_splits(t.order(), slice_only)) {
        ExactMatrix f = flatten(t, s);
        FullRankSubmatrix fr = max_full_rank_submatrix(f);
        if (best && fr.rank >= best->length()) continue;
        // skeleton F = F[:,Y] (F[X,Y]^{-1} F[X,:]) lifted back to tensor terms
        PartitionDecomposition dec{t.dims(), t.field(), {}};
        if (fr.rank > 0) {
            std::vector<std::size_t> all_cols(f.cols());
            for (std::size_t i = 0; i < f.cols(); ++i) all_cols[i] = i;
            ExactMatrix g = multiply(invert(f.submatrix(fr.rows, fr.cols)),
                                     f.submatrix(fr.rows, all_cols));
            const std::vector<std::size_t> comp = s.complement(t.order());
            for (std::size_t j = 0; j < fr.rank; ++j) {
                Tensor a(axes_dims(t.dims(), s.axes), t.field());
                Tensor b(axes_dims(t.dims(), comp), t.field());
                for (std::size_t i = 0; i < f.rows(); ++i) a[i] = f.at(i, fr.cols[j]);
                for (std::size_t i = 0; i < f.cols(); ++i) b[i] = g.at(j, i);
                // canonical scaling: first nonzero of a becomes 1
                Scalar c = Scalar::one(t.field());
                for (std::size_t i = 0; i < a.size(); ++i)
                    if (!a[i].is_zero()) {
                        c = a[i];
                        break;
                    }
                Scalar cinv = c.inverse();
                for (std::size_t i = 0; i < a.size(); ++i) a[i] = a[i] * cinv;
                for (std::size_t i = 0; i < b.size(); ++i) b[i] = b[i] * c;
                dec.terms.push_back(PartitionTerm{s, std::move(a), std::move(b)});
            }
        }
        best = std::move(dec);
    }
    return *best;
}

void require_order2(const Tensor& t, const char* what) {
    if (t.order() != 2) throw IndexOutOfRange(std::string(what) + ": expected an order-2 tensor");
}

} // namespace

std::optional<PartitionDecomposition> prank_at_most(const Tensor& t, std::size_t r,
                                                    const SearchOptions& opts) {
    if (t.order() < 2) throw IndexOutOfRange("prank_at_most: order must be >= 2");
    if (t.order() == 2) {
        PartitionDecomposition dec = matrix_skeleton_decomposition(t);
        if (dec.length() <= r) return dec;
        return std::nullopt;
    }
    if (t.field().is_rational())
        throw UnsupportedField(
            "partition-rank decisions over the rationals are not supported; "
            "prank() returns a witnessed upper bound instead");
    return search_at_most(t, r, /*slice_only=*/false, opts);
}

std::optional<PartitionDecomposition> slice_rank_at_most(const Tensor& t, std::size_t r,
                                                         const SearchOptions& opts) {
    if (t.order() < 2) throw IndexOutOfRange("slice_rank_at_most: order must be >= 2");
    if (t.order() == 2) return prank_at_most(t, r, opts);
    if (t.field().is_rational())
        throw UnsupportedField(
            "slice-rank decisions over the rationals are not supported; "
            "slice_rank() returns a witnessed upper bound instead");
    return search_at_most(t, r, /*slice_only=*/true, opts);
}

namespace {

RankCertificate rank_by_deepening(const Tensor& t, bool slice_only, const SearchOptions& opts) {
    if (t.order() == 2 || t.field().is_rational()) {
        if (t.order() == 2) {
            PartitionDecomposition dec = matrix_skeleton_decomposition(t);
            std::size_t v = dec.length();
            return RankCertificate{v, std::move(dec), LowerBoundTag::exhaustive_search};
        }
        PartitionDecomposition dec = best_flattening_skeleton(t, slice_only);
        std::size_t v = dec.length();
        return RankCertificate{v, std::move(dec), LowerBoundTag::none};
    }
    std::size_t cap = t.dim(0);
    for (std::size_t i = 1; i < t.order(); ++i) cap = std::min(cap, t.dim(i));
    for (std::size_t r = 0; r <= cap; ++r) {
        if (auto dec = search_at_most(t, r, slice_only, opts)) {
            std::size_t v = dec->length();
            return RankCertificate{v, std::move(*dec), LowerBoundTag::exhaustive_search};
        }
    }
    throw Error("internal error: rank exceeded the slice bound");
}

} // namespace

Tensor random_bounded_prank_tensor(const std::vector<std::size_t>& dims, const Field& field,
                                   std::size_t r, std::uint64_t seed, bool slice_only) {
    Tensor acc(dims, field);
    const std::vector<AxisSplit> splits = enumerate_splits(dims.size(), slice_only);
    Rng rng(seed);
    auto random_factor = [&](const std::vector<std::size_t>& axes) {
        Tensor f(axes_dims(dims, axes), field);
        for (;;) {
            for (std::size_t i = 0; i < f.size(); ++i) {
                if (field.is_finite())
                    f[i] = Scalar::from_int(field, long(rng.below(field.characteristic())));
                else
                    f[i] = Scalar::from_int(field, long(rng.below(7)) - 3);
            }
            if (!f.is_zero()) return f;
        }
    };
    for (std::size_t i = 0; i < r; ++i) {
        const AxisSplit& s = splits[rng.below(splits.size())];
        PartitionTerm term{s, random_factor(s.axes), random_factor(s.complement(dims.size()))};
        accumulate_term(acc, term, +1);
    }
    return acc;
}

std::optional<PartitionDecomposition> detail::search_decomposition(const Tensor& t,
                                                                   std::size_t r,
                                                                   bool slice_only,
                                                                   const SearchOptions& opts) {
    return search_at_most(t, r, slice_only, opts);
}

RankCertificate prank(const Tensor& t, const SearchOptions& opts) {
    if (t.order() < 2) throw IndexOutOfRange("prank: order must be >= 2");
    return rank_by_deepening(t, /*slice_only=*/false, opts);
}

RankCertificate slice_rank(const Tensor& t, const SearchOptions& opts) {
    if (t.order() < 2) throw IndexOutOfRange("slice_rank: order must be >= 2");
    return rank_by_deepening(t, /*slice_only=*/true, opts);
}

FullRankSubmatrix max_full_rank_submatrix(const ExactMatrix& m) {
    // greedy row basis = lexicographically least independent row set
    std::vector<std::size_t> rows;
    std::vector<std::size_t> all_cols(m.cols());
    for (std::size_t i = 0; i < m.cols(); ++i) all_cols[i] = i;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        std::vector<std::size_t> cand = rows;
        cand.push_back(r);
        if (rank(m.submatrix(cand, all_cols)) == cand.size()) rows = std::move(cand);
    }
    std::vector<std::size_t> cols;
    if (!rows.empty()) cols = rref(m.submatrix(rows, all_cols)).pivot_columns;
    const std::size_t r = cols.size();
    return FullRankSubmatrix{std::move(rows), std::move(cols), r};
}

FullRankSubmatrix max_full_rank_submatrix(const Tensor& matrix) {
    require_order2(matrix, "max_full_rank_submatrix");
    return max_full_rank_submatrix(flatten(matrix, AxisSplit{{0}}));
}

ReconstructionReport reconstruct_outside(const Tensor& matrix,
                                         const std::vector<std::size_t>& rows,
                                         const std::vector<std::size_t>& cols) {
    require_order2(matrix, "reconstruct_outside");
    ExactMatrix m = flatten(matrix, AxisSplit{{0}});
    if (rows.size() != cols.size()) throw SingularBlock("reconstruct_outside: X,Y sizes differ");
    ExactMatrix inv(0, 0, m.field());
    try {
        inv = invert(m.submatrix(rows, cols));
    } catch (const SingularMatrix&) {
        throw SingularBlock("reconstruct_outside: A[X,Y] is singular");
    }
    std::vector<bool> in_row(m.rows(), false), in_col(m.cols(), false);
    for (std::size_t r : rows) in_row[r] = true;
    for (std::size_t c : cols) in_col[c] = true;

    ReconstructionReport report;
    const std::size_t r = rows.size();
    for (std::size_t x = 0; x < m.rows(); ++x) {
        if (in_row[x]) continue;
        // left = A[{x},Y] * A[X,Y]^{-1}
        std::vector<Scalar> left(r, Scalar::zero(m.field()));
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j)
                left[i] = left[i] + m.at(x, cols[j]) * inv.at(j, i);
        for (std::size_t y = 0; y < m.cols(); ++y) {
            if (in_col[y]) continue;
            Scalar pred = Scalar::zero(m.field());
            for (std::size_t i = 0; i < r; ++i) pred = pred + left[i] * m.at(rows[i], y);
            ++report.checked;
            if (!(pred == m.at(x, y))) report.violations.emplace_back(x, y);
        }
    }
    return report;
}

PartitionDecomposition matrix_skeleton_decomposition(const Tensor& matrix) {
    require_order2(matrix, "matrix_skeleton_decomposition");
    ExactMatrix m = flatten(matrix, AxisSplit{{0}});
    FullRankSubmatrix fr = max_full_rank_submatrix(m);
    PartitionDecomposition dec{matrix.dims(), matrix.field(), {}};
    if (fr.rank == 0) return dec;
    std::vector<std::size_t> all_cols(m.cols());
    for (std::size_t i = 0; i < m.cols(); ++i) all_cols[i] = i;
    ExactMatrix g =
        multiply(invert(m.submatrix(fr.rows, fr.cols)), m.submatrix(fr.rows, all_cols));
    for (std::size_t j = 0; j < fr.rank; ++j) {
        Tensor a({matrix.dim(0)}, matrix.field());
        Tensor b({matrix.dim(1)}, matrix.field());
        for (std::size_t i = 0; i < m.rows(); ++i) a[i] = m.at(i, fr.cols[j]);
        for (std::size_t i = 0; i < m.cols(); ++i) b[i] = g.at(j, i);
        Scalar c = Scalar::one(matrix.field());
        for (std::size_t i = 0; i < a.size(); ++i)
            if (!a[i].is_zero()) {
                c = a[i];
                break;
            }
        Scalar cinv = c.inverse();
        for (std::size_t i = 0; i < a.size(); ++i) a[i] = a[i] * cinv;
        for (std::size_t i = 0; i < b.size(); ++i) b[i] = b[i] * c;
        dec.terms.push_back(PartitionTerm{AxisSplit{{0}}, std::move(a), std::move(b)});
    }
    dec.sort_canonical();
    return dec;
}

PartitionDecomposition three_r_decomposition(const Tensor& matrix) {
    require_order2(matrix, "three_r_decomposition");
    ExactMatrix m = flatten(matrix, AxisSplit{{0}});
    FullRankSubmatrix fr = max_full_rank_submatrix(m);
    PartitionDecomposition dec{matrix.dims(), matrix.field(), {}};
    if (fr.rank == 0) return dec;

    std::vector<bool> in_row(m.rows(), false), in_col(m.cols(), false);
    for (std::size_t r : fr.rows) in_row[r] = true;
    for (std::size_t c : fr.cols) in_col[c] = true;

    // r row terms covering the rows of X
    for (std::size_t x : fr.rows) {
        Tensor a({matrix.dim(0)}, matrix.field());
        Tensor b({matrix.dim(1)}, matrix.field());
        a[x] = Scalar::one(matrix.field());
        for (std::size_t y = 0; y < m.cols(); ++y) b[y] = m.at(x, y);
        dec.terms.push_back(PartitionTerm{AxisSplit{{0}}, std::move(a), std::move(b)});
    }
    // r column terms covering columns of Y outside the X rows
    for (std::size_t y : fr.cols) {
        Tensor a({matrix.dim(0)}, matrix.field());
        bool nonzero = false;
        for (std::size_t x = 0; x < m.rows(); ++x)
            if (!in_row[x] && !m.at(x, y).is_zero()) {
                a[x] = m.at(x, y);
                nonzero = true;
            }
        if (!nonzero) continue;
        Scalar c = Scalar::one(matrix.field());
        for (std::size_t i = 0; i < a.size(); ++i)
            if (!a[i].is_zero()) {
                c = a[i];
                break;
            }
        Scalar cinv = c.inverse();
        for (std::size_t i = 0; i < a.size(); ++i) a[i] = a[i] * cinv;
        Tensor b({matrix.dim(1)}, matrix.field());
        b[y] = c;
        dec.terms.push_back(PartitionTerm{AxisSplit{{0}}, std::move(a), std::move(b)});
    }
    // remainder block A[X^c, Y^c], rank <= r by the reconstruction identity
    Tensor rem(matrix.dims(), matrix.field());
    for (std::size_t x = 0; x < m.rows(); ++x)
        for (std::size_t y = 0; y < m.cols(); ++y)
            if (!in_row[x] && !in_col[y]) rem.at({x, y}) = m.at(x, y);
    PartitionDecomposition rdec = matrix_skeleton_decomposition(rem);
    for (PartitionTerm& t : rdec.terms) dec.terms.push_back(std::move(t));
    dec.sort_canonical();
    return dec;
}

} // namespace partrank
