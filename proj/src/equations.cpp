#include "partrank/equations.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

namespace partrank {

// ---------------------------------------------------------------------------
// Weights and polarization
// ---------------------------------------------------------------------------

namespace {

void require_tensor_universe(const Poly& f, const char* what) {
    if (f.universe() != VarUniverse::tensor_entries)
        throw Error(std::string(what) + ": tensor-entry polynomial required");
}

WeightVector term_weight(const Poly& f, const Exponents& e) {
    const auto& sizes = f.axis_sizes();
    WeightVector w(sizes.size());
    for (std::size_t i = 0; i < sizes.size(); ++i) w[i].assign(sizes[i], 0);
    for (std::size_t v = 0; v < f.var_count(); ++v) {
        if (!e[v]) continue;
        const std::vector<std::size_t> t = f.var_tuple(v);
        for (std::size_t i = 0; i < t.size(); ++i) w[i][t[i]] += e[v];
    }
    return w;
}

std::string monomial_str(const Poly& f, const Exponents& e) {
    std::string s;
    for (std::size_t v = 0; v < f.var_count(); ++v) {
        if (!e[v]) continue;
        s += "x_";
        for (std::size_t i : f.var_tuple(v)) s += std::to_string(i + 1);
        if (e[v] > 1) s += "^" + std::to_string(int(e[v]));
        s += " ";
    }
    return s.empty() ? "1" : s;
}

} // namespace

WeightVector weight_of(const Poly& f) {
    require_tensor_universe(f, "weight_of");
    if (f.is_zero()) throw NotWeightHomogeneous("weight_of: zero polynomial");
    auto it = f.terms().begin();
    WeightVector w = term_weight(f, it->first);
    const Exponents& first = it->first;
    for (++it; it != f.terms().end(); ++it) {
        if (term_weight(f, it->first) != w)
            throw NotWeightHomogeneous("monomials disagree in weight: " +
                                       monomial_str(f, first) + "vs " +
                                       monomial_str(f, it->first));
    }
    return w;
}

std::vector<Poly> weight_components(const Poly& f) {
    require_tensor_universe(f, "weight_components");
    std::map<WeightVector, Poly> comp;
    for (const auto& [e, c] : f.terms()) {
        WeightVector w = term_weight(f, e);
        auto it = comp.find(w);
        if (it == comp.end())
            it = comp.emplace(std::move(w), Poly::tensor_vars(f.axis_sizes(), f.field())).first;
        it->second.add_term(e, c);
    }
    std::vector<Poly> out;
    out.reserve(comp.size());
    for (auto& [w, p] : comp) out.push_back(std::move(p));
    return out;
}

Poly polarize(const Poly& f, std::size_t axis, std::size_t index) {
    require_tensor_universe(f, "polarize");
    if (!f.field().is_rational())
        throw FieldMismatch("polarize: integer/rational coefficients required");
    WeightVector w = weight_of(f);
    if (axis >= w.size() || index >= w[axis].size())
        throw IndexOutOfRange("polarize: bad axis or index");
    if (w[axis][index] < 2)
        throw WeightTooLow("polarize: weight at the chosen index is below 2");

    std::vector<std::size_t> sizes = f.axis_sizes();
    const std::size_t fresh = sizes[axis]++;
    Poly out = Poly::tensor_vars(sizes, f.field());
    for (const auto& [e, c] : f.terms()) {
        // reindex the monomial into the enlarged universe once
        Exponents base(out.var_count(), 0);
        for (std::size_t v = 0; v < f.var_count(); ++v)
            if (e[v]) base[out.var_id(f.var_tuple(v))] = e[v];
        for (std::size_t v = 0; v < f.var_count(); ++v) {
            if (!e[v]) continue;
            std::vector<std::size_t> t = f.var_tuple(v);
            if (t[axis] != index) continue;
            Exponents ne = base;
            --ne[out.var_id(t)];
            t[axis] = fresh;
            ++ne[out.var_id(t)];
            out.add_term(ne, c * Scalar::from_int(f.field(), long(e[v])));
        }
    }
    if (out.is_zero()) throw Error("polarize: derivation vanished (impossible over Q)");
    out.normalize_integer_content();
    return out;
}

Poly multilinearize(const Poly& f) {
    require_tensor_universe(f, "multilinearize");
    if (f.is_zero()) throw Error("multilinearize: zero polynomial");
    Poly cur = f;
    for (;;) {
        WeightVector w = weight_of(cur);
        std::size_t ax = SIZE_MAX, idx = 0;
        for (std::size_t i = 0; i < w.size() && ax == SIZE_MAX; ++i)
            for (std::size_t j = 0; j < w[i].size(); ++j)
                if (w[i][j] >= 2) {
                    ax = i;
                    idx = j;
                    break;
                }
        if (ax == SIZE_MAX) {
            // drop zero-weight slices and renumber
            const std::size_t m = cur.degree();
            std::vector<std::vector<std::size_t>> remap(w.size());
            for (std::size_t i = 0; i < w.size(); ++i) {
                remap[i].assign(w[i].size(), SIZE_MAX);
                std::size_t pos = 0;
                for (std::size_t j = 0; j < w[i].size(); ++j)
                    if (w[i][j] == 1) remap[i][j] = pos++;
                if (pos != m)
                    throw Error("multilinearize: axis weight does not sum to the degree");
            }
            Poly out = Poly::tensor_vars(std::vector<std::size_t>(w.size(), m), cur.field());
            for (const auto& [e, c] : cur.terms()) {
                Exponents ne(out.var_count(), 0);
                for (std::size_t v = 0; v < cur.var_count(); ++v) {
                    if (!e[v]) continue;
                    std::vector<std::size_t> t = cur.var_tuple(v);
                    for (std::size_t i = 0; i < t.size(); ++i) t[i] = remap[i][t[i]];
                    ne[out.var_id(t)] = e[v];
                }
                out.add_term(ne, c);
            }
            out.normalize_integer_content();
            if (out.is_zero()) throw Error("multilinearize: vanished over Z (impossible)");
            return out;
        }
        cur = polarize(cur, ax, idx);
    }
}

// ---------------------------------------------------------------------------
// Budgets and the pullback matrix
// ---------------------------------------------------------------------------

namespace {

std::vector<std::vector<std::size_t>> proper_splits(std::size_t d, bool containing_first) {
    std::vector<std::vector<std::size_t>> out;
    for (std::uint32_t mask = 1; mask + 1 < (1u << d); ++mask) {
        if (containing_first && !(mask & 1)) continue;
        std::vector<std::size_t> axes;
        for (std::size_t a = 0; a < d; ++a)
            if (mask & (1u << a)) axes.push_back(a);
        out.push_back(std::move(axes));
    }
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
        if (x.size() != y.size()) return x.size() < y.size();
        return x < y;
    });
    return out;
}

mpz_class mpz_pow(const mpz_class& b, unsigned long e) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

mpz_class binom(const mpz_class& n, unsigned long k) {
    mpz_class r;
    mpz_bin_ui(r.get_mpz_t(), n.get_mpz_t(), k);
    return r;
}

} // namespace

std::size_t BudgetVector::parameter_count(std::size_t d, std::size_t n) const {
    std::size_t total = 0;
    for (const auto& [axes, cnt] : counts) {
        std::size_t as = 1, bs = 1;
        for (std::size_t i = 0; i < d; ++i) {
            bool in = std::find(axes.begin(), axes.end(), i) != axes.end();
            (in ? as : bs) *= n;
        }
        total += cnt * (as + bs);
    }
    return total;
}

BudgetVector BudgetVector::paper_mode(std::size_t d, std::size_t r) {
    BudgetVector b;
    b.mode = Mode::paper;
    for (auto& axes : proper_splits(d, false)) b.counts.emplace_back(std::move(axes), r);
    return b;
}

std::vector<BudgetVector> tight_budget_vectors(std::size_t d, std::size_t r) {
    const std::vector<std::vector<std::size_t>> splits = proper_splits(d, true);
    std::vector<BudgetVector> out;
    std::vector<std::size_t> comp(splits.size(), 0);
    // weak compositions of r, lexicographic
    auto emit = [&]() {
        BudgetVector b;
        b.mode = BudgetVector::Mode::tight;
        for (std::size_t i = 0; i < splits.size(); ++i)
            if (comp[i] > 0) b.counts.emplace_back(splits[i], comp[i]);
        out.push_back(std::move(b));
    };
    auto rec = [&](auto&& self, std::size_t pos, std::size_t rem) -> void {
        if (pos + 1 == splits.size()) {
            comp[pos] = rem;
            emit();
            return;
        }
        for (std::size_t c = 0; c <= rem; ++c) {
            comp[pos] = c;
            self(self, pos + 1, rem - c);
        }
    };
    if (r == 0) {
        out.push_back(BudgetVector{BudgetVector::Mode::tight, {}});
    } else {
        rec(rec, 0, r);
    }
    return out;
}

namespace {

// Concrete parametrization: for every tensor entry, the list of
// (A-parameter, B-parameter) products appearing in its image.
struct Parametrization {
    std::size_t d, n;
    std::size_t total_params;
    std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> summands; // per entry
};

Parametrization build_parametrization(std::size_t d, std::size_t n, const BudgetVector& budget) {
    Parametrization p;
    p.d = d;
    p.n = n;
    std::size_t entries = 1;
    for (std::size_t i = 0; i < d; ++i) entries *= n;
    p.summands.assign(entries, {});

    std::size_t offset = 0;
    for (const auto& [axes, cnt] : budget.counts) {
        std::vector<std::size_t> comp;
        for (std::size_t a = 0; a < d; ++a)
            if (std::find(axes.begin(), axes.end(), a) == axes.end()) comp.push_back(a);
        std::size_t as = 1, bs = 1;
        for (std::size_t a : axes) (void)a, as *= n;
        for (std::size_t a : comp) (void)a, bs *= n;
        for (std::size_t term = 0; term < cnt; ++term) {
            const std::size_t a_off = offset, b_off = offset + as;
            offset += as + bs;
            std::vector<std::size_t> idx(d);
            for (std::size_t f = 0; f < entries; ++f) {
                std::size_t rem = f;
                for (std::size_t i = d; i-- > 0;) {
                    idx[i] = rem % n;
                    rem /= n;
                }
                std::size_t ai = 0, bi = 0;
                for (std::size_t a : axes) ai = ai * n + idx[a];
                for (std::size_t a : comp) bi = bi * n + idx[a];
                p.summands[f].emplace_back(std::uint32_t(a_off + ai), std::uint32_t(b_off + bi));
            }
        }
    }
    p.total_params = offset;
    return p;
}

using ParamMono = std::vector<std::uint8_t>;

/// Expansion of (monomial in the entries) composed with the parametrization.
std::map<ParamMono, Scalar> expand_composition(const Parametrization& p, const Exponents& e,
                                               const Field& field) {
    std::map<ParamMono, Scalar> acc;
    acc.emplace(ParamMono(p.total_params, 0), Scalar::one(field));
    for (std::size_t ent = 0; ent < e.size(); ++ent) {
        for (std::uint8_t k = 0; k < e[ent]; ++k) {
            std::map<ParamMono, Scalar> next;
            for (const auto& [mono, c] : acc) {
                for (const auto& [pa, pb] : p.summands[ent]) {
                    ParamMono m2 = mono;
                    ++m2[pa];
                    ++m2[pb];
                    auto it = next.find(m2);
                    if (it == next.end()) {
                        next.emplace(std::move(m2), c);
                    } else {
                        it->second = it->second + c;
                        if (it->second.is_zero()) next.erase(it);
                    }
                }
            }
            acc = std::move(next);
        }
    }
    return acc;
}

} // namespace

ExactMatrix build_pullback_matrix(std::size_t d, std::size_t n, std::size_t m,
                                  const Field& field, const BudgetVector& budget,
                                  const PullbackOptions& opts) {
    const Parametrization p = build_parametrization(d, n, budget);
    std::size_t entries = p.summands.size();

    const mpz_class n_cols = binom(mpz_class(m) + mpz_class(entries) - 1, m);
    const mpz_class n_rows = binom(mpz_class(2 * m) + mpz_class(p.total_params) - 1, 2 * m);
    if (n_rows * n_cols > mpz_class(static_cast<unsigned long>(opts.cell_cap)))
        throw SizeCapExceeded("pullback matrix would have " + n_rows.get_str() + " x " +
                              n_cols.get_str() + " cells");

    const std::vector<Exponents> cols = monomials_of_degree(entries, m);
    const std::vector<Exponents> rows = monomials_of_degree(p.total_params, 2 * m);
    std::map<ParamMono, std::size_t> row_of;
    for (std::size_t i = 0; i < rows.size(); ++i) row_of.emplace(rows[i], i);

    ExactMatrix mat(rows.size(), cols.size(), field);
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (const auto& [mono, c] : expand_composition(p, cols[j], field))
            mat.at(row_of.at(mono), j) = c;
    return mat;
}

std::optional<Poly> find_vanishing_poly(std::size_t d, std::size_t n, std::size_t r,
                                        std::size_t m, const Field& field, EquationMode mode,
                                        const PullbackOptions& opts) {
    std::vector<BudgetVector> budgets = mode == EquationMode::paper
                                            ? std::vector<BudgetVector>{BudgetVector::paper_mode(d, r)}
                                            : tight_budget_vectors(d, r);
    std::size_t entries = 1;
    for (std::size_t i = 0; i < d; ++i) entries *= n;
    const mpz_class n_cols = binom(mpz_class(m) + mpz_class(entries) - 1, m);
    if (n_cols > mpz_class(static_cast<unsigned long>(opts.cell_cap)))
        throw SizeCapExceeded("too many degree-m monomials");
    const std::vector<Exponents> cols = monomials_of_degree(entries, m);

    // Stack, per budget, only the parameter monomials that actually occur;
    // empty rows do not change the kernel.
    struct Entry {
        std::size_t row, col;
        Scalar val;
    };
    std::vector<Entry> triplets;
    std::size_t row_base = 0;
    for (const BudgetVector& b : budgets) {
        const Parametrization p = build_parametrization(d, n, b);
        std::map<ParamMono, std::size_t> row_of;
        for (std::size_t j = 0; j < cols.size(); ++j) {
            for (const auto& [mono, c] : expand_composition(p, cols[j], field)) {
                auto it = row_of.find(mono);
                if (it == row_of.end()) it = row_of.emplace(mono, row_base + row_of.size()).first;
                triplets.push_back(Entry{it->second, j, c});
            }
            if ((row_base + row_of.size()) * cols.size() > opts.cell_cap)
                throw SizeCapExceeded("stacked pullback matrix exceeds the cell cap");
        }
        row_base += row_of.size();
    }

    ExactMatrix stacked(std::max<std::size_t>(row_base, 1), cols.size(), field);
    for (const Entry& e : triplets) stacked.at(e.row, e.col) = e.val;

    std::vector<std::vector<Scalar>> kernel = kernel_basis(stacked);
    if (kernel.empty()) return std::nullopt;

    Poly f = Poly::tensor_vars(std::vector<std::size_t>(d, n), field);
    for (std::size_t j = 0; j < cols.size(); ++j)
        if (!kernel[0][j].is_zero()) f.add_term(cols[j], kernel[0][j]);
    if (field.is_rational()) f.normalize_integer_content();
    return f;
}

bool vanishes_on_parametrization(const Poly& f, std::size_t n, const BudgetVector& budget) {
    require_tensor_universe(f, "vanishes_on_parametrization");
    const std::size_t d = f.axis_sizes().size();
    for (std::size_t s : f.axis_sizes())
        if (s != n) throw IndexOutOfRange("vanishes_on_parametrization: axis sizes must equal n");
    const Parametrization p = build_parametrization(d, n, budget);
    std::map<ParamMono, Scalar> acc;
    for (const auto& [e, c] : f.terms()) {
        for (const auto& [mono, cc] : expand_composition(p, e, f.field())) {
            auto it = acc.find(mono);
            if (it == acc.end()) {
                acc.emplace(mono, c * cc);
            } else {
                it->second = it->second + c * cc;
                if (it->second.is_zero()) acc.erase(it);
            }
        }
    }
    return acc.empty();
}

// ---------------------------------------------------------------------------
// Dimension counting
// ---------------------------------------------------------------------------

DimFormulas dim_formulas(std::size_t d, std::size_t n, std::size_t r, std::size_t m) {
    DimFormulas out;
    out.S = 0;
    const mpz_class nz(static_cast<unsigned long>(n));
    for (std::size_t s = 1; s < d; ++s)
        out.S += binom(mpz_class(static_cast<unsigned long>(d)), s) * long(r) *
                 (mpz_pow(nz, s) + mpz_pow(nz, d - s));
    // S = 0: the parameter space is a point and only constants remain
    out.dimP2m = out.S == 0 ? 1 : binom(mpz_class(2 * m) + out.S - 1, 2 * m);
    const mpz_class nd = mpz_pow(nz, d);
    // C(m+n^d-1, m) computed through the smaller lower index
    if (mpz_class(m) <= nd - 1) {
        out.dimPm = binom(mpz_class(m) + nd - 1, static_cast<unsigned long>(m));
    } else {
        out.dimPm = binom(mpz_class(m) + nd - 1, mpz_get_ui(mpz_class(nd - 1).get_mpz_t()));
    }
    return out;
}

namespace {

struct LogBounds {
    double lo, hi;
};

// Certified bounds on ln(n!) from an exact sum for small n and a Stirling
// expansion with explicit remainder otherwise. Slack covers the mpz->double
// conversion and floating-point roundoff.
LogBounds ln_factorial(const mpz_class& nz) {
    double x = mpz_get_d(nz.get_mpz_t());
    if (x < 2) return {0.0, 0.0};
    if (x <= 512) {
        double s = 0;
        unsigned long n = mpz_get_ui(nz.get_mpz_t());
        for (unsigned long k = 2; k <= n; ++k) s += std::log(double(k));
        double eps = s * 1e-12 + 1e-9;
        return {s - eps, s + eps};
    }
    const double lx = std::log(x);
    double s = x * lx - x + 0.5 * std::log(2 * 3.14159265358979323846 * x) + 1 / (12 * x);
    double conv = x * 2.3e-16 * (lx + 1); // |dx| <= x*2^-52 times d/dx ln x!
    double eps = std::abs(s) * 1e-12 + conv + 1e-9;
    return {s - eps - 1 / (360 * x * x * x), s + eps};
}

LogBounds ln_binom(const mpz_class& n, const mpz_class& k) {
    LogBounds a = ln_factorial(n), b = ln_factorial(k), c = ln_factorial(n - k);
    return {a.lo - b.hi - c.hi, a.hi - b.lo - c.lo};
}

double ln_of_mpz(const mpz_class& z) {
    signed long exp2;
    double d = mpz_get_d_2exp(&exp2, z.get_mpz_t());
    return std::log(d) + double(exp2) * 0.69314718055994530942;
}

} // namespace

CountingReport check_counting_inequality(std::size_t d, std::size_t r,
                                         std::optional<mpz_class> m_override,
                                         std::size_t bit_budget) {
    CountingReport rep;
    rep.n = mpz_class(1) << (d + 3);
    rep.n *= long(r);
    rep.m = m_override ? *m_override : mpz_pow(rep.n, static_cast<unsigned long>(2 * d));

    rep.S = 0;
    for (std::size_t s = 1; s < d; ++s)
        rep.S += binom(mpz_class(static_cast<unsigned long>(d)), s) * long(r) *
                 (mpz_pow(rep.n, s) + mpz_pow(rep.n, d - s));
    const mpz_class nd = mpz_pow(rep.n, static_cast<unsigned long>(d));

    const mpz_class N2m = 2 * rep.m + rep.S - 1;
    const mpz_class K2m = std::min(mpz_class(2 * rep.m), mpz_class(rep.S - 1));
    const mpz_class Nm = rep.m + nd - 1;
    const mpz_class Km = std::min(rep.m, mpz_class(nd - 1));

    LogBounds l2m = ln_binom(N2m, K2m);
    LogBounds lm = ln_binom(Nm, Km);
    rep.log_dimP2m_hi = l2m.hi;
    rep.log_dimPm_lo = lm.lo;

    const double budget_nats = double(bit_budget) * 0.69314718055994530942;
    if (l2m.hi < budget_nats && lm.hi < budget_nats && mpz_fits_ulong_p(K2m.get_mpz_t()) &&
        mpz_fits_ulong_p(Km.get_mpz_t())) {
        rep.exact = true;
        rep.dimP2m = binom(N2m, mpz_get_ui(K2m.get_mpz_t()));
        rep.dimPm = binom(Nm, mpz_get_ui(Km.get_mpz_t()));
        rep.holds = rep.dimP2m < rep.dimPm;
        rep.log_dimP2m_hi = ln_of_mpz(rep.dimP2m);
        rep.log_dimPm_lo = ln_of_mpz(rep.dimPm);
    } else {
        rep.exact = false;
        rep.holds = l2m.hi < lm.lo;
    }
    return rep;
}

// ---------------------------------------------------------------------------
// h-chains
// ---------------------------------------------------------------------------

HChain extract_hchain(const Poly& f) {
    require_tensor_universe(f, "extract_hchain");
    if (f.is_zero()) throw Error("extract_hchain: zero polynomial");
    const WeightVector w = weight_of(f);
    const std::size_t m = f.degree();
    const std::size_t d = f.axis_sizes().size();
    for (std::size_t i = 0; i < d; ++i) {
        if (f.axis_sizes()[i] != m)
            throw Error("extract_hchain: axis sizes must all equal the degree");
        for (unsigned x : w[i])
            if (x != 1) throw Error("extract_hchain: weight (1,..,1) required");
    }

    HChain ch;
    ch.m = m;
    ch.h.push_back(f);
    Poly cur = f;
    for (std::size_t k = 0; k < m; ++k) {
        const std::size_t q = m - k;
        const std::size_t corner = cur.var_id(std::vector<std::size_t>(d, q - 1));
        std::vector<std::vector<std::size_t>> perm(d);
        for (std::size_t i = 0; i < d; ++i) {
            perm[i].resize(m);
            for (std::size_t v = 0; v < m; ++v) perm[i][v] = v;
        }
        auto [high, rest] = cur.split_by_var(corner);
        if (high.is_zero()) {
            // permute the lex-greatest variable of the leading monomial
            // onto the corner; the corner coefficient is then nonzero
            const Exponents& lead = cur.leading_monomial();
            std::size_t vstar = 0;
            for (std::size_t v = 0; v < cur.var_count(); ++v)
                if (lead[v]) vstar = v;
            const std::vector<std::size_t> t = cur.var_tuple(vstar);
            for (std::size_t i = 0; i < d; ++i)
                if (t[i] != q - 1) std::swap(perm[i][t[i]], perm[i][q - 1]);
            Poly moved = cur.relabel(perm);
            std::tie(high, rest) = moved.split_by_var(corner);
            if (high.is_zero()) throw Error("extract_hchain: internal pivot failure");
        }
        ch.perms.push_back(std::move(perm));
        ch.r.push_back(std::move(rest));
        ch.h.push_back(high);
        cur = ch.h.back();
    }
    if (cur.is_zero() || cur.degree() != 0)
        throw Error("extract_hchain: h_m is not a nonzero constant");
    if (!ch.r.back().is_zero()) throw Error("extract_hchain: r_m must vanish");
    return ch;
}

// ---------------------------------------------------------------------------
// Orbits
// ---------------------------------------------------------------------------

namespace {

std::size_t support_box(const Poly& h) {
    std::size_t mp = 0;
    for (const auto& [e, c] : h.terms())
        for (std::size_t v = 0; v < h.var_count(); ++v)
            if (e[v])
                for (std::size_t i : h.var_tuple(v)) mp = std::max(mp, i + 1);
    return mp;
}

void injections_of(std::size_t n, std::size_t mp, std::vector<std::vector<std::size_t>>& out) {
    std::vector<std::size_t> cur;
    std::vector<bool> used(n, false);
    auto rec = [&](auto&& self) -> void {
        if (cur.size() == mp) {
            out.push_back(cur);
            return;
        }
        for (std::size_t v = 0; v < n; ++v) {
            if (used[v]) continue;
            used[v] = true;
            cur.push_back(v);
            self(self);
            cur.pop_back();
            used[v] = false;
        }
    };
    rec(rec);
}

} // namespace

OrbitResult orbit_vanishes(const Poly& h, const Tensor& t, const OrbitOptions& opts) {
    require_tensor_universe(h, "orbit_vanishes");
    const std::size_t d = t.order();
    if (h.axis_sizes().size() != d) throw IndexOutOfRange("orbit_vanishes: order mismatch");
    const std::size_t mp = support_box(h);
    if (mp == 0) {
        // constant polynomial
        if (h.is_zero()) return {true, true, std::nullopt};
        return {false, true, Injections(d)};
    }
    for (std::size_t i = 0; i < d; ++i)
        if (mp > t.dim(i)) throw IndexOutOfRange("orbit_vanishes: tensor too small");

    std::uint64_t total = 1;
    bool overflow = false;
    for (std::size_t i = 0; i < d; ++i) {
        std::uint64_t c = 1;
        for (std::size_t v = 0; v < mp; ++v) c *= (t.dim(i) - v);
        if (total > opts.budget / std::max<std::uint64_t>(c, 1)) overflow = true;
        total *= c;
    }
    if (overflow || total > opts.budget) {
        if (!opts.sample)
            throw BudgetExceeded("orbit check needs more than the injection budget; "
                                 "enable sampling for a heuristic answer");
        Rng rng(opts.seed);
        Injections inj(d, std::vector<std::size_t>(mp));
        for (std::size_t s = 0; s < opts.sample_count; ++s) {
            for (std::size_t i = 0; i < d; ++i) {
                // random injection via partial shuffle
                std::vector<std::size_t> pool(t.dim(i));
                for (std::size_t v = 0; v < pool.size(); ++v) pool[v] = v;
                for (std::size_t v = 0; v < mp; ++v) {
                    std::size_t j = v + std::size_t(rng.below(pool.size() - v));
                    std::swap(pool[v], pool[j]);
                    inj[i][v] = pool[v];
                }
            }
            if (!h.evaluate_injection(t, inj).is_zero()) return {false, false, inj};
        }
        return {true, false, std::nullopt};
    }

    std::vector<std::vector<std::vector<std::size_t>>> per_axis(d);
    for (std::size_t i = 0; i < d; ++i) injections_of(t.dim(i), mp, per_axis[i]);
    std::vector<std::size_t> pick(d, 0);
    Injections inj(d);
    for (;;) {
        for (std::size_t i = 0; i < d; ++i) inj[i] = per_axis[i][pick[i]];
        if (!h.evaluate_injection(t, inj).is_zero()) return {false, true, inj};
        std::size_t i = d;
        while (i-- > 0) {
            if (++pick[i] < per_axis[i].size()) break;
            pick[i] = 0;
            if (i == 0) return {true, true, std::nullopt};
        }
    }
}

FindKResult find_k(const Tensor& t, const HChain& chain, const OrbitOptions& opts) {
    OrbitResult prev{false, true, std::nullopt};
    for (std::size_t k = chain.m; k-- > 0;) {
        OrbitResult res = orbit_vanishes(chain.h[k], t, opts);
        if (res.vanishes) {
            Injections wit;
            if (k + 1 == chain.m) {
                wit.assign(t.order(), {}); // h_m is a nonzero constant
            } else {
                wit = *prev.witness;
            }
            return FindKResult{k, std::move(wit)};
        }
        prev = std::move(res);
    }
    throw HypothesisViolated("find_k: the orbit of h_0 does not vanish at T");
}

// ---------------------------------------------------------------------------
// The constructive decomposition
// ---------------------------------------------------------------------------

namespace {

Tensor pad_factor(const Tensor& small, const std::vector<std::size_t>& full_dims,
                  std::size_t offset) {
    Tensor out(full_dims, small.field());
    std::vector<std::size_t> pos(small.order());
    for (MultiIndex mi(small.dims()); !mi.done(); mi.advance()) {
        const Scalar& v = small.at(*mi);
        if (v.is_zero()) continue;
        for (std::size_t i = 0; i < pos.size(); ++i) pos[i] = (*mi)[i] + offset;
        out.at(pos) = v;
    }
    return out;
}

void canonical_scale(PartitionTerm& term) {
    for (std::size_t i = 0; i < term.a.size(); ++i) {
        if (term.a[i].is_zero()) continue;
        Scalar c = term.a[i];
        Scalar cinv = c.inverse();
        for (std::size_t j = 0; j < term.a.size(); ++j) term.a[j] = term.a[j] * cinv;
        for (std::size_t j = 0; j < term.b.size(); ++j) term.b[j] = term.b[j] * c;
        return;
    }
}

std::vector<std::size_t> dims_of_axes(const std::vector<std::size_t>& dims,
                                      const std::vector<std::size_t>& axes) {
    std::vector<std::size_t> out;
    for (std::size_t a : axes) out.push_back(dims[a]);
    return out;
}

} // namespace

ChainDecomposition decompose_via_chain(const Tensor& t, const HChain& chain,
                                       const OrbitOptions& opts) {
    const std::size_t d = t.order(), m = chain.m;
    const Field field = t.field();
    if (t.is_zero())
        return ChainDecomposition{PartitionDecomposition{t.dims(), field, {}}, m - 1,
                                  bound_formula(d, m, m - 1)};

    OrbitOptions exact = opts;
    exact.sample = false; // proofs need exhaustive orbit checks
    const FindKResult fk = find_k(t, chain, exact);
    const std::size_t q = m - fk.k;

    // relabel so the witness occupies the leading indices
    std::vector<std::vector<std::size_t>> sigma(d), sigma_inv(d);
    for (std::size_t i = 0; i < d; ++i) {
        sigma[i].assign(t.dim(i), SIZE_MAX);
        for (std::size_t a = 0; a + 1 < q; ++a) sigma[i][fk.witness[i][a]] = a;
        std::size_t next = q - 1;
        for (std::size_t v = 0; v < t.dim(i); ++v)
            if (sigma[i][v] == SIZE_MAX) sigma[i][v] = next++;
        sigma_inv[i].assign(t.dim(i), 0);
        for (std::size_t v = 0; v < t.dim(i); ++v) sigma_inv[i][sigma[i][v]] = v;
    }
    const Tensor tt = apply_index_permutations(t, sigma);

    Injections ident(d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t a = 0; a + 1 < q; ++a) ident[i].push_back(a);
    const Scalar beta = chain.h[fk.k + 1].evaluate_injection(tt, ident);
    if (beta.is_zero())
        throw ChainEvaluationZero("decompose_via_chain: h_{k+1} vanished at the witness");
    const Scalar beta_inv = beta.inverse();

    PartitionDecomposition dec{t.dims(), field, {}};
    Tensor residual = tt;

    // slice terms for indices below q-1
    for (std::size_t axis = 0; axis < d; ++axis) {
        std::vector<std::size_t> other_axes;
        for (std::size_t i = 0; i < d; ++i)
            if (i != axis) other_axes.push_back(i);
        for (std::size_t a = 0; a + 1 < q; ++a) {
            Tensor slice(dims_of_axes(t.dims(), other_axes), field);
            std::vector<std::size_t> pos(d);
            bool nonzero = false;
            for (MultiIndex mi(slice.dims()); !mi.done(); mi.advance()) {
                for (std::size_t i = 0; i < other_axes.size(); ++i) pos[other_axes[i]] = (*mi)[i];
                pos[axis] = a;
                const Scalar& v = residual.at(pos);
                if (!v.is_zero()) {
                    slice.at(*mi) = v;
                    nonzero = true;
                }
            }
            if (!nonzero) continue;
            Tensor unit({t.dim(axis)}, field);
            unit[a] = Scalar::one(field);
            PartitionTerm term =
                axis == 0
                    ? PartitionTerm{AxisSplit{{0}}, std::move(unit), std::move(slice)}
                    : PartitionTerm{AxisSplit{other_axes}, std::move(slice), std::move(unit)};
            canonical_scale(term);
            accumulate_term(residual, term, -1);
            dec.terms.push_back(std::move(term));
        }
    }

    // outside block: one term per index pattern of r_{k+1}
    const Poly& rp = chain.r[fk.k];
    using PatternKey = std::pair<std::vector<std::size_t>, std::vector<std::size_t>>;
    std::map<PatternKey, Tensor> partner; // accumulated co-factors, per pattern
    const std::size_t offset = q - 1;

    for (const auto& [e, coeff] : rp.terms()) {
        struct QVar {
            std::vector<std::size_t> axes;  // axes carrying index q-1
            std::vector<std::size_t> fixed; // full tuple (used on the other axes)
        };
        std::vector<QVar> qvars;
        Scalar const_val = Scalar::one(field);
        for (std::size_t v = 0; v < rp.var_count(); ++v) {
            if (!e[v]) continue;
            if (e[v] != 1) throw Error("decompose_via_chain: r_{k+1} must be multilinear");
            const std::vector<std::size_t> tup = rp.var_tuple(v);
            std::vector<std::size_t> axes;
            for (std::size_t i = 0; i < d; ++i)
                if (tup[i] == q - 1) axes.push_back(i);
            if (axes.empty()) {
                const_val = const_val * tt.at(tup);
            } else {
                qvars.push_back(QVar{std::move(axes), tup});
            }
        }
        if (const_val.is_zero()) continue;
        // canonical low-order factor: least (|I|, I, fixed indices) with |I| <= d/2
        std::size_t best = SIZE_MAX;
        for (std::size_t i = 0; i < qvars.size(); ++i) {
            if (2 * qvars[i].axes.size() > d) continue;
            if (best == SIZE_MAX) {
                best = i;
                continue;
            }
            const auto key = [&](const QVar& qv) {
                return std::make_tuple(qv.axes.size(), qv.axes, qv.fixed);
            };
            if (key(qvars[i]) < key(qvars[best])) best = i;
        }
        if (best == SIZE_MAX) throw Error("decompose_via_chain: no low-order factor");
        const QVar vstar = qvars[best];

        std::vector<std::size_t> comp_axes;
        for (std::size_t i = 0; i < d; ++i)
            if (std::find(vstar.axes.begin(), vstar.axes.end(), i) == vstar.axes.end())
                comp_axes.push_back(i);
        std::vector<std::size_t> comp_fixed;
        for (std::size_t a : comp_axes) comp_fixed.push_back(vstar.fixed[a]);
        PatternKey pkey{vstar.axes, comp_fixed};

        std::vector<std::size_t> rdims;
        for (std::size_t a : comp_axes) rdims.push_back(t.dim(a) - offset);
        auto it = partner.find(pkey);
        if (it == partner.end()) it = partner.emplace(pkey, Tensor(rdims, field)).first;
        Tensor& acc = it->second;

        const Scalar w = -(map_coefficient(coeff, field) * const_val * beta_inv);
        std::vector<std::size_t> pos(d);
        for (MultiIndex mi(rdims); !mi.done(); mi.advance()) {
            Scalar val = w;
            for (std::size_t j = 0; j < qvars.size() && !val.is_zero(); ++j) {
                if (j == best) continue;
                const QVar& qv = qvars[j];
                for (std::size_t i = 0; i < d; ++i) pos[i] = qv.fixed[i];
                for (std::size_t a : qv.axes) {
                    const std::size_t ci =
                        std::find(comp_axes.begin(), comp_axes.end(), a) - comp_axes.begin();
                    pos[a] = (*mi)[ci] + offset;
                }
                val = val * tt.at(pos);
            }
            if (!val.is_zero()) acc.at(*mi) = acc.at(*mi) + val;
        }
    }

    for (const auto& [pkey, acc] : partner) {
        if (acc.is_zero()) continue;
        const std::vector<std::size_t>& iaxes = pkey.first;
        std::vector<std::size_t> comp_axes;
        for (std::size_t i = 0; i < d; ++i)
            if (std::find(iaxes.begin(), iaxes.end(), i) == iaxes.end()) comp_axes.push_back(i);
        // the shared low-order factor for this pattern
        std::vector<std::size_t> sdims;
        for (std::size_t a : iaxes) sdims.push_back(t.dim(a) - offset);
        Tensor sp(sdims, field);
        std::vector<std::size_t> pos(d);
        bool nonzero = false;
        for (MultiIndex mi(sdims); !mi.done(); mi.advance()) {
            for (std::size_t i = 0; i < comp_axes.size(); ++i)
                pos[comp_axes[i]] = pkey.second[i];
            for (std::size_t i = 0; i < iaxes.size(); ++i) pos[iaxes[i]] = (*mi)[i] + offset;
            const Scalar& v = tt.at(pos);
            if (!v.is_zero()) {
                sp.at(*mi) = v;
                nonzero = true;
            }
        }
        if (!nonzero) continue;
        Tensor a_pad = pad_factor(sp, dims_of_axes(t.dims(), iaxes), offset);
        Tensor b_pad = pad_factor(acc, dims_of_axes(t.dims(), comp_axes), offset);
        PartitionTerm term = iaxes.front() == 0
                                 ? PartitionTerm{AxisSplit{iaxes}, std::move(a_pad), std::move(b_pad)}
                                 : PartitionTerm{AxisSplit{comp_axes}, std::move(b_pad), std::move(a_pad)};
        canonical_scale(term);
        accumulate_term(residual, term, -1);
        dec.terms.push_back(std::move(term));
    }

    if (!residual.is_zero())
        throw Error("decompose_via_chain: decomposition failed to reproduce the tensor");

    // map the terms back through the inverse relabeling
    for (PartitionTerm& term : dec.terms) {
        std::vector<std::vector<std::size_t>> pa, pb;
        for (std::size_t a : term.split.axes) pa.push_back(sigma_inv[a]);
        for (std::size_t a : term.split.complement(d)) pb.push_back(sigma_inv[a]);
        term.a = apply_index_permutations(term.a, pa);
        term.b = apply_index_permutations(term.b, pb);
        canonical_scale(term);
    }
    dec.sort_canonical();

    if (!(dec.evaluate() == t))
        throw Error("decompose_via_chain: verification failed");
    const unsigned long long bound = bound_formula(d, m, fk.k);
    if (dec.length() > bound) throw Error("decompose_via_chain: bound exceeded");
    return ChainDecomposition{std::move(dec), fk.k, bound};
}

unsigned long long bound_formula(std::size_t d, std::size_t m, std::size_t k) {
    if (m == 0 || k >= m) throw IndexOutOfRange("bound_formula: need 0 <= k <= m-1");
    const mpz_class t(static_cast<unsigned long>(m - k - 1));
    mpz_class acc = mpz_class(static_cast<unsigned long>(d)) * t;
    for (std::size_t s = 1; s <= d / 2; ++s)
        acc += binom(mpz_class(static_cast<unsigned long>(d)), s) * mpz_pow(t, d - s);
    if (!mpz_fits_ulong_p(acc.get_mpz_t())) throw SizeCapExceeded("bound_formula overflow");
    return mpz_get_ui(acc.get_mpz_t());
}

std::pair<mpz_class, mpz_class> fd_gd(std::size_t d, std::size_t r) {
    if (d < 2 || r < 1) throw IndexOutOfRange("fd_gd: need d >= 2, r >= 1");
    mpz_class base = mpz_class(1) << (d + 3);
    base *= long(r);
    return {mpz_pow(base, 2 * d), mpz_pow(base, 2 * d * d)};
}

} // namespace partrank
