#include "partrank/bridge.hpp"

#include <algorithm>

namespace partrank {

namespace {

std::size_t cubical_size(const Tensor& t, const char* what) {
    const std::size_t n = t.dim(0);
    for (std::size_t i = 1; i < t.order(); ++i)
        if (t.dim(i) != n) throw IndexOutOfRange(std::string(what) + ": cubical tensor required");
    return n;
}

void check_characteristic(const Field& f, std::size_t d) {
    if (f.is_finite() && f.characteristic() <= d)
        throw BadCharacteristic("characteristic must be 0 or exceed the degree");
}

Scalar factorial_in(const Field& f, std::size_t k) {
    Scalar acc = Scalar::one(f);
    for (std::size_t i = 2; i <= k; ++i) acc = acc * Scalar::from_int(f, long(i));
    return acc;
}

void scale_first_nonzero(PartitionTerm& term) {
    for (std::size_t i = 0; i < term.a.size(); ++i) {
        if (term.a[i].is_zero()) continue;
        Scalar c = term.a[i];
        Scalar cinv = c.inverse();
        for (std::size_t j = 0; j < term.a.size(); ++j) term.a[j] = term.a[j] * cinv;
        for (std::size_t j = 0; j < term.b.size(); ++j) term.b[j] = term.b[j] * c;
        return;
    }
}

} // namespace

Poly phi(const Tensor& t) {
    const std::size_t n = cubical_size(t, "phi");
    Poly p = Poly::point_vars(n, t.field());
    Exponents e(n, 0);
    for (std::size_t f = 0; f < t.size(); ++f) {
        if (t[f].is_zero()) continue;
        std::fill(e.begin(), e.end(), 0);
        for (std::size_t i : t.unflatten_index(f)) ++e[i];
        p.add_term(e, t[f]);
    }
    return p;
}

Tensor psi(const Poly& p, std::size_t degree_hint) {
    if (p.universe() != VarUniverse::points)
        throw Error("psi: point-variable polynomial required");
    const std::size_t d = p.is_zero() ? degree_hint : p.degree();
    if (p.is_zero() && degree_hint == 0)
        throw IndexOutOfRange("psi: the zero polynomial needs an explicit degree");
    if (!p.is_zero() && degree_hint != 0 && degree_hint != d)
        throw IndexOutOfRange("psi: degree hint does not match the polynomial");
    if (d == 0) throw IndexOutOfRange("psi: degree must be at least 1");
    if (!p.is_homogeneous()) throw Error("psi: homogeneous polynomial required");
    check_characteristic(p.field(), d);

    const std::size_t n = p.num_points();
    Tensor t(std::vector<std::size_t>(d, n), p.field());
    Exponents counts(n, 0);
    for (const auto& [e, c] : p.terms()) {
        Scalar mult = Scalar::one(p.field());
        for (std::size_t v = 0; v < n; ++v) mult = mult * factorial_in(p.field(), e[v]);
        const Scalar val = c * mult;
        for (MultiIndex mi(t.dims()); !mi.done(); mi.advance()) {
            std::fill(counts.begin(), counts.end(), 0);
            for (std::size_t i : *mi) ++counts[i];
            if (counts == e) t.at(*mi) = t.at(*mi) + val;
        }
    }
    return t;
}

Poly restrict_poly(const Poly& p, const std::vector<std::size_t>& keep) {
    if (p.universe() != VarUniverse::points)
        throw Error("restrict_poly: point-variable polynomial required");
    std::vector<bool> keep_mask(p.num_points(), false);
    for (std::size_t v : keep) {
        if (v >= p.num_points()) throw IndexOutOfRange("restrict_poly: variable out of range");
        keep_mask[v] = true;
    }
    Poly out = Poly::point_vars(p.num_points(), p.field());
    for (const auto& [e, c] : p.terms()) {
        bool alive = true;
        for (std::size_t v = 0; v < p.num_points() && alive; ++v)
            if (e[v] && !keep_mask[v]) alive = false;
        if (alive) out.add_term(e, c);
    }
    return out;
}

unsigned long long d_const(std::size_t d) {
    if (d < 2) throw IndexOutOfRange("d_const: need d >= 2");
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), d, d / 2);
    return mpz_get_ui(r.get_mpz_t());
}

// ---------------------------------------------------------------------------
// Strength search: canonical Q-sides, linear solve for the co-factors
// ---------------------------------------------------------------------------

namespace {

std::vector<Poly> canonical_pool(std::size_t n, std::size_t max_deg, const Field& field,
                                 std::size_t pool_cap) {
    const unsigned p = field.characteristic();
    std::vector<Poly> pool;
    for (std::size_t deg = 1; deg <= max_deg; ++deg) {
        const std::vector<Exponents> monos = monomials_of_degree(n, deg);
        double log_count = double(monos.size()) * std::log2(double(p));
        if (log_count > 40)
            throw BudgetExceeded("strength search: canonical Q pool too large");
        std::vector<unsigned> coef(monos.size(), 0);
        for (;;) {
            // odometer over coefficient vectors
            std::size_t i = coef.size();
            while (i-- > 0) {
                if (++coef[i] < p) break;
                coef[i] = 0;
                if (i == 0) goto next_degree;
            }
            // canonical: first nonzero coefficient is 1
            {
                std::size_t first = 0;
                while (first < coef.size() && coef[first] == 0) ++first;
                if (first == coef.size() || coef[first] != 1) continue;
            }
            {
                Poly q = Poly::point_vars(n, field);
                for (std::size_t j = 0; j < monos.size(); ++j)
                    if (coef[j]) q.add_term(monos[j], Scalar::from_int(field, long(coef[j])));
                pool.push_back(std::move(q));
                if (pool.size() > pool_cap)
                    throw BudgetExceeded("strength search: canonical Q pool over the cap");
            }
        }
    next_degree:;
    }
    return pool;
}

std::optional<std::vector<StrengthTerm>> solve_for_cofactors(
    const Poly& p, const std::vector<const Poly*>& qs) {
    const std::size_t n = p.num_points(), d = p.degree();
    const Field field = p.field();
    const std::vector<Exponents> rows = monomials_of_degree(n, d);
    std::map<Exponents, std::size_t> row_of;
    for (std::size_t i = 0; i < rows.size(); ++i) row_of.emplace(rows[i], i);

    std::vector<std::vector<Exponents>> rmonos(qs.size());
    std::size_t total_cols = 0;
    for (std::size_t i = 0; i < qs.size(); ++i) {
        rmonos[i] = monomials_of_degree(n, d - qs[i]->degree());
        total_cols += rmonos[i].size();
    }

    ExactMatrix aug(rows.size(), total_cols + 1, field);
    std::size_t off = 0;
    Exponents sum(n);
    for (std::size_t i = 0; i < qs.size(); ++i) {
        for (std::size_t j = 0; j < rmonos[i].size(); ++j) {
            for (const auto& [qe, qc] : qs[i]->terms()) {
                for (std::size_t v = 0; v < n; ++v)
                    sum[v] = static_cast<std::uint8_t>(qe[v] + rmonos[i][j][v]);
                aug.at(row_of.at(sum), off + j) = qc;
            }
        }
        off += rmonos[i].size();
    }
    for (const auto& [e, c] : p.terms()) aug.at(row_of.at(e), total_cols) = c;

    RrefResult rr = rref(aug);
    for (std::size_t pc : rr.pivot_columns)
        if (pc == total_cols) return std::nullopt; // inconsistent

    std::vector<Scalar> x(total_cols, Scalar::zero(field));
    for (std::size_t i = 0; i < rr.pivot_columns.size(); ++i)
        x[rr.pivot_columns[i]] = rr.reduced.at(i, total_cols);

    std::vector<StrengthTerm> witness;
    off = 0;
    for (std::size_t i = 0; i < qs.size(); ++i) {
        Poly r = Poly::point_vars(n, field);
        for (std::size_t j = 0; j < rmonos[i].size(); ++j)
            if (!x[off + j].is_zero()) r.add_term(rmonos[i][j], x[off + j]);
        off += rmonos[i].size();
        if (!r.is_zero()) witness.push_back(StrengthTerm{*qs[i], std::move(r)});
    }
    return witness;
}

} // namespace

std::optional<std::vector<StrengthTerm>> strength_at_most(const Poly& p, std::size_t k,
                                                          const StrengthOptions& opts) {
    if (p.universe() != VarUniverse::points)
        throw Error("strength_at_most: point-variable polynomial required");
    if (p.is_zero()) return std::vector<StrengthTerm>{};
    if (!p.field().is_finite())
        throw UnsupportedField("strength decisions need a finite field");
    const std::size_t d = p.degree();
    if (d < 2) throw IndexOutOfRange("strength is defined for degree >= 2");
    if (!p.is_homogeneous()) throw Error("strength_at_most: homogeneous polynomial required");
    check_characteristic(p.field(), d);

    const std::vector<Poly> pool =
        canonical_pool(p.num_points(), d / 2, p.field(), opts.pool_cap);
    std::uint64_t tried = 0;
    std::vector<const Poly*> tuple;
    std::optional<std::vector<StrengthTerm>> found;

    auto rec = [&](auto&& self, std::size_t start, std::size_t want) -> bool {
        if (want == 0) {
            if (++tried > opts.tuple_budget)
                throw BudgetExceeded("strength search exceeded the tuple budget");
            if (auto w = solve_for_cofactors(p, tuple)) {
                found = std::move(w);
                return true;
            }
            return false;
        }
        for (std::size_t i = start; i + want <= pool.size(); ++i) {
            tuple.push_back(&pool[i]);
            if (self(self, i + 1, want - 1)) return true;
            tuple.pop_back();
        }
        return false;
    };
    for (std::size_t j = 1; j <= k; ++j) {
        tuple.clear();
        if (rec(rec, 0, j)) return found;
    }
    return std::nullopt;
}

StrengthCertificate strength(const Poly& p, const StrengthOptions& opts) {
    if (p.is_zero()) return StrengthCertificate{0, {}, LowerBoundTag::exhaustive_search};
    const std::size_t kmax = p.term_count();
    for (std::size_t k = 1; k <= kmax; ++k)
        if (auto w = strength_at_most(p, k, opts))
            return StrengthCertificate{w->size(), std::move(*w), LowerBoundTag::exhaustive_search};
    throw Error("internal error: strength exceeded the monomial count");
}

Poly strength_witness_evaluate(const std::vector<StrengthTerm>& witness, std::size_t n,
                               const Field& field, std::size_t) {
    Poly acc = Poly::point_vars(n, field);
    for (const StrengthTerm& t : witness) acc = acc + t.q * t.r;
    return acc;
}

PartitionDecomposition strength_witness_to_prank(const std::vector<StrengthTerm>& witness,
                                                 std::size_t n, std::size_t d,
                                                 const Field& field) {
    PartitionDecomposition dec{std::vector<std::size_t>(d, n), field, {}};
    for (const StrengthTerm& term : witness) {
        const std::size_t e = term.q.degree();
        if (e < 1 || e >= d || term.r.degree() != d - e)
            throw Error("strength_witness_to_prank: bad degree split");
        const Tensor tq = psi(term.q);
        const Tensor tr = psi(term.r);
        for (std::uint32_t mask = 1; mask + 1 < (1u << d); ++mask) {
            std::vector<std::size_t> axes;
            for (std::size_t a = 0; a < d; ++a)
                if (mask & (1u << a)) axes.push_back(a);
            if (axes.size() != e) continue;
            PartitionTerm pt = (mask & 1)
                                   ? PartitionTerm{AxisSplit{axes}, tq, tr}
                                   : PartitionTerm{AxisSplit::canonical(axes, d), tr, tq};
            scale_first_nonzero(pt);
            dec.terms.push_back(std::move(pt));
        }
    }
    dec.sort_canonical();
    return dec;
}

std::vector<StrengthTerm> prank_witness_to_strength(const PartitionDecomposition& dec) {
    std::vector<StrengthTerm> witness;
    for (const PartitionTerm& term : dec.terms) {
        Poly q = phi(term.a);
        Poly r = phi(term.b);
        if (q.is_zero() || r.is_zero()) continue;
        witness.push_back(StrengthTerm{std::move(q), std::move(r)});
    }
    return witness;
}

// ---------------------------------------------------------------------------
// Restriction-pipeline walk
// ---------------------------------------------------------------------------

namespace {

Tensor zero_outside(const Tensor& t, const std::vector<bool>& keep) {
    Tensor out(t.dims(), t.field());
    for (std::size_t f = 0; f < t.size(); ++f) {
        if (t[f].is_zero()) continue;
        bool alive = true;
        for (std::size_t i : t.unflatten_index(f))
            if (!keep[i]) {
                alive = false;
                break;
            }
        if (alive) out[f] = t[f];
    }
    return out;
}

} // namespace

PipelineReport verify_restriction_pipeline(const Poly& p, std::size_t r, std::size_t size_cap,
                                     const StrengthOptions& opts) {
    PipelineReport rep{{}, true};
    auto add = [&](std::string name, bool pass, std::string note) {
        rep.all_pass = rep.all_pass && pass;
        rep.links.push_back(PipelineLink{std::move(name), pass, std::move(note)});
    };
    if (p.is_zero()) {
        add("zero-input", true, "P = 0: all strengths and ranks are 0");
        return rep;
    }

    const std::size_t n = p.num_points();
    const std::size_t d = p.degree();
    check_characteristic(p.field(), d);
    const unsigned long long D = d_const(d);
    const std::size_t cap = std::min(size_cap, n);

    // subsets of [n] of size 1..cap
    std::vector<std::vector<std::size_t>> subsets;
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        std::vector<std::size_t> u;
        for (std::size_t v = 0; v < n; ++v)
            if (mask & (1u << v)) u.push_back(v);
        if (u.size() <= cap) subsets.push_back(std::move(u));
    }

    // L1: restricted strengths are at most r
    std::vector<std::vector<StrengthTerm>> witnesses(subsets.size());
    bool l1 = true;
    std::string l1_note = std::to_string(subsets.size()) + " subsets checked";
    for (std::size_t i = 0; i < subsets.size() && l1; ++i) {
        auto w = strength_at_most(restrict_poly(p, subsets[i]), r, opts);
        if (!w) {
            l1 = false;
            l1_note = "strength(P[U]) > r for some U of size " +
                      std::to_string(subsets[i].size());
        } else {
            witnesses[i] = std::move(*w);
        }
    }
    add("restricted-strength <= r", l1, l1_note);

    // L2: T = psi(P) and phi(T) = d! P
    const Tensor t = psi(p);
    Poly dfacp = p.scaled(factorial_in(p.field(), d));
    add("phi(psi(P)) = d!*P", phi(t) == dfacp, "");

    // L3: restriction compatibility psi(P[U]) = T with non-U slices zeroed
    bool l3 = true;
    for (std::size_t i = 0; i < subsets.size() && l3; ++i) {
        std::vector<bool> keep(n, false);
        for (std::size_t v : subsets[i]) keep[v] = true;
        l3 = psi(restrict_poly(p, subsets[i]), d) == zero_outside(t, keep);
    }
    add("psi(P[U]) = T[U,..,U]", l3, "");

    // L4: transported witnesses bound the subtensor partition ranks by r*D
    bool l4 = l1;
    std::size_t worst = 0;
    if (l1) {
        for (std::size_t i = 0; i < subsets.size() && l4; ++i) {
            PartitionDecomposition dec =
                strength_witness_to_prank(witnesses[i], n, d, p.field());
            std::vector<bool> keep(n, false);
            for (std::size_t v : subsets[i]) keep[v] = true;
            if (!(dec.evaluate() == zero_outside(t, keep))) {
                l4 = false;
                break;
            }
            worst = std::max(worst, dec.length());
            if (dec.length() > r * D) l4 = false;
        }
    }
    add("prank(T[U,..,U]) <= r*D", l4,
        l4 ? "max transported witness length " + std::to_string(worst) + " <= " +
                 std::to_string(r * D)
           : "transported witness failed");
    return rep;
}

} // namespace partrank
