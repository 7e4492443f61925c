#include "partrank/poly.hpp"

#include <numeric>
#include <sstream>

namespace partrank {

Poly::Poly(VarUniverse u, std::vector<std::size_t> sizes, const Field& field)
    : universe_(u), sizes_(std::move(sizes)), field_(field) {
    var_count_ = 1;
    for (std::size_t s : sizes_) {
        if (s == 0) throw IndexOutOfRange("polynomial universe sizes must be positive");
        var_count_ *= s;
    }
    if (universe_ == VarUniverse::points) var_count_ = sizes_[0];
}

Poly Poly::tensor_vars(std::vector<std::size_t> axis_sizes, const Field& field) {
    if (axis_sizes.size() < 2)
        throw IndexOutOfRange("tensor-entry polynomials need order >= 2");
    return Poly(VarUniverse::tensor_entries, std::move(axis_sizes), field);
}

Poly Poly::point_vars(std::size_t n, const Field& field) {
    if (n == 0) throw IndexOutOfRange("point polynomials need n >= 1");
    return Poly(VarUniverse::points, {n}, field);
}

std::size_t Poly::var_id(const std::vector<std::size_t>& tuple) const {
    if (universe_ == VarUniverse::points) {
        if (tuple.size() != 1 || tuple[0] >= sizes_[0])
            throw IndexOutOfRange("bad point variable");
        return tuple[0];
    }
    if (tuple.size() != sizes_.size()) throw IndexOutOfRange("bad variable tuple");
    std::size_t id = 0;
    for (std::size_t i = 0; i < tuple.size(); ++i) {
        if (tuple[i] >= sizes_[i]) throw IndexOutOfRange("variable index out of range");
        id = id * sizes_[i] + tuple[i];
    }
    return id;
}

std::vector<std::size_t> Poly::var_tuple(std::size_t id) const {
    if (universe_ == VarUniverse::points) return {id};
    std::vector<std::size_t> tuple(sizes_.size());
    for (std::size_t i = sizes_.size(); i-- > 0;) {
        tuple[i] = id % sizes_[i];
        id /= sizes_[i];
    }
    return tuple;
}

void Poly::add_term(const Exponents& e, const Scalar& c) {
    if (e.size() != var_count_) throw IndexOutOfRange("exponent vector size mismatch");
    if (c.is_zero()) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
        return;
    }
    it->second = it->second + c;
    if (it->second.is_zero()) terms_.erase(it);
}

std::size_t Poly::degree() const {
    if (terms_.empty()) return 0;
    const Exponents& lead = terms_.rbegin()->first;
    return std::accumulate(lead.begin(), lead.end(), std::size_t{0});
}

bool Poly::is_homogeneous() const {
    if (terms_.empty()) return true;
    const std::size_t d = degree();
    for (const auto& [e, c] : terms_) {
        std::size_t t = std::accumulate(e.begin(), e.end(), std::size_t{0});
        if (t != d) return false;
    }
    return true;
}

const Exponents& Poly::leading_monomial() const {
    if (terms_.empty()) throw Error("zero polynomial has no leading monomial");
    return terms_.rbegin()->first;
}

Poly Poly::operator+(const Poly& o) const {
    Poly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
}

Poly Poly::operator-(const Poly& o) const {
    Poly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
    return r;
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
}

Poly Poly::scaled(const Scalar& s) const {
    Poly r(universe_, sizes_, field_);
    if (s.is_zero()) return r;
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, c * s);
    return r;
}

Poly Poly::operator*(const Poly& o) const {
    Poly r(universe_, sizes_, field_);
    Exponents e(var_count_);
    for (const auto& [ea, ca] : terms_)
        for (const auto& [eb, cb] : o.terms_) {
            for (std::size_t i = 0; i < var_count_; ++i) {
                unsigned s = unsigned(ea[i]) + unsigned(eb[i]);
                if (s > 255) throw Error("exponent overflow");
                e[i] = static_cast<std::uint8_t>(s);
            }
            r.add_term(e, ca * cb);
        }
    return r;
}

Poly Poly::variable(std::size_t var) const {
    Poly r(universe_, sizes_, field_);
    Exponents e(var_count_, 0);
    e.at(var) = 1;
    r.terms_.emplace(std::move(e), Scalar::one(field_));
    return r;
}

std::pair<Poly, Poly> Poly::split_by_var(std::size_t var) const {
    Poly high(universe_, sizes_, field_);
    Poly rest(universe_, sizes_, field_);
    for (const auto& [e, c] : terms_) {
        if (e[var] == 0) {
            rest.terms_.emplace(e, c);
        } else if (e[var] == 1) {
            Exponents q = e;
            q[var] = 0;
            high.terms_.emplace(std::move(q), c);
        } else {
            throw Error("split_by_var requires exponent <= 1 in the chosen variable");
        }
    }
    return {std::move(high), std::move(rest)};
}

Poly Poly::relabel(const std::vector<std::vector<std::size_t>>& perms) const {
    if (universe_ != VarUniverse::tensor_entries)
        throw Error("relabel applies to tensor-entry polynomials");
    if (perms.size() != sizes_.size()) throw IndexOutOfRange("permutation count mismatch");
    Poly r(universe_, sizes_, field_);
    for (const auto& [e, c] : terms_) {
        Exponents ne(var_count_, 0);
        for (std::size_t v = 0; v < var_count_; ++v) {
            if (e[v] == 0) continue;
            std::vector<std::size_t> t = var_tuple(v);
            for (std::size_t i = 0; i < t.size(); ++i) t[i] = perms[i].at(t[i]);
            ne[var_id(t)] = e[v];
        }
        r.add_term(ne, c);
    }
    return r;
}

Scalar map_coefficient(const Scalar& c, const Field& target) {
    if (c.field() == target) return c;
    if (c.field().is_rational() && target.is_finite()) {
        const mpq_class& q = c.rational();
        unsigned p = target.characteristic();
        if (mpz_fdiv_ui(q.get_den().get_mpz_t(), p) == 0)
            throw FieldMismatch("coefficient denominator divisible by the characteristic");
        Scalar num = Scalar::from_mpz(target, mpz_class(q.get_num()));
        Scalar den = Scalar::from_mpz(target, mpz_class(q.get_den()));
        return num / den;
    }
    throw FieldMismatch("no coefficient map between these fields");
}

Scalar Poly::evaluate(const Tensor& t) const {
    if (universe_ != VarUniverse::tensor_entries || t.dims() != sizes_)
        throw IndexOutOfRange("evaluate: tensor shape does not match the variable universe");
    Scalar acc = Scalar::zero(t.field());
    for (const auto& [e, c] : terms_) {
        Scalar prod = map_coefficient(c, t.field());
        for (std::size_t v = 0; v < var_count_ && !prod.is_zero(); ++v)
            for (std::uint8_t k = 0; k < e[v]; ++k) prod = prod * t[v];
        acc = acc + prod;
    }
    return acc;
}

Scalar Poly::evaluate_injection(const Tensor& t,
                                const std::vector<std::vector<std::size_t>>& inj) const {
    if (universe_ != VarUniverse::tensor_entries)
        throw IndexOutOfRange("evaluate_injection: tensor-entry universe required");
    if (inj.size() != sizes_.size()) throw IndexOutOfRange("injection count mismatch");
    Scalar acc = Scalar::zero(t.field());
    std::vector<std::size_t> pos(sizes_.size());
    for (const auto& [e, c] : terms_) {
        Scalar prod = map_coefficient(c, t.field());
        for (std::size_t v = 0; v < var_count_ && !prod.is_zero(); ++v) {
            if (e[v] == 0) continue;
            const std::vector<std::size_t> tup = var_tuple(v);
            for (std::size_t i = 0; i < tup.size(); ++i) pos[i] = inj[i].at(tup[i]);
            const Scalar& val = t.at(pos);
            for (std::uint8_t k = 0; k < e[v]; ++k) prod = prod * val;
        }
        acc = acc + prod;
    }
    return acc;
}

Scalar Poly::evaluate_points(const std::vector<Scalar>& values) const {
    if (universe_ != VarUniverse::points)
        throw IndexOutOfRange("evaluate_points: point universe required");
    if (values.size() != var_count_) throw IndexOutOfRange("value count mismatch");
    const Field f = values.empty() ? field_ : values[0].field();
    Scalar acc = Scalar::zero(f);
    for (const auto& [e, c] : terms_) {
        Scalar prod = map_coefficient(c, f);
        for (std::size_t v = 0; v < var_count_ && !prod.is_zero(); ++v)
            for (std::uint8_t k = 0; k < e[v]; ++k) prod = prod * values[v];
        acc = acc + prod;
    }
    return acc;
}

void Poly::normalize_integer_content() {
    if (!field_.is_rational())
        throw FieldMismatch("integer-content normalization needs rational coefficients");
    if (terms_.empty()) return;
    mpz_class lcm = 1, gcd = 0;
    for (const auto& [e, c] : terms_)
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.rational().get_den().get_mpz_t());
    for (const auto& [e, c] : terms_) {
        mpq_class v = c.rational() * lcm;
        mpz_gcd(gcd.get_mpz_t(), gcd.get_mpz_t(), v.get_num().get_mpz_t());
    }
    mpq_class factor(lcm, gcd); // multiply by lcm, divide by content
    factor.canonicalize();
    if (terms_.rbegin()->second.rational() * factor < 0) factor = -factor;
    for (auto& [e, c] : terms_) c = Scalar::from_rational(c.rational() * factor);
}

std::string Poly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        if (!first) os << " + ";
        first = false;
        os << c.str();
        for (std::size_t v = 0; v < var_count_; ++v) {
            if (e[v] == 0) continue;
            os << "*x";
            if (universe_ == VarUniverse::points) {
                os << (v + 1);
            } else {
                os << "_";
                for (std::size_t i : var_tuple(v)) os << (i + 1);
            }
            if (e[v] > 1) os << "^" << int(e[v]);
        }
    }
    return os.str();
}

std::vector<Exponents> monomials_of_degree(std::size_t nvars, std::size_t deg) {
    std::vector<Exponents> out;
    if (nvars == 0) return out;
    if (deg > 255) throw Error("monomials_of_degree: degree too large");
    Exponents e(nvars, 0);
    auto rec = [&](auto&& self, std::size_t pos, std::size_t rem) -> void {
        if (pos + 1 == nvars) {
            e[pos] = static_cast<std::uint8_t>(rem);
            out.push_back(e);
            e[pos] = 0;
            return;
        }
        for (std::size_t c = rem + 1; c-- > 0;) {
            e[pos] = static_cast<std::uint8_t>(c);
            self(self, pos + 1, rem - c);
        }
        e[pos] = 0;
    };
    rec(rec, 0, deg);
    return out;
}

long eval_mod_prime(const Poly& f, const std::vector<long>& values, long p) {
    if (values.size() != f.var_count()) throw IndexOutOfRange("value count mismatch");
    long acc = 0;
    for (const auto& [e, c] : f.terms()) {
        const mpq_class& q = c.rational();
        if (q.get_den() != 1) throw FieldMismatch("eval_mod_prime needs integer coefficients");
        long term = static_cast<long>(mpz_fdiv_ui(q.get_num().get_mpz_t(),
                                                  static_cast<unsigned long>(p)));
        for (std::size_t v = 0; v < values.size() && term != 0; ++v) {
            long base = ((values[v] % p) + p) % p;
            for (std::uint8_t k = 0; k < e[v]; ++k) term = (term * base) % p;
        }
        acc = (acc + term) % p;
    }
    return acc;
}

} // namespace partrank
