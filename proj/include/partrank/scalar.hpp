#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include <gmpxx.h>

#include "partrank/errors.hpp"

namespace partrank {

/// Coefficient domain: GF(p) for a small prime p, or exact rationals
/// (characteristic 0). Non-prime orders are not supported.
class Field {
public:
    static Field rational() { return Field{0}; }
    static Field gf(unsigned p);

    bool is_rational() const { return char_ == 0; }
    bool is_finite() const { return char_ != 0; }
    unsigned characteristic() const { return char_; }

    /// Number of elements; only valid for finite fields.
    unsigned size() const { return char_; }

    bool operator==(const Field&) const = default;

    std::string name() const { return char_ == 0 ? "rational" : "gf" + std::to_string(char_); }

private:
    explicit Field(unsigned c) : char_(c) {}
    unsigned char_;
};

inline Field Field::gf(unsigned p) {
    switch (p) {
    case 2: case 3: case 5: case 7: case 11: case 13:
        return Field{p};
    default:
        throw UnsupportedField("unsupported prime field GF(" + std::to_string(p) + ")");
    }
}

/// Exact field element. Prime-field values are kept reduced to [0,p);
/// rationals are kept in lowest terms with positive denominator (GMP
/// canonical form). Arithmetic never rounds.
class Scalar {
    struct Fp {
        unsigned p;
        unsigned v; // in [0,p)
        bool operator==(const Fp&) const = default;
    };

public:
    Scalar() : rep_(Fp{2, 0}) {}

    static Scalar zero(const Field& f) { return from_int(f, 0); }
    static Scalar one(const Field& f) { return from_int(f, 1); }

    static Scalar from_int(const Field& f, long v) {
        if (f.is_rational()) return Scalar(mpq_class(v));
        unsigned p = f.characteristic();
        long r = v % static_cast<long>(p);
        if (r < 0) r += p;
        return Scalar(Fp{p, static_cast<unsigned>(r)});
    }

    static Scalar from_rational(mpq_class q) {
        q.canonicalize();
        return Scalar(std::move(q));
    }

    /// Image of an integer coefficient under the natural map Z -> K.
    static Scalar from_mpz(const Field& f, const mpz_class& z) {
        if (f.is_rational()) return Scalar(mpq_class(z));
        unsigned long r = mpz_fdiv_ui(z.get_mpz_t(), f.characteristic());
        return Scalar(Fp{f.characteristic(), static_cast<unsigned>(r)});
    }

    Field field() const {
        if (std::holds_alternative<mpq_class>(rep_)) return Field::rational();
        return Field::gf(std::get<Fp>(rep_).p);
    }

    bool is_zero() const {
        if (const Fp* f = std::get_if<Fp>(&rep_)) return f->v == 0;
        return sgn(std::get<mpq_class>(rep_)) == 0;
    }
    bool is_one() const {
        if (const Fp* f = std::get_if<Fp>(&rep_)) return f->v == 1;
        return std::get<mpq_class>(rep_) == 1;
    }

    const mpq_class& rational() const {
        if (!std::holds_alternative<mpq_class>(rep_))
            throw FieldMismatch("scalar is not rational");
        return std::get<mpq_class>(rep_);
    }
    unsigned fp_value() const {
        if (!std::holds_alternative<Fp>(rep_))
            throw FieldMismatch("scalar is not a prime-field element");
        return std::get<Fp>(rep_).v;
    }

    friend Scalar operator+(const Scalar& a, const Scalar& b) {
        if (const Fp* x = std::get_if<Fp>(&a.rep_)) {
            const Fp& y = b.fp_checked(x->p);
            return Scalar(Fp{x->p, (x->v + y.v) % x->p});
        }
        return Scalar(mpq_class(a.rational() + b.rational()));
    }
    friend Scalar operator-(const Scalar& a, const Scalar& b) {
        if (const Fp* x = std::get_if<Fp>(&a.rep_)) {
            const Fp& y = b.fp_checked(x->p);
            return Scalar(Fp{x->p, (x->v + x->p - y.v) % x->p});
        }
        return Scalar(mpq_class(a.rational() - b.rational()));
    }
    friend Scalar operator*(const Scalar& a, const Scalar& b) {
        if (const Fp* x = std::get_if<Fp>(&a.rep_)) {
            const Fp& y = b.fp_checked(x->p);
            return Scalar(Fp{x->p, (x->v * y.v) % x->p});
        }
        return Scalar(mpq_class(a.rational() * b.rational()));
    }
    friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }
    Scalar operator-() const {
        if (const Fp* x = std::get_if<Fp>(&rep_))
            return Scalar(Fp{x->p, x->v == 0 ? 0u : x->p - x->v});
        return Scalar(mpq_class(-rational()));
    }

    Scalar inverse() const {
        if (is_zero()) throw Error("division by zero");
        if (const Fp* x = std::get_if<Fp>(&rep_)) {
            // p is tiny; scan beats carrying an extended-gcd here
            for (unsigned u = 1; u < x->p; ++u)
                if ((u * x->v) % x->p == 1) return Scalar(Fp{x->p, u});
            throw Error("no inverse found (non-prime modulus?)");
        }
        return Scalar(mpq_class(1 / rational()));
    }

    bool operator==(const Scalar& o) const { return rep_ == o.rep_; }

    /// Total order used for canonical enumeration and sorting. Prime-field
    /// values order by representative; rationals by value.
    bool operator<(const Scalar& o) const {
        if (const Fp* x = std::get_if<Fp>(&rep_)) {
            const Fp& y = o.fp_checked(x->p);
            return x->v < y.v;
        }
        return rational() < o.rational();
    }

    /// Serialized form: "3" for field elements and integers, "3/7" for
    /// non-integral rationals.
    std::string str() const {
        if (const Fp* x = std::get_if<Fp>(&rep_)) return std::to_string(x->v);
        const mpq_class& q = std::get<mpq_class>(rep_);
        if (q.get_den() == 1) return q.get_num().get_str();
        return q.get_num().get_str() + "/" + q.get_den().get_str();
    }

    static Scalar parse(const Field& f, const std::string& s);

private:
    explicit Scalar(Fp f) : rep_(f) {}
    explicit Scalar(mpq_class q) : rep_(std::move(q)) {}

    const Fp& fp_checked(unsigned p) const {
        const Fp* f = std::get_if<Fp>(&rep_);
        if (!f || f->p != p) throw FieldMismatch("mixed-field scalar arithmetic");
        return *f;
    }

    std::variant<Fp, mpq_class> rep_;
};

inline Scalar Scalar::parse(const Field& f, const std::string& s) {
    if (s.empty()) throw ParseError("empty scalar literal");
    try {
        if (f.is_rational()) {
            mpq_class q(s);
            q.canonicalize();
            return from_rational(q);
        }
        // Finite field: accept an optional sign and reduce mod p.
        mpz_class z(s);
        return from_mpz(f, z);
    } catch (const std::invalid_argument&) {
        throw ParseError("bad scalar literal '" + s + "'");
    }
}

} // namespace partrank
