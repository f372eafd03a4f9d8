#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <variant>

#include "tropmirror/errors.hpp"

namespace tropmirror {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Field descriptor: the rationals, or a prime field F_p with p < 2^31.
class Field {
  public:
    enum class Kind { rationals, prime };

    static Field rationals() { return Field(Kind::rationals, 0); }

    static Field prime(std::int64_t p) {
        if (p < 2 || p >= (std::int64_t(1) << 31))
            throw DomainError("bad_modulus", "prime modulus must satisfy 2 <= p < 2^31");
        if (!is_prime(p))
            throw DomainError("bad_modulus", std::to_string(p) + " is not prime");
        return Field(Kind::prime, p);
    }

    Kind kind() const { return kind_; }
    std::int64_t modulus() const { return p_; }

    bool operator==(const Field& other) const = default;

    std::string name() const {
        return kind_ == Kind::rationals ? "Q" : "F_" + std::to_string(p_);
    }

  private:
    Field(Kind k, std::int64_t p) : kind_(k), p_(p) {}

    static bool is_prime(std::int64_t n) {
        if (n < 2) return false;
        for (std::int64_t d = 2; d * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    }

    Kind kind_;
    std::int64_t p_;
};

/// An element of an exact field: a rational in lowest terms with positive
/// denominator, or a residue in [0, p) of a prime field. Arithmetic between
/// elements of distinct fields is rejected.
class FieldElement {
  public:
    FieldElement() : field_(Field::rationals()), value_(Rational(0)) {}

    static FieldElement rational(Rational q) {
        return FieldElement(Field::rationals(), std::move(q));
    }
    static FieldElement rational(std::int64_t n) { return rational(Rational(n)); }
    static FieldElement rational(std::int64_t num, std::int64_t den) {
        if (den == 0) throw DomainError("division_by_zero", "rational with zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        return rational(Rational(num, den));
    }

    static FieldElement residue(std::int64_t v, const Field& f) {
        if (f.kind() != Field::Kind::prime)
            throw DomainError("bad_field", "residue requires a prime field");
        std::int64_t p = f.modulus();
        std::int64_t r = v % p;
        if (r < 0) r += p;
        return FieldElement(f, r);
    }

    /// The image of an integer in the given field.
    static FieldElement from_integer(std::int64_t n, const Field& f) {
        if (f.kind() == Field::Kind::rationals) return rational(n);
        return residue(n, f);
    }

    static FieldElement zero(const Field& f) { return from_integer(0, f); }
    static FieldElement one(const Field& f) { return from_integer(1, f); }

    /// Parses "p/q" or an integer literal; residues are given as integers.
    static FieldElement parse(const std::string& text, const Field& f);

    const Field& field() const { return field_; }
    bool is_zero() const;
    bool is_one() const { return *this == one(field_); }

    /// Rational value; only valid over Q.
    const Rational& rational_value() const {
        if (field_.kind() != Field::Kind::rationals)
            throw DomainError("bad_field", "not a rational element");
        return std::get<Rational>(value_);
    }
    /// Residue in [0, p); only valid over a prime field.
    std::int64_t residue_value() const {
        if (field_.kind() != Field::Kind::prime)
            throw DomainError("bad_field", "not a prime-field element");
        return std::get<std::int64_t>(value_);
    }

    FieldElement operator-() const;
    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement operator/(const FieldElement& o) const;
    FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
    FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
    FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }
    FieldElement& operator/=(const FieldElement& o) { return *this = *this / o; }

    bool operator==(const FieldElement& o) const {
        return field_ == o.field_ && value_ == o.value_;
    }
    bool operator!=(const FieldElement& o) const { return !(*this == o); }

    FieldElement pow(std::int64_t e) const;

    std::string to_string() const;

  private:
    FieldElement(Field f, Rational q) : field_(f), value_(std::move(q)) {}
    FieldElement(Field f, std::int64_t r) : field_(f), value_(r) {}

    void require_same_field(const FieldElement& o) const {
        if (!(field_ == o.field_))
            throw DomainError("mixed_field",
                              "operands live in " + field_.name() + " and " + o.field_.name());
    }

    Field field_;
    std::variant<Rational, std::int64_t> value_;
};

/// Multiplicative inverse. Rejects the zero element.
inline FieldElement inv(const FieldElement& x);

// ---------------------------------------------------------------------------

inline bool FieldElement::is_zero() const {
    if (field_.kind() == Field::Kind::rationals) return std::get<Rational>(value_) == 0;
    return std::get<std::int64_t>(value_) == 0;
}

inline FieldElement FieldElement::operator-() const {
    if (field_.kind() == Field::Kind::rationals)
        return FieldElement(field_, Rational(-std::get<Rational>(value_)));
    std::int64_t v = std::get<std::int64_t>(value_);
    return FieldElement(field_, v == 0 ? 0 : field_.modulus() - v);
}

inline FieldElement FieldElement::operator+(const FieldElement& o) const {
    require_same_field(o);
    if (field_.kind() == Field::Kind::rationals)
        return FieldElement(field_, Rational(std::get<Rational>(value_) + std::get<Rational>(o.value_)));
    std::int64_t s = std::get<std::int64_t>(value_) + std::get<std::int64_t>(o.value_);
    if (s >= field_.modulus()) s -= field_.modulus();
    return FieldElement(field_, s);
}

inline FieldElement FieldElement::operator-(const FieldElement& o) const { return *this + (-o); }

inline FieldElement FieldElement::operator*(const FieldElement& o) const {
    require_same_field(o);
    if (field_.kind() == Field::Kind::rationals)
        return FieldElement(field_, Rational(std::get<Rational>(value_) * std::get<Rational>(o.value_)));
    // p < 2^31, so the product of two residues fits in a signed 64-bit integer.
    std::int64_t prod = std::get<std::int64_t>(value_) * std::get<std::int64_t>(o.value_);
    return FieldElement(field_, prod % field_.modulus());
}

inline FieldElement inv(const FieldElement& x) {
    if (x.is_zero()) throw DomainError("division_by_zero", "inverse of zero");
    if (x.field().kind() == Field::Kind::rationals)
        return FieldElement::rational(Rational(1) / x.rational_value());
    // extended Euclid on (v, p)
    std::int64_t p = x.field().modulus();
    std::int64_t a = x.residue_value(), b = p;
    std::int64_t s0 = 1, s1 = 0;
    while (b != 0) {
        std::int64_t q = a / b;
        std::int64_t t = a - q * b;
        a = b;
        b = t;
        t = s0 - q * s1;
        s0 = s1;
        s1 = t;
    }
    return FieldElement::residue(s0, x.field());
}

inline FieldElement FieldElement::operator/(const FieldElement& o) const {
    return *this * inv(o);
}

inline FieldElement FieldElement::pow(std::int64_t e) const {
    if (e < 0) return inv(*this).pow(-e);
    FieldElement acc = one(field_);
    FieldElement base = *this;
    while (e > 0) {
        if (e & 1) acc *= base;
        base *= base;
        e >>= 1;
    }
    return acc;
}

inline FieldElement FieldElement::parse(const std::string& text, const Field& f) {
    if (text.empty()) throw DomainError("parse_error", "empty field element");
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            if (f.kind() == Field::Kind::rationals) return rational(Rational(BigInt(text)));
            BigInt n(text);
            BigInt r = n % f.modulus();
            if (r < 0) r += f.modulus();
            return residue(static_cast<std::int64_t>(r), f);
        }
        BigInt num(text.substr(0, slash));
        BigInt den(text.substr(slash + 1));
        if (den == 0) throw DomainError("division_by_zero", "zero denominator in " + text);
        if (den < 0) {
            num = -num;
            den = -den;
        }
        if (f.kind() == Field::Kind::rationals) return rational(Rational(num, den));
        BigInt rn = num % f.modulus(), rd = den % f.modulus();
        if (rn < 0) rn += f.modulus();
        if (rd < 0) rd += f.modulus();
        FieldElement e = residue(static_cast<std::int64_t>(rn), f);
        return e / residue(static_cast<std::int64_t>(rd), f);
    } catch (const std::runtime_error& e) {
        if (dynamic_cast<const DomainError*>(&e)) throw;
        throw DomainError("parse_error", "invalid field element '" + text + "'");
    }
}

inline std::string FieldElement::to_string() const {
    if (field_.kind() == Field::Kind::prime) return std::to_string(residue_value());
    const Rational& q = rational_value();
    std::string s = numerator(q).str();
    if (denominator(q) != 1) s += "/" + denominator(q).str();
    return s;
}

} // namespace tropmirror
