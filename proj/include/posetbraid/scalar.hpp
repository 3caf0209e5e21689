#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace pb {

// Coefficient domain for tensors and matrices: the rationals, or GF(p) for a
// prime p < 2^31. A Field value is cheap to copy and compares by content.
class Field {
public:
    static Field rationals() { return Field(0); }
    static Field prime(std::uint32_t p);

    bool is_rational() const { return p_ == 0; }
    bool is_prime() const { return p_ != 0; }
    // Characteristic: 0 for the rationals, p otherwise.
    std::uint32_t characteristic() const { return p_; }
    std::uint32_t modulus() const;

    bool operator==(const Field& o) const { return p_ == o.p_; }
    bool operator!=(const Field& o) const { return p_ != o.p_; }

    std::string name() const;                    // "Q" or "GF(p)"
    static Field parse(std::string_view text);   // inverse of name()

private:
    explicit Field(std::uint32_t p) : p_(p) {}
    std::uint32_t p_;   // 0 encodes the rationals
};

// Exact field element. Rational values are kept canonical (reduced, positive
// denominator) by GMP; prime-field values are residues in [0, p). Arithmetic
// between different fields throws std::invalid_argument.
class Scalar {
public:
    Scalar() : f_(Field::rationals()), q_(0), r_(0) {}

    static Scalar zero(const Field& f) { return from_int(f, 0); }
    static Scalar one(const Field& f) { return from_int(f, 1); }
    static Scalar from_int(const Field& f, long v);
    // Rational n/d in lowest terms; d must be nonzero.
    static Scalar rational(long n, long d);
    // Residue class of v in GF(p).
    static Scalar residue(const Field& f, std::uint64_t v);

    const Field& field() const { return f_; }

    bool is_zero() const;
    bool is_one() const;
    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator/(const Scalar& o) const;    // throws on zero divisor
    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
    Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

    Scalar inverse() const;                     // throws std::domain_error on zero
    Scalar pow(long e) const;                   // negative e inverts first

    // Canonical text form: "n" or "n/d" over Q, "k mod p" over GF(p).
    std::string str() const;
    static Scalar parse(const Field& f, std::string_view text);

    // Raw value access; each requires the matching field kind.
    const mpq_class& rational_value() const;
    std::uint64_t residue_value() const;

    // Total order used only for deterministic container ordering; it is not
    // an algebraic order.
    bool sort_before(const Scalar& o) const;

private:
    Scalar(const Field& f, mpq_class q, std::uint64_t r) : f_(f), q_(std::move(q)), r_(r) {}
    void require_same_field(const Scalar& o) const;

    Field f_;
    mpq_class q_;        // used when f_ is rational
    std::uint64_t r_;    // canonical residue when f_ is prime
};

// Exact n-th root when one exists in the field.
std::optional<Scalar> nth_root(const Scalar& a, unsigned n);

// Element of multiplicative order exactly n, when the field has one.
std::optional<Scalar> primitive_root_of_unity(const Field& f, unsigned n);

// Deterministic scalar source. Rational draws have numerator in [-100, 100]
// and denominator in [1, 100], so coefficient growth stays bounded in tests.
class ScalarRng {
public:
    explicit ScalarRng(std::uint64_t seed) : eng_(seed) {}

    Scalar uniform(const Field& f);
    Scalar nonzero(const Field& f);
    Scalar sign(const Field& f);                 // +1 or -1
    std::uint64_t below(std::uint64_t bound);    // uniform in [0, bound)

private:
    std::mt19937_64 eng_;
};

} // namespace pb
