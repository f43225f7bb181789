#pragma once

#include "btt/errors.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace btt {

class Scalar;
using Vec = std::vector<Scalar>;

// The coefficient field. p == 0 means the rationals, otherwise the prime
// field F_p. All arithmetic downstream is exact; no floating point anywhere.
struct FieldSpec {
    std::uint32_t p = 0;

    static FieldSpec rationals() { return FieldSpec{}; }
    static FieldSpec prime_field(std::uint32_t p);

    std::uint32_t characteristic() const { return p; }
    bool is_rationals() const { return p == 0; }

    bool operator==(const FieldSpec& o) const { return p == o.p; }
    bool operator!=(const FieldSpec& o) const { return p != o.p; }

    std::string str() const { return p == 0 ? "Q" : "F " + std::to_string(p); }
};

bool is_prime(std::uint64_t n);

// Exact field element: an arbitrary-precision rational kept in lowest terms
// with positive denominator (mpq_class canonical form), or a residue in
// [0, p) for prime fields.
class Scalar {
public:
    Scalar() = default; // zero over Q
    explicit Scalar(const FieldSpec& f) : p_(f.p) {}
    Scalar(const FieldSpec& f, long value);
    Scalar(const FieldSpec& f, const mpq_class& value);

    static Scalar zero(const FieldSpec& f) { return Scalar(f); }
    static Scalar one(const FieldSpec& f) { return Scalar(f, 1); }
    // Parses "a" or "a/b" (Q) resp. an integer literal (F_p), reducing mod p.
    static Scalar parse(const FieldSpec& f, const std::string& text);

    FieldSpec field() const { return FieldSpec{p_}; }

    bool is_zero() const { return p_ == 0 ? q_ == 0 : r_ == 0; }
    bool is_one() const { return p_ == 0 ? q_ == 1 : r_ == 1; }

    Scalar operator-() const;
    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator/(const Scalar& o) const;
    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

    Scalar inverse() const;

    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    // Total order used only for deterministic tie-breaking in printing.
    bool operator<(const Scalar& o) const;

    // The rational value (Q only) resp. the residue (F_p only).
    const mpq_class& rational() const;
    std::uint32_t residue() const;

    // Reduction Q -> F_p; fails if the denominator vanishes mod p.
    Scalar reduce_mod(std::uint32_t p) const;

    std::string str() const;

private:
    void check_same_field(const Scalar& o) const;

    std::uint32_t p_ = 0;
    mpq_class q_;        // used iff p_ == 0
    std::uint32_t r_ = 0; // used iff p_ > 0
};

Vec zero_vec(const FieldSpec& f, int n);
bool vec_is_zero(const Vec& v);
Vec vec_add(const Vec& a, const Vec& b);
Vec vec_sub(const Vec& a, const Vec& b);
Vec vec_scale(const Scalar& c, const Vec& v);

} // namespace btt
