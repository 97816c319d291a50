#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <optional>
#include <string>

#include "quadidem/errors.hpp"

namespace quadidem {

/// Integral-basis form of the ring of integers of Q[sqrt(d)].
/// Whole: Z[sqrt(d)] (d = 2,3 mod 4), Half: Z[(1+sqrt(d))/2] (d = 1 mod 4).
enum class Form { Whole, Half };

/// Describes a quadratic integer ring by its square-free radicand d.
/// Validated on construction: d must be square-free and not 0 or 1.
class RingSpec {
public:
    explicit RingSpec(long d);

    long d() const { return d_; }
    Form form() const { return form_; }
    long discriminant() const { return discriminant_; }

    bool is_real() const { return d_ > 0; }

    bool operator==(const RingSpec& other) const {
        return d_ == other.d_;  // form and discriminant are functions of d
    }
    bool operator!=(const RingSpec& other) const { return !(*this == other); }

    std::string describe() const;

private:
    long d_;
    Form form_;
    long discriminant_;
};

/// An element of the ring of integers of Q[sqrt(d)], stored exactly.
///
/// Whole form: value is a + b*sqrt(d).
/// Half form: value is (a + b*sqrt(d))/2 with a = b (mod 2); every element
/// keeps the denominator 2, so each value has a unique (a, b) pair.
class QuadInt {
public:
    QuadInt(const RingSpec& ring, mpz_class a, mpz_class b);

    /// The rational integer n as a ring element.
    static QuadInt integer(const RingSpec& ring, const mpz_class& n);
    /// u + v*sqrt(d) for rational integers u, v (valid in both forms).
    static QuadInt from_coords(const RingSpec& ring, const mpz_class& u, const mpz_class& v);
    /// sqrt(d) itself.
    static QuadInt sqrt_d(const RingSpec& ring);
    /// Second element of the integral basis: sqrt(d) (Whole) or (1+sqrt(d))/2 (Half).
    static QuadInt omega(const RingSpec& ring);

    const RingSpec& ring() const { return ring_; }
    const mpz_class& a() const { return a_; }
    const mpz_class& b() const { return b_; }

    bool is_zero() const { return a_ == 0 && b_ == 0; }
    bool is_one() const;

    /// True when the value lies in Z; as_integer() gives the value.
    bool is_rational_integer() const;
    std::optional<mpz_class> as_integer() const;

    /// Coordinates over the integral basis (1, omega).
    std::pair<mpz_class, mpz_class> omega_coords() const;
    static QuadInt from_omega_coords(const RingSpec& ring, const mpz_class& m, const mpz_class& n);

    QuadInt operator+(const QuadInt& v) const;
    QuadInt operator-(const QuadInt& v) const;
    QuadInt operator-() const;
    QuadInt operator*(const QuadInt& v) const;
    QuadInt operator*(const mpz_class& k) const;

    bool operator==(const QuadInt& v) const;
    bool operator!=(const QuadInt& v) const { return !(*this == v); }

    QuadInt conj() const;
    mpz_class norm() const;
    /// y + conj(y), always a rational integer.
    mpz_class trace() const;
    bool is_unit() const;

    /// Exact quotient *this / v when v divides *this in the ring; empty otherwise.
    std::optional<QuadInt> try_divide(const QuadInt& v) const;

    /// Inverse of a unit; PreconditionViolated otherwise.
    QuadInt unit_inverse() const;

    QuadInt pow(long exp) const;  // exp >= 0, or any exp for units

    /// Sign of the real embedding a + b*sqrt(d) (requires d > 0).
    int sign_real() const;

    /// Larger absolute coordinate; the search "height" of the element.
    mpz_class height() const;

    std::string str() const;

    friend std::ostream& operator<<(std::ostream& os, const QuadInt& q);

private:
    void check_same_ring(const QuadInt& v) const {
        if (ring_ != v.ring_) throw MixedRings();
    }

    RingSpec ring_;
    mpz_class a_, b_;
};

/// Parses the element syntax `a`, `a+b*s`, `a-b*s`, `(a+b*s)/2`.
QuadInt parse_quadint(const RingSpec& ring, const std::string& text);

/// Renders in the same syntax; parse_quadint(ring, render(q)) == q.
std::string render_quadint(const QuadInt& q);

}  // namespace quadidem
