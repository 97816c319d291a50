#include "quadidem/quad_ring.hpp"

#include <cctype>
#include <ostream>
#include <sstream>

namespace quadidem {

namespace {

long mod4(long d) {
    long r = d % 4;
    return r < 0 ? r + 4 : r;
}

bool is_square_free(long d) {
    unsigned long n = d < 0 ? static_cast<unsigned long>(-(d + 1)) + 1 : static_cast<unsigned long>(d);
    for (unsigned long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return false;
        }
    }
    return true;
}

}  // namespace

RingSpec::RingSpec(long d) : d_(d) {
    if (d == 0 || d == 1) throw InvalidRing("d must not be 0 or 1");
    if (!is_square_free(d)) throw InvalidRing("d must be square-free");
    form_ = (mod4(d) == 1) ? Form::Half : Form::Whole;
    discriminant_ = (form_ == Form::Half) ? d : 4 * d;
}

std::string RingSpec::describe() const {
    std::ostringstream os;
    if (form_ == Form::Whole) {
        os << "Z[sqrt(" << d_ << ")]";
    } else {
        os << "Z[(1+sqrt(" << d_ << "))/2]";
    }
    return os.str();
}

QuadInt::QuadInt(const RingSpec& ring, mpz_class a, mpz_class b)
    : ring_(ring), a_(std::move(a)), b_(std::move(b)) {
    if (ring_.form() == Form::Half && mpz_odd_p(a_.get_mpz_t()) != mpz_odd_p(b_.get_mpz_t())) {
        throw InvalidRing("half-form numerators must have equal parity");
    }
}

QuadInt QuadInt::integer(const RingSpec& ring, const mpz_class& n) {
    if (ring.form() == Form::Half) return QuadInt(ring, 2 * n, 0);
    return QuadInt(ring, n, 0);
}

QuadInt QuadInt::from_coords(const RingSpec& ring, const mpz_class& u, const mpz_class& v) {
    if (ring.form() == Form::Half) return QuadInt(ring, 2 * u, 2 * v);
    return QuadInt(ring, u, v);
}

QuadInt QuadInt::sqrt_d(const RingSpec& ring) { return from_coords(ring, 0, 1); }

QuadInt QuadInt::omega(const RingSpec& ring) {
    if (ring.form() == Form::Half) return QuadInt(ring, 1, 1);
    return sqrt_d(ring);
}

bool QuadInt::is_one() const {
    if (ring_.form() == Form::Half) return a_ == 2 && b_ == 0;
    return a_ == 1 && b_ == 0;
}

bool QuadInt::is_rational_integer() const {
    if (b_ != 0) return false;
    if (ring_.form() == Form::Half) return mpz_even_p(a_.get_mpz_t());
    return true;
}

std::optional<mpz_class> QuadInt::as_integer() const {
    if (!is_rational_integer()) return std::nullopt;
    if (ring_.form() == Form::Half) return mpz_class(a_ / 2);
    return a_;
}

std::pair<mpz_class, mpz_class> QuadInt::omega_coords() const {
    if (ring_.form() == Form::Half) {
        // a + b*sqrt(d))/2 = m + n*omega with n = b, m = (a - b)/2.
        return {mpz_class((a_ - b_) / 2), b_};
    }
    return {a_, b_};
}

QuadInt QuadInt::from_omega_coords(const RingSpec& ring, const mpz_class& m, const mpz_class& n) {
    if (ring.form() == Form::Half) return QuadInt(ring, 2 * m + n, n);
    return QuadInt(ring, m, n);
}

QuadInt QuadInt::operator+(const QuadInt& v) const {
    check_same_ring(v);
    return QuadInt(ring_, a_ + v.a_, b_ + v.b_);
}

QuadInt QuadInt::operator-(const QuadInt& v) const {
    check_same_ring(v);
    return QuadInt(ring_, a_ - v.a_, b_ - v.b_);
}

QuadInt QuadInt::operator-() const { return QuadInt(ring_, -a_, -b_); }

QuadInt QuadInt::operator*(const QuadInt& v) const {
    check_same_ring(v);
    mpz_class pa = a_ * v.a_ + mpz_class(ring_.d()) * b_ * v.b_;
    mpz_class pb = a_ * v.b_ + b_ * v.a_;
    if (ring_.form() == Form::Half) {
        // Numerators live over denominator 4 here; the ring is closed, so both
        // halves are exact.
        return QuadInt(ring_, pa / 2, pb / 2);
    }
    return QuadInt(ring_, pa, pb);
}

QuadInt QuadInt::operator*(const mpz_class& k) const { return QuadInt(ring_, a_ * k, b_ * k); }

bool QuadInt::operator==(const QuadInt& v) const {
    return ring_ == v.ring_ && a_ == v.a_ && b_ == v.b_;
}

QuadInt QuadInt::conj() const { return QuadInt(ring_, a_, -b_); }

mpz_class QuadInt::norm() const {
    mpz_class n = a_ * a_ - mpz_class(ring_.d()) * b_ * b_;
    if (ring_.form() == Form::Half) return mpz_class(n / 4);
    return n;
}

mpz_class QuadInt::trace() const {
    if (ring_.form() == Form::Half) return a_;
    return 2 * a_;
}

bool QuadInt::is_unit() const {
    mpz_class n = norm();
    return n == 1 || n == -1;
}

std::optional<QuadInt> QuadInt::try_divide(const QuadInt& v) const {
    check_same_ring(v);
    if (v.is_zero()) throw DivisionByZero();
    QuadInt w = *this * v.conj();
    mpz_class n = v.norm();
    mpz_class qa, qb, ra, rb;
    mpz_tdiv_qr(qa.get_mpz_t(), ra.get_mpz_t(), w.a_.get_mpz_t(), n.get_mpz_t());
    mpz_tdiv_qr(qb.get_mpz_t(), rb.get_mpz_t(), w.b_.get_mpz_t(), n.get_mpz_t());
    if (ra != 0 || rb != 0) return std::nullopt;
    if (ring_.form() == Form::Half && mpz_odd_p(qa.get_mpz_t()) != mpz_odd_p(qb.get_mpz_t())) {
        return std::nullopt;
    }
    return QuadInt(ring_, qa, qb);
}

QuadInt QuadInt::unit_inverse() const {
    mpz_class n = norm();
    if (n == 1) return conj();
    if (n == -1) return -conj();
    throw PreconditionViolated("unit_inverse of a non-unit");
}

QuadInt QuadInt::pow(long exp) const {
    if (exp < 0) return unit_inverse().pow(-exp);
    QuadInt result = QuadInt::integer(ring_, 1);
    QuadInt base = *this;
    while (exp > 0) {
        if (exp & 1) result = result * base;
        base = base * base;
        exp >>= 1;
    }
    return result;
}

int QuadInt::sign_real() const {
    if (!ring_.is_real()) throw NotRealQuadratic("sign_real requires d > 0");
    int sa = mpz_sgn(a_.get_mpz_t());
    int sb = mpz_sgn(b_.get_mpz_t());
    if (sa == 0 && sb == 0) return 0;
    if (sa >= 0 && sb >= 0) return 1;
    if (sa <= 0 && sb <= 0) return -1;
    // Opposite signs: compare a^2 against d*b^2 (equality impossible, d square-free).
    mpz_class lhs = a_ * a_;
    mpz_class rhs = mpz_class(ring_.d()) * b_ * b_;
    if (sa > 0) return lhs > rhs ? 1 : -1;
    return lhs > rhs ? -1 : 1;
}

mpz_class QuadInt::height() const {
    mpz_class ha = abs(a_), hb = abs(b_);
    return ha > hb ? ha : hb;
}

std::string QuadInt::str() const { return render_quadint(*this); }

std::ostream& operator<<(std::ostream& os, const QuadInt& q) { return os << q.str(); }

namespace {

struct Cursor {
    const std::string& s;
    size_t i = 0;

    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool eat(char c) {
        skip_ws();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    mpz_class integer() {
        skip_ws();
        bool negative = false;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
            negative = s[i] == '-';
            ++i;
            skip_ws();
        }
        size_t start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == start) throw ParseError("expected integer in '" + s + "'");
        mpz_class v(s.substr(start, i - start));
        return negative ? mpz_class(-v) : v;
    }
    bool done() {
        skip_ws();
        return i == s.size();
    }
};

// a | a+b*s | a-b*s | b*s, returning coordinates of a + b*sqrt(d).
std::pair<mpz_class, mpz_class> parse_linear(Cursor& cur) {
    mpz_class first = cur.integer();
    if (cur.eat('*')) {
        if (!cur.eat('s')) throw ParseError("expected 's' after '*'");
        return {0, first};
    }
    cur.skip_ws();
    if (cur.i < cur.s.size() && (cur.s[cur.i] == '+' || cur.s[cur.i] == '-')) {
        mpz_class second = cur.integer();
        if (!cur.eat('*')) throw ParseError("expected '*' in coefficient term");
        if (!cur.eat('s')) throw ParseError("expected 's' after '*'");
        return {first, second};
    }
    return {first, 0};
}

}  // namespace

QuadInt parse_quadint(const RingSpec& ring, const std::string& text) {
    Cursor cur{text};
    cur.skip_ws();
    if (cur.i < cur.s.size() && cur.s[cur.i] == '(') {
        cur.eat('(');
        auto [a, b] = parse_linear(cur);
        if (!cur.eat(')')) throw ParseError("expected ')' in '" + text + "'");
        if (!cur.eat('/')) throw ParseError("expected '/2' in '" + text + "'");
        mpz_class den = cur.integer();
        if (den != 2) throw ParseError("only denominator 2 is supported");
        if (!cur.done()) throw ParseError("trailing characters in '" + text + "'");
        if (ring.form() != Form::Half) {
            throw ParseError("half-form syntax is invalid for d = " + std::to_string(ring.d()));
        }
        return QuadInt(ring, a, b);
    }
    auto [a, b] = parse_linear(cur);
    if (!cur.done()) throw ParseError("trailing characters in '" + text + "'");
    return QuadInt::from_coords(ring, a, b);
}

std::string render_quadint(const QuadInt& q) {
    const RingSpec& ring = q.ring();
    mpz_class a = q.a(), b = q.b();
    bool halved = false;
    if (ring.form() == Form::Half) {
        if (mpz_even_p(a.get_mpz_t()) && mpz_even_p(b.get_mpz_t())) {
            a /= 2;
            b /= 2;
        } else {
            halved = true;
        }
    }
    std::ostringstream os;
    if (halved) os << '(';
    if (b == 0) {
        os << a.get_str();
    } else {
        os << a.get_str() << (b > 0 ? "+" : "-") << mpz_class(abs(b)).get_str() << "*s";
    }
    if (halved) os << ")/2";
    return os.str();
}

}  // namespace quadidem
