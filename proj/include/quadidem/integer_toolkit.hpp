#pragma once

#include <gmpxx.h>

#include <optional>
#include <vector>

#include "quadidem/quad_ring.hpp"

namespace quadidem {

/// g = gcd(a, b) >= 0 together with u, v satisfying u*a + v*b = g.
struct ExtendedGcd {
    mpz_class g, u, v;
};

ExtendedGcd extended_gcd(const mpz_class& a, const mpz_class& b);

/// Least nonnegative solution of the simultaneous congruences
/// x = r (mod m) for every (r, m) pair; moduli must be pairwise coprime.
mpz_class crt(const std::vector<std::pair<mpz_class, mpz_class>>& residues);

/// Extended nonnegative integer: the p-adic valuation, with v_p(0) = +infinity.
class Valuation {
public:
    static Valuation infinity() { return Valuation(true, 0); }
    static Valuation finite(unsigned long k) { return Valuation(false, k); }

    bool is_infinite() const { return infinite_; }
    unsigned long value() const {
        if (infinite_) throw Error("valuation is infinite");
        return value_;
    }

    bool operator==(const Valuation& o) const {
        return infinite_ == o.infinite_ && (infinite_ || value_ == o.value_);
    }
    bool is_zero() const { return !infinite_ && value_ == 0; }
    bool is_positive() const { return infinite_ || value_ > 0; }

private:
    Valuation(bool inf, unsigned long k) : infinite_(inf), value_(k) {}
    bool infinite_;
    unsigned long value_;
};

/// v_p(n) for prime p; NotPrime if p is not prime.
Valuation padic_valuation(const mpz_class& n, const mpz_class& p);

/// Deterministic Miller-Rabin (exact for inputs below 3.3e24).
bool is_prime(const mpz_class& n);

/// Factorization by trial division up to 10^6 with a Miller-Rabin backstop;
/// OutOfScope if a composite cofactor survives trial division.
std::vector<std::pair<mpz_class, unsigned long>> factorize(const mpz_class& n);

/// All divisors of |n| that are >= 2, ascending.
std::vector<mpz_class> divisors_ge2(const mpz_class& n);

/// Rectangular integer matrix in row-major order.
struct IntMat {
    size_t rows = 0, cols = 0;
    std::vector<mpz_class> data;

    IntMat() = default;
    IntMat(size_t r, size_t c) : rows(r), cols(c), data(r * c, mpz_class(0)) {}
    mpz_class& at(size_t r, size_t c) { return data[r * cols + c]; }
    const mpz_class& at(size_t r, size_t c) const { return data[r * cols + c]; }
};

/// Any integer solution s of A*s = target, or empty when target is outside the
/// column lattice of A. Decided exactly through a column Hermite reduction.
std::optional<std::vector<mpz_class>> solve_linear_integer_system(
    const IntMat& A, const std::vector<mpz_class>& target);

/// Basis of the integer kernel lattice {s : A*s = 0}, one vector per column.
std::vector<std::vector<mpz_class>> integer_kernel_basis(const IntMat& A);

/// Periodic continued fraction of sqrt(d): [a0; period repeating].
struct CfExpansion {
    mpz_class a0;
    std::vector<mpz_class> period;
};

CfExpansion cf_sqrt(const mpz_class& d);

/// Fundamental unit epsilon > 1 of the ring (generator of the unit group
/// modulo +-1). Whole form: first continued-fraction convergent of sqrt(d)
/// solving x^2 - d y^2 = +-1. Half form: minimal solution of a^2 - d b^2 = +-4.
QuadInt fundamental_unit(const RingSpec& ring);

/// Complete list of z with norm(z) = +-n, one representative per orbit under
/// multiplication by units and -1, each reduced into the real-embedding box
/// sqrt|n| <= z < epsilon*sqrt|n|. Results are memoized per (ring, |n|).
std::vector<QuadInt> solve_norm_equation(const RingSpec& ring, const mpz_class& n);

/// Canonical orbit representative used by solve_norm_equation; exposed so
/// membership "up to units" can be tested.
QuadInt reduce_to_unit_box(const QuadInt& z);

}  // namespace quadidem
