#pragma once

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "quadidem/mat2.hpp"
#include "quadidem/quad_ring.hpp"
#include "quadidem/weak_algo.hpp"

namespace quadidem {

constexpr unsigned kDefaultChainBudget = 12;
constexpr long kDefaultAnsatzHeight = 24;

/// Which factorization guarantees a ring enjoys.
enum class RingClass {
    SupportedRealQuadratic,  // d > 0: full pipeline
    EuclideanImaginary,      // d in {-1,-2,-3,-7,-11}: chains by norm descent
    NotID2Imaginary,         // other d < 0: singular matrices may not factor
};

RingClass cohn_gate(const RingSpec& ring);
std::string ring_class_name(RingClass c);

/// Trace for (y x; 0 0) from a trace for (x y; 0 0): conjugate every factor by
/// the antidiagonal permutation and prepend (1 1; 0 0).
FactorizationTrace swap_factorization(const FactorizationTrace& trace);

/// One recorded move of the integer-x reduction.
struct ReduceMove {
    enum class Kind { SubtractMultiple, Swap } kind;
    QuadInt q;  // meaningful for SubtractMultiple: (u, v) -> (u, v - q u)

    static ReduceMove subtract(QuadInt q) { return {Kind::SubtractMultiple, std::move(q)}; }
    static ReduceMove swap(const RingSpec& ring) {
        return {Kind::Swap, QuadInt::integer(ring, 0)};
    }
};

struct IntegerReduction {
    std::vector<ReduceMove> moves;  // forward moves sending (x, y) to (alpha, w)
    mpz_class alpha;
    QuadInt w;
};

/// Drives the sqrt(d)-coordinates of (x, y) to zero in the first component by
/// Euclidean division and swaps; replaying the moves backward turns a
/// factorization of [alpha w] into one of [x y].
IntegerReduction reduce_to_integer_x(const QuadInt& x, const QuadInt& y);

struct Step1Result {
    IdempotentMat u;         // the split-off idempotent factor
    mpz_class x_prime;       // rational integer
    QuadInt y_prime;
    mpz_class m, lambda;     // m = gcd(|x|, |norm y|), lambda = norm(y)/m
    mpz_class a_prime, t;    // Bezout pair with a'*x + t*lambda = 1
};

/// Splits (x y; 0 0) = (x' y'; 0 0) * U with U idempotent and x' coprime to
/// norm(y'). Requires x a nonzero rational integer, m > 1, gcd(|x|, |lambda|)
/// = 1 and no common non-unit factor.
Step1Result step1_factor(const QuadInt& x, const QuadInt& y);

struct Step2Context {
    mpz_class m;       // gcd(|x|, |norm y|)
    mpz_class lambda;  // norm(y)/m, sign kept
    mpz_class x0;      // x/m, sign kept
    mpz_class s;       // gcd(|x|, |lambda|)
    mpz_class y1, y2;  // stored coordinates of y
    mpz_class e;       // the chosen shift
    std::vector<mpz_class> a1, a2, a3;  // prime partition of the primes of x
    Rule rule;         // Step2Shift / Step3ShiftA / Step3ShiftB
};

/// Chooses e so that (x, y + e x) satisfies the coprime-split hypothesis with
/// the same m. Requires x a nonzero rational integer, s != 1, and no common
/// non-unit factor.
Step2Context shift_to_step1(const QuadInt& x, const QuadInt& y);

/// Complete factorization of (x y; 0 0) over a supported ring.
FactorizationTrace factor_row(const QuadInt& x, const QuadInt& y,
                              unsigned budget = kDefaultChainBudget);

struct ColumnRow {
    std::pair<QuadInt, QuadInt> col;
    std::pair<QuadInt, QuadInt> row;
};

/// A column-row decomposition of a singular matrix, available whenever one of
/// the four row/column pair ideals is principal.
std::optional<ColumnRow> as_column_row(const Mat2& m);

/// Trace for (xa xb; ya yb) from factorizations of [x y] and [a b].
FactorizationTrace factor_column_row(const ColumnRow& cr, unsigned budget = kDefaultChainBudget);

/// Searches for an idempotent pair (a, b, c) with U = (a b; c 1-a) and
/// conj_transpose(U) * U = m. The (a, b) row is scanned over the rank-2
/// lattice of rows proportional to m's row space, covering every solution
/// whose (a, b) coordinates are bounded by height_bound.
std::optional<std::tuple<QuadInt, QuadInt, QuadInt>> ansatz_uhu(const Mat2& m, long height_bound);

enum class SingularStatus { Factored, Unknown };

struct SingularOutcome {
    SingularStatus status;
    std::optional<FactorizationTrace> trace;
    std::map<std::string, std::string> diagnostics;
};

/// Full-matrix entry point: column-row route, then the conjugate-transpose
/// ansatz, then a bounded oracle search; Unknown (never a wrong answer)
/// when everything fails.
SingularOutcome factor_singular(const Mat2& m, unsigned budget = kDefaultChainBudget,
                                long ansatz_height = kDefaultAnsatzHeight,
                                long oracle_height = 5, unsigned oracle_len = 3);

}  // namespace quadidem
