#pragma once

#include <string>
#include <vector>

#include "quadidem/quad_ring.hpp"

namespace quadidem {

/// Exact 2x2 matrix over a quadratic integer ring; all entries share one ring.
class Mat2 {
public:
    Mat2(QuadInt e11, QuadInt e12, QuadInt e21, QuadInt e22);

    /// The row matrix (x y; 0 0).
    static Mat2 row(const QuadInt& x, const QuadInt& y);
    static Mat2 zero(const RingSpec& ring);
    static Mat2 identity(const RingSpec& ring);

    const RingSpec& ring() const { return e11_.ring(); }
    const QuadInt& e11() const { return e11_; }
    const QuadInt& e12() const { return e12_; }
    const QuadInt& e21() const { return e21_; }
    const QuadInt& e22() const { return e22_; }

    Mat2 operator*(const Mat2& o) const;
    Mat2 operator-(const Mat2& o) const;
    bool operator==(const Mat2& o) const;
    bool operator!=(const Mat2& o) const { return !(*this == o); }

    QuadInt det() const;
    QuadInt trace() const;
    bool is_zero() const;
    bool is_singular() const { return det().is_zero(); }
    bool is_idempotent() const { return (*this) * (*this) == *this; }

    Mat2 transpose() const;
    Mat2 conj() const;            // entrywise sqrt(d) -> -sqrt(d)
    Mat2 conj_transpose() const;  // the H operator

    std::string str() const;

private:
    QuadInt e11_, e12_, e21_, e22_;
};

/// An idempotent matrix; the T*T = T invariant is checked at construction.
class IdempotentMat {
public:
    explicit IdempotentMat(Mat2 inner);

    const Mat2& mat() const { return inner_; }
    const RingSpec& ring() const { return inner_.ring(); }

    /// P * F * Pinv, validated to stay idempotent (P * Pinv must be I).
    IdempotentMat conjugated(const Mat2& p, const Mat2& p_inv) const;
    IdempotentMat transposed() const { return IdempotentMat(inner_.transpose()); }

    bool operator==(const IdempotentMat& o) const { return inner_ == o.inner_; }

private:
    Mat2 inner_;
};

/// Which pipeline rule emitted a block of factors.
enum class Rule {
    ZeroCase,
    Swap,
    IntegerXReduce,
    PeelCommonFactor,
    WeakChain,
    Step1,
    Step2Shift,
    Step3ShiftA,
    Step3ShiftB,
    ColumnRowSplit,
    Ansatz,
    Oracle,
};

std::string rule_name(Rule rule);

struct TraceStep {
    Rule rule;
    std::string detail;
};

/// An ordered idempotent factorization together with the provenance of each
/// pipeline decision. Invariant: the exact product of factors equals target.
struct FactorizationTrace {
    Mat2 target;
    std::vector<IdempotentMat> factors;
    std::vector<TraceStep> steps;

    /// Exact product of the factors (empty product = identity convention is
    /// never used; every trace carries at least one factor).
    Mat2 product() const;
    /// Recomputes the product and compares with target.
    bool self_check() const;
};

}  // namespace quadidem
