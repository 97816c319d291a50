#include "quadidem/factorizer.hpp"

#include <algorithm>
#include <sstream>

#include "quadidem/divisibility.hpp"
#include "quadidem/integer_toolkit.hpp"
#include "quadidem/verifier_oracle.hpp"

namespace quadidem {

RingClass cohn_gate(const RingSpec& ring) {
    if (ring.d() > 0) return RingClass::SupportedRealQuadratic;
    switch (ring.d()) {
        case -1:
        case -2:
        case -3:
        case -7:
        case -11:
            return RingClass::EuclideanImaginary;
        default:
            return RingClass::NotID2Imaginary;
    }
}

std::string ring_class_name(RingClass c) {
    switch (c) {
        case RingClass::SupportedRealQuadratic: return "SupportedRealQuadratic";
        case RingClass::EuclideanImaginary: return "EuclideanImaginary";
        case RingClass::NotID2Imaginary: return "NotID2Imaginary";
    }
    return "?";
}

namespace {

struct RowFactors {
    std::vector<IdempotentMat> factors;
    std::vector<TraceStep> steps;
};

std::vector<IdempotentMat> conjugate_all(const std::vector<IdempotentMat>& factors, const Mat2& p,
                                         const Mat2& p_inv) {
    std::vector<IdempotentMat> out;
    out.reserve(factors.size());
    for (const IdempotentMat& f : factors) out.push_back(f.conjugated(p, p_inv));
    return out;
}

// [y x] factors from [x y] factors: prepend (1 1; 0 0), conjugate by the
// antidiagonal permutation.
std::vector<IdempotentMat> swap_row_factors(const std::vector<IdempotentMat>& factors,
                                            const RingSpec& ring) {
    QuadInt zero = QuadInt::integer(ring, 0);
    QuadInt one = QuadInt::integer(ring, 1);
    Mat2 w(zero, one, one, zero);
    std::vector<IdempotentMat> out;
    out.reserve(factors.size() + 1);
    out.emplace_back(Mat2(one, one, zero, zero));
    for (const IdempotentMat& f : factors) out.push_back(f.conjugated(w, w));
    return out;
}

// Closed form for (z 0; 0 0) = (1 -1; 0 0)(1 0; 1-z 0).
std::vector<IdempotentMat> zero_second_factors(const QuadInt& z) {
    const RingSpec& ring = z.ring();
    QuadInt zero = QuadInt::integer(ring, 0);
    QuadInt one = QuadInt::integer(ring, 1);
    std::vector<IdempotentMat> out;
    out.emplace_back(Mat2(one, -one, zero, zero));
    out.emplace_back(Mat2(one, zero, one - z, zero));
    return out;
}

// Closed form for (0 z; 0 0) = (1 0; 0 0)(0 z; 0 1).
std::vector<IdempotentMat> zero_first_factors(const QuadInt& z) {
    const RingSpec& ring = z.ring();
    QuadInt zero = QuadInt::integer(ring, 0);
    QuadInt one = QuadInt::integer(ring, 1);
    std::vector<IdempotentMat> out;
    out.emplace_back(Mat2(one, zero, zero, zero));
    out.emplace_back(Mat2(zero, z, zero, one));
    return out;
}

struct PipelineCtx {
    unsigned budget;
    int depth = 0;
};

RowFactors factor_row_impl(const QuadInt& x, const QuadInt& y, PipelineCtx& ctx);

// Weak-chain route for a pair known to admit a chain; retries with a doubled
// budget before giving up.
RowFactors chain_route(const QuadInt& x, const QuadInt& y, PipelineCtx& ctx,
                       const std::string& why) {
    for (int attempt = 0; attempt < 4; ++attempt) {
        unsigned budget = ctx.budget << attempt;
        if (auto chain = find_weak_chain(x, y, budget)) {
            RowFactors out;
            out.factors = chain_to_idempotents(*chain);
            std::ostringstream detail;
            detail << "len=" << chain->length() << " budget=" << budget;
            if (!why.empty()) detail << " " << why;
            out.steps.push_back({Rule::WeakChain, detail.str()});
            return out;
        }
    }
    throw SearchExhausted("no weak chain for [" + x.str() + ", " + y.str() + "] within budget " +
                          std::to_string(ctx.budget << 3));
}

RowFactors factor_row_impl(const QuadInt& x, const QuadInt& y, PipelineCtx& ctx) {
    if (++ctx.depth > 64) throw InternalError("factor_row recursion is too deep");
    struct DepthGuard {
        PipelineCtx& c;
        ~DepthGuard() { --c.depth; }
    } guard{ctx};

    const RingSpec& ring = x.ring();
    QuadInt zero = QuadInt::integer(ring, 0);
    QuadInt one = QuadInt::integer(ring, 1);

    if (x.is_zero() && y.is_zero()) {
        RowFactors out;
        out.factors.emplace_back(Mat2::zero(ring));
        out.steps.push_back({Rule::ZeroCase, "zero matrix"});
        return out;
    }
    if (y.is_zero()) {
        RowFactors out;
        out.factors = zero_second_factors(x);
        out.steps.push_back({Rule::ZeroCase, "y = 0 closed form"});
        return out;
    }
    if (x.is_zero()) {
        RowFactors out;
        out.factors = zero_first_factors(y);
        out.steps.push_back({Rule::ZeroCase, "x = 0 closed form"});
        return out;
    }

    if (cohn_gate(ring) == RingClass::EuclideanImaginary) {
        return chain_route(x, y, ctx, "norm-Euclidean ring");
    }
    if (x.is_unit() || y.is_unit()) {
        return chain_route(x, y, ctx, "unit shortcut");
    }

    if (!x.is_rational_integer()) {
        IntegerReduction red = reduce_to_integer_x(x, y);
        RowFactors sub = factor_row_impl(QuadInt::integer(ring, red.alpha), red.w, ctx);
        std::vector<IdempotentMat> factors = std::move(sub.factors);
        for (auto it = red.moves.rbegin(); it != red.moves.rend(); ++it) {
            if (it->kind == ReduceMove::Kind::Swap) {
                factors = swap_row_factors(factors, ring);
            } else {
                // (u, v) -> (u, v - q u) is conjugation by (1 q; 0 1); undo
                // with the inverse pair.
                Mat2 p(one, -it->q, zero, one);
                Mat2 p_inv(one, it->q, zero, one);
                factors = conjugate_all(factors, p, p_inv);
            }
        }
        RowFactors out;
        out.factors = std::move(factors);
        std::ostringstream detail;
        detail << red.moves.size() << " moves -> [" << red.alpha.get_str() << ", " << red.w.str()
               << "]";
        out.steps.push_back({Rule::IntegerXReduce, detail.str()});
        out.steps.insert(out.steps.end(), sub.steps.begin(), sub.steps.end());
        return out;
    }

    if (auto z = common_divisor(x, y)) {
        QuadInt xr = *x.try_divide(*z);
        QuadInt yr = *y.try_divide(*z);
        RowFactors sub = factor_row_impl(xr, yr, ctx);
        RowFactors out;
        out.factors = zero_second_factors(*z);
        out.factors.insert(out.factors.end(), sub.factors.begin(), sub.factors.end());
        out.steps.push_back({Rule::PeelCommonFactor, "z = " + z->str()});
        out.steps.insert(out.steps.end(), sub.steps.begin(), sub.steps.end());
        return out;
    }

    if (auto wit = comaximal_witness(x, y)) {
        return chain_route(x, y, ctx, "comaximal");
    }

    mpz_class xz = *x.as_integer();
    mpz_class m = gcd(abs(xz), abs(y.norm()));
    mpz_class lambda = y.norm() / m;
    mpz_class s = gcd(abs(xz), abs(lambda));

    if (s == 1) {
        Step1Result s1 = step1_factor(x, y);
        RowFactors sub = factor_row_impl(QuadInt::integer(ring, s1.x_prime), s1.y_prime, ctx);
        RowFactors out;
        out.factors = std::move(sub.factors);
        out.factors.push_back(s1.u);
        std::ostringstream detail;
        detail << "m=" << s1.m.get_str() << " lambda=" << s1.lambda.get_str() << " a'="
               << s1.a_prime.get_str() << " t=" << s1.t.get_str() << " -> ["
               << s1.x_prime.get_str() << ", " << s1.y_prime.str() << "]";
        out.steps.push_back({Rule::Step1, detail.str()});
        out.steps.insert(out.steps.end(), sub.steps.begin(), sub.steps.end());
        return out;
    }

    Step2Context sc = shift_to_step1(x, y);
    QuadInt shifted = y + x * sc.e;
    RowFactors sub = factor_row_impl(x, shifted, ctx);
    // [x y] = (1 e; 0 1) [x y+ex] (1 -e; 0 1).
    QuadInt e = QuadInt::integer(ring, sc.e);
    Mat2 p(one, e, zero, one);
    Mat2 p_inv(one, -e, zero, one);
    RowFactors out;
    out.factors = conjugate_all(sub.factors, p, p_inv);
    std::ostringstream detail;
    detail << "e=" << sc.e.get_str() << " m=" << sc.m.get_str() << " s=" << sc.s.get_str()
           << " -> [" << x.str() << ", " << shifted.str() << "]";
    out.steps.push_back({sc.rule, detail.str()});
    out.steps.insert(out.steps.end(), sub.steps.begin(), sub.steps.end());
    return out;
}

}  // namespace

FactorizationTrace swap_factorization(const FactorizationTrace& trace) {
    const Mat2& t = trace.target;
    if (!t.e21().is_zero() || !t.e22().is_zero()) {
        throw InvalidTrace("swap_factorization expects a row-matrix target");
    }
    if (!trace.self_check()) throw InvalidTrace("trace does not verify");
    FactorizationTrace out{Mat2::row(t.e12(), t.e11()),
                           swap_row_factors(trace.factors, t.ring()),
                           trace.steps};
    out.steps.push_back({Rule::Swap, "[x y] -> [y x]"});
    if (!out.self_check()) throw InternalError("swapped trace does not verify");
    return out;
}

IntegerReduction reduce_to_integer_x(const QuadInt& x, const QuadInt& y) {
    if (x.is_zero() || y.is_zero()) throw ZeroInput();
    if (x.ring() != y.ring()) throw MixedRings();
    const RingSpec& ring = x.ring();
    IntegerReduction red{{}, 0, y};
    QuadInt u = x, v = y;
    while (!u.is_rational_integer()) {
        if (v.b() == 0) {
            std::swap(u, v);
            red.moves.push_back(ReduceMove::swap(ring));
            continue;
        }
        // Euclidean step on the sqrt(d)-coordinates: v <- v - q u with
        // 0 <= b(v) - q b(u) < |b(u)|, then swap to keep dividing.
        mpz_class r;
        mpz_mod(r.get_mpz_t(), v.b().get_mpz_t(), u.b().get_mpz_t());
        mpz_class q = (v.b() - r) / u.b();
        QuadInt qi = QuadInt::integer(ring, q);
        v = v - u * qi;
        red.moves.push_back(ReduceMove::subtract(qi));
        std::swap(u, v);
        red.moves.push_back(ReduceMove::swap(ring));
    }
    red.alpha = *u.as_integer();
    red.w = v;
    return red;
}

Step1Result step1_factor(const QuadInt& x, const QuadInt& y) {
    if (x.ring() != y.ring()) throw MixedRings();
    const RingSpec& ring = x.ring();
    if (!x.is_rational_integer() || x.is_zero()) {
        throw PreconditionViolated("x must be a nonzero rational integer");
    }
    mpz_class xz = *x.as_integer();
    mpz_class m = gcd(abs(xz), abs(y.norm()));
    if (m <= 1) throw PreconditionViolated("m = gcd(|x|, |norm y|) must exceed 1");
    mpz_class lambda = y.norm() / m;
    mpz_class s = gcd(abs(xz), abs(lambda));
    if (s != 1) throw PreconditionViolated("s = gcd(|x|, |lambda|) = " + s.get_str() + " != 1");
    // A shared non-unit factor is allowed here: the split identity and the
    // coprimality of (x', norm y') only need s = 1, and both are re-verified
    // below.

    ExtendedGcd eg = extended_gcd(xz, lambda);
    const mpz_class& ap = eg.u;
    const mpz_class& t = eg.v;

    QuadInt e11 = QuadInt::integer(ring, xz * ap);
    QuadInt e12 = y * ap;
    QuadInt e21 = y.conj() * mpz_class(t * (xz / m));
    QuadInt e22 = QuadInt::integer(ring, 1 - xz * ap);
    IdempotentMat u(Mat2(e11, e12, e21, e22));

    Step1Result out{u, xz - t * lambda, y * mpz_class(1 + ap), m, lambda, ap, t};

    Mat2 lhs = Mat2::row(QuadInt::integer(ring, out.x_prime), out.y_prime) * u.mat();
    if (lhs != Mat2::row(x, y)) throw InternalError("coprime split identity failed");
    if (gcd(abs(out.x_prime), abs(out.y_prime.norm())) != 1) {
        throw InternalError("coprime split did not produce a coprime pair");
    }
    return out;
}

Step2Context shift_to_step1(const QuadInt& x, const QuadInt& y) {
    if (x.ring() != y.ring()) throw MixedRings();
    const RingSpec& ring = x.ring();
    if (!x.is_rational_integer() || x.is_zero()) {
        throw PreconditionViolated("x must be a nonzero rational integer");
    }
    if (y.is_zero()) throw PreconditionViolated("y must be nonzero");
    mpz_class xz = *x.as_integer();
    mpz_class m = gcd(abs(xz), abs(y.norm()));
    mpz_class lambda = y.norm() / m;
    mpz_class s = gcd(abs(xz), abs(lambda));
    if (s == 1) throw PreconditionViolated("s = 1: the coprime split applies directly");
    if (common_divisor(x, y)) throw PreconditionViolated("x, y share a non-unit factor");

    Step2Context ctx;
    ctx.m = m;
    ctx.lambda = lambda;
    ctx.x0 = xz / m;
    ctx.s = s;
    ctx.y1 = y.a();
    ctx.y2 = y.b();
    if (ring.form() == Form::Whole) {
        ctx.rule = Rule::Step2Shift;
    } else {
        // y in 2D means integer coordinates of equal parity.
        auto two = QuadInt::integer(ring, 2);
        ctx.rule = y.try_divide(two) ? Rule::Step3ShiftA : Rule::Step3ShiftB;
    }

    // The norm expands as |y + ex| = norm y + e x tr(y) + e^2 x^2, so the
    // shifted ratio is lambda + e x0 tr(y) + e^2 x0^2 m.
    mpz_class tr = y.trace();
    mpz_class probe = ctx.lambda + ctx.x0 * tr;
    std::vector<std::pair<mpz_class, mpz_class>> residues;
    for (const auto& [p, exp] : factorize(xz)) {
        Valuation vl = padic_valuation(lambda, p);
        Valuation vx0 = padic_valuation(ctx.x0, p);
        if (vl.is_zero() && vx0.is_zero()) {
            if (mpz_divisible_p(probe.get_mpz_t(), p.get_mpz_t())) {
                ctx.a1.push_back(p);
                residues.emplace_back(2, p);
            } else {
                ctx.a2.push_back(p);
                residues.emplace_back(1, p);
            }
        } else {
            ctx.a3.push_back(p);
            residues.emplace_back(1, p);
        }
    }
    ctx.e = crt(residues);

    mpz_class shifted_norm = (y + x * ctx.e).norm();
    if (gcd(abs(xz), abs(shifted_norm / m)) != 1 || gcd(abs(xz), abs(shifted_norm)) != m) {
        throw InternalError("shift did not reach the coprime-split hypothesis");
    }
    return ctx;
}

FactorizationTrace factor_row(const QuadInt& x, const QuadInt& y, unsigned budget) {
    if (x.ring() != y.ring()) throw MixedRings();
    RingClass gate = cohn_gate(x.ring());
    if (gate == RingClass::NotID2Imaginary) {
        throw NotRealQuadratic("ring refused (" + ring_class_name(gate) + "): d = " +
                               std::to_string(x.ring().d()) +
                               " is imaginary and not norm-Euclidean");
    }
    if (budget == 0) throw PreconditionViolated("budget must be positive");
    PipelineCtx ctx{budget};
    RowFactors rf = factor_row_impl(x, y, ctx);
    FactorizationTrace trace{Mat2::row(x, y), std::move(rf.factors), std::move(rf.steps)};
    if (!trace.self_check()) throw InternalError("row factorization does not verify");
    return trace;
}

namespace {

// Column-row decomposition against the first row: M = (g, w)^T (a, b) when
// (e11, e12) generates the principal ideal gD.
std::optional<ColumnRow> column_row_from_first_row(const Mat2& m) {
    const RingSpec& ring = m.ring();
    QuadInt zero = QuadInt::integer(ring, 0);
    QuadInt one = QuadInt::integer(ring, 1);
    if (m.e11().is_zero() && m.e12().is_zero()) {
        return ColumnRow{{zero, one}, {m.e21(), m.e22()}};
    }
    auto g = is_pair_principal(m.e11(), m.e12());
    if (!g) return std::nullopt;
    QuadInt a = *m.e11().try_divide(*g);
    QuadInt b = *m.e12().try_divide(*g);
    auto wit = comaximal_witness(a, b);
    if (!wit) throw InternalError("peeled pair is not comaximal");
    QuadInt w = m.e21() * wit->first + m.e22() * wit->second;
    ColumnRow cr{{*g, w}, {a, b}};
    Mat2 check(cr.col.first * cr.row.first, cr.col.first * cr.row.second,
               cr.col.second * cr.row.first, cr.col.second * cr.row.second);
    if (check != m) throw InternalError("column-row reconstruction failed");
    return cr;
}

Mat2 antidiag_conj(const Mat2& m) {
    QuadInt zero = QuadInt::integer(m.ring(), 0);
    QuadInt one = QuadInt::integer(m.ring(), 1);
    Mat2 w(zero, one, one, zero);
    return w * m * w;
}

}  // namespace

std::optional<ColumnRow> as_column_row(const Mat2& m) {
    if (!m.is_singular()) throw NotSingular();
    if (auto cr = column_row_from_first_row(m)) return cr;
    if (auto cr = column_row_from_first_row(m.transpose())) {
        // M = (c r)^T = r^T c^T.
        return ColumnRow{cr->row, cr->col};
    }
    if (auto cr = column_row_from_first_row(antidiag_conj(m))) {
        return ColumnRow{{cr->col.second, cr->col.first}, {cr->row.second, cr->row.first}};
    }
    if (auto cr = column_row_from_first_row(antidiag_conj(m).transpose())) {
        return ColumnRow{{cr->row.second, cr->row.first}, {cr->col.second, cr->col.first}};
    }
    return std::nullopt;
}

FactorizationTrace factor_column_row(const ColumnRow& cr, unsigned budget) {
    const QuadInt& x = cr.col.first;
    const QuadInt& y = cr.col.second;
    const QuadInt& a = cr.row.first;
    const QuadInt& b = cr.row.second;
    FactorizationTrace col_trace = factor_row(x, y, budget);
    FactorizationTrace row_trace = factor_row(a, b, budget);

    FactorizationTrace out{Mat2(x * a, x * b, y * a, y * b), {}, {}};
    out.steps.push_back({Rule::ColumnRowSplit, "col [" + x.str() + ", " + y.str() + "] row [" +
                                                   a.str() + ", " + b.str() + "]"});
    // (x 0; y 0) = transpose of [x y]: transpose every factor, reverse order.
    for (auto it = col_trace.factors.rbegin(); it != col_trace.factors.rend(); ++it) {
        out.factors.push_back(it->transposed());
    }
    out.factors.insert(out.factors.end(), row_trace.factors.begin(), row_trace.factors.end());
    out.steps.insert(out.steps.end(), col_trace.steps.begin(), col_trace.steps.end());
    out.steps.insert(out.steps.end(), row_trace.steps.begin(), row_trace.steps.end());
    if (!out.self_check()) throw InternalError("column-row factorization does not verify");
    return out;
}

namespace {

bool is_hermitian_shaped(const Mat2& m) {
    return m.e11().is_rational_integer() && m.e22().is_rational_integer() &&
           m.e21() == m.e12().conj();
}

// Scans c over the coordinate box for norm(c) = target, first hit wins.
std::optional<QuadInt> scan_norm_in_box(const RingSpec& ring, const mpz_class& target,
                                        long bound) {
    for (long ca = -bound; ca <= bound; ++ca) {
        for (long cb = -bound; cb <= bound; ++cb) {
            if (ring.form() == Form::Half && ((ca % 2 + 2) % 2) != ((cb % 2 + 2) % 2)) continue;
            QuadInt c(ring, ca, cb);
            if (c.norm() == target) return c;
        }
    }
    return std::nullopt;
}

}  // namespace

std::optional<std::tuple<QuadInt, QuadInt, QuadInt>> ansatz_uhu(const Mat2& m, long height_bound) {
    if (!m.is_singular()) throw NotSingular();
    if (!is_hermitian_shaped(m)) throw NotHermitianShape();
    const RingSpec& ring = m.ring();
    QuadInt zero = QuadInt::integer(ring, 0);
    QuadInt one = QuadInt::integer(ring, 1);

    auto check = [&](const QuadInt& a, const QuadInt& b, const QuadInt& c)
        -> std::optional<std::tuple<QuadInt, QuadInt, QuadInt>> {
        Mat2 u(a, b, c, one - a);
        if (!u.is_idempotent()) return std::nullopt;
        if (u.conj_transpose() * u == m) return std::make_tuple(a, b, c);
        return std::nullopt;
    };

    if (m.is_zero()) {
        // Full idempotent enumeration; conj_transpose(U) * U can vanish for
        // nonzero U only through norm cancellation.
        long h = std::min<long>(height_bound, 8);
        for (const Mat2& u : enumerate_idempotents(ring, h)) {
            if (u.e22() == one - u.e11() && u.conj_transpose() * u == m) {
                return std::make_tuple(u.e11(), u.e12(), u.e21());
            }
        }
        return std::nullopt;
    }

    // Direction (p, q) of the row space of m.
    QuadInt p = m.e11(), q = m.e12();
    if (p.is_zero() && q.is_zero()) {
        p = m.e21();
        q = m.e22();
    }

    if (q.is_zero()) {
        // Rows parallel to (1, 0) force U = (1 0; c 0).
        if (!m.e12().is_zero() || !m.e22().is_zero() || !m.e21().is_zero()) return std::nullopt;
        mpz_class target = *m.e11().as_integer() - 1;
        if (auto c = scan_norm_in_box(ring, target, height_bound)) return check(one, zero, *c);
        return std::nullopt;
    }
    if (p.is_zero()) {
        // Rows parallel to (0, 1) force U = (0 b; 0 1).
        if (!m.e11().is_zero() || !m.e12().is_zero() || !m.e21().is_zero()) return std::nullopt;
        mpz_class target = *m.e22().as_integer() - 1;
        if (auto b = scan_norm_in_box(ring, target, height_bound)) return check(zero, *b, zero);
        return std::nullopt;
    }

    // Rank-2 lattice of (a, b) with a q = b p, over integral-basis coordinates.
    QuadInt om = QuadInt::omega(ring);
    IntMat A(2, 4);
    const QuadInt cols[4] = {q, om * q, -p, -(om * p)};
    for (size_t j = 0; j < 4; ++j) {
        auto [cm, cn] = cols[j].omega_coords();
        A.at(0, j) = cm;
        A.at(1, j) = cn;
    }
    auto basis = integer_kernel_basis(A);
    if (basis.size() != 2) throw InternalError("row-direction lattice must have rank 2");

    // Coefficient bounds from Cramer on a coordinate pair with nonzero det:
    // coordinates of lattice points are bounded by height_bound.
    mpz_class coord_bound(height_bound);
    mpz_class best_h = -1, best_k = -1;
    for (size_t i = 0; i < 4; ++i) {
        for (size_t j = i + 1; j < 4; ++j) {
            mpz_class det = basis[0][i] * basis[1][j] - basis[0][j] * basis[1][i];
            if (det == 0) continue;
            mpz_class habs = abs(det);
            mpz_class hb = (coord_bound * (abs(basis[1][i]) + abs(basis[1][j]))) / habs + 1;
            mpz_class kb = (coord_bound * (abs(basis[0][i]) + abs(basis[0][j]))) / habs + 1;
            if (best_h < 0 || hb * kb < best_h * best_k) {
                best_h = hb;
                best_k = kb;
            }
        }
    }
    if (best_h < 0) throw InternalError("degenerate lattice basis");

    long hb = best_h.get_si(), kb = best_k.get_si();
    for (long h = -hb; h <= hb; ++h) {
        for (long k = -kb; k <= kb; ++k) {
            mpz_class ma = h * basis[0][0] + k * basis[1][0];
            mpz_class na = h * basis[0][1] + k * basis[1][1];
            mpz_class mb = h * basis[0][2] + k * basis[1][2];
            mpz_class nb = h * basis[0][3] + k * basis[1][3];
            QuadInt a = QuadInt::from_omega_coords(ring, ma, na);
            QuadInt b = QuadInt::from_omega_coords(ring, mb, nb);
            auto c = ((one - a) * p).try_divide(q);
            if (!c) continue;
            if (auto hit = check(a, b, *c)) return hit;
        }
    }
    return std::nullopt;
}

SingularOutcome factor_singular(const Mat2& m, unsigned budget, long ansatz_height,
                                long oracle_height, unsigned oracle_len) {
    if (!m.ring().is_real()) {
        throw NotRealQuadratic("factor_singular requires a real quadratic ring");
    }
    if (!m.is_singular()) throw NotSingular();

    SingularOutcome out{SingularStatus::Unknown, std::nullopt, {}};
    if (auto cr = as_column_row(m)) {
        out.status = SingularStatus::Factored;
        out.trace = factor_column_row(*cr, budget);
        return out;
    }

    auto principal_str = [&](const QuadInt& u, const QuadInt& v) -> std::string {
        if (u.is_zero() && v.is_zero()) return "zero pair";
        return is_pair_principal(u, v) ? "principal" : "non-principal";
    };
    out.diagnostics["row1_ideal"] = principal_str(m.e11(), m.e12());
    out.diagnostics["row2_ideal"] = principal_str(m.e21(), m.e22());
    out.diagnostics["col1_ideal"] = principal_str(m.e11(), m.e21());
    out.diagnostics["col2_ideal"] = principal_str(m.e12(), m.e22());

    if (is_hermitian_shaped(m)) {
        if (auto triple = ansatz_uhu(m, ansatz_height)) {
            auto [a, b, c] = *triple;
            QuadInt one = QuadInt::integer(m.ring(), 1);
            Mat2 u(a, b, c, one - a);
            FactorizationTrace trace{m, {}, {}};
            trace.factors.emplace_back(u.conj_transpose());
            trace.factors.emplace_back(u);
            trace.steps.push_back(
                {Rule::Ansatz, "a=" + a.str() + " b=" + b.str() + " c=" + c.str()});
            if (!trace.self_check()) throw InternalError("ansatz factorization does not verify");
            out.status = SingularStatus::Factored;
            out.trace = std::move(trace);
            return out;
        }
        out.diagnostics["ansatz"] =
            "no conjugate-transpose pair with coordinates up to " + std::to_string(ansatz_height);
    } else {
        out.diagnostics["ansatz"] = "not applicable: matrix is not conjugate-symmetric";
    }

    if (auto factors = brute_force_factor(m, oracle_height, oracle_len)) {
        FactorizationTrace trace{m, std::move(*factors), {}};
        trace.steps.push_back({Rule::Oracle,
                               "height=" + std::to_string(oracle_height) +
                                   " len=" + std::to_string(oracle_len)});
        if (!trace.self_check()) throw InternalError("oracle factorization does not verify");
        out.status = SingularStatus::Factored;
        out.trace = std::move(trace);
        return out;
    }
    out.diagnostics["oracle"] = "no product within height " + std::to_string(oracle_height) +
                                " and length " + std::to_string(oracle_len);
    return out;
}

}  // namespace quadidem
