#include "quadidem/integer_toolkit.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace quadidem {

ExtendedGcd extended_gcd(const mpz_class& a, const mpz_class& b) {
    ExtendedGcd r;
    mpz_gcdext(r.g.get_mpz_t(), r.u.get_mpz_t(), r.v.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

mpz_class crt(const std::vector<std::pair<mpz_class, mpz_class>>& residues) {
    mpz_class x = 0, m = 1;
    for (const auto& [r, mod] : residues) {
        if (mod < 1) throw ModuliNotCoprime();
        ExtendedGcd e = extended_gcd(m, mod);
        if (e.g != 1) throw ModuliNotCoprime();
        // x' = x + m * ((r - x) * u mod mod) combines the pair exactly.
        mpz_class diff = r - x;
        mpz_class t = (diff * e.u) % mod;
        x += m * t;
        m *= mod;
        x %= m;
        if (x < 0) x += m;
    }
    return x;
}

bool is_prime(const mpz_class& n) {
    if (n < 2) return false;
    // 25-round Miller-Rabin in GMP is deterministic far beyond desk scale once
    // seeded with small-prime trial division (which it performs internally).
    int r = mpz_probab_prime_p(n.get_mpz_t(), 40);
    return r > 0;
}

Valuation padic_valuation(const mpz_class& n, const mpz_class& p) {
    if (!is_prime(p)) throw NotPrime(p.get_str() + " is not prime");
    if (n == 0) return Valuation::infinity();
    mpz_class m = abs(n);
    unsigned long k = 0;
    while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
        m /= p;
        ++k;
    }
    return Valuation::finite(k);
}

std::vector<std::pair<mpz_class, unsigned long>> factorize(const mpz_class& n) {
    std::vector<std::pair<mpz_class, unsigned long>> out;
    mpz_class m = abs(n);
    if (m <= 1) return out;
    auto strip = [&](const mpz_class& p) {
        unsigned long k = 0;
        while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
            m /= p;
            ++k;
        }
        if (k > 0) out.emplace_back(p, k);
    };
    strip(2);
    for (unsigned long q = 3; q <= 1000000ul && mpz_class(q) * q <= m; q += 2) {
        strip(mpz_class(q));
    }
    if (m > 1) {
        if (mpz_class(1000000ul) * 1000000ul > m) {
            // Below 10^12 the cofactor is prime after trial division to 10^6.
            out.emplace_back(m, 1);
        } else if (is_prime(m)) {
            out.emplace_back(m, 1);
        } else {
            throw OutOfScope("composite cofactor " + m.get_str() +
                             " exceeds the trial-division factorization scope");
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<mpz_class> divisors_ge2(const mpz_class& n) {
    std::vector<mpz_class> divs{1};
    for (const auto& [p, k] : factorize(n)) {
        size_t base = divs.size();
        mpz_class pe = 1;
        for (unsigned long e = 1; e <= k; ++e) {
            pe *= p;
            for (size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pe);
        }
    }
    std::sort(divs.begin(), divs.end());
    divs.erase(divs.begin());  // drop 1
    return divs;
}

namespace {

struct HermiteReduction {
    IntMat h;                                  // echelon form, A * u = h
    IntMat u;                                  // unimodular column transform
    std::vector<std::pair<size_t, size_t>> pivots;  // (row, col)
};

HermiteReduction column_hermite(const IntMat& A) {
    HermiteReduction red;
    red.h = A;
    red.u = IntMat(A.cols, A.cols);
    for (size_t i = 0; i < A.cols; ++i) red.u.at(i, i) = 1;

    IntMat& h = red.h;
    IntMat& u = red.u;

    auto add_col = [&](size_t dst, size_t src, const mpz_class& q) {
        if (q == 0) return;
        for (size_t r = 0; r < h.rows; ++r) h.at(r, dst) -= q * h.at(r, src);
        for (size_t r = 0; r < u.rows; ++r) u.at(r, dst) -= q * u.at(r, src);
    };
    auto swap_col = [&](size_t i, size_t j) {
        if (i == j) return;
        for (size_t r = 0; r < h.rows; ++r) std::swap(h.at(r, i), h.at(r, j));
        for (size_t r = 0; r < u.rows; ++r) std::swap(u.at(r, i), u.at(r, j));
    };
    auto negate_col = [&](size_t j) {
        for (size_t r = 0; r < h.rows; ++r) h.at(r, j) = -h.at(r, j);
        for (size_t r = 0; r < u.rows; ++r) u.at(r, j) = -u.at(r, j);
    };

    size_t c = 0;
    for (size_t r = 0; r < A.rows && c < A.cols; ++r) {
        for (;;) {
            size_t best = A.cols;
            for (size_t j = c; j < A.cols; ++j) {
                if (h.at(r, j) != 0 &&
                    (best == A.cols || cmp(abs(h.at(r, j)), abs(h.at(r, best))) < 0)) {
                    best = j;
                }
            }
            if (best == A.cols) break;  // row has no pivot in the window
            bool lone = true;
            for (size_t j = c; j < A.cols; ++j) {
                if (j == best) continue;
                if (h.at(r, j) != 0) {
                    mpz_class q;
                    mpz_tdiv_q(q.get_mpz_t(), h.at(r, j).get_mpz_t(), h.at(r, best).get_mpz_t());
                    add_col(j, best, q);
                    if (h.at(r, j) != 0) lone = false;
                }
            }
            if (lone) {
                swap_col(c, best);
                if (h.at(r, c) < 0) negate_col(c);
                red.pivots.emplace_back(r, c);
                ++c;
                break;
            }
        }
    }
    return red;
}

}  // namespace

std::optional<std::vector<mpz_class>> solve_linear_integer_system(
    const IntMat& A, const std::vector<mpz_class>& target) {
    if (target.size() != A.rows) throw Error("target size does not match matrix rows");
    HermiteReduction red = column_hermite(A);
    std::vector<mpz_class> z(A.cols, mpz_class(0));
    size_t next_pivot = 0;
    for (size_t r = 0; r < A.rows; ++r) {
        mpz_class val = target[r];
        for (size_t j = 0; j < A.cols; ++j) {
            if (z[j] != 0) val -= red.h.at(r, j) * z[j];
        }
        if (next_pivot < red.pivots.size() && red.pivots[next_pivot].first == r) {
            size_t c = red.pivots[next_pivot].second;
            ++next_pivot;
            mpz_class q, rem;
            mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), val.get_mpz_t(),
                        red.h.at(r, c).get_mpz_t());
            if (rem != 0) return std::nullopt;
            z[c] = q;
        } else if (val != 0) {
            return std::nullopt;
        }
    }
    std::vector<mpz_class> s(A.cols, mpz_class(0));
    for (size_t i = 0; i < A.cols; ++i) {
        for (size_t j = 0; j < A.cols; ++j) {
            if (z[j] != 0) s[i] += red.u.at(i, j) * z[j];
        }
    }
    return s;
}

std::vector<std::vector<mpz_class>> integer_kernel_basis(const IntMat& A) {
    HermiteReduction red = column_hermite(A);
    std::vector<bool> is_pivot(A.cols, false);
    for (const auto& [r, c] : red.pivots) is_pivot[c] = true;
    std::vector<std::vector<mpz_class>> basis;
    for (size_t j = 0; j < A.cols; ++j) {
        if (is_pivot[j]) continue;
        std::vector<mpz_class> v(A.cols);
        for (size_t i = 0; i < A.cols; ++i) v[i] = red.u.at(i, j);
        basis.push_back(std::move(v));
    }
    return basis;
}

CfExpansion cf_sqrt(const mpz_class& d) {
    if (d <= 1) throw SquareInput("cf_sqrt requires d > 1");
    if (mpz_perfect_square_p(d.get_mpz_t())) {
        throw SquareInput(d.get_str() + " is a perfect square");
    }
    CfExpansion cf;
    mpz_sqrt(cf.a0.get_mpz_t(), d.get_mpz_t());
    mpz_class m = 0, den = 1, a = cf.a0;
    do {
        m = den * a - m;
        den = (d - m * m) / den;
        a = (cf.a0 + m) / den;
        cf.period.push_back(a);
    } while (a != 2 * cf.a0);
    return cf;
}

namespace {

// Minimal (x, y), y >= 1, with x^2 - d y^2 = +-1, from the convergents of sqrt(d).
std::pair<mpz_class, mpz_class> pell_minimal(const mpz_class& d) {
    CfExpansion cf = cf_sqrt(d);
    mpz_class p_prev = 1, q_prev = 0;  // convergent index -1
    mpz_class p = cf.a0, q = 1;
    size_t idx = 0;
    for (;;) {
        if (q >= 1) {
            mpz_class val = p * p - d * q * q;
            if (val == 1 || val == -1) return {p, q};
        }
        const mpz_class& a = cf.period[idx % cf.period.size()];
        ++idx;
        mpz_class p_next = a * p + p_prev;
        mpz_class q_next = a * q + q_prev;
        p_prev = p;
        q_prev = q;
        p = p_next;
        q = q_next;
    }
}

std::mutex g_unit_mutex;
std::map<long, QuadInt> g_unit_cache;

}  // namespace

QuadInt fundamental_unit(const RingSpec& ring) {
    if (!ring.is_real()) throw NotRealQuadratic("fundamental_unit requires d > 0");
    {
        std::lock_guard<std::mutex> lock(g_unit_mutex);
        auto it = g_unit_cache.find(ring.d());
        if (it != g_unit_cache.end()) return it->second;
    }
    mpz_class d(ring.d());
    QuadInt eps = QuadInt::integer(ring, 1);
    if (ring.form() == Form::Whole) {
        auto [x, y] = pell_minimal(d);
        eps = QuadInt(ring, x, y);
    } else {
        // Minimal a^2 - d b^2 = +-4; stops by b = 2*y0 at the latest since the
        // doubled Pell solution satisfies the +-4 equation.
        auto [x0, y0] = pell_minimal(d);
        mpz_class bound = 2 * y0;
        for (mpz_class b = 1; b <= bound; ++b) {
            std::optional<mpz_class> best_a;
            for (int sgn : {-1, +1}) {
                mpz_class rhs = d * b * b + 4 * sgn;
                if (rhs < 0) continue;
                if (!mpz_perfect_square_p(rhs.get_mpz_t())) continue;
                mpz_class a;
                mpz_sqrt(a.get_mpz_t(), rhs.get_mpz_t());
                if (!best_a || a < *best_a) best_a = a;
            }
            if (best_a) {
                eps = QuadInt(ring, *best_a, b);
                break;
            }
        }
    }
    mpz_class n = eps.norm();
    if (n != 1 && n != -1) throw InternalError("fundamental unit has |norm| != 1");
    std::lock_guard<std::mutex> lock(g_unit_mutex);
    g_unit_cache.emplace(ring.d(), eps);
    return eps;
}

namespace {

// sign of sigma1(z)^2 - t for a nonnegative rational integer t
int cmp_square_against(const QuadInt& z, const mpz_class& t) {
    QuadInt diff = z * z - QuadInt::integer(z.ring(), t);
    return diff.sign_real();
}

}  // namespace

QuadInt reduce_to_unit_box(const QuadInt& z) {
    if (z.is_zero()) return z;
    const RingSpec& ring = z.ring();
    QuadInt eps = fundamental_unit(ring);
    QuadInt eps_inv = eps.unit_inverse();
    mpz_class n = abs(z.norm());
    // Window: n <= sigma1(w)^2 < sigma1(eps)^2 * n.
    QuadInt eps_sq = eps * eps;
    QuadInt w = z;
    if (w.sign_real() < 0) w = -w;
    while (cmp_square_against(w, n) < 0) w = w * eps;
    for (;;) {
        QuadInt wsq = w * w;
        QuadInt threshold = eps_sq * QuadInt::integer(ring, n);
        if ((wsq - threshold).sign_real() < 0) break;
        w = w * eps_inv;
    }
    return w;
}

namespace {

std::mutex g_norm_mutex;
std::map<std::pair<long, mpz_class>, std::vector<QuadInt>> g_norm_cache;

}  // namespace

std::vector<QuadInt> solve_norm_equation(const RingSpec& ring, const mpz_class& n) {
    if (!ring.is_real()) throw NotRealQuadratic("solve_norm_equation requires d > 0");
    if (n == 0) throw PreconditionViolated("solve_norm_equation requires n != 0");
    mpz_class N = abs(n);
    {
        std::lock_guard<std::mutex> lock(g_norm_mutex);
        auto it = g_norm_cache.find({ring.d(), N});
        if (it != g_norm_cache.end()) return it->second;
    }
    mpz_class d(ring.d());
    mpz_class f = (ring.form() == Form::Half) ? 4 : 1;
    QuadInt eps = fundamental_unit(ring);

    // Integer overestimate of the real embedding of eps.
    mpz_class sd_up;
    mpz_sqrt(sd_up.get_mpz_t(), d.get_mpz_t());
    mpz_class sd = sd_up;
    sd_up += 1;
    mpz_class E = abs(eps.a()) + abs(eps.b()) * sd_up + 1;

    mpz_class sqrtN_up;
    mpz_sqrt(sqrtN_up.get_mpz_t(), N.get_mpz_t());
    sqrtN_up += 1;

    // Every orbit has a representative with 0 < sigma1 < eps*sqrt(N) and
    // |sigma2| <= sqrt(N); the b-coordinate is then bounded as below.
    mpz_class bmax = ((E + 1) * sqrtN_up) / sd + 1;
    if (ring.form() == Form::Whole) bmax = ((E + 1) * sqrtN_up) / (2 * sd) + 1;

    std::vector<QuadInt> reps;
    auto add_candidate = [&](const mpz_class& a, const mpz_class& b) {
        if (ring.form() == Form::Half && mpz_odd_p(a.get_mpz_t()) != mpz_odd_p(b.get_mpz_t())) {
            return;
        }
        QuadInt rep = reduce_to_unit_box(QuadInt(ring, a, b));
        for (const QuadInt& r : reps) {
            if (r == rep) return;
        }
        reps.push_back(rep);
    };

    for (mpz_class b = 0; b <= bmax; ++b) {
        for (int sgn : {+1, -1}) {
            mpz_class rhs = d * b * b + sgn * f * N;
            if (rhs < 0) continue;
            if (!mpz_perfect_square_p(rhs.get_mpz_t())) continue;
            mpz_class a;
            mpz_sqrt(a.get_mpz_t(), rhs.get_mpz_t());
            add_candidate(a, b);
            if (a != 0) add_candidate(-a, b);
        }
    }
    std::sort(reps.begin(), reps.end(), [](const QuadInt& x, const QuadInt& y) {
        if (x.a() != y.a()) return x.a() < y.a();
        return x.b() < y.b();
    });
    std::lock_guard<std::mutex> lock(g_norm_mutex);
    g_norm_cache.emplace(std::make_pair(ring.d(), N), reps);
    return reps;
}

}  // namespace quadidem
