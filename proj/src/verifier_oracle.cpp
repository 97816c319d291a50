#include "quadidem/verifier_oracle.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

namespace quadidem {

namespace {

using Entries = std::array<QuadInt, 4>;  // row-major 2x2

Entries entries_of(const Mat2& m) { return {m.e11(), m.e12(), m.e21(), m.e22()}; }

// Product computed directly from ring arithmetic; intentionally does not use
// Mat2::operator*.
Entries mul(const Entries& l, const Entries& r) {
    return {l[0] * r[0] + l[1] * r[2], l[0] * r[1] + l[1] * r[3],
            l[2] * r[0] + l[3] * r[2], l[2] * r[1] + l[3] * r[3]};
}

bool equal(const Entries& l, const Entries& r) {
    for (int i = 0; i < 4; ++i) {
        if (l[i] != r[i]) return false;
    }
    return true;
}

}  // namespace

VerifyReport verify(const std::vector<Mat2>& factors, const Mat2& target) {
    VerifyReport report;
    for (const Mat2& f : factors) {
        if (f.ring() != target.ring()) throw MixedRings();
    }
    if (factors.empty()) {
        report.failures.push_back("no factors given");
        return report;
    }
    for (size_t i = 0; i < factors.size(); ++i) {
        Entries f = entries_of(factors[i]);
        if (!equal(mul(f, f), f)) {
            report.failures.push_back("factor " + std::to_string(i + 1) + " is not idempotent: " +
                                      factors[i].str());
            return report;
        }
    }
    Entries prod = entries_of(factors[0]);
    for (size_t i = 1; i < factors.size(); ++i) prod = mul(prod, entries_of(factors[i]));
    Entries want = entries_of(target);
    for (int i = 0; i < 4; ++i) {
        if (prod[i] != want[i]) {
            std::ostringstream os;
            os << "product mismatch at entry (" << (i / 2 + 1) << "," << (i % 2 + 1) << "): got "
               << prod[i] << ", want " << want[i];
            report.failures.push_back(os.str());
            return report;
        }
    }
    report.ok = true;
    return report;
}

namespace {

std::array<mpz_class, 8> mat_key(const Mat2& m) {
    return {m.e11().a(), m.e11().b(), m.e12().a(), m.e12().b(),
            m.e21().a(), m.e21().b(), m.e22().a(), m.e22().b()};
}

bool mat_less(const Mat2& l, const Mat2& r) { return mat_key(l) < mat_key(r); }

bool coords_ok(const RingSpec& ring, long a, long b) {
    if (ring.form() != Form::Half) return true;
    return ((a % 2 + 2) % 2) == ((b % 2 + 2) % 2);
}

}  // namespace

std::vector<Mat2> enumerate_idempotents(const RingSpec& ring, long height) {
    QuadInt one = QuadInt::integer(ring, 1);
    std::vector<Mat2> out;
    out.push_back(Mat2::zero(ring));
    out.push_back(Mat2::identity(ring));
    mpz_class h(height);
    for (long aa = -height; aa <= height; ++aa) {
        for (long ab = -height; ab <= height; ++ab) {
            if (!coords_ok(ring, aa, ab)) continue;
            QuadInt a(ring, aa, ab);
            if ((one - a).height() > h) continue;  // e22 = 1 - a must fit too
            QuadInt p = a * (one - a);
            for (long ba = -height; ba <= height; ++ba) {
                for (long bb = -height; bb <= height; ++bb) {
                    if (!coords_ok(ring, ba, bb)) continue;
                    QuadInt b(ring, ba, bb);
                    if (b.is_zero()) {
                        if (!p.is_zero()) continue;
                        // a in {0, 1}: the c entry is unconstrained.
                        for (long ca = -height; ca <= height; ++ca) {
                            for (long cb = -height; cb <= height; ++cb) {
                                if (!coords_ok(ring, ca, cb)) continue;
                                out.push_back(Mat2(a, b, QuadInt(ring, ca, cb), one - a));
                            }
                        }
                    } else {
                        auto c = p.try_divide(b);
                        if (!c || c->height() > h) continue;
                        out.push_back(Mat2(a, b, *c, one - a));
                    }
                }
            }
        }
    }
    std::sort(out.begin(), out.end(), mat_less);
    return out;
}

namespace {

// Reduces num/den by the integer content and normalizes den > 0. In Half
// rings a content division can break the numerator parity invariant; the
// representative is then rescaled by 2, which keeps the form canonical
// (a reduced triple never has both parts even together with an even den).
void reduce_frac(const RingSpec& ring, mpz_class& na, mpz_class& nb, mpz_class& den) {
    if (den < 0) {
        den = -den;
        na = -na;
        nb = -nb;
    }
    mpz_class g = gcd(gcd(abs(na), abs(nb)), den);
    if (g > 1) {
        na /= g;
        nb /= g;
        den /= g;
    }
    if (ring.form() == Form::Half && mpz_odd_p(na.get_mpz_t()) != mpz_odd_p(nb.get_mpz_t())) {
        na *= 2;
        nb *= 2;
        den *= 2;
    }
}

// Exact element of Q[sqrt(d)] in a canonical reduced form; equal values have
// identical representations, so equality is componentwise.
struct Frac {
    QuadInt num;
    mpz_class den;

    Frac(QuadInt n, mpz_class d) : num(std::move(n)), den(std::move(d)) { reduce(); }

    void reduce() {
        mpz_class na = num.a(), nb = num.b();
        reduce_frac(num.ring(), na, nb, den);
        num = QuadInt(num.ring(), na, nb);
    }

    bool is_zero() const { return num.is_zero(); }
    Frac times(const QuadInt& q) const { return Frac(num * q, den); }
    Frac times(const Frac& o) const { return Frac(num * o.num, den * o.den); }
    Frac divided_by(const Frac& o) const {
        return Frac(num * o.num.conj() * o.den, den * o.num.norm());
    }
    Frac divided_by(const QuadInt& q) const { return Frac(num * q.conj(), den * q.norm()); }
    bool operator==(const Frac& o) const { return num == o.num && den == o.den; }
    std::array<mpz_class, 3> key() const { return {num.a(), num.b(), den}; }
};

// Canonical integral direction of the line spanned by (u, v) != 0: (0, 1)
// when u = 0, otherwise (den, num) of the reduced ratio v/u.
std::pair<QuadInt, QuadInt> canonical_direction(const QuadInt& u, const QuadInt& v) {
    const RingSpec& ring = u.ring();
    if (u.is_zero()) return {QuadInt::integer(ring, 0), QuadInt::integer(ring, 1)};
    Frac ratio(v * u.conj(), u.norm());
    return {QuadInt::integer(ring, ratio.den), ratio.num};
}

std::array<mpz_class, 4> dir_key(const std::pair<QuadInt, QuadInt>& dir) {
    return {dir.first.a(), dir.first.b(), dir.second.a(), dir.second.b()};
}

QuadInt dot(const std::pair<QuadInt, QuadInt>& row, const std::pair<QuadInt, QuadInt>& col) {
    return row.first * col.first + row.second * col.second;
}

// Rank-1 bookkeeping: F = col * kappa * row with canonical integral direction
// vectors, so products of idempotents reduce to scalar equations.
struct RankOne {
    Mat2 mat;
    std::pair<QuadInt, QuadInt> col;
    std::pair<QuadInt, QuadInt> row;
    Frac kappa;
};

RankOne rank_one_of(const Mat2& m) {
    bool col1 = !m.e11().is_zero() || !m.e21().is_zero();
    auto col = col1 ? canonical_direction(m.e11(), m.e21()) : canonical_direction(m.e12(), m.e22());
    bool row1 = !m.e11().is_zero() || !m.e12().is_zero();
    auto row = row1 ? canonical_direction(m.e11(), m.e12()) : canonical_direction(m.e21(), m.e22());

    // kappa from a nonzero coordinate pair: m[i][j] = col[i] * kappa * row[j].
    size_t i = col.first.is_zero() ? 1 : 0;
    size_t j = row.first.is_zero() ? 1 : 0;
    const QuadInt* e[2][2] = {{&m.e11(), &m.e12()}, {&m.e21(), &m.e22()}};
    QuadInt denom = (i == 0 ? col.first : col.second) * (j == 0 ? row.first : row.second);
    return {m, col, row, Frac(*e[i][j] * denom.conj(), denom.norm())};
}

// The rank-1 pool and its direction buckets depend only on (ring, height);
// sweeps reuse them across targets.
struct OraclePool {
    std::vector<RankOne> pool;
    std::map<std::array<mpz_class, 4>, std::vector<size_t>> by_col, by_row;
};

std::mutex g_pool_mutex;
std::map<std::pair<long, long>, std::shared_ptr<const OraclePool>> g_pool_cache;

std::shared_ptr<const OraclePool> oracle_pool(const RingSpec& ring, long height) {
    {
        std::lock_guard<std::mutex> lock(g_pool_mutex);
        auto it = g_pool_cache.find({ring.d(), height});
        if (it != g_pool_cache.end()) return it->second;
    }
    auto built = std::make_shared<OraclePool>();
    Mat2 ident = Mat2::identity(ring);
    for (const Mat2& m : enumerate_idempotents(ring, height)) {
        if (m.is_zero() || m == ident) continue;
        built->pool.push_back(rank_one_of(m));
    }
    for (size_t i = 0; i < built->pool.size(); ++i) {
        built->by_col[dir_key(built->pool[i].col)].push_back(i);
        built->by_row[dir_key(built->pool[i].row)].push_back(i);
    }
    std::lock_guard<std::mutex> lock(g_pool_mutex);
    auto [it, inserted] = g_pool_cache.emplace(std::make_pair(ring.d(), height), built);
    return it->second;
}

}  // namespace

std::optional<std::vector<IdempotentMat>> brute_force_factor(const Mat2& target,
                                                             long height_bound,
                                                             unsigned max_len) {
    if (!target.is_singular()) throw NotSingular();
    if (max_len == 0) return std::nullopt;
    const RingSpec& ring = target.ring();

    if (target.is_zero()) return std::vector<IdempotentMat>{IdempotentMat(Mat2::zero(ring))};
    if (target.is_idempotent()) return std::vector<IdempotentMat>{IdempotentMat(target)};
    if (max_len == 1) return std::nullopt;

    // Only trace-1 idempotents can appear in a minimal product: the zero
    // matrix kills the product and the identity only pads it.
    std::shared_ptr<const OraclePool> shared = oracle_pool(ring, height_bound);
    const std::vector<RankOne>& pool = shared->pool;
    RankOne t = rank_one_of(target);

    auto cit = shared->by_col.find(dir_key(t.col));
    auto rit = shared->by_row.find(dir_key(t.row));
    if (cit == shared->by_col.end() || rit == shared->by_row.end()) return std::nullopt;
    const std::vector<size_t>& col_bucket = cit->second;
    const std::vector<size_t>& row_bucket = rit->second;

    auto finish = [&](const std::vector<size_t>& picks) -> std::vector<IdempotentMat> {
        std::vector<IdempotentMat> factors;
        Mat2 prod = pool[picks[0]].mat;
        factors.emplace_back(pool[picks[0]].mat);
        for (size_t i = 1; i < picks.size(); ++i) {
            prod = prod * pool[picks[i]].mat;
            factors.emplace_back(pool[picks[i]].mat);
        }
        if (prod != target) throw InternalError("oracle product check failed");
        return factors;
    };

    if (max_len >= 2) {
        for (size_t i : col_bucket) {
            for (size_t j : row_bucket) {
                QuadInt link = dot(pool[i].row, pool[j].col);
                if (link.is_zero()) continue;
                if (pool[i].kappa.times(link).times(pool[j].kappa) == t.kappa) {
                    return finish({i, j});
                }
            }
        }
    }

    // Length 3: ends pinned to the direction buckets, middle unconstrained;
    // the product reduces to one scalar equation.
    if (max_len >= 3) {
        for (size_t i : col_bucket) {
            for (size_t mid = 0; mid < pool.size(); ++mid) {
                QuadInt link1 = dot(pool[i].row, pool[mid].col);
                if (link1.is_zero()) continue;
                Frac acc = pool[i].kappa.times(link1).times(pool[mid].kappa);
                Frac need = t.kappa.divided_by(acc);
                for (size_t j : row_bucket) {
                    QuadInt link2 = dot(pool[mid].row, pool[j].col);
                    if (link2.is_zero()) continue;
                    if (pool[j].kappa.times(link2) == need) return finish({i, mid, j});
                }
            }
        }
    }

    // Length 4: meet in the middle. Right pairs (m2, j) are grouped by the
    // column direction of m2 and indexed by scalar value; left pairs (i, m1)
    // probe each group through the connecting dot product.
    if (max_len >= 4) {
        struct RightEntry {
            size_t m2, j;
        };
        std::map<std::array<mpz_class, 4>, std::map<std::array<mpz_class, 3>, RightEntry>> right;
        std::map<std::array<mpz_class, 4>, std::pair<QuadInt, QuadInt>> group_vec;
        for (size_t m2 = 0; m2 < pool.size(); ++m2) {
            auto gkey = dir_key(pool[m2].col);
            group_vec.emplace(gkey, pool[m2].col);
            for (size_t j : row_bucket) {
                QuadInt link = dot(pool[m2].row, pool[j].col);
                if (link.is_zero()) continue;
                Frac val = pool[m2].kappa.times(link).times(pool[j].kappa);
                auto& slot = right[gkey];
                auto key = val.key();
                auto it = slot.find(key);
                if (it == slot.end() ||
                    std::make_pair(m2, j) < std::make_pair(it->second.m2, it->second.j)) {
                    slot[key] = {m2, j};
                }
            }
        }
        for (size_t i : col_bucket) {
            for (size_t m1 = 0; m1 < pool.size(); ++m1) {
                QuadInt link1 = dot(pool[i].row, pool[m1].col);
                if (link1.is_zero()) continue;
                Frac acc = pool[i].kappa.times(link1).times(pool[m1].kappa);
                Frac need = t.kappa.divided_by(acc);
                std::optional<RightEntry> best;
                for (const auto& [gkey, slot] : right) {
                    QuadInt link2 = dot(pool[m1].row, group_vec.at(gkey));
                    if (link2.is_zero()) continue;
                    Frac want = need.divided_by(link2);
                    auto it = slot.find(want.key());
                    if (it == slot.end()) continue;
                    if (!best || std::make_pair(it->second.m2, it->second.j) <
                                     std::make_pair(best->m2, best->j)) {
                        best = it->second;
                    }
                }
                if (best) return finish({i, m1, best->m2, best->j});
            }
        }
    }

    return std::nullopt;
}

}  // namespace quadidem
