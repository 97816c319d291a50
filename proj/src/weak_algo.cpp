#include "quadidem/weak_algo.hpp"

#include <algorithm>
#include <array>
#include <map>

#include "quadidem/integer_toolkit.hpp"

namespace quadidem {

void WeakChain::validate() const {
    if (remainders.size() < 2 || quotients.size() + 2 != remainders.size()) {
        throw InvalidChain("inconsistent chain sizes");
    }
    for (size_t i = 0; i < quotients.size(); ++i) {
        if (remainders[i] != quotients[i] * remainders[i + 1] + remainders[i + 2]) {
            throw InvalidChain("division relation fails at index " + std::to_string(i));
        }
    }
    if (!remainders.back().is_zero()) throw InvalidChain("final remainder is nonzero");
}

namespace {

mpz_class round_nearest(const mpz_class& p, const mpz_class& q) {
    // floor(p/q + 1/2) = floor((2p + q) / (2q)), exact for either sign of q.
    mpz_class num = 2 * p + q;
    mpz_class den = 2 * q;
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return r;
}

struct Candidate {
    QuadInt quotient;
    QuadInt remainder;
};

struct Search {
    unsigned node_cap = 0;
    unsigned nodes = 0;
    bool aborted = false;
    QuotientMode mode;
    std::vector<QuadInt> twists;  // eps^0 first, then eps^{+-1}, eps^{+-2}
    std::map<std::array<mpz_class, 4>, unsigned> failed;

    std::vector<Candidate> twisted_candidates(const QuadInt& a, const QuadInt& b,
                                              const QuadInt& twist, int window) const {
        // Quotients near a/(b*twist), scaled back by the twist.
        std::vector<Candidate> out;
        QuadInt divisor = b * twist;
        QuadInt w = a * divisor.conj();
        mpz_class n = divisor.norm();
        auto [mw, nw] = w.omega_coords();
        if (mode == QuotientMode::FloorOnly) {
            mpz_class qm, qn;
            mpz_fdiv_q(qm.get_mpz_t(), mw.get_mpz_t(), n.get_mpz_t());
            mpz_fdiv_q(qn.get_mpz_t(), nw.get_mpz_t(), n.get_mpz_t());
            QuadInt q = QuadInt::from_omega_coords(a.ring(), qm, qn) * twist;
            out.push_back({q, a - q * b});
            return out;
        }
        mpz_class m0 = round_nearest(mw, n);
        mpz_class n0 = round_nearest(nw, n);
        for (int i = -window; i <= window; ++i) {
            for (int j = -window; j <= window; ++j) {
                QuadInt q = QuadInt::from_omega_coords(a.ring(), m0 + i, n0 + j) * twist;
                out.push_back({q, a - q * b});
            }
        }
        return out;
    }

    std::vector<Candidate> candidates(const QuadInt& a, const QuadInt& b) const {
        std::vector<Candidate> cands = twisted_candidates(a, b, twists.front(), 1);
        if (mode == QuotientMode::NearestWithOffsets && twists.size() > 1) {
            mpz_class floor_norm = abs(b.norm());
            bool descends = false;
            for (const Candidate& c : cands) {
                if (abs(c.remainder.norm()) < floor_norm) {
                    descends = true;
                    break;
                }
            }
            if (!descends) {
                // Unit-twisted divisions over a wider window unlock descent on
                // the rays where nearest rounding stalls.
                cands = twisted_candidates(a, b, twists.front(), 2);
                for (size_t k = 1; k < twists.size(); ++k) {
                    auto extra = twisted_candidates(a, b, twists[k], 2);
                    cands.insert(cands.end(), extra.begin(), extra.end());
                }
            }
        }
        std::sort(cands.begin(), cands.end(), [](const Candidate& l, const Candidate& r) {
            mpz_class ln = abs(l.remainder.norm()), rn = abs(r.remainder.norm());
            if (ln != rn) return ln < rn;
            if (l.quotient.a() != r.quotient.a()) return l.quotient.a() < r.quotient.a();
            return l.quotient.b() < r.quotient.b();
        });
        cands.erase(std::unique(cands.begin(), cands.end(),
                                [](const Candidate& l, const Candidate& r) {
                                    return l.quotient == r.quotient;
                                }),
                    cands.end());
        return cands;
    }

    bool dfs(const QuadInt& a, const QuadInt& b, unsigned depth_left,
             std::vector<QuadInt>& quotients) {
        if (aborted) return false;
        if (++nodes > node_cap) {
            aborted = true;
            return false;
        }
        std::array<mpz_class, 4> key{a.a(), a.b(), b.a(), b.b()};
        auto it = failed.find(key);
        if (it != failed.end() && it->second >= depth_left) return false;
        for (const Candidate& c : candidates(a, b)) {
            if (c.remainder.is_zero()) {
                quotients.push_back(c.quotient);
                return true;
            }
            if (depth_left >= 2) {
                quotients.push_back(c.quotient);
                if (dfs(b, c.remainder, depth_left - 1, quotients)) return true;
                quotients.pop_back();
                if (aborted) return false;
            }
        }
        auto [pos, inserted] = failed.emplace(key, depth_left);
        if (!inserted && pos->second < depth_left) pos->second = depth_left;
        return false;
    }
};

}  // namespace

std::optional<WeakChain> find_weak_chain(const QuadInt& x, const QuadInt& y, unsigned budget,
                                         QuotientMode mode) {
    if (y.is_zero()) throw ZeroDivisorChain();
    if (budget == 0) return std::nullopt;
    Search search;
    // Keeps fruitless searches cheap; the retry ladder doubles the budget and
    // with it the node allowance.
    search.node_cap = 4000u * budget;
    search.mode = mode;
    search.twists.push_back(QuadInt::integer(x.ring(), 1));
    if (x.ring().is_real()) {
        QuadInt eps = fundamental_unit(x.ring());
        QuadInt eps_inv = eps.unit_inverse();
        search.twists.push_back(eps);
        search.twists.push_back(eps_inv);
        search.twists.push_back(eps * eps);
        search.twists.push_back(eps_inv * eps_inv);
    }
    std::vector<QuadInt> quotients;
    if (!search.dfs(x, y, budget, quotients)) return std::nullopt;

    WeakChain chain;
    chain.remainders = {x, y};
    for (const QuadInt& q : quotients) {
        size_t k = chain.remainders.size();
        chain.remainders.push_back(chain.remainders[k - 2] - q * chain.remainders[k - 1]);
        chain.quotients.push_back(q);
    }
    chain.validate();
    return chain;
}

std::vector<IdempotentMat> chain_to_idempotents(const WeakChain& chain) {
    chain.validate();
    const RingSpec& ring = chain.x().ring();
    QuadInt zero = QuadInt::integer(ring, 0);
    QuadInt one = QuadInt::integer(ring, 1);

    std::vector<IdempotentMat> factors;
    Mat2 p = Mat2::identity(ring);
    Mat2 p_inv = Mat2::identity(ring);

    const size_t n = chain.length();
    for (size_t i = 0; i < n; ++i) {
        const QuadInt& q = chain.quotients[i];
        if (i % 2 == 0) {
            // First-component division: peel the (1 0; q 0) idempotent under
            // a lower elementary similarity.
            Mat2 lower(one, zero, -q, one);
            Mat2 lower_inv(one, zero, q, one);
            p = p * lower;
            p_inv = lower_inv * p_inv;
            factors.emplace_back(p * Mat2(one, zero, q, zero) * p_inv);
        } else {
            // Second-component division is a pure upper-elementary similarity.
            Mat2 upper(one, -q, zero, one);
            Mat2 upper_inv(one, q, zero, one);
            p = p * upper;
            p_inv = upper_inv * p_inv;
        }
    }

    const QuadInt& last = chain.remainders[n];  // r_{n-1}
    if (n % 2 == 0) {
        // Terminal [r_{n-1} 0] = (1 -1; 0 0)(1 0; 1-r 0).
        factors.emplace_back(p * Mat2(one, -one, zero, zero) * p_inv);
        factors.emplace_back(p * Mat2(one, zero, one - last, zero) * p_inv);
    } else {
        // Terminal [0 r_{n-1}] = (1 0; 0 0)(0 r; 0 1).
        factors.emplace_back(p * Mat2(one, zero, zero, zero) * p_inv);
        factors.emplace_back(p * Mat2(zero, last, zero, one) * p_inv);
    }

    Mat2 product = factors.front().mat();
    for (size_t i = 1; i < factors.size(); ++i) product = product * factors[i].mat();
    if (product != Mat2::row(chain.x(), chain.y())) {
        throw InternalError("chain replay produced a wrong product");
    }
    return factors;
}

WeakChain elementary_to_weak_chain(const std::vector<QuadInt>& quotients, const QuadInt& x,
                                   const QuadInt& y) {
    WeakChain chain;
    chain.remainders = {x, y};
    chain.quotients = quotients;
    for (const QuadInt& q : quotients) {
        size_t k = chain.remainders.size();
        chain.remainders.push_back(chain.remainders[k - 2] - q * chain.remainders[k - 1]);
    }
    if (!chain.remainders.back().is_zero()) throw NonTerminatingReplay();
    // A leading pair of zero quotients walks (x, y) back to itself.
    while (chain.quotients.size() >= 2 && chain.quotients[0].is_zero() &&
           chain.quotients[1].is_zero()) {
        chain.quotients.erase(chain.quotients.begin(), chain.quotients.begin() + 2);
        chain.remainders.erase(chain.remainders.begin() + 2, chain.remainders.begin() + 4);
    }
    chain.validate();
    return chain;
}

}  // namespace quadidem
