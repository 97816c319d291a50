#include "quadidem/divisibility.hpp"

#include <algorithm>

#include "quadidem/integer_toolkit.hpp"

namespace quadidem {

std::optional<QuadInt> common_divisor(const QuadInt& x, const QuadInt& y) {
    if (x.ring() != y.ring()) throw MixedRings();
    if (x.is_zero() && y.is_zero()) throw BothZero();
    const RingSpec& ring = x.ring();
    mpz_class g = gcd(abs(x.norm()), abs(y.norm()));
    if (g == 1) return std::nullopt;
    // g = 0 cannot happen here: one input is nonzero, and gcd(0, n) = n.
    QuadInt eps = fundamental_unit(ring);
    QuadInt eps_inv = eps.unit_inverse();
    for (const mpz_class& n : divisors_ge2(g)) {
        std::vector<QuadInt> candidates;
        for (const QuadInt& rep : solve_norm_equation(ring, n)) {
            QuadInt t = rep * eps_inv * eps_inv;
            for (int k = -2; k <= 2; ++k) {
                candidates.push_back(t);
                t = t * eps;
            }
        }
        std::sort(candidates.begin(), candidates.end(), [](const QuadInt& u, const QuadInt& v) {
            mpz_class ua = abs(u.a()), va = abs(v.a());
            if (ua != va) return ua < va;
            mpz_class ub = abs(u.b()), vb = abs(v.b());
            if (ub != vb) return ub < vb;
            if (u.a() != v.a()) return u.a() > v.a();
            return u.b() > v.b();
        });
        candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
        for (const QuadInt& z : candidates) {
            if (x.try_divide(z) && y.try_divide(z)) return z;
        }
    }
    return std::nullopt;
}

std::optional<std::pair<QuadInt, QuadInt>> comaximal_witness(const QuadInt& x, const QuadInt& y) {
    if (x.ring() != y.ring()) throw MixedRings();
    if (x.is_zero() && y.is_zero()) throw BothZero();
    const RingSpec& ring = x.ring();
    QuadInt one = QuadInt::integer(ring, 1);
    QuadInt om = QuadInt::omega(ring);

    // Columns are the integral-basis coordinates of x*1, x*omega, y*1, y*omega.
    IntMat A(2, 4);
    const QuadInt cols[4] = {x, x * om, y, y * om};
    for (size_t j = 0; j < 4; ++j) {
        auto [m, n] = cols[j].omega_coords();
        A.at(0, j) = m;
        A.at(1, j) = n;
    }
    auto sol = solve_linear_integer_system(A, {mpz_class(1), mpz_class(0)});
    if (!sol) return std::nullopt;
    QuadInt u = QuadInt::from_omega_coords(ring, (*sol)[0], (*sol)[1]);
    QuadInt v = QuadInt::from_omega_coords(ring, (*sol)[2], (*sol)[3]);
    if (x * u + y * v != one) throw InternalError("comaximal witness failed verification");
    return std::make_pair(u, v);
}

std::optional<QuadInt> is_pair_principal(const QuadInt& x, const QuadInt& y) {
    if (x.ring() != y.ring()) throw MixedRings();
    if (x.is_zero() && y.is_zero()) throw BothZero();
    QuadInt gen = QuadInt::integer(x.ring(), 1);
    QuadInt xr = x, yr = y;
    while (auto z = common_divisor(xr, yr)) {
        xr = *xr.try_divide(*z);
        yr = *yr.try_divide(*z);
        gen = gen * *z;
    }
    if (comaximal_witness(xr, yr)) return gen;
    return std::nullopt;
}

}  // namespace quadidem
