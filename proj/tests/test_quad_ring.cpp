#include <doctest.h>

#include <random>

#include "quadidem/quad_ring.hpp"

using namespace quadidem;

namespace {

QuadInt random_element(const RingSpec& ring, std::mt19937_64& rng, long range) {
    std::uniform_int_distribution<long> dist(-range, range);
    for (;;) {
        long a = dist(rng), b = dist(rng);
        if (ring.form() == Form::Half && ((a % 2 + 2) % 2) != ((b % 2 + 2) % 2)) continue;
        return QuadInt(ring, a, b);
    }
}

}  // namespace

TEST_CASE("ring spec validation") {
    CHECK(RingSpec(10).form() == Form::Whole);
    CHECK(RingSpec(10).discriminant() == 40);
    CHECK(RingSpec(5).form() == Form::Half);
    CHECK(RingSpec(5).discriminant() == 5);
    CHECK(RingSpec(-7).form() == Form::Half);
    CHECK(RingSpec(-2).form() == Form::Whole);
    CHECK_THROWS_AS(RingSpec(0), InvalidRing);
    CHECK_THROWS_AS(RingSpec(1), InvalidRing);
    CHECK_THROWS_AS(RingSpec(12), InvalidRing);
    CHECK_THROWS_AS(RingSpec(-4), InvalidRing);
    CHECK_THROWS_AS(RingSpec(9), InvalidRing);
}

TEST_CASE("half form parity is enforced") {
    RingSpec r5(5);
    CHECK_THROWS_AS(QuadInt(r5, 1, 2), InvalidRing);
    CHECK_NOTHROW(QuadInt(r5, 1, 1));
    CHECK_NOTHROW(QuadInt(r5, 2, 0));
}

TEST_CASE("arithmetic matches hand examples") {
    RingSpec r10(10);
    QuadInt u(r10, 1, 1);   // 1 + sqrt(10)
    QuadInt v(r10, 2, -1);  // 2 - sqrt(10)
    CHECK(u + v == QuadInt::integer(r10, 3));

    QuadInt w(r10, 3, 1), wc(r10, 3, -1);
    CHECK(w * wc == QuadInt::integer(r10, -1));

    RingSpec r5(5);
    QuadInt omega(r5, 1, 1);  // (1 + sqrt(5)) / 2
    CHECK(omega * omega == QuadInt(r5, 3, 1));
}

TEST_CASE("mixed rings are rejected") {
    RingSpec r2(2), r3(3);
    QuadInt u(r2, 1, 1), v(r3, 1, 1);
    CHECK_THROWS_AS(u + v, MixedRings);
    CHECK_THROWS_AS(u * v, MixedRings);
}

TEST_CASE("conj fixes rational integers and flips sqrt(d)") {
    RingSpec r10(10);
    CHECK(QuadInt(r10, 1, 1).conj() == QuadInt(r10, 1, -1));
    CHECK(QuadInt::integer(r10, 7).conj() == QuadInt::integer(r10, 7));
    RingSpec r5(5);
    CHECK(QuadInt(r5, 1, 1).conj() == QuadInt(r5, 1, -1));
}

TEST_CASE("norms") {
    RingSpec r10(10);
    CHECK(QuadInt(r10, 3, 1).norm() == -1);
    CHECK(QuadInt(r10, 1, 1).norm() == -9);
    CHECK(QuadInt(r10, 8, 3).norm() == -26);
    RingSpec r5(5);
    CHECK(QuadInt(r5, 1, 1).norm() == -1);
    CHECK(QuadInt::integer(r5, 3).norm() == 9);
}

TEST_CASE("trace") {
    RingSpec r10(10);
    CHECK(QuadInt(r10, 4, 9).trace() == 8);
    RingSpec r5(5);
    CHECK(QuadInt(r5, 3, 1).trace() == 3);
}

TEST_CASE("try_divide") {
    RingSpec r10(10);
    QuadInt two = QuadInt::integer(r10, 2);
    CHECK(*QuadInt(r10, 2, 2).try_divide(two) == QuadInt(r10, 1, 1));
    CHECK(*QuadInt::integer(r10, 10).try_divide(QuadInt(r10, 0, 1)) == QuadInt(r10, 0, 1));
    CHECK_FALSE(QuadInt(r10, 1, 1).try_divide(QuadInt::integer(r10, 3)).has_value());
    CHECK_THROWS_AS(two.try_divide(QuadInt::integer(r10, 0)), DivisionByZero);

    // Half-form parity can block an otherwise coordinate-exact division.
    RingSpec r5(5);
    QuadInt y(r5, 2, 4);  // 1 + 2 sqrt(5)
    CHECK_FALSE(y.try_divide(QuadInt::integer(r5, 2)).has_value());
    CHECK(*(y * QuadInt::integer(r5, 2)).try_divide(QuadInt::integer(r5, 2)) == y);
}

TEST_CASE("is_unit") {
    RingSpec r10(10);
    CHECK(QuadInt(r10, 3, 1).is_unit());
    CHECK_FALSE(QuadInt::integer(r10, 2).is_unit());
    RingSpec r5(5);
    CHECK(QuadInt(r5, 1, 1).is_unit());
}

TEST_CASE("sign_real") {
    RingSpec r10(10);
    CHECK(QuadInt(r10, 3, 1).sign_real() == 1);
    CHECK(QuadInt(r10, -3, -1).sign_real() == -1);
    CHECK(QuadInt(r10, 3, -1).sign_real() == -1);   // 3 < sqrt(10)
    CHECK(QuadInt(r10, 4, -1).sign_real() == 1);    // 4 > sqrt(10)
    CHECK(QuadInt(r10, -3, 1).sign_real() == 1);
    CHECK(QuadInt::integer(r10, 0).sign_real() == 0);
}

TEST_CASE("text round trip on hand cases") {
    RingSpec r10(10);
    CHECK(render_quadint(QuadInt(r10, 1, 1)) == "1+1*s");
    CHECK(render_quadint(QuadInt(r10, -2, -3)) == "-2-3*s");
    CHECK(render_quadint(QuadInt::integer(r10, 7)) == "7");
    CHECK(parse_quadint(r10, " 1 + 1*s ") == QuadInt(r10, 1, 1));
    CHECK(parse_quadint(r10, "3*s") == QuadInt(r10, 0, 3));

    RingSpec r5(5);
    CHECK(render_quadint(QuadInt(r5, 1, 1)) == "(1+1*s)/2");
    CHECK(render_quadint(QuadInt(r5, 2, 2)) == "1+1*s");
    CHECK(render_quadint(QuadInt::integer(r5, 3)) == "3");
    CHECK(parse_quadint(r5, "(1-1*s)/2") == QuadInt(r5, 1, -1));
    CHECK_THROWS_AS(parse_quadint(r10, "(1+1*s)/2"), ParseError);
    CHECK_THROWS_AS(parse_quadint(r10, "1+*s"), ParseError);
    CHECK_THROWS_AS(parse_quadint(r10, "1+2*s junk"), ParseError);
}

TEST_CASE("canonical round trip, random sweep") {
    std::mt19937_64 rng(20260808);
    for (long d : {2, 5, 10, 13, -7}) {
        RingSpec ring(d);
        for (int i = 0; i < 2000; ++i) {
            QuadInt q = random_element(ring, rng, 1000);
            CHECK(parse_quadint(ring, render_quadint(q)) == q);
        }
    }
}

TEST_CASE("norm is multiplicative and conj is a ring homomorphism") {
    std::mt19937_64 rng(7);
    for (long d : {2, 10, 5, 13, -7, -2}) {
        RingSpec ring(d);
        for (int i = 0; i < 10000; ++i) {
            QuadInt u = random_element(ring, rng, 50);
            QuadInt v = random_element(ring, rng, 50);
            CHECK((u * v).norm() == u.norm() * v.norm());
            CHECK((u + v).conj() == u.conj() + v.conj());
            CHECK((u * v).conj() == u.conj() * v.conj());
        }
    }
}

TEST_CASE("try_divide inverts multiplication") {
    std::mt19937_64 rng(11);
    for (long d : {2, 10, 5}) {
        RingSpec ring(d);
        for (int i = 0; i < 5000; ++i) {
            QuadInt u = random_element(ring, rng, 30);
            QuadInt v = random_element(ring, rng, 30);
            if (v.is_zero()) continue;
            auto q = (u * v).try_divide(v);
            REQUIRE(q.has_value());
            CHECK(*q == u);
        }
    }
}

TEST_CASE("omega coordinate round trip") {
    std::mt19937_64 rng(100);
    for (long d : {10, 5, 13}) {
        RingSpec ring(d);
        for (int i = 0; i < 2000; ++i) {
            QuadInt q = random_element(ring, rng, 40);
            auto [m, n] = q.omega_coords();
            CHECK(QuadInt::from_omega_coords(ring, m, n) == q);
        }
    }
}
