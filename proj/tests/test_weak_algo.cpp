#include <doctest.h>

#include <random>

#include "quadidem/weak_algo.hpp"

using namespace quadidem;

namespace {

Mat2 product_of(const std::vector<IdempotentMat>& factors) {
    Mat2 acc = factors.front().mat();
    for (size_t i = 1; i < factors.size(); ++i) acc = acc * factors[i].mat();
    return acc;
}

}  // namespace

TEST_CASE("floor-restricted search replays classical Euclid") {
    RingSpec r2(2);
    auto chain = find_weak_chain(QuadInt::integer(r2, 15), QuadInt::integer(r2, 4), 12,
                                 QuotientMode::FloorOnly);
    REQUIRE(chain.has_value());
    REQUIRE(chain->quotients.size() == 3);
    CHECK(chain->quotients[0] == QuadInt::integer(r2, 3));
    CHECK(chain->quotients[1] == QuadInt::integer(r2, 1));
    CHECK(chain->quotients[2] == QuadInt::integer(r2, 3));
    CHECK(chain->remainders[2] == QuadInt::integer(r2, 3));
    CHECK(chain->remainders[3] == QuadInt::integer(r2, 1));
    CHECK(chain->remainders[4].is_zero());
}

TEST_CASE("exact divisions are found immediately") {
    RingSpec r2(2);
    QuadInt x(r2, 1, 1);  // 1 + sqrt(2)
    QuadInt y = QuadInt::sqrt_d(r2);

    // Floor division reproduces the two-step hand chain exactly.
    auto floor_chain = find_weak_chain(x, y, 12, QuotientMode::FloorOnly);
    REQUIRE(floor_chain.has_value());
    REQUIRE(floor_chain->quotients.size() == 2);
    CHECK(floor_chain->quotients[0] == QuadInt::integer(r2, 1));
    CHECK(floor_chain->quotients[1] == y);

    // The default search also ends after two divisions.
    auto chain = find_weak_chain(x, y, 12);
    REQUIRE(chain.has_value());
    CHECK(chain->quotients.size() == 2);
    CHECK_NOTHROW(chain->validate());
}

TEST_CASE("comaximal pair over Z[sqrt(10)] gets a replay-valid chain") {
    RingSpec r10(10);
    auto chain = find_weak_chain(QuadInt::integer(r10, 8), QuadInt(r10, 1, 1), 12);
    REQUIRE(chain.has_value());
    CHECK_NOTHROW(chain->validate());
    CHECK(chain->x() == QuadInt::integer(r10, 8));
    CHECK(chain->y() == QuadInt(r10, 1, 1));
}

TEST_CASE("find_weak_chain rejects a zero divisor seed") {
    RingSpec r2(2);
    CHECK_THROWS_AS(find_weak_chain(QuadInt::integer(r2, 1), QuadInt::integer(r2, 0), 12),
                    ZeroDivisorChain);
}

TEST_CASE("integer pairs always succeed within budget 12") {
    RingSpec r3(3);
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<long> dist(-200, 200);
    for (int i = 0; i < 500; ++i) {
        long x = dist(rng), y = dist(rng);
        if (y == 0) continue;
        auto chain =
            find_weak_chain(QuadInt::integer(r3, x), QuadInt::integer(r3, y), 12);
        REQUIRE(chain.has_value());
        CHECK(chain->length() <= 12);
    }
}

TEST_CASE("chain to idempotents: zero-case closed forms") {
    RingSpec r10(10);
    QuadInt z(r10, 2, 1);
    QuadInt zero = QuadInt::integer(r10, 0);
    QuadInt one = QuadInt::integer(r10, 1);

    // n = 0 chain for (z, 0).
    WeakChain c0{{z, zero}, {}};
    auto f0 = chain_to_idempotents(c0);
    REQUIRE(f0.size() == 2);
    CHECK(f0[0].mat() == Mat2(one, -one, zero, zero));
    CHECK(f0[1].mat() == Mat2(one, zero, one - z, zero));
    CHECK(product_of(f0) == Mat2::row(z, zero));

    // Chain for (0, z).
    WeakChain c1{{zero, z, zero}, {zero}};
    auto f1 = chain_to_idempotents(c1);
    REQUIRE(f1.size() >= 2);
    CHECK(product_of(f1) == Mat2::row(zero, z));
}

TEST_CASE("chain to idempotents on a searched chain") {
    RingSpec r2(2);
    QuadInt x(r2, 1, 1);
    QuadInt y = QuadInt::sqrt_d(r2);
    auto chain = find_weak_chain(x, y, 12);
    REQUIRE(chain.has_value());
    auto factors = chain_to_idempotents(*chain);
    for (const auto& f : factors) CHECK(f.mat().is_idempotent());
    CHECK(product_of(factors) == Mat2::row(x, y));
}

TEST_CASE("chain soundness on random ring pairs") {
    std::mt19937_64 rng(23);
    for (long d : {2, 10, 5}) {
        RingSpec ring(d);
        std::uniform_int_distribution<long> dist(-20, 20);
        int done = 0;
        while (done < 200) {
            long xa = dist(rng), xb = dist(rng), ya = dist(rng), yb = dist(rng);
            if (ring.form() == Form::Half) {
                xb = xa % 2 == 0 ? xb - (xb % 2) : xb | 1;
                yb = ya % 2 == 0 ? yb - (yb % 2) : yb | 1;
            }
            QuadInt x(ring, xa, xb), y(ring, ya, yb);
            if (y.is_zero()) continue;
            auto chain = find_weak_chain(x, y, 12);
            if (!chain) continue;  // pair need not be comaximal
            ++done;
            CHECK_NOTHROW(chain->validate());
            auto factors = chain_to_idempotents(*chain);
            CHECK(product_of(factors) == Mat2::row(x, y));
        }
    }
}

TEST_CASE("invalid chains are rejected") {
    RingSpec r2(2);
    QuadInt one = QuadInt::integer(r2, 1);
    QuadInt zero = QuadInt::integer(r2, 0);
    WeakChain bad{{one, one, one}, {one}};  // 1 != 1*1 + 1
    CHECK_THROWS_AS(bad.validate(), InvalidChain);
    CHECK_THROWS_AS(chain_to_idempotents(bad), InvalidChain);

    WeakChain nonzero_tail{{one, one}, {}};
    CHECK_THROWS_AS(nonzero_tail.validate(), InvalidChain);
    CHECK_NOTHROW(WeakChain{{one, zero}, {}}.validate());
}

TEST_CASE("elementary quotient replay") {
    RingSpec r2(2);
    auto euclid = elementary_to_weak_chain(
        {QuadInt::integer(r2, 3), QuadInt::integer(r2, 1), QuadInt::integer(r2, 3)},
        QuadInt::integer(r2, 15), QuadInt::integer(r2, 4));
    CHECK(euclid.length() == 3);
    CHECK(euclid.remainders[2] == QuadInt::integer(r2, 3));

    auto empty = elementary_to_weak_chain({}, QuadInt::integer(r2, 1), QuadInt::integer(r2, 0));
    CHECK(empty.length() == 0);

    CHECK_THROWS_AS(
        elementary_to_weak_chain({}, QuadInt::integer(r2, 1), QuadInt::integer(r2, 2)),
        NonTerminatingReplay);

    // Zero-quotient padding stays valid: 2 = 0*6 + 2, 6 = 3*2 + 0.
    auto padded = elementary_to_weak_chain({QuadInt::integer(r2, 0), QuadInt::integer(r2, 3)},
                                           QuadInt::integer(r2, 2), QuadInt::integer(r2, 6));
    CHECK_NOTHROW(padded.validate());
    CHECK(padded.quotients[0].is_zero());

    // A leading zero pair walks back to the seed and is dropped.
    auto trimmed = elementary_to_weak_chain(
        {QuadInt::integer(r2, 0), QuadInt::integer(r2, 0), QuadInt::integer(r2, 3),
         QuadInt::integer(r2, 1), QuadInt::integer(r2, 3)},
        QuadInt::integer(r2, 15), QuadInt::integer(r2, 4));
    CHECK(trimmed.length() == 3);
}
