#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "mobskew/confrac.hpp"
#include "mobskew/errors.hpp"

using namespace mobskew;

namespace {

PartialQuotients random_pq(std::mt19937_64& rng, std::size_t quotients, std::uint64_t amax = 100) {
    std::uniform_int_distribution<std::uint64_t> pick(1, amax);
    std::vector<BigInt> a(quotients + 1);
    a[0] = 0;
    for (std::size_t k = 1; k <= quotients; ++k) a[k] = pick(rng);
    return PartialQuotients(std::move(a), CfSource::explicit_list);
}

} // namespace

TEST_CASE("convergent seeds and examples") {
    auto half = PartialQuotients({BigInt(0), BigInt(2)}, CfSource::explicit_list);
    auto c = convergents(half, 1);
    CHECK(c[0].l == 0);
    CHECK(c[0].q == 1);
    CHECK(c[1].l == 1);
    CHECK(c[1].q == 2);

    auto fib = make_repeated_cf(1, 1, 4);
    auto cf = convergents(fib, 3);
    CHECK((cf[0].l == 1 && cf[0].q == 1));
    CHECK((cf[1].l == 2 && cf[1].q == 1));
    CHECK((cf[2].l == 3 && cf[2].q == 2));
    CHECK((cf[3].l == 5 && cf[3].q == 3));

    CHECK_THROWS_AS(convergents(half, 5), insufficient_quotients);
}

TEST_CASE("determinant identity and growth bound (seeded property)") {
    std::mt19937_64 rng(0);
    for (int trial = 0; trial < 50; ++trial) {
        auto pq = random_pq(rng, 20);
        auto c = convergents(pq, 20);
        for (std::size_t k = 1; k <= 20; ++k) {
            BigInt det = c[k].l * c[k - 1].q - c[k - 1].l * c[k].q;
            REQUIRE(det == ((k - 1) % 2 == 0 ? 1 : -1));
            REQUIRE(boost::multiprecision::gcd(c[k].l, c[k].q) == 1);
            if (k >= 1) REQUIRE(c[k].q >= c[k - 1].q + (k >= 2 ? 1 : 0));
            if (k >= 2) REQUIRE(c[k].q * c[k].q >= (BigInt(1) << (k - 1)));
        }
    }
}

TEST_CASE("liouville construction: frozen first steps") {
    CHECK(ceil_exp_of(BigInt(2)) == 8);
    CHECK(ceil_exp_of(BigInt(17)) == 24154953);

    auto pq = build_liouville_alpha(BigInt("1000000000000000000"));
    REQUIRE(pq.size() == 4);
    CHECK(pq.at(0) == 0);
    CHECK(pq.at(1) == 2);
    CHECK(pq.at(2) == 8);
    CHECK(pq.at(3) == 24154953);
    CHECK(pq.source() == CfSource::liouville_constructed);

    auto c = convergents(pq, 3);
    CHECK(c[1].q == 2);
    CHECK(c[2].q == 17);
    CHECK(c[3].q == 410634203);
    CHECK(c[3].l == 193239625);

    // q_{k+1} >= e^{q_k} for positive k, exact integer comparison against
    // the certified ceil of e^{q_k}
    for (std::size_t k = 1; k + 1 <= 3; ++k) REQUIRE(c[k + 1].q >= ceil_exp_of(c[k].q));
}

TEST_CASE("liouville cap stops before exceeding q_cap") {
    auto pq = build_liouville_alpha(BigInt(100));
    auto c = convergents(pq, pq.size() - 1);
    CHECK(c.back().q <= 100);
    CHECK(c.back().q == 17); // next would be 410634203
}

TEST_CASE("delta: golden ratio closed form and sign alternation") {
    auto golden = make_repeated_cf(1, 1, 200);
    auto d1 = delta(golden, 1, 128);
    double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    CHECK(d1.value.to_double() == doctest::Approx(phi - 2.0).epsilon(1e-15));
    CHECK(d1.abs_bound < 1e-30);

    for (std::size_t k = 0; k <= 12; ++k) {
        auto d = delta(golden, k, 128);
        REQUIRE(d.value.sign() == (k % 2 == 0 ? 1 : -1));
    }
}

TEST_CASE("delta: random expansions alternate and respect 1/(2q_{k+1}) < |d| < 1/q_{k+1}") {
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 20; ++trial) {
        auto pq = random_pq(rng, 64);
        auto c = convergents(pq, 40);
        for (std::size_t k = 2; k <= 30; k += 3) {
            auto d = delta(pq, k, 96);
            REQUIRE(d.value.sign() == (k % 2 == 0 ? 1 : -1));
            double mag = std::abs(d.value.to_double());
            double qk1 = static_cast<double>(c[k + 1].q);
            REQUIRE(mag > 1.0 / (2.0 * qk1));
            REQUIRE(mag < 1.0 / qk1);
        }
    }
}

TEST_CASE("delta: liouville tail bound |delta_k| <= e^{-q_k} for k >= 1") {
    auto pq = build_liouville_alpha(BigInt("1000000000000000000"));
    auto c = convergents(pq, 3);
    for (std::size_t k = 1; k <= 3; ++k) {
        auto d = delta(pq, k, 128);
        Real bound(128);
        Real qk = Real::of_bigint(c[k].q, 64);
        mpfr_neg(qk.raw(), qk.raw(), MPFR_RNDN);
        mpfr_exp(bound.raw(), qk.raw(), MPFR_RNDU);
        REQUIRE(mpfr_cmpabs(d.value.raw(), bound.raw()) <= 0);
    }
}

TEST_CASE("delta: insufficient tail reported") {
    auto shortpq = PartialQuotients({BigInt(0), BigInt(2), BigInt(3)}, CfSource::explicit_list);
    CHECK_THROWS_AS(delta(shortpq, 2, 128), insufficient_tail);   // needs the tail beyond a_2
    // short golden prefix cannot certify 2^-128 relative width
    auto g8 = make_repeated_cf(1, 1, 8);
    CHECK_THROWS_AS(delta(g8, 1, 128), insufficient_tail);
}

TEST_CASE("frac_multiple examples") {
    auto pq = build_liouville_alpha(BigInt("1000000000000000000"));

    auto z = frac_multiple(pq, 0, 2, 1e-12, 128);
    CHECK(z.value == 0.0);

    // n = 1: frac(delta_k) vs a direct 512-bit q_k alpha mod 1
    for (std::size_t k = 1; k <= 2; ++k) {
        auto f = frac_multiple(pq, 1, k, 1e-12, 512);
        auto d = delta(pq, k, 512);
        double expect = d.value.to_double();
        if (expect < 0) expect += 1.0;
        CHECK(f.value == doctest::Approx(expect).epsilon(1e-14));
    }

    // k = 3: |n delta_3| <= 1e6 e^{-410634203}, result is 0 or 1 mod 1
    for (std::uint64_t n : {std::uint64_t(1), std::uint64_t(1000000)}) {
        auto f = frac_multiple(pq, n, 3, 1e-9, 128);
        double dist = std::min(f.value, 1.0 - f.value);
        REQUIRE(dist <= 1e-12);
    }
}

TEST_CASE("frac_multiple agrees with exact big-rational arithmetic") {
    // invariant: for 64-bit q_k, frac_multiple matches n*q_k*(l_m/q_m) mod 1
    // at the deepest materialized convergent m
    auto golden = make_repeated_cf(1, 1, 120);
    auto c = convergents(golden, 119);
    std::mt19937_64 rng(2);
    std::uniform_int_distribution<std::uint64_t> pick_n(1, 1000000);
    for (int trial = 0; trial < 200; ++trial) {
        std::uint64_t n = pick_n(rng);
        std::size_t k = 1 + (rng() % 16);
        auto f = frac_multiple(golden, n, k, 1e-12, 128);
        BigInt num = BigInt(n) * c[k].q * c[119].l;
        BigInt r = num % c[119].q;
        double direct = static_cast<double>(BigRat(r, c[119].q));
        // the rational approximation of alpha adds n*q_k/(q_m q_{m+1})
        double slack = 1e-12 + 1e6 * 5000.0 / std::pow(1.618, 2 * 119);
        double dist = std::abs(f.value - direct);
        dist = std::min(dist, 1.0 - dist);
        REQUIRE(dist <= slack + 1e-12);
    }
}

TEST_CASE("approx inequality check: golden, liouville, and the finite-end error") {
    auto golden = make_repeated_cf(1, 1, 64);
    for (std::size_t k = 2; k <= 10; ++k) REQUIRE(approx_inequality_check(golden, k));

    auto pq = build_liouville_alpha(BigInt("1000000000000000000"));
    CHECK(approx_inequality_check(pq, 2));

    auto rational = PartialQuotients({BigInt(0), BigInt(2), BigInt(3)}, CfSource::explicit_list);
    CHECK_THROWS_AS(approx_inequality_check(rational, 2), insufficient_quotients);
    CHECK_THROWS_AS(approx_inequality_check(golden, 1), config_error);
}

TEST_CASE("sandwich holds for seeded random expansions (spec property)") {
    std::mt19937_64 rng(0);
    for (int trial = 0; trial < 25; ++trial) {
        auto pq = random_pq(rng, 20); // a_0; a_1..a_20
        for (std::size_t k = 2; k <= 18; ++k) REQUIRE(approx_inequality_check(pq, k));
    }
}

TEST_CASE("diophantine exponent estimates") {
    CHECK(diophantine_exponent_estimate(make_repeated_cf(1, 1, 22)) < 1.7);
    CHECK(diophantine_exponent_estimate(make_repeated_cf(0, 2, 16)) < 1.6); // near 1

    auto pq = build_liouville_alpha(BigInt("1000000000000000000"));
    double est = diophantine_exponent_estimate(pq);
    double q2 = 17.0;
    CHECK(est >= q2 / std::log(q2)); // log q_3 >= q_2
    CHECK(est > 5.0);
}

TEST_CASE("expand_real: exact rational, pi prefix, golden ratio") {
    auto half = expand_real(BigRat(1, 2), 10, 128);
    CHECK(half.exact_rational);
    REQUIRE(half.pq.size() == 2);
    CHECK(half.pq.at(0) == 0);
    CHECK(half.pq.at(1) == 2);
    CHECK(half.pq.source() == CfSource::float_expanded);

    // canonical form: 0.75 = [0; 1, 3], never [0; 1, 2, 1]
    auto q34 = expand_real(BigRat(3, 4), 10, 128);
    REQUIRE(q34.pq.size() == 3);
    CHECK(q34.pq.at(2) == 3);

    {
        Real pi(320);
        mpfr_const_pi(pi.raw(), MPFR_RNDN);
        BigRat pr;
        mpfr_get_q(pr.backend().data(), pi.raw());
        auto e = expand_real(pr, 40, 256);
        CHECK_FALSE(e.exact_rational);
        REQUIRE(e.certified >= 5);
        CHECK(e.pq.at(0) == 3);
        CHECK(e.pq.at(1) == 7);
        CHECK(e.pq.at(2) == 15);
        CHECK(e.pq.at(3) == 1);
        CHECK(e.pq.at(4) == 292);

        // cross-check the certified prefix against an independent expansion
        // from a deeper approximation of pi
        Real pi2(700);
        mpfr_const_pi(pi2.raw(), MPFR_RNDN);
        BigRat pr2;
        mpfr_get_q(pr2.backend().data(), pi2.raw());
        auto deep = expand_real(pr2, 60, 640);
        for (std::size_t i = 0; i < e.certified && i < deep.pq.size(); ++i)
            REQUIRE(e.pq.at(i) == deep.pq.at(i));
    }

    { // golden ratio: every certified quotient equals 1
        Real phi(256);
        mpfr_sqrt_ui(phi.raw(), 5, MPFR_RNDN);
        mpfr_add_ui(phi.raw(), phi.raw(), 1, MPFR_RNDN);
        mpfr_div_2ui(phi.raw(), phi.raw(), 1, MPFR_RNDN);
        BigRat pr;
        mpfr_get_q(pr.backend().data(), phi.raw());
        auto e = expand_real(pr, 300, 250);
        CHECK_FALSE(e.exact_rational);
        CHECK(e.certified >= 80);
        for (std::size_t i = 0; i < e.pq.size(); ++i) REQUIRE(e.pq.at(i) == 1);
    }
}

TEST_CASE("expand_real edge conditions") {
    CHECK_THROWS_AS(expand_real(BigRat(-1, 2), 10, 128), config_error);
    auto one = expand_real(BigRat(1, 1), 10, 128);
    CHECK(one.pq.size() == 1);
    CHECK(one.pq.at(0) == 1);
}

TEST_CASE("cf text serialization round-trips") {
    auto pq = build_liouville_alpha(BigInt("1000000000000000000"));
    std::string text = cf_to_text(pq);
    CHECK(text.substr(0, 28) == "CF v1 4 liouville-constructed");
    std::istringstream in(text);
    auto back = cf_from_text(in);
    CHECK(back.source() == pq.source());
    REQUIRE(back.size() == pq.size());
    for (std::size_t i = 0; i < pq.size(); ++i) REQUIRE(back.at(i) == pq.at(i));

    std::istringstream bad("CF v2 1 explicit\n3\n");
    CHECK_THROWS_AS(cf_from_text(bad), config_error);
}

TEST_CASE("partial quotient validation") {
    CHECK_THROWS_AS(PartialQuotients({}, CfSource::explicit_list), config_error);
    CHECK_THROWS_AS(PartialQuotients({BigInt(-1)}, CfSource::explicit_list), config_error);
    CHECK_THROWS_AS(PartialQuotients({BigInt(1), BigInt(0)}, CfSource::explicit_list),
                    config_error);
}

TEST_CASE("FracEvaluator matches frac_multiple") {
    auto pq = build_liouville_alpha(BigInt("1000000000000000000"));
    FracEvaluator fe(pq, 3, 128);
    std::mt19937_64 rng(3);
    for (int i = 0; i < 100; ++i) {
        std::uint64_t n = rng() % 1000000 + 1;
        std::size_t k = rng() % 4;
        REQUIRE(fe.frac(n, k) == frac_multiple(pq, n, k, 1e-10, 128).value);
    }
}
