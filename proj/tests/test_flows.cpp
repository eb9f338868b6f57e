#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "mobskew/errors.hpp"
#include "mobskew/flows.hpp"

using namespace mobskew;

namespace {

const double kPi = std::numbers::pi;

PartialQuotients liouville_alpha() {
    return build_liouville_alpha(BigInt("1000000000000000000"));
}

using Mat2 = std::vector<std::vector<std::int64_t>>;

// Brute-force quasi-unipotence for 2x2: eigenvalue orders divide
// {1,2,3,4,6}, so A is quasi-unipotent iff (A^12 - I)^2 = 0.
bool unipotent_power_oracle(const Mat2& A) {
    BigInt a = A[0][0], b = A[0][1], c = A[1][0], d = A[1][1];
    BigInt p = 1, q = 0, r = 0, s = 1; // accumulates A^12
    for (int i = 0; i < 12; ++i) {
        BigInt np = a * p + b * r, nq = a * q + b * s;
        BigInt nr = c * p + d * r, ns = c * q + d * s;
        p = np; q = nq; r = nr; s = ns;
    }
    p -= 1; s -= 1; // A^12 - I
    BigInt m00 = p * p + q * r, m01 = p * q + q * s;
    BigInt m10 = r * p + s * r, m11 = r * q + s * s;
    return m00 == 0 && m01 == 0 && m10 == 0 && m11 == 0;
}

// Eigenvalue-modulus method, 2x2 closed form: roots of x^2 - t x + det on
// the unit circle iff (det = 1 and |t| <= 2) or (det = -1 and t = 0).
bool eigenvalue_modulus_oracle(const Mat2& A) {
    std::int64_t t = A[0][0] + A[1][1];
    std::int64_t det = A[0][0] * A[1][1] - A[0][1] * A[1][0];
    return (det == 1 && std::llabs(t) <= 2) || (det == -1 && t == 0);
}

} // namespace

TEST_CASE("zero entropy examples") {
    CHECK(is_zero_entropy({{1, 0}, {0, 1}}));
    for (std::int64_t c = -3; c <= 3; ++c) CHECK(is_zero_entropy({{1, 0}, {c, 1}}));
    CHECK_FALSE(is_zero_entropy({{2, 1}, {1, 1}})); // eigenvalue (3+sqrt5)/2
    CHECK(is_zero_entropy({{0, -1}, {1, 0}}));      // order 4 rotation
    CHECK(is_zero_entropy({{0, -1}, {1, 1}}));      // order 6
    CHECK_FALSE(is_zero_entropy({{2, 0}, {0, 1}})); // det 2
}

TEST_CASE("zero entropy equals both brute-force criteria on [-3,3]^4") {
    Mat2 A = {{0, 0}, {0, 0}};
    for (std::int64_t a = -3; a <= 3; ++a)
        for (std::int64_t b = -3; b <= 3; ++b)
            for (std::int64_t c = -3; c <= 3; ++c)
                for (std::int64_t d = -3; d <= 3; ++d) {
                    A[0] = {a, b};
                    A[1] = {c, d};
                    bool want = unipotent_power_oracle(A);
                    REQUIRE(is_zero_entropy(A) == want);
                    REQUIRE(eigenvalue_modulus_oracle(A) == want);
                }
}

TEST_CASE("char poly and determinant") {
    auto p = char_poly({{2, 1}, {1, 1}});
    REQUIRE(p.size() == 3);
    CHECK(p[2] == 1);
    CHECK(p[1] == -3);
    CHECK(p[0] == 1);
    CHECK(integer_det({{2, 1}, {1, 1}}) == 1);
    CHECK(integer_det({{0, 1}, {1, 0}}) == -1);
    CHECK(integer_det({{1, 2, 3}, {0, 1, 4}, {0, 0, -1}}) == -1);
}

TEST_CASE("affine orbit examples") {
    auto idmap = AffineTorusMap::make({{1, 0}, {0, 1}}, {0.0, 0.0});
    auto orb = affine_orbit(idmap, {0.3, 0.7}, 5);
    for (const auto& p : orb) {
        CHECK(p[0] == 0.3);
        CHECK(p[1] == 0.7);
    }

    double alpha = std::sqrt(2.0) - 1.0;
    auto rot = AffineTorusMap::make({{1}}, {alpha});
    auto r = affine_orbit(rot, {0.25}, 100);
    for (std::uint64_t n = 0; n <= 100; ++n) {
        double want = 0.25 + static_cast<double>(n) * alpha;
        want -= std::floor(want);
        REQUIRE(r[n][0] == doctest::Approx(want).epsilon(1e-12));
    }

    // A = [[1,0],[1,1]], b = (alpha, 0): y_n = frac(n(n-1)/2 alpha)
    auto nil = AffineTorusMap::make({{1, 0}, {1, 1}}, {alpha, 0.0});
    auto o = affine_orbit(nil, {0.0, 0.0}, 300);
    for (std::uint64_t n = 0; n <= 300; n += 7) {
        double tri = static_cast<double>(n) * static_cast<double>(n - (n > 0 ? 1 : 0)) / 2.0;
        double want = tri * alpha;
        want -= std::floor(want);
        REQUIRE(o[n][1] == doctest::Approx(want).epsilon(1e-9));
    }

    CHECK_THROWS_AS(AffineTorusMap::make({{2, 0}, {0, 1}}, {0.0, 0.0}), config_error);
}

TEST_CASE("analytic Fourier series decay certification") {
    // coefficients exactly e^{-tau |m|}
    double tau = 0.8;
    std::vector<Cplx> c;
    for (int m = -6; m <= 6; ++m) c.emplace_back(std::exp(-tau * std::abs(m)), 0.0);
    auto ok = AnalyticFourierSeries::make(6, c, tau, 1.0);
    CHECK(ok.K1() == 1.0);
    CHECK(ok.hat(0) == Cplx{1.0, 0.0});
    CHECK(ok.hat(7) == Cplx{0.0, 0.0});

    // declaring a faster decay than the data has must be rejected
    CHECK_THROWS_AS(AnalyticFourierSeries::make(6, c, 2.0 * tau, 1.0), config_error);

    // fitted K1 makes the same data admissible at the declared tau
    auto fitted = AnalyticFourierSeries::make(6, c, 2.0 * tau);
    CHECK(fitted.K1() == doctest::Approx(std::exp(tau * 6.0)).epsilon(1e-12));

    // tau2 lower bound: a zero interior coefficient violates it
    auto c2 = c;
    c2[6 + 3] = 0.0;
    CHECK_THROWS_AS(AnalyticFourierSeries::make(6, c2, tau, 1.0, 1.0, 0.5), config_error);
    auto ok2 = AnalyticFourierSeries::make(6, c, tau, 1.0, tau, 0.5);
    CHECK(ok2.tau2().has_value());

    // eval at 0 is the plain coefficient sum
    double sum0 = 0.0;
    for (int m = -6; m <= 6; ++m) sum0 += std::exp(-tau * std::abs(m));
    CHECK(ok.eval(0.0).real() == doctest::Approx(sum0).epsilon(1e-14));
    CHECK(ok.eval(0.0).imag() == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("furstenberg cocycle construction") {
    auto co = FurstenbergCocycle::furstenberg_example(liouville_alpha());
    CHECK(co.C() == 1.0);
    CHECK(co.K_support() == 3);
    CHECK(co.c(1) == Cplx{-1.0, 0.0});
    CHECK(co.c(3) == Cplx{-1.0 / 3.0, 0.0});

    auto cc = FurstenbergCocycle::constant_rule(liouville_alpha(), 2.5);
    CHECK(cc.C() == 2.5);

    CHECK_THROWS_AS(FurstenbergCocycle::custom(liouville_alpha(), {Cplx{3.0, 0.0}}, 2.0),
                    config_error);
}

TEST_CASE("h_eval examples") {
    auto alpha = liouville_alpha();
    auto zero = FurstenbergCocycle::constant_rule(alpha, 0.0);
    CHECK(h_eval(zero, 0.37, 3) == Cplx{0.0, 0.0});

    auto co = FurstenbergCocycle::furstenberg_example(alpha);
    // x = 0, K = 1, real c_1: h = 2 Re[c_1 (1 - e(q_1 alpha))]
    auto d1 = delta(alpha, 1, 128);
    Cplx e_q1a = std::polar(1.0, 2.0 * kPi * d1.value.to_double());
    Cplx expect = 2.0 * (Cplx{-1.0, 0.0} * (1.0 - e_q1a)).real();
    Cplx got = h_eval(co, 0.0, 1);
    CHECK(std::abs(got - expect) < 1e-12);

    // term-by-term independent summation at x = 0.25, K = 3
    auto conv = convergents(alpha, 3);
    Cplx direct = 0.0;
    for (int k = 1; k <= 3; ++k) {
        auto dk = delta(alpha, static_cast<std::size_t>(k), 256);
        double dkd = dk.value.to_double();
        Cplx ck{-1.0 / k, 0.0};
        double qx = std::fmod(static_cast<double>(conv[static_cast<std::size_t>(k)].q) * 0.25, 1.0);
        Cplx epos = std::polar(1.0, 2.0 * kPi * qx);
        Cplx ealpha = std::polar(1.0, 2.0 * kPi * dkd);
        direct += ck * (1.0 - ealpha) * epos + ck * (1.0 - std::conj(ealpha)) * std::conj(epos);
    }
    CHECK(std::abs(h_eval(co, 0.25, 3) - direct) < 1e-7); // fmod phase at q_3 ~ 4e8 is the cruder side
    CHECK(std::abs(h_eval(co, 0.25, 2) - (direct - (Cplx{-1.0 / 3, 0} *
                                                    (2.0 - 2.0 * std::cos(2.0 * kPi * std::fmod(
                                                   static_cast<double>(conv[3].q) * 0.25, 1.0)))))) <
          1e-7);
}

TEST_CASE("g_partial: harmonic value at 0, Parseval tail, coboundary identity") {
    auto alpha = liouville_alpha();
    double harmonic = 0.0;
    for (int k = 1; k <= 3; ++k) harmonic += 2.0 / k;
    CHECK(g_partial(alpha, 0.0, 3).real() == doctest::Approx(harmonic).epsilon(1e-12));

    // truncated Parseval: sum_{1<=|k|<=K} 1/k^2 -> pi^2/3
    double parseval = 0.0;
    for (int k = 1; k <= 20000; ++k) parseval += 2.0 / (static_cast<double>(k) * k);
    CHECK(parseval == doctest::Approx(kPi * kPi / 3.0).epsilon(1e-4));

    // h(x) = g(x + alpha) - g(x) termwise for c_k = -1/|k|
    auto co = FurstenbergCocycle::furstenberg_example(alpha);
    auto d0 = delta(alpha, 0, 192);
    DD alpha_dd;
    alpha_dd.hi = d0.value.to_double();
    {
        Real rest(192);
        mpfr_sub_d(rest.raw(), d0.value.raw(), alpha_dd.hi, MPFR_RNDN);
        alpha_dd.lo = rest.to_double();
    }
    for (double x : {0.0, 0.1, 0.37, 0.93}) {
        for (std::size_t K = 1; K <= 3; ++K) {
            DD xdd = dd_from_double(x);
            Cplx lhs = h_eval(co, xdd, K, 192);
            Cplx rhs = g_partial(alpha, dd_add(xdd, alpha_dd), K) - g_partial(alpha, xdd, K);
            REQUIRE(std::abs(lhs - rhs) < 1e-12);
        }
    }
}

TEST_CASE("cocycle sums: trivial cases and the telescoping oracle") {
    auto alpha = liouville_alpha();
    auto zero = FurstenbergCocycle::constant_rule(alpha, 0.0);
    CHECK(cocycle_sum_naive(zero, 50, 3) == Cplx{0.0, 0.0});
    CHECK(cocycle_sum_telescoped(zero, 777, 3) == Cplx{0.0, 0.0});

    auto co = FurstenbergCocycle::furstenberg_example(alpha);
    // n = 1: both equal h_eval at 0
    Cplx h0 = h_eval(co, 0.0, 3);
    CHECK(std::abs(cocycle_sum_naive(co, 1, 3) - h0) < 1e-12);
    CHECK(std::abs(cocycle_sum_telescoped(co, 1, 3) - h0) < 1e-12);

    std::mt19937_64 rng(0);
    for (int trial = 0; trial < 30; ++trial) {
        std::uint64_t n = rng() % 2000 + 1;
        std::size_t K = rng() % 3 + 1;
        Cplx a = cocycle_sum_naive(co, n, K, 128);
        Cplx b = cocycle_sum_telescoped(co, n, K, 128);
        REQUIRE(std::abs(a - b) <= 1e-8);
    }
}

TEST_CASE("telescoped truncation tail: K vs K+1 bounded by 4 pi C n e^{-q_{K+1}}") {
    auto alpha = liouville_alpha();
    auto co = FurstenbergCocycle::furstenberg_example(alpha);
    auto conv = convergents(alpha, 3);
    for (std::uint64_t n : {std::uint64_t(100), std::uint64_t(10000)}) {
        for (std::size_t K = 1; K <= 2; ++K) {
            Cplx a = cocycle_sum_telescoped(co, n, K);
            Cplx b = cocycle_sum_telescoped(co, n, K + 1);
            double qK1 = static_cast<double>(conv[K + 1].q);
            double bound = 4.0 * kPi * co.C() * static_cast<double>(n) * std::exp(-qK1) + 1e-12;
            REQUIRE(std::abs(a - b) <= bound);
        }
    }
}

TEST_CASE("truncation cutoff brackets 2 log N") {
    auto alpha = liouville_alpha();
    CHECK(truncation_cutoff(alpha, 1000) == 2);    // 2 < 13.8 <= 17
    CHECK(truncation_cutoff(alpha, 10000) == 3);   // 17 < 18.4 <= q_3
    CHECK(truncation_cutoff(alpha, 1000000) == 3); // 17 < 27.6 <= q_3
    CHECK(truncation_cutoff(alpha, 2) == 1);       // 1 < 1.386 <= 2

    auto shortpq = PartialQuotients({BigInt(0), BigInt(2), BigInt(8)}, CfSource::explicit_list);
    CHECK_THROWS_AS(truncation_cutoff(shortpq, 1000000), insufficient_quotients);
    CHECK_THROWS_AS(truncation_cutoff(alpha, 1), insufficient_quotients);
}

TEST_CASE("tower lower bound and the (3.13) chain at materialized indices") {
    CHECK(tower_lower_bound(0) == 2.0);
    CHECK(tower_lower_bound(1) == doctest::Approx(std::exp(2.0)).epsilon(1e-15));
    CHECK(tower_lower_bound(2) == doctest::Approx(std::exp(std::exp(2.0))).epsilon(1e-12));

    // q_k >= exp^{(k-2)}(q_2) >= exp^{(k-2)}(2): desk-scale content of the
    // tower bound, exact at the materialized k of the Liouville alpha
    auto conv = convergents(liouville_alpha(), 3);
    CHECK(static_cast<double>(conv[2].q) >= tower_lower_bound(0));
    CHECK(static_cast<double>(conv[3].q) >= tower_lower_bound(1));
    // hence any K >= 4 cutoff would force tower(K-3) <= q_{K-1} < 2 log N
}

TEST_CASE("birkhoff average examples") {
    std::vector<Cplx> ones(1000, Cplx{1.0, 0.0});
    CHECK(birkhoff_average(ones) == Cplx{1.0, 0.0});

    std::vector<Cplx> alt(2000);
    for (std::size_t n = 0; n < alt.size(); ++n) alt[n] = (n + 1) % 2 == 0 ? 1.0 : -1.0;
    CHECK(std::abs(birkhoff_average(alt)) == 0.0);

    // geometric sum bound: |(1/N) sum e(n alpha)| <= 1/(2 ||alpha|| N)
    double alpha = std::sqrt(2.0) - 1.0;
    const std::uint64_t N = 100000;
    std::vector<Cplx> rot(N);
    for (std::uint64_t n = 1; n <= N; ++n)
        rot[n - 1] = unit_phase(frac_n_theta(n, dd_from_double(alpha)));
    double dist = std::min(alpha, 1.0 - alpha);
    CHECK(std::abs(birkhoff_average(rot)) <= 1.0 / (2.0 * dist * static_cast<double>(N)) + 1e-12);
}

TEST_CASE("skew orbit: trivial forms and the y_N closed form") {
    auto alpha = liouville_alpha();
    // h = 0, c = 0: product of rotations, y constant
    auto T0 = SkewProductMap::make(1, 0, 1, alpha, std::monostate{});
    auto o0 = skew_orbit(T0, {0.2, 0.6}, 200);
    FracEvaluator fe(alpha, 0, 128);
    for (std::uint64_t j = 0; j <= 200; ++j) {
        REQUIRE(o0[j][1] == 0.6);
        double want = 0.2 + fe.frac(j, 0);
        want -= std::floor(want);
        REQUIRE(o0[j][0] == doctest::Approx(want).epsilon(1e-14));
    }

    // a = d = 1, c = 0: y_N = y_0 + sum_{j<N} h(x_0 + j alpha) mod 1
    auto co = FurstenbergCocycle::furstenberg_example(alpha);
    auto T = SkewProductMap::make(1, 0, 1, alpha, co);
    const std::uint64_t N = 200;
    auto orb = skew_orbit(T, {0.0, 0.0}, N, PrecisionMode::extended);
    double acc = 0.0;
    for (std::uint64_t j = 0; j < N; ++j) {
        double xj = fe.frac(j, 0);
        acc += h_eval(co, xj, truncation_cutoff(alpha, N)).real();
    }
    acc -= std::floor(acc);
    CHECK(orb[N][1] == doctest::Approx(acc).epsilon(1e-7));

    CHECK_THROWS_AS(SkewProductMap::make(2, 0, 1, alpha, std::monostate{}), config_error);
}

TEST_CASE("skew orbit: double vs extended deviation stays below 1e-6") {
    auto alpha = liouville_alpha();
    auto co = FurstenbergCocycle::furstenberg_example(alpha);
    auto T = SkewProductMap::make(1, 1, 1, alpha, co);
    const std::uint64_t N = 1000;
    auto lo = skew_orbit(T, {0.0, 0.0}, N, PrecisionMode::double_prec);
    auto hi = skew_orbit(T, {0.0, 0.0}, N, PrecisionMode::extended);
    double worst = 0.0;
    for (std::uint64_t j = 0; j <= N; ++j) {
        double dx = std::abs(lo[j][0] - hi[j][0]);
        double dy = std::abs(lo[j][1] - hi[j][1]);
        dy = std::min(dy, 1.0 - dy); // mod-1 distance
        worst = std::max({worst, dx, dy});
    }
    CHECK(worst < 1e-6);
}

TEST_CASE("irregularity scan") {
    auto alpha = liouville_alpha();
    std::vector<std::uint64_t> grid = {100, 1000, 10000};

    auto T0 = SkewProductMap::make(1, 0, 1, alpha, std::monostate{});
    auto trivial = irregularity_scan(T0, 0, 0, grid);
    for (const auto& [N, avg] : trivial.averages) CHECK(avg == Cplx{1.0, 0.0});
    CHECK(trivial.oscillation == 0.0);
    CHECK(trivial.generic_alpha);

    // rotation observable with h = 0: averages shrink like 1/N
    auto rot = irregularity_scan(T0, 1, 0, grid);
    CHECK(std::abs(rot.averages.back().second) < std::abs(rot.averages.front().second));
    CHECK(std::abs(rot.averages.back().second) < 1e-3);

    // Furstenberg instance: oscillation reported, no threshold asserted
    auto co = FurstenbergCocycle::furstenberg_example(alpha);
    auto T = SkewProductMap::make(1, 0, 1, alpha, co);
    auto rep = irregularity_scan(T, 0, 1, grid);
    CHECK(rep.oscillation >= 0.0);
    CHECK(rep.max_abs <= 1.0 + 1e-12);

    auto Tr = SkewProductMap::make(1, 0, 1, 0.25, std::monostate{});
    auto nong = irregularity_scan(Tr, 1, 0, grid);
    CHECK_FALSE(nong.generic_alpha); // rational alpha flagged
}
