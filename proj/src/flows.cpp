#include "mobskew/flows.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>

#include "mobskew/errors.hpp"
#include "mobskew/parallel.hpp"

namespace mobskew {

namespace {

double frac01(double x) {
    double f = x - std::floor(x);
    if (f >= 1.0) f = 0.0;
    return f;
}

// e(f) for f in [0,1), reduced to the symmetric interval first so that
// f and 1-f give exactly conjugate values.
Cplx unit_frac(double f) {
    return unit_phase(f >= 0.5 ? f - 1.0 : f);
}

using Poly = std::vector<BigInt>; // coeff[i] * x^i, normalized (trailing nonzero)

void poly_trim(Poly& p) {
    while (p.size() > 1 && p.back() == 0) p.pop_back();
}

// Divide by a monic divisor; returns false if the remainder is nonzero.
bool poly_div_exact(const Poly& num, const Poly& den, Poly& quot) {
    if (den.back() != 1) return false;
    if (num.size() < den.size()) return false;
    Poly rem = num;
    quot.assign(num.size() - den.size() + 1, BigInt(0));
    for (std::size_t i = quot.size(); i-- > 0;) {
        BigInt c = rem[i + den.size() - 1];
        quot[i] = c;
        if (c == 0) continue;
        for (std::size_t j = 0; j < den.size(); ++j) rem[i + j] -= c * den[j];
    }
    for (const BigInt& c : rem)
        if (c != 0) return false;
    return true;
}

unsigned euler_phi(unsigned n) {
    unsigned result = n;
    for (unsigned p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            result -= result / p;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

const Poly& cyclotomic(unsigned n) {
    static std::map<unsigned, Poly> memo;
    auto it = memo.find(n);
    if (it != memo.end()) return it->second;

    Poly xn_minus_1(n + 1, BigInt(0));
    xn_minus_1[0] = -1;
    xn_minus_1[n] = 1;
    Poly phi = xn_minus_1;
    for (unsigned d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        Poly q;
        if (!poly_div_exact(phi, cyclotomic(d), q))
            throw std::logic_error("cyclotomic: inexact division");
        phi = std::move(q);
    }
    return memo.emplace(n, std::move(phi)).first->second;
}

using IMat = std::vector<std::vector<BigInt>>;

IMat to_big(const std::vector<std::vector<std::int64_t>>& A) {
    IMat B(A.size(), std::vector<BigInt>(A.size()));
    for (std::size_t i = 0; i < A.size(); ++i) {
        if (A[i].size() != A.size()) throw config_error("matrix must be square");
        for (std::size_t j = 0; j < A.size(); ++j) B[i][j] = A[i][j];
    }
    return B;
}

IMat mat_mul(const IMat& a, const IMat& b) {
    std::size_t n = a.size();
    IMat r(n, std::vector<BigInt>(n, BigInt(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            if (a[i][k] == 0) continue;
            for (std::size_t j = 0; j < n; ++j) r[i][j] += a[i][k] * b[k][j];
        }
    return r;
}

BigInt mat_trace(const IMat& a) {
    BigInt t = 0;
    for (std::size_t i = 0; i < a.size(); ++i) t += a[i][i];
    return t;
}

} // namespace

std::vector<BigInt> char_poly(const std::vector<std::vector<std::int64_t>>& A) {
    // Faddeev-LeVerrier; every division is exact over the integers.
    IMat Ab = to_big(A);
    std::size_t n = Ab.size();
    std::vector<BigInt> c(n + 1, BigInt(0));
    c[n] = 1;
    IMat M = Ab; // M_1
    c[n - 1] = -mat_trace(M);
    for (std::size_t k = 2; k <= n; ++k) {
        for (std::size_t i = 0; i < n; ++i) M[i][i] += c[n - k + 1];
        M = mat_mul(Ab, M);
        BigInt t = mat_trace(M);
        BigInt ck = -t / BigInt(static_cast<long>(k));
        if (ck * BigInt(static_cast<long>(k)) != -t)
            throw std::logic_error("char_poly: inexact trace division");
        c[n - k] = ck;
    }
    return c;
}

BigInt integer_det(const std::vector<std::vector<std::int64_t>>& A) {
    auto c = char_poly(A);
    BigInt det = c[0];
    if (A.size() % 2 == 1) det = -det; // det = (-1)^n c_0
    return det;
}

bool is_zero_entropy(const std::vector<std::vector<std::int64_t>>& A) {
    Poly p = char_poly(A);
    poly_trim(p);
    const unsigned dim = static_cast<unsigned>(A.size());
    // all n with phi(n) <= dim; phi(n) >= sqrt(n/2) bounds the search
    for (unsigned n = 1; n <= 2 * dim * dim + 2; ++n) {
        if (euler_phi(n) > dim) continue;
        const Poly& phi = cyclotomic(n);
        Poly q;
        while (p.size() > 1 && poly_div_exact(p, phi, q)) p = q;
    }
    return p.size() == 1 && p[0] == 1;
}

AffineTorusMap AffineTorusMap::make(std::vector<std::vector<std::int64_t>> A,
                                    std::vector<double> b) {
    AffineTorusMap m;
    m.dim = A.size();
    if (m.dim == 0 || b.size() != m.dim) throw config_error("AffineTorusMap: bad dimensions");
    BigInt det = integer_det(A);
    if (det != 1 && det != -1) throw config_error("AffineTorusMap: |det A| must be 1");
    m.A = std::move(A);
    m.b.resize(m.dim);
    for (std::size_t i = 0; i < m.dim; ++i) m.b[i] = frac01(b[i]);
    return m;
}

std::vector<std::vector<double>> affine_orbit(const AffineTorusMap& map,
                                              const std::vector<double>& x0, std::uint64_t N) {
    if (x0.size() != map.dim) throw config_error("affine_orbit: dimension mismatch");
    std::vector<std::vector<double>> orbit;
    orbit.reserve(N + 1);
    std::vector<double> x(map.dim);
    for (std::size_t i = 0; i < map.dim; ++i) x[i] = frac01(x0[i]);
    orbit.push_back(x);
    std::vector<double> y(map.dim);
    for (std::uint64_t n = 0; n < N; ++n) {
        for (std::size_t i = 0; i < map.dim; ++i) {
            double s = map.b[i];
            for (std::size_t j = 0; j < map.dim; ++j)
                s += static_cast<double>(map.A[i][j]) * x[j];
            y[i] = frac01(s);
        }
        x = y;
        orbit.push_back(x);
    }
    return orbit;
}

AnalyticFourierSeries AnalyticFourierSeries::make(int m_max, std::vector<Cplx> coeffs,
                                                  double tau, std::optional<double> K1,
                                                  std::optional<double> tau2,
                                                  std::optional<double> K2) {
    if (m_max < 0) throw config_error("AnalyticFourierSeries: m_max must be >= 0");
    if (coeffs.size() != static_cast<std::size_t>(2 * m_max + 1))
        throw config_error("AnalyticFourierSeries: need 2*m_max+1 coefficients");
    if (tau <= 0) throw config_error("AnalyticFourierSeries: tau must be > 0");

    AnalyticFourierSeries s;
    s.m_max_ = m_max;
    s.coeffs_ = std::move(coeffs);
    s.tau_ = tau;
    if (K1) {
        for (int m = -m_max; m <= m_max; ++m) {
            double bound = *K1 * std::exp(-tau * std::abs(m));
            if (std::abs(s.hat(m)) > bound)
                throw config_error("AnalyticFourierSeries: coefficient at m=" +
                                   std::to_string(m) + " violates the declared tau bound");
        }
        s.K1_ = *K1;
    } else {
        double fit = 0.0;
        for (int m = -m_max; m <= m_max; ++m)
            fit = std::max(fit, std::abs(s.hat(m)) * std::exp(tau * std::abs(m)));
        s.K1_ = fit;
    }
    if (tau2) {
        if (*tau2 <= 0) throw config_error("AnalyticFourierSeries: tau2 must be > 0");
        s.tau2_ = tau2;
        if (K2) {
            for (int m = -m_max; m <= m_max; ++m) {
                if (m == 0) continue;
                double bound = *K2 * std::exp(-*tau2 * std::abs(m));
                if (std::abs(s.hat(m)) < bound)
                    throw config_error("AnalyticFourierSeries: coefficient at m=" +
                                       std::to_string(m) + " violates the tau2 lower bound");
            }
            s.K2_ = K2;
        } else {
            double fit = std::numeric_limits<double>::infinity();
            for (int m = -m_max; m <= m_max; ++m) {
                if (m == 0) continue;
                fit = std::min(fit, std::abs(s.hat(m)) * std::exp(*tau2 * std::abs(m)));
            }
            s.K2_ = (m_max >= 1) ? std::optional<double>(fit) : std::nullopt;
        }
    }
    return s;
}

Cplx AnalyticFourierSeries::eval(double x) const {
    Cplx sum = hat(0);
    for (int m = 1; m <= m_max_; ++m) {
        Cplx e = unit_phase(frac_n_theta(static_cast<std::uint64_t>(m), dd_from_double(x)));
        sum += hat(m) * e + hat(-m) * std::conj(e);
    }
    return sum;
}

FurstenbergCocycle::FurstenbergCocycle(PartialQuotients alpha, std::vector<Cplx> c, double C)
    : alpha_(std::move(alpha)), c_(std::move(c)), C_(C) {
    if (C_ < 1.0) throw config_error("FurstenbergCocycle: C must be >= 1");
    if (c_.size() + 1 > alpha_.size())
        throw config_error("FurstenbergCocycle: coefficient support exceeds materialized quotients");
    for (std::size_t k = 0; k < c_.size(); ++k)
        if (std::abs(c_[k]) > C_)
            throw config_error("FurstenbergCocycle: |c_" + std::to_string(k + 1) +
                               "| exceeds the bound C");
}

FurstenbergCocycle FurstenbergCocycle::furstenberg_example(PartialQuotients alpha,
                                                           std::size_t K) {
    std::size_t J = alpha.size() - 1;
    if (K == 0 || K > J) K = J;
    std::vector<Cplx> c(K);
    for (std::size_t k = 1; k <= K; ++k) c[k - 1] = {-1.0 / static_cast<double>(k), 0.0};
    return FurstenbergCocycle(std::move(alpha), std::move(c), 1.0);
}

FurstenbergCocycle FurstenbergCocycle::constant_rule(PartialQuotients alpha, double c0,
                                                     std::size_t K) {
    std::size_t J = alpha.size() - 1;
    if (K == 0 || K > J) K = J;
    std::vector<Cplx> c(K, Cplx{c0, 0.0});
    return FurstenbergCocycle(std::move(alpha), std::move(c), std::max(1.0, std::abs(c0)));
}

FurstenbergCocycle FurstenbergCocycle::custom(PartialQuotients alpha, std::vector<Cplx> c,
                                              std::optional<double> C) {
    double bound = 1.0;
    for (const Cplx& ck : c) bound = std::max(bound, std::abs(ck));
    return FurstenbergCocycle(std::move(alpha), std::move(c), C.value_or(bound));
}

SkewProductMap SkewProductMap::make(std::int64_t a, std::int64_t c, std::int64_t d,
                                    std::variant<double, PartialQuotients> alpha,
                                    std::variant<std::monostate, AnalyticFourierSeries,
                                                 FurstenbergCocycle> h) {
    if (a * d != 1 && a * d != -1)
        throw config_error("SkewProductMap: need a*d = +-1 (zero-entropy triangular form)");
    SkewProductMap T;
    T.a = a;
    T.c = c;
    T.d = d;
    T.alpha = std::move(alpha);
    T.h = std::move(h);
    return T;
}

bool SkewProductMap::alpha_is_generic() const {
    return std::holds_alternative<PartialQuotients>(alpha);
}

namespace {

// q_k as u64 when it fits; h_eval and g_partial need the double-double fast
// path only for 53-bit q.
bool fits_u64(const BigInt& q, std::uint64_t& out) {
    if (q < 0 || bigint_bits(q) > 53) return false;
    out = q.convert_to<std::uint64_t>();
    return true;
}

// frac(q * (x.hi + x.lo)) for arbitrarily large exact integer q.
double frac_bigint_times_dd(const BigInt& q, DD x, mpfr_prec_t prec) {
    mpfr_prec_t work = std::max<mpfr_prec_t>(prec, bigint_bits(q) + 128);
    mpfr_t t, u, fl;
    mpfr_init2(t, work);
    mpfr_init2(u, work);
    mpfr_init2(fl, work);
    mpfr_set_d(t, x.hi, MPFR_RNDN);
    mpfr_add_d(t, t, x.lo, MPFR_RNDN);
    mpfr_mul_z(u, t, q.backend().data(), MPFR_RNDN);
    mpfr_floor(fl, u);
    mpfr_sub(u, u, fl, MPFR_RNDN);
    double f = mpfr_get_d(u, MPFR_RNDN);
    mpfr_clear(t);
    mpfr_clear(u);
    mpfr_clear(fl);
    return f >= 1.0 ? 0.0 : f;
}

Cplx unit_of_qx(const BigInt& q, DD x, mpfr_prec_t prec) {
    std::uint64_t qu;
    if (fits_u64(q, qu)) return unit_phase(frac_n_theta(qu, x));
    return unit_frac(frac_bigint_times_dd(q, x, prec));
}

} // namespace

Cplx h_eval(const FurstenbergCocycle& co, DD x, std::size_t K, mpfr_prec_t precision_bits) {
    if (K > co.K_support()) throw config_error("h_eval: K exceeds cocycle support");
    if (K == 0) return {0.0, 0.0};
    FracEvaluator fe(co.alpha(), K, precision_bits);
    auto conv = convergents(co.alpha(), K);
    Cplx sum = 0.0;
    for (std::size_t k = 1; k <= K; ++k) {
        Cplx e_alpha = unit_frac(fe.frac(1, k)); // e(q_k alpha)
        Cplx e_x = unit_of_qx(conv[k].q, x, precision_bits);
        sum += co.c(k) * ((1.0 - e_alpha) * e_x + (1.0 - std::conj(e_alpha)) * std::conj(e_x));
    }
    return sum;
}

Cplx h_eval(const FurstenbergCocycle& co, double x, std::size_t K, mpfr_prec_t precision_bits) {
    return h_eval(co, dd_from_double(x), K, precision_bits);
}

Cplx g_partial(const PartialQuotients& alpha, DD x, std::size_t K) {
    if (K + 1 > alpha.size()) throw insufficient_quotients("g_partial: K exceeds quotients");
    auto conv = convergents(alpha, K);
    double sum = 0.0;
    for (std::size_t k = 1; k <= K; ++k)
        sum += 2.0 * unit_of_qx(conv[k].q, x, 128).real() / static_cast<double>(k);
    return {sum, 0.0};
}

Cplx g_partial(const PartialQuotients& alpha, double x, std::size_t K) {
    return g_partial(alpha, dd_from_double(x), K);
}

Cplx cocycle_sum_naive(const FurstenbergCocycle& co, std::uint64_t n, std::size_t K,
                       mpfr_prec_t precision_bits) {
    if (n < 1) throw config_error("cocycle_sum_naive: n must be >= 1");
    if (K > co.K_support()) throw config_error("cocycle_sum_naive: K exceeds support");
    FracEvaluator fe(co.alpha(), K, precision_bits);

    // weights for the +k and -k terms: c_k (1 - e(+-q_k alpha))
    std::vector<Cplx> w_pos(K + 1), w_neg(K + 1);
    for (std::size_t k = 1; k <= K; ++k) {
        Cplx e_alpha = unit_frac(fe.frac(1, k));
        w_pos[k] = co.c(k) * (1.0 - e_alpha);
        w_neg[k] = co.c(k) * (1.0 - std::conj(e_alpha));
    }

    Cplx sum = 0.0;
    for (std::uint64_t j = 0; j < n; ++j) {
        for (std::size_t k = 1; k <= K; ++k) {
            Cplx e_jx = unit_frac(fe.frac(j, k)); // e(q_k j alpha)
            sum += w_pos[k] * e_jx + w_neg[k] * std::conj(e_jx);
        }
    }
    return sum;
}

Cplx cocycle_sum_telescoped(const FurstenbergCocycle& co, std::uint64_t n, std::size_t K,
                            mpfr_prec_t precision_bits) {
    if (n < 1) throw config_error("cocycle_sum_telescoped: n must be >= 1");
    if (K > co.K_support()) throw config_error("cocycle_sum_telescoped: K exceeds support");
    FracEvaluator fe(co.alpha(), K, precision_bits);
    Cplx sum = 0.0;
    for (std::size_t k = 1; k <= K; ++k) {
        double f = fe.frac(n, k); // n q_k alpha mod 1
        sum += co.c(k) * (2.0 - 2.0 * unit_frac(f).real());
    }
    return sum;
}

std::size_t truncation_cutoff(const PartialQuotients& alpha, std::uint64_t N) {
    if (N < 2)
        throw insufficient_quotients("truncation_cutoff: 2 log N <= 0 cannot be bracketed");
    const std::size_t J = alpha.size() - 1;
    auto conv = convergents(alpha, J);

    for (mpfr_prec_t prec = 128; prec <= 4096; prec *= 2) {
        Real t_lo(prec), t_hi(prec);
        mpfr_set_uj(t_lo.raw(), N, MPFR_RNDD);
        mpfr_log(t_lo.raw(), t_lo.raw(), MPFR_RNDD);
        mpfr_mul_2ui(t_lo.raw(), t_lo.raw(), 1, MPFR_RNDD);
        mpfr_set_uj(t_hi.raw(), N, MPFR_RNDU);
        mpfr_log(t_hi.raw(), t_hi.raw(), MPFR_RNDU);
        mpfr_mul_2ui(t_hi.raw(), t_hi.raw(), 1, MPFR_RNDU);

        for (std::size_t K = 1; K <= J; ++K) {
            bool upper_ok = mpfr_cmp_z(t_hi.raw(), conv[K].q.backend().data()) <= 0;
            bool lower_ok = mpfr_cmp_z(t_lo.raw(), conv[K - 1].q.backend().data()) > 0;
            if (upper_ok && lower_ok) return K;
            if (upper_ok && !lower_ok) break; // ambiguous at this precision; retry
        }
        bool beyond = mpfr_cmp_z(t_lo.raw(), conv[J].q.backend().data()) > 0;
        if (beyond)
            throw insufficient_quotients("truncation_cutoff: 2 log N exceeds every "
                                         "materialized q_k");
    }
    throw precision_error("truncation_cutoff: could not certify the bracket");
}

double tower_lower_bound(unsigned j) {
    double v = 2.0;
    for (unsigned i = 0; i < j; ++i) v = std::exp(v);
    return v;
}

Cplx birkhoff_average(std::span<const Cplx> values) {
    if (values.empty()) throw config_error("birkhoff_average: empty observable");
    Cplx s = pairwise_map_reduce<Cplx>(0, values.size(),
                                       [&](std::uint64_t i) { return values[i]; }, 1);
    return s / static_cast<double>(values.size());
}

std::vector<std::array<double, 2>> skew_orbit(const SkewProductMap& T, std::array<double, 2> p0,
                                              std::uint64_t N, PrecisionMode mode,
                                              mpfr_prec_t precision_bits) {
    const mpfr_prec_t yprec = std::max<mpfr_prec_t>(96, precision_bits);
    const bool extended = mode == PrecisionMode::extended;

    // x_j closed form: a = +1: x_j = x0 + j alpha; a = -1: period 2.
    std::optional<FracEvaluator> fe;
    DD alpha_dd{0.0, 0.0};
    if (const auto* pq = std::get_if<PartialQuotients>(&T.alpha)) {
        fe.emplace(*pq, 0, precision_bits);
    } else {
        alpha_dd = dd_from_double(std::get<double>(T.alpha));
    }
    auto x_at = [&](std::uint64_t j) -> double {
        double ja; // j * alpha mod 1
        if (fe) ja = fe->frac(j, 0);
        else {
            DD f = frac_n_theta(j, alpha_dd);
            ja = frac01(f.hi + f.lo);
        }
        if (T.a == 1) return frac01(frac01(p0[0]) + ja);
        // a = -1: x_j = x0 (j even), alpha - x0 (j odd)
        double a1 = fe ? fe->frac(1, 0) : frac01(alpha_dd.hi + alpha_dd.lo);
        return (j % 2 == 0) ? frac01(p0[0]) : frac01(a1 - frac01(p0[0]));
    };

    // h truncation per the ambient experiment's cutoff when available
    std::size_t Kh = 0;
    const auto* co = std::get_if<FurstenbergCocycle>(&T.h);
    if (co) {
        Kh = co->K_support();
        try {
            if (N >= 2) Kh = std::min(Kh, truncation_cutoff(co->alpha(), N));
        } catch (const insufficient_quotients&) {
        }
    }
    auto h_at = [&](double x) -> double {
        if (std::holds_alternative<std::monostate>(T.h)) return 0.0;
        if (const auto* fs = std::get_if<AnalyticFourierSeries>(&T.h)) return fs->eval_real(x);
        return h_eval(*co, x, Kh, precision_bits).real();
    };

    std::vector<std::array<double, 2>> orbit;
    orbit.reserve(N + 1);
    double x = x_at(0);
    double y = frac01(p0[1]);
    orbit.push_back({x, y});

    if (!extended) {
        for (std::uint64_t j = 0; j < N; ++j) {
            double ynext = frac01(static_cast<double>(T.c) * x + static_cast<double>(T.d) * y +
                                  h_at(x));
            x = x_at(j + 1);
            y = ynext;
            orbit.push_back({x, y});
        }
        return orbit;
    }

    Real yr(yprec), t(yprec);
    mpfr_set_d(yr.raw(), y, MPFR_RNDN);
    for (std::uint64_t j = 0; j < N; ++j) {
        // y' = c x + d y + h(x) mod 1, accumulated in extended precision
        mpfr_mul_si(t.raw(), yr.raw(), T.d, MPFR_RNDN);
        mpfr_add_d(t.raw(), t.raw(), static_cast<double>(T.c) * x + h_at(x), MPFR_RNDN);
        mpfr_frac(t.raw(), t.raw(), MPFR_RNDN);
        if (mpfr_sgn(t.raw()) < 0) mpfr_add_ui(t.raw(), t.raw(), 1, MPFR_RNDN);
        mpfr_set(yr.raw(), t.raw(), MPFR_RNDN);
        x = x_at(j + 1);
        y = yr.to_double();
        if (y >= 1.0) y = 0.0;
        orbit.push_back({x, y});
    }
    return orbit;
}

IrregularityReport irregularity_scan(const SkewProductMap& T, int m1, int m2,
                                     std::span<const std::uint64_t> N_grid,
                                     std::array<double, 2> p0, PrecisionMode mode,
                                     mpfr_prec_t precision_bits) {
    if (N_grid.empty()) throw config_error("irregularity_scan: empty grid");
    for (std::size_t i = 1; i < N_grid.size(); ++i)
        if (N_grid[i] <= N_grid[i - 1])
            throw config_error("irregularity_scan: grid must be strictly increasing");

    std::uint64_t maxN = N_grid.back();
    auto orbit = skew_orbit(T, p0, maxN, mode, precision_bits);

    std::vector<Cplx> xi(maxN);
    for (std::uint64_t n = 1; n <= maxN; ++n) {
        double ph = frac01(m1 * orbit[n][0] + m2 * orbit[n][1]);
        xi[n - 1] = unit_frac(ph);
    }

    IrregularityReport rep;
    rep.generic_alpha = T.alpha_is_generic();
    rep.min_abs = std::numeric_limits<double>::infinity();
    rep.max_abs = 0.0;
    for (std::uint64_t N : N_grid) {
        Cplx avg = birkhoff_average(std::span<const Cplx>(xi.data(), N));
        rep.averages.emplace_back(N, avg);
        rep.min_abs = std::min(rep.min_abs, std::abs(avg));
        rep.max_abs = std::max(rep.max_abs, std::abs(avg));
    }
    rep.oscillation = rep.max_abs - rep.min_abs;
    return rep;
}

TelescopedPhase::TelescopedPhase(const FurstenbergCocycle& co, std::size_t K,
                                 mpfr_prec_t precision_bits)
    : fe_(co.alpha(), K, precision_bits), K_(K) {
    if (K > co.K_support()) throw config_error("TelescopedPhase: K exceeds cocycle support");
    c_.resize(K + 1);
    for (std::size_t k = 1; k <= K; ++k) c_[k] = co.c(k);
}

Cplx TelescopedPhase::phase(std::uint64_t n) const {
    Cplx sum = 0.0;
    for (std::size_t k = 1; k <= K_; ++k) {
        double f = fe_.frac(n, k);
        sum += c_[k] * (2.0 - 2.0 * unit_frac(f).real());
    }
    return sum;
}

Cplx TelescopedPhase::weight(std::uint64_t n) const {
    Cplx z = phase(n);
    double mod = std::exp(-2.0 * std::numbers::pi * z.imag());
    double re = z.real();
    return mod * unit_phase(DD{re - std::nearbyint(re), 0.0});
}

} // namespace mobskew
