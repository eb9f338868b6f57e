#ifndef MOBSKEW_FLOWS_HPP
#define MOBSKEW_FLOWS_HPP

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "mobskew/confrac.hpp"
#include "mobskew/phase.hpp"
#include "mobskew/real.hpp"

namespace mobskew {

using Cplx = std::complex<double>;

// --- affine torus maps T(x) = Ax + b mod 1 -------------------------------

struct AffineTorusMap {
    std::size_t dim = 1;
    std::vector<std::vector<std::int64_t>> A; // dim x dim, |det| = 1
    std::vector<double> b;                    // mod 1

    static AffineTorusMap make(std::vector<std::vector<std::int64_t>> A, std::vector<double> b);
};

// Exact determinant of an integer matrix.
BigInt integer_det(const std::vector<std::vector<std::int64_t>>& A);

// True iff the characteristic polynomial is a product of cyclotomic
// polynomials, i.e. every eigenvalue is a root of unity (quasi-unipotence).
bool is_zero_entropy(const std::vector<std::vector<std::int64_t>>& A);

// Exact characteristic polynomial, coefficients c[0..n] with c[n] = 1.
std::vector<BigInt> char_poly(const std::vector<std::vector<std::int64_t>>& A);

// x_{j+1} = A x_j + b mod 1; returns N+1 points starting at x0.
std::vector<std::vector<double>> affine_orbit(const AffineTorusMap& map,
                                              const std::vector<double>& x0, std::uint64_t N);

// --- analytic Fourier data ----------------------------------------------

// h(x) = sum_{|m| <= m_max} hat(m) e(mx), with the declared exponential
// decay |hat(m)| <= K1 e^{-tau |m|} checked at construction (and
// |hat(m)| >= K2 e^{-tau2 |m|} on 1 <= |m| <= m_max when tau2 is declared).
class AnalyticFourierSeries {
public:
    static AnalyticFourierSeries make(int m_max, std::vector<Cplx> coeffs, double tau,
                                      std::optional<double> K1 = std::nullopt,
                                      std::optional<double> tau2 = std::nullopt,
                                      std::optional<double> K2 = std::nullopt);

    int m_max() const { return m_max_; }
    double tau() const { return tau_; }
    double K1() const { return K1_; }
    std::optional<double> tau2() const { return tau2_; }
    std::optional<double> K2() const { return K2_; }

    Cplx hat(int m) const {
        if (m < -m_max_ || m > m_max_) return {0.0, 0.0};
        return coeffs_[static_cast<std::size_t>(m + m_max_)];
    }
    Cplx eval(double x) const;
    double eval_real(double x) const { return eval(x).real(); }

private:
    AnalyticFourierSeries() = default;
    int m_max_ = 0;
    std::vector<Cplx> coeffs_;
    double tau_ = 0.0, K1_ = 0.0;
    std::optional<double> tau2_, K2_;
};

// --- Furstenberg cocycles -------------------------------------------------

// h(x) = sum_{k != 0} c_k (1 - e(q_k alpha)) e(q_k x), c_{-k} = c_k,
// |c_k| <= C.  The classical example is c_k = -1/|k| (the sign of
// (e(q_k alpha)-1)/|k| absorbed into the coefficient).
class FurstenbergCocycle {
public:
    static FurstenbergCocycle furstenberg_example(PartialQuotients alpha, std::size_t K = 0);
    static FurstenbergCocycle constant_rule(PartialQuotients alpha, double c0, std::size_t K = 0);
    static FurstenbergCocycle custom(PartialQuotients alpha, std::vector<Cplx> c,
                                     std::optional<double> C = std::nullopt);

    const PartialQuotients& alpha() const { return alpha_; }
    Cplx c(std::size_t k) const { return c_.at(k - 1); } // k >= 1; c_{-k} = c_k
    double C() const { return C_; }
    std::size_t K_support() const { return c_.size(); }

private:
    FurstenbergCocycle(PartialQuotients alpha, std::vector<Cplx> c, double C);
    PartialQuotients alpha_;
    std::vector<Cplx> c_;
    double C_;
};

// --- skew products T(x,y) = (ax + alpha, cx + dy + h(x)) ------------------

struct SkewProductMap {
    std::int64_t a = 1, c = 0, d = 1; // a*d = +-1
    std::variant<double, PartialQuotients> alpha = 0.0;
    std::variant<std::monostate, AnalyticFourierSeries, FurstenbergCocycle> h;

    static SkewProductMap make(std::int64_t a, std::int64_t c, std::int64_t d,
                               std::variant<double, PartialQuotients> alpha,
                               std::variant<std::monostate, AnalyticFourierSeries,
                                            FurstenbergCocycle> h);
    bool alpha_is_generic() const; // false when alpha is rational (flagged in reports)
};

enum class PrecisionMode { double_prec, extended };

// Orbit of the skew product; first coordinate comes from certified
// continued-fraction arithmetic when alpha is a PartialQuotients, the second
// accumulates in double or in >= 96-bit extended precision.
std::vector<std::array<double, 2>> skew_orbit(const SkewProductMap& T,
                                              std::array<double, 2> p0, std::uint64_t N,
                                              PrecisionMode mode = PrecisionMode::double_prec,
                                              mpfr_prec_t precision_bits = 128);

// --- cocycle evaluation ----------------------------------------------------

// Truncated h(x) over 1 <= |k| <= K at an arbitrary point (double-double for
// phase accuracy when q_k is large).
Cplx h_eval(const FurstenbergCocycle& co, DD x, std::size_t K, mpfr_prec_t precision_bits = 128);
Cplx h_eval(const FurstenbergCocycle& co, double x, std::size_t K,
            mpfr_prec_t precision_bits = 128);

// Partial sum of Furstenberg's g: sum_{1 <= |k| <= K} e(q_k x)/|k|.
Cplx g_partial(const PartialQuotients& alpha, DD x, std::size_t K);
Cplx g_partial(const PartialQuotients& alpha, double x, std::size_t K);

// Birkhoff sum sum_{j=0}^{n-1} h(j alpha) two ways: direct orbit summation
// (certified frac parts) and the telescoped closed form
// sum_k c_k (1 - e(n q_k alpha)).
Cplx cocycle_sum_naive(const FurstenbergCocycle& co, std::uint64_t n, std::size_t K,
                       mpfr_prec_t precision_bits = 128);
Cplx cocycle_sum_telescoped(const FurstenbergCocycle& co, std::uint64_t n, std::size_t K,
                            mpfr_prec_t precision_bits = 128);

// The proof's cutoff: the unique K with q_{K-1} < 2 log N <= q_K.
std::size_t truncation_cutoff(const PartialQuotients& alpha, std::uint64_t N);

// exp applied j times to 2 (saturates to +inf); the materialized q_k of a
// Liouville-type alpha dominate tower_lower_bound(k-2).
double tower_lower_bound(unsigned j);

// Pairwise-tree arithmetic mean.
Cplx birkhoff_average(std::span<const Cplx> values);

struct IrregularityReport {
    std::vector<std::pair<std::uint64_t, Cplx>> averages; // (N, Birkhoff average)
    double min_abs = 0.0, max_abs = 0.0, oscillation = 0.0;
    bool generic_alpha = true;
};

// Birkhoff averages of the character e(m1 x + m2 y) along the skew orbit at
// each N in the grid, plus the min/max oscillation over the grid.
IrregularityReport irregularity_scan(const SkewProductMap& T, int m1, int m2,
                                     std::span<const std::uint64_t> N_grid,
                                     std::array<double, 2> p0 = {0.0, 0.0},
                                     PrecisionMode mode = PrecisionMode::double_prec,
                                     mpfr_prec_t precision_bits = 128);

// Cached per-n weight e(sum_k c_k (1 - e(n q_k alpha))) for correlation
// sums; thread-safe after construction.
class TelescopedPhase {
public:
    TelescopedPhase(const FurstenbergCocycle& co, std::size_t K, mpfr_prec_t precision_bits);
    Cplx phase(std::uint64_t n) const;  // sum_{k=1}^{K} c_k (2 - 2cos(2 pi n q_k alpha))
    Cplx weight(std::uint64_t n) const; // e(phase(n))
    std::size_t K() const { return K_; }

private:
    std::vector<Cplx> c_;
    FracEvaluator fe_;
    std::size_t K_;
};

} // namespace mobskew

#endif
