#ifndef MOBSKEW_CORRELATION_HPP
#define MOBSKEW_CORRELATION_HPP

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "mobskew/flows.hpp"
#include "mobskew/phase.hpp"
#include "mobskew/sieve.hpp"

namespace mobskew {

struct CorrelationSeries {
    std::vector<std::pair<std::uint64_t, Cplx>> entries; // (N, S(N)), N strictly increasing
    std::string meta;
};

struct DecayFit {
    double a_hat = 0.0;
    double scale = 0.0;
    double residual_rms = 0.0;
    std::uint64_t n_min = 0, n_max = 0;
    std::string model;
    std::string notes; // dropped entries etc.
};

struct PhiCoefficient {
    int l = 0;
    double c1 = 0.0;
    Cplx value;
    double quad_error = 0.0;
};

// (1/N) sum_{n<=N} mu(n) xi(n).
Cplx mobius_correlation(const MobiusTable& table, const std::function<Cplx(std::uint64_t)>& xi,
                        std::uint64_t N);

// S(N) = sum_{n<=N} mu(n) e(sum_{j<n} h(j alpha)) on the grid, phase by the
// telescoped closed form with K = truncation_cutoff(N) per grid point.
CorrelationSeries furstenberg_S(const FurstenbergCocycle& co, const MobiusTable& table,
                                std::span<const std::uint64_t> N_grid, unsigned threads = 1,
                                mpfr_prec_t precision_bits = 128);

// The proof's reduced sum (K-1 frequencies, constant term dropped):
// sum_{n<=N} mu(n) e{sum_{1<=|k|<=K-1} c_k e(n q_k alpha)}.
Cplx s_tilde(const FurstenbergCocycle& co, const MobiusTable& table, std::uint64_t N,
             unsigned threads = 1, mpfr_prec_t precision_bits = 128);

// sum_{n<=N} mu(n) e(n theta).
Cplx davenport_sum(const MobiusTable& table, DD theta, std::uint64_t N, unsigned threads = 1);
Cplx davenport_sum(const MobiusTable& table, double theta, std::uint64_t N, unsigned threads = 1);

// sum_{n<=N} mu(n) e(n <l, theta>); equals davenport_sum at the combined
// frequency.
Cplx multifreq_davenport(const MobiusTable& table, std::span<const std::int64_t> l,
                         std::span<const double> theta, std::uint64_t N, unsigned threads = 1);

struct SupDavenport {
    double theta_star = 0.0;
    Cplx value;
};

// Maximizes |davenport_sum| over theta in {j/grid_count}; exact integer
// residue bucketing, so the result is deterministic and the theta -> 1-theta
// reflection symmetry is exact.
SupDavenport sup_davenport(const MobiusTable& table, std::uint64_t N, std::size_t grid_count);

// a_l(c1) = int_0^1 e(2 c1 cos(2 pi x)) e(-lx) dx by periodic trapezoidal
// quadrature; quad_error is the measured Q/2-vs-Q difference.
PhiCoefficient phi_fourier_coeff(double c1, int l, std::size_t quad_nodes);

// Least squares on log(N/|S|) = A loglog N + const; zero entries dropped and
// noted.
DecayFit decay_fit(const CorrelationSeries& series);

struct ConstantBoundReport {
    double lhs = 0.0; // C^{2(K-1)}
    double rhs = 0.0; // log N
    bool holds = false;
};

// Reports whether C^{2(K-1)} <= log N at these finite parameters (asymptotic
// in the paper; diagnostic only here).
ConstantBoundReport constant_bound_diagnostic(double C, std::size_t K, std::uint64_t N);

} // namespace mobskew

#endif
