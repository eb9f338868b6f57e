#include "mobskew/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "mobskew/errors.hpp"
#include "mobskew/parallel.hpp"

namespace mobskew {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_range(const MobiusTable& table, std::uint64_t N, const char* who) {
    if (N < 1 || N > table.n_max)
        throw config_error(std::string(who) + ": N outside [1, table.n_max]");
}

} // namespace

Cplx mobius_correlation(const MobiusTable& table, const std::function<Cplx(std::uint64_t)>& xi,
                        std::uint64_t N) {
    check_range(table, N, "mobius_correlation");
    Cplx s = pairwise_map_reduce<Cplx>(1, N + 1, [&](std::uint64_t n) -> Cplx {
        int m = table.mu(n);
        if (m == 0) return {0.0, 0.0};
        return static_cast<double>(m) * xi(n);
    });
    return s / static_cast<double>(N);
}

CorrelationSeries furstenberg_S(const FurstenbergCocycle& co, const MobiusTable& table,
                                std::span<const std::uint64_t> N_grid, unsigned threads,
                                mpfr_prec_t precision_bits) {
    if (N_grid.empty()) throw config_error("furstenberg_S: empty grid");
    for (std::size_t i = 0; i < N_grid.size(); ++i) {
        check_range(table, N_grid[i], "furstenberg_S");
        if (i > 0 && N_grid[i] <= N_grid[i - 1])
            throw config_error("furstenberg_S: grid must be strictly increasing");
    }

    CorrelationSeries series;
    std::string ks;
    for (std::uint64_t N : N_grid) {
        // cutoff per grid point; N = 1 has no bracket, the empty phase K = 0
        // leaves the single unimodular term mu(1)
        std::size_t K = 0;
        if (N >= 2) K = std::min(truncation_cutoff(co.alpha(), N), co.K_support());
        TelescopedPhase tp(co, K, precision_bits);
        Cplx S = pairwise_map_reduce<Cplx>(1, N + 1, [&](std::uint64_t n) -> Cplx {
            int m = table.mu(n);
            if (m == 0) return {0.0, 0.0};
            return static_cast<double>(m) * tp.weight(n);
        }, threads);
        series.entries.emplace_back(N, S);
        ks += (ks.empty() ? "" : ",") + std::to_string(K);
    }
    series.meta = "furstenberg_S C=" + std::to_string(co.C()) + " K_per_N=" + ks;
    return series;
}

Cplx s_tilde(const FurstenbergCocycle& co, const MobiusTable& table, std::uint64_t N,
             unsigned threads, mpfr_prec_t precision_bits) {
    check_range(table, N, "s_tilde");
    if (N < 2) throw config_error("s_tilde: N must be >= 2 to place the cutoff");
    std::size_t K = std::min(truncation_cutoff(co.alpha(), N), co.K_support() + 1);
    std::size_t terms = K - 1; // frequencies 1 <= |k| <= K-1

    FracEvaluator fe(co.alpha(), terms, precision_bits);
    std::vector<Cplx> c(terms + 1);
    for (std::size_t k = 1; k <= terms; ++k) c[k] = co.c(k);

    Cplx S = pairwise_map_reduce<Cplx>(1, N + 1, [&](std::uint64_t n) -> Cplx {
        int m = table.mu(n);
        if (m == 0) return {0.0, 0.0};
        // chi(n) = sum_{1<=|k|<=K-1} c_k e(n q_k alpha) = sum_k c_k 2cos(...)
        Cplx chi = 0.0;
        for (std::size_t k = 1; k <= terms; ++k) {
            double f = fe.frac(n, k);
            double g = f >= 0.5 ? f - 1.0 : f;
            chi += c[k] * (2.0 * unit_phase(DD{g, 0.0}).real());
        }
        double mod = std::exp(-kTwoPi * chi.imag());
        double re = chi.real();
        Cplx w = mod * unit_phase(DD{re - std::nearbyint(re), 0.0});
        return static_cast<double>(m) * w;
    }, threads);
    return S;
}

Cplx davenport_sum(const MobiusTable& table, DD theta, std::uint64_t N, unsigned threads) {
    check_range(table, N, "davenport_sum");
    return pairwise_map_reduce<Cplx>(1, N + 1, [&](std::uint64_t n) -> Cplx {
        int m = table.mu(n);
        if (m == 0) return {0.0, 0.0};
        return static_cast<double>(m) * unit_phase(frac_n_theta(n, theta));
    }, threads);
}

Cplx davenport_sum(const MobiusTable& table, double theta, std::uint64_t N, unsigned threads) {
    return davenport_sum(table, dd_from_double(theta), N, threads);
}

Cplx multifreq_davenport(const MobiusTable& table, std::span<const std::int64_t> l,
                         std::span<const double> theta, std::uint64_t N, unsigned threads) {
    check_range(table, N, "multifreq_davenport");
    if (l.size() != theta.size())
        throw config_error("multifreq_davenport: frequency vectors differ in length");
    return pairwise_map_reduce<Cplx>(1, N + 1, [&](std::uint64_t n) -> Cplx {
        int m = table.mu(n);
        if (m == 0) return {0.0, 0.0};
        DD acc{0.0, 0.0};
        for (std::size_t i = 0; i < l.size(); ++i) {
            DD f = frac_n_theta(n, dd_from_double(theta[i]));
            acc = dd_add(acc, dd_mul_d(f, static_cast<double>(l[i])));
        }
        return static_cast<double>(m) * unit_phase(dd_mod1_centered(acc));
    }, threads);
}

SupDavenport sup_davenport(const MobiusTable& table, std::uint64_t N, std::size_t grid_count) {
    check_range(table, N, "sup_davenport");
    if (grid_count < 2) throw config_error("sup_davenport: grid_count must be >= 2");

    // bucket exact integer sums by residue: davenport(j/G) = sum_r B[r] e(jr/G)
    std::vector<std::int64_t> B(grid_count, 0);
    for (std::uint64_t n = 1; n <= N; ++n) B[n % grid_count] += table.mu(n);

    const auto w = roots_of_unity(grid_count);
    double best = -1.0;
    std::size_t best_j = 0;
    Cplx best_v;
    for (std::size_t j = 0; j < grid_count; ++j) {
        Cplx s = 0.0;
        for (std::size_t r = 0; r < grid_count; ++r) {
            if (B[r] == 0) continue;
            s += static_cast<double>(B[r]) * w[(j * r) % grid_count];
        }
        double a = std::abs(s);
        if (a > best) {
            best = a;
            best_j = j;
            best_v = s;
        }
    }
    return {static_cast<double>(best_j) / static_cast<double>(grid_count), best_v};
}

PhiCoefficient phi_fourier_coeff(double c1, int l, std::size_t quad_nodes) {
    if (quad_nodes < 16) throw config_error("phi_fourier_coeff: need >= 16 quadrature nodes");

    auto quadrature = [&](std::size_t Q) -> Cplx {
        const auto w = roots_of_unity(Q);
        Cplx s = 0.0;
        for (std::size_t j = 0; j < Q; ++j) {
            double x = static_cast<double>(j) / static_cast<double>(Q);
            double phi = 2.0 * c1 * std::cos(kTwoPi * x);
            Cplx e_phi = unit_phase(DD{phi - std::nearbyint(phi), 0.0});
            // e(-l x_j) = conj(w[l*j mod Q]) for l >= 0
            std::size_t idx = (static_cast<std::size_t>(std::llabs(l)) * j) % Q;
            Cplx e_l = (l >= 0) ? std::conj(w[idx]) : w[idx];
            s += e_phi * e_l;
        }
        return s / static_cast<double>(Q);
    };

    Cplx fine = quadrature(quad_nodes);
    Cplx coarse = quadrature(quad_nodes / 2);
    double err = std::abs(fine - coarse) + 1e-14;
    if (err > 1e-6)
        throw quadrature_error("phi_fourier_coeff: quadrature not converged at " +
                               std::to_string(quad_nodes) + " nodes");
    PhiCoefficient out;
    out.l = l;
    out.c1 = c1;
    out.value = fine;
    out.quad_error = err;
    return out;
}

DecayFit decay_fit(const CorrelationSeries& series) {
    std::vector<std::pair<double, double>> pts; // (loglog N, log(N/|S|))
    std::string notes;
    std::uint64_t n_min = 0, n_max = 0;
    for (const auto& [N, S] : series.entries) {
        double a = std::abs(S);
        if (a == 0.0) {
            notes += "dropped zero entry at N=" + std::to_string(N) + "; ";
            continue;
        }
        if (N < 3) {
            notes += "dropped N=" + std::to_string(N) + " (loglog undefined); ";
            continue;
        }
        pts.emplace_back(std::log(std::log(static_cast<double>(N))),
                         std::log(static_cast<double>(N) / a));
        if (n_min == 0) n_min = N;
        n_max = N;
    }
    if (pts.size() < 4)
        throw config_error("decay_fit: need >= 4 usable entries");
    if (static_cast<double>(n_max) / static_cast<double>(n_min) < 100.0)
        throw config_error("decay_fit: entries must span >= 2 decades");

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto [x, y] : pts) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double n = static_cast<double>(pts.size());
    double denom = n * sxx - sx * sx;
    if (denom == 0.0) throw config_error("decay_fit: degenerate abscissae");
    double a_hat = (n * sxy - sx * sy) / denom;
    double b = (sy - a_hat * sx) / n;

    double ss = 0;
    for (auto [x, y] : pts) {
        double r = y - (a_hat * x + b);
        ss += r * r;
    }
    DecayFit fit;
    fit.a_hat = a_hat;
    fit.scale = std::exp(-b);
    fit.residual_rms = std::sqrt(ss / n);
    fit.n_min = n_min;
    fit.n_max = n_max;
    fit.model = "log(N/|S|) = A*loglog(N) + const";
    fit.notes = notes;
    return fit;
}

ConstantBoundReport constant_bound_diagnostic(double C, std::size_t K, std::uint64_t N) {
    if (C < 1.0) throw config_error("constant_bound_diagnostic: C must be >= 1");
    if (K < 1) throw config_error("constant_bound_diagnostic: K must be >= 1");
    ConstantBoundReport rep;
    rep.lhs = std::pow(C, 2.0 * static_cast<double>(K - 1));
    rep.rhs = std::log(static_cast<double>(N));
    rep.holds = rep.lhs <= rep.rhs;
    return rep;
}

} // namespace mobskew
