#ifndef MOBSKEW_PHASE_HPP
#define MOBSKEW_PHASE_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

namespace mobskew {

// Double-double arithmetic for exponential-sum phases.  Phases n*theta mod 1
// must stay accurate to well below 2^-53 up to n ~ 1e9, otherwise identities
// like multifreq == single-frequency drift linearly in n.

struct DD {
    double hi = 0.0;
    double lo = 0.0;
};

inline DD two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    double err = (a - (s - bb)) + (b - bb);
    return {s, err};
}

inline DD quick_two_sum(double a, double b) {
    double s = a + b;
    return {s, b - (s - a)};
}

inline DD two_prod(double a, double b) {
    double p = a * b;
    return {p, std::fma(a, b, -p)};
}

inline DD dd_add(DD a, DD b) {
    DD s = two_sum(a.hi, b.hi);
    s.lo += a.lo + b.lo;
    return quick_two_sum(s.hi, s.lo);
}

inline DD dd_add(DD a, double b) {
    DD s = two_sum(a.hi, b);
    s.lo += a.lo;
    return quick_two_sum(s.hi, s.lo);
}

inline DD dd_mul_d(DD a, double b) {
    DD p = two_prod(a.hi, b);
    p.lo += a.lo * b;
    return quick_two_sum(p.hi, p.lo);
}

inline DD dd_from_double(double x) { return {x, 0.0}; }

// Reduce to [-1/2, 1/2).  hi - nearbyint(hi) is exact, so the reduction
// costs nothing in accuracy.
inline DD dd_mod1_centered(DD a) {
    double r = a.hi - std::nearbyint(a.hi);
    DD s = quick_two_sum(r, a.lo);
    if (s.hi >= 0.5) s = quick_two_sum(s.hi - 1.0, s.lo);
    else if (s.hi < -0.5) s = quick_two_sum(s.hi + 1.0, s.lo);
    return s;
}

// n*theta mod 1, centered; exact product via fma, n must fit in 2^53.
inline DD frac_n_theta(std::uint64_t n, DD theta) {
    DD p = two_prod(static_cast<double>(n), theta.hi);
    double tail = p.lo + static_cast<double>(n) * theta.lo;
    double r = p.hi - std::nearbyint(p.hi);
    return dd_mod1_centered(quick_two_sum(r, tail));
}

// e(g) = exp(2*pi*i*g) for a centered phase g.  Evaluated on |g| with the
// sign applied to the imaginary part, so e(-g) is the bitwise conjugate of
// e(g); the low word enters as a first-order correction.
inline std::complex<double> unit_phase(DD g) {
    double a = g.hi;
    double sgn = 1.0;
    if (a < 0.0 || (a == 0.0 && g.lo < 0.0)) { a = -a; g.lo = -g.lo; sgn = -1.0; }
    double ang = 2.0 * std::numbers::pi * a;
    double c = std::cos(ang);
    double s = std::sin(ang);
    double corr = 2.0 * std::numbers::pi * g.lo;
    double re = c - s * corr;
    double im = s + c * corr;
    return {re, sgn * im};
}

inline std::complex<double> unit_phase(double g) { return unit_phase(DD{g, 0.0}); }

// Table of e(m/G), m = 0..G-1, built on [0, G/2] and mirrored by
// conjugation so that e((G-m)/G) == conj(e(m/G)) bit-for-bit.
inline std::vector<std::complex<double>> roots_of_unity(std::size_t G) {
    std::vector<std::complex<double>> w(G);
    const double twopi = 2.0 * std::numbers::pi;
    for (std::size_t m = 0; m <= G / 2; ++m) {
        double ang = twopi * (static_cast<double>(m) / static_cast<double>(G));
        w[m] = {std::cos(ang), std::sin(ang)};
    }
    for (std::size_t m = G / 2 + 1; m < G; ++m) w[m] = std::conj(w[G - m]);
    return w;
}

} // namespace mobskew

#endif
