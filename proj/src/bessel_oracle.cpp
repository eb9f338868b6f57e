#include "mobskew/bessel_oracle.hpp"

#include <cstdlib>

#include "mobskew/real.hpp"

namespace mobskew {

double bessel_Jl(int l, double z) {
    const mpfr_prec_t prec = 512;
    int la = std::abs(l);

    // J_l(z) = sum_j (-1)^j (z/2)^{l+2j} / (j! (l+j)!)
    Real half(prec), term(prec), sum(prec), tmp(prec);
    mpfr_set_d(half.raw(), z, MPFR_RNDN);
    mpfr_div_2ui(half.raw(), half.raw(), 1, MPFR_RNDN); // z/2

    // term_0 = (z/2)^la / la!
    mpfr_pow_ui(term.raw(), half.raw(), static_cast<unsigned long>(la), MPFR_RNDN);
    mpfr_fac_ui(tmp.raw(), static_cast<unsigned long>(la), MPFR_RNDN);
    mpfr_div(term.raw(), term.raw(), tmp.raw(), MPFR_RNDN);
    mpfr_set(sum.raw(), term.raw(), MPFR_RNDN);

    Real h2(prec);
    mpfr_mul(h2.raw(), half.raw(), half.raw(), MPFR_RNDN); // (z/2)^2
    for (unsigned long j = 1; j <= 4000; ++j) {
        mpfr_mul(term.raw(), term.raw(), h2.raw(), MPFR_RNDN);
        mpfr_div_ui(term.raw(), term.raw(), j, MPFR_RNDN);
        mpfr_div_ui(term.raw(), term.raw(), j + static_cast<unsigned long>(la), MPFR_RNDN);
        mpfr_neg(term.raw(), term.raw(), MPFR_RNDN);
        mpfr_add(sum.raw(), sum.raw(), term.raw(), MPFR_RNDN);
        if (mpfr_zero_p(term.raw()) ||
            mpfr_get_exp(term.raw()) < mpfr_get_exp(sum.raw()) - 400)
            break;
    }
    double v = sum.to_double();
    if (l < 0 && (la & 1)) v = -v; // J_{-l} = (-1)^l J_l
    return v;
}

std::complex<double> phi_coeff_oracle(double c1, int l) {
    const mpfr_prec_t prec = 512;
    Real z(prec);
    mpfr_const_pi(z.raw(), MPFR_RNDN);
    mpfr_mul_d(z.raw(), z.raw(), 4.0 * c1, MPFR_RNDN);

    // a_{-l} = i^{-l} J_{-l} = i^l J_l = a_l
    int la = std::abs(l);
    double J = bessel_Jl(la, z.to_double()); // z to double loses < 1 ulp of 4*pi*c1

    switch (la % 4) {
        case 0: return {J, 0.0};
        case 1: return {0.0, J};
        case 2: return {-J, 0.0};
        default: return {0.0, -J};
    }
}

} // namespace mobskew
