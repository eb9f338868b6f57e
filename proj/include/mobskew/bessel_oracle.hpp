#ifndef MOBSKEW_BESSEL_ORACLE_HPP
#define MOBSKEW_BESSEL_ORACLE_HPP

#include <complex>

namespace mobskew {

// Independent oracle for the phi Fourier coefficients: the Jacobi-Anger
// expansion gives a_l(c1) = i^l J_l(4 pi c1).  J_l comes from the ascending
// series summed in 512-bit MPFR (the series alternates and cancels ~10
// digits at z ~ 25, beyond double).  Shares nothing with the quadrature
// path in correlation.cpp.
double bessel_Jl(int l, double z);
std::complex<double> phi_coeff_oracle(double c1, int l);

} // namespace mobskew

#endif
