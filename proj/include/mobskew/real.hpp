#ifndef MOBSKEW_REAL_HPP
#define MOBSKEW_REAL_HPP

#include <mpfr.h>

#include <cstdint>
#include <string>
#include <utility>

#include <boost/multiprecision/gmp.hpp>

namespace mobskew {

using BigInt = boost::multiprecision::mpz_int;
using BigRat = boost::multiprecision::mpq_rational;

// Thin RAII wrapper over mpfr_t.  Most numeric work calls mpfr_* directly on
// raw(); the wrapper only owns storage and provides the handful of value ops
// used outside hot loops.  Rounding is explicit where it matters.
class Real {
public:
    explicit Real(mpfr_prec_t prec = 128) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }

    Real(const Real& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    Real(Real&& o) noexcept {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_swap(v_, o.v_);
    }
    Real& operator=(const Real& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Real& operator=(Real&& o) noexcept {
        if (this != &o) mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }
    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

    static Real of_ui(std::uint64_t n, mpfr_prec_t prec) {
        Real r(prec);
        mpfr_set_uj(r.v_, n, MPFR_RNDN);
        return r;
    }
    static Real of_si(std::int64_t n, mpfr_prec_t prec) {
        Real r(prec);
        mpfr_set_sj(r.v_, n, MPFR_RNDN);
        return r;
    }
    static Real of_double(double x, mpfr_prec_t prec) {
        Real r(prec);
        mpfr_set_d(r.v_, x, MPFR_RNDN);
        return r;
    }
    static Real of_bigint(const BigInt& z, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN) {
        Real r(prec);
        mpfr_set_z(r.v_, z.backend().data(), rnd);
        return r;
    }
    static Real of_bigrat(const BigRat& q, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN) {
        Real r(prec);
        mpfr_set_q(r.v_, q.backend().data(), rnd);
        return r;
    }

    double to_double(mpfr_rnd_t rnd = MPFR_RNDN) const { return mpfr_get_d(v_, rnd); }
    int sign() const { return mpfr_sgn(v_); }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }

    int cmp(const Real& o) const { return mpfr_cmp(v_, o.v_); }
    int cmp_ui(unsigned long u) const { return mpfr_cmp_ui(v_, u); }

    std::string str(std::size_t digits = 25) const {
        char* s = nullptr;
        mpfr_asprintf(&s, "%.*Rg", static_cast<int>(digits), v_);
        std::string out(s);
        mpfr_free_str(s);
        return out;
    }

private:
    mpfr_t v_;
};

// Number of bits in |z| (0 for z = 0); used to size working precision so
// big-integer operands convert exactly.
inline mpfr_prec_t bigint_bits(const BigInt& z) {
    if (z == 0) return 1;
    return static_cast<mpfr_prec_t>(mpz_sizeinbase(z.backend().data(), 2));
}

} // namespace mobskew

#endif
