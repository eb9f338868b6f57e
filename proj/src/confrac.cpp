#include "mobskew/confrac.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <sstream>
#include <utility>

#include "mobskew/errors.hpp"

namespace mobskew {

namespace {

// Certified enclosure lo <= x <= hi of an mpfr quantity.
struct RItv {
    Real lo, hi;
    RItv(mpfr_prec_t prec) : lo(prec), hi(prec) {}
};

mpfr_prec_t quotient_bits(const PartialQuotients& pq) {
    mpfr_prec_t b = 1;
    for (std::size_t i = 0; i < pq.size(); ++i) b = std::max(b, bigint_bits(pq.at(i)));
    return b;
}

// Enclosure of the tail value alpha_m = [a_m; a_{m+1}, ...].  Backward
// evaluation from the deepest available level with outward rounding; the
// seed at the deepest level J is (a_J, a_J + 1), or for a
// liouville-constructed list one level deeper via the rule
// a_{J+1} = ceil(e^{q_J}) in (e^{q_J}, e^{q_J} + 1].
RItv tail_value(const PartialQuotients& pq, std::size_t m, mpfr_prec_t work) {
    const std::size_t J = pq.size() - 1;
    if (m > J + 1 || (m == J + 1 && !pq.has_continuation_rule()))
        throw insufficient_tail("tail_value: quotient index " + std::to_string(m) +
                                " beyond materialized list of length " +
                                std::to_string(pq.size()));

    RItv t(work);
    std::size_t start; // t encloses alpha_{start}
    if (pq.has_continuation_rule()) {
        // alpha_{J+1} in (e^{q_J}, e^{q_J} + 2)
        auto conv = convergents(pq, J);
        Real qj = Real::of_bigint(conv[J].q, std::max<mpfr_prec_t>(work, bigint_bits(conv[J].q) + 8));
        mpfr_exp(t.lo.raw(), qj.raw(), MPFR_RNDD);
        mpfr_exp(t.hi.raw(), qj.raw(), MPFR_RNDU);
        mpfr_add_ui(t.hi.raw(), t.hi.raw(), 2, MPFR_RNDU);
        start = J + 1;
    } else {
        mpfr_set_z(t.lo.raw(), pq.at(J).backend().data(), MPFR_RNDD);
        mpfr_set_z(t.hi.raw(), pq.at(J).backend().data(), MPFR_RNDU);
        mpfr_add_ui(t.hi.raw(), t.hi.raw(), 1, MPFR_RNDU);
        start = J;
    }

    // alpha_i = a_i + 1/alpha_{i+1}; reciprocal swaps the endpoints.
    Real rlo(work), rhi(work);
    for (std::size_t i = start; i-- > m;) {
        mpfr_ui_div(rlo.raw(), 1, t.hi.raw(), MPFR_RNDD);
        mpfr_ui_div(rhi.raw(), 1, t.lo.raw(), MPFR_RNDU);
        mpfr_add_z(t.lo.raw(), rlo.raw(), pq.at(i).backend().data(), MPFR_RNDD);
        mpfr_add_z(t.hi.raw(), rhi.raw(), pq.at(i).backend().data(), MPFR_RNDU);
    }
    return t;
}

std::vector<BigInt> cf_of_rational(const BigRat& x) {
    std::vector<BigInt> a;
    BigInt p = boost::multiprecision::numerator(x);
    BigInt q = boost::multiprecision::denominator(x);
    for (;;) {
        BigInt fl = p / q; // p, q >= 0: truncation is floor
        a.push_back(fl);
        p -= fl * q;
        if (p == 0) break;
        std::swap(p, q);
    }
    return a;
}

} // namespace

std::string cf_source_name(CfSource s) {
    switch (s) {
        case CfSource::explicit_list: return "explicit";
        case CfSource::liouville_constructed: return "liouville-constructed";
        case CfSource::float_expanded: return "float-expanded";
    }
    return "explicit";
}

CfSource cf_source_from_name(const std::string& name) {
    if (name == "explicit") return CfSource::explicit_list;
    if (name == "liouville-constructed") return CfSource::liouville_constructed;
    if (name == "float-expanded") return CfSource::float_expanded;
    throw config_error("unknown CF source tag: " + name);
}

PartialQuotients::PartialQuotients(std::vector<BigInt> a, CfSource source)
    : a_(std::move(a)), source_(source) {
    if (a_.empty()) throw config_error("PartialQuotients: empty quotient list");
    if (a_[0] < 0) throw config_error("PartialQuotients: a_0 must be >= 0");
    for (std::size_t k = 1; k < a_.size(); ++k)
        if (a_[k] < 1)
            throw config_error("PartialQuotients: a_" + std::to_string(k) + " must be >= 1");
}

PartialQuotients make_repeated_cf(const BigInt& a0, const BigInt& a, std::size_t count) {
    if (count == 0) throw config_error("make_repeated_cf: count must be >= 1");
    std::vector<BigInt> q(count, a);
    q[0] = a0;
    return PartialQuotients(std::move(q), CfSource::explicit_list);
}

std::vector<Convergent> convergents(const PartialQuotients& pq, std::size_t K) {
    if (K >= pq.size())
        throw insufficient_quotients("convergents: index " + std::to_string(K) +
                                     " out of range for list of length " +
                                     std::to_string(pq.size()));
    std::vector<Convergent> c;
    c.reserve(K + 1);
    BigInt l_prev = 1, q_prev = 0; // l_{-1}, q_{-1}
    BigInt l_cur = pq.at(0), q_cur = 1;
    c.push_back({0, l_cur, q_cur});
    for (std::size_t k = 1; k <= K; ++k) {
        BigInt l_next = pq.at(k) * l_cur + l_prev;
        BigInt q_next = pq.at(k) * q_cur + q_prev;
        l_prev = l_cur; q_prev = q_cur;
        l_cur = l_next; q_cur = q_next;
        c.push_back({k, l_cur, q_cur});
    }
    return c;
}

BigInt ceil_exp_of(const BigInt& q) {
    if (q < 1) throw config_error("ceil_exp_of: q must be >= 1");
    if (bigint_bits(q) > 30) throw config_error("ceil_exp_of: exponent too large to materialize");
    // need the full integer part of e^q: about q*log2(e) bits plus guard
    auto qd = static_cast<double>(q);
    for (mpfr_prec_t prec = static_cast<mpfr_prec_t>(qd * 1.4427) + 64;; prec *= 2) {
        Real x = Real::of_bigint(q, prec);
        Real lo(prec), hi(prec);
        mpfr_exp(lo.raw(), x.raw(), MPFR_RNDD);
        mpfr_exp(hi.raw(), x.raw(), MPFR_RNDU);
        mpfr_floor(lo.raw(), lo.raw());
        mpfr_floor(hi.raw(), hi.raw());
        if (mpfr_cmp(lo.raw(), hi.raw()) == 0) {
            BigInt fl;
            mpfr_get_z(fl.backend().data(), lo.raw(), MPFR_RNDN);
            return fl + 1; // e^q is never an integer for integer q >= 1
        }
        if (prec > (1 << 26)) throw precision_error("ceil_exp_of: certification failed");
    }
}

PartialQuotients build_liouville_alpha(const BigInt& q_cap) {
    if (q_cap < 2) throw config_error("build_liouville_alpha: q_cap must be >= 2");
    std::vector<BigInt> a = {0, 2};
    BigInt q_prev = 1; // q_0
    BigInt q_cur = 2;  // q_1 = a_1

    // ln(q_cap), rounded up: if q_cur exceeds it, e^{q_cur} > q_cap already.
    Real cap = Real::of_bigint(q_cap, bigint_bits(q_cap) + 8);
    Real lncap(64);
    mpfr_log(lncap.raw(), cap.raw(), MPFR_RNDU);
    double lncap_d = lncap.to_double(MPFR_RNDU);

    for (;;) {
        if (static_cast<double>(q_cur) > lncap_d + 1.0) break;
        BigInt ak = ceil_exp_of(q_cur);
        BigInt q_next = ak * q_cur + q_prev;
        if (q_next > q_cap) break;
        a.push_back(ak);
        q_prev = q_cur;
        q_cur = q_next;
    }
    return PartialQuotients(std::move(a), CfSource::liouville_constructed);
}

ExpandResult expand_real(const BigRat& x, std::size_t K, mpfr_prec_t precision_bits) {
    if (x < 0) throw config_error("expand_real: x must be >= 0");
    if (precision_bits < 2) throw config_error("expand_real: precision_bits too small");

    std::vector<BigInt> exact = cf_of_rational(x);

    BigRat eps(BigInt(1), BigInt(1) << precision_bits);
    BigRat lo = x - eps;
    if (lo < 0) lo = 0;
    BigRat hi = x + eps;
    std::vector<BigInt> cl = cf_of_rational(lo);
    std::vector<BigInt> ch = cf_of_rational(hi);

    std::size_t cert = 0;
    while (cert < cl.size() && cert < ch.size() && cl[cert] == ch[cert]) ++cert;

    const std::size_t cap = K + 1; // quotients a_0..a_K
    if (exact.size() <= cert + 2) {
        std::size_t take = std::min(exact.size(), cap);
        std::vector<BigInt> out(exact.begin(), exact.begin() + take);
        return {PartialQuotients(std::move(out), CfSource::float_expanded), take, true};
    }
    std::size_t take = std::min(cert, cap);
    if (take == 0)
        throw precision_exhausted("expand_real: no quotient certifiable at this precision", 0);
    std::vector<BigInt> out(exact.begin(), exact.begin() + take);
    return {PartialQuotients(std::move(out), CfSource::float_expanded), take, false};
}

SignedError delta(const PartialQuotients& pq, std::size_t k, mpfr_prec_t precision_bits) {
    if (k >= pq.size())
        throw insufficient_tail("delta: index beyond materialized quotients");

    auto conv = convergents(pq, k);
    const BigInt& qk = conv[k].q;
    BigInt qkm1 = (k == 0) ? BigInt(0) : conv[k - 1].q;

    mpfr_prec_t work = std::max<mpfr_prec_t>(precision_bits, quotient_bits(pq));
    work = std::max<mpfr_prec_t>(work, std::max(bigint_bits(qk), bigint_bits(qkm1)));
    work += 64;

    RItv tail = tail_value(pq, k + 1, work);

    // D = alpha_{k+1} q_k + q_{k-1}, outward
    RItv D(work);
    mpfr_mul_z(D.lo.raw(), tail.lo.raw(), qk.backend().data(), MPFR_RNDD);
    mpfr_mul_z(D.hi.raw(), tail.hi.raw(), qk.backend().data(), MPFR_RNDU);
    mpfr_add_z(D.lo.raw(), D.lo.raw(), qkm1.backend().data(), MPFR_RNDD);
    mpfr_add_z(D.hi.raw(), D.hi.raw(), qkm1.backend().data(), MPFR_RNDU);

    // |delta_k| in [1/D_hi, 1/D_lo]
    RItv mag(work);
    mpfr_ui_div(mag.lo.raw(), 1, D.hi.raw(), MPFR_RNDD);
    mpfr_ui_div(mag.hi.raw(), 1, D.lo.raw(), MPFR_RNDU);

    Real width(work);
    mpfr_sub(width.raw(), mag.hi.raw(), mag.lo.raw(), MPFR_RNDU);
    Real tol(work);
    mpfr_set(tol.raw(), mag.lo.raw(), MPFR_RNDD);
    mpfr_mul_2si(tol.raw(), tol.raw(), -static_cast<long>(precision_bits), MPFR_RNDD);
    if (mpfr_cmp(width.raw(), tol.raw()) > 0)
        throw insufficient_tail("delta: enclosure wider than 2^-precision_bits relative; "
                                "needs one more quotient");

    SignedError se;
    se.k = k;
    se.value = Real(precision_bits);
    Real mid(work);
    mpfr_add(mid.raw(), mag.lo.raw(), mag.hi.raw(), MPFR_RNDN);
    mpfr_div_2ui(mid.raw(), mid.raw(), 1, MPFR_RNDN);
    if (k % 2 == 1) mpfr_neg(mid.raw(), mid.raw(), MPFR_RNDN);
    mpfr_set(se.value.raw(), mid.raw(), MPFR_RNDN);

    // half-width plus the final rounding, outward; underflow rounds up to
    // the smallest subnormal which is still a valid bound
    mpfr_div_2ui(width.raw(), width.raw(), 1, MPFR_RNDU);
    Real rerr(work);
    mpfr_sub(rerr.raw(), mid.raw(), se.value.raw(), MPFR_RNDA);
    mpfr_abs(rerr.raw(), rerr.raw(), MPFR_RNDU);
    mpfr_add(width.raw(), width.raw(), rerr.raw(), MPFR_RNDU);
    se.abs_bound = mpfr_get_d(width.raw(), MPFR_RNDU);
    return se;
}

namespace {

FracResult frac_from_delta(const SignedError& d, std::uint64_t n, double eps,
                           mpfr_prec_t prec) {
    if (n == 0) return {0.0, 0.0};
    mpfr_prec_t work = std::max<mpfr_prec_t>(prec, d.value.prec()) + 64;
    mpfr_t t, fl;
    mpfr_init2(t, work);
    mpfr_init2(fl, work);
    mpfr_mul_ui(t, d.value.raw(), static_cast<unsigned long>(n), MPFR_RNDN);
    mpfr_floor(fl, t);
    mpfr_sub(t, t, fl, MPFR_RNDN); // exact: cancellation of nearby values
    double value = mpfr_get_d(t, MPFR_RNDN);
    mpfr_clear(t);
    mpfr_clear(fl);

    if (value >= 1.0) value = 0.0; // rounding to double may hit 1.0 exactly
    double bound = static_cast<double>(n) * d.abs_bound + 0x1p-50;
    if (bound > eps)
        throw precision_error("frac_multiple: certified bound " + std::to_string(bound) +
                              " exceeds eps " + std::to_string(eps) +
                              "; raise precision_bits");
    return {value, bound};
}

} // namespace

FracResult frac_multiple(const PartialQuotients& pq, std::uint64_t n, std::size_t k,
                         double eps, mpfr_prec_t precision_bits) {
    if (eps <= 0) throw config_error("frac_multiple: eps must be > 0");
    SignedError d = delta(pq, k, precision_bits);
    return frac_from_delta(d, n, eps, precision_bits);
}

bool approx_inequality_check(const PartialQuotients& pq, std::size_t k) {
    if (k < 2) throw config_error("approx_inequality_check: k must be >= 2");
    const std::size_t J = pq.size() - 1;
    if (k + 1 > J)
        throw insufficient_quotients("approx_inequality_check: q_{k+1} not materialized "
                                     "(finite expansion queried at its last index)");

    auto conv = convergents(pq, J);

    // alpha lies strictly between the mediant and the deepest convergent:
    // alpha = (t l_J + l_{J-1}) / (t q_J + q_{J-1}) with tail t in (1, inf).
    BigRat mediant(conv[J].l + conv[J - 1].l, conv[J].q + conv[J - 1].q);
    BigRat deepest(conv[J].l, conv[J].q);
    BigRat x(conv[k].l, conv[k].q);

    BigRat d1 = boost::multiprecision::abs(mediant - x);
    BigRat d2 = boost::multiprecision::abs(deepest - x);
    BigRat dmin = std::min(d1, d2);
    BigRat dmax = std::max(d1, d2);

    BigRat upper(BigInt(1), conv[k].q * conv[k + 1].q);
    BigRat lower(BigInt(1), 2 * conv[k].q * conv[k + 1].q);

    // alpha is interior, so dmin >= lower and dmax <= upper certify the
    // strict sandwich.
    return dmin >= lower && dmax <= upper;
}

double diophantine_exponent_estimate(const PartialQuotients& pq) {
    const std::size_t J = pq.size() - 1;
    if (J < 3)
        throw insufficient_quotients("diophantine_exponent_estimate: need at least "
                                     "4 quotients (one ratio at k >= 2)");
    auto conv = convergents(pq, J);
    double best = 0.0;
    for (std::size_t k = 2; k + 1 <= J; ++k) {
        Real qk = Real::of_bigint(conv[k].q, bigint_bits(conv[k].q) + 8);
        Real qk1 = Real::of_bigint(conv[k + 1].q, bigint_bits(conv[k + 1].q) + 8);
        Real lk(64), lk1(64);
        mpfr_log(lk.raw(), qk.raw(), MPFR_RNDN);
        mpfr_log(lk1.raw(), qk1.raw(), MPFR_RNDN);
        double r = lk1.to_double() / lk.to_double();
        best = std::max(best, r);
    }
    return best;
}

FracEvaluator::FracEvaluator(const PartialQuotients& pq, std::size_t K,
                             mpfr_prec_t precision_bits)
    : prec_(precision_bits) {
    deltas_.reserve(K + 1);
    for (std::size_t k = 0; k <= K; ++k) deltas_.push_back(delta(pq, k, precision_bits));
}

double FracEvaluator::frac(std::uint64_t n, std::size_t k, double eps) const {
    return frac_from_delta(deltas_.at(k), n, eps, prec_).value;
}

std::string cf_to_text(const PartialQuotients& pq) {
    std::ostringstream out;
    out << "CF v1 " << pq.size() << ' ' << cf_source_name(pq.source()) << '\n';
    for (std::size_t k = 0; k < pq.size(); ++k) out << pq.at(k).str() << '\n';
    return out.str();
}

PartialQuotients cf_from_text(std::istream& in) {
    std::string tag, version, source;
    std::size_t count = 0;
    if (!(in >> tag >> version >> count >> source) || tag != "CF" || version != "v1")
        throw config_error("cf_from_text: bad header");
    std::vector<BigInt> a;
    a.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        std::string line;
        if (!(in >> line)) throw config_error("cf_from_text: truncated quotient list");
        a.emplace_back(line);
    }
    return PartialQuotients(std::move(a), cf_source_from_name(source));
}

} // namespace mobskew
