#ifndef MOBSKEW_CONFRAC_HPP
#define MOBSKEW_CONFRAC_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "mobskew/real.hpp"

namespace mobskew {

enum class CfSource { explicit_list, liouville_constructed, float_expanded };

std::string cf_source_name(CfSource s);
CfSource cf_source_from_name(const std::string& name);

// Partial quotients [a_0; a_1, a_2, ...] of a continued fraction.  An
// explicit or float-expanded list is a prefix of an irrational number's
// expansion (the tail is unknown but nonempty); a liouville-constructed list
// additionally knows its continuation rule a_{J+1} = ceil(e^{q_J}), which
// lets tail quantities be certified past the last materialized quotient.
// Immutable after construction.
class PartialQuotients {
public:
    PartialQuotients(std::vector<BigInt> a, CfSource source);

    std::size_t size() const { return a_.size(); }
    const BigInt& at(std::size_t k) const { return a_.at(k); }
    const std::vector<BigInt>& quotients() const { return a_; }
    CfSource source() const { return source_; }
    bool has_continuation_rule() const { return source_ == CfSource::liouville_constructed; }

private:
    std::vector<BigInt> a_;
    CfSource source_;
};

// [a0; a, a, a, ...] with `count` quotients total; golden ratio is
// make_repeated_cf(1, 1, n), the silver ratio make_repeated_cf(2, 2, n).
PartialQuotients make_repeated_cf(const BigInt& a0, const BigInt& a, std::size_t count);

struct Convergent {
    std::size_t k;
    BigInt l;
    BigInt q;
};

// Exact convergents l_0/q_0 .. l_K/q_K.
std::vector<Convergent> convergents(const PartialQuotients& pq, std::size_t K);

// delta_k = q_k*alpha - l_k, certified.  value is the enclosure midpoint,
// abs_bound an upper bound on |true - value| (rounded outward).
struct SignedError {
    std::size_t k = 0;
    Real value;
    double abs_bound = 0.0;

    double theta() const { // theta_k = |delta_k| = ||q_k alpha||
        double v = value.to_double();
        return v < 0 ? -v : v;
    }
};

// Liouville-type alpha of the construction a_0 = 0, a_1 = 2,
// a_{k+1} = ceil(e^{q_k}); quotients are materialized only while
// q_k <= q_cap.
PartialQuotients build_liouville_alpha(const BigInt& q_cap);

// Exact ceil(e^q) for modest q (interval exp at growing precision).
BigInt ceil_exp_of(const BigInt& q);

struct ExpandResult {
    PartialQuotients pq;
    std::size_t certified = 0;  // number of leading quotients certified
    bool exact_rational = false;
};

// Gauss-map expansion of x (an exact rational carrying precision_bits of
// declared accuracy), truncated at index K or at the last quotient robust to
// a +-2^-precision_bits perturbation.  If x's own canonical expansion
// terminates within the certified region, x is treated as exactly rational
// and that expansion is returned.
ExpandResult expand_real(const BigRat& x, std::size_t K, mpfr_prec_t precision_bits);

// delta_k via the tail identity delta_k = (-1)^k / (alpha_{k+1} q_k + q_{k-1});
// throws insufficient_tail when the enclosure cannot reach relative width
// 2^-precision_bits.
SignedError delta(const PartialQuotients& pq, std::size_t k, mpfr_prec_t precision_bits);

struct FracResult {
    double value = 0.0;       // frac(n q_k alpha) in [0,1)
    double error_bound = 0.0; // certified, as mod-1 distance
};

// frac(n q_k alpha) computed as frac(n delta_k); throws precision_error if
// the certified bound exceeds eps.
FracResult frac_multiple(const PartialQuotients& pq, std::uint64_t n, std::size_t k,
                         double eps, mpfr_prec_t precision_bits);

// Certifies both strict inequalities of the convergent sandwich
//   1/(2 q_k q_{k+1}) < |alpha - l_k/q_k| < 1/(q_k q_{k+1})
// by exact big-rational arithmetic: alpha lies strictly between the deepest
// convergent and the mediant (l_J+l_{J-1})/(q_J+q_{J-1}).
bool approx_inequality_check(const PartialQuotients& pq, std::size_t k);

// max over materialized k >= 2 of log q_{k+1} / log q_k; an empirical lower
// estimate of the diophantine exponent.
double diophantine_exponent_estimate(const PartialQuotients& pq);

// Caches certified delta enclosures for k = 0..K so frac(n q_k alpha) costs
// O(1) mpfr operations per call.  Thread-safe after construction.
class FracEvaluator {
public:
    FracEvaluator(const PartialQuotients& pq, std::size_t K, mpfr_prec_t precision_bits);

    // frac(n q_k alpha) in [0,1); throws precision_error if bound > eps.
    double frac(std::uint64_t n, std::size_t k, double eps = 1e-10) const;
    const SignedError& delta_at(std::size_t k) const { return deltas_.at(k); }
    std::size_t K() const { return deltas_.size() - 1; }
    mpfr_prec_t prec() const { return prec_; }

private:
    std::vector<SignedError> deltas_;
    mpfr_prec_t prec_;
};

// Text serialization: header "CF v1 <count> <source>", then one decimal
// quotient per line starting with a_0.
std::string cf_to_text(const PartialQuotients& pq);
PartialQuotients cf_from_text(std::istream& in);

} // namespace mobskew

#endif
