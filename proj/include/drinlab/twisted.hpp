#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "drinlab/apoly.hpp"
#include "drinlab/field.hpp"

namespace drinlab {

/// Twisted polynomial sum a_i tau^i with coefficients in A (integral model of
/// the generic A-field F_q(T)).  Multiplication uses tau a = a^q tau, which on
/// A is a(T) -> a(T^q).
struct TwA {
    FqPtr F;
    std::vector<APoly> c; // no trailing zeros

    int deg_tau() const { return static_cast<int>(c.size()) - 1; }
    bool zero() const { return c.empty(); }
    APoly constant_term() const { return c.empty() ? apoly_zero(F) : c[0]; }
    bool operator==(const TwA& o) const { return F == o.F && c == o.c; }
};

TwA twa_make(const FqPtr& F, std::vector<APoly> coeffs);
TwA twa_zero(const FqPtr& F);
TwA twa_const(const APoly& a);
TwA twa_add(const TwA& a, const TwA& b);
TwA twa_sub(const TwA& a, const TwA& b);
TwA twa_mul(const TwA& a, const TwA& b);

/// Twisted polynomial over a finite A-field.
struct TwF {
    FieldPtr K;
    std::vector<Field::Vec> c;

    int deg_tau() const { return static_cast<int>(c.size()) - 1; }
    bool zero() const { return c.empty(); }
    FieldElem constant_term() const {
        return FieldElem(K, c.empty() ? K->zero() : c[0]);
    }
    bool operator==(const TwF& o) const { return K == o.K && c == o.c; }
};

TwF twf_make(const FieldPtr& K, std::vector<Field::Vec> coeffs);
TwF twf_zero(const FieldPtr& K);
TwF twf_const(const FieldElem& a);
TwF twf_add(const TwF& a, const TwF& b);
TwF twf_sub(const TwF& a, const TwF& b);
TwF twf_mul(const TwF& a, const TwF& b);

/// Evaluate f(x) = sum a_i x^(q^i); x may live in any extension of f's field
/// within the same tower (coefficients are embedded).
FieldElem twf_eval(const TwF& f, const FieldElem& x);

/// Lift a twisted polynomial into an extension of its coefficient field.
TwF twf_embed(const FieldPtr& E, const TwF& f);

/// A Drinfeld A-module phi given by phi_T = gamma(T) + g_1 tau + ... + g_r tau^r.
///
/// Generic mode: the A-field is F_q(T) with the inclusion structure map and
/// coefficients restricted to A, which gives an integral model whose good
/// reduction at ell is simply ell not dividing g_r.  Finite mode: the module
/// lives over a finite field L with gamma(T) = t0 and records its
/// characteristic place (the minimal polynomial of t0).
class DrinfeldModule {
public:
    static DrinfeldModule generic(const FqPtr& F, std::vector<APoly> phi_T);
    static DrinfeldModule finite(FieldPtr L, std::vector<Field::Vec> phi_T,
                                 APoly char_place);

    bool is_finite() const { return finite_; }
    const FqPtr& fq() const { return F_; }
    int rank() const { return r_; }

    const std::vector<APoly>& generic_coeffs() const;
    const FieldPtr& field() const;
    const std::vector<Field::Vec>& finite_coeffs() const;
    /// Characteristic place ell (finite mode only).
    const APoly& char_place() const;
    FieldElem gamma_T() const; // finite mode

    /// phi_a by Horner over the coefficients of a, memoized by a.
    TwA phi(const APoly& a) const;       // generic mode
    TwF phi_finite(const APoly& a) const; // finite mode

    std::string spec_string() const; // generic mode: "q=..; r=..; phiT=.."

private:
    DrinfeldModule() = default;

    bool finite_ = false;
    FqPtr F_;
    int r_ = 0;
    std::vector<APoly> gcoef_;
    FieldPtr L_;
    std::vector<Field::Vec> fcoef_;
    APoly char_place_;

    struct Cache {
        std::mutex mu;
        std::map<std::vector<std::uint8_t>, TwA> generic;
        std::map<std::vector<std::uint8_t>, TwF> finite;
    };
    std::shared_ptr<Cache> cache_;
};

/// Reduction of a generic module at a good place ell (monic irreducible with
/// ell not dividing g_r); the result lives over A/(ell) with gamma(T) = T mod
/// ell.  Bad reduction raises BadReductionError.
DrinfeldModule reduce_at_place(const DrinfeldModule& m, const APoly& ell);

/// The same finite module viewed over the degree-d extension of its field.
DrinfeldModule extend_module(const DrinfeldModule& m, int d);

/// Module-spec text form "q=<p^s>; r=<r>; phiT=<T>,<g1>,...,<gr>" with
/// symbolic polynomial tokens; the first token is the gamma-preimage T.
DrinfeldModule parse_module_spec(const std::string& text);

} // namespace drinlab
