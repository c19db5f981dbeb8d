#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "drinlab/fq.hpp"

namespace drinlab {

/// Element of A = F_q[T]: coefficient vector over F_q, lowest degree first,
/// normalized (no trailing zeros; the zero polynomial has an empty vector).
struct APoly {
    FqPtr F;
    std::vector<std::uint8_t> c;

    APoly() = default;
    APoly(FqPtr f, std::vector<std::uint8_t> cc);

    int deg() const { return static_cast<int>(c.size()) - 1; } // -1 for zero
    bool zero() const { return c.empty(); }
    std::uint8_t lead() const { return c.empty() ? 0 : c.back(); }
    bool monic() const { return lead() == 1; }
    std::uint8_t coeff(int i) const {
        return (i >= 0 && i < static_cast<int>(c.size())) ? c[i] : 0;
    }

    bool operator==(const APoly& o) const { return F == o.F && c == o.c; }
    bool operator!=(const APoly& o) const { return !(*this == o); }
};

APoly apoly_zero(const FqPtr& F);
APoly apoly_one(const FqPtr& F);
APoly apoly_T(const FqPtr& F);
APoly apoly_const(const FqPtr& F, std::uint8_t v);

APoly add(const APoly& a, const APoly& b);
APoly sub(const APoly& a, const APoly& b);
APoly neg(const APoly& a);
APoly mul(const APoly& a, const APoly& b);
APoly mul_scalar(const APoly& a, std::uint8_t v);
APoly shift(const APoly& a, int k); // multiply by T^k

/// Quotient and remainder; b must be nonzero.
std::pair<APoly, APoly> divmod(const APoly& a, const APoly& b);
APoly mod(const APoly& a, const APoly& b);
bool divides(const APoly& d, const APoly& a);

APoly make_monic(const APoly& a);
APoly gcd(APoly a, APoly b); // monic, gcd(0,0) = 0

/// g = gcd(a,b) monic together with u, v such that u*a + v*b = g.
struct ExtGcd {
    APoly g, u, v;
};
ExtGcd ext_gcd(const APoly& a, const APoly& b);

APoly pow_mod(const APoly& base, std::uint64_t e, const APoly& modulus);

/// Frobenius on A: a(T)^q = a(T^q) (coefficients are fixed by x -> x^q).
APoly frobenius_q(const APoly& a);

/// Evaluate at a point of F_q (Horner with the field tables).
std::uint8_t eval_at(const APoly& a, std::uint8_t x);

/// Canonical order: by degree, then coefficients compared low-degree first.
int cmp(const APoly& a, const APoly& b);
inline bool less(const APoly& a, const APoly& b) { return cmp(a, b) < 0; }

bool irreducible(const APoly& a);

/// All monic irreducibles of degree d, in the canonical order.
std::vector<APoly> monic_irreducibles(const FqPtr& F, int d);

/// Necklace count (1/d) * sum_{e|d} mu(e) q^{d/e} of monic irreducibles.
std::int64_t irreducible_count(int q, int d);

/// Monic irreducible factors with multiplicities, ordered canonically.
/// `a` must be nonzero.
std::vector<std::pair<APoly, int>> factor_monic(const APoly& a);

// Text forms.  CSV lists F_q coefficient indices low-first ("1,0,1" is
// 1 + T^2); the symbolic form is human-oriented ("T^2+1", "2T+1", "T").
std::string to_csv(const APoly& a);
std::string to_symbolic(const APoly& a);
APoly parse_csv(const FqPtr& F, const std::string& text);
APoly parse_symbolic(const FqPtr& F, const std::string& text);

} // namespace drinlab
