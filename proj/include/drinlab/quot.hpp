#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "drinlab/apoly.hpp"
#include "drinlab/rng.hpp"

namespace drinlab {

/// A non-zero prime ideal of A = F_q[T], held by its monic irreducible
/// generator.  N(P) = card(A/P) = q^deg.
struct PrimeIdeal {
    APoly gen;

    static PrimeIdeal make(APoly g);

    int degree() const { return gen.deg(); }
    std::uint64_t norm() const;
    bool operator==(const PrimeIdeal& o) const { return gen == o.gen; }
};

/// All prime ideals of degree <= max_degree, in the canonical order.
std::vector<PrimeIdeal> primes_up_to(const FqPtr& F, int max_degree);

/// The quotient ring A/P^n.  Elements are APoly residues of degree
/// < n*deg(P); the residue doubles as the canonical lift to A.
class QuotRing : public std::enable_shared_from_this<QuotRing> {
public:
    static std::shared_ptr<const QuotRing> make(PrimeIdeal P, int n);

    const FqPtr& fq() const { return F_; }
    const PrimeIdeal& prime() const { return P_; }
    int level() const { return n_; }
    const APoly& modulus() const { return modulus_; }
    int modulus_degree() const { return modulus_.deg(); }

    /// Cardinality q^(n*degP) = N(P)^n; throws SizeBoundError above 2^62.
    std::uint64_t size() const;
    /// Number of units, N^n - N^(n-1).
    std::uint64_t unit_count() const;

    APoly reduce(const APoly& a) const;
    APoly zero() const { return apoly_zero(F_); }
    APoly one() const { return apoly_one(F_); }
    APoly add(const APoly& a, const APoly& b) const { return reduce(drinlab::add(a, b)); }
    APoly sub(const APoly& a, const APoly& b) const { return reduce(drinlab::sub(a, b)); }
    APoly neg(const APoly& a) const { return reduce(drinlab::neg(a)); }
    APoly mul(const APoly& a, const APoly& b) const { return reduce(drinlab::mul(a, b)); }
    APoly pow(const APoly& a, std::uint64_t e) const { return pow_mod(a, e, modulus_); }

    bool is_unit(const APoly& a) const;
    /// Inverse of a unit; NonUnitError otherwise.
    APoly inv(const APoly& a) const;

    /// P-adic valuation of the residue, clamped to the level n (zero -> n).
    int valuation(const APoly& a) const;

    /// Enumeration order: residue #i has coefficient digits of i in base q.
    APoly elem(std::uint64_t index) const;
    std::uint64_t index_of(const APoly& residue) const;

    /// Uniform residue, q uniform digits per coefficient.
    APoly random_elem(Rng& rng) const;

private:
    QuotRing(PrimeIdeal P, int n);

    FqPtr F_;
    PrimeIdeal P_;
    int n_;
    APoly modulus_;
};

using QuotRingPtr = std::shared_ptr<const QuotRing>;

/// Chinese remainder maps for coprime moduli I, J (arbitrary nonzero
/// polynomials).  crt_join(crt_split(x)) = x on A/(IJ).
std::pair<APoly, APoly> crt_split(const APoly& I, const APoly& J, const APoly& x);
APoly crt_join(const APoly& I, const APoly& J, const APoly& xi, const APoly& xj);

} // namespace drinlab
