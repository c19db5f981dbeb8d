#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "drinlab/errors.hpp"

namespace drinlab {

/// The coefficient field F_q, q = p^s <= 16, with table-driven arithmetic.
///
/// Elements are indices 0..q-1.  Index i encodes the coefficient vector of
/// the element over F_p, lowest degree first, base p: the prime subfield is
/// 0..p-1 and in particular 0 and 1 are the ring identities.  The defining
/// polynomial is the canonical irreducible of degree s over F_p (the
/// lexicographically smallest monic one, coefficients compared low-degree
/// first), so descriptors are reproducible across runs.
class Fq {
public:
    /// Interned accessor; repeated calls with the same (p, s) return the
    /// same object.  Throws SizeBoundError unless q = p^s <= 16 and
    /// DomainError unless p is prime.
    static std::shared_ptr<const Fq> get(int p, int s);

    int p() const { return p_; }
    int s() const { return s_; }
    int q() const { return q_; }

    /// Defining polynomial over F_p, low-first, length s+1, monic.
    const std::vector<std::uint8_t>& defining() const { return defining_; }

    std::uint8_t add(std::uint8_t a, std::uint8_t b) const { return add_[idx(a, b)]; }
    std::uint8_t sub(std::uint8_t a, std::uint8_t b) const { return add_[idx(a, neg_[b])]; }
    std::uint8_t mul(std::uint8_t a, std::uint8_t b) const { return mul_[idx(a, b)]; }
    std::uint8_t neg(std::uint8_t a) const { return neg_[a]; }

    std::uint8_t inv(std::uint8_t a) const {
        if (a == 0) throw NonUnitError("Fq: inverse of zero");
        return inv_[a];
    }

    std::uint8_t pow(std::uint8_t a, std::uint64_t e) const;

    /// Coefficients of element `a` over the prime field, low-first, length s.
    std::vector<std::uint8_t> prime_coeffs(std::uint8_t a) const;

    std::string describe() const; // e.g. "F_9 = F_3[x]/(1,0,1)"

private:
    Fq(int p, int s);

    int idx(std::uint8_t a, std::uint8_t b) const { return a * q_ + b; }

    int p_, s_, q_;
    std::vector<std::uint8_t> defining_;
    std::vector<std::uint8_t> add_, mul_;
    std::array<std::uint8_t, 16> inv_{}, neg_{};
};

using FqPtr = std::shared_ptr<const Fq>;

} // namespace drinlab
