#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "drinlab/apoly.hpp"
#include "drinlab/fq.hpp"
#include "drinlab/matfq.hpp"
#include "drinlab/rng.hpp"

namespace drinlab {

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// A finite extension of F_q, built either directly as F_q[y]/(h) or as a
/// tower step over another Field.  Elements are flat coefficient vectors over
/// F_q of length degree(); for a tower step the vector is the concatenation
/// of the subfield coordinates of the y-power coefficients, so embedding a
/// subfield element is plain zero-padding.
///
/// Fields are interned: the three factories below return the same object for
/// the same construction, which makes descriptors reproducible and lets the
/// rest of the library compare fields by pointer.
class Field : public std::enable_shared_from_this<Field> {
public:
    using Vec = std::vector<std::uint8_t>;

    /// F_{q^k} over F_q = F_{p^s} with the canonical defining polynomial
    /// (lexicographically smallest monic irreducible, low-degree-first).
    /// k = 1 uses the identity representation F_q[y]/(y).
    static FieldPtr canonical(int p, int s, int k);

    /// Residue field A/(ell) = F_q[T]/(ell) for a monic irreducible ell.
    /// generator() is the class of T.
    static FieldPtr residue(const APoly& ell);

    /// Degree-d extension of `base` (d = 1 returns `base`).  The defining
    /// polynomial is the first irreducible in a fixed deterministic search
    /// order, so repeated calls agree.
    static FieldPtr extension(FieldPtr base, int d);

    const FqPtr& fq() const { return fq_; }
    const FieldPtr& subfield() const { return sub_; } // null when directly over F_q
    int step_degree() const { return d_; }
    int degree() const { return n_; } // over F_q
    /// The modulus as flat subfield elements, low-first, length step_degree()+1.
    const std::vector<Vec>& modulus() const { return mod_; }

    Vec zero() const { return Vec(n_, 0); }
    Vec one() const;
    /// Class of the adjoined generator (the class of T for residue fields).
    Vec generator() const;

    bool is_zero(const Vec& a) const;
    Vec add(const Vec& a, const Vec& b) const;
    Vec sub(const Vec& a, const Vec& b) const;
    Vec negate(const Vec& a) const;
    Vec scalar_mul(std::uint8_t c, const Vec& a) const;
    Vec mul(const Vec& a, const Vec& b) const;
    Vec inv(const Vec& a) const;
    Vec pow(const Vec& a, std::uint64_t e) const;

    /// x -> x^q (F_q-linear); applied through the cached matrix.
    Vec frob(const Vec& a) const;
    Vec frob_iter(Vec a, int times) const;
    const MatFq& frob_matrix() const { return frob_; }

    /// Zero-pad an element of a field lower in this tower into this field.
    Vec embed_from(const Field* src, const Vec& v) const;
    bool extends(const Field* other) const;

    /// Enumeration order: element #i has coefficient digits of i in base q.
    Vec elem(std::uint64_t index) const;
    std::uint64_t index_of(const Vec& a) const;
    Vec random(Rng& rng) const;

    /// Coefficients over the prime field (s * n entries, low-first) and the
    /// comma-separated text form used for interchange.
    std::vector<std::uint8_t> prime_coeffs(const Vec& a) const;
    std::string elem_text(const Vec& a) const;

    std::string describe() const;

private:
    Field() = default;

    int chunk_len() const { return sub_ ? sub_->n_ : 1; }
    Vec chunk_mul(const Vec& a, const Vec& b) const;
    Vec chunk_inv(const Vec& a) const;
    void build_frobenius();

    FqPtr fq_;
    FieldPtr sub_;
    int d_ = 1, n_ = 1;
    std::vector<Vec> mod_;
    MatFq frob_;
    APoly residue_modulus_; // set only for residue fields (used in describe)
    bool is_residue_ = false;

    friend struct FieldBuilder;
};

/// Value-semantic field element; operators require both operands to come
/// from the same interned Field.
class FieldElem {
public:
    FieldElem() = default;
    FieldElem(FieldPtr K, Field::Vec v);

    static FieldElem zero(const FieldPtr& K) { return FieldElem(K, K->zero()); }
    static FieldElem one(const FieldPtr& K) { return FieldElem(K, K->one()); }

    const FieldPtr& field() const { return K_; }
    const Field::Vec& vec() const { return v_; }
    bool is_zero() const { return K_->is_zero(v_); }

    FieldElem operator+(const FieldElem& o) const;
    FieldElem operator-(const FieldElem& o) const;
    FieldElem operator*(const FieldElem& o) const;
    FieldElem operator-() const { return FieldElem(K_, K_->negate(v_)); }
    bool operator==(const FieldElem& o) const;
    bool operator!=(const FieldElem& o) const { return !(*this == o); }

    FieldElem inv() const { return FieldElem(K_, K_->inv(v_)); }
    FieldElem pow(std::uint64_t e) const { return FieldElem(K_, K_->pow(v_, e)); }
    FieldElem frob() const { return FieldElem(K_, K_->frob(v_)); }

private:
    FieldPtr K_;
    Field::Vec v_;
};

/// Embed x into the (equal or larger) field K of the same tower.
FieldElem embed(const FieldPtr& K, const FieldElem& x);

/// Evaluate a ∈ A = F_q[T] at a field element (the structure map T -> t0).
FieldElem eval_apoly(const APoly& a, const FieldElem& t0);

} // namespace drinlab
