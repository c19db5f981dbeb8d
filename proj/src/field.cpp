#include "drinlab/field.hpp"

#include <map>
#include <mutex>
#include <tuple>

#include "drinlab/errors.hpp"

namespace drinlab {

struct FieldBuilder {
    static std::shared_ptr<Field> make() { return std::shared_ptr<Field>(new Field()); }

    static FieldPtr ground(const FqPtr& F, const APoly& modulus, bool is_residue) {
        auto K = make();
        K->fq_ = F;
        K->sub_ = nullptr;
        K->d_ = K->n_ = modulus.deg();
        K->mod_.clear();
        for (int i = 0; i <= modulus.deg(); ++i)
            K->mod_.push_back(Field::Vec{modulus.coeff(i)});
        K->is_residue_ = is_residue;
        K->residue_modulus_ = modulus;
        K->build_frobenius();
        return K;
    }

    static FieldPtr tower(const FqPtr& F, FieldPtr base, int d,
                          std::vector<Field::Vec> mod) {
        auto K = make();
        K->fq_ = F;
        K->sub_ = std::move(base);
        K->d_ = d;
        K->n_ = K->sub_->degree() * d;
        K->mod_ = std::move(mod);
        K->build_frobenius();
        return K;
    }
};

namespace {

constexpr int kMaxPrimeDegree = 128;       // total degree over F_p
constexpr std::uint64_t kSearchCap = 2'000'000;

using Vec = Field::Vec;
using CP = std::vector<Vec>; // polynomial with subfield-element chunks, low-first

/// Arithmetic at the coefficient level of a tower step: either a Field or,
/// at ground level, F_q itself with single-digit chunks.
struct ChunkCtx {
    const Fq* F = nullptr;
    const Field* K = nullptr; // may be null (ground level)
    int len = 1;

    Vec zero() const { return Vec(len, 0); }
    Vec one() const {
        Vec v(len, 0);
        v[0] = 1;
        return v;
    }
    bool is_zero(const Vec& a) const {
        for (auto x : a)
            if (x) return false;
        return true;
    }
    Vec add(const Vec& a, const Vec& b) const {
        Vec r(len);
        for (int i = 0; i < len; ++i) r[i] = F->add(a[i], b[i]);
        return r;
    }
    Vec sub(const Vec& a, const Vec& b) const {
        Vec r(len);
        for (int i = 0; i < len; ++i) r[i] = F->sub(a[i], b[i]);
        return r;
    }
    Vec neg(const Vec& a) const {
        Vec r(len);
        for (int i = 0; i < len; ++i) r[i] = F->neg(a[i]);
        return r;
    }
    Vec mul(const Vec& a, const Vec& b) const {
        if (K) return K->mul(a, b);
        return Vec{F->mul(a[0], b[0])};
    }
    Vec inv(const Vec& a) const {
        if (K) return K->inv(a);
        return Vec{F->inv(a[0])};
    }
};

int cp_deg(const ChunkCtx& ctx, const CP& a) {
    for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i)
        if (!ctx.is_zero(a[i])) return i;
    return -1;
}

CP cp_trim(const ChunkCtx& ctx, CP a) {
    a.resize(static_cast<std::size_t>(cp_deg(ctx, a) + 1));
    return a;
}

CP cp_mul(const ChunkCtx& ctx, const CP& a, const CP& b) {
    if (a.empty() || b.empty()) return {};
    CP r(a.size() + b.size() - 1, ctx.zero());
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (ctx.is_zero(a[i])) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = ctx.add(r[i + j], ctx.mul(a[i], b[j]));
    }
    return cp_trim(ctx, std::move(r));
}

// Remainder of a modulo f; f must have an invertible leading chunk.
CP cp_mod(const ChunkCtx& ctx, CP a, const CP& f) {
    const int df = cp_deg(ctx, f);
    const Vec linv = ctx.inv(f[df]);
    for (int da = cp_deg(ctx, a); da >= df; da = cp_deg(ctx, a)) {
        const Vec fac = ctx.mul(a[da], linv);
        for (int i = 0; i <= df; ++i)
            a[da - df + i] = ctx.sub(a[da - df + i], ctx.mul(fac, f[i]));
    }
    return cp_trim(ctx, std::move(a));
}

std::pair<CP, CP> cp_divmod(const ChunkCtx& ctx, CP a, const CP& f) {
    const int df = cp_deg(ctx, f);
    const Vec linv = ctx.inv(f[df]);
    const int da0 = cp_deg(ctx, a);
    CP quo(da0 >= df ? da0 - df + 1 : 0, ctx.zero());
    for (int da = da0; da >= df; da = cp_deg(ctx, a)) {
        const Vec fac = ctx.mul(a[da], linv);
        quo[da - df] = fac;
        for (int i = 0; i <= df; ++i)
            a[da - df + i] = ctx.sub(a[da - df + i], ctx.mul(fac, f[i]));
    }
    return {cp_trim(ctx, std::move(quo)), cp_trim(ctx, std::move(a))};
}

CP cp_make_monic(const ChunkCtx& ctx, CP a) {
    const int d = cp_deg(ctx, a);
    if (d < 0) return a;
    const Vec linv = ctx.inv(a[d]);
    for (auto& c : a) c = ctx.mul(c, linv);
    return a;
}

CP cp_gcd(const ChunkCtx& ctx, CP a, CP b) {
    while (cp_deg(ctx, b) >= 0) {
        CP r = cp_mod(ctx, std::move(a), b);
        a = std::move(b);
        b = std::move(r);
    }
    return cp_make_monic(ctx, std::move(a));
}

CP cp_pow_mod(const ChunkCtx& ctx, CP base, std::uint64_t e, const CP& f) {
    CP r{ctx.one()};
    base = cp_mod(ctx, std::move(base), f);
    while (e) {
        if (e & 1) r = cp_mod(ctx, cp_mul(ctx, r, base), f);
        base = cp_mod(ctx, cp_mul(ctx, base, base), f);
        e >>= 1;
    }
    return r;
}

// Irreducibility over the chunk level, whose cardinality is q^len: a proper
// factor of degree <= d/2 is detected by gcd(y^(Q^i) - y, f).
bool cp_irreducible(const ChunkCtx& ctx, const CP& f) {
    const int d = cp_deg(ctx, f);
    if (d <= 0) return false;
    if (d == 1) return true;
    const std::uint64_t q = static_cast<std::uint64_t>(ctx.F->q());
    CP y{ctx.zero(), ctx.one()};
    CP h = cp_mod(ctx, y, f);
    for (int i = 1; 2 * i <= d; ++i) {
        for (int step = 0; step < ctx.len; ++step) h = cp_pow_mod(ctx, h, q, f);
        CP diff(std::max(h.size(), y.size()), ctx.zero());
        for (std::size_t k = 0; k < diff.size(); ++k) {
            Vec hv = k < h.size() ? h[k] : ctx.zero();
            Vec yv = k < y.size() ? y[k] : ctx.zero();
            diff[k] = ctx.sub(hv, yv);
        }
        if (cp_deg(ctx, cp_gcd(ctx, cp_trim(ctx, std::move(diff)), f)) > 0) return false;
    }
    return true;
}

// First monic irreducible of degree d over F_q in the canonical order
// (coefficients compared low-degree first).
APoly first_canonical_irreducible(const FqPtr& F, int d) {
    if (d == 1) return apoly_T(F); // c0 = 0 comes first and T is irreducible
    const int q = F->q();
    std::vector<int> digits(d, 0);
    for (std::uint64_t iter = 0; iter < kSearchCap; ++iter) {
        std::vector<std::uint8_t> c(digits.begin(), digits.end());
        c.push_back(1);
        APoly f(F, std::move(c));
        if (irreducible(f)) return f;
        int pos = d - 1; // the last coefficient is the least significant key
        while (pos >= 0 && ++digits[pos] == q) digits[pos--] = 0;
        if (pos < 0) break;
    }
    throw Error("Field: canonical modulus search failed");
}

} // namespace

Field::Vec Field::one() const {
    Vec v(n_, 0);
    v[0] = 1;
    return v;
}

bool Field::is_zero(const Vec& a) const {
    for (auto x : a)
        if (x) return false;
    return true;
}

Vec Field::add(const Vec& a, const Vec& b) const {
    if (static_cast<int>(a.size()) != n_ || static_cast<int>(b.size()) != n_)
        throw MismatchError("Field: element length mismatch");
    Vec r(n_);
    for (int i = 0; i < n_; ++i) r[i] = fq_->add(a[i], b[i]);
    return r;
}

Vec Field::sub(const Vec& a, const Vec& b) const {
    Vec r(n_);
    for (int i = 0; i < n_; ++i) r[i] = fq_->sub(a[i], b[i]);
    return r;
}

Vec Field::negate(const Vec& a) const {
    Vec r(n_);
    for (int i = 0; i < n_; ++i) r[i] = fq_->neg(a[i]);
    return r;
}

Vec Field::scalar_mul(std::uint8_t c, const Vec& a) const {
    Vec r(n_);
    for (int i = 0; i < n_; ++i) r[i] = fq_->mul(c, a[i]);
    return r;
}

Vec Field::chunk_mul(const Vec& a, const Vec& b) const {
    if (sub_) return sub_->mul(a, b);
    return Vec{fq_->mul(a[0], b[0])};
}

Vec Field::chunk_inv(const Vec& a) const {
    if (sub_) return sub_->inv(a);
    return Vec{fq_->inv(a[0])};
}

Vec Field::mul(const Vec& a, const Vec& b) const {
    if (static_cast<int>(a.size()) != n_ || static_cast<int>(b.size()) != n_)
        throw MismatchError("Field: element length mismatch");
    if (!sub_) { // dense convolution straight over the F_q tables
        std::uint8_t buf[2 * 128 - 1] = {0};
        const Fq& F = *fq_;
        for (int i = 0; i < n_; ++i) {
            if (!a[i]) continue;
            for (int j = 0; j < n_; ++j)
                if (b[j]) buf[i + j] = F.add(buf[i + j], F.mul(a[i], b[j]));
        }
        for (int k = 2 * n_ - 2; k >= n_; --k) {
            const std::uint8_t f = buf[k];
            if (!f) continue;
            for (int j = 0; j < n_; ++j)
                buf[k - n_ + j] = F.sub(buf[k - n_ + j], F.mul(f, mod_[j][0]));
            buf[k] = 0;
        }
        return Vec(buf, buf + n_);
    }
    const int m = chunk_len();
    const auto chunk_of = [&](const Vec& v, int i) {
        return Vec(v.begin() + static_cast<std::ptrdiff_t>(i) * m,
                   v.begin() + static_cast<std::ptrdiff_t>(i + 1) * m);
    };
    ChunkCtx ctx{fq_.get(), sub_.get(), m};
    std::vector<Vec> tmp(2 * d_ - 1, ctx.zero());
    for (int i = 0; i < d_; ++i) {
        const Vec ai = chunk_of(a, i);
        if (ctx.is_zero(ai)) continue;
        for (int j = 0; j < d_; ++j) {
            const Vec bj = chunk_of(b, j);
            if (ctx.is_zero(bj)) continue;
            tmp[i + j] = ctx.add(tmp[i + j], ctx.mul(ai, bj));
        }
    }
    // reduce by the monic modulus
    for (int k = 2 * d_ - 2; k >= d_; --k) {
        if (ctx.is_zero(tmp[k])) continue;
        for (int j = 0; j < d_; ++j)
            tmp[k - d_ + j] = ctx.sub(tmp[k - d_ + j], ctx.mul(tmp[k], mod_[j]));
    }
    Vec r(n_);
    for (int i = 0; i < d_; ++i)
        std::copy(tmp[i].begin(), tmp[i].end(), r.begin() + static_cast<std::ptrdiff_t>(i) * m);
    return r;
}

Vec Field::inv(const Vec& a) const {
    if (is_zero(a)) throw NonUnitError("Field: inverse of zero");
    const int m = chunk_len();
    ChunkCtx ctx{fq_.get(), sub_.get(), m};
    if (d_ == 1) {
        Vec r = chunk_inv(a);
        return r;
    }
    // extended Euclid between a (degree < d) and the modulus
    CP f(mod_.begin(), mod_.end());
    CP r0 = f;
    CP r1;
    for (int i = 0; i < d_; ++i)
        r1.push_back(Vec(a.begin() + static_cast<std::ptrdiff_t>(i) * m,
                         a.begin() + static_cast<std::ptrdiff_t>(i + 1) * m));
    r1 = cp_trim(ctx, std::move(r1));
    CP u0, u1{ctx.one()}; // coefficients of `a` in the Bezout identity
    while (cp_deg(ctx, r1) > 0) {
        auto [q, r2] = cp_divmod(ctx, r0, r1);
        CP qu = cp_mul(ctx, q, u1);
        CP u2(std::max(u0.size(), qu.size()), ctx.zero());
        for (std::size_t k = 0; k < u2.size(); ++k) {
            Vec x = k < u0.size() ? u0[k] : ctx.zero();
            Vec y = k < qu.size() ? qu[k] : ctx.zero();
            u2[k] = ctx.sub(x, y);
        }
        r0 = std::move(r1); r1 = cp_trim(ctx, std::move(r2));
        u0 = std::move(u1); u1 = cp_trim(ctx, std::move(u2));
    }
    if (cp_deg(ctx, r1) != 0) throw NonUnitError("Field: element not invertible");
    const Vec scale = ctx.inv(r1[0]);
    Vec out(n_, 0);
    for (std::size_t k = 0; k < u1.size(); ++k) {
        const Vec c = ctx.mul(u1[k], scale);
        std::copy(c.begin(), c.end(), out.begin() + static_cast<std::ptrdiff_t>(k) * m);
    }
    return out;
}

Vec Field::pow(const Vec& a, std::uint64_t e) const {
    Vec r = one(), base = a;
    while (e) {
        if (e & 1) r = mul(r, base);
        base = mul(base, base);
        e >>= 1;
    }
    return r;
}

Vec Field::frob(const Vec& a) const { return fq_apply(*fq_, frob_, a); }

Vec Field::frob_iter(Vec a, int times) const {
    for (int i = 0; i < times; ++i) a = frob(a);
    return a;
}

Vec Field::embed_from(const Field* src, const Vec& v) const {
    if (src == this) return v;
    if (!sub_) throw MismatchError("Field: element does not live in a subfield of this tower");
    Vec w = sub_->embed_from(src, v);
    w.resize(n_, 0);
    return w;
}

bool Field::extends(const Field* other) const {
    return this == other || (sub_ && sub_->extends(other));
}

Vec Field::elem(std::uint64_t index) const {
    const int q = fq_->q();
    Vec v(n_, 0);
    for (int i = 0; i < n_; ++i) {
        v[i] = static_cast<std::uint8_t>(index % q);
        index /= q;
    }
    if (index) throw DomainError("Field: element index out of range");
    return v;
}

std::uint64_t Field::index_of(const Vec& a) const {
    const int q = fq_->q();
    std::uint64_t idx = 0;
    for (int i = n_ - 1; i >= 0; --i) {
        if (idx > (~0ULL - a[i]) / q) throw SizeBoundError("Field: index overflow");
        idx = idx * q + a[i];
    }
    return idx;
}

Vec Field::random(Rng& rng) const {
    Vec v(n_);
    for (int i = 0; i < n_; ++i)
        v[i] = static_cast<std::uint8_t>(rng.below(static_cast<std::uint64_t>(fq_->q())));
    return v;
}

std::vector<std::uint8_t> Field::prime_coeffs(const Vec& a) const {
    std::vector<std::uint8_t> out;
    out.reserve(static_cast<std::size_t>(n_) * fq_->s());
    for (int i = 0; i < n_; ++i) {
        const auto digits = fq_->prime_coeffs(a[i]);
        out.insert(out.end(), digits.begin(), digits.end());
    }
    return out;
}

std::string Field::elem_text(const Vec& a) const {
    const auto digits = prime_coeffs(a);
    std::string out;
    for (std::size_t i = 0; i < digits.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(digits[i]);
    }
    return out;
}

Vec Field::generator() const {
    if (d_ >= 2) {
        Vec v(n_, 0);
        v[chunk_len()] = 1;
        return v;
    }
    Vec g = negate(embed_from(sub_ ? sub_.get() : this, mod_[0]));
    return g;
}

void Field::build_frobenius() {
    const std::uint64_t q = static_cast<std::uint64_t>(fq_->q());
    frob_ = MatFq(n_, n_, 0);
    for (int j = 0; j < n_; ++j) {
        Vec e(n_, 0);
        e[j] = 1;
        const Vec img = pow(e, q);
        for (int i = 0; i < n_; ++i) frob_.at(i, j) = img[i];
    }
}

std::string Field::describe() const {
    if (is_residue_)
        return "F_" + std::to_string(fq_->q()) + "[T]/(" + to_symbolic(residue_modulus_) + ")";
    if (!sub_) {
        std::uint64_t size = 1;
        for (int i = 0; i < n_ * fq_->s(); ++i) size *= fq_->p();
        return "F_" + std::to_string(size);
    }
    return sub_->describe() + "[y]/(deg " + std::to_string(d_) + ")";
}

namespace {

std::mutex reg_mu;
std::map<std::tuple<int, int, int>, FieldPtr> canonical_cache;
std::map<std::pair<const Fq*, std::string>, FieldPtr> residue_cache;
std::map<std::pair<const Field*, int>, FieldPtr> ext_cache;

} // namespace

FieldPtr Field::canonical(int p, int s, int k) {
    if (k < 1) throw DomainError("Field: extension degree must be >= 1");
    auto F = Fq::get(p, s); // validates p prime, p^s <= 16
    if (s * k > kMaxPrimeDegree)
        throw SizeBoundError("Field: p^(s*k) exceeds the desk-scale bound");
    std::lock_guard<std::mutex> lock(reg_mu);
    auto& slot = canonical_cache[{p, s, k}];
    if (!slot) slot = FieldBuilder::ground(F, first_canonical_irreducible(F, k), false);
    return slot;
}

FieldPtr Field::residue(const APoly& ell) {
    if (!ell.monic() || !irreducible(ell))
        throw DomainError("Field: residue modulus must be monic irreducible");
    std::lock_guard<std::mutex> lock(reg_mu);
    auto& slot = residue_cache[{ell.F.get(), to_csv(ell)}];
    if (!slot) slot = FieldBuilder::ground(ell.F, ell, true);
    return slot;
}

FieldPtr Field::extension(FieldPtr base, int d) {
    if (d < 1) throw DomainError("Field: extension degree must be >= 1");
    if (d == 1) return base;
    if (base->degree() * d * base->fq()->s() > kMaxPrimeDegree)
        throw SizeBoundError("Field: extension exceeds the desk-scale bound");
    std::lock_guard<std::mutex> lock(reg_mu);
    auto& slot = ext_cache[{base.get(), d}];
    if (slot) return slot;

    // deterministic modulus search: monic candidates with a nonzero constant
    // chunk, coefficients drawn from a fixed hashed stream (lexicographic
    // prefixes are dominated by reducible families, a scrambled order finds
    // an irreducible within a few times d tries)
    ChunkCtx ctx{base->fq().get(), base.get(), base->degree()};
    std::uint64_t bound = 1;
    for (int i = 0; i < base->degree(); ++i) {
        if (bound > (1ULL << 56)) { bound = 1ULL << 62; break; }
        bound *= static_cast<std::uint64_t>(base->fq()->q());
    }
    CP found;
    for (std::uint64_t iter = 0; iter < kSearchCap; ++iter) {
        Rng stream(0x5eedf1e1du ^ (iter * 0x9e3779b97f4a7c15ULL));
        CP cand;
        cand.reserve(d + 1);
        cand.push_back(base->elem(1 + stream.below(bound - 1)));
        for (int i = 1; i < d; ++i) cand.push_back(base->elem(stream.below(bound)));
        cand.push_back(ctx.one());
        if (cp_irreducible(ctx, cand)) {
            found = std::move(cand);
            break;
        }
    }
    if (found.empty()) throw Error("Field: extension modulus search failed");

    slot = FieldBuilder::tower(base->fq(), base, d, std::move(found));
    return slot;
}

FieldElem::FieldElem(FieldPtr K, Field::Vec v) : K_(std::move(K)), v_(std::move(v)) {
    if (static_cast<int>(v_.size()) != K_->degree())
        throw MismatchError("FieldElem: wrong coordinate length");
}

FieldElem FieldElem::operator+(const FieldElem& o) const {
    if (K_ != o.K_) throw MismatchError("FieldElem: mixed fields");
    return FieldElem(K_, K_->add(v_, o.v_));
}

FieldElem FieldElem::operator-(const FieldElem& o) const {
    if (K_ != o.K_) throw MismatchError("FieldElem: mixed fields");
    return FieldElem(K_, K_->sub(v_, o.v_));
}

FieldElem FieldElem::operator*(const FieldElem& o) const {
    if (K_ != o.K_) throw MismatchError("FieldElem: mixed fields");
    return FieldElem(K_, K_->mul(v_, o.v_));
}

bool FieldElem::operator==(const FieldElem& o) const {
    return K_ == o.K_ && v_ == o.v_;
}

FieldElem embed(const FieldPtr& K, const FieldElem& x) {
    return FieldElem(K, K->embed_from(x.field().get(), x.vec()));
}

FieldElem eval_apoly(const APoly& a, const FieldElem& t0) {
    const auto& K = t0.field();
    FieldElem r = FieldElem::zero(K);
    for (int i = a.deg(); i >= 0; --i) {
        r = r * t0;
        Field::Vec c = K->zero();
        c[0] = a.coeff(i);
        r = r + FieldElem(K, std::move(c));
    }
    return r;
}

} // namespace drinlab
