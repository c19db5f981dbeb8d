#include "drinlab/quot.hpp"

#include <map>
#include <mutex>

#include "drinlab/errors.hpp"

namespace drinlab {

PrimeIdeal PrimeIdeal::make(APoly g) {
    if (!g.monic()) throw DomainError("PrimeIdeal: generator must be monic");
    if (!irreducible(g)) throw DomainError("PrimeIdeal: generator must be irreducible");
    return PrimeIdeal{std::move(g)};
}

std::uint64_t PrimeIdeal::norm() const {
    std::uint64_t n = 1;
    for (int i = 0; i < degree(); ++i) {
        if (n > (1ULL << 62) / gen.F->q()) throw SizeBoundError("PrimeIdeal: norm overflow");
        n *= static_cast<std::uint64_t>(gen.F->q());
    }
    return n;
}

std::vector<PrimeIdeal> primes_up_to(const FqPtr& F, int max_degree) {
    std::vector<PrimeIdeal> out;
    for (int d = 1; d <= max_degree; ++d)
        for (auto& g : monic_irreducibles(F, d)) out.push_back(PrimeIdeal{std::move(g)});
    return out;
}

QuotRing::QuotRing(PrimeIdeal P, int n) : F_(P.gen.F), P_(std::move(P)), n_(n) {
    modulus_ = apoly_one(F_);
    for (int i = 0; i < n_; ++i) modulus_ = drinlab::mul(modulus_, P_.gen);
}

std::shared_ptr<const QuotRing> QuotRing::make(PrimeIdeal P, int n) {
    if (n < 1) throw DomainError("QuotRing: level must be >= 1");
    static std::mutex mu;
    static std::map<std::tuple<const Fq*, std::string, int>,
                    std::shared_ptr<const QuotRing>>
        cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[{P.gen.F.get(), to_csv(P.gen), n}];
    if (!slot) slot = std::shared_ptr<const QuotRing>(new QuotRing(std::move(P), n));
    return slot;
}

std::uint64_t QuotRing::size() const {
    std::uint64_t s = 1;
    for (int i = 0; i < modulus_.deg(); ++i) {
        if (s > (1ULL << 62) / F_->q()) throw SizeBoundError("QuotRing: size overflow");
        s *= static_cast<std::uint64_t>(F_->q());
    }
    return s;
}

std::uint64_t QuotRing::unit_count() const {
    const std::uint64_t N = P_.norm();
    std::uint64_t s = 1;
    for (int i = 0; i < n_ - 1; ++i) s *= N;
    return s * (N - 1);
}

APoly QuotRing::reduce(const APoly& a) const {
    if (a.F != F_) throw MismatchError("QuotRing: element over a different F_q");
    return mod(a, modulus_);
}

bool QuotRing::is_unit(const APoly& a) const {
    return gcd(reduce(a), P_.gen).deg() == 0 && !reduce(a).zero();
}

APoly QuotRing::inv(const APoly& a) const {
    const APoly r = reduce(a);
    auto e = ext_gcd(r, modulus_);
    if (e.g.deg() != 0)
        throw NonUnitError("QuotRing: inverse of a non-unit (P divides it)");
    return reduce(e.u); // u*a = 1 mod P^n after monic normalization of g = 1
}

int QuotRing::valuation(const APoly& a) const {
    APoly r = reduce(a);
    if (r.zero()) return n_;
    int v = 0;
    while (v < n_) {
        auto [q, rem] = divmod(r, P_.gen);
        if (!rem.zero()) break;
        r = std::move(q);
        ++v;
    }
    return v;
}

APoly QuotRing::elem(std::uint64_t index) const {
    const int q = F_->q();
    std::vector<std::uint8_t> c(modulus_.deg(), 0);
    for (int i = 0; i < modulus_.deg(); ++i) {
        c[i] = static_cast<std::uint8_t>(index % q);
        index /= q;
    }
    if (index) throw DomainError("QuotRing: element index out of range");
    return APoly(F_, std::move(c));
}

std::uint64_t QuotRing::index_of(const APoly& residue) const {
    const int q = F_->q();
    std::uint64_t idx = 0;
    for (int i = modulus_.deg() - 1; i >= 0; --i)
        idx = idx * q + residue.coeff(i);
    return idx;
}

APoly QuotRing::random_elem(Rng& rng) const {
    const int q = F_->q();
    std::vector<std::uint8_t> c(modulus_.deg(), 0);
    for (auto& d : c) d = static_cast<std::uint8_t>(rng.below(q));
    return APoly(F_, std::move(c));
}

std::pair<APoly, APoly> crt_split(const APoly& I, const APoly& J, const APoly& x) {
    if (gcd(I, J).deg() != 0 || I.zero() || J.zero())
        throw DomainError("crt: moduli are not coprime");
    return {mod(x, I), mod(x, J)};
}

APoly crt_join(const APoly& I, const APoly& J, const APoly& xi, const APoly& xj) {
    auto e = ext_gcd(I, J);
    if (e.g.deg() != 0) throw DomainError("crt: moduli are not coprime");
    // u*I + v*J = 1: u*I = 1 mod J, v*J = 1 mod I
    const APoly IJ = mul(I, J);
    APoly r = add(mul(mul(e.u, I), xj), mul(mul(e.v, J), xi));
    return mod(r, IJ);
}

} // namespace drinlab
