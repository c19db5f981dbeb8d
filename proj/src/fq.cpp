#include "drinlab/fq.hpp"

#include <map>
#include <mutex>

namespace drinlab {
namespace {

bool is_prime(int p) {
    if (p < 2) return false;
    for (int d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

int pdeg(const std::vector<std::uint8_t>& v) {
    for (int i = static_cast<int>(v.size()) - 1; i >= 0; --i)
        if (v[i]) return i;
    return -1;
}

int pinv(int a, int p) {
    for (int t = 1; t < p; ++t)
        if (a * t % p == 1) return t;
    throw NonUnitError("Fq: no inverse mod p");
}

std::vector<std::uint8_t> pmul(const std::vector<std::uint8_t>& a,
                               const std::vector<std::uint8_t>& b, int p) {
    if (a.empty() || b.empty()) return {};
    std::vector<std::uint8_t> r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = static_cast<std::uint8_t>((r[i + j] + a[i] * b[j]) % p);
    return r;
}

// a mod b over F_p; b need not be monic.
std::vector<std::uint8_t> pmod(std::vector<std::uint8_t> a,
                               const std::vector<std::uint8_t>& b, int p) {
    const int db = pdeg(b);
    const int linv = pinv(b[db], p);
    for (int da = pdeg(a); da >= db; da = pdeg(a)) {
        const int f = a[da] * linv % p;
        for (int i = 0; i <= db; ++i) {
            int v = a[da - db + i] - f * b[i] % p;
            a[da - db + i] = static_cast<std::uint8_t>(((v % p) + p) % p);
        }
    }
    return a;
}

bool divisible(const std::vector<std::uint8_t>& f,
               const std::vector<std::uint8_t>& g, int p) {
    return pdeg(pmod(f, g, p)) < 0;
}

// No monic divisor of degree 1..deg/2 means irreducible (deg >= 1).
bool p_irreducible(const std::vector<std::uint8_t>& f, int p) {
    const int d = pdeg(f);
    if (d <= 0) return false;
    for (int dd = 1; 2 * dd <= d; ++dd) {
        std::uint64_t count = 1;
        for (int i = 0; i < dd; ++i) count *= static_cast<std::uint64_t>(p);
        for (std::uint64_t k = 0; k < count; ++k) {
            std::vector<std::uint8_t> g(dd + 1, 0);
            std::uint64_t t = k;
            for (int i = 0; i < dd; ++i) {
                g[i] = static_cast<std::uint8_t>(t % p);
                t /= p;
            }
            g[dd] = 1;
            if (divisible(f, g, p)) return false;
        }
    }
    return true;
}

// Lexicographically smallest monic irreducible of degree s over F_p,
// coefficients compared low-degree first.
std::vector<std::uint8_t> canonical_modulus(int p, int s) {
    if (s == 1) return {0, 1}; // the polynomial x
    std::uint64_t count = 1;
    for (int i = 0; i < s; ++i) count *= static_cast<std::uint64_t>(p);
    for (std::uint64_t k = 0; k < count; ++k) {
        std::vector<std::uint8_t> f(s + 1, 0);
        std::uint64_t t = k;
        // c_0 is the most significant comparison key.
        for (int i = s - 1; i >= 0; --i) {
            f[i] = static_cast<std::uint8_t>(t % p);
            t /= p;
        }
        f[s] = 1;
        if (p_irreducible(f, p)) return f;
    }
    throw Error("Fq: no irreducible found"); // unreachable
}

} // namespace

Fq::Fq(int p, int s) : p_(p), s_(s) {
    q_ = 1;
    for (int i = 0; i < s; ++i) q_ *= p;
    defining_ = canonical_modulus(p, s);

    const auto decode = [&](int a) {
        std::vector<std::uint8_t> v(s_, 0);
        for (int i = 0; i < s_; ++i) {
            v[i] = static_cast<std::uint8_t>(a % p_);
            a /= p_;
        }
        return v;
    };
    const auto encode = [&](const std::vector<std::uint8_t>& v) {
        int a = 0;
        for (int i = s_ - 1; i >= 0; --i)
            a = a * p_ + (i < static_cast<int>(v.size()) ? v[i] : 0);
        return static_cast<std::uint8_t>(a);
    };

    add_.assign(q_ * q_, 0);
    mul_.assign(q_ * q_, 0);
    for (int a = 0; a < q_; ++a) {
        const auto va = decode(a);
        std::vector<std::uint8_t> nv(s_, 0);
        for (int i = 0; i < s_; ++i) nv[i] = static_cast<std::uint8_t>((p_ - va[i]) % p_);
        neg_[a] = encode(nv);
        for (int b = 0; b < q_; ++b) {
            const auto vb = decode(b);
            std::vector<std::uint8_t> sum(s_, 0);
            for (int i = 0; i < s_; ++i)
                sum[i] = static_cast<std::uint8_t>((va[i] + vb[i]) % p_);
            add_[a * q_ + b] = encode(sum);
            mul_[a * q_ + b] = encode(pmod(pmul(va, vb, p_), defining_, p_));
        }
    }
    for (int a = 1; a < q_; ++a)
        for (int b = 1; b < q_; ++b)
            if (mul_[a * q_ + b] == 1) {
                inv_[a] = static_cast<std::uint8_t>(b);
                break;
            }
}

std::uint8_t Fq::pow(std::uint8_t a, std::uint64_t e) const {
    std::uint8_t r = 1, base = a;
    while (e) {
        if (e & 1) r = mul(r, base);
        base = mul(base, base);
        e >>= 1;
    }
    return r;
}

std::vector<std::uint8_t> Fq::prime_coeffs(std::uint8_t a) const {
    std::vector<std::uint8_t> v(s_, 0);
    int x = a;
    for (int i = 0; i < s_; ++i) {
        v[i] = static_cast<std::uint8_t>(x % p_);
        x /= p_;
    }
    return v;
}

std::string Fq::describe() const {
    std::string out = "F_" + std::to_string(q_);
    if (s_ > 1) {
        out += " = F_" + std::to_string(p_) + "[x]/(";
        for (std::size_t i = 0; i < defining_.size(); ++i) {
            if (i) out += ",";
            out += std::to_string(defining_[i]);
        }
        out += ")";
    }
    return out;
}

std::shared_ptr<const Fq> Fq::get(int p, int s) {
    if (!is_prime(p)) throw DomainError("Fq: p = " + std::to_string(p) + " is not prime");
    if (s < 1) throw DomainError("Fq: extension degree must be >= 1");
    std::int64_t q = 1;
    for (int i = 0; i < s; ++i) {
        q *= p;
        if (q > 16)
            throw SizeBoundError("Fq: q = p^s exceeds the desk-scale bound 16");
    }
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::shared_ptr<const Fq>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[{p, s}];
    if (!slot) slot = std::shared_ptr<const Fq>(new Fq(p, s));
    return slot;
}

} // namespace drinlab
