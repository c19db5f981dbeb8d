#include "drinlab/apoly.hpp"

#include <algorithm>
#include <cctype>

namespace drinlab {
namespace {

void normalize(std::vector<std::uint8_t>& c) {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

void check_same_field(const APoly& a, const APoly& b) {
    if (a.F != b.F) throw MismatchError("APoly: operands over different fields");
}

} // namespace

APoly::APoly(FqPtr f, std::vector<std::uint8_t> cc) : F(std::move(f)), c(std::move(cc)) {
    for (auto v : c)
        if (v >= F->q()) throw DomainError("APoly: coefficient out of range");
    normalize(c);
}

APoly apoly_zero(const FqPtr& F) { return APoly(F, {}); }
APoly apoly_one(const FqPtr& F) { return APoly(F, {1}); }
APoly apoly_T(const FqPtr& F) { return APoly(F, {0, 1}); }
APoly apoly_const(const FqPtr& F, std::uint8_t v) { return APoly(F, {v}); }

APoly add(const APoly& a, const APoly& b) {
    check_same_field(a, b);
    std::vector<std::uint8_t> r(std::max(a.c.size(), b.c.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i)
        r[i] = a.F->add(a.coeff(static_cast<int>(i)), b.coeff(static_cast<int>(i)));
    normalize(r);
    return APoly(a.F, std::move(r));
}

APoly neg(const APoly& a) {
    std::vector<std::uint8_t> r = a.c;
    for (auto& v : r) v = a.F->neg(v);
    return APoly(a.F, std::move(r));
}

APoly sub(const APoly& a, const APoly& b) { return add(a, neg(b)); }

APoly mul(const APoly& a, const APoly& b) {
    check_same_field(a, b);
    if (a.zero() || b.zero()) return apoly_zero(a.F);
    std::vector<std::uint8_t> r(a.c.size() + b.c.size() - 1, 0);
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (!a.c[i]) continue;
        for (std::size_t j = 0; j < b.c.size(); ++j)
            r[i + j] = a.F->add(r[i + j], a.F->mul(a.c[i], b.c[j]));
    }
    return APoly(a.F, std::move(r));
}

APoly mul_scalar(const APoly& a, std::uint8_t v) {
    std::vector<std::uint8_t> r = a.c;
    for (auto& x : r) x = a.F->mul(x, v);
    normalize(r);
    return APoly(a.F, std::move(r));
}

APoly shift(const APoly& a, int k) {
    if (a.zero()) return a;
    std::vector<std::uint8_t> r(a.c.size() + k, 0);
    std::copy(a.c.begin(), a.c.end(), r.begin() + k);
    return APoly(a.F, std::move(r));
}

std::pair<APoly, APoly> divmod(const APoly& a, const APoly& b) {
    check_same_field(a, b);
    if (b.zero()) throw DomainError("APoly: division by zero");
    const auto& F = a.F;
    std::vector<std::uint8_t> rem = a.c;
    const int db = b.deg();
    const std::uint8_t linv = F->inv(b.lead());
    std::vector<std::uint8_t> quo(a.deg() >= db ? a.deg() - db + 1 : 0, 0);
    int dr = static_cast<int>(rem.size()) - 1;
    while (dr >= 0 && rem[dr] == 0) --dr;
    while (dr >= db) {
        const std::uint8_t f = F->mul(rem[dr], linv);
        quo[dr - db] = f;
        for (int i = 0; i <= db; ++i)
            rem[dr - db + i] = F->sub(rem[dr - db + i], F->mul(f, b.c[i]));
        while (dr >= 0 && rem[dr] == 0) --dr;
    }
    rem.resize(dr + 1);
    return {APoly(F, std::move(quo)), APoly(F, std::move(rem))};
}

APoly mod(const APoly& a, const APoly& b) { return divmod(a, b).second; }

bool divides(const APoly& d, const APoly& a) { return mod(a, d).zero(); }

APoly make_monic(const APoly& a) {
    if (a.zero() || a.monic()) return a;
    return mul_scalar(a, a.F->inv(a.lead()));
}

APoly gcd(APoly a, APoly b) {
    while (!b.zero()) {
        APoly r = mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return make_monic(a);
}

ExtGcd ext_gcd(const APoly& a, const APoly& b) {
    const auto& F = a.F;
    APoly r0 = a, r1 = b;
    APoly u0 = apoly_one(F), u1 = apoly_zero(F);
    APoly v0 = apoly_zero(F), v1 = apoly_one(F);
    while (!r1.zero()) {
        auto [q, r2] = divmod(r0, r1);
        APoly u2 = sub(u0, mul(q, u1));
        APoly v2 = sub(v0, mul(q, v1));
        r0 = std::move(r1); r1 = std::move(r2);
        u0 = std::move(u1); u1 = std::move(u2);
        v0 = std::move(v1); v1 = std::move(v2);
    }
    if (!r0.zero() && !r0.monic()) {
        const std::uint8_t s = F->inv(r0.lead());
        r0 = mul_scalar(r0, s);
        u0 = mul_scalar(u0, s);
        v0 = mul_scalar(v0, s);
    }
    return {r0, u0, v0};
}

APoly pow_mod(const APoly& base, std::uint64_t e, const APoly& modulus) {
    APoly r = apoly_one(base.F);
    APoly b = mod(base, modulus);
    while (e) {
        if (e & 1) r = mod(mul(r, b), modulus);
        b = mod(mul(b, b), modulus);
        e >>= 1;
    }
    return r;
}

APoly frobenius_q(const APoly& a) {
    if (a.zero()) return a;
    const int q = a.F->q();
    std::vector<std::uint8_t> r(static_cast<std::size_t>(a.deg()) * q + 1, 0);
    for (int i = 0; i <= a.deg(); ++i) r[static_cast<std::size_t>(i) * q] = a.c[i];
    return APoly(a.F, std::move(r));
}

std::uint8_t eval_at(const APoly& a, std::uint8_t x) {
    std::uint8_t r = 0;
    for (int i = a.deg(); i >= 0; --i) r = a.F->add(a.F->mul(r, x), a.c[i]);
    return r;
}

int cmp(const APoly& a, const APoly& b) {
    if (a.deg() != b.deg()) return a.deg() < b.deg() ? -1 : 1;
    for (std::size_t i = 0; i < a.c.size(); ++i)
        if (a.c[i] != b.c[i]) return a.c[i] < b.c[i] ? -1 : 1;
    return 0;
}

bool irreducible(const APoly& a) {
    const int d = a.deg();
    if (d <= 0) return false;
    if (d == 1) return true;
    const auto& F = a.F;
    // A factor of degree dividing i shows up in gcd(x^{q^i} - x, a).
    APoly h = mod(apoly_T(F), a);
    for (int i = 1; 2 * i <= d; ++i) {
        h = pow_mod(h, static_cast<std::uint64_t>(F->q()), a);
        if (gcd(sub(h, apoly_T(F)), a).deg() != 0) return false;
    }
    return true;
}

std::vector<APoly> monic_irreducibles(const FqPtr& F, int d) {
    if (d < 1) throw DomainError("monic_irreducibles: degree must be >= 1");
    const int q = F->q();
    std::uint64_t count = 1;
    for (int i = 0; i < d; ++i) {
        count *= static_cast<std::uint64_t>(q);
        if (count > 100'000'000ULL)
            throw SizeBoundError("monic_irreducibles: enumeration above 1e8");
    }
    std::vector<APoly> out;
    for (std::uint64_t k = 0; k < count; ++k) {
        std::vector<std::uint8_t> c(d + 1, 0);
        std::uint64_t t = k;
        // c[0] is the most significant key of the canonical order.
        for (int i = d - 1; i >= 0; --i) {
            c[i] = static_cast<std::uint8_t>(t % q);
            t /= q;
        }
        c[d] = 1;
        APoly f(F, std::move(c));
        if (irreducible(f)) out.push_back(std::move(f));
    }
    return out;
}

std::int64_t irreducible_count(int q, int d) {
    if (d < 1) throw DomainError("irreducible_count: degree must be >= 1");
    const auto mobius = [](int n) {
        int m = 1;
        for (int p = 2; p * p <= n; ++p) {
            if (n % p == 0) {
                n /= p;
                if (n % p == 0) return 0;
                m = -m;
            }
        }
        if (n > 1) m = -m;
        return m;
    };
    std::int64_t total = 0;
    for (int e = 1; e <= d; ++e) {
        if (d % e) continue;
        std::int64_t pw = 1;
        for (int i = 0; i < d / e; ++i) {
            pw *= q;
            if (pw > (1LL << 62) / q) throw SizeBoundError("irreducible_count: overflow");
        }
        total += mobius(e) * pw;
    }
    return total / d;
}

std::vector<std::pair<APoly, int>> factor_monic(const APoly& a) {
    if (a.zero()) throw DomainError("factor_monic: zero polynomial");
    APoly rest = make_monic(a);
    std::vector<std::pair<APoly, int>> out;
    for (int d = 1; rest.deg() > 0; ++d) {
        if (2 * d > rest.deg()) {
            out.emplace_back(rest, 1); // remaining part is irreducible
            break;
        }
        for (const auto& p : monic_irreducibles(a.F, d)) {
            int mult = 0;
            while (divides(p, rest)) {
                rest = divmod(rest, p).first;
                ++mult;
            }
            if (mult) out.emplace_back(p, mult);
            if (rest.deg() < 2 * d) break;
        }
        if (rest.deg() > 0 && 2 * d >= rest.deg()) {
            out.emplace_back(rest, 1);
            break;
        }
    }
    std::sort(out.begin(), out.end(),
              [](const auto& x, const auto& y) { return less(x.first, y.first); });
    return out;
}

std::string to_csv(const APoly& a) {
    if (a.zero()) return "0";
    std::string out;
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(a.c[i]);
    }
    return out;
}

std::string to_symbolic(const APoly& a) {
    if (a.zero()) return "0";
    std::string out;
    for (int i = a.deg(); i >= 0; --i) {
        const int v = a.c[i];
        if (!v) continue;
        if (!out.empty()) out += "+";
        if (i == 0) {
            out += std::to_string(v);
        } else {
            if (v != 1) out += std::to_string(v);
            out += "T";
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

APoly parse_csv(const FqPtr& F, const std::string& text) {
    std::vector<std::uint8_t> c;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        const std::string tok = text.substr(pos, comma == std::string::npos
                                                     ? std::string::npos
                                                     : comma - pos);
        if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
            throw DomainError("APoly: bad CSV coefficient '" + tok + "'");
        const int v = std::stoi(tok);
        if (v >= F->q()) throw DomainError("APoly: coefficient out of range in CSV");
        c.push_back(static_cast<std::uint8_t>(v));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return APoly(F, std::move(c));
}

APoly parse_symbolic(const FqPtr& F, const std::string& raw) {
    std::string text;
    for (char ch : raw)
        if (!std::isspace(static_cast<unsigned char>(ch))) text += ch;
    if (text.empty()) throw DomainError("APoly: empty polynomial text");
    APoly result = apoly_zero(F);
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t plus = text.find('+', pos);
        const std::string term =
            text.substr(pos, plus == std::string::npos ? std::string::npos : plus - pos);
        if (term.empty()) throw DomainError("APoly: empty term in '" + raw + "'");
        std::size_t i = 0;
        int coeff = -1;
        if (std::isdigit(static_cast<unsigned char>(term[i]))) {
            coeff = 0;
            while (i < term.size() && std::isdigit(static_cast<unsigned char>(term[i])))
                coeff = coeff * 10 + (term[i++] - '0');
        }
        int exp = 0;
        if (i < term.size() && term[i] == 'T') {
            ++i;
            exp = 1;
            if (i < term.size() && term[i] == '^') {
                ++i;
                if (i >= term.size() || !std::isdigit(static_cast<unsigned char>(term[i])))
                    throw DomainError("APoly: bad exponent in '" + raw + "'");
                exp = 0;
                while (i < term.size() && std::isdigit(static_cast<unsigned char>(term[i])))
                    exp = exp * 10 + (term[i++] - '0');
            }
        } else if (coeff < 0) {
            throw DomainError("APoly: bad term '" + term + "'");
        }
        if (i != term.size()) throw DomainError("APoly: trailing junk in term '" + term + "'");
        if (coeff < 0) coeff = 1;
        if (coeff >= F->q()) throw DomainError("APoly: coefficient out of range");
        if (exp > 4096) throw SizeBoundError("APoly: exponent too large");
        if (coeff) {
            std::vector<std::uint8_t> mono(exp + 1, 0);
            mono[exp] = static_cast<std::uint8_t>(coeff);
            result = add(result, APoly(F, std::move(mono)));
        }
        if (plus == std::string::npos) break;
        pos = plus + 1;
    }
    return result;
}

} // namespace drinlab
