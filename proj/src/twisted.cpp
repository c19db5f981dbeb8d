#include "drinlab/twisted.hpp"

#include <algorithm>
#include <cctype>

#include "drinlab/counting.hpp"
#include "drinlab/errors.hpp"

namespace drinlab {
namespace {

template <class C, class IsZero>
void trim_tail(std::vector<C>& v, IsZero is_zero) {
    while (!v.empty() && is_zero(v.back())) v.pop_back();
}

} // namespace

TwA twa_make(const FqPtr& F, std::vector<APoly> coeffs) {
    for (const auto& a : coeffs)
        if (a.F != F) throw MismatchError("TwA: coefficient field mismatch");
    TwA t{F, std::move(coeffs)};
    trim_tail(t.c, [](const APoly& a) { return a.zero(); });
    return t;
}

TwA twa_zero(const FqPtr& F) { return TwA{F, {}}; }
TwA twa_const(const APoly& a) { return twa_make(a.F, {a}); }

TwA twa_add(const TwA& a, const TwA& b) {
    if (a.F != b.F) throw MismatchError("TwA: field mismatch");
    std::vector<APoly> c(std::max(a.c.size(), b.c.size()), apoly_zero(a.F));
    for (std::size_t i = 0; i < c.size(); ++i) {
        APoly x = i < a.c.size() ? a.c[i] : apoly_zero(a.F);
        APoly y = i < b.c.size() ? b.c[i] : apoly_zero(a.F);
        c[i] = add(x, y);
    }
    return twa_make(a.F, std::move(c));
}

TwA twa_sub(const TwA& a, const TwA& b) {
    if (a.F != b.F) throw MismatchError("TwA: field mismatch");
    std::vector<APoly> c(std::max(a.c.size(), b.c.size()), apoly_zero(a.F));
    for (std::size_t i = 0; i < c.size(); ++i) {
        APoly x = i < a.c.size() ? a.c[i] : apoly_zero(a.F);
        APoly y = i < b.c.size() ? b.c[i] : apoly_zero(a.F);
        c[i] = sub(x, y);
    }
    return twa_make(a.F, std::move(c));
}

TwA twa_mul(const TwA& a, const TwA& b) {
    if (a.F != b.F) throw MismatchError("TwA: field mismatch");
    if (a.zero() || b.zero()) return twa_zero(a.F);
    std::vector<APoly> c(a.c.size() + b.c.size() - 1, apoly_zero(a.F));
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i].zero()) continue;
        for (std::size_t j = 0; j < b.c.size(); ++j) {
            if (b.c[j].zero()) continue;
            APoly bq = b.c[j];
            for (std::size_t k = 0; k < i; ++k) bq = frobenius_q(bq); // tau^i b = b^(q^i) tau^i
            c[i + j] = add(c[i + j], mul(a.c[i], bq));
        }
    }
    return twa_make(a.F, std::move(c));
}

TwF twf_make(const FieldPtr& K, std::vector<Field::Vec> coeffs) {
    for (const auto& v : coeffs)
        if (static_cast<int>(v.size()) != K->degree())
            throw MismatchError("TwF: coefficient length mismatch");
    TwF t{K, std::move(coeffs)};
    trim_tail(t.c, [&](const Field::Vec& v) { return K->is_zero(v); });
    return t;
}

TwF twf_zero(const FieldPtr& K) { return TwF{K, {}}; }
TwF twf_const(const FieldElem& a) { return twf_make(a.field(), {a.vec()}); }

TwF twf_add(const TwF& a, const TwF& b) {
    if (a.K != b.K) throw MismatchError("TwF: field mismatch");
    std::vector<Field::Vec> c(std::max(a.c.size(), b.c.size()), a.K->zero());
    for (std::size_t i = 0; i < c.size(); ++i) {
        Field::Vec x = i < a.c.size() ? a.c[i] : a.K->zero();
        Field::Vec y = i < b.c.size() ? b.c[i] : a.K->zero();
        c[i] = a.K->add(x, y);
    }
    return twf_make(a.K, std::move(c));
}

TwF twf_sub(const TwF& a, const TwF& b) {
    if (a.K != b.K) throw MismatchError("TwF: field mismatch");
    std::vector<Field::Vec> c(std::max(a.c.size(), b.c.size()), a.K->zero());
    for (std::size_t i = 0; i < c.size(); ++i) {
        Field::Vec x = i < a.c.size() ? a.c[i] : a.K->zero();
        Field::Vec y = i < b.c.size() ? b.c[i] : a.K->zero();
        c[i] = a.K->sub(x, y);
    }
    return twf_make(a.K, std::move(c));
}

TwF twf_mul(const TwF& a, const TwF& b) {
    if (a.K != b.K) throw MismatchError("TwF: field mismatch");
    if (a.zero() || b.zero()) return twf_zero(a.K);
    const auto& K = a.K;
    std::vector<Field::Vec> c(a.c.size() + b.c.size() - 1, K->zero());
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (K->is_zero(a.c[i])) continue;
        for (std::size_t j = 0; j < b.c.size(); ++j) {
            if (K->is_zero(b.c[j])) continue;
            const Field::Vec bq = K->frob_iter(b.c[j], static_cast<int>(i));
            c[i + j] = K->add(c[i + j], K->mul(a.c[i], bq));
        }
    }
    return twf_make(a.K, std::move(c));
}

FieldElem twf_eval(const TwF& f, const FieldElem& x) {
    const auto& E = x.field();
    if (!E->extends(f.K.get()))
        throw MismatchError("twf_eval: point does not extend the coefficient field");
    Field::Vec acc = E->zero();
    Field::Vec power = x.vec(); // runs through x^(q^i)
    for (std::size_t i = 0; i < f.c.size(); ++i) {
        if (!f.K->is_zero(f.c[i])) {
            const Field::Vec a = E->embed_from(f.K.get(), f.c[i]);
            acc = E->add(acc, E->mul(a, power));
        }
        if (i + 1 < f.c.size()) power = E->frob(power);
    }
    return FieldElem(E, std::move(acc));
}

TwF twf_embed(const FieldPtr& E, const TwF& f) {
    std::vector<Field::Vec> c;
    c.reserve(f.c.size());
    for (const auto& v : f.c) c.push_back(E->embed_from(f.K.get(), v));
    return twf_make(E, std::move(c));
}

DrinfeldModule DrinfeldModule::generic(const FqPtr& F, std::vector<APoly> phi_T) {
    if (phi_T.size() < 2) throw DomainError("DrinfeldModule: rank must be >= 1");
    if (phi_T.front() != apoly_T(F))
        throw DomainError("DrinfeldModule: constant coefficient of phi_T must be T");
    if (phi_T.back().zero())
        throw DomainError("DrinfeldModule: leading coefficient g_r must be nonzero");
    for (const auto& g : phi_T)
        if (g.F != F) throw MismatchError("DrinfeldModule: coefficient field mismatch");
    DrinfeldModule m;
    m.finite_ = false;
    m.F_ = F;
    m.r_ = static_cast<int>(phi_T.size()) - 1;
    m.gcoef_ = std::move(phi_T);
    m.cache_ = std::make_shared<Cache>();
    return m;
}

DrinfeldModule DrinfeldModule::finite(FieldPtr L, std::vector<Field::Vec> phi_T,
                                      APoly char_place) {
    if (phi_T.size() < 2) throw DomainError("DrinfeldModule: rank must be >= 1");
    if (L->is_zero(phi_T.back()))
        throw DomainError("DrinfeldModule: leading coefficient g_r must be nonzero");
    if (!char_place.monic() || !irreducible(char_place))
        throw DomainError("DrinfeldModule: characteristic place must be monic irreducible");
    // gamma(T) must be a root of the characteristic place
    if (!eval_apoly(char_place, FieldElem(L, phi_T.front())).is_zero())
        throw DomainError("DrinfeldModule: char place does not annihilate gamma(T)");
    DrinfeldModule m;
    m.finite_ = true;
    m.F_ = char_place.F;
    m.r_ = static_cast<int>(phi_T.size()) - 1;
    m.L_ = std::move(L);
    m.fcoef_ = std::move(phi_T);
    m.char_place_ = std::move(char_place);
    m.cache_ = std::make_shared<Cache>();
    return m;
}

const std::vector<APoly>& DrinfeldModule::generic_coeffs() const {
    if (finite_) throw DomainError("DrinfeldModule: not in generic mode");
    return gcoef_;
}

const FieldPtr& DrinfeldModule::field() const {
    if (!finite_) throw DomainError("DrinfeldModule: not in finite mode");
    return L_;
}

const std::vector<Field::Vec>& DrinfeldModule::finite_coeffs() const {
    if (!finite_) throw DomainError("DrinfeldModule: not in finite mode");
    return fcoef_;
}

const APoly& DrinfeldModule::char_place() const {
    if (!finite_) throw DomainError("DrinfeldModule: not in finite mode");
    return char_place_;
}

FieldElem DrinfeldModule::gamma_T() const {
    if (!finite_) throw DomainError("DrinfeldModule: not in finite mode");
    return FieldElem(L_, fcoef_.front());
}

TwA DrinfeldModule::phi(const APoly& a) const {
    if (finite_) throw DomainError("DrinfeldModule: phi() needs generic mode");
    if (a.F != F_) throw MismatchError("DrinfeldModule: a over a different F_q");
    {
        std::lock_guard<std::mutex> lock(cache_->mu);
        auto it = cache_->generic.find(a.c);
        if (it != cache_->generic.end()) return it->second;
    }
    const TwA phi_T = twa_make(F_, gcoef_);
    TwA h = twa_zero(F_);
    for (int i = a.deg(); i >= 0; --i) {
        h = twa_mul(h, phi_T);
        if (a.coeff(i)) h = twa_add(h, twa_const(apoly_const(F_, a.coeff(i))));
    }
    std::lock_guard<std::mutex> lock(cache_->mu);
    return cache_->generic.emplace(a.c, std::move(h)).first->second;
}

TwF DrinfeldModule::phi_finite(const APoly& a) const {
    if (!finite_) throw DomainError("DrinfeldModule: phi_finite() needs finite mode");
    if (a.F != F_) throw MismatchError("DrinfeldModule: a over a different F_q");
    {
        std::lock_guard<std::mutex> lock(cache_->mu);
        auto it = cache_->finite.find(a.c);
        if (it != cache_->finite.end()) return it->second;
    }
    const TwF phi_T = twf_make(L_, fcoef_);
    TwF h = twf_zero(L_);
    for (int i = a.deg(); i >= 0; --i) {
        h = twf_mul(h, phi_T);
        if (a.coeff(i)) {
            Field::Vec c = L_->zero();
            c[0] = a.coeff(i);
            h = twf_add(h, twf_make(L_, {std::move(c)}));
        }
    }
    std::lock_guard<std::mutex> lock(cache_->mu);
    return cache_->finite.emplace(a.c, std::move(h)).first->second;
}

std::string DrinfeldModule::spec_string() const {
    if (finite_) throw DomainError("DrinfeldModule: finite modules have no spec string");
    std::string out = "q=" + std::to_string(F_->q()) + "; r=" + std::to_string(r_) +
                      "; phiT=";
    for (std::size_t i = 0; i < gcoef_.size(); ++i) {
        if (i) out += ",";
        out += to_symbolic(gcoef_[i]);
    }
    return out;
}

DrinfeldModule reduce_at_place(const DrinfeldModule& m, const APoly& ell) {
    if (m.is_finite()) throw DomainError("reduce_at_place: module already finite");
    if (!ell.monic() || !irreducible(ell))
        throw DomainError("reduce_at_place: place must be monic irreducible");
    const auto& g = m.generic_coeffs();
    if (mod(g.back(), ell).zero())
        throw BadReductionError("reduce_at_place: place divides the leading coefficient");
    auto L = Field::residue(ell);
    std::vector<Field::Vec> coeffs;
    coeffs.reserve(g.size());
    for (const auto& gi : g) {
        const APoly red = mod(gi, ell);
        Field::Vec v = L->zero();
        for (int i = 0; i <= red.deg(); ++i) v[i] = red.coeff(i);
        coeffs.push_back(std::move(v));
    }
    return DrinfeldModule::finite(std::move(L), std::move(coeffs), ell);
}

DrinfeldModule extend_module(const DrinfeldModule& m, int d) {
    if (!m.is_finite()) throw DomainError("extend_module: finite mode required");
    if (d == 1) return m;
    auto E = Field::extension(m.field(), d);
    std::vector<Field::Vec> coeffs;
    for (const auto& v : m.finite_coeffs())
        coeffs.push_back(E->embed_from(m.field().get(), v));
    return DrinfeldModule::finite(std::move(E), std::move(coeffs), m.char_place());
}

DrinfeldModule parse_module_spec(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t semi = text.find(';', pos);
        std::string part = text.substr(
            pos, semi == std::string::npos ? std::string::npos : semi - pos);
        std::string stripped;
        for (char ch : part)
            if (!std::isspace(static_cast<unsigned char>(ch))) stripped += ch;
        if (!stripped.empty()) {
            const std::size_t eq = stripped.find('=');
            if (eq == std::string::npos)
                throw DomainError("module spec: expected key=value in '" + part + "'");
            kv[stripped.substr(0, eq)] = stripped.substr(eq + 1);
        }
        if (semi == std::string::npos) break;
        pos = semi + 1;
    }
    for (const char* key : {"q", "r", "phiT"})
        if (!kv.count(key))
            throw DomainError(std::string("module spec: missing '") + key + "'");

    int p = 0, s = 0;
    const std::uint64_t q = std::stoull(kv["q"]);
    if (!prime_power(q, &p, &s) || q > 16)
        throw DomainError("module spec: q must be a prime power <= 16");
    auto F = Fq::get(p, s);
    const int r = std::stoi(kv["r"]);

    std::vector<APoly> coeffs;
    const std::string& list = kv["phiT"];
    pos = 0;
    while (pos <= list.size()) {
        std::size_t comma = list.find(',', pos);
        coeffs.push_back(parse_symbolic(
            F, list.substr(pos, comma == std::string::npos ? std::string::npos
                                                           : comma - pos)));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (static_cast<int>(coeffs.size()) != r + 1)
        throw DomainError("module spec: phiT must list T and g_1..g_r");
    return DrinfeldModule::generic(F, std::move(coeffs));
}

} // namespace drinlab
