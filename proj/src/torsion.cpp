#include "drinlab/torsion.hpp"

#include "drinlab/counting.hpp"
#include "drinlab/errors.hpp"

namespace drinlab {
namespace {

constexpr std::uint64_t kSearchClamp = 1'000'000;

MatFq columns_matrix(int n, const std::vector<Field::Vec>& cols) {
    std::vector<VecFq> c(cols.begin(), cols.end());
    return fq_from_columns(n, c);
}

} // namespace

QLinearMap qlinear_matrix(const TwF& f, const FieldPtr& K) {
    if (!K->extends(f.K.get()))
        throw MismatchError("qlinear_matrix: field does not extend the coefficient field");
    const TwF g = twf_embed(K, f);
    const int n = K->degree();
    MatFq m(n, n, 0);
    for (int j = 0; j < n; ++j) {
        Field::Vec e = K->zero();
        e[j] = 1;
        const Field::Vec img = twf_eval(g, FieldElem(K, std::move(e))).vec();
        for (int i = 0; i < n; ++i) m.at(i, j) = img[i];
    }
    return {K, std::move(m)};
}

TorsionModule torsion_submodule(const DrinfeldModule& m, const APoly& a) {
    if (!m.is_finite()) throw DomainError("torsion_submodule: finite mode required");
    if (a.zero()) throw DomainError("torsion_submodule: a must be nonzero");
    const auto& E = m.field();
    const auto& F = *m.fq();
    const int q = F.q();

    TorsionModule out;
    out.a = a;
    out.E = E;
    out.rank = m.rank();
    if (a.deg() == 0) return out; // units have trivial torsion

    const QLinearMap L = qlinear_matrix(m.phi_finite(a), E);
    auto kernel = fq_kernel_basis(F, L.m);
    out.fq_dim = static_cast<int>(kernel.size());
    out.fq_basis.assign(kernel.begin(), kernel.end());
    if (out.fq_dim == 0) return out;

    const int t = out.fq_dim;
    const int n = E->degree();
    const MatFq B = columns_matrix(n, out.fq_basis);
    const QLinearMap LT = qlinear_matrix(m.phi_finite(apoly_T(m.fq())), E);

    // T-action in kernel coordinates (the kernel is phi_b-stable for all b)
    out.t_action = MatFq(t, t, 0);
    for (int i = 0; i < t; ++i) {
        const VecFq w = fq_apply(F, LT.m, out.fq_basis[i]);
        VecFq x;
        if (!fq_solve(F, B, w, x))
            throw Error("torsion_submodule: T-action left the kernel");
        for (int k = 0; k < t; ++k) out.t_action.at(k, i) = x[k];
    }

    // invariant factors of the F_q[T]-module: Smith form of T*I - X
    const auto& Fq_ptr = m.fq();
    Mat<APoly> charm(t, t, apoly_zero(Fq_ptr));
    for (int i = 0; i < t; ++i)
        for (int j = 0; j < t; ++j) {
            APoly entry = neg(apoly_const(Fq_ptr, out.t_action.at(i, j)));
            if (i == j) entry = add(entry, apoly_T(Fq_ptr));
            charm.at(i, j) = std::move(entry);
        }
    for (auto& d : snf_invariant_factors(Fq_ptr, std::move(charm)))
        if (d.deg() >= 1) out.invariant_factors.push_back(std::move(d));

    // greedy A/(a)-generators in the fixed coordinate order.  Each step wants
    // a vector whose full A-orbit is independent of the current span with
    // orbit dimension matching the largest remaining invariant factor (for a
    // prime ideal every nonzero vector qualifies, the orbit being simple);
    // if no candidate qualifies the step falls back to any vector outside
    // the span, still leaving a generating set.
    std::uint64_t total = 1;
    for (int i = 0; i < t; ++i) {
        total *= static_cast<std::uint64_t>(q);
        if (total > 10'000'000ULL)
            throw SizeBoundError("torsion_submodule: kernel too large for basis search");
    }
    std::vector<VecFq> span; // in kernel coordinates
    auto rank_with = [&](const std::vector<VecFq>& extra) {
        auto cols = span;
        cols.insert(cols.end(), extra.begin(), extra.end());
        MatFq S = fq_from_columns(t, cols);
        return fq_rank(F, S);
    };
    auto in_span = [&](const VecFq& v) {
        return rank_with({v}) == static_cast<int>(span.size());
    };
    auto krylov = [&](const VecFq& v) {
        std::vector<VecFq> orbit;
        VecFq w = v;
        while (true) {
            auto cols = orbit;
            cols.push_back(w);
            if (fq_rank(F, fq_from_columns(t, cols)) ==
                static_cast<int>(orbit.size()))
                break;
            orbit.push_back(w);
            w = fq_apply(F, out.t_action, w);
        }
        return orbit;
    };
    auto decode = [&](std::uint64_t idx) {
        VecFq v(t);
        for (int i = 0; i < t; ++i) {
            v[i] = static_cast<std::uint8_t>(idx % q);
            idx /= q;
        }
        return v;
    };

    std::size_t fi = out.invariant_factors.size();
    while (static_cast<int>(span.size()) < t) {
        const int want = fi > 0 ? out.invariant_factors[--fi].deg() : -1;
        bool placed = false;
        if (want > 0) {
            for (std::uint64_t idx = 1; idx < total; ++idx) {
                const VecFq v = decode(idx);
                if (in_span(v)) continue;
                const auto orbit = krylov(v);
                if (static_cast<int>(orbit.size()) != want) continue;
                if (rank_with(orbit) !=
                    static_cast<int>(span.size() + orbit.size()))
                    continue;
                out.module_basis.push_back(fq_apply(F, B, v));
                span.insert(span.end(), orbit.begin(), orbit.end());
                placed = true;
                break;
            }
        }
        if (!placed) {
            for (std::uint64_t idx = 1; idx < total; ++idx) {
                const VecFq v = decode(idx);
                if (in_span(v)) continue;
                out.module_basis.push_back(fq_apply(F, B, v));
                VecFq w = v;
                while (!in_span(w)) {
                    span.push_back(w);
                    w = fq_apply(F, out.t_action, w);
                }
                placed = true;
                break;
            }
        }
        if (!placed) throw Error("torsion_submodule: generator search failed");
    }
    return out;
}

namespace {

// ---- dense polynomials over a Field, for distinct-degree sieving ----

using FPoly = std::vector<Field::Vec>;

int fp_deg(const Field& K, const FPoly& f) {
    for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i)
        if (!K.is_zero(f[i])) return i;
    return -1;
}

void fp_trim(const Field& K, FPoly& f) {
    f.resize(static_cast<std::size_t>(fp_deg(K, f) + 1));
}

FPoly fp_make_monic(const Field& K, FPoly f) {
    const int d = fp_deg(K, f);
    if (d < 0) return f;
    const Field::Vec inv = K.inv(f[d]);
    for (auto& c : f) c = K.mul(c, inv);
    return f;
}

// remainder modulo a monic g
FPoly fp_mod(const Field& K, FPoly a, const FPoly& g) {
    const int dg = fp_deg(K, g);
    for (int da = fp_deg(K, a); da >= dg; da = fp_deg(K, a)) {
        const Field::Vec f = a[da];
        for (int i = 0; i < dg; ++i)
            a[da - dg + i] = K.sub(a[da - dg + i], K.mul(f, g[i]));
        a[da] = K.zero();
    }
    fp_trim(K, a);
    return a;
}

std::pair<FPoly, FPoly> fp_divmod(const Field& K, FPoly a, const FPoly& g) {
    const int dg = fp_deg(K, g);
    const int da0 = fp_deg(K, a);
    FPoly quo(da0 >= dg ? da0 - dg + 1 : 0, K.zero());
    for (int da = da0; da >= dg; da = fp_deg(K, a)) {
        const Field::Vec f = a[da];
        quo[da - dg] = f;
        for (int i = 0; i < dg; ++i)
            a[da - dg + i] = K.sub(a[da - dg + i], K.mul(f, g[i]));
        a[da] = K.zero();
    }
    fp_trim(K, a);
    return {std::move(quo), std::move(a)};
}

FPoly fp_gcd(const Field& K, FPoly a, FPoly b) {
    a = fp_make_monic(K, std::move(a));
    b = fp_make_monic(K, std::move(b));
    while (fp_deg(K, b) >= 0) {
        FPoly r = fp_mod(K, std::move(a), b);
        a = std::move(b);
        b = fp_make_monic(K, std::move(r));
    }
    return a;
}

// a(x)^q mod g: coefficients pass through Frobenius, exponents spread by q
FPoly fp_qpower_mod(const Field& K, const FPoly& a, const FPoly& g) {
    const int q = K.fq()->q();
    const int da = fp_deg(K, a);
    if (da < 0) return {};
    FPoly spread(static_cast<std::size_t>(da) * q + 1, K.zero());
    for (int i = 0; i <= da; ++i)
        if (!K.is_zero(a[i])) spread[static_cast<std::size_t>(i) * q] = K.frob(a[i]);
    return fp_mod(K, std::move(spread), g);
}

// Degrees (with multiplicity of distinct-degree chunks collapsed) of the
// irreducible factors of phi_a viewed as a plain polynomial over the module
// field.  phi_a is separable when a is coprime to the characteristic place,
// and its roots are exactly the a-torsion, so the torsion is fully rational
// over the degree-d extension iff every factor degree divides d.
std::vector<int> torsion_factor_degrees(const DrinfeldModule& m, const APoly& a) {
    const auto& K = *m.field();
    const TwF f = m.phi_finite(a);
    std::uint64_t deg = 1;
    for (int i = 0; i < f.deg_tau(); ++i) deg *= static_cast<std::uint64_t>(K.fq()->q());
    FPoly g(deg + 1, K.zero());
    for (int i = 0; i <= f.deg_tau(); ++i) {
        std::uint64_t pos = 1;
        for (int k = 0; k < i; ++k) pos *= static_cast<std::uint64_t>(K.fq()->q());
        g[pos] = f.c[i];
    }
    g = fp_make_monic(K, std::move(g));

    std::vector<int> degrees;
    FPoly x{K.zero(), K.one()};
    FPoly h = fp_mod(K, x, g);
    for (int i = 1; fp_deg(K, g) > 0; ++i) {
        if (2 * i > fp_deg(K, g)) {
            degrees.push_back(fp_deg(K, g)); // what is left is irreducible
            break;
        }
        for (int step = 0; step < K.degree(); ++step) h = fp_qpower_mod(K, h, g);
        FPoly diff = h;
        if (diff.size() < 2) diff.resize(2, K.zero());
        diff[1] = K.sub(diff[1], K.one());
        fp_trim(K, diff);
        FPoly u = fp_gcd(K, std::move(diff), g);
        if (fp_deg(K, u) > 0) {
            degrees.push_back(i);
            g = fp_divmod(K, std::move(g), u).first;
            h = fp_mod(K, std::move(h), g);
        }
    }
    return degrees;
}

constexpr std::uint64_t kSievePolyBound = 1024;

int full_torsion_degree(const DrinfeldModule& m, const APoly& a, const BigInt& cap) {
    if (!m.is_finite()) throw DomainError("splitting degree: finite mode required");
    if (a.zero()) throw DomainError("splitting degree: zero ideal");
    if (gcd(a, m.char_place()).deg() != 0)
        throw DomainError("splitting degree: ideal meets the characteristic place");
    if (a.deg() == 0) return 1;
    const int target = m.rank() * a.deg();
    const auto& F = *m.fq();

    const auto dim_over = [&](int d) {
        const DrinfeldModule ext = extend_module(m, d);
        const QLinearMap L = qlinear_matrix(ext.phi_finite(a), ext.field());
        return ext.field()->degree() - fq_rank(F, L.m);
    };

    std::uint64_t poly_deg = 1;
    for (int i = 0; i < m.rank() * a.deg(); ++i) {
        poly_deg *= static_cast<std::uint64_t>(F.q());
        if (poly_deg > kSievePolyBound) break;
    }
    if (poly_deg <= kSievePolyBound) {
        // decide each candidate d from the factor-degree pattern of phi_a;
        // only the accepting extension is actually built (and verified)
        const auto degrees = torsion_factor_degrees(m, a);
        for (std::uint64_t d = 1; d <= kSearchClamp; ++d) {
            if (BigInt(d) > cap)
                throw Error("splitting degree: search exceeded the card GL cap; "
                            "the Galois image embeds in GL, so this is a bug");
            bool split = true;
            for (int fd : degrees)
                if (d % static_cast<std::uint64_t>(fd)) { split = false; break; }
            if (!split) continue;
            if (dim_over(static_cast<int>(d)) != target)
                throw Error("splitting degree: sieve disagrees with the kernel");
            return static_cast<int>(d);
        }
        throw SizeBoundError("splitting degree: search clamp exceeded");
    }

    for (std::uint64_t d = 1; d <= kSearchClamp; ++d) {
        if (BigInt(d) > cap)
            throw Error("splitting degree: search exceeded the card GL cap; "
                        "the Galois image embeds in GL, so this is a bug");
        if (dim_over(static_cast<int>(d)) == target) return static_cast<int>(d);
    }
    throw SizeBoundError("splitting degree: search clamp exceeded");
}

} // namespace

int splitting_degree(const DrinfeldModule& m, const PrimeIdeal& P) {
    return full_torsion_degree(m, P.gen, gl_order(m.rank(), P.norm()));
}

int rationality_degree(const DrinfeldModule& m, const APoly& a) {
    if (a.zero()) throw DomainError("rationality_degree: zero ideal");
    if (a.deg() == 0) return 1;
    // cap = card GL(r, A/a) = prod over prime powers P^e || a of
    // card GL(r, A/P) * N(P)^(r^2 (e-1))
    BigInt cap = 1;
    for (const auto& [P, e] : factor_monic(a)) {
        std::uint64_t norm = 1;
        for (int i = 0; i < P.deg(); ++i) norm *= static_cast<std::uint64_t>(a.F->q());
        cap *= gl_order(m.rank(), norm);
        cap *= big_pow(norm, m.rank() * m.rank() * (e - 1));
    }
    return full_torsion_degree(m, make_monic(a), cap);
}

FrobMatrix frobenius_on_torsion(const DrinfeldModule& generic, const PrimeIdeal& P,
                                const APoly& ell) {
    if (generic.is_finite())
        throw DomainError("frobenius_on_torsion: generic mode required");
    if (P.gen == ell)
        throw DomainError("frobenius_on_torsion: place equals the torsion prime");
    const DrinfeldModule red = reduce_at_place(generic, ell);
    const int d = splitting_degree(red, P);
    const DrinfeldModule ext = extend_module(red, d);
    const TorsionModule tors = torsion_submodule(ext, P.gen);
    const int r = generic.rank(), degP = P.degree();
    if (tors.fq_dim != r * degP)
        throw Error("frobenius_on_torsion: torsion not fully rational after splitting");
    if (static_cast<int>(tors.module_basis.size()) != r)
        throw Error("frobenius_on_torsion: module basis has wrong length");

    const auto& E = ext.field();
    const auto& F = *generic.fq();

    // adapted F_q-basis phi_{T^t}(u_j) of the torsion space
    const QLinearMap LT = qlinear_matrix(ext.phi_finite(apoly_T(generic.fq())), E);
    std::vector<VecFq> cols;
    cols.reserve(static_cast<std::size_t>(r) * degP);
    for (int j = 0; j < r; ++j) {
        VecFq w = tors.module_basis[j];
        for (int tpow = 0; tpow < degP; ++tpow) {
            cols.push_back(w);
            w = fq_apply(F, LT.m, w);
        }
    }
    const MatFq B = fq_from_columns(E->degree(), cols);

    // arithmetic Frobenius of the reduction: x -> x^(q^deg ell)
    const MatFq Frob =
        fq_pow(F, E->frob_matrix(), static_cast<std::uint64_t>(ell.deg()));

    auto R = QuotRing::make(P, 1);
    Mat<APoly> entries(r, r, apoly_zero(generic.fq()));
    for (int j = 0; j < r; ++j) {
        const VecFq img = fq_apply(F, Frob, tors.module_basis[j]);
        VecFq x;
        if (!fq_solve(F, B, img, x))
            throw Error("frobenius_on_torsion: Frobenius left the torsion module");
        for (int jp = 0; jp < r; ++jp) {
            std::vector<std::uint8_t> c(degP, 0);
            for (int tpow = 0; tpow < degP; ++tpow) c[tpow] = x[jp * degP + tpow];
            entries.at(jp, j) = APoly(generic.fq(), std::move(c));
        }
    }
    RingMat mat = RingMat::make(R, std::move(entries));
    if (!mat.invertible)
        throw Error("frobenius_on_torsion: Frobenius matrix is not invertible");
    return FrobMatrix{std::move(mat), P.gen, ell, d, E->degree(),
                      generic.spec_string()};
}

bool fixes_nonzero_torsion(const RingMat& M) {
    if (M.R->level() != 1)
        throw DomainError("fixes_nonzero_torsion: level 1 only; use the "
                          "primitive-vector test for P^n");
    const RingMat D = rm_sub(M, rm_identity(M.R, M.size()));
    return quot_rank_mod_p(M.R, D.m) < M.size();
}

bool fixes_nonzero_torsion(const std::vector<RingMat>& tuple) {
    if (tuple.empty()) throw DomainError("fixes_nonzero_torsion: empty tuple");
    const auto& R = tuple.front().R;
    if (R->level() != 1)
        throw DomainError("fixes_nonzero_torsion: level 1 only");
    const int r = tuple.front().size();
    Mat<APoly> stack(static_cast<int>(tuple.size()) * r, r, apoly_zero(R->fq()));
    for (std::size_t k = 0; k < tuple.size(); ++k) {
        if (tuple[k].R != R || tuple[k].size() != r)
            throw MismatchError("fixes_nonzero_torsion: mixed rings or sizes");
        const RingMat D = rm_sub(tuple[k], rm_identity(R, r));
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j)
                stack.at(static_cast<int>(k) * r + i, j) = D.m.at(i, j);
    }
    return quot_rank_mod_p(R, stack) < r;
}

} // namespace drinlab
