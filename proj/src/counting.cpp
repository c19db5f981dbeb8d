#include "drinlab/counting.hpp"

#include <thread>

#include "drinlab/matfq.hpp"

namespace drinlab {
namespace {

constexpr std::uint64_t kEnumBound = 100'000'000ULL;

void check_prime_power(std::uint64_t q, int* p = nullptr, int* s = nullptr) {
    if (!prime_power(q, p, s))
        throw DomainError("counting: q = " + std::to_string(q) + " is not a prime power");
}

} // namespace

bool prime_power(std::uint64_t q, int* p_out, int* s_out) {
    if (q < 2) return false;
    std::uint64_t rest = q;
    std::uint64_t p = 0;
    for (std::uint64_t d = 2; d * d <= rest; ++d)
        if (rest % d == 0) { p = d; break; }
    if (p == 0) p = rest; // q itself prime
    int s = 0;
    while (rest % p == 0) { rest /= p; ++s; }
    if (rest != 1) return false;
    if (p_out) *p_out = static_cast<int>(p);
    if (s_out) *s_out = s;
    return true;
}

BigInt big_pow(std::uint64_t base, int e) {
    BigInt r = 1;
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

BigInt gl_order(int r, std::uint64_t q) {
    if (r < 1) throw DomainError("gl_order: r must be >= 1");
    check_prime_power(q);
    const BigInt qr = big_pow(q, r);
    BigInt out = 1;
    BigInt qi = 1;
    for (int i = 0; i < r; ++i) {
        out *= qr - qi;
        qi *= q;
    }
    return out;
}

BigInt gaussian_binomial(int n, int k, std::uint64_t q) {
    if (k < 0 || k > n) throw DomainError("gaussian_binomial: k out of range");
    check_prime_power(q);
    BigInt num = 1, den = 1;
    const BigInt qn = big_pow(q, n), qk = big_pow(q, k);
    BigInt qi = 1;
    for (int i = 0; i < k; ++i) {
        num *= qn - qi;
        den *= qk - qi;
        qi *= q;
    }
    return num / den; // exact
}

BigInt gaussian_t(int r, std::uint64_t q, int j) { return gaussian_binomial(r, j, q); }

BigInt stab_count(int r, std::uint64_t q, int j) {
    if (j < 1 || j > r) throw DomainError("stab_count: j out of range");
    check_prime_power(q);
    const BigInt qr = big_pow(q, r);
    BigInt out = 1;
    for (int i = j; i < r; ++i) out *= qr - big_pow(q, i);
    return out;
}

namespace {

FixedSpaceProfile profile_lattice(int r, std::uint64_t q, int e) {
    FixedSpaceProfile out;
    out.r = r;
    out.q = q;
    out.e = e;
    out.method = ProfileMethod::lattice_formula;
    out.b.assign(r + 1, BigInt(0));
    const BigInt gl = gl_order(r, q);
    out.tuple_count = 1;
    for (int i = 0; i < e; ++i) out.tuple_count *= gl;

    // stab(j)^e counts tuples fixing a given j-dim subspace pointwise;
    // Moebius inversion over the subspace lattice isolates exact dimension:
    //   c_j = sum_{h>=j} (-1)^(h-j) q^C(h-j,2) [r-j choose h-j]_q stab(h)^e
    for (int j = 1; j <= r; ++j) {
        BigInt c = 0;
        for (int h = j; h <= r; ++h) {
            const int m = h - j;
            BigInt term = gaussian_binomial(r - j, m, q);
            term *= big_pow(q, m * (m - 1) / 2);
            BigInt se = 1;
            const BigInt st = stab_count(r, q, h);
            for (int i = 0; i < e; ++i) se *= st;
            term *= se;
            c += (m % 2 == 0) ? term : -term;
        }
        out.b[j] = gaussian_t(r, q, j) * c;
    }
    BigInt rest = out.tuple_count;
    for (int j = 1; j <= r; ++j) rest -= out.b[j];
    out.b[0] = rest;
    return out;
}

FixedSpaceProfile profile_enumeration(int r, std::uint64_t q, int workers) {
    int p = 0, s = 0;
    check_prime_power(q, &p, &s);
    if (q > 16)
        throw SizeBoundError("fixed_space_profile: enumeration needs q <= 16");
    std::uint64_t total = 1;
    for (int i = 0; i < r * r; ++i) {
        if (total > kEnumBound)
            throw SizeBoundError("fixed_space_profile: enumeration above 1e8 elements");
        total *= q;
    }
    if (total > kEnumBound)
        throw SizeBoundError("fixed_space_profile: enumeration above 1e8 elements");

    auto F = Fq::get(p, s);
    std::uint64_t first_rows = 1;
    for (int i = 0; i < r; ++i) first_rows *= q;
    const std::uint64_t per_row = total / first_rows;

    // partitioned by the first-row value; each stripe tallies independently
    const int W = std::max(1, workers);
    std::vector<std::vector<std::uint64_t>> tallies(
        W, std::vector<std::uint64_t>(r + 1, 0));
    auto work = [&](int w) {
        MatFq M(r, r, 0);
        MatFq D(r, r, 0);
        for (std::uint64_t fr = static_cast<std::uint64_t>(w); fr < first_rows; fr += W) {
            std::uint64_t t = fr;
            for (int j = 0; j < r; ++j) {
                M.at(0, j) = static_cast<std::uint8_t>(t % q);
                t /= q;
            }
            for (std::uint64_t rest = 0; rest < per_row; ++rest) {
                std::uint64_t u = rest;
                for (int i = 1; i < r; ++i)
                    for (int j = 0; j < r; ++j) {
                        M.at(i, j) = static_cast<std::uint8_t>(u % q);
                        u /= q;
                    }
                if (fq_rank(*F, M) != r) continue;
                D = M;
                for (int i = 0; i < r; ++i) D.at(i, i) = F->sub(D.at(i, i), 1);
                const int fix_dim = r - fq_rank(*F, D);
                ++tallies[w][fix_dim];
            }
        }
    };
    if (W == 1) {
        work(0);
    } else {
        std::vector<std::thread> threads;
        for (int w = 0; w < W; ++w) threads.emplace_back(work, w);
        for (auto& th : threads) th.join();
    }

    FixedSpaceProfile out;
    out.r = r;
    out.q = q;
    out.e = 1;
    out.method = ProfileMethod::enumeration;
    out.b.assign(r + 1, BigInt(0));
    for (int w = 0; w < W; ++w)
        for (int j = 0; j <= r; ++j) out.b[j] += tallies[w][j];
    out.tuple_count = 0;
    for (int j = 0; j <= r; ++j) out.tuple_count += out.b[j];
    return out;
}

} // namespace

FixedSpaceProfile fixed_space_profile(int r, std::uint64_t q, ProfileMethod method,
                                      int e, int workers) {
    if (r < 1) throw DomainError("fixed_space_profile: r must be >= 1");
    if (e < 1) throw DomainError("fixed_space_profile: e must be >= 1");
    if (method == ProfileMethod::enumeration) {
        if (e != 1)
            throw DomainError("fixed_space_profile: enumeration supports e = 1 only");
        return profile_enumeration(r, q, workers);
    }
    return profile_lattice(r, q, e);
}

CountReport s_count_and_density(int r, std::uint64_t q, ProfileMethod method,
                                int workers) {
    const auto prof = fixed_space_profile(r, q, method, 1, workers);
    CountReport rep;
    rep.r = r;
    rep.q = q;
    rep.method = method;
    rep.gl = gl_order(r, q);
    rep.s_count = 0;
    for (int j = 1; j <= r; ++j) rep.s_count += prof.b[j];
    rep.density = BigRat(rep.s_count, rep.gl);
    rep.norm_ratio = BigRat(rep.s_count, big_pow(q, r * r - 1));
    rep.upper_bound = gaussian_t(r, q, 1) * stab_count(r, q, 1);
    rep.bound_ok = rep.s_count <= rep.upper_bound;

    BigInt residual = rep.upper_bound;
    for (int j = 1; j <= r; ++j)
        residual -= ((big_pow(q, j) - 1) / (q - 1)) * prof.b[j];
    rep.identity_residual = residual;
    return rep;
}

BigInt verify_identity(int r, std::uint64_t q, ProfileMethod method) {
    return s_count_and_density(r, q, method).identity_residual;
}

BoundReport verify_bounds(int r, const std::vector<std::uint64_t>& q_list,
                          ProfileMethod method) {
    if (q_list.empty()) throw DomainError("verify_bounds: empty q list");
    BoundReport out;
    out.r = r;
    out.upper_ok_all = true;
    for (std::uint64_t q : q_list) {
        out.rows.push_back(s_count_and_density(r, q, method));
        const auto& rep = out.rows.back();
        if (!rep.bound_ok) out.upper_ok_all = false;
        if (out.rows.size() == 1) {
            out.min_ratio = out.max_ratio = rep.norm_ratio;
        } else {
            if (rep.norm_ratio < out.min_ratio) out.min_ratio = rep.norm_ratio;
            if (rep.norm_ratio > out.max_ratio) out.max_ratio = rep.norm_ratio;
        }
    }
    return out;
}

BigInt s_count_direct(int r, std::uint64_t q) {
    int p = 0, s = 0;
    check_prime_power(q, &p, &s);
    if (q > 16) throw SizeBoundError("s_count_direct: enumeration needs q <= 16");
    std::uint64_t total = 1;
    for (int i = 0; i < r * r; ++i) {
        if (total > kEnumBound)
            throw SizeBoundError("s_count_direct: enumeration above 1e8 elements");
        total *= q;
    }
    auto F = Fq::get(p, s);
    BigInt count = 0;
    MatFq M(r, r, 0);
    for (std::uint64_t code = 0; code < total; ++code) {
        std::uint64_t t = code;
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) {
                M.at(i, j) = static_cast<std::uint8_t>(t % q);
                t /= q;
            }
        if (fq_det(*F, M) == 0) continue;
        MatFq D = M;
        for (int i = 0; i < r; ++i) D.at(i, i) = F->sub(D.at(i, i), 1);
        if (fq_det(*F, D) == 0) ++count;
    }
    return count;
}

BigRat s_density(int r, std::uint64_t q) { return s_e_density(r, q, 1); }

BigRat s_e_density(int r, std::uint64_t q, int e) {
    const auto prof = fixed_space_profile(r, q, ProfileMethod::lattice_formula, e);
    BigInt s = 0;
    for (int j = 1; j <= r; ++j) s += prof.b[j];
    return BigRat(s, prof.tuple_count);
}

std::string rat_str(const BigRat& x) {
    return boost::multiprecision::numerator(x).str() + "/" +
           boost::multiprecision::denominator(x).str();
}

} // namespace drinlab
