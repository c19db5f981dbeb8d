#include "drinlab/measure.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <thread>

#include "drinlab/errors.hpp"

namespace drinlab {
namespace {

constexpr std::uint64_t kSpaceBound = 100'000'000ULL;

void parallel_for(std::uint64_t n, int workers,
                  const std::function<void(std::uint64_t)>& fn) {
    const int W = std::max(1, workers);
    if (W == 1 || n < 2) {
        for (std::uint64_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> threads;
    for (int w = 0; w < W; ++w)
        threads.emplace_back([&, w] {
            for (std::uint64_t i = static_cast<std::uint64_t>(w); i < n; i += W) fn(i);
        });
    for (auto& t : threads) t.join();
}

double binom_stderr(double p, std::uint64_t n) {
    return n ? std::sqrt(p * (1.0 - p) / static_cast<double>(n)) : 0.0;
}

std::uint64_t checked_pow(std::uint64_t base, int e, const char* what) {
    std::uint64_t out = 1;
    for (int i = 0; i < e; ++i) {
        if (out > kSpaceBound) throw SizeBoundError(std::string(what) + ": enumeration above 1e8");
        out *= base;
    }
    if (out > kSpaceBound) throw SizeBoundError(std::string(what) + ": enumeration above 1e8");
    return out;
}

// decode `code` into an r x r matrix of residues of R
Mat<APoly> decode_matrix(const QuotRingPtr& R, int r, std::uint64_t code) {
    const std::uint64_t S = R->size();
    Mat<APoly> m(r, r, apoly_zero(R->fq()));
    for (int k = 0; k < r * r; ++k) {
        m.a[k] = R->elem(code % S);
        code /= S;
    }
    return m;
}

} // namespace

std::string SimConfig::describe() const {
    std::string out = "target=" + target + " r=" + std::to_string(r) +
                      " q=" + std::to_string(q) + " e=" + std::to_string(e) +
                      " max_degree=" + std::to_string(max_degree) +
                      " level=" + std::to_string(level) +
                      " trials=" + std::to_string(trials) +
                      " seed=" + std::to_string(seed) +
                      " exact_bound=" + std::to_string(exact_bound);
    if (!module_spec.empty()) out += " module={" + module_spec + "}";
    return out;
}

BigInt gl_ring_order(int r, const QuotRingPtr& R) {
    return gl_order(r, R->prime().norm()) *
           big_pow(R->prime().norm(), r * r * (R->level() - 1));
}

RingMat sample_gl(int r, const QuotRingPtr& R, Rng& rng) {
    const auto& P = R->prime();
    auto R1 = QuotRing::make(P, 1);
    Mat<APoly> level1(r, r, apoly_zero(R->fq()));
    while (true) {
        for (auto& e : level1.a) e = R1->random_elem(rng);
        if (quot_rank_mod_p(R1, level1) == r) break;
    }
    if (R->level() == 1) return RingMat::make(R, std::move(level1));
    // uniform lift: residue + P * (uniform element of A/P^(n-1))
    auto Rlow = QuotRing::make(P, R->level() - 1);
    Mat<APoly> lifted(r, r, apoly_zero(R->fq()));
    for (int k = 0; k < r * r; ++k)
        lifted.a[k] = add(level1.a[k], mul(P.gen, Rlow->random_elem(rng)));
    return RingMat::make(R, std::move(lifted));
}

bool has_primitive_eigenvector(const RingMat& M, const APoly& u) {
    const auto& R = M.R;
    if (!R->is_unit(u))
        throw NonUnitError("has_primitive_eigenvector: u must be a unit");
    const APoly ur = R->reduce(u);
    if (M.size() == 1) {
        // the Smith form of a 1x1 matrix is its entry: P^n | (m - u) iff the
        // residue vanishes
        return R->sub(M.m.at(0, 0), ur).zero();
    }
    Mat<APoly> B = M.m;
    for (int i = 0; i < M.size(); ++i) B.at(i, i) = R->sub(B.at(i, i), ur);
    for (const auto& d : snf_invariant_factors(R->fq(), std::move(B)))
        if (R->reduce(d).zero()) return true;
    return false;
}

bool fixes_primitive(const RingMat& M) {
    return has_primitive_eigenvector(M, apoly_one(M.R->fq()));
}

GroupCount count_primitive_fixers(int r, const QuotRingPtr& R) {
    const std::uint64_t space = checked_pow(R->size(), r * r, "count_primitive_fixers");
    GroupCount out;
    for (std::uint64_t code = 0; code < space; ++code) {
        RingMat M = RingMat::make(R, decode_matrix(R, r, code));
        if (!M.invertible) continue;
        ++out.group;
        if (fixes_primitive(M)) ++out.fixing;
    }
    return out;
}

HitReport borel_cantelli_run(const SimConfig& cfg) {
    if (cfg.target != "matrix-group")
        throw DomainError("borel_cantelli_run: matrix-group target required");
    if (cfg.e < 1 || cfg.e > 16) throw DomainError("borel_cantelli_run: e in 1..16");
    if (cfg.trials < 1) throw DomainError("borel_cantelli_run: trials >= 1");
    int p = 0, s = 0;
    if (!prime_power(static_cast<std::uint64_t>(cfg.q), &p, &s))
        throw DomainError("borel_cantelli_run: q must be a prime power");
    auto F = Fq::get(p, s);
    const auto primes = primes_up_to(F, cfg.max_degree);

    HitReport rep;
    rep.cfg = cfg;
    rep.rows.resize(primes.size());
    parallel_for(primes.size(), cfg.workers, [&](std::uint64_t pi) {
        const PrimeIdeal& P = primes[pi];
        auto R = QuotRing::make(P, 1);
        PrimeRow row;
        row.P = P.gen;
        row.degree = P.degree();
        row.norm = P.norm();
        row.density = s_density(cfg.r, P.norm());
        row.expected = 1;
        for (int i = 0; i < cfg.e; ++i) row.expected *= row.density;
        row.expected_exact = s_e_density(cfg.r, P.norm(), cfg.e);
        row.trials = cfg.trials;
        for (std::uint64_t t = 0; t < cfg.trials; ++t) {
            std::vector<RingMat> tuple;
            tuple.reserve(cfg.e);
            for (int j = 0; j < cfg.e; ++j) {
                // position-keyed streams couple runs with different e
                Rng rng(child_seed(cfg.seed, pi, t * 16 + static_cast<std::uint64_t>(j)));
                tuple.push_back(sample_gl(cfg.r, R, rng));
            }
            if (fixes_nonzero_torsion(tuple)) ++row.hits;
        }
        row.freq = static_cast<double>(row.hits) / static_cast<double>(row.trials);
        row.stderr_ = binom_stderr(row.freq, row.trials);
        rep.rows[pi] = std::move(row);
    });

    rep.total_expected = 0;
    rep.total_expected_exact = 0;
    double variance = 0; // per-trial hit-count variance, sum of p(1-p)
    for (auto& row : rep.rows) {
        rep.total_expected += row.expected;
        rep.total_expected_exact += row.expected_exact;
        rep.total_hits += row.hits;
        row.cum_expected = rep.total_expected;
        row.cum_expected_exact = rep.total_expected_exact;
        row.cum_hits = rep.total_hits;
        const double pd = static_cast<double>(row.expected_exact);
        variance += pd * (1.0 - pd);
    }
    rep.mean_hits_per_trial =
        static_cast<double>(rep.total_hits) / static_cast<double>(cfg.trials);
    const double mean_exact = static_cast<double>(rep.total_expected_exact);
    const double se = std::sqrt(variance / static_cast<double>(cfg.trials));
    rep.within_3_sigma = std::abs(rep.mean_hits_per_trial - mean_exact) <= 3 * se;
    return rep;
}

IndependenceReport independence_check(int r, const PrimeIdeal& P1,
                                      const PrimeIdeal& P2) {
    if (P1.gen == P2.gen)
        throw DomainError("independence_check: primes must be distinct");
    IndependenceReport rep;
    rep.r = r;
    rep.P1 = P1.gen;
    rep.P2 = P2.gen;

    const auto count_factor = [&](const PrimeIdeal& P, BigInt& n_out, BigInt& s_out) {
        auto R = QuotRing::make(P, 1);
        const std::uint64_t space = checked_pow(R->size(), r * r, "independence_check");
        std::uint64_t n = 0, sc = 0;
        for (std::uint64_t code = 0; code < space; ++code) {
            RingMat M = RingMat::make(R, decode_matrix(R, r, code));
            if (!M.invertible) continue;
            ++n;
            if (fixes_nonzero_torsion(M)) ++sc;
        }
        n_out = n;
        s_out = sc;
    };
    count_factor(P1, rep.n1, rep.s1);
    count_factor(P2, rep.n2, rep.s2);

    // fraction of GL x GL whose components both fix a nonzero vector; the
    // double sum over pairs factors into the per-factor tallies
    rep.joint = BigRat(rep.s1 * rep.s2, rep.n1 * rep.n2);
    rep.product = BigRat(rep.s1, rep.n1) * BigRat(rep.s2, rep.n2);
    rep.exact_equal = rep.joint == rep.product;
    rep.formula_match = rep.n1 == gl_order(r, P1.norm()) &&
                        rep.n2 == gl_order(r, P2.norm()) &&
                        BigRat(rep.s1, rep.n1) == s_density(r, P1.norm()) &&
                        BigRat(rep.s2, rep.n2) == s_density(r, P2.norm());

    // CRT content: card GL(r, A/(P1 P2)) = card GL x card GL, counted
    // elementwise over the product ring when it is small enough
    const APoly I = mul(P1.gen, P2.gen);
    std::uint64_t ring_size = 1;
    bool feasible = true;
    for (int i = 0; i < I.deg() && feasible; ++i) {
        ring_size *= static_cast<std::uint64_t>(I.F->q());
        if (ring_size > 4096) feasible = false;
    }
    double space_d = 1;
    for (int k = 0; k < r * r && feasible; ++k) {
        space_d *= static_cast<double>(ring_size);
        if (space_d > 1'000'000.0) feasible = false;
    }
    if (feasible) {
        rep.crt_card_checked = true;
        std::uint64_t space = 1;
        for (int k = 0; k < r * r; ++k) space *= ring_size;
        const auto& F = I.F;
        std::uint64_t invertible = 0;
        for (std::uint64_t code = 0; code < space; ++code) {
            // invertible over A/I iff invertible mod both primes
            std::uint64_t t = code;
            Mat<APoly> m(r, r, apoly_zero(F));
            for (int k = 0; k < r * r; ++k) {
                std::uint64_t idx = t % ring_size;
                t /= ring_size;
                std::vector<std::uint8_t> c(I.deg(), 0);
                for (int i = 0; i < I.deg(); ++i) {
                    c[i] = static_cast<std::uint8_t>(idx % F->q());
                    idx /= F->q();
                }
                m.a[k] = APoly(F, std::move(c));
            }
            auto R1 = QuotRing::make(P1, 1);
            auto R2 = QuotRing::make(P2, 1);
            if (quot_rank_mod_p(R1, m) == r && quot_rank_mod_p(R2, m) == r)
                ++invertible;
        }
        rep.crt_card_ok = BigInt(invertible) == rep.n1 * rep.n2;
    }
    return rep;
}

DecayReport padic_decay_run(const SimConfig& cfg, const PrimeIdeal& P) {
    if (cfg.level < 2) throw DomainError("padic_decay_run: n_max must be >= 2");
    DecayReport rep;
    rep.cfg = cfg;
    rep.P = P.gen;
    rep.rows.resize(cfg.level);

    for (int n = 1; n <= cfg.level; ++n) {
        auto R = QuotRing::make(P, n);
        DecayRow row;
        row.level = n;
        const BigInt group = gl_ring_order(cfg.r, R);
        if (group <= BigInt(cfg.exact_bound)) {
            const GroupCount gc = count_primitive_fixers(cfg.r, R);
            if (BigInt(gc.group) != group)
                throw Error("padic_decay_run: enumerated group order mismatch");
            row.exact = true;
            row.density = BigRat(gc.fixing, gc.group);
            row.hits = gc.fixing;
            row.samples = gc.group;
            row.freq = static_cast<double>(row.density);
            row.stderr_ = 0;
        } else {
            row.exact = false;
            std::vector<std::uint64_t> tallies(std::max(1, cfg.workers), 0);
            parallel_for(cfg.trials, cfg.workers, [&](std::uint64_t i) {
                Rng rng(child_seed(cfg.seed, static_cast<std::uint64_t>(n), i));
                const RingMat M = sample_gl(cfg.r, R, rng);
                if (fixes_primitive(M))
                    ++tallies[i % static_cast<std::uint64_t>(tallies.size())];
            });
            for (auto t : tallies) row.hits += t;
            row.samples = cfg.trials;
            row.freq = static_cast<double>(row.hits) / static_cast<double>(row.samples);
            row.stderr_ = binom_stderr(row.freq, row.samples);
        }
        rep.rows[n - 1] = std::move(row);
    }

    for (std::size_t i = 1; i < rep.rows.size(); ++i) {
        const auto& a = rep.rows[i - 1];
        const auto& b = rep.rows[i];
        if (a.exact && b.exact) {
            if (b.density > a.density) rep.non_increasing = false;
        } else {
            const double band =
                3.0 * std::sqrt(a.stderr_ * a.stderr_ + b.stderr_ * b.stderr_);
            if (b.freq > a.freq + band) rep.non_increasing = false;
        }
    }
    const auto& first = rep.rows.front();
    const auto& last = rep.rows.back();
    if (first.exact && last.exact)
        rep.final_below_first = last.density < first.density;
    else
        rep.final_below_first = last.freq < first.freq;
    return rep;
}

TranslationReport translation_check(const SimConfig& cfg, const PrimeIdeal& P,
                                    int level, const std::vector<APoly>& units) {
    TranslationReport rep;
    rep.cfg = cfg;
    rep.P = P.gen;
    rep.level = level;
    auto R = QuotRing::make(P, level);

    std::vector<APoly> us = units;
    for (const auto& u : us)
        if (!R->is_unit(u)) throw NonUnitError("translation_check: u must be a unit");
    if (us.empty()) {
        const std::uint64_t size = R->size();
        if (size > 1'000'000)
            throw SizeBoundError("translation_check: too many units to enumerate");
        for (std::uint64_t i = 0; i < size; ++i) {
            APoly cand = R->elem(i);
            if (R->is_unit(cand)) us.push_back(std::move(cand));
        }
    }

    const BigInt group = gl_ring_order(cfg.r, R);
    rep.exact = group <= BigInt(cfg.exact_bound);

    if (rep.exact && cfg.r == 1) {
        // 1x1 fast path: the predicate "u is an eigenvalue with a primitive
        // eigenvector" reduces to g = u in A/P^n (see has_primitive_eigenvector)
        std::vector<APoly> gs;
        const std::uint64_t size = R->size();
        for (std::uint64_t i = 0; i < size; ++i) {
            APoly cand = R->elem(i);
            if (R->is_unit(cand)) gs.push_back(std::move(cand));
        }
        std::uint64_t count_1 = 0;
        for (const auto& g : gs)
            if (g == R->one()) ++count_1;
        const bool small = gs.size() <= 4096;
        for (const auto& u : us) {
            TranslationRow row;
            row.u = R->reduce(u);
            for (const auto& g : gs)
                if (g == row.u) ++row.count_u;
            row.count_1 = count_1;
            row.equal = row.count_u == row.count_1;
            if (!row.equal) rep.all_equal = false;
            rep.rows.push_back(std::move(row));
        }
        // bijection spot check g -> u g (exhaustive when small)
        const std::size_t limit = small ? gs.size() : 64;
        for (const auto& u : us) {
            const APoly ur = R->reduce(u);
            for (std::size_t i = 0; i < limit; ++i) {
                const bool lhs = R->mul(ur, gs[i]) == ur; // predicate(u g, u)
                const bool rhs = gs[i] == R->one();       // predicate(g, 1)
                if (lhs != rhs) rep.bijection_ok = false;
            }
        }
        return rep;
    }

    if (rep.exact) {
        const std::uint64_t space = checked_pow(R->size(), cfg.r * cfg.r,
                                                "translation_check");
        std::vector<RingMat> gl;
        for (std::uint64_t code = 0; code < space; ++code) {
            RingMat M = RingMat::make(R, decode_matrix(R, cfg.r, code));
            if (M.invertible) gl.push_back(std::move(M));
        }
        std::uint64_t count_1 = 0;
        for (const auto& g : gl)
            if (fixes_primitive(g)) ++count_1;
        for (const auto& u : us) {
            TranslationRow row;
            row.u = R->reduce(u);
            row.count_1 = count_1;
            const RingMat uI = rm_scalar(R, cfg.r, row.u);
            for (const auto& g : gl) {
                if (has_primitive_eigenvector(g, row.u)) ++row.count_u;
                // bijection: predicate(u g, u) must equal predicate(g, 1)
                if (has_primitive_eigenvector(rm_mul(uI, g), row.u) !=
                    fixes_primitive(g))
                    rep.bijection_ok = false;
            }
            row.equal = row.count_u == row.count_1;
            if (!row.equal) rep.all_equal = false;
            rep.rows.push_back(std::move(row));
        }
        return rep;
    }

    // sampled comparison
    for (std::size_t ui = 0; ui < us.size(); ++ui) {
        TranslationRow row;
        row.u = R->reduce(us[ui]);
        std::uint64_t hits_u = 0, hits_1 = 0;
        for (std::uint64_t t = 0; t < cfg.trials; ++t) {
            Rng rng_u(child_seed(cfg.seed, 2 * ui, t));
            Rng rng_1(child_seed(cfg.seed, 2 * ui + 1, t));
            if (has_primitive_eigenvector(sample_gl(cfg.r, R, rng_u), row.u)) ++hits_u;
            if (fixes_primitive(sample_gl(cfg.r, R, rng_1))) ++hits_1;
        }
        row.count_u = hits_u;
        row.count_1 = hits_1;
        row.freq_u = static_cast<double>(hits_u) / static_cast<double>(cfg.trials);
        row.freq_1 = static_cast<double>(hits_1) / static_cast<double>(cfg.trials);
        row.stderr_ = std::sqrt(binom_stderr(row.freq_u, cfg.trials) *
                                    binom_stderr(row.freq_u, cfg.trials) +
                                binom_stderr(row.freq_1, cfg.trials) *
                                    binom_stderr(row.freq_1, cfg.trials));
        row.equal = std::abs(row.freq_u - row.freq_1) <= 4 * row.stderr_;
        if (!row.equal) rep.sampled_ok = false;
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

ScanReport chebotarev_scan(const SimConfig& cfg, const DrinfeldModule& m,
                           const PrimeIdeal& P) {
    if (m.is_finite()) throw DomainError("chebotarev_scan: generic module required");
    if (cfg.e < 1 || cfg.e > 16) throw DomainError("chebotarev_scan: e in 1..16");
    const auto& F = m.fq();
    const APoly& g_r = m.generic_coeffs().back();
    if (mod(g_r, P.gen).zero())
        throw DomainError("chebotarev_scan: P must be coprime to bad reduction");

    std::vector<APoly> places;
    for (int d = 1; d <= cfg.max_degree; ++d)
        for (auto& ell : monic_irreducibles(F, d)) {
            if (ell == P.gen) continue;
            if (mod(g_r, ell).zero()) continue; // bad reduction
            places.push_back(std::move(ell));
        }
    if (places.empty())
        throw DomainError("chebotarev_scan: no good places available");

    ScanReport rep;
    rep.cfg = cfg;
    rep.P = P.gen;
    rep.module_spec = m.spec_string();
    rep.places = static_cast<int>(places.size());

    // Frobenius once per place
    std::vector<FrobMatrix> frobs(places.size(),
                                  FrobMatrix{RingMat{}, APoly{}, APoly{}, 0, 0, ""});
    parallel_for(places.size(), cfg.workers, [&](std::uint64_t i) {
        frobs[i] = frobenius_on_torsion(m, P, places[i]);
    });

    if (cfg.e == 1) {
        rep.samples = places.size();
        for (std::size_t i = 0; i < places.size(); ++i) {
            const bool hit = fixes_nonzero_torsion(frobs[i].mat);
            rep.per_place.push_back({places[i], frobs[i].splitting_deg, hit});
            if (hit) ++rep.hits;
        }
        rep.predicted = s_density(cfg.r, P.norm());
    } else {
        // disjoint round-robin strata; one place per stratum per trial
        std::vector<std::vector<std::size_t>> strata(cfg.e);
        for (std::size_t i = 0; i < places.size(); ++i)
            strata[i % static_cast<std::size_t>(cfg.e)].push_back(i);
        for (const auto& st : strata)
            if (st.empty())
                throw DomainError("chebotarev_scan: a stratum is empty; lower e");
        rep.samples = cfg.trials;
        for (std::uint64_t t = 0; t < cfg.trials; ++t) {
            std::vector<RingMat> tuple;
            for (int j = 0; j < cfg.e; ++j) {
                Rng rng(child_seed(cfg.seed, static_cast<std::uint64_t>(j), t));
                const auto& st = strata[j];
                tuple.push_back(frobs[st[rng.below(st.size())]].mat);
            }
            if (fixes_nonzero_torsion(tuple)) ++rep.hits;
        }
        rep.predicted = s_e_density(cfg.r, P.norm(), cfg.e);
    }
    rep.freq = static_cast<double>(rep.hits) / static_cast<double>(rep.samples);
    const double pd = static_cast<double>(rep.predicted);
    rep.stderr_ = binom_stderr(pd, rep.samples);
    rep.sigma_distance = rep.stderr_ > 0 ? std::abs(rep.freq - pd) / rep.stderr_ : 0.0;
    rep.flagged = rep.sigma_distance > 5.0;
    if (rep.flagged)
        rep.note = "possible non-surjective image or endomorphism; " + rep.note;
    return rep;
}

} // namespace drinlab
