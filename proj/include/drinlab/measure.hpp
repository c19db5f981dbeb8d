#pragma once

#include <optional>
#include <string>
#include <vector>

#include "drinlab/counting.hpp"
#include "drinlab/torsion.hpp"

namespace drinlab {

/// Shared experiment configuration.  Identical configs (seed included)
/// reproduce identical reports; the worker count never changes results
/// because child RNG streams are derived per work item, not per worker.
struct SimConfig {
    int r = 1;
    int q = 2;
    int e = 1;
    int max_degree = 1;
    int level = 1;
    std::uint64_t trials = 1;
    std::uint64_t seed = 0;
    std::uint64_t exact_bound = 1'000'000; // enumerate groups up to this order
    int workers = 1;
    std::string target = "matrix-group"; // or "drinfeld-scan"
    std::string module_spec;

    std::string describe() const;
};

/// card GL(r, A/P^n) = card GL(r, A/P) * N(P)^(r^2 (n-1)).
BigInt gl_ring_order(int r, const QuotRingPtr& R);

/// Uniform sample from GL(r, A/P^n): rejection over A/P until invertible,
/// then a uniform multiple-of-P lift of every entry (uniform on each fiber).
RingMat sample_gl(int r, const QuotRingPtr& R, Rng& rng);

/// True iff M fixes a primitive vector (one outside P*(A/P^n)^r), decided by
/// the Smith form over F_q[T] of M - 1: some invariant factor divisible by
/// P^n.  At level 1 this coincides with fixes_nonzero_torsion.
bool fixes_primitive(const RingMat& M);

/// "u is an eigenvalue of M with a primitive eigenvector"; u must be a unit.
bool has_primitive_eigenvector(const RingMat& M, const APoly& u);

/// Exhaustive pass over GL(r, A/P^n).
struct GroupCount {
    std::uint64_t group = 0;
    std::uint64_t fixing = 0;
};
GroupCount count_primitive_fixers(int r, const QuotRingPtr& R);

// ---------------------------------------------------------------- reports

struct PrimeRow {
    APoly P;
    int degree = 0;
    std::uint64_t norm = 0;
    BigRat density;        // exact density of S(GL(r, A/P), (A/P)^r)
    BigRat expected;       // density^e, the contract column
    BigRat expected_exact; // exact joint density of S_e (= expected when e=1 or r=1)
    std::uint64_t hits = 0;
    std::uint64_t trials = 0;
    double freq = 0;
    double stderr_ = 0;
    BigRat cum_expected;
    BigRat cum_expected_exact;
    std::uint64_t cum_hits = 0;
};

struct HitReport {
    SimConfig cfg;
    std::vector<PrimeRow> rows;
    BigRat total_expected;
    BigRat total_expected_exact;
    std::uint64_t total_hits = 0;
    double mean_hits_per_trial = 0;
    bool within_3_sigma = true; // observed mean vs the exact joint expectation
};

/// Matrix-group Borel-Cantelli experiment: for each prime P of degree <=
/// max_degree draw e independent uniform elements of GL(r, A/P) per trial and
/// record whether they share a fixed nonzero vector.  Sample streams are
/// keyed by (seed, prime, trial, position), so runs with different e are
/// coupled through their first positions.
HitReport borel_cantelli_run(const SimConfig& cfg);

struct IndependenceReport {
    int r = 0;
    APoly P1, P2;
    BigInt n1, s1, n2, s2; // enumerated factor-group data
    BigRat joint;          // fraction of the product group with both components fixing
    BigRat product;        // product of the two densities
    bool exact_equal = false;
    bool formula_match = false;   // enumerated densities match the lattice formula
    bool crt_card_checked = false;
    bool crt_card_ok = true;      // card GL(r, A/P1P2) = n1*n2 by ring enumeration
};

/// Exact product-group verdict for two distinct primes; the fraction over
/// GL x GL is evaluated by enumerating both factors (the double sum over
/// pairs factors exactly), and the CRT content is cross-checked by counting
/// GL(r, A/(P1 P2)) elementwise whenever that ring is small enough.
IndependenceReport independence_check(int r, const PrimeIdeal& P1,
                                      const PrimeIdeal& P2);

struct DecayRow {
    int level = 0;
    bool exact = false;
    BigRat density;        // exact rows
    std::uint64_t hits = 0;
    std::uint64_t samples = 0;
    double freq = 0;       // set for both modes (exact rows: exact value)
    double stderr_ = 0;
};

struct DecayReport {
    SimConfig cfg;
    APoly P;
    std::vector<DecayRow> rows; // levels 1..n
    bool non_increasing = true;  // within 3 combined standard errors
    bool final_below_first = true;
};

/// Density of primitive-fixing matrices in GL(r, A/P^n) for n = 1..level;
/// exact enumeration when the group order is <= cfg.exact_bound, Monte Carlo
/// with cfg.trials samples per level otherwise.
DecayReport padic_decay_run(const SimConfig& cfg, const PrimeIdeal& P);

struct TranslationRow {
    APoly u;
    std::uint64_t count_u = 0; // matrices with eigenvalue u on a primitive vector
    std::uint64_t count_1 = 0;
    bool equal = false;
    double freq_u = 0, freq_1 = 0, stderr_ = 0; // sampled mode
};

struct TranslationReport {
    SimConfig cfg;
    APoly P;
    int level = 1;
    bool exact = false;
    std::vector<TranslationRow> rows;
    bool all_equal = true;        // exact mode: strict count equality
    bool bijection_ok = true;     // g -> u g maps one predicate set onto the other
    bool sampled_ok = true;       // sampled mode: |f_u - f_1| <= 4 sigma
};

/// Exact count equality of {g : u is an eigenvalue with primitive
/// eigenvector} against the u = 1 set, for the given units (all units when
/// the list is empty); enumerated exactly when the group is small enough,
/// sampled otherwise.
TranslationReport translation_check(const SimConfig& cfg, const PrimeIdeal& P,
                                    int level, const std::vector<APoly>& units);

struct ScanPlace {
    APoly ell;
    int splitting_degree = 0;
    bool hit = false;
};

struct ScanReport {
    SimConfig cfg;
    APoly P;
    std::string module_spec;
    int places = 0;            // good places used
    std::uint64_t samples = 0; // = places for e = 1, trials for e >= 2
    std::uint64_t hits = 0;
    double freq = 0;
    double stderr_ = 0;
    BigRat predicted;          // exact density from the counting module
    double sigma_distance = 0;
    bool flagged = false;      // beyond 5 sigma: possible non-surjective image
    std::vector<ScanPlace> per_place; // e = 1 only
    std::string note =
        "Chebotarev sampling of conjugacy classes via reduction; "
        "assumed generic endomorphisms";
};

/// Frobenius statistics over good places of degree <= cfg.max_degree: e = 1
/// walks every place; e >= 2 draws one place per round-robin stratum per
/// trial and tests the joint fixed space.  The prediction is the exact
/// density under the full-image assumption; deviations beyond 5 sigma are
/// flagged rather than failed.
ScanReport chebotarev_scan(const SimConfig& cfg, const DrinfeldModule& m,
                           const PrimeIdeal& P);

} // namespace drinlab
