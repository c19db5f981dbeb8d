#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <set>

#include "drinlab/counting.hpp"

using namespace drinlab;

namespace {

// Library-independent F_2 helpers on bit-row matrices for oracles.
int bit_rank(std::vector<unsigned> rows, int cols) {
    int rank = 0;
    for (int c = 0; c < cols; ++c) {
        int pivot = -1;
        for (std::size_t i = rank; i < rows.size(); ++i)
            if (rows[i] & (1u << c)) { pivot = static_cast<int>(i); break; }
        if (pivot < 0) continue;
        std::swap(rows[rank], rows[pivot]);
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (static_cast<int>(i) != rank && (rows[i] & (1u << c)))
                rows[i] ^= rows[rank];
        ++rank;
    }
    return rank;
}

std::vector<unsigned> unpack3x3(unsigned code) {
    return {code & 7u, (code >> 3) & 7u, (code >> 6) & 7u};
}

} // namespace

TEST_CASE("gl_order: paper product values and brute-force 168 at (3,2)") {
    CHECK(gl_order(2, 2) == 6);   // (4-1)(4-2)
    CHECK(gl_order(1, 5) == 4);   // q - 1
    CHECK(gl_order(1, 9) == 8);
    CHECK(gl_order(2, 3) == 48);
    // oracle: enumerate all 512 3x3 matrices over F_2
    int count = 0;
    for (unsigned code = 0; code < 512; ++code)
        if (bit_rank(unpack3x3(code), 3) == 3) ++count;
    CHECK(gl_order(3, 2) == count);
    CHECK(count == 168);
    CHECK_THROWS_AS(gl_order(2, 6), DomainError);
}

TEST_CASE("gaussian_t: examples, symmetry, row-space enumeration oracle at (3,2,2)") {
    CHECK(gaussian_t(2, 2, 1) == 3);
    CHECK(gaussian_t(3, 2, 1) == 7);
    for (int r = 1; r <= 5; ++r)
        for (std::uint64_t q : {2, 3, 4, 5})
            for (int j = 0; j <= r; ++j)
                CHECK(gaussian_t(r, q, j) == gaussian_t(r, q, r - j));

    // oracle: distinct row spaces of rank-2 2x3 matrices over F_2
    std::set<std::set<unsigned>> spaces;
    for (unsigned r0 = 0; r0 < 8; ++r0)
        for (unsigned r1 = 0; r1 < 8; ++r1) {
            if (bit_rank({r0, r1}, 3) != 2) continue;
            spaces.insert({r0, r1, r0 ^ r1}); // nonzero vectors of the span
        }
    CHECK(gaussian_t(3, 2, 2) == static_cast<int>(spaces.size()));
    CHECK(spaces.size() == 7);
}

TEST_CASE("stab_count: examples and enumeration oracle at (3,2,1)") {
    CHECK(stab_count(2, 2, 1) == 2); // (4-2)
    CHECK(stab_count(2, 2, 2) == 1); // empty product
    CHECK(stab_count(3, 2, 1) == 24);
    // oracle: invertible 3x3 over F_2 fixing e1 = (1,0,0); M e1 is the first
    // column, encoded as bit 0 of each row
    int count = 0;
    for (unsigned code = 0; code < 512; ++code) {
        const auto rows = unpack3x3(code);
        if ((rows[0] & 1u) != 1u || (rows[1] & 1u) != 0u || (rows[2] & 1u) != 0u)
            continue;
        if (bit_rank(rows, 3) == 3) ++count;
    }
    CHECK(count == 24);
    CHECK_THROWS_AS(stab_count(2, 2, 0), DomainError);
}

TEST_CASE("fixed-space profiles: (1,q), (2,2), b_r = 1, both methods agree") {
    for (std::uint64_t q : {2, 3, 4, 5, 7, 8, 9}) {
        auto prof = fixed_space_profile(1, q, ProfileMethod::lattice_formula);
        REQUIRE(prof.b.size() == 2);
        CHECK(prof.b[0] == BigInt(q) - 2); // S(G, V) = {1} at r = 1
        CHECK(prof.b[1] == 1);
    }
    auto p22 = fixed_space_profile(2, 2, ProfileMethod::enumeration);
    CHECK(p22.b == std::vector<BigInt>{2, 3, 1});

    // agreement wherever enumeration runs
    std::vector<std::pair<int, std::uint64_t>> cases = {
        {1, 2}, {1, 3}, {1, 4}, {1, 5}, {1, 7}, {1, 8}, {1, 9},
        {2, 2}, {2, 3}, {2, 4}, {2, 5}, {2, 7},
        {3, 2}, {3, 3}, {4, 2}};
    for (auto [r, q] : cases) {
        auto en = fixed_space_profile(r, q, ProfileMethod::enumeration, 1, 2);
        auto la = fixed_space_profile(r, q, ProfileMethod::lattice_formula);
        CHECK(en.b == la.b);
        CHECK(en.b[r] == 1); // only the identity fixes everything
        BigInt sum = 0;
        for (const auto& v : en.b) sum += v;
        CHECK(sum == gl_order(r, q));
    }
}

TEST_CASE("s_count and density: r=1 exact, (2,2) = 4/6, direct det pass at (3,2)") {
    for (std::uint64_t q : {2, 3, 5, 9}) {
        auto rep = s_count_and_density(1, q);
        CHECK(rep.s_count == 1);
        CHECK(rep.density == BigRat(1, BigInt(q) - 1));
    }
    auto rep22 = s_count_and_density(2, 2, ProfileMethod::enumeration);
    CHECK(rep22.s_count == 4);
    CHECK(rep22.density == BigRat(2, 3));

    auto rep32 = s_count_and_density(3, 2);
    CHECK(rep32.s_count == s_count_direct(3, 2));
    CHECK(s_count_and_density(3, 3).s_count == s_count_direct(3, 3));
}

TEST_CASE("identity residual is exactly zero") {
    // (2,2): 3*2 - (1*3 + 3*1) = 0 from the profile (2,3,1)
    CHECK(verify_identity(2, 2) == 0);
    for (std::uint64_t q : {2, 3, 4, 5, 7, 9}) CHECK(verify_identity(1, q) == 0);
    CHECK(verify_identity(3, 2) == 0);
    CHECK(verify_identity(3, 3) == 0);
    CHECK(verify_identity(4, 2, ProfileMethod::enumeration) == 0);
}

TEST_CASE("bounds: explicit upper bound and bounded normalized ratios at r=2") {
    auto rep = verify_bounds(2, {2, 3, 4, 5, 7});
    CHECK(rep.upper_ok_all);
    for (const auto& row : rep.rows) {
        // s_count <= (q+1) * (q^2 - q) exactly
        CHECK(row.s_count <= BigInt(row.q + 1) * (BigInt(row.q) * row.q - row.q));
    }
    CHECK(rep.max_ratio - rep.min_ratio < 1);
    // r=1: s_count = 1 <= 1 * q^0
    auto rep1 = verify_bounds(1, {2, 3, 4, 5, 7, 8, 9});
    CHECK(rep1.upper_ok_all);
    for (const auto& row : rep1.rows) CHECK(row.s_count == 1);
}

TEST_CASE("e-tuple density: brute-force pair oracle over GL(2,2)") {
    // enumerate GL(2,2) as bit matrices, count pairs with a common fixed
    // nonzero vector
    std::vector<std::array<unsigned, 4>> gl;
    for (unsigned a = 0; a < 2; ++a)
        for (unsigned b = 0; b < 2; ++b)
            for (unsigned c = 0; c < 2; ++c)
                for (unsigned d = 0; d < 2; ++d)
                    if ((a & d) ^ (b & c)) gl.push_back({a, b, c, d});
    REQUIRE(gl.size() == 6);
    auto fixes = [](const std::array<unsigned, 4>& m, unsigned v) {
        const unsigned x = v & 1, y = (v >> 1) & 1;
        return ((m[0] * x) ^ (m[1] * y)) == x && ((m[2] * x) ^ (m[3] * y)) == y;
    };
    int pairs = 0;
    for (const auto& g : gl)
        for (const auto& h : gl) {
            bool common = false;
            for (unsigned v = 1; v < 4; ++v)
                if (fixes(g, v) && fixes(h, v)) { common = true; break; }
            if (common) ++pairs;
        }
    CHECK(s_e_density(2, 2, 2) == BigRat(pairs, 36));
    CHECK(pairs == 10);
    CHECK(s_e_density(2, 2, 1) == BigRat(2, 3));
    // r=1: S_e is the all-ones tuple only
    CHECK(s_e_density(1, 5, 3) == BigRat(1, 64));
}

TEST_CASE("enumeration guard rails") {
    CHECK_THROWS_AS(fixed_space_profile(9, 2, ProfileMethod::enumeration), SizeBoundError);
    CHECK_THROWS_AS(fixed_space_profile(2, 32, ProfileMethod::enumeration), SizeBoundError);
    CHECK_THROWS_AS(s_count_and_density(2, 6), DomainError);
    CHECK(prime_power(256));
    CHECK(!prime_power(12));
    int p = 0, s = 0;
    REQUIRE(prime_power(1024, &p, &s));
    CHECK(p == 2);
    CHECK(s == 10);
}

TEST_CASE("lattice path works for residue-field sizes beyond the table bound") {
    // N(P) = 256 appears in degree-8 place scans; only the formula path runs
    auto rep = s_count_and_density(2, 256);
    CHECK(rep.identity_residual == 0);
    CHECK(rep.bound_ok);
    CHECK(rep.density == BigRat(16776704, BigInt(65535) * 65280));
    CHECK(s_density(2, 6561) > 0);
    CHECK(rat_str(BigRat(4, 6)) == "2/3");
}
