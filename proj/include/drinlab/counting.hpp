#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "drinlab/errors.hpp"

namespace drinlab {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

/// Factor q = p^s; returns false when q is not a prime power.
bool prime_power(std::uint64_t q, int* p_out = nullptr, int* s_out = nullptr);

BigInt big_pow(std::uint64_t base, int e);

/// card GL(r, F_q) = (q^r - 1)(q^r - q) ... (q^r - q^(r-1)).
BigInt gl_order(int r, std::uint64_t q);

/// Number of k-dimensional subspaces of F_q^n.
BigInt gaussian_binomial(int n, int k, std::uint64_t q);

/// t_j of the subspace ladder: gaussian_binomial(r, j, q).
BigInt gaussian_t(int r, std::uint64_t q, int j);

/// Cardinality of the pointwise stabilizer of a j-dimensional subspace,
/// (q^r - q^j)(q^r - q^(j+1)) ... (q^r - q^(r-1)); j = r gives 1.
BigInt stab_count(int r, std::uint64_t q, int j);

enum class ProfileMethod { enumeration, lattice_formula };

/// b_j = number of e-tuples of GL(r, F_q) whose common fixed space has
/// dimension exactly j (e = 1 recovers single elements).
struct FixedSpaceProfile {
    int r = 0;
    std::uint64_t q = 0;
    int e = 1;
    ProfileMethod method = ProfileMethod::lattice_formula;
    std::vector<BigInt> b; // indices 0..r
    BigInt tuple_count;    // card GL(r, F_q)^e
};

/// method == enumeration walks all q^(r*r) matrices (e must be 1, q <= 16 a
/// prime power, q^(r*r) <= 1e8); lattice_formula inverts the subspace-lattice
/// relation sum over the stabilizer counts and works for any prime power.
FixedSpaceProfile fixed_space_profile(int r, std::uint64_t q, ProfileMethod method,
                                      int e = 1, int workers = 1);

struct CountReport {
    int r = 0;
    std::uint64_t q = 0;
    ProfileMethod method = ProfileMethod::lattice_formula;
    BigInt gl;                // card GL(r, F_q)
    BigInt s_count;           // card S(GL(r, F_q), F_q^r)
    BigRat density;           // s_count / gl
    BigRat norm_ratio;        // s_count / q^(r^2 - 1)
    BigInt upper_bound;       // t_1 * stab_count(r, q, 1)
    BigInt identity_residual; // contract: 0
    bool bound_ok = false;    // s_count <= upper_bound
};

CountReport s_count_and_density(int r, std::uint64_t q,
                                ProfileMethod method = ProfileMethod::lattice_formula,
                                int workers = 1);

/// t_1 * stab_count(r,q,1) - sum_j ((q^j - 1)/(q - 1)) b_j; contract: zero.
BigInt verify_identity(int r, std::uint64_t q,
                       ProfileMethod method = ProfileMethod::lattice_formula);

struct BoundReport {
    int r = 0;
    std::vector<CountReport> rows;
    BigRat min_ratio, max_ratio; // empirical witnesses for c_1, c_2
    bool upper_ok_all = false;
};

BoundReport verify_bounds(int r, const std::vector<std::uint64_t>& q_list,
                          ProfileMethod method = ProfileMethod::lattice_formula);

/// Second independent enumeration pass: card {g in GL : det(g - 1) = 0}.
BigInt s_count_direct(int r, std::uint64_t q);

/// Exact density of S(GL(r, F_q), F_q^r), and of the e-tuple version
/// S_e (common fixed nonzero vector), from the lattice formula.
BigRat s_density(int r, std::uint64_t q);
BigRat s_e_density(int r, std::uint64_t q, int e);

std::string rat_str(const BigRat& x); // "num/den", reduced

} // namespace drinlab
