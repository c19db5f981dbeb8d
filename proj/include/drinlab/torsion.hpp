#pragma once

#include <string>
#include <vector>

#include "drinlab/ringmat.hpp"
#include "drinlab/twisted.hpp"

namespace drinlab {

/// The F_q-linear map x -> f(x) on a finite field viewed as an F_q-space;
/// column j holds the coordinates of f(e_j).
struct QLinearMap {
    FieldPtr K;
    MatFq m;
};

/// f's coefficients are embedded into K, which must extend f's field.
QLinearMap qlinear_matrix(const TwF& f, const FieldPtr& K);

/// The a-torsion submodule of a finite-mode module: the kernel of phi_a on
/// the module's own field, with its A/(a)-module structure.
struct TorsionModule {
    APoly a;
    FieldPtr E;
    int rank = 0;                          // rank of the parent module
    int fq_dim = 0;                        // dim over F_q, <= rank * deg a
    std::vector<Field::Vec> fq_basis;      // kernel basis, flat coordinates
    std::vector<Field::Vec> module_basis;  // greedy A/(a)-generator points
    std::vector<APoly> invariant_factors;  // monic, divisibility chain
    MatFq t_action;                        // action of T in kernel coordinates
};

TorsionModule torsion_submodule(const DrinfeldModule& m, const APoly& a);

/// Minimal d >= 1 such that the P-torsion over the degree-d extension has
/// full F_q-dimension rank * deg P.  The search increments d by one and is
/// capped by card GL(rank, A/P); exceeding the cap signals a bug.
int splitting_degree(const DrinfeldModule& m, const PrimeIdeal& P);

/// Same search for an arbitrary nonzero ideal generator (used for composite
/// torsion); a must be coprime to the characteristic place.
int rationality_degree(const DrinfeldModule& m, const APoly& a);

/// Frobenius of the place ell acting on the P-torsion of the reduction:
/// reduce the generic module at ell, extend to the splitting degree, take the
/// q^(deg ell)-power map in the greedy A/P-basis.
struct FrobMatrix {
    RingMat mat;          // over A/P, invertible
    APoly P, ell;
    int splitting_deg = 0;
    int field_degree = 0; // [E : F_q]
    std::string module_spec;
};

FrobMatrix frobenius_on_torsion(const DrinfeldModule& generic, const PrimeIdeal& P,
                                const APoly& ell);

/// det(M - 1) = 0 over the residue field A/P, i.e. "1 is an eigenvalue".
/// Level n > 1 matrices are rejected (the primitive-vector test covers them).
bool fixes_nonzero_torsion(const RingMat& M);

/// Joint version for e-tuples: the common kernel of all M_i - 1 is nonzero.
bool fixes_nonzero_torsion(const std::vector<RingMat>& tuple);

} // namespace drinlab
