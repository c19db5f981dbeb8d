#pragma once

#include <vector>

#include "drinlab/matfq.hpp"
#include "drinlab/quot.hpp"

namespace drinlab {

/// Square matrix over A/P^n.  Entries are reduced residues; invertibility is
/// decided at construction by the rank of the reduction mod P over the
/// residue field (a matrix over a local ring is invertible iff its residue
/// matrix is).
struct RingMat {
    QuotRingPtr R;
    Mat<APoly> m;
    bool invertible = false;

    static RingMat make(QuotRingPtr R, Mat<APoly> entries);
    int size() const { return m.rows; }
};

RingMat rm_identity(const QuotRingPtr& R, int n);
RingMat rm_scalar(const QuotRingPtr& R, int n, const APoly& c);
RingMat rm_add(const RingMat& A, const RingMat& B);
RingMat rm_sub(const RingMat& A, const RingMat& B);
RingMat rm_mul(const RingMat& A, const RingMat& B);
bool rm_equal(const RingMat& A, const RingMat& B);

/// Determinant by cofactor expansion (sizes <= 6).
APoly rm_det(const RingMat& A);

/// Reduce the entries mod P (level-1 image of the matrix).
RingMat rm_level1(const RingMat& A);

/// Rank of a (not necessarily square) entry matrix over the residue field
/// A/P; `ring` may have any level, entries are reduced mod P first.
int quot_rank_mod_p(const QuotRingPtr& ring, const Mat<APoly>& m);

/// Kernel basis over the residue field A/P (level-1 semantics).
std::vector<std::vector<APoly>> quot_kernel_mod_p(const QuotRingPtr& ring,
                                                  const Mat<APoly>& m);

/// Smith normal form over the PID F_q[T]: returns the diagonal as monic
/// polynomials (or zero), ordered so that each divides the next with zeros
/// last.  Row/column transforms are unimodular over F_q[T], hence also over
/// every quotient A/P^n; the diagonal therefore determines kernels of the
/// reduction of M modulo any P^n.
std::vector<APoly> snf_invariant_factors(const FqPtr& F, Mat<APoly> M);

} // namespace drinlab
