#pragma once

#include <cstdint>
#include <vector>

#include "drinlab/fq.hpp"

namespace drinlab {

/// Dense row-major matrix.  Arithmetic lives in free functions that take the
/// coefficient ring explicitly; the container itself is ring-agnostic.
template <class T>
struct Mat {
    int rows = 0, cols = 0;
    std::vector<T> a;

    Mat() = default;
    Mat(int r, int c, T init = T{}) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, init) {}

    T& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
    const T& at(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }

    bool operator==(const Mat& o) const {
        return rows == o.rows && cols == o.cols && a == o.a;
    }
};

using MatFq = Mat<std::uint8_t>;
using VecFq = std::vector<std::uint8_t>;

MatFq fq_identity(int n);
MatFq fq_add(const Fq& F, const MatFq& A, const MatFq& B);
MatFq fq_sub(const Fq& F, const MatFq& A, const MatFq& B);
MatFq fq_mul(const Fq& F, const MatFq& A, const MatFq& B);
MatFq fq_pow(const Fq& F, MatFq A, std::uint64_t e);
VecFq fq_apply(const Fq& F, const MatFq& A, const VecFq& v);

int fq_rank(const Fq& F, MatFq M);
std::uint8_t fq_det(const Fq& F, MatFq M);
bool fq_invertible(const Fq& F, const MatFq& M);

/// Basis of the right kernel {v : Mv = 0}, as column vectors.  The basis is
/// deterministic (reduced echelon form with free columns in ascending order).
std::vector<VecFq> fq_kernel_basis(const Fq& F, MatFq M);

/// Solve A x = b.  Returns false when inconsistent; when the solution is not
/// unique the free variables are set to zero.
bool fq_solve(const Fq& F, MatFq A, VecFq b, VecFq& x);

MatFq fq_from_columns(int n, const std::vector<VecFq>& cols);

} // namespace drinlab
