#include "drinlab/matfq.hpp"

#include "drinlab/errors.hpp"

namespace drinlab {
namespace {

void check_dims(const MatFq& A, const MatFq& B, bool product) {
    if (product ? (A.cols != B.rows) : (A.rows != B.rows || A.cols != B.cols))
        throw MismatchError("MatFq: dimension mismatch");
}

// Row echelon reduction; returns pivot columns.  When `reduced` is set the
// pivots are scaled to one and cleared above as well.
std::vector<int> echelon(const Fq& F, MatFq& M, bool reduced) {
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < M.cols && row < M.rows; ++col) {
        int pr = -1;
        for (int i = row; i < M.rows; ++i)
            if (M.at(i, col)) { pr = i; break; }
        if (pr < 0) continue;
        if (pr != row)
            for (int j = 0; j < M.cols; ++j) std::swap(M.at(pr, j), M.at(row, j));
        const std::uint8_t inv = F.inv(M.at(row, col));
        for (int j = 0; j < M.cols; ++j) M.at(row, j) = F.mul(M.at(row, j), inv);
        const int start = reduced ? 0 : row + 1;
        for (int i = start; i < M.rows; ++i) {
            if (i == row) continue;
            const std::uint8_t f = M.at(i, col);
            if (!f) continue;
            for (int j = 0; j < M.cols; ++j)
                M.at(i, j) = F.sub(M.at(i, j), F.mul(f, M.at(row, j)));
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

} // namespace

MatFq fq_identity(int n) {
    MatFq I(n, n, 0);
    for (int i = 0; i < n; ++i) I.at(i, i) = 1;
    return I;
}

MatFq fq_add(const Fq& F, const MatFq& A, const MatFq& B) {
    check_dims(A, B, false);
    MatFq R = A;
    for (std::size_t i = 0; i < R.a.size(); ++i) R.a[i] = F.add(R.a[i], B.a[i]);
    return R;
}

MatFq fq_sub(const Fq& F, const MatFq& A, const MatFq& B) {
    check_dims(A, B, false);
    MatFq R = A;
    for (std::size_t i = 0; i < R.a.size(); ++i) R.a[i] = F.sub(R.a[i], B.a[i]);
    return R;
}

MatFq fq_mul(const Fq& F, const MatFq& A, const MatFq& B) {
    check_dims(A, B, true);
    MatFq R(A.rows, B.cols, 0);
    for (int i = 0; i < A.rows; ++i)
        for (int k = 0; k < A.cols; ++k) {
            const std::uint8_t v = A.at(i, k);
            if (!v) continue;
            for (int j = 0; j < B.cols; ++j)
                R.at(i, j) = F.add(R.at(i, j), F.mul(v, B.at(k, j)));
        }
    return R;
}

MatFq fq_pow(const Fq& F, MatFq A, std::uint64_t e) {
    if (A.rows != A.cols) throw MismatchError("fq_pow: square matrix required");
    MatFq R = fq_identity(A.rows);
    while (e) {
        if (e & 1) R = fq_mul(F, R, A);
        A = fq_mul(F, A, A);
        e >>= 1;
    }
    return R;
}

VecFq fq_apply(const Fq& F, const MatFq& A, const VecFq& v) {
    if (static_cast<int>(v.size()) != A.cols) throw MismatchError("fq_apply: size mismatch");
    VecFq r(A.rows, 0);
    for (int i = 0; i < A.rows; ++i) {
        std::uint8_t acc = 0;
        for (int j = 0; j < A.cols; ++j)
            if (A.at(i, j) && v[j]) acc = F.add(acc, F.mul(A.at(i, j), v[j]));
        r[i] = acc;
    }
    return r;
}

int fq_rank(const Fq& F, MatFq M) {
    return static_cast<int>(echelon(F, M, false).size());
}

std::uint8_t fq_det(const Fq& F, MatFq M) {
    if (M.rows != M.cols) throw MismatchError("fq_det: square matrix required");
    std::uint8_t det = 1;
    for (int col = 0; col < M.cols; ++col) {
        int pr = -1;
        for (int i = col; i < M.rows; ++i)
            if (M.at(i, col)) { pr = i; break; }
        if (pr < 0) return 0;
        if (pr != col) {
            for (int j = 0; j < M.cols; ++j) std::swap(M.at(pr, j), M.at(col, j));
            det = F.neg(det);
        }
        det = F.mul(det, M.at(col, col));
        const std::uint8_t inv = F.inv(M.at(col, col));
        for (int i = col + 1; i < M.rows; ++i) {
            const std::uint8_t f = F.mul(M.at(i, col), inv);
            if (!f) continue;
            for (int j = col; j < M.cols; ++j)
                M.at(i, j) = F.sub(M.at(i, j), F.mul(f, M.at(col, j)));
        }
    }
    return det;
}

bool fq_invertible(const Fq& F, const MatFq& M) {
    return M.rows == M.cols && fq_rank(F, M) == M.rows;
}

std::vector<VecFq> fq_kernel_basis(const Fq& F, MatFq M) {
    const int n = M.cols;
    const auto pivots = echelon(F, M, true);
    std::vector<bool> is_pivot(n, false);
    for (int c : pivots) is_pivot[c] = true;
    std::vector<VecFq> basis;
    for (int free = 0; free < n; ++free) {
        if (is_pivot[free]) continue;
        VecFq v(n, 0);
        v[free] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r)
            v[pivots[r]] = F.neg(M.at(static_cast<int>(r), free));
        basis.push_back(std::move(v));
    }
    return basis;
}

bool fq_solve(const Fq& F, MatFq A, VecFq b, VecFq& x) {
    if (static_cast<int>(b.size()) != A.rows) throw MismatchError("fq_solve: size mismatch");
    MatFq aug(A.rows, A.cols + 1, 0);
    for (int i = 0; i < A.rows; ++i) {
        for (int j = 0; j < A.cols; ++j) aug.at(i, j) = A.at(i, j);
        aug.at(i, A.cols) = b[i];
    }
    echelon(F, aug, true);
    x.assign(A.cols, 0);
    for (int i = A.rows - 1; i >= 0; --i) {
        int pivot = -1;
        for (int j = 0; j < A.cols; ++j)
            if (aug.at(i, j)) { pivot = j; break; }
        if (pivot < 0) {
            if (aug.at(i, A.cols)) return false; // 0 = nonzero
            continue;
        }
        std::uint8_t acc = aug.at(i, A.cols);
        for (int j = pivot + 1; j < A.cols; ++j)
            if (aug.at(i, j) && x[j]) acc = F.sub(acc, F.mul(aug.at(i, j), x[j]));
        x[pivot] = acc; // pivot entry is one after reduction
    }
    return true;
}

MatFq fq_from_columns(int n, const std::vector<VecFq>& cols) {
    MatFq M(n, static_cast<int>(cols.size()), 0);
    for (int j = 0; j < M.cols; ++j) {
        if (static_cast<int>(cols[j].size()) != n)
            throw MismatchError("fq_from_columns: column length mismatch");
        for (int i = 0; i < n; ++i) M.at(i, j) = cols[j][i];
    }
    return M;
}

} // namespace drinlab
