#include "drinlab/ringmat.hpp"

#include "drinlab/errors.hpp"

namespace drinlab {
namespace {

void check_compatible(const RingMat& A, const RingMat& B) {
    if (A.R != B.R) throw MismatchError("RingMat: different moduli");
    if (A.m.rows != B.m.rows || A.m.cols != B.m.cols)
        throw MismatchError("RingMat: dimension mismatch");
}

} // namespace

RingMat RingMat::make(QuotRingPtr R, Mat<APoly> entries) {
    if (entries.rows != entries.cols) throw MismatchError("RingMat: square matrices only");
    for (auto& e : entries.a) e = R->reduce(e);
    RingMat out{std::move(R), std::move(entries), false};
    out.invertible = quot_rank_mod_p(out.R, out.m) == out.m.rows;
    return out;
}

RingMat rm_identity(const QuotRingPtr& R, int n) {
    Mat<APoly> m(n, n, apoly_zero(R->fq()));
    for (int i = 0; i < n; ++i) m.at(i, i) = apoly_one(R->fq());
    return RingMat::make(R, std::move(m));
}

RingMat rm_scalar(const QuotRingPtr& R, int n, const APoly& c) {
    Mat<APoly> m(n, n, apoly_zero(R->fq()));
    for (int i = 0; i < n; ++i) m.at(i, i) = R->reduce(c);
    return RingMat::make(R, std::move(m));
}

RingMat rm_add(const RingMat& A, const RingMat& B) {
    check_compatible(A, B);
    Mat<APoly> m = A.m;
    for (std::size_t i = 0; i < m.a.size(); ++i) m.a[i] = A.R->add(m.a[i], B.m.a[i]);
    return RingMat::make(A.R, std::move(m));
}

RingMat rm_sub(const RingMat& A, const RingMat& B) {
    check_compatible(A, B);
    Mat<APoly> m = A.m;
    for (std::size_t i = 0; i < m.a.size(); ++i) m.a[i] = A.R->sub(m.a[i], B.m.a[i]);
    return RingMat::make(A.R, std::move(m));
}

RingMat rm_mul(const RingMat& A, const RingMat& B) {
    check_compatible(A, B);
    const int n = A.size();
    Mat<APoly> m(n, n, apoly_zero(A.R->fq()));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            if (A.m.at(i, k).zero()) continue;
            for (int j = 0; j < n; ++j)
                m.at(i, j) = A.R->add(m.at(i, j), mul(A.m.at(i, k), B.m.at(k, j)));
        }
    return RingMat::make(A.R, std::move(m));
}

bool rm_equal(const RingMat& A, const RingMat& B) {
    return A.R == B.R && A.m == B.m;
}

APoly rm_det(const RingMat& A) {
    const int n = A.size();
    if (n > 6) throw SizeBoundError("rm_det: cofactor expansion limited to size 6");
    // cofactor expansion over the ring, no divisions
    std::vector<int> cols(n);
    for (int i = 0; i < n; ++i) cols[i] = i;
    struct Rec {
        const RingMat& A;
        APoly run(std::vector<int>& cols, int row) {
            const auto& R = A.R;
            if (cols.empty()) return apoly_one(R->fq());
            APoly acc = apoly_zero(R->fq());
            for (std::size_t k = 0; k < cols.size(); ++k) {
                const APoly& e = A.m.at(row, cols[k]);
                if (e.zero()) continue;
                std::vector<int> rest;
                rest.reserve(cols.size() - 1);
                for (std::size_t t = 0; t < cols.size(); ++t)
                    if (t != k) rest.push_back(cols[t]);
                APoly term = R->mul(e, run(rest, row + 1));
                acc = (k % 2 == 0) ? R->add(acc, term) : R->sub(acc, term);
            }
            return acc;
        }
    } rec{A};
    return rec.run(cols, 0);
}

RingMat rm_level1(const RingMat& A) {
    auto R1 = QuotRing::make(A.R->prime(), 1);
    Mat<APoly> m = A.m;
    for (auto& e : m.a) e = R1->reduce(e);
    return RingMat::make(R1, std::move(m));
}

int quot_rank_mod_p(const QuotRingPtr& ring, const Mat<APoly>& m) {
    auto R1 = QuotRing::make(ring->prime(), 1);
    Mat<APoly> w = m;
    for (auto& e : w.a) e = R1->reduce(e);
    int rank = 0;
    for (int col = 0; col < w.cols && rank < w.rows; ++col) {
        int pr = -1;
        for (int i = rank; i < w.rows; ++i)
            if (!w.at(i, col).zero()) { pr = i; break; }
        if (pr < 0) continue;
        if (pr != rank)
            for (int j = 0; j < w.cols; ++j) std::swap(w.at(pr, j), w.at(rank, j));
        const APoly inv = R1->inv(w.at(rank, col));
        for (int j = 0; j < w.cols; ++j) w.at(rank, j) = R1->mul(inv, w.at(rank, j));
        for (int i = rank + 1; i < w.rows; ++i) {
            const APoly f = w.at(i, col);
            if (f.zero()) continue;
            for (int j = 0; j < w.cols; ++j)
                w.at(i, j) = R1->sub(w.at(i, j), R1->mul(f, w.at(rank, j)));
        }
        ++rank;
    }
    return rank;
}

std::vector<std::vector<APoly>> quot_kernel_mod_p(const QuotRingPtr& ring,
                                                  const Mat<APoly>& m) {
    auto R1 = QuotRing::make(ring->prime(), 1);
    Mat<APoly> w = m;
    for (auto& e : w.a) e = R1->reduce(e);

    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < w.cols && row < w.rows; ++col) {
        int pr = -1;
        for (int i = row; i < w.rows; ++i)
            if (!w.at(i, col).zero()) { pr = i; break; }
        if (pr < 0) continue;
        if (pr != row)
            for (int j = 0; j < w.cols; ++j) std::swap(w.at(pr, j), w.at(row, j));
        const APoly inv = R1->inv(w.at(row, col));
        for (int j = 0; j < w.cols; ++j) w.at(row, j) = R1->mul(inv, w.at(row, j));
        for (int i = 0; i < w.rows; ++i) {
            if (i == row) continue;
            const APoly f = w.at(i, col);
            if (f.zero()) continue;
            for (int j = 0; j < w.cols; ++j)
                w.at(i, j) = R1->sub(w.at(i, j), R1->mul(f, w.at(row, j)));
        }
        pivots.push_back(col);
        ++row;
    }
    std::vector<bool> is_pivot(w.cols, false);
    for (int c : pivots) is_pivot[c] = true;
    std::vector<std::vector<APoly>> basis;
    for (int fc = 0; fc < w.cols; ++fc) {
        if (is_pivot[fc]) continue;
        std::vector<APoly> v(w.cols, apoly_zero(ring->fq()));
        v[fc] = apoly_one(ring->fq());
        for (std::size_t r = 0; r < pivots.size(); ++r)
            v[pivots[r]] = R1->neg(w.at(static_cast<int>(r), fc));
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<APoly> snf_invariant_factors(const FqPtr& F, Mat<APoly> M) {
    const int rows = M.rows, cols = M.cols;
    const int k = std::min(rows, cols);
    std::vector<APoly> diag;
    diag.reserve(k);

    int top = 0;
    while (top < k) {
        // locate a minimal-degree nonzero entry in the trailing block
        int pi = -1, pj = -1, best = -1;
        for (int i = top; i < rows; ++i)
            for (int j = top; j < cols; ++j) {
                const APoly& e = M.at(i, j);
                if (e.zero()) continue;
                if (best < 0 || e.deg() < best) { best = e.deg(); pi = i; pj = j; }
            }
        if (pi < 0) break; // trailing block all zero
        if (pi != top)
            for (int j = top; j < cols; ++j) std::swap(M.at(pi, j), M.at(top, j));
        if (pj != top)
            for (int i = top; i < rows; ++i) std::swap(M.at(i, pj), M.at(i, top));

        bool clean = true;
        for (int i = top + 1; i < rows; ++i) {
            if (M.at(i, top).zero()) continue;
            const APoly q = divmod(M.at(i, top), M.at(top, top)).first;
            for (int j = top; j < cols; ++j)
                M.at(i, j) = sub(M.at(i, j), mul(q, M.at(top, j)));
            if (!M.at(i, top).zero()) clean = false;
        }
        for (int j = top + 1; j < cols; ++j) {
            if (M.at(top, j).zero()) continue;
            const APoly q = divmod(M.at(top, j), M.at(top, top)).first;
            for (int i = top; i < rows; ++i)
                M.at(i, j) = sub(M.at(i, j), mul(q, M.at(i, top)));
            if (!M.at(top, j).zero()) clean = false;
        }
        if (!clean) continue; // smaller remainders appeared; repeat the pivot hunt
        diag.push_back(make_monic(M.at(top, top)));
        ++top;
    }
    while (static_cast<int>(diag.size()) < k) diag.push_back(apoly_zero(F));

    // enforce the divisibility chain d1 | d2 | ...: diag(a, b) ~ diag(gcd, lcm)
    for (std::size_t i = 0; i < diag.size(); ++i)
        for (std::size_t j = i + 1; j < diag.size(); ++j) {
            const APoly& a = diag[i];
            const APoly& b = diag[j];
            if (a.zero() && b.zero()) continue;
            if (!a.zero() && divides(a, b)) continue;
            APoly g = gcd(a, b);
            if (a.zero() || b.zero()) {
                diag[i] = g;
                diag[j] = apoly_zero(F);
            } else {
                APoly l = divmod(mul(a, b), g).first;
                diag[i] = g;
                diag[j] = make_monic(l);
            }
        }
    return diag;
}

} // namespace drinlab
