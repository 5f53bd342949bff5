#pragma once
// Dense matrices over a field adapter, with Gaussian elimination.
//
// Pivots are chosen by FieldTraits<S>: the cheapest unit for exact fields,
// the largest magnitude for floating jets.

#include <optional>
#include <vector>

#include "gkcurv/field.hpp"

namespace gkcurv {

template <class S>
class Mat {
public:
    int rows = 0, cols = 0;
    std::vector<S> a;

    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * static_cast<size_t>(c), S(0)) {}

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = S(1);
        return m;
    }

    S& operator()(int i, int j) { return a[static_cast<size_t>(i) * static_cast<size_t>(cols) + static_cast<size_t>(j)]; }
    const S& operator()(int i, int j) const {
        return a[static_cast<size_t>(i) * static_cast<size_t>(cols) + static_cast<size_t>(j)];
    }

    friend Mat operator*(const Mat& x, const Mat& y) {
        Mat r(x.rows, y.cols);
        for (int i = 0; i < x.rows; ++i)
            for (int k = 0; k < x.cols; ++k) {
                const S& xik = x(i, k);
                if (FieldTraits<S>::negligible(xik)) continue;
                for (int j = 0; j < y.cols; ++j)
                    if (!FieldTraits<S>::negligible(y(k, j))) r(i, j) += xik * y(k, j);
            }
        return r;
    }
    friend Mat operator+(Mat x, const Mat& y) {
        for (size_t i = 0; i < x.a.size(); ++i) x.a[i] += y.a[i];
        return x;
    }
    friend Mat operator-(Mat x, const Mat& y) {
        for (size_t i = 0; i < x.a.size(); ++i) x.a[i] -= y.a[i];
        return x;
    }
    friend Mat operator*(const S& s, Mat x) {
        for (auto& v : x.a) v = s * v;
        return x;
    }
    Mat operator-() const {
        Mat r = *this;
        for (auto& v : r.a) v = -v;
        return r;
    }
    std::vector<S> apply(const std::vector<S>& v) const {
        std::vector<S> r(static_cast<size_t>(rows), S(0));
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j)
                if (!FieldTraits<S>::negligible(v[static_cast<size_t>(j)]) && !FieldTraits<S>::negligible((*this)(i, j)))
                    r[static_cast<size_t>(i)] += (*this)(i, j) * v[static_cast<size_t>(j)];
        return r;
    }
    Mat transpose() const {
        Mat r(cols, rows);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) r(j, i) = (*this)(i, j);
        return r;
    }
    bool is_zero() const {
        for (const auto& v : a)
            if (!FieldTraits<S>::negligible(v)) return false;
        return true;
    }
    friend bool operator==(const Mat& x, const Mat& y) { return (x - y).is_zero(); }

    template <class F>
    auto map(F&& fn) const {
        using T = decltype(fn(a[0]));
        Mat<T> r(rows, cols);
        for (size_t i = 0; i < a.size(); ++i) r.a[i] = fn(a[i]);
        return r;
    }
};

template <class S>
Mat<S> conj(const Mat<S>& m) {
    return m.map([](const S& v) { return conj(v); });
}

/// Row echelon data of an augmented elimination.
template <class S>
struct Echelon {
    Mat<S> m;                 // reduced rows (fully reduced: pivots are 1, columns cleared)
    std::vector<int> pivcol;  // pivot column of row r, for r < rank
    int rank = 0;
};

/// Gauss–Jordan elimination on the first `ncols` columns.
template <class S>
Echelon<S> reduce(Mat<S> m, int ncols = -1) {
    if (ncols < 0) ncols = m.cols;
    Echelon<S> e;
    int r = 0;
    for (int col = 0; col < ncols && r < m.rows; ++col) {
        int best = -1;
        double bc = 0;
        for (int i = r; i < m.rows; ++i) {
            if (!FieldTraits<S>::unit(m(i, col))) continue;
            double c = FieldTraits<S>::cost(m(i, col));
            if (best < 0 || c < bc) {
                best = i;
                bc = c;
            }
        }
        if (best < 0) continue;
        if (best != r)
            for (int j = 0; j < m.cols; ++j) std::swap(m(r, j), m(best, j));
        S inv = S(1) / m(r, col);
        for (int j = 0; j < m.cols; ++j)
            if (!FieldTraits<S>::negligible(m(r, j))) m(r, j) = m(r, j) * inv;
        m(r, col) = S(1);
        for (int i = 0; i < m.rows; ++i) {
            if (i == r) continue;
            S f = m(i, col);
            if (FieldTraits<S>::negligible(f)) continue;
            for (int j = 0; j < m.cols; ++j)
                if (!FieldTraits<S>::negligible(m(r, j))) m(i, j) -= f * m(r, j);
            m(i, col) = S(0);
        }
        e.pivcol.push_back(col);
        ++r;
    }
    e.rank = r;
    e.m = std::move(m);
    return e;
}

/// A solution of A x = b, or nullopt when inconsistent. Free variables are 0.
template <class S>
std::optional<std::vector<S>> solve(const Mat<S>& A, const std::vector<S>& b) {
    Mat<S> aug(A.rows, A.cols + 1);
    for (int i = 0; i < A.rows; ++i) {
        for (int j = 0; j < A.cols; ++j) aug(i, j) = A(i, j);
        aug(i, A.cols) = b[static_cast<size_t>(i)];
    }
    auto e = reduce(std::move(aug), A.cols);
    for (int i = e.rank; i < A.rows; ++i)
        if (!FieldTraits<S>::negligible(e.m(i, A.cols))) return std::nullopt;
    std::vector<S> x(static_cast<size_t>(A.cols), S(0));
    for (int r = 0; r < e.rank; ++r) x[static_cast<size_t>(e.pivcol[static_cast<size_t>(r)])] = e.m(r, A.cols);
    return x;
}

/// Basis of the null space of A.
template <class S>
std::vector<std::vector<S>> kernel(const Mat<S>& A) {
    auto e = reduce(A);
    std::vector<bool> is_piv(static_cast<size_t>(A.cols), false);
    for (int r = 0; r < e.rank; ++r) is_piv[static_cast<size_t>(e.pivcol[static_cast<size_t>(r)])] = true;
    std::vector<std::vector<S>> out;
    for (int f = 0; f < A.cols; ++f) {
        if (is_piv[static_cast<size_t>(f)]) continue;
        std::vector<S> v(static_cast<size_t>(A.cols), S(0));
        v[static_cast<size_t>(f)] = S(1);
        for (int r = 0; r < e.rank; ++r) v[static_cast<size_t>(e.pivcol[static_cast<size_t>(r)])] = -e.m(r, f);
        out.push_back(std::move(v));
    }
    return out;
}

template <class S>
int rank(const Mat<S>& A) {
    return reduce(A).rank;
}

/// Inverse, or nullopt when singular.
template <class S>
std::optional<Mat<S>> inverse(const Mat<S>& A) {
    int n = A.rows;
    Mat<S> aug(n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug(i, j) = A(i, j);
        aug(i, n + i) = S(1);
    }
    auto e = reduce(std::move(aug), n);
    if (e.rank < n) return std::nullopt;
    Mat<S> r(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r(i, j) = e.m(i, n + j);
    return r;
}

/// Determinant by elimination over the field.
template <class S>
S det(Mat<S> m) {
    int n = m.rows;
    S d(1);
    for (int col = 0; col < n; ++col) {
        int best = -1;
        double bc = 0;
        for (int i = col; i < n; ++i) {
            if (!FieldTraits<S>::unit(m(i, col))) continue;
            double c = FieldTraits<S>::cost(m(i, col));
            if (best < 0 || c < bc) {
                best = i;
                bc = c;
            }
        }
        if (best < 0) return S(0);
        if (best != col) {
            for (int j = 0; j < n; ++j) std::swap(m(col, j), m(best, j));
            d = -d;
        }
        d = d * m(col, col);
        S inv = S(1) / m(col, col);
        for (int i = col + 1; i < n; ++i) {
            S f = m(i, col) * inv;
            if (FieldTraits<S>::negligible(f)) continue;
            for (int j = col; j < n; ++j) m(i, j) -= f * m(col, j);
        }
    }
    return d;
}

}  // namespace gkcurv
