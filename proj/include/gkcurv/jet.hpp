#pragma once
// Second-order truncated Taylor jets in up to four real coordinates.
//
// A Jet carries a value, gradient and Hessian and the order to which they are
// trustworthy. Differentiation lowers the order; arithmetic keeps the minimum.
// Used to run the curvature pipeline at single points: the spinor needs two
// derivatives (eta needs one, its exterior derivative one more).

#include <array>
#include <complex>
#include <stdexcept>

#include "gkcurv/field.hpp"

namespace gkcurv {

inline constexpr int kJetDim = 4;

template <class T>
class Jet {
public:
    static constexpr int kHess = kJetDim * (kJetDim + 1) / 2;

    T v{};
    std::array<T, kJetDim> g{};
    std::array<T, kHess> h{};
    int order = 2;

    Jet() : v(0) { fill_zero(); }
    Jet(long c) : v(c) { fill_zero(); }  // NOLINT(implicit)
    Jet(const GaussRat& c) : v(from_gauss<T>(c)) { fill_zero(); }  // NOLINT(implicit)
    static Jet constant(const T& c) {
        Jet r;
        r.v = c;
        return r;
    }

    static constexpr int hidx(int i, int j) {
        if (i > j) std::swap(i, j);
        return i * kJetDim - i * (i - 1) / 2 + (j - i);
    }
    T& hess(int i, int j) { return h[static_cast<size_t>(hidx(i, j))]; }
    const T& hess(int i, int j) const { return h[static_cast<size_t>(hidx(i, j))]; }

    Jet operator-() const {
        Jet r = *this;
        r.v = -v;
        for (auto& x : r.g) x = -x;
        for (auto& x : r.h) x = -x;
        return r;
    }
    Jet& operator+=(const Jet& o) {
        v += o.v;
        for (int i = 0; i < kJetDim; ++i) g[i] += o.g[i];
        for (int i = 0; i < kHess; ++i) h[i] += o.h[i];
        order = std::min(order, o.order);
        return *this;
    }
    Jet& operator-=(const Jet& o) { return *this += -o; }
    Jet& operator*=(const Jet& o) { return *this = *this * o; }
    Jet& operator/=(const Jet& o) { return *this = *this * o.inv(); }

    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
    friend Jet operator*(const Jet& a, const Jet& b) {
        Jet r;
        r.order = std::min(a.order, b.order);
        r.v = a.v * b.v;
        for (int i = 0; i < kJetDim; ++i) r.g[i] = a.v * b.g[i] + a.g[i] * b.v;
        for (int i = 0; i < kJetDim; ++i)
            for (int j = i; j < kJetDim; ++j)
                r.hess(i, j) = a.v * b.hess(i, j) + a.hess(i, j) * b.v + a.g[i] * b.g[j] + a.g[j] * b.g[i];
        return r;
    }
    friend Jet operator/(const Jet& a, const Jet& b) { return a * b.inv(); }

    Jet inv() const {
        if (v == T(0)) throw DivisionByZero("jet with zero value");
        Jet r;
        r.order = order;
        T iv = T(1) / v;
        T iv2 = iv * iv;
        r.v = iv;
        for (int i = 0; i < kJetDim; ++i) r.g[i] = -g[i] * iv2;
        for (int i = 0; i < kJetDim; ++i)
            for (int j = i; j < kJetDim; ++j)
                r.hess(i, j) = -hess(i, j) * iv2 + T(2) * g[i] * g[j] * iv2 * iv;
        return r;
    }

    Jet conj() const {
        using gkcurv::conj;
        Jet r;
        r.order = order;
        r.v = conj(v);
        for (int i = 0; i < kJetDim; ++i) r.g[i] = conj(g[i]);
        for (int i = 0; i < kHess; ++i) r.h[i] = conj(h[i]);
        return r;
    }

    Jet partial(int j) const {
        if (order <= 0) throw std::logic_error("jet differentiated beyond its order");
        Jet r;
        r.order = order - 1;
        r.v = g[static_cast<size_t>(j)];
        if (r.order >= 1)
            for (int i = 0; i < kJetDim; ++i) r.g[i] = hess(i, j);
        return r;
    }

    bool is_zero() const {
        using gkcurv::is_zero;
        if (!is_zero(v)) return false;
        if (order >= 1)
            for (const auto& x : g)
                if (!is_zero(x)) return false;
        if (order >= 2)
            for (const auto& x : h)
                if (!is_zero(x)) return false;
        return true;
    }

    friend bool operator==(const Jet& a, const Jet& b) { return (a - b).is_zero(); }

private:
    void fill_zero() {
        g.fill(T(0));
        h.fill(T(0));
    }
};

template <class T>
Jet<T> conj(const Jet<T>& a) {
    return a.conj();
}
template <class T>
bool is_zero(const Jet<T>& a) {
    return a.is_zero();
}
template <class T>
Jet<T> partial(const Jet<T>& a, int j) {
    return a.partial(j);
}

template <>
struct FieldTraits<Jet<GaussRat>> {
    static constexpr bool exact = true;
    static bool unit(const Jet<GaussRat>& x) { return !x.v.is_zero(); }
    static double cost(const Jet<GaussRat>& x) { return FieldTraits<GaussRat>::cost(x.v); }
    static bool negligible(const Jet<GaussRat>& x) { return x.is_zero(); }
};

template <>
struct FieldTraits<Jet<std::complex<double>>> {
    static constexpr bool exact = false;
    static constexpr double kTol = 1e-9;
    static bool unit(const Jet<std::complex<double>>& x) { return std::abs(x.v) > kTol; }
    static double cost(const Jet<std::complex<double>>& x) { return -std::abs(x.v); }
    static bool negligible(const Jet<std::complex<double>>& x) {
        if (std::abs(x.v) > kTol) return false;
        if (x.order >= 1)
            for (const auto& z : x.g)
                if (std::abs(z) > kTol) return false;
        if (x.order >= 2)
            for (const auto& z : x.h)
                if (std::abs(z) > kTol) return false;
        return true;
    }
};

using JetC = Jet<std::complex<double>>;
using JetQ = Jet<GaussRat>;

/// Jet of a symbolic function at an exact point (coordinates beyond the jet
/// dimension must not be differentiated).
JetQ jet_at(const ScalarExpr& f, const Point& p, int order = 2);
/// Floating jet of a symbolic function at real coordinates.
JetC jet_at(const ScalarExpr& f, const std::vector<double>& xs, int order = 2);

}  // namespace gkcurv
