#pragma once
// Scalar field adapters. Every algebra template is written against the
// interface below; the three instantiations are ScalarExpr (symbolic),
// GaussRat (exact values at a point) and Jet<T> (truncated Taylor data).

#include <cmath>
#include <complex>

#include "gkcurv/scalar.hpp"

namespace gkcurv {

template <class S>
struct FieldTraits;

template <>
struct FieldTraits<ScalarExpr> {
    static constexpr bool exact = true;
    static bool unit(const ScalarExpr& x) { return !x.is_zero(); }
    static double cost(const ScalarExpr& x) { return static_cast<double>(x.cost()); }
    static bool negligible(const ScalarExpr& x) { return x.is_zero(); }
};

template <>
struct FieldTraits<GaussRat> {
    static constexpr bool exact = true;
    static bool unit(const GaussRat& x) { return !x.is_zero(); }
    static double cost(const GaussRat& x) {
        return static_cast<double>(mpz_sizeinbase(x.re.get_den_mpz_t(), 2) + mpz_sizeinbase(x.im.get_den_mpz_t(), 2));
    }
    static bool negligible(const GaussRat& x) { return x.is_zero(); }
};

inline GaussRat partial(const GaussRat&, int) { return GaussRat(); }

/// Conversion of an exact constant into a field element.
template <class S>
S from_gauss(const GaussRat& c) {
    return S(c);
}
template <>
inline std::complex<double> from_gauss<std::complex<double>>(const GaussRat& c) {
    return c.to_complex();
}

inline std::complex<double> conj(const std::complex<double>& z) { return std::conj(z); }
inline bool is_zero(const std::complex<double>& z) { return z == std::complex<double>(0); }

}  // namespace gkcurv
