#pragma once
// Gaussian rationals Q(i): the coefficient field of every exact computation.

#include <gmpxx.h>

#include <complex>
#include <ostream>
#include <string>

#include "gkcurv/errors.hpp"

namespace gkcurv {

class GaussRat {
public:
    mpq_class re, im;

    GaussRat() = default;
    GaussRat(long v) : re(v), im(0) {}  // NOLINT(implicit)
    GaussRat(mpq_class r) : re(std::move(r)), im(0) { re.canonicalize(); }  // NOLINT(implicit)
    GaussRat(mpq_class r, mpq_class i) : re(std::move(r)), im(std::move(i)) {
        re.canonicalize();
        im.canonicalize();
    }

    static GaussRat I() { return GaussRat(0, 1); }
    static GaussRat ratio(long p, long q) { return GaussRat(mpq_class(p, q)); }

    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
    bool is_one() const { return re == 1 && sgn(im) == 0; }
    bool is_real() const { return sgn(im) == 0; }

    GaussRat conj() const { return GaussRat(re, -im); }
    mpq_class norm2() const { return re * re + im * im; }

    GaussRat operator-() const { return GaussRat(-re, -im); }
    GaussRat& operator+=(const GaussRat& o) { re += o.re; im += o.im; return *this; }
    GaussRat& operator-=(const GaussRat& o) { re -= o.re; im -= o.im; return *this; }
    GaussRat& operator*=(const GaussRat& o) {
        if (sgn(o.im) == 0) {
            re *= o.re;
            im *= o.re;
        } else if (sgn(im) == 0) {
            im = re * o.im;
            re *= o.re;
        } else {
            mpq_class r = re * o.re - im * o.im;
            im = re * o.im + im * o.re;
            re = std::move(r);
        }
        return *this;
    }
    GaussRat& operator/=(const GaussRat& o) {
        if (o.is_zero()) throw DivisionByZero("Gaussian rational division by zero");
        if (sgn(o.im) == 0) {
            re /= o.re;
            im /= o.re;
            return *this;
        }
        mpq_class n = o.norm2();
        *this *= o.conj();
        re /= n;
        im /= n;
        return *this;
    }
    GaussRat inv() const { GaussRat one(1); one /= *this; return one; }

    friend GaussRat operator+(GaussRat a, const GaussRat& b) { a += b; return a; }
    friend GaussRat operator-(GaussRat a, const GaussRat& b) { a -= b; return a; }
    friend GaussRat operator*(GaussRat a, const GaussRat& b) { a *= b; return a; }
    friend GaussRat operator/(GaussRat a, const GaussRat& b) { a /= b; return a; }
    friend bool operator==(const GaussRat& a, const GaussRat& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const GaussRat& a, const GaussRat& b) { return !(a == b); }

    /// Total order used only for canonical tie-breaking (lexicographic on re, im).
    friend int cmp(const GaussRat& a, const GaussRat& b) {
        int c = ::cmp(a.re, b.re);
        return c != 0 ? c : ::cmp(a.im, b.im);
    }

    std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }

    /// Parseable text: "3/2", "-i", "1/2 + 3/4*i" style, wrapped in parentheses
    /// when both parts are nonzero and `paren` is set.
    std::string str(bool paren = false) const;
    friend std::ostream& operator<<(std::ostream& os, const GaussRat& a) { return os << a.str(); }
};

inline GaussRat conj(const GaussRat& a) { return a.conj(); }
inline bool is_zero(const GaussRat& a) { return a.is_zero(); }

std::string rational_str(const mpq_class& q);

}  // namespace gkcurv
