#pragma once
// ScalarExpr: exact complex-valued functions of the chart coordinates.
//
// Value is a reduced fraction num/den of Laurent polynomials in x_j and
// E_j = exp(i x_j). Canonical form: gcd(num, den) = 1, den has nonnegative
// exponents, no monomial factor in any E_j, and leading coefficient 1.
// With this normal form structural equality is mathematical equality.

#include <complex>
#include <memory>
#include <string>
#include <vector>

#include "gkcurv/poly.hpp"

namespace gkcurv {

/// A point of the (x, E) model. For identity testing x_j and E_j may be chosen
/// independently ("algebraic point"); a genuine point of the chart sets x_j
/// for polynomial coordinates and E_j = exp(i x_j) for angle coordinates.
struct Point {
    std::vector<std::optional<GaussRat>> x;  // value of x_j, if known exactly
    std::vector<std::optional<GaussRat>> e;  // value of exp(i x_j), if known exactly
    std::vector<double> approx;              // real coordinates for numeric fallback

    size_t dim() const { return x.size(); }
};

class ScalarExpr {
public:
    ScalarExpr();
    ScalarExpr(long v);                    // NOLINT(implicit)
    ScalarExpr(const GaussRat& c);         // NOLINT(implicit)
    explicit ScalarExpr(const Poly& p);    // a polynomial is already canonical
    /// Build num/den and reduce to canonical form. Throws DivisionByZero.
    static ScalarExpr fraction(const Poly& num, const Poly& den);

    static ScalarExpr coord(int j);
    static ScalarExpr I();
    /// cos(k . x) and sin(k . x) for an integer vector k.
    static ScalarExpr cos_lin(const std::vector<int>& k);
    static ScalarExpr sin_lin(const std::vector<int>& k);

    const Poly& num() const { return rep_->num; }
    const Poly& den() const { return rep_->den; }
    bool is_polynomial() const { return rep_->den.is_constant(); }

    bool is_zero() const { return rep_->num.is_zero(); }
    bool is_constant() const { return rep_->num.is_constant() && rep_->den.is_constant(); }
    GaussRat constant_value() const;  // precondition: is_constant()
    bool is_real() const;
    ScalarExpr conj() const;
    ScalarExpr re() const;
    ScalarExpr im() const;
    ScalarExpr partial(int j) const;
    ScalarExpr inv() const;
    ScalarExpr pow(int k) const;
    /// Coordinates the value depends on (bit j set when x_j or E_j appears).
    unsigned coord_mask() const { return rep_->num.coord_mask() | rep_->den.coord_mask(); }
    /// Size heuristic (number of terms), used for pivot choice.
    size_t cost() const { return rep_->num.size() + rep_->den.size(); }

    ScalarExpr operator-() const;
    ScalarExpr& operator+=(const ScalarExpr& o) { return *this = *this + o; }
    ScalarExpr& operator-=(const ScalarExpr& o) { return *this = *this - o; }
    ScalarExpr& operator*=(const ScalarExpr& o) { return *this = *this * o; }
    ScalarExpr& operator/=(const ScalarExpr& o) { return *this = *this / o; }
    friend ScalarExpr operator+(const ScalarExpr& a, const ScalarExpr& b);
    friend ScalarExpr operator-(const ScalarExpr& a, const ScalarExpr& b);
    friend ScalarExpr operator*(const ScalarExpr& a, const ScalarExpr& b);
    friend ScalarExpr operator/(const ScalarExpr& a, const ScalarExpr& b);
    friend bool operator==(const ScalarExpr& a, const ScalarExpr& b);
    friend bool operator!=(const ScalarExpr& a, const ScalarExpr& b) { return !(a == b); }

    /// Exact value. Throws EvaluationPole when the denominator vanishes and
    /// NotExact when a needed coordinate value is not exactly known.
    GaussRat eval(const Point& p) const;
    /// Floating value at real coordinates.
    template <class T>
    std::complex<T> eval_numeric(const std::vector<T>& xs) const;

    /// Deterministic, parseable rendering using the given coordinate names.
    std::string str(const std::vector<std::string>& names) const;

    struct Rep {
        Poly num, den;
    };

private:
    std::shared_ptr<const Rep> rep_;
    static ScalarExpr raw(Poly num, Poly den);
    static ScalarExpr coprime(Poly num, Poly den);  // normalize without gcd
};

/// Default coordinate names x1, x2, ... (used for diagnostics).
std::vector<std::string> default_names(size_t n = kMaxCoords);
std::ostream& operator<<(std::ostream& os, const ScalarExpr& a);

inline bool is_zero(const ScalarExpr& a) { return a.is_zero(); }
inline ScalarExpr conj(const ScalarExpr& a) { return a.conj(); }
inline ScalarExpr partial(const ScalarExpr& a, int j) { return a.partial(j); }

/// Render a Laurent polynomial as a sum of x-monomials times cos/sin terms.
std::string poly_str(const Poly& p, const std::vector<std::string>& names);

// ---- numeric evaluation -------------------------------------------------

template <class T>
T rational_to(const mpq_class& q) {
    if constexpr (std::is_same_v<T, double>) {
        return q.get_d();
    } else {
        return T(q.get_num().get_str()) / T(q.get_den().get_str());
    }
}

template <class T>
std::complex<T> eval_poly_numeric(const Poly& p, const std::vector<T>& xs) {
    using C = std::complex<T>;
    C sum(0);
    for (const auto& t : p.terms()) {
        C v(rational_to<T>(t.c.re), rational_to<T>(t.c.im));
        T phase(0);
        for (size_t j = 0; j < xs.size(); ++j) {
            int a = t.m.e[xslot(static_cast<int>(j))];
            int k = t.m.e[eslot(static_cast<int>(j))];
            for (int q = 0; q < a; ++q) v *= xs[j];
            if (k != 0) phase += T(k) * xs[j];
        }
        if (phase != T(0)) {
            using std::cos;
            using std::sin;
            v *= C(cos(phase), sin(phase));
        }
        sum += v;
    }
    return sum;
}

template <class T>
std::complex<T> ScalarExpr::eval_numeric(const std::vector<T>& xs) const {
    auto d = eval_poly_numeric(rep_->den, xs);
    if (d == std::complex<T>(0)) throw EvaluationPole("denominator vanishes");
    return eval_poly_numeric(rep_->num, xs) / d;
}

}  // namespace gkcurv
