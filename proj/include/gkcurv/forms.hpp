#pragma once
// Mixed-degree differential forms on a coordinate chart.
//
// A Form maps multi-indices (bitmasks over the 2n coordinates) to coefficients.
// Zero coefficients are never stored. Signs follow the usual convention
// dx_I ^ dx_J = (-1)^{inversions} dx_{I u J}.

#include <bit>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "gkcurv/field.hpp"

namespace gkcurv {

struct Chart {
    int n = 1;                       // complex dimension; the chart has 2n real coordinates
    std::vector<std::string> names;  // coordinate names
    std::vector<bool> periodic;      // angle coordinates (period 2 pi)

    int dim() const { return 2 * n; }
    bool all_periodic() const {
        for (bool b : periodic)
            if (!b) return false;
        return true;
    }
    friend bool operator==(const Chart& a, const Chart& b) {
        return a.n == b.n && a.names == b.names && a.periodic == b.periodic;
    }
};
using ChartPtr = std::shared_ptr<const Chart>;

/// Chart with coordinates x1..x2n.
inline ChartPtr make_chart(int n, bool periodic = false) {
    auto c = std::make_shared<Chart>();
    c->n = n;
    for (int j = 0; j < 2 * n; ++j) {
        c->names.push_back("x" + std::to_string(j + 1));
        c->periodic.push_back(periodic);
    }
    return c;
}

inline void check_chart(const ChartPtr& a, const ChartPtr& b) {
    if (a == b) return;
    if (!a || !b || !(*a == *b)) throw ChartMismatch("operands live on different charts");
}

inline int degree_of(unsigned mask) { return std::popcount(mask); }
/// Number of indices of `mask` strictly below j.
inline int below(unsigned mask, int j) { return std::popcount(mask & ((1u << j) - 1u)); }
/// Sign of dx_A ^ dx_B for disjoint A, B.
inline int wedge_sign(unsigned a, unsigned b) {
    int inv = 0;
    for (unsigned m = b; m; m &= m - 1) {
        int j = std::countr_zero(m);
        inv += std::popcount(a >> (j + 1));
    }
    return (inv & 1) ? -1 : 1;
}

template <class S>
class Form {
public:
    ChartPtr chart;
    std::map<unsigned, S> c;

    Form() = default;
    explicit Form(ChartPtr ch) : chart(std::move(ch)) {}
    Form(ChartPtr ch, const S& scalar) : chart(std::move(ch)) { add(0u, scalar); }

    static Form dx(ChartPtr ch, int j) {
        Form f(std::move(ch));
        f.c.emplace(1u << j, S(1));
        return f;
    }
    static Form monomial(ChartPtr ch, unsigned mask, const S& coef) {
        Form f(std::move(ch));
        f.add(mask, coef);
        return f;
    }

    int dim() const { return chart->dim(); }
    unsigned top() const { return (1u << dim()) - 1u; }
    bool is_zero() const { return c.empty(); }

    S coeff(unsigned mask) const {
        auto it = c.find(mask);
        return it == c.end() ? S(0) : it->second;
    }
    void add(unsigned mask, const S& v) {
        if (FieldTraits<S>::negligible(v)) return;
        auto it = c.find(mask);
        if (it == c.end()) {
            c.emplace(mask, v);
            return;
        }
        it->second += v;
        if (FieldTraits<S>::negligible(it->second)) c.erase(it);
    }

    Form operator-() const {
        Form r(chart);
        for (const auto& [m, v] : c) r.c.emplace(m, -v);
        return r;
    }
    Form& operator+=(const Form& o) {
        if (!chart) chart = o.chart;
        check_chart(chart, o.chart);
        for (const auto& [m, v] : o.c) add(m, v);
        return *this;
    }
    Form& operator-=(const Form& o) { return *this += -o; }
    friend Form operator+(Form a, const Form& b) { return a += b; }
    friend Form operator-(Form a, const Form& b) { return a -= b; }
    friend Form operator*(const S& s, const Form& f) {
        Form r(f.chart);
        if (FieldTraits<S>::negligible(s)) return r;
        for (const auto& [m, v] : f.c) r.add(m, s * v);
        return r;
    }
    friend bool operator==(const Form& a, const Form& b) {
        check_chart(a.chart, b.chart);
        return (a - b).is_zero();
    }
    friend bool operator!=(const Form& a, const Form& b) { return !(a == b); }

    template <class F>
    Form map(F&& fn) const {
        Form r(chart);
        for (const auto& [m, v] : c) r.add(m, fn(v));
        return r;
    }
};

template <class S>
Form<S> wedge(const Form<S>& a, const Form<S>& b) {
    check_chart(a.chart, b.chart);
    Form<S> r(a.chart);
    for (const auto& [ma, va] : a.c)
        for (const auto& [mb, vb] : b.c) {
            if (ma & mb) continue;
            S p = va * vb;
            r.add(ma | mb, wedge_sign(ma, mb) < 0 ? -p : p);
        }
    return r;
}

template <class S>
Form<S> ext_d(const Form<S>& a) {
    Form<S> r(a.chart);
    int n = a.dim();
    for (const auto& [m, v] : a.c)
        for (int j = 0; j < n; ++j) {
            if (m & (1u << j)) continue;
            S dv = partial(v, j);
            if (FieldTraits<S>::negligible(dv)) continue;
            r.add(m | (1u << j), (below(m, j) & 1) ? -dv : dv);
        }
    return r;
}

/// Clifford involution: + on degrees 0,1 mod 4 and - on 2,3 mod 4.
inline int sigma_sign(int deg) { return (deg % 4 < 2) ? 1 : -1; }

template <class S>
Form<S> sigma(const Form<S>& a) {
    Form<S> r(a.chart);
    for (const auto& [m, v] : a.c) r.c.emplace(m, sigma_sign(degree_of(m)) > 0 ? v : -v);
    return r;
}

template <class S>
Form<S> degree_part(const Form<S>& a, int k) {
    Form<S> r(a.chart);
    for (const auto& [m, v] : a.c)
        if (degree_of(m) == k) r.c.emplace(m, v);
    return r;
}

template <class S>
Form<S> conj(const Form<S>& a) {
    return a.map([](const S& v) { return conj(v); });
}

template <class S>
Form<S> re(const Form<S>& a) {
    return a.map([](const S& v) { return (v + conj(v)) * S(GaussRat::ratio(1, 2)); });
}
template <class S>
Form<S> im(const Form<S>& a) {
    return a.map([](const S& v) { return (v - conj(v)) * S(GaussRat(0, mpq_class(-1, 2))); });
}

template <class S>
bool is_real(const Form<S>& a) {
    return a == conj(a);
}

/// Interior product with the coordinate vector field d/dx_j.
template <class S>
Form<S> interior(int j, const Form<S>& a) {
    Form<S> r(a.chart);
    for (const auto& [m, v] : a.c)
        if (m & (1u << j)) r.c.emplace(m & ~(1u << j), (below(m, j) & 1) ? -v : v);
    return r;
}

/// dx_j ^ a
template <class S>
Form<S> dx_wedge(int j, const Form<S>& a) {
    Form<S> r(a.chart);
    for (const auto& [m, v] : a.c)
        if (!(m & (1u << j))) r.c.emplace(m | (1u << j), (below(m, j) & 1) ? -v : v);
    return r;
}

/// Mukai pairing: top-degree part of a ^ sigma(b).
template <class S>
Form<S> mukai(const Form<S>& a, const Form<S>& b) {
    check_chart(a.chart, b.chart);
    unsigned top = a.top();
    Form<S> r(a.chart);
    for (const auto& [ma, va] : a.c) {
        auto it = b.c.find(top & ~ma);
        if (it == b.c.end()) continue;
        unsigned mb = it->first;
        int s = wedge_sign(ma, mb) * sigma_sign(degree_of(mb));
        S p = va * it->second;
        r.add(top, s < 0 ? -p : p);
    }
    return r;
}

/// Coefficient of the Mukai pairing against dx_1 ^ ... ^ dx_2n.
template <class S>
S mukai_scalar(const Form<S>& a, const Form<S>& b) {
    return mukai(a, b).coeff(a.top());
}

/// Top-degree coefficient (against the coordinate volume form).
template <class S>
S top_coeff(const Form<S>& a) {
    return a.coeff(a.top());
}

/// exp of an even form by its (finite) power series.
template <class S>
Form<S> form_exp(const Form<S>& a) {
    Form<S> result(a.chart, S(1));
    Form<S> term(a.chart, S(1));
    for (int k = 1; k <= a.dim(); ++k) {
        term = wedge(term, a);
        if (term.is_zero()) break;
        term = S(GaussRat::ratio(1, k)) * term;
        result += term;
    }
    return result;
}

/// a^k
template <class S>
Form<S> form_pow(const Form<S>& a, int k) {
    Form<S> r(a.chart, S(1));
    for (int i = 0; i < k; ++i) r = wedge(r, a);
    return r;
}

/// Constant-coefficient 2-form from an antisymmetric list of entries (i<j).
template <class S>
Form<S> two_form(ChartPtr ch, const std::vector<std::tuple<int, int, S>>& entries) {
    Form<S> f(ch);
    for (const auto& [i, j, v] : entries) {
        unsigned m = (1u << i) | (1u << j);
        f.add(m, i < j ? v : -v);
    }
    return f;
}

/// Coefficient matrix w_{ij} of a 2-form (w = sum_{i<j} w_ij dx_i ^ dx_j).
template <class S>
S two_form_entry(const Form<S>& w, int i, int j) {
    if (i == j) return S(0);
    if (i < j) return w.coeff((1u << i) | (1u << j));
    return -w.coeff((1u << i) | (1u << j));
}

/// Evaluate the coefficients of a symbolic form at a point.
Form<GaussRat> eval_form(const Form<ScalarExpr>& f, const Point& p);

/// Convert a symbolic form into a form with jet coefficients at a point.
template <class J, class P>
Form<J> jet_form(const Form<ScalarExpr>& f, const P& p, int order = 2) {
    Form<J> r(f.chart);
    for (const auto& [m, v] : f.c) r.add(m, jet_at(v, p, order));
    return r;
}

/// Pullback by the affine map y -> A y + t. Translation data for coordinate j
/// is given by an exact point: x-value for polynomial appearances and the unit
/// exp(i t_j) for phase appearances. Throws SingularMap when A is singular.
struct AffineMap {
    std::vector<std::vector<GaussRat>> A;
    Point shift;
};
Form<ScalarExpr> pullback_affine(const Form<ScalarExpr>& a, const AffineMap& F);
ScalarExpr pullback_affine(const ScalarExpr& f, const AffineMap& F);

/// Deterministic text: multi-indices by degree, then lexicographically.
std::string form_str(const Form<ScalarExpr>& f);
/// Multi-index label, "1" for the empty index and "dx1^dx2" style otherwise.
std::string index_label(const Chart& ch, unsigned mask);
/// Inverse of index_label; `sign` receives the reordering sign.
unsigned parse_index_label(const Chart& ch, const std::string& label, int& sign);
/// Masks of a form sorted by (degree, lexicographic indices).
std::vector<unsigned> sorted_masks(const std::vector<unsigned>& masks);

}  // namespace gkcurv
