#pragma once
// Generalized tangent algebra on T + T*: pairing, Clifford action on forms,
// Courant and Dorfman brackets, Lie derivative, b- and beta-transforms.
//
// Conventions: (v + xi).a = i_v a + xi ^ a and <v+xi, u+eta> = (xi(u) + eta(v))/2,
// so that e1 e2 + e2 e1 = 2 <e1, e2> on forms.

#include <array>
#include <map>
#include <vector>

#include "gkcurv/forms.hpp"
#include "gkcurv/linalg.hpp"

namespace gkcurv {

/// Section of (T + T*) tensor C. Components 0..dim-1 are d/dx_j, dim..2dim-1 are dx_j.
template <class S>
class GenVec {
public:
    ChartPtr chart;
    std::vector<S> c;

    GenVec() = default;
    explicit GenVec(ChartPtr ch) : chart(std::move(ch)), c(static_cast<size_t>(2 * chart->dim()), S(0)) {}
    GenVec(ChartPtr ch, std::vector<S> comps) : chart(std::move(ch)), c(std::move(comps)) {}

    static GenVec basis(ChartPtr ch, int p) {
        GenVec e(std::move(ch));
        e.c[static_cast<size_t>(p)] = S(1);
        return e;
    }
    static GenVec vec(ChartPtr ch, int j) { return basis(std::move(ch), j); }
    static GenVec covec(ChartPtr ch, int j) {
        int d = ch->dim();
        return basis(std::move(ch), d + j);
    }
    /// Covector part taken from a 1-form.
    static GenVec from_one_form(const Form<S>& f) {
        GenVec e(f.chart);
        for (const auto& [m, v] : f.c) {
            if (degree_of(m) != 1) throw DimensionMismatch("expected a 1-form");
            e.c[static_cast<size_t>(e.dim() + std::countr_zero(m))] = v;
        }
        return e;
    }

    int dim() const { return chart->dim(); }
    S& v(int j) { return c[static_cast<size_t>(j)]; }
    const S& v(int j) const { return c[static_cast<size_t>(j)]; }
    S& xi(int j) { return c[static_cast<size_t>(dim() + j)]; }
    const S& xi(int j) const { return c[static_cast<size_t>(dim() + j)]; }

    Form<S> covector_form() const {
        Form<S> f(chart);
        for (int j = 0; j < dim(); ++j) f.add(1u << j, xi(j));
        return f;
    }
    bool is_zero() const {
        for (const auto& x : c)
            if (!FieldTraits<S>::negligible(x)) return false;
        return true;
    }

    GenVec operator-() const {
        GenVec r = *this;
        for (auto& x : r.c) x = -x;
        return r;
    }
    GenVec& operator+=(const GenVec& o) {
        check_chart(chart, o.chart);
        for (size_t i = 0; i < c.size(); ++i) c[i] += o.c[i];
        return *this;
    }
    GenVec& operator-=(const GenVec& o) { return *this += -o; }
    friend GenVec operator+(GenVec a, const GenVec& b) { return a += b; }
    friend GenVec operator-(GenVec a, const GenVec& b) { return a -= b; }
    friend GenVec operator*(const S& s, GenVec a) {
        for (auto& x : a.c) x = s * x;
        return a;
    }
    friend bool operator==(const GenVec& a, const GenVec& b) { return (a - b).is_zero(); }
    friend bool operator!=(const GenVec& a, const GenVec& b) { return !(a == b); }
};

template <class S>
GenVec<S> conj(const GenVec<S>& e) {
    GenVec<S> r = e;
    for (auto& x : r.c) x = conj(x);
    return r;
}

template <class S>
bool is_real(const GenVec<S>& e) {
    return e == conj(e);
}

template <class S>
S pair_tt(const GenVec<S>& a, const GenVec<S>& b) {
    check_chart(a.chart, b.chart);
    S s(0);
    for (int j = 0; j < a.dim(); ++j) {
        if (!FieldTraits<S>::negligible(a.xi(j)) && !FieldTraits<S>::negligible(b.v(j))) s += a.xi(j) * b.v(j);
        if (!FieldTraits<S>::negligible(b.xi(j)) && !FieldTraits<S>::negligible(a.v(j))) s += b.xi(j) * a.v(j);
    }
    return s * S(GaussRat::ratio(1, 2));
}

/// Pairing of coordinate basis elements p, q of T + T* over a chart of real dimension d.
inline GaussRat basis_pair(int d, int p, int q) {
    if ((p < d) == (q < d)) return GaussRat(0);
    return (p % d == q % d) ? GaussRat::ratio(1, 2) : GaussRat(0);
}

/// Action of a coordinate basis element on a form.
template <class S>
Form<S> basis_act(int p, const Form<S>& a) {
    int d = a.dim();
    return p < d ? interior(p, a) : dx_wedge(p - d, a);
}

template <class S>
Form<S> clifford_act(const GenVec<S>& e, const Form<S>& a) {
    check_chart(e.chart, a.chart);
    Form<S> r(a.chart);
    for (int p = 0; p < 2 * e.dim(); ++p) {
        const S& w = e.c[static_cast<size_t>(p)];
        if (FieldTraits<S>::negligible(w)) continue;
        r += w * basis_act(p, a);
    }
    return r;
}

/// Element of Lambda^2 (T + T*): sum over p < q of B[p][q] e_p ^ e_q, stored
/// as a dense antisymmetric matrix.
template <class S>
class BiVec {
public:
    ChartPtr chart;
    Mat<S> B;

    BiVec() = default;
    explicit BiVec(ChartPtr ch) : chart(std::move(ch)), B(2 * chart->dim(), 2 * chart->dim()) {}

    int m() const { return B.rows; }
    int dim() const { return chart->dim(); }
    void set(int p, int q, const S& v) {
        B(p, q) = v;
        B(q, p) = -v;
    }
    bool is_zero() const { return B.is_zero(); }
    /// True when only the T ^ T block is populated.
    bool vector_only() const {
        for (int p = 0; p < m(); ++p)
            for (int q = 0; q < m(); ++q)
                if ((p >= dim() || q >= dim()) && !FieldTraits<S>::negligible(B(p, q))) return false;
        return true;
    }
    BiVec operator-() const {
        BiVec r = *this;
        r.B = -B;
        return r;
    }
    friend BiVec operator+(BiVec a, const BiVec& b) {
        a.B = a.B + b.B;
        return a;
    }
    friend BiVec operator-(BiVec a, const BiVec& b) {
        a.B = a.B - b.B;
        return a;
    }
    friend BiVec operator*(const S& s, BiVec a) {
        a.B = s * a.B;
        return a;
    }
    friend bool operator==(const BiVec& a, const BiVec& b) { return a.B == b.B; }
};

template <class S>
BiVec<S> conj(const BiVec<S>& b) {
    BiVec<S> r = b;
    r.B = conj(b.B);
    return r;
}

/// x ^ y = xy - <x,y> in the Clifford algebra.
template <class S>
BiVec<S> wedge2(const GenVec<S>& x, const GenVec<S>& y) {
    BiVec<S> r(x.chart);
    int m = r.m();
    for (int p = 0; p < m; ++p)
        for (int q = p + 1; q < m; ++q) {
            S v = x.c[static_cast<size_t>(p)] * y.c[static_cast<size_t>(q)] - x.c[static_cast<size_t>(q)] * y.c[static_cast<size_t>(p)];
            if (!FieldTraits<S>::negligible(v)) r.set(p, q, v);
        }
    return r;
}

template <class S>
Form<S> clifford_act(const BiVec<S>& b, const Form<S>& a) {
    Form<S> r(a.chart);
    int d = b.dim();
    for (int p = 0; p < b.m(); ++p)
        for (int q = p + 1; q < b.m(); ++q) {
            const S& w = b.B(p, q);
            if (FieldTraits<S>::negligible(w)) continue;
            Form<S> t = basis_act(p, basis_act(q, a));
            GaussRat g = basis_pair(d, p, q);
            if (!g.is_zero()) t -= S(g) * a;
            r += w * t;
        }
    return r;
}

/// Adjoint action [b, z] of a bivector on T + T*:
/// ad_{x^y}(z) = 2(<y,z> x - <x,z> y).
template <class S>
Mat<S> ad_matrix(const BiVec<S>& b) {
    int m = b.m(), d = b.dim();
    Mat<S> A(m, m);
    // column r: image of basis element e_r
    for (int p = 0; p < m; ++p)
        for (int q = 0; q < m; ++q) {
            const S& w = b.B(p, q);
            if (p >= q || FieldTraits<S>::negligible(w)) continue;
            for (int r = 0; r < m; ++r) {
                GaussRat gq = basis_pair(d, q, r), gp = basis_pair(d, p, r);
                if (!gq.is_zero()) A(p, r) += S(gq * GaussRat(2)) * w;
                if (!gp.is_zero()) A(q, r) -= S(gp * GaussRat(2)) * w;
            }
        }
    return A;
}

/// Element of Lambda^3 (T + T*), sparse over increasing index triples.
template <class S>
class TriVec {
public:
    ChartPtr chart;
    std::map<std::array<int, 3>, S> c;

    TriVec() = default;
    explicit TriVec(ChartPtr ch) : chart(std::move(ch)) {}
    int dim() const { return chart->dim(); }
    bool is_zero() const {
        for (const auto& [k, v] : c)
            if (!FieldTraits<S>::negligible(v)) return false;
        return true;
    }
    void add(std::array<int, 3> k, const S& v) {
        if (FieldTraits<S>::negligible(v)) return;
        auto it = c.find(k);
        if (it == c.end()) {
            c.emplace(k, v);
            return;
        }
        it->second += v;
        if (FieldTraits<S>::negligible(it->second)) c.erase(it);
    }
    friend TriVec operator+(TriVec a, const TriVec& b) {
        for (const auto& [k, v] : b.c) a.add(k, v);
        return a;
    }
    friend TriVec operator-(TriVec a, const TriVec& b) {
        for (const auto& [k, v] : b.c) a.add(k, -v);
        return a;
    }
    friend bool operator==(const TriVec& a, const TriVec& b) { return (a - b).is_zero(); }
};

template <class S>
TriVec<S> conj(const TriVec<S>& t) {
    TriVec<S> r(t.chart);
    for (const auto& [k, v] : t.c) r.c.emplace(k, conj(v));
    return r;
}

/// x ^ y ^ z, coefficient of e_p ^ e_q ^ e_r is the 3x3 determinant.
template <class S>
TriVec<S> wedge3(const GenVec<S>& x, const GenVec<S>& y, const GenVec<S>& z, const S& scale) {
    TriVec<S> r(x.chart);
    int m = 2 * x.dim();
    auto at = [](const GenVec<S>& v, int p) -> const S& { return v.c[static_cast<size_t>(p)]; };
    for (int p = 0; p < m; ++p)
        for (int q = p + 1; q < m; ++q)
            for (int s = q + 1; s < m; ++s) {
                S d = at(x, p) * (at(y, q) * at(z, s) - at(y, s) * at(z, q)) -
                      at(x, q) * (at(y, p) * at(z, s) - at(y, s) * at(z, p)) +
                      at(x, s) * (at(y, p) * at(z, q) - at(y, q) * at(z, p));
                if (!FieldTraits<S>::negligible(d)) r.add({p, q, s}, scale * d);
            }
    return r;
}

/// e_p ^ e_q ^ e_r = e_p e_q e_r - <q,r> e_p + <p,r> e_q - <p,q> e_r.
template <class S>
Form<S> clifford_act(const TriVec<S>& t, const Form<S>& a) {
    Form<S> r(a.chart);
    int d = t.dim();
    for (const auto& [k, w] : t.c) {
        auto [p, q, s] = k;
        Form<S> f = basis_act(p, basis_act(q, basis_act(s, a)));
        GaussRat gqs = basis_pair(d, q, s), gps = basis_pair(d, p, s), gpq = basis_pair(d, p, q);
        if (!gqs.is_zero()) f -= S(gqs) * basis_act(p, a);
        if (!gps.is_zero()) f += S(gps) * basis_act(q, a);
        if (!gpq.is_zero()) f -= S(gpq) * basis_act(s, a);
        r += w * f;
    }
    return r;
}

/// Image of a trivector under a linear map of T + T*.
template <class S>
TriVec<S> transform(const Mat<S>& A, const TriVec<S>& t) {
    TriVec<S> r(t.chart);
    for (const auto& [k, w] : t.c) {
        GenVec<S> x(t.chart), y(t.chart), z(t.chart);
        for (int i = 0; i < A.rows; ++i) {
            x.c[static_cast<size_t>(i)] = A(i, k[0]);
            y.c[static_cast<size_t>(i)] = A(i, k[1]);
            z.c[static_cast<size_t>(i)] = A(i, k[2]);
        }
        r = r + wedge3(x, y, z, w);
    }
    return r;
}

// ---- brackets ------------------------------------------------------------

/// Lie bracket of the vector parts.
template <class S>
std::vector<S> lie_bracket(const GenVec<S>& a, const GenVec<S>& b) {
    int d = a.dim();
    std::vector<S> r(static_cast<size_t>(d), S(0));
    for (int k = 0; k < d; ++k)
        for (int j = 0; j < d; ++j) {
            if (!FieldTraits<S>::negligible(a.v(j))) r[static_cast<size_t>(k)] += a.v(j) * partial(b.v(k), j);
            if (!FieldTraits<S>::negligible(b.v(j))) r[static_cast<size_t>(k)] -= b.v(j) * partial(a.v(k), j);
        }
    return r;
}

/// Lie derivative of the covector part of b along the vector part of a.
template <class S>
std::vector<S> lie_covector(const GenVec<S>& a, const GenVec<S>& b) {
    int d = a.dim();
    std::vector<S> r(static_cast<size_t>(d), S(0));
    for (int k = 0; k < d; ++k)
        for (int j = 0; j < d; ++j) {
            if (!FieldTraits<S>::negligible(a.v(j))) r[static_cast<size_t>(k)] += a.v(j) * partial(b.xi(k), j);
            if (!FieldTraits<S>::negligible(b.xi(j))) r[static_cast<size_t>(k)] += b.xi(j) * partial(a.v(j), k);
        }
    return r;
}

template <class S>
GenVec<S> courant(const GenVec<S>& a, const GenVec<S>& b) {
    check_chart(a.chart, b.chart);
    int d = a.dim();
    GenVec<S> r(a.chart);
    auto uv = lie_bracket(a, b);
    auto la = lie_covector(a, b), lb = lie_covector(b, a);
    // i_u eta - i_v xi
    S g(0);
    for (int j = 0; j < d; ++j) g += a.v(j) * b.xi(j) - b.v(j) * a.xi(j);
    for (int k = 0; k < d; ++k) {
        r.v(k) = uv[static_cast<size_t>(k)];
        r.xi(k) = la[static_cast<size_t>(k)] - lb[static_cast<size_t>(k)] - partial(g, k) * S(GaussRat::ratio(1, 2));
    }
    return r;
}

/// Dorfman bracket [u+xi, v+eta] = [u,v] + L_u eta - i_v d xi.
template <class S>
GenVec<S> dorfman(const GenVec<S>& a, const GenVec<S>& b) {
    check_chart(a.chart, b.chart);
    int d = a.dim();
    GenVec<S> r(a.chart);
    auto uv = lie_bracket(a, b);
    auto la = lie_covector(a, b);
    for (int k = 0; k < d; ++k) {
        r.v(k) = uv[static_cast<size_t>(k)];
        S s = la[static_cast<size_t>(k)];
        // (i_v d xi)_k = sum_j v^j (d_j xi_k - d_k xi_j)
        for (int j = 0; j < d; ++j)
            if (!FieldTraits<S>::negligible(b.v(j))) s -= b.v(j) * (partial(a.xi(k), j) - partial(a.xi(j), k));
        r.xi(k) = s;
    }
    return r;
}

/// L_e a = d(e.a) + e.(d a).
template <class S>
Form<S> lie_form(const GenVec<S>& e, const Form<S>& a) {
    return ext_d(clifford_act(e, a)) + clifford_act(e, ext_d(a));
}

// ---- b and beta transforms -------------------------------------------------

template <class S>
void require_closed(const Form<S>& b) {
    if (!ext_d(b).is_zero()) throw NotClosed("b-field is not d-closed");
}

/// v + theta -> v + theta - i_v b
template <class S>
GenVec<S> ad_b(const Form<S>& b, const GenVec<S>& x) {
    require_closed(b);
    GenVec<S> r = x;
    int d = x.dim();
    for (int k = 0; k < d; ++k)
        for (int j = 0; j < d; ++j)
            if (!FieldTraits<S>::negligible(x.v(j))) r.xi(k) -= x.v(j) * two_form_entry(b, j, k);
    return r;
}

template <class S>
Form<S> ad_b(const Form<S>& b, const Form<S>& a) {
    require_closed(b);
    return wedge(form_exp(b), a);
}

/// Matrix of v + theta -> v + theta - i_v b.
template <class S>
Mat<S> ad_b_matrix(const Form<S>& b) {
    int d = b.dim();
    Mat<S> A = Mat<S>::identity(2 * d);
    for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k) A(d + k, j) = -two_form_entry(b, j, k);
    return A;
}

template <class S>
void require_bivector(const BiVec<S>& beta) {
    if (!beta.vector_only()) throw NotBivector("beta has covector components");
}

/// v + theta -> v + theta + beta#theta with (beta#theta)^i = sum_j beta^{ij} theta_j.
template <class S>
GenVec<S> ad_beta(const BiVec<S>& beta, const GenVec<S>& x) {
    require_bivector(beta);
    GenVec<S> r = x;
    int d = x.dim();
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            if (!FieldTraits<S>::negligible(x.xi(j))) r.v(i) += beta.B(i, j) * x.xi(j);
    return r;
}

template <class S>
Mat<S> ad_beta_matrix(const BiVec<S>& beta) {
    require_bivector(beta);
    int d = beta.dim();
    Mat<S> A = Mat<S>::identity(2 * d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) A(i, d + j) = beta.B(i, j);
    return A;
}

/// exp(beta) acting on forms, beta = sum_{i<j} beta^{ij} i_i i_j (nilpotent).
template <class S>
Form<S> ad_beta(const BiVec<S>& beta, const Form<S>& a) {
    require_bivector(beta);
    Form<S> result = a, term = a;
    for (int k = 1; k <= a.dim(); ++k) {
        term = clifford_act(beta, term);
        if (term.is_zero()) break;
        term = S(GaussRat::ratio(1, k)) * term;
        result += term;
    }
    return result;
}

// ---- matrices and vectors ---------------------------------------------------

template <class S>
GenVec<S> apply(const Mat<S>& A, const GenVec<S>& x) {
    return GenVec<S>(x.chart, A.apply(x.c));
}

/// Matrix whose columns are the given generalized vectors.
template <class S>
Mat<S> columns(const std::vector<GenVec<S>>& cols) {
    int m = static_cast<int>(cols.front().c.size());
    Mat<S> A(m, static_cast<int>(cols.size()));
    for (int j = 0; j < A.cols; ++j)
        for (int i = 0; i < m; ++i) A(i, j) = cols[static_cast<size_t>(j)].c[static_cast<size_t>(i)];
    return A;
}

template <class S>
GenVec<S> column(ChartPtr ch, const Mat<S>& A, int j) {
    GenVec<S> e(std::move(ch));
    for (int i = 0; i < A.rows; ++i) e.c[static_cast<size_t>(i)] = A(i, j);
    return e;
}

/// (L_e J)(a) = [e, J a]_Dor - J [e, a]_Dor on the coordinate frame.
template <class S>
Mat<S> gen_lie_J(const GenVec<S>& e, const Mat<S>& J) {
    int m = J.rows;
    Mat<S> L(m, m);
    for (int p = 0; p < m; ++p) {
        GenVec<S> a = GenVec<S>::basis(e.chart, p);
        GenVec<S> Ja = column(e.chart, J, p);
        GenVec<S> col = dorfman(e, Ja) - gkcurv::apply(J, dorfman(e, a));
        for (int i = 0; i < m; ++i) L(i, p) = col.c[static_cast<size_t>(i)];
    }
    return L;
}

/// Components of a form as a vector indexed by mask (length 2^dim).
template <class S>
std::vector<S> form_vector(const Form<S>& f) {
    std::vector<S> v(static_cast<size_t>(1u << f.dim()), S(0));
    for (const auto& [m, x] : f.c) v[m] = x;
    return v;
}

}  // namespace gkcurv
