#pragma once
// Almost generalized complex structures defined by pure spinors.
//
// J acts as -i on the annihilator E of the spinor and +i on its conjugate.
// Each constructor supplies E in closed form; Generic finds it by a kernel
// computation.

#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "gkcurv/genalg.hpp"

namespace gkcurv {

enum class GcsKind { Symplectic, ComplexVolume, BetaDeform, Generic };

template <class S>
struct GCStruct {
    GcsKind kind = GcsKind::Generic;
    ChartPtr chart;
    Form<S> phi;               // defining spinor
    std::vector<GenVec<S>> E;  // annihilator basis, 2n elements

    Form<S> b, omega;                    // Symplectic data
    std::vector<Form<S>> theta;          // ComplexVolume 1-forms
    BiVec<S> beta;                       // BetaDeform bivector
    std::shared_ptr<const GCStruct> base;

    int n() const { return chart->n; }
    int dim() const { return chart->dim(); }

    /// 4n x 4n matrix of J (computed once).
    const Mat<S>& J() const {
        std::call_once(cache_->once, [this] { cache_->J = compute_J(); });
        return cache_->J;
    }
    std::vector<GenVec<S>> Ebar() const {
        std::vector<GenVec<S>> r;
        for (const auto& e : E) r.push_back(conj(e));
        return r;
    }

private:
    struct Cache {
        std::once_flag once;
        Mat<S> J;
    };
    std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
    Mat<S> compute_J() const;
};

/// Matrix of the pairing on the coordinate frame of T + T*.
template <class S>
Mat<S> pairing_matrix(int d) {
    Mat<S> P(2 * d, 2 * d);
    for (int j = 0; j < d; ++j) {
        P(j, d + j) = S(GaussRat::ratio(1, 2));
        P(d + j, j) = S(GaussRat::ratio(1, 2));
    }
    return P;
}

/// J from an annihilator basis: -i on span(E), +i on span(conj E).
template <class S>
Mat<S> j_from_frame(const std::vector<GenVec<S>>& E) {
    int d = E.front().dim();
    std::vector<GenVec<S>> Eb;
    for (const auto& e : E) Eb.push_back(conj(e));
    Mat<S> Em = columns(E), Ebm = columns(Eb), P = pairing_matrix<S>(d);
    Mat<S> G = Em.transpose() * P * Ebm;  // G_kj = <e_k, conj e_j>
    auto Gi = inverse(G);
    if (!Gi) throw DecompositionFailed("annihilator meets its conjugate (degenerate spinor)");
    S I(GaussRat::I());
    Mat<S> A = Em * Gi->transpose() * Ebm.transpose() * P;
    Mat<S> B = Ebm * (*Gi) * Em.transpose() * P;
    return (-I) * A + I * B;
}

/// Matrix W with i_{d_k} w = sum_j W(k, j) dx_j.
template <class S>
Mat<S> two_form_matrix(const Form<S>& w) {
    int d = w.dim();
    Mat<S> W(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) W(i, j) = two_form_entry(w, i, j);
    return W;
}

template <class S>
Mat<S> symplectic_J(const Form<S>& b, const Form<S>& omega) {
    int d = omega.dim();
    Mat<S> W = two_form_matrix(omega);
    auto Wi = inverse(W);
    if (!Wi) throw DegenerateOmega("omega is degenerate");
    Mat<S> J0(2 * d, 2 * d);
    for (int k = 0; k < d; ++k)
        for (int j = 0; j < d; ++j) {
            J0(d + j, k) = -W(k, j);      // d_k -> -i_{d_k} w
            J0(j, d + k) = -(*Wi)(j, k);  // dx_k -> u with i_u w = dx_k
        }
    if (b.is_zero()) return J0;
    return ad_b_matrix(b) * J0 * ad_b_matrix(-b);
}

template <class S>
Mat<S> GCStruct<S>::compute_J() const {
    switch (kind) {
        case GcsKind::Symplectic:
            return symplectic_J(b, omega);
        case GcsKind::BetaDeform:
            return ad_beta_matrix(beta) * base->J() * ad_beta_matrix(-beta);
        default:
            return j_from_frame(E);
    }
}

template <class S>
bool is_zero_or_closed(const Form<S>& b) {
    return !b.chart || b.is_zero() || ext_d(b).is_zero();
}

template <class S>
GCStruct<S> make_symplectic(const Form<S>& b, const Form<S>& omega) {
    check_chart(b.chart ? b.chart : omega.chart, omega.chart);
    if (!is_zero_or_closed(b)) throw NotClosed("b-field is not d-closed");
    auto Wi = inverse(two_form_matrix(omega));
    if (!Wi) throw DegenerateOmega("omega is degenerate");
    GCStruct<S> g;
    g.kind = GcsKind::Symplectic;
    g.chart = omega.chart;
    g.b = b.chart ? b : Form<S>(omega.chart);
    g.omega = omega;
    Form<S> B = g.b + S(GaussRat::I()) * omega;
    g.phi = form_exp(B);
    int d = g.dim();
    for (int k = 0; k < d; ++k) {
        GenVec<S> e = GenVec<S>::vec(g.chart, k);
        for (int j = 0; j < d; ++j) e.xi(j) = -two_form_entry(B, k, j);
        g.E.push_back(std::move(e));
    }
    return g;
}

/// Complex structure given by n complex 1-forms theta_k (the (1,0)-coframe).
template <class S>
GCStruct<S> make_complex_volume(const std::vector<Form<S>>& theta) {
    GCStruct<S> g;
    g.kind = GcsKind::ComplexVolume;
    g.chart = theta.front().chart;
    g.theta = theta;
    int d = g.dim();
    if (static_cast<int>(theta.size()) != g.n()) throw DimensionMismatch("need n one-forms");
    Form<S> phi(g.chart, S(1));
    Mat<S> T(g.n(), d);
    for (int k = 0; k < g.n(); ++k) {
        phi = wedge(phi, theta[static_cast<size_t>(k)]);
        GenVec<S> cov = GenVec<S>::from_one_form(theta[static_cast<size_t>(k)]);
        for (int j = 0; j < d; ++j) T(k, j) = cov.xi(j);
        g.E.push_back(std::move(cov));
    }
    if (phi.is_zero()) throw ZeroSpinor("the one-forms are linearly dependent");
    for (auto& v : kernel(T)) {
        GenVec<S> e(g.chart);
        for (int j = 0; j < d; ++j) e.v(j) = v[static_cast<size_t>(j)];
        g.E.push_back(std::move(e));
    }
    g.phi = std::move(phi);
    return g;
}

template <class S>
GCStruct<S> make_beta_deform(const BiVec<S>& beta, const GCStruct<S>& base) {
    require_bivector(beta);
    GCStruct<S> g;
    g.kind = GcsKind::BetaDeform;
    g.chart = base.chart;
    g.beta = beta;
    g.base = std::make_shared<const GCStruct<S>>(base);
    g.phi = ad_beta(beta, base.phi);
    for (const auto& e : base.E) g.E.push_back(ad_beta(beta, e));
    return g;
}

/// Spinor e^C for a complex 2-form C (closed or not); annihilator d_k - i_{d_k} C.
template <class S>
GCStruct<S> make_exp_two_form(const Form<S>& C) {
    GCStruct<S> g;
    g.kind = GcsKind::Generic;
    g.chart = C.chart;
    g.phi = form_exp(C);
    int d = g.dim();
    for (int k = 0; k < d; ++k) {
        GenVec<S> e = GenVec<S>::vec(g.chart, k);
        for (int j = 0; j < d; ++j) e.xi(j) = -two_form_entry(C, k, j);
        g.E.push_back(std::move(e));
    }
    return g;
}

/// Matrix of the Clifford action p -> e_p . phi (rows: multi-indices).
template <class S>
Mat<S> clifford_matrix(const Form<S>& phi) {
    int d = phi.dim(), rows = 1 << d;
    Mat<S> A(rows, 2 * d);
    for (int p = 0; p < 2 * d; ++p)
        for (const auto& [m, v] : basis_act(p, phi).c) A(static_cast<int>(m), p) = v;
    return A;
}

template <class S>
GCStruct<S> make_generic(const Form<S>& phi, std::vector<GenVec<S>> frame = {}) {
    GCStruct<S> g;
    g.kind = GcsKind::Generic;
    g.chart = phi.chart;
    g.phi = phi;
    if (frame.empty()) {
        for (auto& v : kernel(clifford_matrix(phi))) g.E.emplace_back(g.chart, std::move(v));
        if (static_cast<int>(g.E.size()) != g.dim()) throw DecompositionFailed("spinor is not pure");
    } else {
        g.E = std::move(frame);
    }
    return g;
}

// ---- pointwise tests ---------------------------------------------------------

struct PurityReport {
    bool pure = false;
    bool nondegenerate = false;
    std::vector<GenVec<GaussRat>> annihilator;
};

/// Purity and nondegeneracy of a spinor evaluated at a point.
inline PurityReport purity_nondeg(const Form<GaussRat>& phi) {
    if (phi.is_zero()) throw ZeroSpinor("spinor vanishes at the point");
    PurityReport r;
    for (auto& v : kernel(clifford_matrix(phi))) r.annihilator.emplace_back(phi.chart, std::move(v));
    r.pure = static_cast<int>(r.annihilator.size()) == phi.dim();
    std::vector<GenVec<GaussRat>> both = r.annihilator;
    for (const auto& e : r.annihilator) both.push_back(conj(e));
    r.nondegenerate = r.pure && rank(columns(both)) == 2 * phi.dim();
    return r;
}

/// Minimal degree present in the spinor at a point.
inline int type_number(const Form<GaussRat>& phi) {
    if (phi.is_zero()) throw ZeroSpinor("spinor vanishes at the point");
    int t = phi.dim();
    for (const auto& [m, v] : phi.c) t = std::min(t, degree_of(m));
    return t;
}

// ---- eta / N -----------------------------------------------------------------

template <class S>
struct EtaN {
    GenVec<S> eta, eta01;  // real eta and its conj(E) component
    TriVec<S> N, N03;      // real N and its Lambda^3 conj(E) component
    std::vector<S> c1;     // coefficients of eta01 in the conj(E) frame
    std::vector<S> c3;     // coefficients of N03 on increasing triples
};

/// Increasing triples of {0..k-1}.
inline std::vector<std::array<int, 3>> triples(int k) {
    std::vector<std::array<int, 3>> t;
    for (int a = 0; a < k; ++a)
        for (int b = a + 1; b < k; ++b)
            for (int c = b + 1; c < k; ++c) t.push_back({a, b, c});
    return t;
}

/// Unique solution of d phi = (eta01 + N03) . phi with eta01 in conj(E), N03 in
/// Lambda^3 conj(E). The pairing <conj(e_I) phi, e_J conj(phi)> is block
/// diagonal in |I| = |J|, which gives two small square systems.
template <class S>
EtaN<S> eta_N_extract(const GCStruct<S>& g, const Form<S>& dphi) {
    const int k = g.dim();
    auto sz = [](int i) { return static_cast<size_t>(i); };
    EtaN<S> out;
    out.eta01 = GenVec<S>(g.chart);
    out.N03 = TriVec<S>(g.chart);
    out.c1.assign(sz(k), S(0));
    auto tri = triples(k);
    out.c3.assign(tri.size(), S(0));
    if (dphi.is_zero()) {
        out.eta = out.eta01;
        out.N = out.N03;
        return out;
    }

    const Form<S> phibar = conj(g.phi);
    std::vector<GenVec<S>> Eb = g.Ebar();
    std::vector<Form<S>> a1, b1;  // conj(e_i).phi and e_i.conj(phi)
    for (int i = 0; i < k; ++i) {
        a1.push_back(clifford_act(Eb[sz(i)], g.phi));
        b1.push_back(clifford_act(g.E[sz(i)], phibar));
    }

    auto block = [&](const std::vector<Form<S>>& a, const std::vector<Form<S>>& b) -> std::vector<S> {
        int m = static_cast<int>(a.size());
        if (m == 0) return {};
        Mat<S> M(m, m);
        std::vector<S> rhs(sz(m));
        for (int r = 0; r < m; ++r) {
            for (int c = 0; c < m; ++c) M(r, c) = mukai_scalar(a[sz(c)], b[sz(r)]);
            rhs[sz(r)] = mukai_scalar(dphi, b[sz(r)]);
        }
        auto x = solve(M, rhs);
        if (!x) throw DecompositionFailed("pairing system is inconsistent");
        return *x;
    };

    out.c1 = block(a1, b1);
    Form<S> residual = dphi;
    for (int i = 0; i < k; ++i) {
        const S& c = out.c1[sz(i)];
        if (FieldTraits<S>::negligible(c)) continue;
        out.eta01 += c * Eb[sz(i)];
        residual -= c * a1[sz(i)];
    }
    // the degree-3 system is only needed when eta does not account for d phi
    if (!residual.is_zero()) {
        std::vector<Form<S>> a3, b3;
        for (const auto& t : tri) {
            a3.push_back(clifford_act(Eb[sz(t[0])], clifford_act(Eb[sz(t[1])], a1[sz(t[2])])));
            b3.push_back(clifford_act(g.E[sz(t[0])], clifford_act(g.E[sz(t[1])], b1[sz(t[2])])));
        }
        out.c3 = block(a3, b3);
        for (size_t t = 0; t < tri.size(); ++t) {
            const S& c = out.c3[t];
            if (FieldTraits<S>::negligible(c)) continue;
            out.N03 = out.N03 + wedge3(Eb[sz(tri[t][0])], Eb[sz(tri[t][1])], Eb[sz(tri[t][2])], c);
            residual -= c * a3[t];
        }
        if (!residual.is_zero()) throw DecompositionFailed("d(phi) is not of the form (eta + N).phi");
    }
    out.eta = out.eta01 + conj(out.eta01);
    out.N = out.N03 + conj(out.N03);
    return out;
}

template <class S>
EtaN<S> eta_N_extract(const GCStruct<S>& g) {
    return eta_N_extract(g, ext_d(g.phi));
}

template <class S>
bool integrable(const GCStruct<S>& g) {
    return eta_N_extract(g).N.is_zero();
}

/// The structure transported by a closed b-field: spinor e^b ^ phi, frame Ad_{e^b} E.
template <class S>
GCStruct<S> b_transform(const Form<S>& b, const GCStruct<S>& g) {
    require_closed(b);
    if (g.kind == GcsKind::Symplectic) return make_symplectic(g.b + b, g.omega);
    std::vector<GenVec<S>> frame;
    for (const auto& e : g.E) frame.push_back(ad_b(b, e));
    return make_generic(ad_b(b, g.phi), std::move(frame));
}

/// Map a structure's data through a coefficient conversion (e.g. to jets).
template <class T, class S, class F>
GCStruct<T> convert_gcs(const GCStruct<S>& g, F&& fn) {
    auto form = [&](const Form<S>& f) {
        Form<T> r(f.chart);
        for (const auto& [m, v] : f.c) r.add(m, fn(v));
        return r;
    };
    auto vec = [&](const GenVec<S>& e) {
        GenVec<T> r(e.chart);
        for (size_t i = 0; i < e.c.size(); ++i) r.c[i] = fn(e.c[i]);
        return r;
    };
    GCStruct<T> out;
    out.kind = g.kind == GcsKind::Symplectic ? GcsKind::Symplectic : GcsKind::Generic;
    out.chart = g.chart;
    out.phi = form(g.phi);
    for (const auto& e : g.E) out.E.push_back(vec(e));
    if (g.kind == GcsKind::Symplectic) {
        out.b = form(g.b);
        out.omega = form(g.omega);
    }
    return out;
}

}  // namespace gkcurv
