#pragma once
// Generalized Ricci form and scalar curvature of an almost generalized Kahler
// pair (J, J_psi), with psi = e^{b + i w} of symplectic type.
//
// Theta = d((-2 J eta + J d log rho) . conj(psi)) = (P - i Q) ^ conj(psi),
// GRic = -P and GR = n P ^ w^{n-1} / w^n.
//
// The core is a template so the same pipeline runs on symbolic fields and on
// jets at a single point.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gkcurv/calibration.hpp"
#include "gkcurv/gk.hpp"
#include "gkcurv/jet.hpp"

namespace gkcurv {

template <class S>
struct CurvatureCore {
    EtaN<S> etan;
    S rho;                // <phi, conj phi> / <psi, conj psi>
    S vol_psi;            // <psi, conj psi>
    GenVec<S> X;          // -2 J eta + J d log rho
    Form<S> theta;        // d(X . conj psi)
    Form<S> P, Q, gric;   // real 2-forms
    S gr;
};

/// d log f as a covector.
template <class S>
GenVec<S> dlog(const ChartPtr& ch, const S& f) {
    GenVec<S> e(ch);
    S inv = S(1) / f;
    for (int j = 0; j < ch->dim(); ++j) {
        S fj = partial(f, j);
        if (!FieldTraits<S>::negligible(fj)) e.xi(j) = fj * inv;
    }
    return e;
}

template <class S>
S ratio_of_tops(const Form<S>& a, const Form<S>& b) {
    S d = top_coeff(b);
    if (FieldTraits<S>::negligible(d)) throw VanishingVolume("reference top form vanishes");
    return top_coeff(a) / d;
}

template <class S>
CurvatureCore<S> curvature_core(const GCStruct<S>& J, const GCStruct<S>& psi) {
    if (psi.kind != GcsKind::Symplectic) throw DimensionMismatch("psi must be of symplectic type");
    const ChartPtr& ch = J.chart;
    const int n = ch->n;
    const S I(GaussRat::I());
    CurvatureCore<S> c;
    c.etan = eta_N_extract(J, ext_d(J.phi));
    Form<S> psibar = conj(psi.phi);
    c.vol_psi = mukai_scalar(psi.phi, psibar);
    if (FieldTraits<S>::negligible(c.vol_psi)) throw VanishingVolume("<psi, conj psi> vanishes");
    S vol_phi = mukai_scalar(J.phi, conj(J.phi));
    if (FieldTraits<S>::negligible(vol_phi)) throw VanishingVolume("<phi, conj phi> vanishes");
    c.rho = vol_phi / c.vol_psi;

    c.X = gkcurv::apply(J.J(), S(-2) * c.etan.eta + dlog(ch, c.rho));
    c.theta = ext_d(clifford_act(c.X, psibar));
    Form<S> all = wedge(c.theta, form_exp(-(psi.b - I * psi.omega)));
    Form<S> s2 = degree_part(all, 2);
    if constexpr (FieldTraits<S>::exact) {
        if (!(all - s2).is_zero()) throw ExtractionResidue("d(X.conj psi) is not a 2-form times conj psi");
    }
    c.P = re(s2);
    c.Q = -im(s2);
    c.gric = -c.P;
    Form<S> wn1 = form_pow(psi.omega, n - 1);
    c.gr = S(n) * ratio_of_tops(wedge(c.P, wn1), wedge(psi.omega, wn1));
    return c;
}

/// GR^C = (i/2) <psi, Theta> / <psi, conj psi>.
template <class S>
S gr_complex_of(const CurvatureCore<S>& c, const GCStruct<S>& psi) {
    return S(GaussRat(0, mpq_class(1, 2))) * mukai_scalar(psi.phi, c.theta) / c.vol_psi;
}

/// Two-term form: (i/2)(<psi, d(Y.conj psi)> - <d(Y.psi), conj psi>) / <psi, conj psi>, Y = X/2.
template <class S>
S gr_two_term_of(const CurvatureCore<S>& c, const GCStruct<S>& psi) {
    GenVec<S> Y = S(GaussRat::ratio(1, 2)) * c.X;
    Form<S> psibar = conj(psi.phi);
    S t = mukai_scalar(psi.phi, ext_d(clifford_act(Y, psibar))) - mukai_scalar(ext_d(clifford_act(Y, psi.phi)), psibar);
    return S(GaussRat(0, mpq_class(1, 2))) * t / c.vol_psi;
}

// ---- symbolic reports ---------------------------------------------------------------

struct CurvatureReport {
    SE rho;
    Form<SE> gric, Q;
    SE gr;
    SE gr_complex, gr_two_term;
    GenVec<SE> eta;
    TriVec<SE> N;
    bool gric_closed = false;
    bool gric_real = false, q_real = false, gr_real = false;
    std::optional<SE> lambda;  // GRic = lambda w when proportional
    bool lambda_constant = false;
    bool gr_constant = false;
};

SE rho(const GCStruct<SE>& J, const GCStruct<SE>& psi);
CurvatureReport gric_gr(const GCStruct<SE>& J, const GCStruct<SE>& psi);
inline CurvatureReport gric_gr(const GKPair& p) { return gric_gr(p.J1, p.psi); }

/// Kahler oracle -d J d log rho, with J acting on 1-forms through the complex
/// structure matrix Jc on T (theta -> -theta o Jc).
Form<SE> kahler_ricci_oracle(const ChartPtr& ch, const Mat<SE>& Jc, const SE& rho);

struct Type00Curvature {
    Form<SE> gric;
    SE gr;
    SE rho;  // w1^n / w2^n
};
/// GRic = d(i_u B) with i_u w1 = d log(w1^n / w2^n); GR from P = -GRic against w2.
Type00Curvature type00_gric(const Form<SE>& B, const Form<SE>& w1, const Form<SE>& w2);

// ---- integration --------------------------------------------------------------------

/// Exact integral over the torus (all coordinates periodic): the constant term
/// of the top coefficient times (2 pi)^{2n}. Returned as the rational factor.
GaussRat integrate_torus(const Form<SE>& top);
/// Same for a function against the coordinate volume.
GaussRat integrate_torus(const SE& f, const Chart& ch);
/// Average of a trig polynomial over the angle coordinates in `mask`, exactly.
SE torus_mean(const SE& f, const Chart& ch, unsigned mask);
/// Trapezoid rule on the torus with `nodes` points per active coordinate
/// (exponentially accurate for smooth periodic integrands). Full value, no (2 pi) factor removed.
std::complex<double> integrate_torus_numeric(const std::function<std::complex<double>(const std::vector<double>&)>& f,
                                             const Chart& ch, unsigned active_mask, int nodes);
/// Gauss-Legendre quadrature over a box.
double integrate_box(const std::function<double(const std::vector<double>&)>& f, const std::vector<double>& lo,
                     const std::vector<double>& hi, int order);

// ---- moment map -----------------------------------------------------------------------

/// <mu(J), f> = i^{-n} integral of GR f <psi, conj psi>, as the rational factor of (2 pi)^{2n}.
/// `value_complex` uses GR^C in place of GR.
/// Throws NotMeanZero unless integral f <psi, conj psi> = 0.
struct MomentPairing {
    GaussRat value, value_complex;
};
MomentPairing moment_pairing(const GKPair& pair, const SE& f);

struct MomentCheck {
    std::vector<double> steps;
    std::vector<double> central;  // central differences per step
    double lhs = 0;               // Richardson limit
    double rhs = 0;
    double relative_error = 0;
    int nodes = 0;
};

struct MomentCheckOptions {
    std::vector<double> steps{1e-2, 5e-3, 2.5e-3};
    int nodes = 12;            // trapezoid points per active coordinate
    double zero_floor = 1e-12;  // |lhs|, |rhs| below this count as zero
};

/// Finite-difference check of d/dt <mu(J_t), f> = -(i)^{-n} integral tr(J (L_e J) [h, J]) <psi, conj psi> / 16,
/// J_t given by the spinor e^{t eps} phi with h = eps + conj(eps). The pairing uses Re GR^C and the
/// trace is divided by the calibrated trace-pairing constant, so both sides are in spinor normalization.
/// Values are (2 pi)^{2n}-normalized. GR_t is sampled on a trapezoid grid over the coordinates it
/// depends on; f is averaged exactly over the rest.
MomentCheck moment_derivative_check(const GKPair& pair, const SE& f, const BiVec<SE>& eps,
                                    const MomentCheckOptions& opt = {});

/// Bivector eps = sum c_ij conj(E+_i) ^ conj(E-_j) built from symbolic frames and coefficient functions.
BiVec<SE> compatible_direction(const GKPair& pair, const std::vector<std::vector<SE>>& coeffs);

}  // namespace gkcurv
