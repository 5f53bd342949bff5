#include "gkcurv/curvature.hpp"

#include <future>

#include <cmath>
#include <numbers>

namespace gkcurv {

namespace {

const SE kI = SE::I();

/// Clifford exponential sum t^k/k! eps^k . phi (eps nilpotent on the spinor).
template <class S>
Form<S> clifford_exp(const BiVec<S>& eps, const Form<S>& phi, const S& t) {
    Form<S> out = phi, term = phi;
    for (int k = 1; k <= phi.dim() + 1; ++k) {
        term = clifford_act(eps, term);
        if (term.is_zero()) break;
        term = (t * S(GaussRat::ratio(1, k))) * term;
        out += term;
    }
    return out;
}

/// i^{-n}
GaussRat i_pow_neg(int n) {
    static const GaussRat table[4] = {GaussRat(1), GaussRat(0, -1), GaussRat(-1), GaussRat(0, 1)};
    return table[((n % 4) + 4) % 4];
}

}  // namespace

SE rho(const GCStruct<SE>& J, const GCStruct<SE>& psi) {
    SE vp = mukai_scalar(psi.phi, conj(psi.phi));
    if (vp.is_zero()) throw VanishingVolume("<psi, conj psi> vanishes");
    SE r = mukai_scalar(J.phi, conj(J.phi)) / vp;
    if (r.is_zero()) throw VanishingVolume("<phi, conj phi> vanishes");
    return r;
}

CurvatureReport gric_gr(const GCStruct<SE>& J, const GCStruct<SE>& psi) {
    auto c = curvature_core(J, psi);
    CurvatureReport r;
    r.rho = c.rho;
    r.gric = c.gric;
    r.Q = c.Q;
    r.gr = c.gr;
    r.eta = c.etan.eta;
    r.N = c.etan.N;
    r.gr_complex = gr_complex_of(c, psi);
    r.gr_two_term = gr_two_term_of(c, psi);
    r.gric_closed = ext_d(c.gric).is_zero();
    r.gric_real = is_real(c.gric);
    r.q_real = is_real(c.Q);
    r.gr_real = c.gr.is_real();
    r.gr_constant = c.gr.is_constant();
    if (c.gric.is_zero()) {
        r.lambda = SE(0);
    } else {
        // GRic = lambda w with lambda read off the first nonzero coefficient of w
        for (const auto& [m, w] : psi.omega.c) {
            SE lam = c.gric.coeff(m) / w;
            if (c.gric == lam * psi.omega) r.lambda = lam;
            break;
        }
    }
    r.lambda_constant = r.lambda && r.lambda->is_constant();
    return r;
}

Form<SE> kahler_ricci_oracle(const ChartPtr& ch, const Mat<SE>& Jc, const SE& rho) {
    int d = Jc.rows;
    Form<SE> out(ch);
    // theta = d log rho, (J theta)_j = -sum_k theta_k Jc(k, j)
    std::vector<SE> th(static_cast<size_t>(d));
    for (int k = 0; k < d; ++k) th[static_cast<size_t>(k)] = rho.partial(k) / rho;
    std::vector<SE> jt(static_cast<size_t>(d), SE(0));
    for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k)
            if (!Jc(k, j).is_zero()) jt[static_cast<size_t>(j)] -= th[static_cast<size_t>(k)] * Jc(k, j);
    // -d(J theta)
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j)
            out.add((1u << i) | (1u << j), jt[static_cast<size_t>(i)].partial(j) - jt[static_cast<size_t>(j)].partial(i));
    return out;
}

Type00Curvature type00_gric(const Form<SE>& B, const Form<SE>& w1, const Form<SE>& w2) {
    const ChartPtr& ch = w1.chart;
    int n = ch->n, d = ch->dim();
    Type00Curvature out;
    out.rho = ratio_of_tops(form_pow(w1, n), form_pow(w2, n));
    auto W1i = inverse(two_form_matrix(w1));
    if (!W1i) throw DegenerateOmega("w1 is degenerate");
    // i_u w1 = theta  <=>  sum_k u_k W1(k, j) = theta_j
    std::vector<SE> th(static_cast<size_t>(d));
    for (int j = 0; j < d; ++j) th[static_cast<size_t>(j)] = out.rho.partial(j) / out.rho;
    Form<SE> alpha(ch);
    for (int k = 0; k < d; ++k) {
        SE uk(0);
        for (int j = 0; j < d; ++j)
            if (!th[static_cast<size_t>(j)].is_zero()) uk += th[static_cast<size_t>(j)] * (*W1i)(j, k);
        if (!uk.is_zero()) alpha += uk * interior(k, B);
    }
    out.gric = ext_d(alpha);
    Form<SE> P = -out.gric, wn1 = form_pow(w2, n - 1);
    out.gr = SE(n) * ratio_of_tops(wedge(P, wn1), wedge(w2, wn1));
    return out;
}

// ---- integration -------------------------------------------------------------------

GaussRat integrate_torus(const SE& f, const Chart& ch) {
    if (!ch.all_periodic()) throw NotExactlyIntegrable("exact integration needs a torus chart");
    if (!f.is_polynomial()) throw NotExactlyIntegrable("integrand has a non-constant denominator");
    GaussRat c(0);
    for (const auto& t : f.num().terms()) {
        bool has_x = false, constant = true;
        for (int j = 0; j < ch.dim(); ++j) {
            if (t.m.e[xslot(j)] != 0) has_x = true;
            if (t.m.e[eslot(j)] != 0) constant = false;
        }
        if (has_x) throw NotExactlyIntegrable("integrand is not periodic");
        if (constant) c += t.c;
    }
    return c / f.den().constant_value();
}

SE torus_mean(const SE& f, const Chart& ch, unsigned mask) {
    if (!f.is_polynomial()) throw NotExactlyIntegrable("integrand has a non-constant denominator");
    Poly keep;
    for (const auto& t : f.num().terms()) {
        bool drop = false;
        for (int j = 0; j < ch.dim(); ++j) {
            if (!(mask & (1u << j))) continue;
            if (!ch.periodic[static_cast<size_t>(j)] || t.m.e[xslot(j)] != 0) throw NotExactlyIntegrable("integrand is not periodic");
            if (t.m.e[eslot(j)] != 0) drop = true;
        }
        if (!drop) keep += Poly::term(t.m, t.c);
    }
    return SE::fraction(keep, f.den());
}

GaussRat integrate_torus(const Form<SE>& top) {
    return integrate_torus(top_coeff(top), *top.chart);
}

std::complex<double> integrate_torus_numeric(const std::function<std::complex<double>(const std::vector<double>&)>& f,
                                             const Chart& ch, unsigned active_mask, int nodes) {
    int d = ch.dim();
    std::vector<int> active;
    for (int j = 0; j < d; ++j)
        if (active_mask & (1u << j)) active.push_back(j);
    const double two_pi = 2 * std::numbers::pi;
    std::vector<double> xs(static_cast<size_t>(d), 0.0);
    std::vector<int> idx(active.size(), 0);
    std::complex<double> sum = 0;
    long total = 1;
    for (size_t i = 0; i < active.size(); ++i) total *= nodes;
    for (long k = 0; k < total; ++k) {
        long r = k;
        for (size_t i = 0; i < active.size(); ++i) {
            xs[static_cast<size_t>(active[i])] = two_pi * static_cast<double>(r % nodes) / nodes;
            r /= nodes;
        }
        sum += f(xs);
    }
    return sum / static_cast<double>(total) * std::pow(two_pi, d);
}

double integrate_box(const std::function<double(const std::vector<double>&)>& f, const std::vector<double>& lo,
                     const std::vector<double>& hi, int order) {
    // Gauss-Legendre nodes by Newton iteration on P_order
    std::vector<double> x(static_cast<size_t>(order)), w(static_cast<size_t>(order));
    for (int i = 0; i < order; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5)), dp = 0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1, p1 = z;
            for (int k = 2; k <= order; ++k) {
                double p2 = ((2 * k - 1) * z * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (order == 1) p0 = 1;
            dp = order * (z * p1 - p0) / (z * z - 1);
            double dz = p1 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        x[static_cast<size_t>(i)] = z;
        w[static_cast<size_t>(i)] = 2 / ((1 - z * z) * dp * dp);
    }
    size_t d = lo.size();
    std::vector<int> idx(d, 0);
    std::vector<double> pt(d);
    long total = 1;
    for (size_t i = 0; i < d; ++i) total *= order;
    double sum = 0;
    for (long k = 0; k < total; ++k) {
        long r = k;
        double wt = 1;
        for (size_t i = 0; i < d; ++i) {
            int q = static_cast<int>(r % order);
            r /= order;
            double half = (hi[i] - lo[i]) / 2;
            pt[i] = lo[i] + half * (x[static_cast<size_t>(q)] + 1);
            wt *= half * w[static_cast<size_t>(q)];
        }
        sum += wt * f(pt);
    }
    return sum;
}

// ---- moment map ---------------------------------------------------------------------

MomentPairing moment_pairing(const GKPair& pair, const SE& f) {
    const Chart& ch = *pair.chart();
    SE vol = mukai_scalar(pair.psi.phi, conj(pair.psi.phi));
    if (!integrate_torus(f * vol, ch).is_zero()) throw NotMeanZero("f is not mean-zero against <psi, conj psi>");
    auto c = curvature_core(pair.J1, pair.psi);
    MomentPairing out;
    out.value = i_pow_neg(pair.n()) * integrate_torus(c.gr * f * vol, ch);
    out.value_complex = i_pow_neg(pair.n()) * integrate_torus(gr_complex_of(c, pair.psi) * f * vol, ch);
    return out;
}

BiVec<SE> compatible_direction(const GKPair& pair, const std::vector<std::vector<SE>>& coeffs) {
    auto fr = epm_fields(pair);
    BiVec<SE> eps(pair.chart());
    for (size_t i = 0; i < fr.plus.size() && i < coeffs.size(); ++i)
        for (size_t j = 0; j < fr.minus.size() && j < coeffs[i].size(); ++j)
            if (!coeffs[i][j].is_zero()) eps = eps + coeffs[i][j] * wedge2(conj(fr.plus[i]), conj(fr.minus[j]));
    return eps;
}

MomentCheck moment_derivative_check(const GKPair& pair, const SE& f, const BiVec<SE>& eps,
                                    const MomentCheckOptions& opt) {
    const ChartPtr& ch = pair.chart();
    const Chart& C = *ch;
    const int n = pair.n();
    if (!C.all_periodic()) throw NotExactlyIntegrable("the moment-map check runs on a torus chart");
    if (n > 2) throw DimensionMismatch("pointwise jets support n <= 2");
    for (double s : opt.steps)
        if (!(s > 1e-8)) throw StepTooSmall("finite-difference step below 1e-8");

    SE vol = mukai_scalar(pair.psi.phi, conj(pair.psi.phi));
    GaussRat mean = integrate_torus(f * vol, C);
    if (!mean.is_zero()) throw NotMeanZero("f is not mean-zero against <psi, conj psi>");

    // right-hand side, exact on the torus: -(i)^{-n} integral tr(J (L_e J) [h, J]) <psi, conj psi>
    const Mat<SE>& J = pair.J1.J();
    BiVec<SE> h = eps + conj(eps);
    GenVec<SE> e = hamiltonian_element(pair, f);
    Mat<SE> T = J * gen_lie_J(e, J) * jdot(h, J);
    SE tr(0);
    for (int i = 0; i < T.rows; ++i) tr += T(i, i);
    MomentCheck out;
    out.nodes = opt.nodes;
    out.steps = opt.steps;
    GaussRat rhs = -i_pow_neg(n) * integrate_torus(tr * vol, C) / GaussRat(kTracePairingConstant);
    out.rhs = rhs.re.get_d();

    // coordinates GR_t can depend on; f is averaged exactly over the others
    unsigned mask = vol.coord_mask();
    for (const auto& [m, v] : pair.J1.phi.c) mask |= v.coord_mask();
    for (const auto& [m, v] : pair.psi.phi.c) mask |= v.coord_mask();
    for (const auto& x : eps.B.a) mask |= x.coord_mask();
    for (const auto& en : pair.J1.E)
        for (const auto& x : en.c) mask |= x.coord_mask();

    const unsigned all = (1u << C.dim()) - 1u;
    const SE fr = torus_mean(f, C, all & ~mask);
    mask |= fr.coord_mask();

    // t -> (2 pi)^{-2n} <mu(J_t), f>
    Mat<SE> adeps = ad_matrix(eps);
    auto pairing_at = [&](double t) {
        auto integrand = [&](const std::vector<double>& xs) -> std::complex<double> {
            auto jet = [&](const SE& v) { return jet_at(v, xs, 2); };
            auto conv = [&](const GCStruct<SE>& g) { return convert_gcs<JetC>(g, jet); };
            GCStruct<JetC> base = conv(pair.J1), psi = conv(pair.psi);
            BiVec<JetC> ej(ch);
            ej.B = eps.B.map(jet);
            Mat<JetC> A = adeps.map(jet);
            JetC tj = JetC::constant(t);
            GCStruct<JetC> g;
            g.kind = GcsKind::Generic;
            g.chart = ch;
            g.phi = clifford_exp(ej, base.phi, tj);
            for (const auto& x : base.E) g.E.push_back(x + tj * gkcurv::apply(A, x));  // ad_eps is nilpotent on E
            auto c = curvature_core(g, psi);
            return gr_complex_of(c, psi).v * jet(fr).v * jet(vol).v;
        };
        std::complex<double> v = integrate_torus_numeric(integrand, C, mask, opt.nodes);
        return (std::complex<double>(i_pow_neg(n).to_complex()) * v).real() / std::pow(2 * std::numbers::pi, C.dim());
    };

    std::vector<std::future<double>> plus, minus;
    for (double s : opt.steps) {
        plus.push_back(std::async(std::launch::async, pairing_at, s));
        minus.push_back(std::async(std::launch::async, pairing_at, -s));
    }
    for (size_t k = 0; k < opt.steps.size(); ++k)
        out.central.push_back((plus[k].get() - minus[k].get()) / (2 * opt.steps[k]));
    // Richardson on O(s^2) errors; assumes consecutive steps halve
    std::vector<double> r = out.central;
    for (int level = 1; r.size() > 1; ++level) {
        double f4 = std::pow(4.0, level);
        std::vector<double> next;
        for (size_t i = 0; i + 1 < r.size(); ++i) next.push_back((f4 * r[i + 1] - r[i]) / (f4 - 1));
        r = next;
    }
    out.lhs = r.front();
    double scale = std::max(std::abs(out.lhs), std::abs(out.rhs));
    // both sides at round-off level count as agreement
    out.relative_error = scale < opt.zero_floor ? 0 : std::abs(out.lhs - out.rhs) / scale;
    return out;
}

}  // namespace gkcurv
