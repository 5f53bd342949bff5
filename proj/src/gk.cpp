#include "gkcurv/gk.hpp"

#include <Eigen/Eigenvalues>
#include <limits>

#include "gkcurv/random.hpp"

namespace gkcurv {

namespace {

const SE kI = SE::I();

Mat<SE> shifted(const Mat<SE>& J, const SE& s) { return J + s * Mat<SE>::identity(J.rows); }
Mat<GaussRat> shifted(const Mat<GaussRat>& J, const GaussRat& s) { return J + s * Mat<GaussRat>::identity(J.rows); }

template <class S>
Mat<S> stack(const Mat<S>& a, const Mat<S>& b) {
    Mat<S> r(a.rows + b.rows, a.cols);
    for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j < a.cols; ++j) r(i, j) = a(i, j);
    for (int i = 0; i < b.rows; ++i)
        for (int j = 0; j < b.cols; ++j) r(a.rows + i, j) = b(i, j);
    return r;
}

template <class S>
std::vector<GenVec<S>> common_kernel(const ChartPtr& ch, const Mat<S>& a, const Mat<S>& b) {
    std::vector<GenVec<S>> out;
    for (auto& v : kernel(stack(a, b))) out.emplace_back(ch, std::move(v));
    return out;
}

/// Derivative of f along the vector part of a.
SE along(const GenVec<SE>& a, const SE& f) {
    SE r(0);
    for (int j = 0; j < a.dim(); ++j)
        if (!a.v(j).is_zero()) r += a.v(j) * f.partial(j);
    return r;
}

}  // namespace

Mat<GaussRat> eval_mat(const Mat<SE>& A, const Point& p) {
    return A.map([&](const SE& x) { return x.eval(p); });
}

GenVec<GaussRat> eval_vec(const GenVec<SE>& e, const Point& p) {
    GenVec<GaussRat> r(e.chart);
    for (size_t i = 0; i < e.c.size(); ++i) r.c[i] = e.c[i].eval(p);
    return r;
}

BiVec<GaussRat> eval_bivec(const BiVec<SE>& b, const Point& p) {
    BiVec<GaussRat> r(b.chart);
    r.B = eval_mat(b.B, p);
    return r;
}

TriVec<GaussRat> eval_trivec(const TriVec<SE>& t, const Point& p) {
    TriVec<GaussRat> r(t.chart);
    for (const auto& [k, v] : t.c) r.add(k, v.eval(p));
    return r;
}

GCStruct<GaussRat> eval_gcs(const GCStruct<SE>& g, const Point& p) {
    return convert_gcs<GaussRat>(g, [&](const SE& x) { return x.eval(p); });
}

bool sylvester_positive(const Mat<GaussRat>& M) {
    for (int k = 1; k <= M.rows; ++k) {
        Mat<GaussRat> L(k, k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) L(i, j) = M(i, j);
        GaussRat d = det(L);
        if (!d.is_real() || sgn(d.re) <= 0) return false;
    }
    return true;
}

double min_eigenvalue(const Mat<GaussRat>& M) {
    Eigen::MatrixXcd A(M.rows, M.cols);
    for (int i = 0; i < M.rows; ++i)
        for (int j = 0; j < M.cols; ++j) A(i, j) = M(i, j).to_complex();
    Eigen::MatrixXcd H = (A + A.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

GKPair make_gk_pair(GCStruct<SE> J1, GCStruct<SE> psi) {
    if (psi.kind != GcsKind::Symplectic) throw DimensionMismatch("second structure must be of symplectic type");
    check_chart(J1.chart, psi.chart);
    GKPair p{std::move(J1), std::move(psi), {}};
    p.ghat = -(p.J1.J() * p.psi.J());
    return p;
}

CompatibilityReport compatibility_check(const GKPair& pair, const std::vector<Point>& points) {
    CompatibilityReport r;
    const Mat<SE>&J1 = pair.J1.J(), &J2 = pair.psi.J();
    r.commute = J1 * J2 == J2 * J1;
    r.involution = pair.ghat * pair.ghat == Mat<SE>::identity(J1.rows);
    Mat<SE> G = pair.metric();
    r.symmetric = G == G.transpose();
    r.positive = true;
    r.min_eigenvalue = std::numeric_limits<double>::infinity();
    for (size_t k = 0; k < points.size(); ++k) {
        Mat<GaussRat> Gp = eval_mat(G, points[k]);
        r.min_eigenvalue = std::min(r.min_eigenvalue, min_eigenvalue(Gp));
        if (r.positive && !sylvester_positive(Gp)) {
            r.positive = false;
            r.failing_point = static_cast<int>(k);
        }
    }
    return r;
}

EpmFrame epm_split(const GKPair& pair, const Point& p) {
    Mat<GaussRat> J1 = eval_mat(pair.J1.J(), p), J2 = eval_mat(pair.psi.J(), p);
    GaussRat i = GaussRat::I();
    EpmFrame f;
    f.plus = common_kernel(pair.chart(), shifted(J1, i), shifted(J2, i));
    f.minus = common_kernel(pair.chart(), shifted(J1, i), shifted(J2, -i));
    int n = pair.n();
    if (static_cast<int>(f.plus.size()) != n || static_cast<int>(f.minus.size()) != n)
        throw DimensionMismatch("eigenbundles have dimensions (" + std::to_string(f.plus.size()) + ", " +
                                std::to_string(f.minus.size()) + "), expected (" + std::to_string(n) + ", " +
                                std::to_string(n) + ")");
    return f;
}

EpmFields epm_fields(const GKPair& pair) {
    const Mat<SE>&J1 = pair.J1.J(), &J2 = pair.psi.J();
    EpmFields f;
    f.plus = common_kernel(pair.chart(), shifted(J1, kI), shifted(J2, kI));
    f.minus = common_kernel(pair.chart(), shifted(J1, kI), shifted(J2, -kI));
    int n = pair.n();
    if (static_cast<int>(f.plus.size()) != n || static_cast<int>(f.minus.size()) != n)
        throw DimensionMismatch("eigenbundles do not have rank n");
    return f;
}

Type00Report type00_check(const Form<SE>& B, const Form<SE>& w1, const Form<SE>& w2, const std::vector<Point>& points) {
    Type00Report r;
    int n = w2.chart->n;
    r.four_dim = n == 2;
    if (r.four_dim) {
        r.b_w1 = wedge(B, w1).is_zero();
        r.b_w2 = wedge(B, w2).is_zero();
        r.w1_w2 = wedge(w1, w2).is_zero();
        Form<SE> bb = wedge(B, B);
        r.bb_sum = bb == wedge(w1, w1) + wedge(w2, w2);
        r.bb_nonzero = !bb.is_zero();
    }
    Mat<SE> Wp = two_form_matrix(B + kI * (w1 - w2)), Wm = two_form_matrix(B + kI * (w1 + w2));
    Mat<SE> W2 = two_form_matrix(w2);
    r.kernel_dims = r.tame = true;
    for (size_t k = 0; k < points.size() && r.kernel_dims && r.tame; ++k) {
        Mat<GaussRat> w2p = eval_mat(W2, points[k]);
        for (const Mat<SE>* W : {&Wp, &Wm}) {
            auto ker = kernel(eval_mat(*W, points[k]));
            if (static_cast<int>(ker.size()) != n) {
                r.kernel_dims = false;
                r.failing_point = static_cast<int>(k);
                break;
            }
            // Hermitian form -i w2(u_k, conj u_l) on the kernel
            int m = static_cast<int>(ker.size());
            Mat<GaussRat> H(m, m);
            for (int a = 0; a < m; ++a)
                for (int b = 0; b < m; ++b) {
                    GaussRat s(0);
                    for (int i = 0; i < w2p.rows; ++i)
                        for (int j = 0; j < w2p.cols; ++j)
                            if (!w2p(i, j).is_zero())
                                s += ker[static_cast<size_t>(a)][static_cast<size_t>(i)] * w2p(i, j) *
                                     conj(ker[static_cast<size_t>(b)][static_cast<size_t>(j)]);
                    H(a, b) = -GaussRat::I() * s;
                }
            if (!sylvester_positive(H)) {
                r.tame = false;
                r.failing_point = static_cast<int>(k);
                break;
            }
        }
    }
    return r;
}

GenVec<SE> hamiltonian_element(const GKPair& pair, const SE& f) {
    Form<SE> df = ext_d(Form<SE>(pair.chart(), f));
    GenVec<SE> e = apply(pair.psi.J(), GenVec<SE>::from_one_form(df));
    if (clifford_act(e, pair.psi.phi) != kI * wedge(df, pair.psi.phi))
        throw DecompositionFailed("J_psi(df) does not act as i df on psi");
    return e;
}

DdbarResult ddbar_pm(const GKPair& pair, const SE& f) {
    EpmFields fr = epm_fields(pair);
    const auto &P = fr.plus, &M = fr.minus;
    int n = pair.n();
    auto sz = [](int i) { return static_cast<size_t>(i); };

    // E- component of a section, by pairing against conj(E-).
    Mat<SE> G(n, n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) G(j, k) = pair_tt(M[sz(j)], conj(M[sz(k)]));
    auto Gti = inverse(G.transpose());
    if (!Gti) throw DecompositionFailed("E- meets its conjugate");
    auto minus_part_on = [&](const GenVec<SE>& x, const SE& g) {
        std::vector<SE> rhs(sz(n));
        for (int k = 0; k < n; ++k) rhs[sz(k)] = pair_tt(x, conj(M[sz(k)]));
        std::vector<SE> c = Gti->apply(rhs);
        SE s(0);
        for (int j = 0; j < n; ++j)
            if (!c[sz(j)].is_zero()) s += c[sz(j)] * along(M[sz(j)], g);
        return s;
    };

    GenVec<SE> e = hamiltonian_element(pair, f);
    GenVec<SE> e01 = SE(GaussRat::ratio(1, 2)) * (e - kI * apply(pair.J1.J(), e));
    auto sigma = [&](const GenVec<SE>& a) { return SE(2) * pair_tt(e01, a); };
    auto dsigma = [&](const GenVec<SE>& a, const GenVec<SE>& b) {
        return along(a, sigma(b)) - along(b, sigma(a)) - sigma(courant(a, b));
    };

    DdbarResult r;
    r.mixed = Mat<SE>(n, n);
    r.via_cochain = Mat<SE>(n, n);
    const SE half_i = SE(GaussRat(0, mpq_class(1, 2)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const auto &a = P[sz(i)], &b = M[sz(j)];
            r.mixed(i, j) = along(a, along(b, f)) - minus_part_on(courant(a, b), f);
            r.via_cochain(i, j) = half_i * dsigma(a, b);
        }
    r.pure_blocks_vanish = true;
    for (const auto* F : {&P, &M})
        for (int i = 0; i < n && r.pure_blocks_vanish; ++i)
            for (int j = i + 1; j < n; ++j)
                if (!dsigma((*F)[sz(i)], (*F)[sz(j)]).is_zero()) {
                    r.pure_blocks_vanish = false;
                    break;
                }

    // dual frames in conj(E+) and conj(E-): 2 <dual_i, e_k> = delta_ik
    auto dual = [&](const std::vector<GenVec<SE>>& fr) {
        Mat<SE> H(n, n);
        for (int l = 0; l < n; ++l)
            for (int k = 0; k < n; ++k) H(l, k) = SE(2) * pair_tt(conj(fr[sz(l)]), fr[sz(k)]);
        auto D = inverse(H);
        if (!D) throw DecompositionFailed("eigenbundle meets its conjugate");
        std::vector<GenVec<SE>> out;
        for (int i = 0; i < n; ++i) {
            GenVec<SE> v(pair.chart());
            for (int l = 0; l < n; ++l)
                if (!(*D)(i, l).is_zero()) v += (*D)(i, l) * conj(fr[sz(l)]);
            out.push_back(std::move(v));
        }
        return out;
    };
    auto dp = dual(P), dm = dual(M);
    r.element = BiVec<SE>(pair.chart());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (!r.mixed(i, j).is_zero()) r.element = r.element + r.mixed(i, j) * wedge2(dp[sz(i)], dm[sz(j)]);
    return r;
}

TracePairing trace_pairing(const GCStruct<GaussRat>& g, const BiVec<GaussRat>& h1, const BiVec<GaussRat>& h2) {
    const Mat<GaussRat>& J = g.J();
    for (const auto* h : {&h1, &h2}) {
        Mat<GaussRat> A = ad_matrix(*h);
        if (!(A * J + J * A).is_zero()) throw WrongBidegree("h is not in Lambda^2 E + Lambda^2 conj(E)");
    }
    Mat<GaussRat> P = J * jdot(h1, J) * jdot(h2, J);
    TracePairing t;
    t.trace = GaussRat(0);
    for (int i = 0; i < P.rows; ++i) t.trace += P(i, i);
    Form<GaussRat> a = clifford_act(h1, g.phi), b = clifford_act(h2, g.phi);
    GaussRat vol = mukai_scalar(g.phi, conj(g.phi));
    if (vol.is_zero()) throw VanishingVolume("<phi, conj phi> vanishes");
    GaussRat s = mukai_scalar(a, conj(b)) - mukai_scalar(b, conj(a));
    t.spinor_side = GaussRat(0, mpq_class(-1, 2)) * s / vol;
    return t;
}

BiVec<GaussRat> random_h(std::mt19937_64& rng, const std::vector<GenVec<GaussRat>>& frame) {
    BiVec<GaussRat> c(frame.front().chart);
    for (size_t i = 0; i < frame.size(); ++i)
        for (size_t j = i + 1; j < frame.size(); ++j) c = c + random_gauss(rng) * wedge2(frame[i], frame[j]);
    return c + conj(c);
}

BiVec<GaussRat> random_compatible_h(std::mt19937_64& rng, const EpmFrame& f) {
    BiVec<GaussRat> c(f.plus.front().chart);
    for (const auto& a : f.plus)
        for (const auto& b : f.minus) c = c + random_gauss(rng) * wedge2(a, b);
    return c + conj(c);
}

}  // namespace gkcurv
