#include "gkcurv/lemmas.hpp"

#include <functional>

#include "gkcurv/calibration.hpp"
#include "gkcurv/examples.hpp"
#include "gkcurv/random.hpp"

namespace gkcurv {

namespace {

using G = GCStruct<GaussRat>;

GKPair b_shifted(const GKPair& p, const Form<SE>& b) {
    return make_gk_pair(b_transform(b, p.J1), make_symplectic(p.psi.b + b, p.psi.omega));
}

std::vector<GKPair> pool(int n) {
    std::vector<GKPair> out;
    if (n == 1) {
        auto fs = make_example("fubini_study_1").pair;
        out.push_back(make_example("flat_kahler_1").pair);
        out.push_back(fs);
        Form<SE> b(fs.chart());
        b.add(0b11, SE(GaussRat::ratio(3, 5)));
        out.push_back(b_shifted(fs, b));
    } else {
        for (const char* name : {"flat_kahler_2", "fubini_study_2", "hyperkahler_t4", "type00_perturbed_t4", "kahler_c2",
                                 "torus_poisson_t4", "cp2_three_lines"})
            out.push_back(make_example(name).pair);
    }
    return out;
}

GenVec<GaussRat> real_vec(Rng& rng, const ChartPtr& ch) {
    GenVec<GaussRat> v(ch);
    for (auto& x : v.c) x = random_rational(rng);
    return v;
}

/// A point where the pair is evaluated, plus its pointwise data.
struct Sample {
    Point pt;
    G g;                 // J1 at the point
    Form<GaussRat> psi;  // psi at the point
    GaussRat rho;
};

Sample sample(Rng& rng, const GKPair& p) {
    Point pt = chart_point(rng, *p.chart());
    Sample s{pt, eval_gcs(p.J1, pt), eval_form(p.psi.phi, pt), GaussRat(0)};
    s.rho = mukai_scalar(s.g.phi, conj(s.g.phi)) / mukai_scalar(s.psi, conj(s.psi));
    return s;
}

BiVec<GaussRat> random_c(Rng& rng, const std::vector<GenVec<GaussRat>>& E) {
    BiVec<GaussRat> c(E.front().chart);
    for (size_t i = 0; i < E.size(); ++i)
        for (size_t j = i + 1; j < E.size(); ++j) c = c + random_gauss(rng) * wedge2(E[i], E[j]);
    return c;
}

struct Runner {
    std::vector<LemmaResult>& out;
    int instances;

    void run(const std::string& name, int dim, const std::function<bool(int)>& check, const std::string& note = "") {
        LemmaResult r{name, dim, instances, 0, note, ""};
        for (int k = 0; k < instances; ++k) {
            bool ok = false;
            std::string why;
            try {
                ok = check(k);
            } catch (const std::exception& e) {
                why = e.what();
            }
            if (!ok) {
                ++r.failures;
                if (r.first_failure.empty()) r.first_failure = "instance " + std::to_string(k) + (why.empty() ? "" : ": " + why);
            }
        }
        out.push_back(std::move(r));
    }
};

}  // namespace

std::vector<LemmaResult> run_lemma_suite(uint64_t seed, int instances) {
    std::vector<LemmaResult> out;
    Runner R{out, instances};
    for (int n : {1, 2}) {
        const int dim = 2 * n;
        Rng rng(seed * 1000003u + static_cast<uint64_t>(n));
        ChartPtr flat = make_chart(n), torus = make_chart(n, true);
        ExprShape shape{3, 2, 1, true, false};

        R.run("clifford_relation", dim, [&](int k) {
            ChartPtr ch = k % 2 ? torus : flat;
            auto e1 = random_genvec(rng, ch, shape), e2 = random_genvec(rng, ch, shape);
            auto a = random_form(rng, ch, -1, shape);
            auto lhs = clifford_act(e1, clifford_act(e2, a)) + clifford_act(e2, clifford_act(e1, a));
            return (lhs - SE(2) * pair_tt(e1, e2) * a).is_zero();
        });

        R.run("sigma_d", dim, [&](int k) {
            ChartPtr ch = k % 2 ? torus : flat;
            int deg = k % (dim + 1);
            auto a = random_form(rng, ch, deg, shape);
            Form<SE> rhs = sigma(ext_d(a));
            if (deg % 2) rhs = -rhs;
            return (ext_d(sigma(a)) - rhs).is_zero();
        });

        std::vector<GKPair> pairs = pool(n);

        R.run("hJ_theta", dim, [&](int k) {
            Sample s = sample(rng, pairs[static_cast<size_t>(k) % pairs.size()]);
            const auto& J = s.g.J();
            BiVec<GaussRat> c = random_c(rng, s.g.E), cb = conj(c);
            GenVec<GaussRat> th = real_vec(rng, s.g.chart);
            GenVec<GaussRat> th10 = GaussRat::ratio(1, 2) * (th + GaussRat::I() * apply(J, th));
            GenVec<GaussRat> th01 = conj(th10);
            GenVec<GaussRat> lhs = apply(jdot(c + cb, J), th);
            GenVec<GaussRat> rhs = GaussRat(0, 2) * (apply(ad_matrix(c), th01) - apply(ad_matrix(cb), th10));
            // the identity also holds after acting on conj(psi)
            Form<GaussRat> psib = conj(s.psi);
            return lhs == rhs && clifford_act(lhs, psib) == clifford_act(rhs, psib);
        }, "checked as generalized vectors and after acting on conj(psi)");

        R.run("psi_identity", dim, [&](int k) {
            const GKPair& p = pairs[static_cast<size_t>(k) % pairs.size()];
            Sample s = sample(rng, p);
            const auto& J = s.g.J();
            BiVec<GaussRat> h = k % 2 ? random_compatible_h(rng, epm_split(p, s.pt)) : random_h(rng, s.g.E);
            GenVec<GaussRat> e = real_vec(rng, s.g.chart), th = real_vec(rng, s.g.chart);
            const Form<GaussRat>& phi = s.g.phi;
            Form<GaussRat> phib = conj(phi), psib = conj(s.psi);
            GaussRat two(2), i = GaussRat::I();
            GaussRat lhs = two * mukai_scalar(clifford_act(e, phi), clifford_act(th, clifford_act(h, phib))) / s.rho -
                           two * mukai_scalar(clifford_act(th, clifford_act(h, phi)), clifford_act(e, phib)) / s.rho;
            GenVec<GaussRat> X = apply(jdot(h, J), th);
            GaussRat rhs = i * mukai_scalar(clifford_act(e, s.psi), clifford_act(X, psib)) +
                           i * mukai_scalar(clifford_act(X, s.psi), clifford_act(e, psib));
            return lhs == rhs;
        }, "odd instances use h commuting with J_psi");

        if (n == 1) {
            R.run("n_psi_vanishes", dim, [&](int k) {
                const GKPair& p = pairs[static_cast<size_t>(k) % pairs.size()];
                Point pt = chart_point(rng, *p.chart());
                G g = eval_gcs(p.J1, pt);
                auto en = eta_N_extract(g, eval_form(ext_d(p.J1.phi), pt));
                return clifford_act(en.N, eval_form(p.psi.phi, pt)).is_zero();
            }, "Lambda^3 E = 0 in real dimension 2, so N vanishes identically");
        } else {
            GKPair ni = make_example("nonintegrable_t4").pair;
            Form<SE> dphi = ext_d(ni.J1.phi);
            int nonzero = 0;
            R.run("n_psi_vanishes", dim, [&](int) {
                Point pt = chart_point(rng, *ni.chart());
                G g = eval_gcs(ni.J1, pt);
                Form<GaussRat> dp = eval_form(dphi, pt);
                auto en = eta_N_extract(g, dp);
                if (!en.N.is_zero()) ++nonzero;
                bool decomp = clifford_act(en.eta, g.phi) + clifford_act(en.N, g.phi) == dp;
                return decomp && clifford_act(en.N, eval_form(ni.psi.phi, pt)).is_zero();
            });
            out.back().note = "almost GK pair with d(B + i w1) != 0; N != 0 at " + std::to_string(nonzero) + " of " +
                              std::to_string(instances) + " points";
        }

        R.run("trace_identity", dim, [&](int k) {
            Sample s = sample(rng, pairs[static_cast<size_t>(k) % pairs.size()]);
            BiVec<GaussRat> h1 = random_h(rng, s.g.E), h2 = random_h(rng, s.g.E);
            auto t = trace_pairing(s.g, h1, h2);
            return t.trace == GaussRat(kTracePairingConstant) * t.spinor_side && t.trace.is_real();
        }, "tr(J [h1,J] [h2,J]) = " + std::to_string(kTracePairingConstant) + " x spinor side (calibrated constant)");
    }
    return out;
}

}  // namespace gkcurv
