#include "gkcurv/runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "gkcurv/calibration.hpp"
#include "gkcurv/curvature.hpp"
#include "gkcurv/random.hpp"

namespace gkcurv {

bool Report::all_pass() const {
    for (const auto& t : tasks)
        if (t.status != "pass") return false;
    return true;
}

Json float_json(double v, int precision) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", precision, v);
    return Json{{"float", buf}};
}

namespace {

[[noreturn]] void bad_param(size_t index, const std::string& key, const std::string& what) {
    throw SceneError("tasks[" + std::to_string(index) + "]." + key + ": " + what);
}

/// Shared state for one run: the scene, lazily computed curvature, helpers.
class Context {
public:
    Context(const Scene& s, const RunOptions& opt) : s_(s), opt_(opt) {}

    const Scene& scene() const { return s_; }
    const Chart& chart() const { return *s_.chart; }
    int precision() const { return opt_.precision; }

    const CurvatureReport& curvature() {
        if (!curv_) curv_ = gric_gr(s_.pair);
        return *curv_;
    }
    std::string str(const SE& e) const { return expr_str(e, chart()); }

private:
    const Scene& s_;
    RunOptions opt_;
    std::optional<CurvatureReport> curv_;
};

/// Accessors for task parameters with field-qualified errors.
struct Params {
    const Json& j;
    size_t index;

    bool has(const char* k) const { return j.contains(k); }
    bool flag(const char* k, bool def = false) const {
        if (!has(k)) return def;
        if (!j[k].is_boolean()) bad_param(index, k, "expected true or false");
        return j[k].get<bool>();
    }
    int count(const char* k, int def) const {
        if (!has(k)) return def;
        if (!j[k].is_number_integer() || j[k].get<long long>() < 0 || j[k].get<long long>() > 100000)
            bad_param(index, k, "expected a nonnegative integer");
        return j[k].get<int>();
    }
    double real(const char* k, double def) const {
        if (!has(k)) return def;
        if (!j[k].is_number()) bad_param(index, k, "expected a number");
        return j[k].get<double>();
    }
    SE scalar(const char* k, const Chart& ch) const {
        return parse_scalar(j.at(k), ch, "tasks[" + std::to_string(index) + "]." + k);
    }
    Point point(const char* k, const Chart& ch) const {
        if (!has(k)) bad_param(index, k, "missing field");
        return parse_point(j[k], ch, "tasks[" + std::to_string(index) + "]." + k);
    }
};

using Check = std::function<void(Context&, const Params&, Rng&, TaskResult&)>;

void set_status(TaskResult& r, bool ok) { r.status = ok ? "pass" : "fail"; }

std::vector<Point> sample_points(Rng& rng, const Chart& ch, int k) {
    std::vector<Point> pts;
    for (int i = 0; i < k; ++i) pts.push_back(chart_point(rng, ch));
    return pts;
}

// ---- compatibility, rho, eta/N, type number ---------------------------------------------

void task_compatibility(Context& cx, const Params& p, Rng& rng, TaskResult& r) {
    auto rep = compatibility_check(cx.scene().pair, sample_points(rng, cx.chart(), p.count("points", 5)));
    r.values["commute"] = rep.commute;
    r.values["involution"] = rep.involution;
    r.values["symmetric"] = rep.symmetric;
    r.values["positive"] = rep.positive;
    r.values["min_eigenvalue"] = float_json(rep.min_eigenvalue, cx.precision());
    if (rep.failing_point >= 0) r.values["failing_point"] = rep.failing_point;
    set_status(r, rep.ok());
}

void task_rho(Context& cx, const Params& p, Rng&, TaskResult& r) {
    SE v = rho(cx.scene().pair.J1, cx.scene().pair.psi);
    r.values["rho"] = cx.str(v);
    bool ok = true;
    if (p.has("expect")) {
        SE want = p.scalar("expect", cx.chart());
        r.values["expected"] = cx.str(want);
        ok = v == want;
    }
    if (p.has("expect_proportional")) {
        SE q = v / p.scalar("expect_proportional", cx.chart());
        r.values["ratio"] = cx.str(q);
        ok = ok && q.is_constant() && !q.is_zero();
    }
    set_status(r, ok);
}

void task_eta_n(Context& cx, const Params& p, Rng& rng, TaskResult& r) {
    const GKPair& pair = cx.scene().pair;
    int pointwise = p.count("pointwise", 0);
    bool eta_zero = true, n_zero = true, n_psi = true;
    if (pointwise > 0) {
        Form<SE> dphi = ext_d(pair.J1.phi);
        Json per = Json::array();
        for (const auto& pt : sample_points(rng, cx.chart(), pointwise)) {
            auto g = eval_gcs(pair.J1, pt);
            auto en = eta_N_extract(g, eval_form(dphi, pt));
            eta_zero &= en.eta.is_zero();
            n_zero &= en.N.is_zero();
            bool np = clifford_act(en.N, eval_form(pair.psi.phi, pt)).is_zero();
            n_psi &= np;
            per.push_back(Json{{"eta_zero", en.eta.is_zero()}, {"n_zero", en.N.is_zero()}, {"n_psi_zero", np}});
        }
        r.values["points"] = per;
        r.notes.push_back("eta and N extracted from the exact value of d phi at random points");
    } else {
        auto en = eta_N_extract(pair.J1);
        eta_zero = en.eta.is_zero();
        n_zero = en.N.is_zero();
        n_psi = clifford_act(en.N, pair.psi.phi).is_zero();
        r.values["eta"] = vector_field_json(en.eta);
    }
    r.values["eta_zero"] = eta_zero;
    r.values["n_zero"] = n_zero;
    r.values["n_psi_zero"] = n_psi;
    bool ok = true;
    if (p.has("expect_eta_zero")) ok &= eta_zero == p.flag("expect_eta_zero");
    if (p.has("expect_n_zero")) ok &= n_zero == p.flag("expect_n_zero");
    if (p.flag("check_n_psi")) ok &= n_psi;
    set_status(r, ok);
}

void task_type_number(Context& cx, const Params& p, Rng&, TaskResult& r) {
    Point pt = p.point("point", cx.chart());
    auto phi = eval_form(cx.scene().pair.J1.phi, pt);
    int t = type_number(phi);
    auto pure = purity_nondeg(phi);
    r.values["type"] = t;
    r.values["pure"] = pure.pure;
    r.values["nondegenerate"] = pure.nondegenerate;
    bool ok = pure.pure && pure.nondegenerate;
    if (p.has("expect")) {
        int want = p.count("expect", 0);
        r.values["expected"] = want;
        ok &= t == want;
    }
    set_status(r, ok);
}

// ---- curvature ----------------------------------------------------------------------------

/// J restricted to T for a structure whose generalized J is block diagonal.
std::optional<Mat<SE>> tangent_block(const Mat<SE>& J, int d) {
    Mat<SE> Jc(d, d);
    for (int i = 0; i < 2 * d; ++i)
        for (int j = 0; j < 2 * d; ++j) {
            bool diag = (i < d) == (j < d);
            if (!diag && !J(i, j).is_zero()) return std::nullopt;
            if (i < d && j < d) Jc(i, j) = J(i, j);
        }
    return Jc;
}

void task_gric_gr(Context& cx, const Params& p, Rng&, TaskResult& r) {
    const auto& c = cx.curvature();
    r.values["rho"] = cx.str(c.rho);
    r.values["gric"] = form_json(c.gric);
    r.values["gr"] = cx.str(c.gr);
    r.values["gric_closed"] = c.gric_closed;
    r.values["gric_real"] = c.gric_real;
    r.values["gr_constant"] = c.gr_constant;
    if (c.lambda) r.values["lambda"] = cx.str(*c.lambda);
    r.values["lambda_constant"] = c.lambda_constant;
    bool ok = c.gric_closed && c.gric_real;
    if (p.flag("expect_gric_zero")) ok &= c.gric.is_zero();
    if (p.has("expect_gr")) ok &= c.gr == p.scalar("expect_gr", cx.chart());
    if (p.flag("expect_einstein")) {
        bool positive = c.lambda && c.lambda->is_constant() && c.lambda->constant_value().is_real() &&
                        sgn(c.lambda->constant_value().re) > 0;
        ok &= c.lambda_constant && positive;
    }
    if (p.flag("kahler_oracle")) {
        int d = cx.chart().dim();
        auto Jc = tangent_block(cx.scene().pair.J1.J(), d);
        if (!Jc) {
            r.notes.push_back("kahler oracle skipped: J1 is not of complex type");
            ok = false;
        } else {
            Form<SE> oracle = kahler_ricci_oracle(cx.scene().chart, *Jc, c.rho);
            bool agree = oracle == c.gric;
            r.values["oracle_agrees"] = agree;
            if (!agree) r.values["oracle"] = form_json(oracle);
            ok &= agree;
        }
    }
    if (p.has("quoted_lambda")) {
        r.values["quoted_lambda"] = p.j["quoted_lambda"];
        r.notes.push_back("quoted constant is convention dependent; the measured lambda is the engine's normalization");
    }
    set_status(r, ok);
}

void task_gr_complex(Context& cx, const Params& p, Rng&, TaskResult& r) {
    const auto& c = cx.curvature();
    r.values["gr_complex"] = cx.str(c.gr_complex);
    r.values["gr_two_term"] = cx.str(c.gr_two_term);
    SE factor(GaussRat::ratio(kGrComplexNum, kGrComplexDen));
    bool normalized = c.gr_complex.re() == factor * c.gr;
    r.values["re_matches_calibrated_multiple_of_gr"] = normalized;
    bool ok = normalized;
    if (p.has("expect")) ok &= c.gr_complex == p.scalar("expect", cx.chart());
    set_status(r, ok);
}

void task_type00(Context& cx, const Params& p, Rng& rng, TaskResult& r) {
    if (!cx.scene().type00) throw SceneError("tasks[" + std::to_string(p.index) + "]: scene is not of type (0,0)");
    const auto& t = *cx.scene().type00;
    auto chk = type00_check(t.B, t.w1, t.w2, sample_points(rng, cx.chart(), p.count("points", 5)));
    auto closed = type00_gric(t.B, t.w1, t.w2);
    const auto& c = cx.curvature();
    r.values["conditions"] = Json{{"b_w1", chk.b_w1},         {"b_w2", chk.b_w2},       {"w1_w2", chk.w1_w2},
                                  {"bb_sum", chk.bb_sum},     {"bb_nonzero", chk.bb_nonzero},
                                  {"kernel_dims", chk.kernel_dims}, {"tame", chk.tame}};
    r.values["rho"] = cx.str(closed.rho);
    r.values["gric_closed_formula"] = form_json(closed.gric);
    r.values["gr_closed_formula"] = cx.str(closed.gr);
    bool routes = closed.gric == c.gric && closed.gr == c.gr;
    r.values["routes_agree"] = routes;
    bool ok = chk.ok() && routes;
    if (p.has("expect_gric_zero")) {
        bool want = p.flag("expect_gric_zero");
        ok &= closed.gric.is_zero() == want && c.gric.is_zero() == want;
        if (want) ok &= closed.gr.is_zero() && c.gr.is_zero();
    }
    if (p.has("expect_rho")) ok &= closed.rho == p.scalar("expect_rho", cx.chart());
    set_status(r, ok);
}

// ---- torus deformation ------------------------------------------------------------------------

Form<SE> contract(const GenVec<SE>& V, const Form<SE>& a) {
    Form<SE> r(a.chart);
    for (int j = 0; j < a.dim(); ++j)
        if (!V.v(j).is_zero()) r += V.v(j) * interior(j, a);
    return r;
}

void task_torus(Context& cx, const Params& p, Rng&, TaskResult& r) {
    if (!cx.scene().torus) throw SceneError("tasks[" + std::to_string(p.index) + "]: j1 is not a torus deformation");
    const auto& t = *cx.scene().torus;
    const GKPair& pair = cx.scene().pair;
    const ChartPtr& ch = cx.scene().chart;
    const Form<SE>& w = pair.psi.omega;
    size_t m = t.V.size();

    bool hamiltonian = true, isotropic = true;
    for (size_t i = 0; i < m; ++i) {
        hamiltonian &= contract(t.V[i], w) == ext_d(Form<SE>(ch, t.mu[i]));
        for (size_t j = i + 1; j < m; ++j) isotropic &= contract(t.V[j], contract(t.V[i], w)).is_zero();
    }
    bool weights = true;
    for (size_t i = 0; i < m; ++i)
        weights &= lie_form(t.V[i], t.base.J1.phi) == (SE::I() * SE(t.weights[i])) * t.base.J1.phi;
    r.values["weights_consistent"] = weights;
    r.values["hamiltonian"] = hamiltonian;
    r.values["isotropic"] = isotropic;

    Form<SE> b = torus_b(ch, t.mu, t.lambda);
    Form<SE> deformed = ad_beta(t.beta, t.base.psi.phi);
    Form<SE> closed_form = form_exp(b + SE::I() * w);
    bool psi_formula = deformed == closed_form;
    bool psi_matches = pair.psi.phi == closed_form;
    r.values["b"] = form_json(b);
    r.values["psi_closed_form"] = psi_formula;
    r.values["psi_matches_scene"] = psi_matches;
    bool psi_closed = ext_d(pair.psi.phi).is_zero();
    r.values["psi_closed"] = psi_closed;

    auto en = eta_N_extract(pair.J1);
    const Mat<SE>& J = pair.J1.J();
    GenVec<SE> predicted(ch);
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j) {
            if (t.lambda[i][j].is_zero()) continue;
            SE l(t.lambda[i][j]);
            predicted += (l * SE(t.weights[i])) * apply(J, t.V[j]);
            predicted -= (l * SE(t.weights[j])) * apply(J, t.V[i]);
        }
    bool eta_ok = en.eta == predicted;
    r.values["eta"] = vector_field_json(en.eta);
    r.values["eta_matches_formula"] = eta_ok;
    r.values["n_zero"] = en.N.is_zero();

    const auto& c = cx.curvature();
    auto base = gric_gr(t.base);
    bool invariant = c.gric == base.gric;
    r.values["gric"] = form_json(c.gric);
    r.values["gric_equals_undeformed"] = invariant;
    set_status(r, weights && hamiltonian && isotropic && psi_formula && psi_matches && psi_closed && eta_ok && en.N.is_zero() &&
                      invariant);
}

// ---- invariance -----------------------------------------------------------------------------------

GenVec<SE> pull_vec(const GenVec<SE>& e, const AffineMap& F, const Mat<GaussRat>& A, const Mat<GaussRat>& Ainv) {
    int d = e.dim();
    GenVec<SE> r(e.chart);
    std::vector<SE> v(static_cast<size_t>(d)), xi(static_cast<size_t>(d));
    for (int j = 0; j < d; ++j) {
        v[static_cast<size_t>(j)] = pullback_affine(e.v(j), F);
        xi[static_cast<size_t>(j)] = pullback_affine(e.xi(j), F);
    }
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            if (!Ainv(i, j).is_zero()) r.v(i) += SE(Ainv(i, j)) * v[static_cast<size_t>(j)];
            if (!A(j, i).is_zero()) r.xi(i) += SE(A(j, i)) * xi[static_cast<size_t>(j)];
        }
    return r;
}

GCStruct<SE> pull_gcs(const GCStruct<SE>& g, const AffineMap& F, const Mat<GaussRat>& A, const Mat<GaussRat>& Ainv) {
    if (g.kind == GcsKind::Symplectic) return make_symplectic(pullback_affine(g.b, F), pullback_affine(g.omega, F));
    std::vector<GenVec<SE>> frame;
    for (const auto& e : g.E) frame.push_back(pull_vec(e, F, A, Ainv));
    return make_generic(pullback_affine(g.phi, F), std::move(frame));
}

void task_invariance(Context& cx, const Params& p, Rng& rng, TaskResult& r) {
    const GKPair& pair = cx.scene().pair;
    const ChartPtr& ch = cx.scene().chart;
    const SE& gr = cx.curvature().gr;
    int d = ch->dim();

    int nb = p.count("b_fields", 20), nb_ok = 0;
    ExprShape shape{2, 2, 1, false, false};
    for (int k = 0; k < nb; ++k) {
        Form<SE> b = ext_d(random_form(rng, ch, 1, shape));
        GKPair q = make_gk_pair(b_transform(b, pair.J1), make_symplectic(pair.psi.b + b, pair.psi.omega));
        if (gric_gr(q).gr == gr) ++nb_ok;
    }

    int na = p.count("affine", 20), na_ok = 0;
    for (int k = 0; k < na; ++k) {
        AffineMap F;
        Mat<GaussRat> A(d, d);
        std::optional<Mat<GaussRat>> Ainv;
        while (!Ainv) {
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) A(i, j) = ch->periodic[static_cast<size_t>(i)] || ch->periodic[static_cast<size_t>(j)]
                                                           ? GaussRat(i == j ? 1 : 0)
                                                           : random_rational(rng, 3, 2);
            Ainv = inverse(A);
        }
        F.A.assign(static_cast<size_t>(d), std::vector<GaussRat>(static_cast<size_t>(d)));
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) F.A[static_cast<size_t>(i)][static_cast<size_t>(j)] = A(i, j);
        F.shift = chart_point(rng, *ch);
        GKPair q = make_gk_pair(pull_gcs(pair.J1, F, A, *Ainv), pull_gcs(pair.psi, F, A, *Ainv));
        if (gric_gr(q).gr == pullback_affine(gr, F)) ++na_ok;
    }
    r.values["b_fields"] = Json{{"tested", nb}, {"invariant", nb_ok}};
    r.values["affine_maps"] = Json{{"tested", na}, {"equivariant", na_ok}};
    r.notes.push_back("b-fields are d of random polynomial 1-forms; affine maps are random rational and invertible");
    set_status(r, nb_ok == nb && na_ok == na);
}

// ---- moment map -------------------------------------------------------------------------------------

SE mean_zero(const SE& f, const GKPair& pair, const Chart& ch) {
    SE vol = mukai_scalar(pair.psi.phi, conj(pair.psi.phi));
    return f - SE(integrate_torus(f * vol, ch) / integrate_torus(vol, ch));
}

void task_moment_pairing(Context& cx, const Params& p, Rng&, TaskResult& r) {
    SE f = p.scalar("f", cx.chart());
    if (p.flag("subtract_mean")) f = mean_zero(f, cx.scene().pair, cx.chart());
    r.values["f"] = cx.str(f);
    auto mp = moment_pairing(cx.scene().pair, f);
    r.values["pairing"] = mp.value.str();
    r.values["pairing_complex"] = mp.value_complex.str();
    r.notes.push_back("values are rational multiples of (2 pi)^(2n)");
    bool ok = true;
    if (p.has("expect")) ok = mp.value == parse_rational(p.j["expect"], "tasks[" + std::to_string(p.index) + "].expect");
    set_status(r, ok);
}

/// Distinct frequency vectors (up to sign) of a trig polynomial's numerator.
std::vector<std::vector<int>> frequencies(const SE& f, int d) {
    std::set<std::vector<int>> seen;
    for (const auto& term : f.num().terms()) {
        std::vector<int> k(static_cast<size_t>(d));
        bool nonzero = false;
        for (int j = 0; j < d; ++j) {
            k[static_cast<size_t>(j)] = term.m.e[static_cast<size_t>(eslot(j))];
            nonzero |= k[static_cast<size_t>(j)] != 0;
        }
        if (!nonzero) continue;
        auto neg = k;
        for (auto& v : neg) v = -v;
        if (!seen.count(neg)) seen.insert(k);
    }
    return {seen.begin(), seen.end()};
}

int support(const std::vector<int>& k) {
    int s = 0;
    for (int v : k) s += v != 0;
    return s;
}

void task_moment_derivative(Context& cx, const Params& p, Rng& rng, TaskResult& r) {
    const GKPair& pair = cx.scene().pair;
    int n = cx.chart().n, d = cx.chart().dim();
    SE f = p.scalar("f", cx.chart());
    double tol = p.real("tolerance", 1e-6);
    int count = p.count("directions", 5);
    std::vector<std::vector<int>> ks;
    for (auto& k : frequencies(f, d))
        if (support(k) <= 3) ks.push_back(k);
    if (ks.empty()) throw SceneError("tasks[" + std::to_string(p.index) + "].f: needs a frequency in at most 3 coordinates");

    MomentCheckOptions opt;
    bool ok = true;
    double worst = 0;
    Json dirs = Json::array();
    // directions whose derivative vanishes identically (both sides at round-off) carry no
    // information; they are redrawn and counted
    int skipped = 0;
    for (int k = 0, attempts = 0; k < count && attempts < 4 * count; ++attempts) {
        const auto& freq = ks[static_cast<size_t>(rng() % ks.size())];
        std::vector<std::vector<SE>> coeffs(static_cast<size_t>(n), std::vector<SE>(static_cast<size_t>(n)));
        for (auto& row : coeffs)
            for (auto& c : row) c = SE(random_gauss(rng, 3, 2)) * (rng() % 2 ? SE::cos_lin(freq) : SE::sin_lin(freq));
        BiVec<SE> eps = compatible_direction(pair, coeffs);
        auto res = moment_derivative_check(pair, f, eps, opt);
        if (std::abs(res.lhs) < opt.zero_floor && std::abs(res.rhs) < opt.zero_floor) {
            ++skipped;
            continue;
        }
        ++k;
        Json dj;
        dj["frequency"] = freq;
        dj["lhs"] = float_json(res.lhs, cx.precision());
        dj["rhs"] = float_json(res.rhs, cx.precision());
        dj["relative_error"] = float_json(res.relative_error, cx.precision());
        Json central = Json::array();
        for (double v : res.central) central.push_back(float_json(v, cx.precision()));
        dj["central_differences"] = central;
        dirs.push_back(dj);
        worst = std::max(worst, res.relative_error);
        ok &= res.relative_error <= tol;
    }
    ok &= static_cast<int>(dirs.size()) == count;
    r.values["degenerate_skipped"] = skipped;
    r.values["directions"] = dirs;
    r.values["max_relative_error"] = float_json(worst, cx.precision());
    r.values["tolerance"] = float_json(tol, cx.precision());
    r.notes.push_back("central differences at steps 1e-2, 5e-3, 2.5e-3 with Richardson extrapolation; trapezoid rule with " +
                      std::to_string(opt.nodes) + " nodes per active coordinate");
    set_status(r, ok);
}

const std::map<std::string, Check>& checks() {
    static const std::map<std::string, Check> table = {
        {"compatibility", task_compatibility},
        {"rho", task_rho},
        {"eta_n", task_eta_n},
        {"type_number", task_type_number},
        {"gric_gr", task_gric_gr},
        {"gr_complex", task_gr_complex},
        {"type00", task_type00},
        {"torus_deformation", task_torus},
        {"invariance", task_invariance},
        {"moment_pairing", task_moment_pairing},
        {"moment_derivative", task_moment_derivative},
    };
    return table;
}

}  // namespace

Report run_scene(const Scene& scene, const RunOptions& opt) {
    Report rep;
    rep.scene = scene.name;
    rep.seed = opt.seed.value_or(scene.seed);
    Context cx(scene, opt);
    for (size_t k = 0; k < scene.tasks.size(); ++k) {
        const Task& t = scene.tasks[k];
        TaskResult r;
        r.op = t.op;
        auto it = checks().find(t.op);
        if (it == checks().end()) throw SceneError("tasks[" + std::to_string(k) + "].op: unknown operation \"" + t.op + "\"");
        Rng rng(rep.seed * 0x9E3779B97F4A7C15ull + k);
        auto start = std::chrono::steady_clock::now();
        try {
            it->second(cx, Params{t.params, k}, rng, r);
        } catch (const SceneError&) {
            throw;
        } catch (const std::exception& e) {
            r.status = "error";
            r.notes.push_back(e.what());
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        rep.tasks.push_back(std::move(r));
    }
    return rep;
}

std::string emit_json(const Report& r) {
    Json doc;
    doc["schema"] = "gkcurv-report/1";
    doc["scene"] = r.scene;
    doc["seed"] = r.seed;
    doc["status"] = r.all_pass() ? "pass" : "fail";
    Json ts = Json::array();
    for (size_t k = 0; k < r.tasks.size(); ++k) {
        const auto& t = r.tasks[k];
        ts.push_back(Json{{"index", k}, {"op", t.op}, {"status", t.status}, {"values", t.values}, {"notes", t.notes}});
    }
    doc["tasks"] = ts;
    return doc.dump(2) + "\n";
}

namespace {

std::string flat(const Json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_object() && v.size() == 1 && v.contains("float")) return v["float"].get<std::string>();
    return v.dump();
}

}  // namespace

std::string emit_text(const Report& r) {
    std::ostringstream os;
    os << "scene " << r.scene << " (seed " << r.seed << ")\n";
    char buf[32];
    for (size_t k = 0; k < r.tasks.size(); ++k) {
        const auto& t = r.tasks[k];
        std::snprintf(buf, sizeof buf, "%.2f s", t.seconds);
        os << "[" << (t.status == "pass" ? "PASS" : t.status == "fail" ? "FAIL" : "ERROR") << "] " << k << " " << t.op
           << "  (" << buf << ")\n";
        for (const auto& [key, v] : t.values.items()) os << "    " << key << ": " << flat(v) << "\n";
        for (const auto& n : t.notes) os << "    note: " << n << "\n";
    }
    os << (r.all_pass() ? "all tasks passed" : "some tasks failed") << "\n";
    return os.str();
}

}  // namespace gkcurv
