#include "gkcurv/examples.hpp"

#include <functional>
#include <map>

namespace gkcurv {

namespace {

SE c(long p, long q = 1) { return SE(GaussRat::ratio(p, q)); }
SE x(int j) { return SE::coord(j); }  // 0-based

std::vector<Form<SE>> dz(const ChartPtr& ch) {
    std::vector<Form<SE>> t;
    for (int k = 0; k < ch->n; ++k) t.push_back(Form<SE>::dx(ch, 2 * k) + SE::I() * Form<SE>::dx(ch, 2 * k + 1));
    return t;
}

Form<SE> omega_std(const ChartPtr& ch) {
    Form<SE> w(ch);
    for (int k = 0; k < ch->n; ++k) w.add((1u << (2 * k)) | (1u << (2 * k + 1)), SE(1));
    return w;
}

Json complex_j1(const ChartPtr& ch) {
    Json th = Json::array();
    for (const auto& t : dz(ch)) th.push_back(form_json(t));
    return Json{{"kind", "complex"}, {"theta", th}};
}

Json header(const std::string& name, const std::string& description, const ChartPtr& ch) {
    Json j;
    j["schema"] = kSceneSchema;
    j["name"] = name;
    j["description"] = description;
    j["seed"] = 1;
    j["chart"] = chart_json(*ch);
    return j;
}

Json psi_json(const Form<SE>& omega, const Form<SE>* b = nullptr) {
    Json p;
    if (b && !b->is_zero()) p["b"] = form_json(*b);
    p["omega"] = form_json(omega);
    return p;
}

Json task(const std::string& op, Json params = Json::object()) {
    Json t;
    t["op"] = op;
    for (auto& [k, v] : params.items()) t[k] = v;
    return t;
}

/// Kahler form i sum h_ab dz_a ^ conj(dz_b) of the Fubini-Study metric in the affine chart.
Form<SE> fubini_study_kahler(const ChartPtr& ch) {
    int n = ch->n;
    std::vector<SE> z, zb;
    SE r(0);
    for (int a = 0; a < n; ++a) {
        z.push_back(x(2 * a) + SE::I() * x(2 * a + 1));
        zb.push_back(x(2 * a) - SE::I() * x(2 * a + 1));
        r += x(2 * a) * x(2 * a) + x(2 * a + 1) * x(2 * a + 1);
    }
    SE one = SE(1) + r, inv2 = (one * one).inv();
    auto d = dz(ch);
    Form<SE> w(ch);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            SE h = ((a == b ? one : SE(0)) - zb[static_cast<size_t>(a)] * z[static_cast<size_t>(b)]) * inv2;
            w += (SE::I() * h) * wedge(d[static_cast<size_t>(a)], conj(d[static_cast<size_t>(b)]));
        }
    return re(w);
}

GenVec<SE> rotation(const ChartPtr& ch, int k) {
    GenVec<SE> v(ch);
    v.v(2 * k) = -x(2 * k + 1);
    v.v(2 * k + 1) = x(2 * k);
    return v;
}

/// `weight`: L_{V_i} phi = i weight phi for the base spinor (1 for rotations, 0 for translations).
Json torus_j1(const Json& base, const std::vector<GenVec<SE>>& V, const std::vector<SE>& mu, const GaussRat& lambda12,
              const std::string& weight = "1") {
    Json vs = Json::array(), ms = Json::array();
    const Chart& ch = *V.front().chart;
    for (const auto& v : V) vs.push_back(vector_field_json(v));
    for (const auto& m : mu) ms.push_back(expr_str(m, ch));
    std::string l = expr_str(SE(lambda12), ch), ml = expr_str(SE(-lambda12), ch);
    return Json{{"kind", "torus_deform"}, {"base", base},       {"vectors", vs},
                {"moments", ms},          {"lambda", Json::array({Json::array({"0", l}), Json::array({ml, "0"})})},
                {"weights", Json::array({weight, weight})}};
}

std::vector<std::vector<GaussRat>> lambda2(const GaussRat& l) { return {{GaussRat(0), l}, {-l, GaussRat(0)}}; }

Json invariance_task(int count) { return task("invariance", {{"b_fields", count}, {"affine", count}}); }

}  // namespace

Json flat_kahler(int n) {
    if (n < 1 || n > 3) throw SceneError("flat_kahler: n must be 1, 2 or 3");
    auto ch = make_chart(n);
    Json j = header("flat_kahler_" + std::to_string(n), "Flat C^" + std::to_string(n) + " Kahler pair", ch);
    j["j1"] = complex_j1(ch);
    j["psi"] = psi_json(-omega_std(ch));
    Json pt = Json::array();
    for (int k = 0; k < ch->dim(); ++k) pt.push_back(expr_str(c(k + 1, 3), *ch));
    j["tasks"] = Json::array({task("compatibility", {{"points", 5}}), task("rho", {{"expect", "1"}}),
                              task("eta_n", {{"expect_eta_zero", true}, {"expect_n_zero", true}}),
                              task("type_number", {{"point", pt}, {"expect", n}}),
                              task("gric_gr", {{"expect_gric_zero", true}, {"expect_gr", "0"}}),
                              task("gr_complex", {{"expect", "0"}})});
    return j;
}

Json flat_torus() {
    auto ch = make_chart(2, true);
    Json j = header("flat_t4", "Flat T^4 Kahler pair with moment-map checks", ch);
    j["j1"] = complex_j1(ch);
    j["psi"] = psi_json(-omega_std(ch));
    j["tasks"] = Json::array({task("gric_gr", {{"expect_gric_zero", true}, {"expect_gr", "0"}}),
                              task("moment_pairing", {{"f", "cos(x1) + sin(x2 - x3)"}, {"expect", "0"}}),
                              task("moment_derivative", {{"f", "cos(x1 + x3) + sin(x2)/2 + cos(x4)/3"},
                                                         {"directions", 5},
                                                         {"tolerance", 1e-6}})});
    return j;
}

Json fubini_study_chart(int n) {
    if (n < 1 || n > 2) throw SceneError("fubini_study_chart: n must be 1 or 2");
    auto ch = make_chart(n);
    Json j = header("fubini_study_" + std::to_string(n), "Affine chart of CP^" + std::to_string(n) + " with the Fubini-Study metric", ch);
    j["j1"] = complex_j1(ch);
    j["psi"] = psi_json(-fubini_study_kahler(ch));
    Json g = {{"expect_einstein", true}, {"kahler_oracle", true}};
    if (n == 2) g["quoted_lambda"] = "3";
    Json tasks = Json::array({task("compatibility", {{"points", 5}}), task("rho", {{"expect_proportional", n == 1 ? "(1 + x1^2 + x2^2)^2" : "(1 + x1^2 + x2^2 + x3^2 + x4^2)^3"}}),
                              task("gric_gr", g), task("gr_complex")});
    if (n == 1) tasks.push_back(invariance_task(20));
    j["tasks"] = tasks;
    return j;
}

Json kahler_c2() {
    auto ch = make_chart(2);
    Json j = header("kahler_c2", "Kahler metric (1+x1^2) dx1^dx2 + (1+x3^2) dx3^dx4 on C^2 with non-constant scalar curvature", ch);
    j["j1"] = complex_j1(ch);
    Form<SE> w(ch);
    w.add(0b0011, SE(1) + x(0) * x(0));
    w.add(0b1100, SE(1) + x(2) * x(2));
    j["psi"] = psi_json(-w);
    j["tasks"] = Json::array({task("compatibility", {{"points", 5}}), task("gric_gr", {{"kahler_oracle", true}}),
                              task("gr_complex"), invariance_task(20)});
    return j;
}

namespace {

struct HKForms {
    Form<SE> wI, wJ, wK;
};
HKForms hk(const ChartPtr& ch) {
    HKForms f{Form<SE>(ch), Form<SE>(ch), Form<SE>(ch)};
    f.wI.add(0b0011, SE(1));
    f.wI.add(0b1100, SE(1));
    f.wJ.add(0b0101, SE(1));
    f.wJ.add(0b1010, SE(-1));
    f.wK.add(0b1001, SE(1));
    f.wK.add(0b0110, SE(1));
    return f;
}

Json type00_scene(Json j, const Form<SE>& B, const Form<SE>& w1, const Form<SE>& w2) {
    j["j1"] = Json{{"kind", "exp_two_form"}, {"B", form_json(B)}, {"omega", form_json(w1)}};
    j["psi"] = psi_json(w2);
    return j;
}

}  // namespace

Json hyperkahler_t4() {
    auto ch = make_chart(2, true);
    auto [wI, wJ, wK] = hk(ch);
    SE h = c(1, 2);
    Json j = type00_scene(header("hyperkahler_t4", "Flat T^4 hyperKahler triple as a type (0,0) pair", ch), -wJ,
                          -(h * (wI + wK)), -(h * (wI - wK)));
    j["tasks"] = Json::array({task("compatibility", {{"points", 5}}),
                              task("type00", {{"expect_gric_zero", true}, {"expect_rho", "1"}}),
                              task("gric_gr", {{"expect_gric_zero", true}, {"expect_gr", "0"}}), task("gr_complex")});
    return j;
}

Json type00_perturbed_t4() {
    // B = -w_J = dx2^dx4 + dx3^dx1 is in Darboux form for q = (x2, x3), p = (x4, x1). The shear
    // (x4, x1) -> (x4 + d2 k, x1 + d3 k) preserves B, so sigma- = shear^*(-(w_J + i w_I)) is closed,
    // decomposable and still has real part B. sigma+ = -(w_J + i w_K) is left alone.
    auto ch = make_chart(2, true);
    auto [wI, wJ, wK] = hk(ch);
    SE k = SE::cos_lin({0, 1, 0, 0}) * c(1, 5) + SE::sin_lin({0, 1, 1, 0}) * c(1, 7);
    Form<SE> dx1 = Form<SE>::dx(ch, 0) + ext_d(Form<SE>(ch, k.partial(2)));
    Form<SE> dx4 = Form<SE>::dx(ch, 3) + ext_d(Form<SE>(ch, k.partial(1)));
    Form<SE> Q = -(wedge(dx1, Form<SE>::dx(ch, 1)) + wedge(Form<SE>::dx(ch, 2), dx4));  // shear^*(-w_I)
    SE h = c(1, 2);
    Form<SE> B = -wJ, w1 = h * (Q - wK), w2 = h * (Q + wK);
    Json j = type00_scene(header("type00_perturbed_t4", "Type (0,0) pair on T^4 with non-constant volume ratio", ch), B, w1, w2);
    j["tasks"] = Json::array({task("compatibility", {{"points", 5}}), task("type00", {{"expect_gric_zero", false}}),
                              task("gric_gr"), task("gr_complex")});
    return j;
}

Json torus_poisson_c2() {
    auto ch = make_chart(2);
    GaussRat lambda = GaussRat::ratio(3, 4);
    std::vector<GenVec<SE>> V{rotation(ch, 0), rotation(ch, 1)};
    // i_{V_k} w = d mu_k for w = -(dx1^dx2 + dx3^dx4)
    std::vector<SE> mu{c(1, 2) * (x(0) * x(0) + x(1) * x(1)), c(1, 2) * (x(2) * x(2) + x(3) * x(3))};
    Json j = header("torus_poisson_c2", "Flat C^2 deformed by beta = lambda V1 ^ V2 from the rotation action", ch);
    j["j1"] = torus_j1(complex_j1(ch), V, mu, lambda * GaussRat::ratio(1, 2));
    Form<SE> b = torus_b(ch, mu, lambda2(lambda * GaussRat::ratio(1, 2)));
    j["psi"] = psi_json(-omega_std(ch), &b);
    j["tasks"] = Json::array({task("compatibility", {{"points", 5}}), task("torus_deformation"),
                              task("type_number", {{"point", {"1/2", "1/3", "-2/5", "1"}}, {"expect", 0}}),
                              task("type_number", {{"point", {"0", "0", "-2/5", "1"}}, {"expect", 2}}),
                              task("gric_gr", {{"expect_gric_zero", true}})});
    return j;
}

Json torus_poisson_t4() {
    auto ch = make_chart(2, true);
    // w_K = (1 + cos(x2)/3) dx1^dx2 + dx3^dx4, invariant under translations in x1 and x3
    SE a = SE(1) + SE::cos_lin({0, 1, 0, 0}) * c(1, 3);
    Form<SE> wk(ch);
    wk.add(0b0011, a);
    wk.add(0b1100, SE(1));
    std::vector<GenVec<SE>> V{GenVec<SE>::vec(ch, 0), GenVec<SE>::vec(ch, 2)};
    std::vector<SE> mu{-x(1) - SE::sin_lin({0, 1, 0, 0}) * c(1, 3), -x(3)};
    GaussRat l12 = GaussRat::ratio(2, 5);
    Json j = header("torus_poisson_t4", "Non-flat T^2-invariant Kahler T^4 deformed by a translation Poisson structure", ch);
    j["j1"] = torus_j1(complex_j1(ch), V, mu, l12, "0");
    Form<SE> b = torus_b(ch, mu, lambda2(l12));
    j["psi"] = psi_json(-wk, &b);
    j["tasks"] = Json::array({task("compatibility", {{"points", 5}}), task("torus_deformation"), task("gric_gr")});
    return j;
}

Json cp2_three_lines() {
    auto ch = make_chart(2);
    Form<SE> w = -fubini_study_kahler(ch);
    std::vector<GenVec<SE>> V{rotation(ch, 0), rotation(ch, 1)};
    SE r = x(0) * x(0) + x(1) * x(1) + x(2) * x(2) + x(3) * x(3);
    SE den = (SE(1) + r).inv();
    std::vector<SE> mu{(x(0) * x(0) + x(1) * x(1)) * den, (x(2) * x(2) + x(3) * x(3)) * den};
    GaussRat l12 = GaussRat::ratio(1, 2);
    Json j = header("cp2_three_lines", "CP^2 with the Poisson structure of the T^2 action, vanishing on three lines", ch);
    j["j1"] = torus_j1(complex_j1(ch), V, mu, l12);
    Form<SE> b = torus_b(ch, mu, lambda2(l12));
    j["psi"] = psi_json(w, &b);
    j["tasks"] = Json::array({task("compatibility", {{"points", 5}}), task("torus_deformation"),
                              task("gric_gr", {{"expect_einstein", true}, {"quoted_lambda", "3"}}),
                              task("type_number", {{"point", {"1/2", "1/3", "-2/5", "1"}}, {"expect", 0}}),
                              task("type_number", {{"point", {"0", "0", "-2/5", "1"}}, {"expect", 2}}),
                              task("type_number", {{"point", {"1/2", "1/3", "0", "0"}}, {"expect", 2}})});
    return j;
}

Json gcy_bfield_t4() {
    auto ch = make_chart(2, true);
    Form<SE> a(ch);
    a.add(0b0100, SE::cos_lin({1, -1, 0, 0}) * c(1, 3));
    a.add(0b0001, SE::sin_lin({0, 0, 0, 1}) * c(1, 2));
    Form<SE> b = ext_d(a);
    Json j = header("gcy_bfield_t4", "Closed b-field transform of flat T^4: generalized Calabi-Yau metrical", ch);
    j["j1"] = Json{{"kind", "b_transform"}, {"b", form_json(b)}, {"base", complex_j1(ch)}};
    j["psi"] = psi_json(-omega_std(ch), &b);
    j["tasks"] = Json::array({task("compatibility", {{"points", 5}}), task("rho", {{"expect", "1"}}),
                              task("eta_n", {{"expect_eta_zero", true}, {"expect_n_zero", true}}),
                              task("gr_complex", {{"expect", "0"}}), task("gric_gr", {{"expect_gric_zero", true}})});
    return j;
}

Json nonintegrable_t4() {
    auto ch = make_chart(2, true);
    auto [wI, wJ, wK] = hk(ch);
    SE t = c(1, 2) + SE::sin_lin({0, 0, 1, 0}) * c(1, 10) + SE::cos_lin({1, 1, 0, 0}) * c(1, 13);
    SE u = (c(4) * t - c(2)) / (c(1) - c(2) * t * t);
    SE a = SE(1) + u, g = SE(1) + t * u;
    SE h = c(1, 2);
    Json j = type00_scene(header("nonintegrable_t4", "Almost GK pair with N != 0 and N . psi = 0", ch), g * wJ,
                          (a * h) * (wI + wK), h * (wK - wI));
    j["tasks"] = Json::array({task("compatibility", {{"points", 3}}),
                              task("eta_n", {{"expect_n_zero", false}, {"pointwise", 3}, {"check_n_psi", true}})});
    return j;
}

std::vector<std::string> example_names() {
    return {"flat_kahler_1",    "flat_kahler_2",       "flat_kahler_3",   "flat_t4",          "fubini_study_1",
            "fubini_study_2",   "kahler_c2",           "hyperkahler_t4",  "type00_perturbed_t4", "torus_poisson_c2",
            "torus_poisson_t4", "cp2_three_lines",     "gcy_bfield_t4",   "nonintegrable_t4"};
}

Json example_doc(const std::string& name) {
    static const std::map<std::string, std::function<Json()>> table{
        {"flat_kahler_1", [] { return flat_kahler(1); }},
        {"flat_kahler_2", [] { return flat_kahler(2); }},
        {"flat_kahler_3", [] { return flat_kahler(3); }},
        {"flat_t4", flat_torus},
        {"fubini_study_1", [] { return fubini_study_chart(1); }},
        {"fubini_study_2", [] { return fubini_study_chart(2); }},
        {"kahler_c2", kahler_c2},
        {"hyperkahler_t4", hyperkahler_t4},
        {"type00_perturbed_t4", type00_perturbed_t4},
        {"torus_poisson_c2", torus_poisson_c2},
        {"torus_poisson_t4", torus_poisson_t4},
        {"cp2_three_lines", cp2_three_lines},
        {"gcy_bfield_t4", gcy_bfield_t4},
        {"nonintegrable_t4", nonintegrable_t4},
    };
    auto it = table.find(name);
    if (it == table.end()) throw SceneError("unknown example \"" + name + "\"");
    return it->second();
}

Scene make_example(const std::string& name) { return scene_from_json(example_doc(name)); }

}  // namespace gkcurv
