// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "gkcurv/calibration.hpp"
#include "gkcurv/curvature.hpp"
#include "gkcurv/examples.hpp"
#include "gkcurv/lemmas.hpp"
#include "gkcurv/runner.hpp"

#ifndef GKCURV_FIXTURE_DIR
#define GKCURV_FIXTURE_DIR "fixtures"
#endif

using namespace gkcurv;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

/// Runs an example and requires every task with one of `ops` to pass.
bool tasks_pass(const Report& r, const std::set<std::string>& ops, std::string& detail, int* seen = nullptr) {
    bool ok = true;
    int n = 0;
    for (size_t k = 0; k < r.tasks.size(); ++k) {
        const auto& t = r.tasks[k];
        if (!ops.empty() && !ops.count(t.op)) continue;
        ++n;
        if (t.status != "pass") {
            ok = false;
            detail += r.scene + " task " + std::to_string(k) + " (" + t.op + ") " + t.status + "; ";
        }
    }
    if (seen) *seen += n;
    return ok && n > 0;
}

const TaskResult* find_task(const Report& r, const std::string& op) {
    for (const auto& t : r.tasks)
        if (t.op == op) return &t;
    return nullptr;
}

bool flag(const TaskResult* t, const char* key) {
    return t && t->values.contains(key) && t->values[key].is_boolean() && t->values[key].get<bool>();
}

Outcome check_calibration_fixture() {
    auto t0 = Clock::now();
    std::string fresh = compute_calibration().dump(2) + "\n";
    double secs = since(t0);
    std::ifstream in(std::string(GKCURV_FIXTURE_DIR) + "/calibration.json", std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    bool same = in && buf.str() == fresh;
    bool match = Json::parse(fresh)["compiled_constants"]["match"].get<bool>();
    char d[160];
    std::snprintf(d, sizeof d, "fixture %s, compiled signs %s, %.2f s (limit 5 s)", same ? "identical" : "DIFFERS",
                  match ? "agree" : "DISAGREE", secs);
    return {same && match && secs < 5.0, d};
}

Outcome check_lemma_suite() {
    auto t0 = Clock::now();
    auto res = run_lemma_suite(1, 100);
    double secs = since(t0);
    const std::set<std::string> want{"clifford_relation", "sigma_d",        "hJ_theta",
                                     "psi_identity",      "n_psi_vanishes", "trace_identity"};
    std::set<std::pair<std::string, int>> covered;
    int failures = 0, checks = 0;
    for (const auto& r : res) {
        failures += r.failures;
        checks += r.instances;
        if (r.instances >= 100 && r.failures == 0) covered.insert({r.name, r.dim});
    }
    bool all = true;
    for (const auto& n : want) all &= covered.count({n, 2}) && covered.count({n, 4});
    char d[160];
    std::snprintf(d, sizeof d, "%d identities x dims {2,4}, %d instances, %d failures, %.1f s (limit 60 s)",
                  static_cast<int>(want.size()), checks, failures, secs);
    return {all && failures == 0 && secs < 60.0, d};
}

Outcome check_flat_kahler() {
    std::string d;
    bool ok = true;
    for (const char* n : {"flat_kahler_1", "flat_kahler_2"}) {
        Report r = run_scene(make_example(n));
        ok &= tasks_pass(r, {"rho", "eta_n", "gric_gr", "gr_complex"}, d);
        auto* eta = find_task(r, "eta_n");
        ok &= flag(eta, "eta_zero") && flag(eta, "n_zero");
        auto* g = find_task(r, "gric_gr");
        ok &= g && g->values["gr"] == "0";
    }
    return {ok, d.empty() ? "rho = 1, eta = 0, N = 0, GRic = 0, GR = 0 for n = 1, 2" : d};
}

Outcome check_hyperkahler() {
    std::string d;
    Report r = run_scene(make_example("hyperkahler_t4"));
    bool ok = tasks_pass(r, {"type00", "gric_gr"}, d);
    ok &= flag(find_task(r, "type00"), "routes_agree");
    return {ok, d.empty() ? "type (0,0) conditions hold; GRic = GR = 0 by the spinor route and the closed formula" : d};
}

Outcome check_fubini_study() {
    std::string d, lam;
    bool ok = true;
    for (int n : {1, 2}) {
        Report r = run_scene(make_example("fubini_study_" + std::to_string(n)));
        ok &= tasks_pass(r, {"gric_gr", "rho"}, d);
        auto* g = find_task(r, "gric_gr");
        ok &= flag(g, "lambda_constant") && flag(g, "oracle_agrees");
        if (g && g->values.contains("lambda")) lam += "n=" + std::to_string(n) + ": lambda " + g->values["lambda"].get<std::string>() + "; ";
    }
    return {ok, lam + "quoted CP^2 constant 3 (convention dependent)" + (d.empty() ? "" : "; " + d)};
}

Outcome check_poisson_closed_forms() {
    std::string d;
    Report r = run_scene(make_example("torus_poisson_c2"));
    bool ok = tasks_pass(r, {"torus_deformation"}, d);
    auto* t = find_task(r, "torus_deformation");
    ok &= flag(t, "psi_closed_form") && flag(t, "eta_matches_formula") && flag(t, "n_zero");
    return {ok, d.empty() ? "beta action gives exp(b + i w); eta formula exact; N = 0" : d};
}

Outcome check_gke_invariance() {
    std::string d;
    bool ok = true;
    for (const char* n : {"cp2_three_lines", "torus_poisson_t4"}) {
        Report r = run_scene(make_example(n));
        ok &= tasks_pass(r, {"torus_deformation"}, d);
        bool same = flag(find_task(r, "torus_deformation"), "gric_equals_undeformed");
        if (!same) d += std::string(n) + ": GRic changed; ";
        ok &= same;
    }
    return {ok, d.empty() ? "GRic(deformed) = GRic(undeformed) on cp2_three_lines and torus_poisson_t4" : d};
}

Outcome check_invariance() {
    std::string d;
    bool ok = true;
    for (const char* n : {"fubini_study_1", "kahler_c2"}) {
        Report r = run_scene(make_example(n));
        ok &= tasks_pass(r, {"invariance"}, d);
        auto* t = find_task(r, "invariance");
        ok &= t && t->values["b_fields"]["invariant"].get<int>() >= 20 &&
              t->values["affine_maps"]["equivariant"].get<int>() >= 20;
    }
    int closed = 0, skipped = 0;
    for (const auto& n : example_names()) {
        if (n == "nonintegrable_t4") {
            ++skipped;  // almost GK only: GRic is not defined
            continue;
        }
        auto c = gric_gr(make_example(n).pair);
        if (c.gric_closed)
            ++closed;
        else
            d += n + ": d(GRic) != 0; ";
    }
    ok &= d.empty();
    return {ok, "20 b-fields + 20 affine maps on fubini_study_1, kahler_c2; d(GRic) = 0 on " + std::to_string(closed) +
                    " examples (" + std::to_string(skipped) + " non-integrable skipped)" + (d.empty() ? "" : "; " + d)};
}

Outcome check_moment_map() {
    auto t0 = Clock::now();
    std::string d;
    Report r = run_scene(make_example("flat_t4"));
    double secs = since(t0);
    bool ok = tasks_pass(r, {"moment_derivative"}, d);
    auto* t = find_task(r, "moment_derivative");
    std::string worst = t && t->values.contains("max_relative_error") ? t->values["max_relative_error"]["float"].get<std::string>() : "?";
    ok &= secs < 600.0;
    char b[160];
    std::snprintf(b, sizeof b, "5 directions on flat T^4, worst relative error %s (limit 1e-6), %.1f s (limit 600 s)",
                  worst.c_str(), secs);
    return {ok, b + (d.empty() ? "" : "; " + d)};
}

Outcome check_type_jumping() {
    std::string d;
    Report r = run_scene(make_example("cp2_three_lines"));
    int seen = 0;
    bool ok = tasks_pass(r, {"type_number"}, d, &seen);
    std::set<int> types;
    for (const auto& t : r.tasks)
        if (t.op == "type_number") types.insert(t.values["type"].get<int>());
    ok &= types.count(0) && types.count(2);
    return {ok, d.empty() ? "type 0 at a generic point, type 2 on the lines (" + std::to_string(seen) + " points)" : d};
}

Outcome check_calabi_yau() {
    std::string d;
    Report r = run_scene(make_example("gcy_bfield_t4"));
    bool ok = tasks_pass(r, {"rho", "gr_complex"}, d);
    auto* g = find_task(r, "gr_complex");
    ok &= g && g->values.contains("gr_complex") && g->values["gr_complex"] == "0";
    return {ok, d.empty() ? "rho = 1 and GR^C = 0 on the b-field transformed flat T^4" : d};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"calibration fixture", check_calibration_fixture},
        {"lemma suite", check_lemma_suite},
        {"flat Kahler C^n", check_flat_kahler},
        {"hyperKahler T^4 type (0,0)", check_hyperkahler},
        {"Fubini-Study Einstein", check_fubini_study},
        {"Poisson deformation closed forms", check_poisson_closed_forms},
        {"GKE deformation invariance", check_gke_invariance},
        {"invariance properties", check_invariance},
        {"moment-map identity", check_moment_map},
        {"type-number jumping", check_type_jumping},
        {"generalized Calabi-Yau", check_calabi_yau},
    };
    int failed = 0;
    for (size_t k = 0; k < criteria.size(); ++k) {
        Outcome o;
        try {
            o = criteria[k].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.pass;
        std::printf("[%s] %2zu %-34s %s\n", o.pass ? "PASS" : "FAIL", k + 1, criteria[k].first.c_str(), o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria pass\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed ? 1 : 0;
}
