// gkcurv: run scene files, the lemma suite and the sign calibration.
//
// Exit codes: 0 all checks pass, 1 a check failed, 2 scene or usage error.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "gkcurv/calibration.hpp"
#include "gkcurv/examples.hpp"
#include "gkcurv/lemmas.hpp"
#include "gkcurv/runner.hpp"

#ifndef GKCURV_FIXTURE_DIR
#define GKCURV_FIXTURE_DIR "fixtures"
#endif

namespace {

using namespace gkcurv;

struct Global {
    std::optional<uint64_t> seed;
    int precision = 12;
    std::string format = "json";
};

int emit(const Report& r, const Global& g) {
    std::cout << (g.format == "text" ? emit_text(r) : emit_json(r));
    return r.all_pass() ? 0 : 1;
}

int cmd_run(const std::string& path, const Global& g) {
    Scene s = load_scene(path);
    return emit(run_scene(s, {g.seed, g.precision}), g);
}

int cmd_example(const std::string& name, bool do_export, const std::string& out, const Global& g) {
    if (do_export) {
        std::string text = example_doc(name).dump(2) + "\n";
        if (out.empty()) {
            std::cout << text;
        } else {
            std::ofstream f(out, std::ios::binary);
            if (!f) throw SceneError(out + ": cannot write file");
            f << text;
        }
        return 0;
    }
    return emit(run_scene(make_example(name), {g.seed, g.precision}), g);
}

std::string read_file(const std::string& path, bool& ok) {
    std::ifstream in(path, std::ios::binary);
    ok = static_cast<bool>(in);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

/// Compares the recomputed calibration with the committed fixture.
bool calibration_matches(const std::string& fixture, std::string& fresh, std::string& why) {
    Json doc = compute_calibration();
    fresh = doc.dump(2) + "\n";
    bool ok = false;
    std::string committed = read_file(fixture, ok);
    if (!doc["compiled_constants"]["match"].get<bool>()) {
        why = "measured constants differ from the compiled ones";
        return false;
    }
    if (!ok) {
        why = fixture + ": cannot read fixture";
        return false;
    }
    if (committed != fresh) {
        why = "calibration drifted from " + fixture;
        return false;
    }
    return true;
}

int cmd_calibrate(const std::string& fixture, bool write, const Global& g) {
    auto start = std::chrono::steady_clock::now();
    std::string fresh, why;
    bool ok = calibration_matches(fixture, fresh, why);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (write) {
        std::ofstream f(fixture, std::ios::binary);
        if (!f) throw SceneError(fixture + ": cannot write file");
        f << fresh;
        ok = Json::parse(fresh)["compiled_constants"]["match"].get<bool>();
        why = ok ? "" : "measured constants differ from the compiled ones";
    }
    if (g.format == "text") {
        std::printf("calibration %s (%.2f s)%s%s\n", ok ? "matches" : "FAILED", secs, why.empty() ? "" : ": ", why.c_str());
    } else {
        std::cout << fresh;
    }
    if (!ok) std::cerr << "calibrate: " << why << "\n";
    return ok ? 0 : 1;
}

int cmd_selftest(const std::string& scene_path, const std::string& fixture, int instances, const Global& g) {
    uint64_t seed = 1;
    if (!scene_path.empty()) seed = load_scene(scene_path).seed;
    if (g.seed) seed = *g.seed;
    auto start = std::chrono::steady_clock::now();
    auto lemmas = run_lemma_suite(seed, instances);
    double lemma_secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::string fresh, why;
    bool cal = calibration_matches(fixture, fresh, why);

    bool ok = cal;
    Json doc;
    doc["schema"] = "gkcurv-selftest/1";
    doc["seed"] = seed;
    Json ls = Json::array();
    for (const auto& r : lemmas) {
        ok &= r.failures == 0;
        Json j{{"name", r.name}, {"dim", r.dim}, {"instances", r.instances}, {"failures", r.failures}};
        if (!r.note.empty()) j["note"] = r.note;
        if (!r.first_failure.empty()) j["first_failure"] = r.first_failure;
        ls.push_back(j);
    }
    doc["lemmas"] = ls;
    doc["calibration"] = Json{{"matches_fixture", cal}, {"detail", why}};
    doc["status"] = ok ? "pass" : "fail";
    if (g.format == "text") {
        for (const auto& r : lemmas)
            std::printf("[%s] %-18s dim %d  %d/%d%s%s\n", r.failures ? "FAIL" : "PASS", r.name.c_str(), r.dim,
                        r.instances - r.failures, r.instances, r.note.empty() ? "" : "  ", r.note.c_str());
        for (const auto& r : lemmas)
            if (!r.first_failure.empty()) std::printf("  %s: %s\n", r.name.c_str(), r.first_failure.c_str());
        std::printf("[%s] calibration fixture%s%s\n", cal ? "PASS" : "FAIL", why.empty() ? "" : ": ", why.c_str());
        std::printf("lemma suite %.2f s\n", lemma_secs);
    } else {
        std::cout << doc.dump(2) << "\n";
    }
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Generalized Kahler curvature checker"};
    app.require_subcommand(1);
    app.fallthrough();
    Global g;
    uint64_t seed = 0;
    app.add_option("--seed", seed, "seed for randomized checks (overrides the scene's)");
    app.add_option("--precision", g.precision, "significant digits of floating values")->check(CLI::Range(1, 30));
    app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"json", "text"}));
    std::string fixture = std::string(GKCURV_FIXTURE_DIR) + "/calibration.json";

    auto* run = app.add_subcommand("run", "run the tasks of a scene file");
    std::string scene_path;
    run->add_option("scene", scene_path, "scene JSON file")->required();

    auto* self = app.add_subcommand("selftest", "lemma property suite and calibration fixture check");
    std::string self_scene;
    int instances = 100;
    self->add_option("scene", self_scene, "optional scene whose seed is used");
    self->add_option("--instances", instances, "instances per identity")->check(CLI::Range(1, 100000));
    self->add_option("--fixture", fixture, "calibration fixture");

    auto* cal = app.add_subcommand("calibrate", "recompute the sign calibration and compare with the fixture");
    bool write = false;
    cal->add_option("--fixture", fixture, "calibration fixture");
    cal->add_flag("--write", write, "overwrite the fixture with the recomputed document");

    auto* ex = app.add_subcommand("example", "run or export a built-in example");
    std::string name, out;
    bool do_export = false;
    ex->add_option("name", name, "example name")->required();
    ex->add_flag("--export", do_export, "print the scene JSON instead of running it");
    ex->add_option("-o,--output", out, "write the exported scene to this file");

    auto* list = app.add_subcommand("list", "list built-in examples");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    if (app.count("--seed")) g.seed = seed;

    try {
        if (*run) return cmd_run(scene_path, g);
        if (*self) return cmd_selftest(self_scene, fixture, instances, g);
        if (*cal) return cmd_calibrate(fixture, write, g);
        if (*ex) return cmd_example(name, do_export, out, g);
        if (*list) {
            for (const auto& n : example_names()) std::cout << n << "\n";
            return 0;
        }
    } catch (const SceneError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
