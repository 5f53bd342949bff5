#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "gkcurv/examples.hpp"
#include "gkcurv/runner.hpp"

using namespace gkcurv;

namespace {

std::string message_of(const Json& doc) {
    try {
        scene_from_json(doc);
    } catch (const SceneError& e) {
        return e.what();
    }
    return "";
}

std::string write_temp(const std::string& name, const std::string& text) {
    auto p = std::filesystem::temp_directory_path() / ("gkcurv_test_" + name);
    std::ofstream(p, std::ios::binary) << text;
    return p.string();
}

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

}  // namespace

TEST(SceneErrors, MalformedExpressionNamesTheField) {
    Json doc = example_doc("flat_kahler_1");
    doc["psi"]["omega"]["dx1^dx2"] = "1 + * x1";
    std::string m = message_of(doc);
    EXPECT_TRUE(contains(m, "psi.omega")) << m;
}

TEST(SceneErrors, UnknownCoordinateNamesTheField) {
    Json doc = example_doc("flat_kahler_1");
    doc["psi"]["omega"]["dx1^dx2"] = "y7";
    EXPECT_TRUE(contains(message_of(doc), "psi.omega"));
}

TEST(SceneErrors, DimensionMismatch) {
    Json doc = example_doc("flat_kahler_1");
    doc["chart"]["coords"] = Json::array({"x1", "x2", "x3"});
    EXPECT_TRUE(contains(message_of(doc), "chart.coords"));
    Json p = example_doc("flat_kahler_1");
    p["tasks"][3]["point"] = Json::array({"1/3"});
    Scene s = scene_from_json(p);
    EXPECT_THROW(run_scene(s), SceneError);
}

TEST(SceneErrors, UnknownOperation) {
    Json doc = example_doc("flat_kahler_1");
    doc["tasks"].push_back(Json{{"op", "frobnicate"}});
    std::string m = message_of(doc);
    EXPECT_TRUE(contains(m, "tasks[6].op")) << m;
    EXPECT_TRUE(contains(m, "frobnicate")) << m;
}

TEST(SceneErrors, WrongSchema) {
    Json doc = example_doc("flat_kahler_1");
    doc["schema"] = "other/2";
    EXPECT_TRUE(contains(message_of(doc), "schema"));
}

TEST(SceneErrors, BadJsonReportsLineAndColumn) {
    std::string path = write_temp("bad.json", "{\n  \"schema\": \"gkcurv-scene/1\",\n  \"chart\": {,}\n}\n");
    try {
        load_scene(path);
        FAIL() << "expected SceneError";
    } catch (const SceneError& e) {
        EXPECT_TRUE(contains(e.what(), ":3:")) << e.what();
    }
    std::filesystem::remove(path);
}

TEST(SceneErrors, MissingFile) { EXPECT_THROW(load_scene("/nonexistent/scene.json"), SceneError); }

TEST(SceneErrors, UnknownExample) { EXPECT_THROW(example_doc("no_such_example"), SceneError); }

TEST(SceneExport, EveryExampleRoundTrips) {
    for (const auto& name : example_names()) {
        Json doc = example_doc(name);
        std::string path = write_temp(name + ".json", doc.dump(2) + "\n");
        Scene s = load_scene(path);
        EXPECT_EQ(s.doc, doc) << name;
        EXPECT_EQ(s.name, name);
        EXPECT_FALSE(s.tasks.empty()) << name;
        std::filesystem::remove(path);
    }
}

TEST(Runner, FlatSceneReportIsDeterministic) {
    Scene s = make_example("flat_kahler_2");
    std::string a = emit_json(run_scene(s));
    std::string b = emit_json(run_scene(s));
    EXPECT_EQ(a, b);
    EXPECT_TRUE(contains(a, "\"gkcurv-report/1\""));
}

TEST(Runner, SeedOverrideIsRecorded) {
    Scene s = make_example("flat_kahler_1");
    Report r = run_scene(s, {uint64_t{77}, 12});
    EXPECT_EQ(r.seed, 77u);
    EXPECT_TRUE(r.all_pass());
}

TEST(Runner, WrongExpectationFails) {
    Json doc = example_doc("flat_kahler_1");
    doc["tasks"][1]["expect"] = "2";
    Report r = run_scene(scene_from_json(doc));
    EXPECT_FALSE(r.all_pass());
    EXPECT_EQ(r.tasks[1].status, "fail");
    EXPECT_EQ(r.tasks[0].status, "pass");
}

TEST(Runner, FloatValuesCarryPrecision) {
    EXPECT_EQ(float_json(1.0 / 3.0, 4)["float"], "0.3333");
    EXPECT_EQ(float_json(1.5e-9, 12)["float"], "1.5e-09");
}
