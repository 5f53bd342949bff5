#pragma once
// Executes a scene's tasks in order and renders the report.

#include <optional>
#include <string>
#include <vector>

#include "gkcurv/scene.hpp"

namespace gkcurv {

struct TaskResult {
    std::string op;
    std::string status;  // "pass", "fail" or "error"
    Json values = Json::object();
    std::vector<std::string> notes;
    double seconds = 0;  // text output only
};

struct Report {
    std::string scene;
    uint64_t seed = 0;
    std::vector<TaskResult> tasks;
    bool all_pass() const;
};

struct RunOptions {
    std::optional<uint64_t> seed;  // overrides the scene's seed
    int precision = 12;            // significant digits of floating values
};

/// SceneError from a task parameter propagates; other failures become status "error".
Report run_scene(const Scene& scene, const RunOptions& opt = {});

/// Deterministic JSON (no timing) or a human-readable summary.
std::string emit_json(const Report& r);
std::string emit_text(const Report& r);

/// Floating value tagged with its precision: {"float": "1.5e-09"}.
Json float_json(double v, int precision);

}  // namespace gkcurv
