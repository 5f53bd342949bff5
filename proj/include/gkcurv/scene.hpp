#pragma once
// Scene files: a chart, a generalized Kahler pair given by expression strings,
// optional torus-action data, and a list of tasks. Schema "gkcurv-scene/1";
// see docs/scene-schema.md.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gkcurv/gk.hpp"

namespace gkcurv {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSceneSchema = "gkcurv-scene/1";

/// Hamiltonian torus action used for Poisson deformations.
struct TorusData {
    std::vector<GenVec<SE>> V;               // generating vector fields
    std::vector<SE> mu;                      // i_{V_i} w = d mu_i
    std::vector<std::vector<GaussRat>> lambda;  // antisymmetric, full double sum
    std::vector<GaussRat> weights;
    BiVec<SE> beta;                          // sum_{i,j} lambda_ij V_i ^ V_j
    GKPair base;                             // undeformed pair
};

struct Type00Forms {
    Form<SE> B, w1, w2;
};

struct Task {
    std::string op;
    Json params;
};

struct Scene {
    Json doc;  // the validated document, re-emitted on export
    std::string name;
    uint64_t seed = 1;
    ChartPtr chart;
    GKPair pair;
    std::optional<Type00Forms> type00;
    std::optional<TorusData> torus;
    std::vector<Task> tasks;
};

/// Throws SceneError naming the offending field.
Scene scene_from_json(const Json& doc);
/// Reads and validates a file; JSON syntax errors are reported with line and column.
Scene load_scene(const std::string& path);

/// Operations a task may name.
const std::vector<std::string>& task_ops();

// Serialization helpers shared with the example constructors.
Json chart_json(const Chart& ch);
Json form_json(const Form<SE>& f);
Json vector_field_json(const GenVec<SE>& v);
std::string expr_str(const SE& e, const Chart& ch);

ChartPtr parse_chart(const Json& j, const std::string& where);
SE parse_scalar(const Json& j, const Chart& ch, const std::string& where);
Form<SE> parse_form(const Json& j, const ChartPtr& ch, const std::string& where);
GenVec<SE> parse_vector_field(const Json& j, const ChartPtr& ch, const std::string& where);
GaussRat parse_rational(const Json& j, const std::string& where);
Point parse_point(const Json& j, const Chart& ch, const std::string& where);

/// Bivector sum_{i,j} lambda_ij V_i ^ V_j.
BiVec<SE> torus_beta(const std::vector<GenVec<SE>>& V, const std::vector<std::vector<GaussRat>>& lambda);
/// Closed form of the deformed symplectic spinor's b-field: -sum lambda_ij d mu_i ^ d mu_j.
Form<SE> torus_b(const ChartPtr& ch, const std::vector<SE>& mu, const std::vector<std::vector<GaussRat>>& lambda);

}  // namespace gkcurv
