#include "gkcurv/scene.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "gkcurv/parse.hpp"

namespace gkcurv {

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) {
    throw SceneError(where + ": " + what);
}

const Json& need(const Json& j, const char* key, const std::string& where) {
    if (!j.is_object()) bad(where, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) bad(where, std::string("missing field \"") + key + "\"");
    return *it;
}

std::string sub(const std::string& where, const std::string& key) { return where.empty() ? key : where + "." + key; }

GCStruct<SE> parse_j1(const Json& j, const ChartPtr& ch, const std::string& where, Scene& s);

std::vector<std::vector<GaussRat>> parse_lambda(const Json& j, size_t m, const std::string& where) {
    if (!j.is_array() || j.size() != m) bad(where, "expected a " + std::to_string(m) + "x" + std::to_string(m) + " array");
    std::vector<std::vector<GaussRat>> L(m, std::vector<GaussRat>(m));
    for (size_t a = 0; a < m; ++a) {
        if (!j[a].is_array() || j[a].size() != m) bad(where, "row " + std::to_string(a) + " has the wrong length");
        for (size_t b = 0; b < m; ++b) {
            L[a][b] = parse_rational(j[a][b], where + "[" + std::to_string(a) + "][" + std::to_string(b) + "]");
            if (!L[a][b].is_real()) bad(where, "entries must be real");
        }
    }
    for (size_t a = 0; a < m; ++a)
        for (size_t b = 0; b < m; ++b)
            if (L[a][b] != -L[b][a]) bad(where, "matrix is not antisymmetric");
    return L;
}

GCStruct<SE> parse_torus(const Json& j, const ChartPtr& ch, const std::string& where, Scene& s) {
    TorusData t;
    const Json& vs = need(j, "vectors", where);
    const Json& ms = need(j, "moments", where);
    if (!vs.is_array() || vs.empty()) bad(sub(where, "vectors"), "expected a nonempty array");
    if (!ms.is_array() || ms.size() != vs.size()) bad(sub(where, "moments"), "need one moment map per vector field");
    for (size_t a = 0; a < vs.size(); ++a) {
        t.V.push_back(parse_vector_field(vs[a], ch, sub(where, "vectors") + "[" + std::to_string(a) + "]"));
        t.mu.push_back(parse_scalar(ms[a], *ch, sub(where, "moments") + "[" + std::to_string(a) + "]"));
    }
    t.lambda = parse_lambda(need(j, "lambda", where), vs.size(), sub(where, "lambda"));
    if (auto it = j.find("weights"); it != j.end()) {
        if (!it->is_array() || it->size() != vs.size()) bad(sub(where, "weights"), "need one weight per vector field");
        for (size_t a = 0; a < vs.size(); ++a) t.weights.push_back(parse_rational((*it)[a], sub(where, "weights")));
    } else {
        t.weights.assign(vs.size(), GaussRat(1));
    }
    GCStruct<SE> base = parse_j1(need(j, "base", where), ch, sub(where, "base"), s);
    t.beta = torus_beta(t.V, t.lambda);
    GCStruct<SE> out;
    try {
        out = make_beta_deform(t.beta, base);
    } catch (const Error& e) {
        bad(where, e.what());
    }
    t.base.J1 = base;  // psi filled in by the caller
    s.torus = std::move(t);
    return out;
}

GCStruct<SE> parse_j1(const Json& j, const ChartPtr& ch, const std::string& where, Scene& s) {
    std::string kind = need(j, "kind", where).get<std::string>();
    try {
        if (kind == "complex") {
            const Json& th = need(j, "theta", where);
            if (!th.is_array() || static_cast<int>(th.size()) != ch->n)
                bad(sub(where, "theta"), "need " + std::to_string(ch->n) + " one-forms");
            std::vector<Form<SE>> theta;
            for (size_t k = 0; k < th.size(); ++k)
                theta.push_back(parse_form(th[k], ch, sub(where, "theta") + "[" + std::to_string(k) + "]"));
            return make_complex_volume(theta);
        }
        if (kind == "symplectic") {
            Form<SE> b = j.contains("b") ? parse_form(j["b"], ch, sub(where, "b")) : Form<SE>(ch);
            return make_symplectic(b, parse_form(need(j, "omega", where), ch, sub(where, "omega")));
        }
        if (kind == "exp_two_form") {
            Form<SE> B = parse_form(need(j, "B", where), ch, sub(where, "B"));
            Form<SE> w = parse_form(need(j, "omega", where), ch, sub(where, "omega"));
            return make_exp_two_form(B + SE::I() * w);
        }
        if (kind == "b_transform") {
            Form<SE> b = parse_form(need(j, "b", where), ch, sub(where, "b"));
            return b_transform(b, parse_j1(need(j, "base", where), ch, sub(where, "base"), s));
        }
        if (kind == "torus_deform") return parse_torus(j, ch, where, s);
    } catch (const SceneError&) {
        throw;
    } catch (const Error& e) {
        bad(where, e.what());
    }
    bad(sub(where, "kind"), "unknown constructor \"" + kind + "\"");
}

}  // namespace

const std::vector<std::string>& task_ops() {
    static const std::vector<std::string> ops{"compatibility", "rho",       "eta_n",
                                              "type_number",   "gric_gr",   "gr_complex",
                                              "type00",        "torus_deformation", "invariance",
                                              "moment_pairing", "moment_derivative"};
    return ops;
}

std::string expr_str(const SE& e, const Chart& ch) { return e.str(ch.names); }

Json chart_json(const Chart& ch) {
    Json j;
    j["n"] = ch.n;
    j["coords"] = ch.names;
    Json p = Json::array();
    for (bool b : ch.periodic) p.push_back(b);
    j["periodic"] = p;
    return j;
}

Json form_json(const Form<SE>& f) {
    Json j = Json::object();
    std::vector<unsigned> masks;
    for (const auto& [m, v] : f.c)
        if (!v.is_zero()) masks.push_back(m);
    for (unsigned m : sorted_masks(masks)) j[index_label(*f.chart, m)] = expr_str(f.c.at(m), *f.chart);
    return j;
}

Json vector_field_json(const GenVec<SE>& v) {
    Json j = Json::object();
    for (int k = 0; k < v.dim(); ++k)
        if (!v.v(k).is_zero()) j[v.chart->names[static_cast<size_t>(k)]] = expr_str(v.v(k), *v.chart);
    return j;
}

ChartPtr parse_chart(const Json& j, const std::string& where) {
    auto c = std::make_shared<Chart>();
    const Json& n = need(j, "n", where);
    if (!n.is_number_integer() || n.get<int>() < 1 || n.get<int>() > 3) bad(sub(where, "n"), "must be 1, 2 or 3");
    c->n = n.get<int>();
    if (j.contains("coords")) {
        const Json& cs = j["coords"];
        if (!cs.is_array() || static_cast<int>(cs.size()) != c->dim())
            bad(sub(where, "coords"), "need " + std::to_string(c->dim()) + " names");
        for (const auto& x : cs) {
            std::string s = x.get<std::string>();
            if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0])) || s == "i" || s == "sin" || s == "cos")
                bad(sub(where, "coords"), "invalid coordinate name \"" + s + "\"");
            if (std::find(c->names.begin(), c->names.end(), s) != c->names.end())
                bad(sub(where, "coords"), "repeated coordinate \"" + s + "\"");
            c->names.push_back(s);
        }
    } else {
        for (int k = 0; k < c->dim(); ++k) c->names.push_back("x" + std::to_string(k + 1));
    }
    if (j.contains("periodic")) {
        const Json& ps = j["periodic"];
        if (ps.is_boolean()) {
            c->periodic.assign(static_cast<size_t>(c->dim()), ps.get<bool>());
        } else {
            if (!ps.is_array() || static_cast<int>(ps.size()) != c->dim())
                bad(sub(where, "periodic"), "need " + std::to_string(c->dim()) + " flags");
            for (const auto& x : ps) {
                if (!x.is_boolean()) bad(sub(where, "periodic"), "flags must be booleans");
                c->periodic.push_back(x.get<bool>());
            }
        }
    } else {
        c->periodic.assign(static_cast<size_t>(c->dim()), false);
    }
    return c;
}

SE parse_scalar(const Json& j, const Chart& ch, const std::string& where) {
    std::string text;
    if (j.is_string())
        text = j.get<std::string>();
    else if (j.is_number_integer())
        text = std::to_string(j.get<long>());
    else
        bad(where, "expected an expression string");
    try {
        return parse_expr(text, ch.names);
    } catch (const Error& e) {
        bad(where, e.what());
    }
}

GaussRat parse_rational(const Json& j, const std::string& where) {
    static const Chart empty{};
    SE v = parse_scalar(j, empty, where);
    if (!v.is_constant()) bad(where, "expected a constant");
    return v.constant_value();
}

Form<SE> parse_form(const Json& j, const ChartPtr& ch, const std::string& where) {
    if (!j.is_object()) bad(where, "expected an object mapping \"dx1^dx2\" style labels to expressions");
    Form<SE> f(ch);
    for (const auto& [label, val] : j.items()) {
        int sign = 1;
        unsigned m = 0;
        try {
            m = parse_index_label(*ch, label, sign);
        } catch (const Error& e) {
            bad(sub(where, label), e.what());
        }
        SE c = parse_scalar(val, *ch, sub(where, label));
        f.add(m, sign < 0 ? -c : c);
    }
    return f;
}

GenVec<SE> parse_vector_field(const Json& j, const ChartPtr& ch, const std::string& where) {
    if (!j.is_object()) bad(where, "expected an object mapping coordinate names to components");
    GenVec<SE> v(ch);
    for (const auto& [name, val] : j.items()) {
        auto it = std::find(ch->names.begin(), ch->names.end(), name);
        if (it == ch->names.end()) bad(sub(where, name), "unknown coordinate");
        v.v(static_cast<int>(it - ch->names.begin())) = parse_scalar(val, *ch, sub(where, name));
    }
    return v;
}

Point parse_point(const Json& j, const Chart& ch, const std::string& where) {
    if (!j.is_array() || static_cast<int>(j.size()) != ch.dim())
        bad(where, "need " + std::to_string(ch.dim()) + " coordinates");
    Point p;
    for (int k = 0; k < ch.dim(); ++k) {
        GaussRat v = parse_rational(j[static_cast<size_t>(k)], where + "[" + std::to_string(k) + "]");
        if (ch.periodic[static_cast<size_t>(k)]) {
            // angle coordinates are given by exp(i x), a Gaussian rational of modulus one
            if (v.norm2() != 1) bad(where + "[" + std::to_string(k) + "]", "angle entries give exp(i x) and must have modulus 1");
            p.x.push_back(std::nullopt);
            p.e.push_back(v);
            p.approx.push_back(std::arg(v.to_complex()));
        } else {
            if (!v.is_real()) bad(where + "[" + std::to_string(k) + "]", "coordinates must be real");
            p.x.push_back(v);
            p.e.push_back(std::nullopt);
            p.approx.push_back(v.re.get_d());
        }
    }
    return p;
}

BiVec<SE> torus_beta(const std::vector<GenVec<SE>>& V, const std::vector<std::vector<GaussRat>>& lambda) {
    BiVec<SE> beta(V.front().chart);
    for (size_t a = 0; a < V.size(); ++a)
        for (size_t b = 0; b < V.size(); ++b)
            if (!lambda[a][b].is_zero()) beta = beta + SE(lambda[a][b]) * wedge2(V[a], V[b]);
    return beta;
}

Form<SE> torus_b(const ChartPtr& ch, const std::vector<SE>& mu, const std::vector<std::vector<GaussRat>>& lambda) {
    Form<SE> b(ch);
    std::vector<Form<SE>> dmu;
    for (const auto& m : mu) dmu.push_back(ext_d(Form<SE>(ch, m)));
    for (size_t a = 0; a < mu.size(); ++a)
        for (size_t c = 0; c < mu.size(); ++c)
            if (!lambda[a][c].is_zero()) b -= SE(lambda[a][c]) * wedge(dmu[a], dmu[c]);
    return b;
}

namespace {

Scene build_scene(const Json& doc) {
    Scene s;
    if (!doc.is_object()) bad("scene", "expected a JSON object");
    const Json& schema = need(doc, "schema", "");
    if (!schema.is_string() || schema.get<std::string>() != kSceneSchema)
        bad("schema", std::string("expected \"") + kSceneSchema + "\"");
    s.doc = doc;
    s.name = doc.contains("name") ? doc["name"].get<std::string>() : "scene";
    if (doc.contains("seed")) {
        if (!doc["seed"].is_number_integer() || doc["seed"].get<long long>() < 0) bad("seed", "expected a nonnegative integer");
        s.seed = doc["seed"].get<uint64_t>();
    }
    s.chart = parse_chart(need(doc, "chart", ""), "chart");
    GCStruct<SE> j1 = parse_j1(need(doc, "j1", ""), s.chart, "j1", s);
    const Json& pj = need(doc, "psi", "");
    Form<SE> pb = pj.contains("b") ? parse_form(pj["b"], s.chart, "psi.b") : Form<SE>(s.chart);
    Form<SE> pw = parse_form(need(pj, "omega", "psi"), s.chart, "psi.omega");
    try {
        s.pair = make_gk_pair(j1, make_symplectic(pb, pw));
        if (s.torus) {
            Form<SE> bb = pj.contains("base_b") ? parse_form(pj["base_b"], s.chart, "psi.base_b") : Form<SE>(s.chart);
            s.torus->base = make_gk_pair(s.torus->base.J1, make_symplectic(bb, pw));
        }
    } catch (const SceneError&) {
        throw;
    } catch (const Error& e) {
        bad("psi", e.what());
    }
    const Json& j1d = doc["j1"];
    if (j1d["kind"] == "exp_two_form" && pb.is_zero())
        s.type00 = Type00Forms{parse_form(j1d["B"], s.chart, "j1.B"), parse_form(j1d["omega"], s.chart, "j1.omega"), pw};
    if (doc.contains("tasks")) {
        const Json& ts = doc["tasks"];
        if (!ts.is_array()) bad("tasks", "expected an array");
        for (size_t k = 0; k < ts.size(); ++k) {
            std::string where = "tasks[" + std::to_string(k) + "]";
            const Json& op = need(ts[k], "op", where);
            if (!op.is_string()) bad(where + ".op", "expected a string");
            const auto& ops = task_ops();
            if (std::find(ops.begin(), ops.end(), op.get<std::string>()) == ops.end())
                bad(where + ".op", "unknown operation \"" + op.get<std::string>() + "\"");
            Task t{op.get<std::string>(), ts[k]};
            s.tasks.push_back(std::move(t));
        }
    }
    return s;
}

}  // namespace

Scene scene_from_json(const Json& doc) {
    try {
        return build_scene(doc);
    } catch (const Json::exception& e) {
        throw SceneError(std::string("type error: ") + e.what());
    }
}

Scene load_scene(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SceneError(path + ": cannot open file");
    std::stringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const Json::parse_error& e) {
        // byte offset -> line and column
        size_t off = std::min(e.byte, text.size());
        size_t line = 1, col = 1;
        for (size_t k = 0; k + 1 < off; ++k) {
            if (text[k] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw SceneError(path + ":" + std::to_string(line) + ":" + std::to_string(col) + ": invalid JSON");
    }
    try {
        return scene_from_json(doc);
    } catch (const SceneError& e) {
        std::string msg = e.what();
        const std::string tag = "SceneError: ";
        if (msg.rfind(tag, 0) == 0) msg = msg.substr(tag.size());
        throw SceneError(path + ": " + msg);
    } catch (const Json::exception& e) {
        throw SceneError(path + ": " + e.what());
    }
}

}  // namespace gkcurv
