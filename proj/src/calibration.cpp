#include "gkcurv/calibration.hpp"

#include <set>

#include "gkcurv/curvature.hpp"
#include "gkcurv/examples.hpp"
#include "gkcurv/random.hpp"

namespace gkcurv {

namespace {

using Json = nlohmann::ordered_json;

// Signs observed over every basis element; {} when all pairings vanished.
struct SignTally {
    std::set<int> signs;
    long nonzero = 0, total = 0;
    bool consistent() const { return signs.size() == 1; }
    int sign() const { return consistent() ? *signs.begin() : 0; }
};

void record(SignTally& t, const GaussRat& lhs, const GaussRat& rhs) {
    ++t.total;
    if (lhs.is_zero() && rhs.is_zero()) return;
    ++t.nonzero;
    if (lhs == rhs)
        t.signs.insert(1);
    else if (lhs == -rhs)
        t.signs.insert(-1);
    else
        t.signs.insert(0);  // neither sign works
}

Json tally_json(const SignTally& t) {
    Json j;
    j["sign"] = t.sign();
    j["consistent"] = t.consistent();
    j["cases"] = t.total;
    j["nonzero_cases"] = t.nonzero;
    return j;
}

/// Exhaustive over basis generalized vectors and basis forms.
std::pair<SignTally, SignTally> brute_force(int n) {
    ChartPtr ch = make_chart(n);
    int d = ch->dim();
    unsigned masks = 1u << d;
    std::vector<GenVec<GaussRat>> e;
    for (int p = 0; p < 2 * d; ++p) e.push_back(GenVec<GaussRat>::basis(ch, p));
    std::vector<Form<GaussRat>> f;
    for (unsigned m = 0; m < masks; ++m) f.push_back(Form<GaussRat>::monomial(ch, m, GaussRat(1)));

    // act[p][m] = e_p . f_m
    std::vector<std::vector<Form<GaussRat>>> act(e.size());
    for (size_t p = 0; p < e.size(); ++p)
        for (const auto& a : f) act[p].push_back(clifford_act(e[p], a));

    SignTally adj, pol;
    for (size_t p = 0; p < e.size(); ++p)
        for (size_t a = 0; a < f.size(); ++a)
            for (size_t b = 0; b < f.size(); ++b)
                record(adj, mukai_scalar(act[p][a], f[b]), mukai_scalar(f[a], act[p][b]));
    for (size_t p = 0; p < e.size(); ++p)
        for (size_t q = 0; q < e.size(); ++q) {
            GaussRat two_pair = GaussRat(2) * pair_tt(e[p], e[q]);
            for (size_t a = 0; a < f.size(); ++a)
                for (size_t b = 0; b < f.size(); ++b) {
                    GaussRat lhs = mukai_scalar(act[p][a], act[q][b]) + mukai_scalar(act[q][a], act[p][b]);
                    record(pol, lhs, two_pair * mukai_scalar(f[a], f[b]));
                }
        }
    return {adj, pol};
}

/// Ratio trace / spinor side over random h on the given pairs; empty if not constant.
std::optional<GaussRat> trace_ratio(const std::vector<GKPair>& pairs, Rng& rng, int per_pair, long& samples) {
    std::optional<GaussRat> ratio;
    bool constant = true;
    for (const auto& p : pairs)
        for (int k = 0; k < per_pair; ++k) {
            auto g = eval_gcs(p.J1, chart_point(rng, *p.chart()));
            auto t = trace_pairing(g, random_h(rng, g.E), random_h(rng, g.E));
            if (t.spinor_side.is_zero()) continue;
            ++samples;
            GaussRat r = t.trace / t.spinor_side;
            if (!ratio)
                ratio = r;
            else if (*ratio != r)
                constant = false;
        }
    return constant ? ratio : std::nullopt;
}

std::string exact_or_null(const SE& e) { return e.is_constant() ? e.constant_value().str() : "non-constant"; }

}  // namespace

Json compute_calibration() {
    Json doc;
    doc["schema"] = "gkcurv-calibration/1";
    doc["conventions"] = {
        {"clifford", "(v + xi).a = i_v a + xi ^ a"},
        {"pairing", "<v + xi, u + eta> = (xi(u) + eta(v)) / 2"},
        {"mukai", "<a, b> = top degree part of a ^ sigma(b), sigma(a_k) = (-1)^(k(k-1)/2) a_k"},
        {"annihilator", "J = -i on the annihilator of phi"},
    };

    Json signs = Json::object();
    for (int n : {1, 2}) {
        auto [adj, pol] = brute_force(n);
        Json dim;
        dim["mukai_adjoint"] = tally_json(adj);
        dim["polarization"] = tally_json(pol);
        signs["dim" + std::to_string(2 * n)] = dim;
    }
    doc["brute_force"] = signs;

    Rng rng(20240531);
    long samples = 0;
    std::vector<GKPair> pairs;
    for (const char* name : {"flat_kahler_1", "fubini_study_1", "flat_kahler_2", "hyperkahler_t4", "type00_perturbed_t4"})
        pairs.push_back(make_example(name).pair);
    auto ratio = trace_ratio(pairs, rng, 6, samples);
    doc["trace_pairing"] = {{"ratio", ratio ? ratio->str() : "non-constant"}, {"samples", samples}};

    Json fs = Json::array();
    for (int n : {1, 2}) {
        auto rep = gric_gr(make_example("fubini_study_" + std::to_string(n)).pair);
        Json j;
        j["n"] = n;
        j["lambda"] = rep.lambda ? exact_or_null(*rep.lambda) : "not proportional";
        j["gr"] = exact_or_null(rep.gr);
        j["gr_complex"] = exact_or_null(rep.gr_complex);
        j["gr_complex_over_gr"] =
            rep.gr.is_constant() && rep.gr_complex.is_constant() && !rep.gr.is_zero()
                ? (rep.gr_complex.constant_value() / rep.gr.constant_value()).str()
                : "undefined";
        fs.push_back(j);
    }
    doc["fubini_study"] = fs;

    bool agree = true;
    for (const auto& [k, dim] : doc["brute_force"].items()) {
        agree &= dim["mukai_adjoint"]["sign"].get<int>() == kMukaiAdjointSign;
        agree &= dim["polarization"]["sign"].get<int>() == kPolarizationSign;
    }
    agree &= ratio.has_value() && *ratio == GaussRat(kTracePairingConstant);
    doc["compiled_constants"] = {{"mukai_adjoint_sign", kMukaiAdjointSign},
                                 {"polarization_sign", kPolarizationSign},
                                 {"trace_pairing_constant", kTracePairingConstant},
                                 {"match", agree}};
    return doc;
}

}  // namespace gkcurv
