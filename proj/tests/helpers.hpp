#pragma once
// Small builders shared by the test binaries.

#include <initializer_list>
#include <string>
#include <utility>

#include "gkcurv/parse.hpp"
#include "gkcurv/random.hpp"

namespace gkt {

using namespace gkcurv;
using SE = ScalarExpr;
using F = Form<ScalarExpr>;
using GV = GenVec<ScalarExpr>;

inline SE expr(const ChartPtr& ch, const std::string& s) { return parse_expr(s, ch->names); }

/// Form from {label, coefficient} pairs, e.g. {{"dx1^dx2", "x1"}}.
inline F form(const ChartPtr& ch, std::initializer_list<std::pair<std::string, std::string>> terms) {
    F f(ch);
    for (const auto& [label, coef] : terms) {
        int sign = 1;
        unsigned m = parse_index_label(*ch, label, sign);
        SE c = expr(ch, coef);
        f.add(m, sign < 0 ? -c : c);
    }
    return f;
}

/// Generalized vector from component strings: indices 0..d-1 vector, d..2d-1 covector.
inline GV genvec(const ChartPtr& ch, std::initializer_list<std::pair<int, std::string>> comps) {
    GV e(ch);
    for (const auto& [p, s] : comps) e.c[static_cast<size_t>(p)] = expr(ch, s);
    return e;
}

inline F omega_std(const ChartPtr& ch) {
    F w(ch);
    for (int k = 0; k < ch->n; ++k) w.add((1u << (2 * k)) | (1u << (2 * k + 1)), SE(1));
    return w;
}

}  // namespace gkt
