#include <algorithm>
#include <sstream>

#include "gkcurv/forms.hpp"
#include "gkcurv/jet.hpp"
#include "gkcurv/linalg.hpp"

namespace gkcurv {

Form<GaussRat> eval_form(const Form<ScalarExpr>& f, const Point& p) {
    Form<GaussRat> r(f.chart);
    for (const auto& [m, v] : f.c) r.add(m, v.eval(p));
    return r;
}

namespace {

bool is_integer(const GaussRat& c) { return c.is_real() && c.re.get_den() == 1; }

Poly substitute(const Poly& p, const AffineMap& F, int dim) {
    std::vector<Poly> lin(static_cast<size_t>(dim));
    std::vector<std::optional<Poly>> ph(static_cast<size_t>(dim)), phinv(static_cast<size_t>(dim));
    Poly out;
    for (const auto& t : p.terms()) {
        Poly term(t.c);
        for (int j = 0; j < dim; ++j) {
            int a = t.m.e[xslot(j)], k = t.m.e[eslot(j)];
            auto ju = static_cast<size_t>(j);
            if (a > 0) {
                if (lin[ju].is_zero()) {
                    if (!F.shift.x[ju]) throw NotExact("translation of x" + std::to_string(j + 1) + " not given");
                    Poly l(*F.shift.x[ju]);
                    for (int q = 0; q < dim; ++q)
                        l += Poly::var_x(q).scaled(F.A[ju][static_cast<size_t>(q)]);
                    lin[ju] = l.is_zero() ? Poly(GaussRat(0)) : l;
                }
                term = term * lin[ju].pow(static_cast<unsigned>(a));
            }
            if (k != 0) {
                if (!ph[ju]) {
                    if (!F.shift.e[ju]) throw NotExact("phase translation of x" + std::to_string(j + 1) + " not given");
                    Mono m, mi;
                    for (int q = 0; q < dim; ++q) {
                        const GaussRat& c = F.A[ju][static_cast<size_t>(q)];
                        if (!is_integer(c)) throw SingularMap("non-integer linear map on an angle coordinate");
                        auto e = static_cast<int16_t>(c.re.get_num().get_si());
                        m.e[eslot(q)] = e;
                        mi.e[eslot(q)] = static_cast<int16_t>(-e);
                    }
                    ph[ju] = Poly::term(m, *F.shift.e[ju]);
                    phinv[ju] = Poly::term(mi, F.shift.e[ju]->inv());
                }
                const Poly& base = k > 0 ? *ph[ju] : *phinv[ju];
                term = term * base.pow(static_cast<unsigned>(std::abs(k)));
            }
        }
        out += term;
    }
    return out;
}

}  // namespace

ScalarExpr pullback_affine(const ScalarExpr& f, const AffineMap& F) {
    int dim = static_cast<int>(F.A.size());
    Poly n = substitute(f.num(), F, dim);
    if (f.is_polynomial()) return ScalarExpr::fraction(n, f.den());
    return ScalarExpr::fraction(n, substitute(f.den(), F, dim));
}

Form<ScalarExpr> pullback_affine(const Form<ScalarExpr>& a, const AffineMap& F) {
    int d = a.dim();
    Mat<GaussRat> A(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) A(i, j) = F.A[static_cast<size_t>(i)][static_cast<size_t>(j)];
    if (is_zero(det(A))) throw SingularMap("affine map is singular");
    // F^* dx_i = sum_j A_ij dy_j
    std::vector<Form<ScalarExpr>> dx;
    for (int i = 0; i < d; ++i) {
        Form<ScalarExpr> f(a.chart);
        for (int j = 0; j < d; ++j) f.add(1u << j, ScalarExpr(A(i, j)));
        dx.push_back(std::move(f));
    }
    Form<ScalarExpr> r(a.chart);
    for (const auto& [m, v] : a.c) {
        Form<ScalarExpr> t(a.chart, pullback_affine(v, F));
        for (int i = 0; i < d; ++i)
            if (m & (1u << i)) t = wedge(t, dx[static_cast<size_t>(i)]);
        r += t;
    }
    return r;
}

std::string index_label(const Chart& ch, unsigned mask) {
    if (mask == 0) return "1";
    std::string s;
    for (int j = 0; j < ch.dim(); ++j)
        if (mask & (1u << j)) {
            if (!s.empty()) s += "^";
            s += "d" + ch.names[static_cast<size_t>(j)];
        }
    return s;
}

unsigned parse_index_label(const Chart& ch, const std::string& label, int& sign) {
    sign = 1;
    if (label == "1") return 0;
    unsigned mask = 0;
    size_t pos = 0;
    while (pos <= label.size()) {
        size_t end = label.find('^', pos);
        if (end == std::string::npos) end = label.size();
        std::string tok = label.substr(pos, end - pos);
        while (!tok.empty() && tok.front() == ' ') tok.erase(tok.begin());
        while (!tok.empty() && tok.back() == ' ') tok.pop_back();
        if (tok.size() < 2 || tok[0] != 'd') throw ParseError("bad form index \"" + label + "\"");
        auto it = std::find(ch.names.begin(), ch.names.end(), tok.substr(1));
        if (it == ch.names.end()) throw ParseError("unknown coordinate in form index \"" + label + "\"");
        int j = static_cast<int>(it - ch.names.begin());
        if (mask & (1u << j)) throw ParseError("repeated coordinate in form index \"" + label + "\"");
        // appending dx_j on the right: move it past the higher indices already present
        if (std::popcount(mask >> (j + 1)) & 1) sign = -sign;
        mask |= 1u << j;
        pos = end + 1;
    }
    return mask;
}

std::vector<unsigned> sorted_masks(const std::vector<unsigned>& masks) {
    auto key = [](unsigned m) {
        std::vector<int> idx;
        for (unsigned x = m; x; x &= x - 1) idx.push_back(std::countr_zero(x));
        return std::make_pair(std::popcount(m), idx);
    };
    std::vector<unsigned> out = masks;
    std::sort(out.begin(), out.end(), [&](unsigned a, unsigned b) { return key(a) < key(b); });
    return out;
}

std::string form_str(const Form<ScalarExpr>& f) {
    if (f.is_zero()) return "0";
    std::vector<unsigned> masks;
    for (const auto& [m, v] : f.c) masks.push_back(m);
    std::ostringstream os;
    bool first = true;
    for (unsigned m : sorted_masks(masks)) {
        if (!first) os << " + ";
        first = false;
        os << "(" << f.c.at(m).str(f.chart->names) << ")";
        if (m) os << "*" << index_label(*f.chart, m);
    }
    return os.str();
}

// ---- jets ----------------------------------------------------------------------

namespace {

template <class J, class Eval>
J build_jet(const ScalarExpr& f, int dim, int order, Eval&& ev) {
    J r;
    r.order = order;
    r.v = ev(f);
    if (order >= 1) {
        int d = std::min(dim, kJetDim);
        for (int i = 0; i < d; ++i) {
            ScalarExpr fi = f.partial(i);
            if (fi.is_zero()) continue;
            r.g[static_cast<size_t>(i)] = ev(fi);
            if (order >= 2)
                for (int j = i; j < d; ++j) {
                    ScalarExpr fij = fi.partial(j);
                    if (!fij.is_zero()) r.hess(i, j) = ev(fij);
                }
        }
    }
    return r;
}

}  // namespace

JetQ jet_at(const ScalarExpr& f, const Point& p, int order) {
    return build_jet<JetQ>(
        f, static_cast<int>(p.dim()), order, [&](const ScalarExpr& g) { return g.eval(p); });
}

JetC jet_at(const ScalarExpr& f, const std::vector<double>& xs, int order) {
    return build_jet<JetC>(
        f, static_cast<int>(xs.size()), order, [&](const ScalarExpr& g) { return g.eval_numeric(xs); });
}

}  // namespace gkcurv
