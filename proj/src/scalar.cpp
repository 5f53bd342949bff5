#include "gkcurv/scalar.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace gkcurv {

namespace {

const Poly& one_poly() {
    static const Poly p(GaussRat(1));
    return p;
}

Mono e_part_min(const Poly& p) {
    Mono m = p.min_exponents();
    for (int j = 0; j < kMaxCoords; ++j) m.e[xslot(j)] = 0;
    return m;
}

Mono negate(const Mono& m) {
    Mono r;
    for (int s = 0; s < kSlots; ++s) r.e[s] = static_cast<int16_t>(-m.e[s]);
    return r;
}

}  // namespace

namespace {
// shared representations of small integers avoid an allocation per zero
const std::shared_ptr<const ScalarExpr::Rep>& small_rep(long v) {
    static const auto table = [] {
        std::vector<std::shared_ptr<const ScalarExpr::Rep>> t;
        for (long k = -4; k <= 4; ++k)
            t.push_back(std::make_shared<const ScalarExpr::Rep>(ScalarExpr::Rep{k == 0 ? Poly() : Poly(GaussRat(k)), one_poly()}));
        return t;
    }();
    return table[static_cast<size_t>(v + 4)];
}
}  // namespace

ScalarExpr::ScalarExpr() : rep_(small_rep(0)) {}
ScalarExpr::ScalarExpr(long v)
    : rep_(v >= -4 && v <= 4 ? small_rep(v) : std::make_shared<const Rep>(Rep{Poly(GaussRat(v)), one_poly()})) {}
ScalarExpr::ScalarExpr(const GaussRat& c) : rep_(std::make_shared<Rep>(Rep{Poly(c), one_poly()})) {}
ScalarExpr::ScalarExpr(const Poly& p) : rep_(std::make_shared<Rep>(Rep{p, one_poly()})) {}

ScalarExpr ScalarExpr::raw(Poly num, Poly den) {
    ScalarExpr r;
    r.rep_ = std::make_shared<Rep>(Rep{std::move(num), std::move(den)});
    return r;
}

// num/den already coprime; move E-monomial factors of den into num and make den monic.
ScalarExpr ScalarExpr::coprime(Poly num, Poly den) {
    if (den.is_zero()) throw DivisionByZero("zero denominator");
    if (num.is_zero()) return ScalarExpr();
    Mono md = e_part_min(den);
    if (!md.is_one()) {
        den = den.shifted(negate(md));
        num = num.shifted(negate(md));
    }
    GaussRat lc = den.lead().c;
    if (!lc.is_one()) {
        GaussRat inv = lc.inv();
        num = num.scaled(inv);
        den = den.scaled(inv);
    }
    if (den.is_constant()) den = one_poly();
    return raw(std::move(num), std::move(den));
}

ScalarExpr ScalarExpr::fraction(const Poly& n, const Poly& d) {
    if (d.is_zero()) throw DivisionByZero("division by an expression equal to zero");
    if (n.is_zero()) return ScalarExpr();
    if (d.is_constant()) return ScalarExpr(n.scaled(d.constant_value().inv()));
    Mono mn = e_part_min(n), md = e_part_min(d);
    Poly n1 = n.shifted(negate(mn)), d1 = d.shifted(negate(md));
    Mono net = mn / md;
    if (d1.is_monomial()) {
        // cancel common powers of x directly
        Mono dm = d1.lead().m;
        Mono nm = n1.min_exponents();
        Mono g;
        for (int j = 0; j < kMaxCoords; ++j) g.e[xslot(j)] = std::min(nm.e[xslot(j)], dm.e[xslot(j)]);
        return coprime(n1.shifted(negate(g)).shifted(net), Poly::term(dm / g, d1.lead().c));
    }
    if (auto q = divide_exact(n1, d1)) return ScalarExpr(q->shifted(net));
    Poly g = poly_gcd(n1, d1);
    if (!g.is_constant()) {
        n1 = *divide_exact(n1, g);
        d1 = *divide_exact(d1, g);
    }
    return coprime(n1.shifted(net), d1);
}

ScalarExpr ScalarExpr::coord(int j) { return ScalarExpr(Poly::var_x(j)); }
ScalarExpr ScalarExpr::I() { return ScalarExpr(GaussRat::I()); }

namespace {
Poly phase_vec(const std::vector<int>& k, int sign) {
    Mono m;
    for (size_t j = 0; j < k.size(); ++j) m.e[eslot(static_cast<int>(j))] = static_cast<int16_t>(sign * k[j]);
    return Poly::term(m, GaussRat(1));
}
}  // namespace

ScalarExpr ScalarExpr::cos_lin(const std::vector<int>& k) {
    return ScalarExpr((phase_vec(k, 1) + phase_vec(k, -1)).scaled(GaussRat::ratio(1, 2)));
}
ScalarExpr ScalarExpr::sin_lin(const std::vector<int>& k) {
    // (E^k - E^-k) / (2i) = -i/2 (E^k - E^-k)
    return ScalarExpr((phase_vec(k, 1) - phase_vec(k, -1)).scaled(GaussRat(0, mpq_class(-1, 2))));
}

GaussRat ScalarExpr::constant_value() const {
    return rep_->num.constant_value() / rep_->den.constant_value();
}

ScalarExpr ScalarExpr::conj() const {
    if (is_polynomial()) return ScalarExpr(rep_->num.conj());
    return coprime(rep_->num.conj(), rep_->den.conj());
}

bool ScalarExpr::is_real() const { return *this == conj(); }

ScalarExpr ScalarExpr::re() const { return (*this + conj()) * ScalarExpr(GaussRat::ratio(1, 2)); }
ScalarExpr ScalarExpr::im() const { return (*this - conj()) * ScalarExpr(GaussRat(0, mpq_class(-1, 2))); }

ScalarExpr ScalarExpr::operator-() const { return raw(-rep_->num, rep_->den); }

ScalarExpr operator+(const ScalarExpr& a, const ScalarExpr& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.is_polynomial() && b.is_polynomial()) return ScalarExpr(a.num() + b.num());
    if (a.den() == b.den()) return ScalarExpr::fraction(a.num() + b.num(), a.den());
    if (b.is_polynomial()) return ScalarExpr::raw(a.num() + b.num() * a.den(), a.den());
    if (a.is_polynomial()) return ScalarExpr::raw(a.num() * b.den() + b.num(), b.den());
    Poly g = poly_gcd(a.den(), b.den());
    Poly ad = a.den(), bd = b.den();
    if (!g.is_constant()) {
        ad = *divide_exact(ad, g);
        bd = *divide_exact(bd, g);
    }
    Poly num = a.num() * bd + b.num() * ad;
    if (g.is_constant()) {
        // coprime denominators: the sum is already reduced
        return ScalarExpr::coprime(std::move(num), a.den() * bd);
    }
    return ScalarExpr::fraction(num, a.den() * bd);
}

ScalarExpr operator-(const ScalarExpr& a, const ScalarExpr& b) { return a + (-b); }

ScalarExpr operator*(const ScalarExpr& a, const ScalarExpr& b) {
    if (a.is_zero() || b.is_zero()) return ScalarExpr();
    if (a.is_polynomial() && b.is_polynomial()) return ScalarExpr(a.num() * b.num());
    if (a.is_constant()) return ScalarExpr::raw(b.num().scaled(a.constant_value()), b.den());
    if (b.is_constant()) return ScalarExpr::raw(a.num().scaled(b.constant_value()), a.den());
    Poly an = a.num(), ad = a.den(), bn = b.num(), bd = b.den();
    if (!bd.is_constant()) {
        Poly g = laurent_gcd(an, bd);
        if (!g.is_constant()) {
            an = laurent_divide(an, g);
            bd = *divide_exact(bd, g);
        }
    }
    if (!ad.is_constant()) {
        Poly g = laurent_gcd(bn, ad);
        if (!g.is_constant()) {
            bn = laurent_divide(bn, g);
            ad = *divide_exact(ad, g);
        }
    }
    return ScalarExpr::coprime(an * bn, ad * bd);
}

ScalarExpr ScalarExpr::inv() const {
    if (is_zero()) throw DivisionByZero("division by an expression equal to zero");
    return coprime(rep_->den, rep_->num);
}

ScalarExpr operator/(const ScalarExpr& a, const ScalarExpr& b) { return a * b.inv(); }

bool operator==(const ScalarExpr& a, const ScalarExpr& b) {
    if (a.rep_ == b.rep_) return true;
    return a.num() == b.num() && a.den() == b.den();
}

ScalarExpr ScalarExpr::pow(int k) const {
    if (k < 0) return inv().pow(-k);
    if (is_polynomial()) return ScalarExpr(rep_->num.pow(static_cast<unsigned>(k)));
    return coprime(rep_->num.pow(static_cast<unsigned>(k)), rep_->den.pow(static_cast<unsigned>(k)));
}

ScalarExpr ScalarExpr::partial(int j) const {
    const Poly& n = rep_->num;
    if (is_polynomial()) return ScalarExpr(n.partial(j));
    const Poly& d = rep_->den;
    Poly dd = d.partial(j);
    if (dd.is_zero()) return coprime(n.partial(j), d);
    // (n/d)' = (n' d1 - n d2) / (d d1) with d = h d1, d' = h d2, h = gcd(d, d')
    Poly h = poly_gcd(d, dd);
    Poly d1 = d, d2 = dd;
    if (!h.is_constant()) {
        d1 = *divide_exact(d, h);
        d2 = *divide_exact(dd, h);
    }
    return fraction(n.partial(j) * d1 - n * d2, d * d1);
}

GaussRat ScalarExpr::eval(const Point& p) const {
    size_t dim = p.dim();
    unsigned mask = coord_mask();
    std::vector<GaussRat> xs(dim), es(dim, GaussRat(1));
    for (size_t j = 0; j < dim; ++j) {
        int jj = static_cast<int>(j);
        bool need_x = rep_->num.uses_slot(xslot(jj)) || rep_->den.uses_slot(xslot(jj));
        bool need_e = rep_->num.uses_slot(eslot(jj)) || rep_->den.uses_slot(eslot(jj));
        if (need_x) {
            if (!p.x[j]) throw NotExact("coordinate " + std::to_string(j) + " has no exact value");
            xs[j] = *p.x[j];
        }
        if (need_e) {
            if (!p.e[j]) throw NotExact("angle of coordinate " + std::to_string(j) + " has no exact phase");
            es[j] = *p.e[j];
        }
    }
    if (mask >> dim) throw ChartMismatch("expression uses a coordinate outside the point");
    GaussRat d = rep_->den.eval(xs, es);
    if (d.is_zero()) throw EvaluationPole("denominator vanishes at the point");
    return rep_->num.eval(xs, es) / d;
}

// ---- printing ------------------------------------------------------------

namespace {

std::string lin_str(const std::vector<int>& k, const std::vector<std::string>& names) {
    std::string s;
    for (size_t j = 0; j < k.size(); ++j) {
        if (k[j] == 0) continue;
        int a = std::abs(k[j]);
        std::string piece = (a == 1 ? "" : std::to_string(a) + "*") + names.at(j);
        if (s.empty())
            s = (k[j] < 0 ? "-" : "") + piece;
        else
            s += (k[j] < 0 ? " - " : " + ") + piece;
    }
    return s;
}

std::string xmono_str(const Mono& m, const std::vector<std::string>& names) {
    std::string s;
    for (int j = 0; j < kMaxCoords; ++j) {
        int a = m.e[xslot(j)];
        if (a == 0) continue;
        if (!s.empty()) s += "*";
        s += names.at(static_cast<size_t>(j));
        if (a != 1) s += "^" + std::to_string(a);
    }
    return s;
}

// coefficient times factor string; handles 1, -1 and parenthesization
std::string scaled_str(const GaussRat& c, const std::string& factor) {
    if (factor.empty()) return c.str(false);
    if (c.is_one()) return factor;
    if (c == GaussRat(-1)) return "-" + factor;
    return c.str(true) + "*" + factor;
}

}  // namespace

std::string poly_str(const Poly& p, const std::vector<std::string>& names) {
    if (p.is_zero()) return "0";
    // group by x-monomial, then by the E-vector up to sign
    struct XKey {
        Mono m;
        bool operator<(const XKey& o) const { return mono_cmp(m, o.m) > 0; }
    };
    using KVec = std::vector<int>;
    auto kcmp = [](const KVec& a, const KVec& b) {
        int la = 0, lb = 0;
        for (size_t j = 0; j < a.size(); ++j) {
            la += std::abs(a[j]);
            lb += std::abs(b[j]);
        }
        if (la != lb) return la < lb;
        return a > b;
    };
    std::map<XKey, std::map<KVec, std::pair<GaussRat, GaussRat>, decltype(kcmp)>> groups;
    size_t nc = names.size();
    for (const auto& t : p.terms()) {
        Mono xm;
        KVec k(nc, 0);
        for (int j = 0; j < kMaxCoords; ++j) xm.e[xslot(j)] = t.m.e[xslot(j)];
        for (size_t j = 0; j < nc; ++j) k[j] = t.m.e[eslot(static_cast<int>(j))];
        int sign = 1;
        for (int v : k)
            if (v != 0) {
                sign = v > 0 ? 1 : -1;
                break;
            }
        KVec kc = k;
        if (sign < 0)
            for (auto& v : kc) v = -v;
        auto& inner = groups.try_emplace(XKey{xm}, kcmp).first->second;
        auto& slot = inner[kc];
        (sign > 0 ? slot.first : slot.second) += t.c;
    }
    std::vector<std::string> pieces;
    for (const auto& [xk, inner] : groups) {
        std::string xs = xmono_str(xk.m, names);
        for (const auto& [k, cs] : inner) {
            bool zero_k = std::all_of(k.begin(), k.end(), [](int v) { return v == 0; });
            if (zero_k) {
                pieces.push_back(scaled_str(cs.first + cs.second, xs));
                continue;
            }
            // c+ E^k + c- E^-k = (c+ + c-) cos + i (c+ - c-) sin
            GaussRat a = cs.first + cs.second;
            GaussRat b = GaussRat::I() * (cs.first - cs.second);
            std::string arg = lin_str(k, names);
            auto join = [&](const std::string& trig) { return xs.empty() ? trig : xs + "*" + trig; };
            if (!a.is_zero()) pieces.push_back(scaled_str(a, join("cos(" + arg + ")")));
            if (!b.is_zero()) pieces.push_back(scaled_str(b, join("sin(" + arg + ")")));
        }
    }
    std::string s;
    for (const auto& pc : pieces) {
        if (s.empty())
            s = pc;
        else if (pc[0] == '-')
            s += " - " + pc.substr(1);
        else
            s += " + " + pc;
    }
    return s.empty() ? "0" : s;
}

std::string ScalarExpr::str(const std::vector<std::string>& names) const {
    if (is_polynomial()) return poly_str(rep_->num, names);
    // recentre the phases of the denominator so that e.g. 1 + E^2 prints as 2cos
    Mono c;
    for (size_t j = 0; j < names.size(); ++j) {
        int s = eslot(static_cast<int>(j));
        c.e[s] = static_cast<int16_t>(-(rep_->den.max_exp(s) / 2));
    }
    std::string n = poly_str(rep_->num.shifted(c), names);
    std::string d = poly_str(rep_->den.shifted(c), names);
    return "(" + n + ")/(" + d + ")";
}

std::vector<std::string> default_names(size_t n) {
    std::vector<std::string> v;
    for (size_t j = 0; j < n; ++j) v.push_back("x" + std::to_string(j + 1));
    return v;
}

std::ostream& operator<<(std::ostream& os, const ScalarExpr& a) { return os << a.str(default_names()); }

// ---- Gaussian rational text ---------------------------------------------

std::string rational_str(const mpq_class& q) { return q.get_str(); }

std::string GaussRat::str(bool paren) const {
    if (sgn(im) == 0) {
        return re.get_str();
    }
    std::string imag;
    if (im == 1)
        imag = "i";
    else if (im == -1)
        imag = "-i";
    else
        imag = im.get_str() + "*i";
    if (sgn(re) == 0) return imag;
    std::string s = re.get_str() + (sgn(im) < 0 ? " - " + imag.substr(1) : " + " + imag);
    return paren ? "(" + s + ")" : s;
}

}  // namespace gkcurv
