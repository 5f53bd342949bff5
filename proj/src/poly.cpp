#include "gkcurv/poly.hpp"

#include <algorithm>

namespace gkcurv {

namespace {

bool desc(const Term& a, const Term& b) { return mono_cmp(a.m, b.m) > 0; }

// Merge two sorted term lists with sign s for the second.
std::vector<Term> merge(const std::vector<Term>& a, const std::vector<Term>& b, bool negate_b) {
    std::vector<Term> out;
    out.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        int c = (i == a.size()) ? -1 : (j == b.size()) ? 1 : mono_cmp(a[i].m, b[j].m);
        if (c > 0) {
            out.push_back(a[i++]);
        } else if (c < 0) {
            out.push_back(negate_b ? Term{b[j].m, -b[j].c} : b[j]);
            ++j;
        } else {
            GaussRat s = negate_b ? a[i].c - b[j].c : a[i].c + b[j].c;
            if (!s.is_zero()) out.push_back(Term{a[i].m, std::move(s)});
            ++i;
            ++j;
        }
    }
    return out;
}

}  // namespace

Poly::Poly(const GaussRat& c) {
    if (!c.is_zero()) t_.push_back(Term{Mono{}, c});
}

Poly Poly::term(const Mono& m, const GaussRat& c) {
    Poly p;
    if (!c.is_zero()) p.t_.push_back(Term{m, c});
    return p;
}

Poly Poly::var_x(int j) {
    Mono m;
    m.e[xslot(j)] = 1;
    return term(m, GaussRat(1));
}

Poly Poly::phase(int j, int k) {
    Mono m;
    m.e[eslot(j)] = static_cast<int16_t>(k);
    return term(m, GaussRat(1));
}

GaussRat Poly::constant_value() const { return t_.empty() ? GaussRat(0) : t_[0].c; }

Poly Poly::from_terms(std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(), desc);
    Poly p;
    p.t_.reserve(terms.size());
    for (auto& t : terms) {
        if (!p.t_.empty() && p.t_.back().m == t.m) {
            p.t_.back().c += t.c;
        } else {
            if (!p.t_.empty() && p.t_.back().c.is_zero()) p.t_.pop_back();
            p.t_.push_back(std::move(t));
        }
    }
    if (!p.t_.empty() && p.t_.back().c.is_zero()) p.t_.pop_back();
    return p;
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& t : r.t_) t.c = -t.c;
    return r;
}

Poly& Poly::operator+=(const Poly& o) {
    t_ = merge(t_, o.t_, false);
    return *this;
}
Poly& Poly::operator-=(const Poly& o) {
    t_ = merge(t_, o.t_, true);
    return *this;
}
Poly operator+(const Poly& a, const Poly& b) {
    Poly r;
    r.t_ = merge(a.t_, b.t_, false);
    return r;
}
Poly operator-(const Poly& a, const Poly& b) {
    Poly r;
    r.t_ = merge(a.t_, b.t_, true);
    return r;
}

Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    if (a.size() == 1 && a.t_[0].m.is_one()) return b.scaled(a.t_[0].c);
    if (b.size() == 1 && b.t_[0].m.is_one()) return a.scaled(b.t_[0].c);
    if (b.size() == 1) {
        // multiplication by a monomial preserves the order
        Poly r;
        r.t_.reserve(a.size());
        for (const auto& t : a.t_) r.t_.push_back(Term{t.m * b.t_[0].m, t.c * b.t_[0].c});
        return r;
    }
    if (a.size() == 1) return b * a;
    std::vector<Term> all;
    all.reserve(a.size() * b.size());
    for (const auto& x : a.t_)
        for (const auto& y : b.t_) all.push_back(Term{x.m * y.m, x.c * y.c});
    return Poly::from_terms(std::move(all));
}

Poly Poly::scaled(const GaussRat& c) const {
    if (c.is_zero()) return Poly();
    if (c.is_one()) return *this;
    Poly r = *this;
    for (auto& t : r.t_) t.c *= c;
    return r;
}

Poly Poly::shifted(const Mono& m) const {
    if (m.is_one()) return *this;
    Poly r = *this;
    for (auto& t : r.t_) t.m = t.m * m;
    return r;
}

Poly Poly::pow(unsigned k) const {
    Poly result(GaussRat(1)), base = *this;
    while (k) {
        if (k & 1u) result = result * base;
        k >>= 1u;
        if (k) base = base * base;
    }
    return result;
}

bool operator==(const Poly& a, const Poly& b) {
    if (a.t_.size() != b.t_.size()) return false;
    for (size_t i = 0; i < a.t_.size(); ++i)
        if (a.t_[i].m != b.t_[i].m || a.t_[i].c != b.t_[i].c) return false;
    return true;
}

int poly_cmp(const Poly& a, const Poly& b) {
    size_t n = std::min(a.t_.size(), b.t_.size());
    for (size_t i = 0; i < n; ++i) {
        int c = mono_cmp(a.t_[i].m, b.t_[i].m);
        if (c) return c;
        c = cmp(a.t_[i].c, b.t_[i].c);
        if (c) return c;
    }
    if (a.t_.size() == b.t_.size()) return 0;
    return a.t_.size() < b.t_.size() ? -1 : 1;
}

Mono Poly::min_exponents() const {
    Mono r;
    if (t_.empty()) return r;
    r = t_[0].m;
    for (const auto& t : t_)
        for (int s = 0; s < kSlots; ++s) r.e[s] = std::min(r.e[s], t.m.e[s]);
    return r;
}

int Poly::max_exp(int slot) const {
    int r = 0;
    bool first = true;
    for (const auto& t : t_) {
        if (first || t.m.e[slot] > r) r = t.m.e[slot];
        first = false;
    }
    return r;
}

bool Poly::uses_slot(int slot) const {
    for (const auto& t : t_)
        if (t.m.e[slot] != 0) return true;
    return false;
}

unsigned Poly::coord_mask() const {
    unsigned mask = 0;
    for (const auto& t : t_)
        for (int j = 0; j < kMaxCoords; ++j)
            if (t.m.e[xslot(j)] != 0 || t.m.e[eslot(j)] != 0) mask |= 1u << j;
    return mask;
}

Poly Poly::conj() const {
    std::vector<Term> out;
    out.reserve(t_.size());
    for (const auto& t : t_) {
        Term u{t.m, t.c.conj()};
        for (int j = 0; j < kMaxCoords; ++j) u.m.e[eslot(j)] = static_cast<int16_t>(-u.m.e[eslot(j)]);
        out.push_back(std::move(u));
    }
    return from_terms(std::move(out));
}

Poly Poly::partial(int j) const {
    std::vector<Term> out;
    out.reserve(2 * t_.size());
    for (const auto& t : t_) {
        int a = t.m.e[xslot(j)];
        int k = t.m.e[eslot(j)];
        if (a != 0) {
            Term u{t.m, t.c * GaussRat(a)};
            u.m.e[xslot(j)] = static_cast<int16_t>(a - 1);
            out.push_back(std::move(u));
        }
        if (k != 0) out.push_back(Term{t.m, t.c * GaussRat(0, k)});
    }
    return from_terms(std::move(out));
}

Poly Poly::monic() const {
    if (t_.empty() || t_[0].c.is_one()) return *this;
    return scaled(t_[0].c.inv());
}

GaussRat Poly::eval(const std::vector<GaussRat>& xs, const std::vector<GaussRat>& es) const {
    // Powers are cached per slot to keep repeated evaluation cheap.
    GaussRat sum(0);
    std::vector<GaussRat> einv(es.size());
    for (size_t j = 0; j < es.size(); ++j) einv[j] = es[j].inv();
    for (const auto& t : t_) {
        GaussRat v = t.c;
        for (int j = 0; j < kMaxCoords; ++j) {
            int a = t.m.e[xslot(j)], k = t.m.e[eslot(j)];
            for (int q = 0; q < a; ++q) v *= xs.at(j);
            if (k > 0)
                for (int q = 0; q < k; ++q) v *= es.at(j);
            else
                for (int q = 0; q < -k; ++q) v *= einv.at(j);
        }
        sum += v;
    }
    return sum;
}

std::vector<Poly> Poly::coeffs_in(int s) const {
    std::vector<std::vector<Term>> buckets(static_cast<size_t>(max_exp(s)) + 1);
    for (const auto& t : t_) {
        Term u = t;
        int d = u.m.e[s];
        u.m.e[s] = 0;
        buckets[static_cast<size_t>(d)].push_back(std::move(u));
    }
    std::vector<Poly> out(buckets.size());
    for (size_t d = 0; d < buckets.size(); ++d) {
        // removing one slot keeps relative order within a bucket
        out[d].t_ = std::move(buckets[d]);
    }
    return out;
}

std::optional<Poly> divide_exact(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
    if (a.is_zero()) return Poly();
    const Term& lb = b.lead();
    if (b.is_monomial()) {
        std::vector<Term> q;
        q.reserve(a.size());
        GaussRat inv = lb.c.inv();
        for (const auto& t : a.terms()) {
            if (!t.m.divisible_by(lb.m)) return std::nullopt;
            q.push_back(Term{t.m / lb.m, t.c * inv});
        }
        return Poly::from_terms(std::move(q));
    }
    // quick degree screening: every slot degree of b must fit in a
    for (int s = 0; s < kSlots; ++s)
        if (b.max_exp(s) > a.max_exp(s)) return std::nullopt;
    GaussRat inv = lb.c.inv();
    Poly r = a;
    std::vector<Term> q;
    while (!r.is_zero()) {
        const Term& lr = r.lead();
        if (!lr.m.divisible_by(lb.m)) return std::nullopt;
        Term qt{lr.m / lb.m, lr.c * inv};
        r -= Poly::term(qt.m, qt.c) * b;
        q.push_back(std::move(qt));
    }
    return Poly::from_terms(std::move(q));
}

}  // namespace gkcurv
