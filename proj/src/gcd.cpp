// Multivariate gcd over Q(i) by recursive primitive polynomial remainder
// sequences. Inputs have nonnegative exponents in every slot.

#include <algorithm>
#include <array>
#include <cstdint>

#include "gkcurv/poly.hpp"

namespace gkcurv {

namespace {

// ---- modular coprimality certificate -------------------------------------
// Images in F_p with p = 2^64 - 2^32 + 1 (p = 1 mod 4, so i maps to a square
// root of -1). If, for every shared variable v, the images of a and b under a
// substitution of all other variables have a constant gcd while their leading
// coefficients in v survive, then gcd(a, b) is constant.
namespace modp {
using u64 = uint64_t;
using u128 = unsigned __int128;
constexpr u64 P = 0xFFFFFFFF00000001ULL;
u64 mul(u64 a, u64 b) { return static_cast<u64>((static_cast<u128>(a) * b) % P); }
u64 add(u64 a, u64 b) { u64 r = a + b; return (r >= P || r < a) ? r - P : r; }
u64 sub(u64 a, u64 b) { return a >= b ? a - b : a + (P - b); }
u64 pw(u64 a, u64 e) {
    u64 r = 1;
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}
u64 inv(u64 a) { return pw(a, P - 2); }
u64 sqrt_minus_one() {
    static const u64 v = pw(7, (P - 1) / 4);
    return v;
}
bool rat(const mpq_class& q, u64& out) {
    u64 n = mpz_fdiv_ui(q.get_num_mpz_t(), P);
    u64 d = mpz_fdiv_ui(q.get_den_mpz_t(), P);
    if (d == 0) return false;
    out = mul(n, inv(d));
    return true;
}
bool coeff(const GaussRat& c, u64& out) {
    u64 r, i;
    if (!rat(c.re, r) || !rat(c.im, i)) return false;
    out = add(r, mul(i, sqrt_minus_one()));
    return true;
}
using UPoly = std::vector<u64>;  // index = degree
void trim(UPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}
// image of p as a univariate polynomial in slot s; false if a coefficient is undefined
bool image(const Poly& p, int s, const std::array<u64, kSlots>& vals, UPoly& out) {
    out.assign(static_cast<size_t>(p.max_exp(s)) + 1, 0);
    for (const auto& t : p.terms()) {
        u64 v;
        if (!coeff(t.c, v)) return false;
        for (int q = 0; q < kSlots; ++q)
            if (q != s && t.m.e[q] != 0) v = mul(v, pw(vals[q], static_cast<u64>(t.m.e[q])));
        auto& slot = out[static_cast<size_t>(t.m.e[s])];
        slot = add(slot, v);
    }
    return true;
}
size_t gcd_degree(UPoly a, UPoly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        // a mod b
        u64 ib = inv(b.back());
        while (a.size() >= b.size()) {
            u64 f = mul(a.back(), ib);
            size_t off = a.size() - b.size();
            for (size_t k = 0; k < b.size(); ++k) a[off + k] = sub(a[off + k], mul(f, b[k]));
            trim(a);
            if (a.empty()) break;
        }
        std::swap(a, b);
    }
    return a.empty() ? 0 : a.size() - 1;
}
}  // namespace modp

bool certainly_coprime(const Poly& a, const Poly& b) {
    static thread_local uint64_t state = 0x9E3779B97F4A7C15ULL;
    auto next = [] {
        uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return (z ^ (z >> 31)) % modp::P;
    };
    std::array<uint64_t, kSlots> vals{};
    for (auto& v : vals) v = next();
    bool any = false;
    for (int s = 0; s < kSlots; ++s) {
        if (!a.uses_slot(s) || !b.uses_slot(s)) continue;
        any = true;
        modp::UPoly ia, ib;
        if (!modp::image(a, s, vals, ia) || !modp::image(b, s, vals, ib)) return false;
        if (ia.back() == 0 || ib.back() == 0) return false;
        if (modp::gcd_degree(ia, ib) != 0) return false;
    }
    return any;
}

Poly mono_poly(const Mono& m) { return Poly::term(m, GaussRat(1)); }

Mono neg(const Mono& m) {
    Mono r;
    for (int s = 0; s < kSlots; ++s) r.e[s] = static_cast<int16_t>(-m.e[s]);
    return r;
}

Mono slot_min(const Mono& a, const Mono& b) {
    Mono r;
    for (int s = 0; s < kSlots; ++s) r.e[s] = std::min(a.e[s], b.e[s]);
    return r;
}

Poly exact(const Poly& a, const Poly& b) {
    auto q = divide_exact(a, b);
    if (!q) throw DecompositionFailed("internal: gcd division was not exact");
    return *q;
}

Poly gcd_rec(const Poly& a, const Poly& b);

// gcd of the coefficients of p with respect to slot s
Poly content_in(const Poly& p, int s) {
    auto cs = p.coeffs_in(s);
    std::vector<const Poly*> nz;
    for (const auto& c : cs)
        if (!c.is_zero()) nz.push_back(&c);
    std::sort(nz.begin(), nz.end(), [](const Poly* x, const Poly* y) { return x->size() < y->size(); });
    Poly g = nz.front()->monic();
    for (size_t i = 1; i < nz.size() && !g.is_constant(); ++i) g = gcd_rec(g, *nz[i]);
    return g.is_constant() ? Poly(GaussRat(1)) : g;
}

Poly prim_in(const Poly& p, int s) {
    Poly c = content_in(p, s);
    return (c.is_constant() ? p : exact(p, c)).monic();
}

// leading coefficient with respect to slot s, and the degree
std::pair<Poly, int> lead_in(const Poly& p, int s) {
    auto cs = p.coeffs_in(s);
    int d = static_cast<int>(cs.size()) - 1;
    return {cs.back(), d};
}

Poly prem(Poly r, const Poly& b, int s) {
    auto [lcb, db] = lead_in(b, s);
    while (!r.is_zero()) {
        auto [lcr, dr] = lead_in(r, s);
        if (dr < db) break;
        Mono sh;
        sh.e[s] = static_cast<int16_t>(dr - db);
        r = r * lcb - (lcr * b).shifted(sh);
    }
    return r;
}

// gcd of polynomials that are primitive with respect to slot s
Poly prs(Poly a, Poly b, int s) {
    if (a.max_exp(s) < b.max_exp(s)) std::swap(a, b);
    while (true) {
        if (b.max_exp(s) == 0) return Poly(GaussRat(1));
        if (certainly_coprime(a, b)) return Poly(GaussRat(1));
        if (auto q = divide_exact(a, b)) return b.monic();
        Poly r = prem(a, b, s);
        if (r.is_zero()) return b.monic();
        if (r.max_exp(s) == 0) return Poly(GaussRat(1));
        a = std::move(b);
        b = prim_in(r, s);
    }
}

Poly gcd_rec(const Poly& a0, const Poly& b0) {
    if (a0.is_zero()) return b0.monic();
    if (b0.is_zero()) return a0.monic();
    Mono ma = a0.min_exponents(), mb = b0.min_exponents();
    Mono m = slot_min(ma, mb);
    Poly a = a0.shifted(neg(ma)), b = b0.shifted(neg(mb));
    Poly mp = mono_poly(m);
    if (a.is_constant() || b.is_constant()) return mp;
    if (a.monic() == b.monic()) return a.monic() * mp;

    // choose a slot present in both with the smallest degree
    int best = -1, bestdeg = 0;
    bool in_a[kSlots] = {}, in_b[kSlots] = {};
    for (int s = 0; s < kSlots; ++s) {
        in_a[s] = a.uses_slot(s);
        in_b[s] = b.uses_slot(s);
        if (in_a[s] && in_b[s]) {
            int d = std::max(a.max_exp(s), b.max_exp(s));
            if (best < 0 || d < bestdeg) {
                best = s;
                bestdeg = d;
            }
        }
    }
    if (best < 0) return mp;  // disjoint variables: only a constant can divide both

    // a slot used by only one side must be absent from the gcd
    for (int s = 0; s < kSlots; ++s) {
        if (in_a[s] && !in_b[s]) return (gcd_rec(content_in(a, s), b) * mp).monic();
        if (in_b[s] && !in_a[s]) return (gcd_rec(a, content_in(b, s)) * mp).monic();
    }

    if (certainly_coprime(a, b)) return mp;
    if (auto q = divide_exact(a, b)) return b.monic() * mp;
    if (auto q = divide_exact(b, a)) return a.monic() * mp;

    int s = best;
    Poly ca = content_in(a, s), cb = content_in(b, s);
    Poly c = (ca.is_constant() || cb.is_constant()) ? Poly(GaussRat(1)) : gcd_rec(ca, cb);
    Poly pa = ca.is_constant() ? a : exact(a, ca);
    Poly pb = cb.is_constant() ? b : exact(b, cb);
    Poly g = prs(pa.monic(), pb.monic(), s);
    return (g * c * mp).monic();
}

Mono e_min(const Poly& p) {
    Mono m = p.min_exponents();
    for (int j = 0; j < kMaxCoords; ++j) m.e[xslot(j)] = 0;
    return m;
}

}  // namespace

Poly poly_gcd(const Poly& a, const Poly& b) { return gcd_rec(a, b); }

Poly laurent_gcd(const Poly& a, const Poly& b) {
    Poly sa = a.shifted(neg(e_min(a)));
    Poly sb = b.shifted(neg(e_min(b)));
    return gcd_rec(sa, sb);
}

Poly laurent_divide(const Poly& a, const Poly& g) {
    if (g.is_constant()) return a.scaled(g.constant_value().inv());
    Mono m = e_min(a);
    return exact(a.shifted(neg(m)), g).shifted(m);
}

}  // namespace gkcurv
