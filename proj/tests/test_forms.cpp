#include <gtest/gtest.h>

#include "helpers.hpp"

using namespace gkt;

namespace {

ChartPtr C1() {
    static ChartPtr c = make_chart(1);
    return c;
}
ChartPtr C2() {
    static ChartPtr c = make_chart(2);
    return c;
}
ChartPtr C3() {
    static ChartPtr c = make_chart(3);
    return c;
}

SE I() { return SE::I(); }

int parity(const F& a) {
    int p = -1;
    for (const auto& [m, v] : a.c) {
        int q = degree_of(m) & 1;
        if (p >= 0 && p != q) return -1;
        p = q;
    }
    return p < 0 ? 0 : p;
}

}  // namespace

// ---- wedge -------------------------------------------------------------------

TEST(Wedge, Antisymmetry) {
    auto ch = C1();
    F a = F::dx(ch, 0), b = F::dx(ch, 1);
    EXPECT_EQ(wedge(a, b), form(ch, {{"dx1^dx2", "1"}}));
    EXPECT_EQ(wedge(b, a), form(ch, {{"dx1^dx2", "-1"}}));
}

TEST(Wedge, ExpSquared) {
    auto ch = C1();
    F e = form_exp(I() * omega_std(ch));
    EXPECT_EQ(wedge(e, e), form(ch, {{"1", "1"}, {"dx1^dx2", "2*i"}}));
}

TEST(Wedge, Unit) {
    Rng rng(1);
    auto ch = C2();
    F a = random_form(rng, ch, -1);
    EXPECT_EQ(wedge(a, F(ch, SE(1))), a);
}

TEST(Wedge, AssociativeAndGradedCommutative) {
    Rng rng(2);
    auto ch = C2();
    for (int t = 0; t < 30; ++t) {
        F a = random_form(rng, ch, t % 3), b = random_form(rng, ch, (t + 1) % 3), c = random_form(rng, ch, -1);
        EXPECT_EQ(wedge(wedge(a, b), c), wedge(a, wedge(b, c)));
        int p = t % 3, q = (t + 1) % 3;
        F ba = wedge(b, a);
        EXPECT_EQ(wedge(a, b), (p * q) % 2 ? -ba : ba);
    }
}

TEST(Wedge, ChartMismatch) {
    EXPECT_THROW(wedge(F::dx(C1(), 0), F::dx(make_chart(1, true), 1)), ChartMismatch);
}

// ---- d ---------------------------------------------------------------------------

TEST(ExtD, Examples) {
    auto ch = C1();
    EXPECT_EQ(ext_d(form(ch, {{"dx2", "x1"}})), form(ch, {{"dx1^dx2", "1"}}));
    EXPECT_TRUE(ext_d(form_exp(I() * omega_std(ch))).is_zero());
    EXPECT_TRUE(ext_d(ext_d(form(ch, {{"dx2", "sin(x1)"}}))).is_zero());
}

TEST(ExtD, SquareIsZero) {
    Rng rng(3);
    for (int t = 0; t < 200; ++t) {
        auto ch = t % 2 ? C2() : make_chart(2, true);
        ExprShape shape;
        shape.rational = t % 5 == 0;
        F a = random_form(rng, ch, -1, shape);
        ASSERT_TRUE(ext_d(ext_d(a)).is_zero()) << form_str(a);
    }
}

TEST(ExtD, GradedLeibniz) {
    Rng rng(4);
    for (int t = 0; t < 40; ++t) {
        auto ch = t % 2 ? C2() : make_chart(2, true);
        int p = t % 4;
        F a = random_form(rng, ch, p), b = random_form(rng, ch, -1);
        F rhs = wedge(ext_d(a), b);
        F second = wedge(a, ext_d(b));
        rhs += p % 2 ? -second : second;
        EXPECT_EQ(ext_d(wedge(a, b)), rhs);
    }
}

// ---- sigma -------------------------------------------------------------------

TEST(Sigma, Examples) {
    EXPECT_EQ(sigma(form(C1(), {{"dx1^dx2", "1"}})), form(C1(), {{"dx1^dx2", "-1"}}));
    F a = form(C1(), {{"1", "1"}, {"dx1", "1"}});
    EXPECT_EQ(sigma(a), a);
    F vol = form(C2(), {{"dx1^dx2^dx3^dx4", "1"}});
    EXPECT_EQ(sigma(vol), vol);
}

TEST(Sigma, Involution) {
    Rng rng(5);
    for (int t = 0; t < 20; ++t) {
        F a = random_form(rng, C2(), -1);
        EXPECT_EQ(sigma(sigma(a)), a);
    }
}

TEST(Sigma, CommutesWithDUpToParity) {
    Rng rng(6);
    for (int t = 0; t < 60; ++t) {
        auto ch = t % 2 ? C2() : make_chart(2, true);
        int k = t % 5;
        F a = random_form(rng, ch, k);
        F sd = sigma(ext_d(a));
        EXPECT_EQ(ext_d(sigma(a)), k % 2 ? -sd : sd) << "degree " << k;
        EXPECT_EQ(parity(a), k % 2);
    }
}

// ---- Mukai pairing ---------------------------------------------------------------

TEST(Mukai, Examples) {
    auto ch = C1();
    EXPECT_EQ(mukai(F::dx(ch, 0), F::dx(ch, 1)), form(ch, {{"dx1^dx2", "1"}}));
    F w = omega_std(ch);
    EXPECT_EQ(mukai(form_exp(I() * w), form_exp(-I() * w)), form(ch, {{"dx1^dx2", "2*i"}}));
    EXPECT_EQ(mukai(F(ch, SE(1)), form(ch, {{"dx1^dx2", "1"}})), form(ch, {{"dx1^dx2", "-1"}}));
}

TEST(Mukai, VolumeOfExpIOmega) {
    // <e^{iw}, e^{-iw}> = (2i)^n w^n / n!
    for (int n = 1; n <= 3; ++n) {
        auto ch = make_chart(n);
        F w = omega_std(ch);
        F lhs = mukai(form_exp(I() * w), form_exp(-I() * w));
        SE c(1);
        for (int k = 1; k <= n; ++k) c = c * SE(GaussRat(0, 2)) / SE(k);
        EXPECT_EQ(lhs, c * form_pow(w, n)) << "n=" << n;
    }
}

TEST(Mukai, SymmetryTable) {
    // Frozen table: <b, a> = (-1)^n <a, b> for every pair of basis forms.
    for (int n = 1; n <= 2; ++n) {
        auto ch = make_chart(n);
        unsigned full = (1u << ch->dim());
        for (unsigned a = 0; a < full; ++a)
            for (unsigned b = 0; b < full; ++b) {
                SE ab = mukai_scalar(F::monomial(ch, a, SE(1)), F::monomial(ch, b, SE(1)));
                SE ba = mukai_scalar(F::monomial(ch, b, SE(1)), F::monomial(ch, a, SE(1)));
                EXPECT_EQ(ba, n % 2 ? -ab : ab);
            }
    }
}

TEST(Mukai, Bilinear) {
    Rng rng(7);
    auto ch = C2();
    for (int t = 0; t < 20; ++t) {
        F a = random_form(rng, ch, -1), a2 = random_form(rng, ch, -1), b = random_form(rng, ch, -1);
        SE c = random_scalar(rng, *ch);
        EXPECT_EQ(mukai(c * a + a2, b), c * mukai(a, b) + mukai(a2, b));
        EXPECT_EQ(mukai(b, c * a + a2), c * mukai(b, a) + mukai(b, a2));
    }
}

TEST(DegreePart, Examples) {
    auto ch = C1();
    F w = omega_std(ch);
    EXPECT_EQ(degree_part(form_exp(I() * w), 2), I() * w);
    EXPECT_EQ(degree_part(form(ch, {{"1", "1"}, {"dx1", "1"}}), 0), F(ch, SE(1)));
    EXPECT_TRUE(degree_part(F::dx(ch, 0), 2).is_zero());
}

// ---- affine pullback -------------------------------------------------------------

namespace {

AffineMap translation(const Point& t, int d) {
    AffineMap M;
    M.A.assign(static_cast<size_t>(d), std::vector<GaussRat>(static_cast<size_t>(d), GaussRat(0)));
    for (int j = 0; j < d; ++j) M.A[static_cast<size_t>(j)][static_cast<size_t>(j)] = GaussRat(1);
    M.shift = t;
    return M;
}

AffineMap random_affine(Rng& rng, const Chart& ch) {
    int d = ch.dim();
    AffineMap M;
    M.A.assign(static_cast<size_t>(d), std::vector<GaussRat>(static_cast<size_t>(d), GaussRat(0)));
    // unit upper-triangular times a signed permutation keeps angle maps integral
    for (int i = 0; i < d; ++i) {
        M.A[static_cast<size_t>(i)][static_cast<size_t>(i)] = GaussRat(i % 2 ? -1 : 1);
        for (int j = i + 1; j < d; ++j) {
            bool angles = ch.periodic[static_cast<size_t>(i)];
            M.A[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                angles ? GaussRat(std::uniform_int_distribution<int>(-1, 1)(rng)) : random_rational(rng, 2, 3);
        }
    }
    M.shift = chart_point(rng, ch);
    return M;
}

}  // namespace

TEST(Pullback, TranslationFixesConstantForms) {
    Rng rng(8);
    auto ch = C2();
    F a = form(ch, {{"1", "3"}, {"dx1^dx3", "1/2+i"}, {"dx2^dx3^dx4", "-2"}});
    EXPECT_EQ(pullback_affine(a, translation(chart_point(rng, *ch), 4)), a);
}

TEST(Pullback, Scaling) {
    auto ch = C2();
    Rng rng(9);
    AffineMap M = translation(algebraic_point(rng, 4), 4);
    M.A[0][0] = GaussRat(2);
    EXPECT_EQ(pullback_affine(F::dx(ch, 0), M), form(ch, {{"dx1", "2"}}));
}

TEST(Pullback, Singular) {
    auto ch = C1();
    Rng rng(10);
    AffineMap M = translation(algebraic_point(rng, 2), 2);
    M.A[1][1] = GaussRat(0);
    EXPECT_THROW(pullback_affine(F::dx(ch, 0), M), SingularMap);
}

TEST(Pullback, CommutesWithDAndWedge) {
    Rng rng(11);
    for (int t = 0; t < 30; ++t) {
        auto ch = t % 2 ? C2() : make_chart(2, true);
        AffineMap M = random_affine(rng, *ch);
        F a = random_form(rng, ch, -1), b = random_form(rng, ch, t % 3);
        EXPECT_EQ(pullback_affine(ext_d(a), M), ext_d(pullback_affine(a, M)));
        EXPECT_EQ(pullback_affine(wedge(a, b), M), wedge(pullback_affine(a, M), pullback_affine(b, M)));
    }
}

TEST(Pullback, TrigTranslation) {
    // sin(x1) under x1 -> x1 + t, with exp(i t) = i, becomes cos(x1)
    auto ch = make_chart(1, true);
    Point t;
    t.x = {std::nullopt, std::nullopt};
    t.e = {GaussRat::I(), GaussRat(1)};
    t.approx = {1.5707963267948966, 0};
    EXPECT_EQ(pullback_affine(form(ch, {{"dx2", "sin(x1)"}}), translation(t, 2)), form(ch, {{"dx2", "cos(x1)"}}));
}

// ---- labels and printing ---------------------------------------------------------

TEST(Labels, RoundTrip) {
    auto ch = C2();
    int sign = 0;
    EXPECT_EQ(parse_index_label(*ch, "dx3^dx1", sign), 5u);
    EXPECT_EQ(sign, -1);
    EXPECT_EQ(parse_index_label(*ch, "1", sign), 0u);
    for (unsigned m = 0; m < 16; ++m) {
        EXPECT_EQ(parse_index_label(*ch, index_label(*ch, m), sign), m);
        EXPECT_EQ(sign, 1);
    }
    EXPECT_THROW(parse_index_label(*ch, "dy", sign), ParseError);
    EXPECT_THROW(parse_index_label(*ch, "dx1^dx1", sign), ParseError);
}

TEST(Labels, DeterministicPrinting) {
    auto ch = C1();
    F a = form(ch, {{"dx1^dx2", "x1"}, {"1", "2"}, {"dx2", "i"}});
    EXPECT_EQ(form_str(a), form_str(form(ch, {{"dx2", "i"}, {"1", "2"}, {"dx1^dx2", "x1"}})));
    EXPECT_EQ(form_str(a).substr(0, 3), "(2)");
}

// ---- generalized tangent algebra ---------------------------------------------------

TEST(Pairing, Examples) {
    auto ch = C1();
    GV d1 = GV::vec(ch, 0), d2 = GV::vec(ch, 1), e1 = GV::covec(ch, 0);
    EXPECT_EQ(pair_tt(d1 + e1, d1 + e1), SE(1));
    EXPECT_EQ(pair_tt(d1, d2), SE(0));
    EXPECT_EQ(pair_tt(d1, e1), SE(GaussRat::ratio(1, 2)));
}

TEST(Clifford, Examples) {
    auto ch = C1();
    EXPECT_EQ(clifford_act(GV::vec(ch, 0), form(ch, {{"dx1^dx2", "1"}})), F::dx(ch, 1));
    EXPECT_EQ(clifford_act(GV::covec(ch, 0), clifford_act(GV::covec(ch, 1), F(ch, SE(1)))),
              form(ch, {{"dx1^dx2", "1"}}));
    Rng rng(12);
    GV e = GV::vec(ch, 0) + GV::covec(ch, 0);
    for (int t = 0; t < 10; ++t) {
        F a = random_form(rng, ch, -1);
        EXPECT_EQ(clifford_act(e, clifford_act(e, a)), a);
    }
}

TEST(Clifford, RelationSymbolic) {
    Rng rng(13);
    for (auto ch : {C1(), C2()}) {
        for (int t = 0; t < 15; ++t) {
            GV x = random_genvec(rng, ch), y = random_genvec(rng, ch);
            F a = random_form(rng, ch, -1);
            F lhs = clifford_act(x, clifford_act(y, a)) + clifford_act(y, clifford_act(x, a));
            EXPECT_EQ(lhs, (SE(2) * pair_tt(x, y)) * a);
        }
    }
}

TEST(Clifford, RelationDim6) {
    Rng rng(14);
    auto ch = C3();
    for (int t = 0; t < 10; ++t) {
        auto x = random_const_genvec(rng, ch), y = random_const_genvec(rng, ch);
        auto a = random_const_form(rng, ch, -1);
        auto lhs = clifford_act(x, clifford_act(y, a)) + clifford_act(y, clifford_act(x, a));
        EXPECT_EQ(lhs, (GaussRat(2) * pair_tt(x, y)) * a);
    }
}

TEST(Clifford, MukaiAdjointSignExhaustive) {
    // Frozen calibration: <e.a, b> = -<a, e.b> for all basis e, a, b.
    for (int n = 1; n <= 2; ++n) {
        auto ch = make_chart(n);
        int d = ch->dim();
        unsigned full = 1u << d;
        for (int p = 0; p < 2 * d; ++p)
            for (unsigned a = 0; a < full; ++a)
                for (unsigned b = 0; b < full; ++b) {
                    Form<GaussRat> fa = Form<GaussRat>::monomial(ch, a, GaussRat(1));
                    Form<GaussRat> fb = Form<GaussRat>::monomial(ch, b, GaussRat(1));
                    GaussRat l = mukai_scalar(basis_act(p, fa), fb), r = mukai_scalar(fa, basis_act(p, fb));
                    ASSERT_EQ(l, -r) << "n=" << n << " p=" << p << " a=" << a << " b=" << b;
                }
    }
}

TEST(Clifford, PolarizationSign) {
    // <e1 w1, e2 w2> + <e2 w1, e1 w2> = s 2 <e1,e2> <w1,w2> with s = -1.
    Rng rng(15);
    for (int n = 1; n <= 2; ++n) {
        auto ch = make_chart(n);
        for (int t = 0; t < 50; ++t) {
            auto e1 = random_const_genvec(rng, ch), e2 = random_const_genvec(rng, ch);
            auto w1 = random_const_form(rng, ch, -1), w2 = random_const_form(rng, ch, -1);
            GaussRat lhs = mukai_scalar(clifford_act(e1, w1), clifford_act(e2, w2)) +
                           mukai_scalar(clifford_act(e2, w1), clifford_act(e1, w2));
            EXPECT_EQ(lhs, GaussRat(-2) * pair_tt(e1, e2) * mukai_scalar(w1, w2));
        }
    }
    auto ch = C1();
    for (int t = 0; t < 10; ++t) {
        GV e1 = random_genvec(rng, ch), e2 = random_genvec(rng, ch);
        F w1 = random_form(rng, ch, -1), w2 = random_form(rng, ch, -1);
        SE lhs = mukai_scalar(clifford_act(e1, w1), clifford_act(e2, w2)) +
                 mukai_scalar(clifford_act(e2, w1), clifford_act(e1, w2));
        EXPECT_EQ(lhs, SE(-2) * pair_tt(e1, e2) * mukai_scalar(w1, w2));
    }
}

TEST(Clifford, BivectorIsWedge) {
    // (x ^ y).a = x.(y.a) - <x,y> a
    Rng rng(16);
    auto ch = C2();
    for (int t = 0; t < 10; ++t) {
        auto x = random_const_genvec(rng, ch), y = random_const_genvec(rng, ch), z = random_const_genvec(rng, ch);
        auto a = random_const_form(rng, ch, -1);
        EXPECT_EQ(clifford_act(wedge2(x, y), a), clifford_act(x, clifford_act(y, a)) - pair_tt(x, y) * a);
        auto xyz = clifford_act(x, clifford_act(y, clifford_act(z, a))) - pair_tt(y, z) * clifford_act(x, a) +
                   pair_tt(x, z) * clifford_act(y, a) - pair_tt(x, y) * clifford_act(z, a);
        EXPECT_EQ(clifford_act(wedge3(x, y, z, GaussRat(1)), a), xyz);
        // ad is the commutator with the Clifford element
        auto adz = apply(ad_matrix(wedge2(x, y)), z);
        auto b = wedge2(x, y);
        auto comm = clifford_act(b, clifford_act(z, a)) - clifford_act(z, clifford_act(b, a));
        EXPECT_EQ(clifford_act(adz, a), comm);
    }
}

TEST(Brackets, Examples) {
    auto ch = C1();
    GV d1 = GV::vec(ch, 0), d2 = GV::vec(ch, 1);
    EXPECT_TRUE(courant(d1, d2).is_zero());
    EXPECT_EQ(courant(d1, genvec(ch, {{3, "x1"}})), GV::covec(ch, 1));
    Rng rng(17);
    for (int t = 0; t < 10; ++t) {
        GV e = random_genvec(rng, C2());
        EXPECT_TRUE(courant(e, e).is_zero());
    }
}

TEST(Brackets, CourantAntisymmetricDorfmanLeibniz) {
    Rng rng(18);
    for (int t = 0; t < 10; ++t) {
        auto ch = t % 2 ? C2() : make_chart(1, true);
        GV a = random_genvec(rng, ch), b = random_genvec(rng, ch), c = random_genvec(rng, ch);
        EXPECT_EQ(courant(a, b), -courant(b, a));
        EXPECT_EQ(dorfman(a, dorfman(b, c)), dorfman(dorfman(a, b), c) + dorfman(b, dorfman(a, c)));
        // Dorfman = Courant + d<a,b>
        GV diff = dorfman(a, b) - courant(a, b);
        SE g = pair_tt(a, b);
        for (int k = 0; k < ch->dim(); ++k) EXPECT_EQ(diff.xi(k), g.partial(k));
    }
}

TEST(LieForm, Examples) {
    auto ch = C1();
    EXPECT_EQ(lie_form(GV::vec(ch, 0), form(ch, {{"dx2", "x1"}})), F::dx(ch, 1));
    EXPECT_TRUE(lie_form(GV::covec(ch, 0), form(ch, {{"1", "x2"}})).is_zero());
    // closed spinor: L_e psi = d(e.psi)
    Rng rng(19);
    F psi = form_exp(I() * omega_std(C2()));
    GV e = random_genvec(rng, C2());
    EXPECT_EQ(lie_form(e, psi), ext_d(clifford_act(e, psi)));
}

TEST(LieForm, DerivationOfCliffordAction) {
    // L_a (b.phi) = [a,b]_Dor . phi + b.(L_a phi)
    Rng rng(20);
    auto ch = C1();
    for (int t = 0; t < 10; ++t) {
        GV a = random_genvec(rng, ch), b = random_genvec(rng, ch);
        F phi = random_form(rng, ch, -1);
        EXPECT_EQ(lie_form(a, clifford_act(b, phi)), clifford_act(dorfman(a, b), phi) + clifford_act(b, lie_form(a, phi)));
    }
}

TEST(BField, Examples) {
    auto ch = C1();
    F b = form(ch, {{"dx1^dx2", "x1"}});
    EXPECT_EQ(ad_b(b, GV::vec(ch, 0)), GV::vec(ch, 0) - genvec(ch, {{3, "x1"}}));
    Rng rng(21);
    GV x = random_genvec(rng, ch);
    EXPECT_EQ(ad_b(F(ch), x), x);
    EXPECT_THROW(ad_b(form(ch, {{"dx1", "x2"}}), x), NotClosed);
    EXPECT_THROW(ad_b(form(C2(), {{"dx1^dx2", "x3"}}), random_genvec(rng, C2())), NotClosed);
}

TEST(BField, PreservesPairingAndComposes) {
    Rng rng(22);
    for (int t = 0; t < 15; ++t) {
        auto ch = t % 2 ? C2() : make_chart(2, true);
        F b1 = ext_d(random_form(rng, ch, 1)), b2 = ext_d(random_form(rng, ch, 1));
        GV x = random_genvec(rng, ch), y = random_genvec(rng, ch);
        EXPECT_EQ(pair_tt(ad_b(b1, x), ad_b(b1, y)), pair_tt(x, y));
        EXPECT_EQ(ad_b(b1, ad_b(b2, x)), ad_b(b1 + b2, x));
        F a = random_form(rng, ch, -1);
        EXPECT_EQ(ad_b(b1, ad_b(b2, a)), ad_b(b1 + b2, a));
        // the spinor action intertwines the Clifford action
        EXPECT_EQ(ad_b(b1, clifford_act(x, a)), clifford_act(ad_b(b1, x), ad_b(b1, a)));
    }
}

TEST(BetaField, TorusExample) {
    // V1 = d/dx1, V2 = d/dx3 for w = dx1^dx2 + dx3^dx4: mu1 = x2, mu2 = x4.
    auto ch = C2();
    BiVec<SE> beta(ch);
    beta.set(0, 2, SE(1));
    F w = omega_std(ch);
    F expected = form_exp(form(ch, {{"dx2^dx4", "-1"}}) + I() * w);
    EXPECT_EQ(ad_beta(beta, form_exp(I() * w)), expected);
}

TEST(BetaField, Examples) {
    Rng rng(23);
    auto ch = C2();
    BiVec<SE> zero(ch);
    GV x = random_genvec(rng, ch);
    EXPECT_EQ(ad_beta(zero, x), x);
    F a = random_form(rng, ch, -1);
    EXPECT_EQ(ad_beta(zero, a), a);
    BiVec<SE> beta(ch);
    beta.set(0, 1, expr(ch, "x3"));
    beta.set(1, 3, expr(ch, "2"));
    // dx_k -> dx_k + beta#dx_k, (beta#theta)^i = beta^{ij} theta_j
    GV img = ad_beta(beta, GV::covec(ch, 1));
    EXPECT_EQ(img, GV::covec(ch, 1) + genvec(ch, {{0, "x3"}, {3, "-2"}}));
    BiVec<SE> bad(ch);
    bad.set(0, 5, SE(1));
    EXPECT_THROW(ad_beta(bad, x), NotBivector);
}

TEST(BetaField, PreservesPairing) {
    Rng rng(24);
    auto ch = C2();
    for (int t = 0; t < 10; ++t) {
        BiVec<SE> beta(ch);
        for (int p = 0; p < 4; ++p)
            for (int q = p + 1; q < 4; ++q) beta.set(p, q, random_scalar(rng, *ch));
        GV x = random_genvec(rng, ch), y = random_genvec(rng, ch);
        EXPECT_EQ(pair_tt(ad_beta(beta, x), ad_beta(beta, y)), pair_tt(x, y));
        EXPECT_EQ(apply(ad_beta_matrix(beta), x), ad_beta(beta, x));
        // the spinor action intertwines the Clifford action
        F a = random_form(rng, ch, -1);
        EXPECT_EQ(ad_beta(beta, clifford_act(x, a)), clifford_act(ad_beta(beta, x), ad_beta(beta, a)));
    }
}
