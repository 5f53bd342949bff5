#include <gtest/gtest.h>

#include "gkcurv/gk.hpp"
#include "helpers.hpp"

using namespace gkt;

namespace {

using G = GCStruct<SE>;

SE I() { return SE::I(); }
SE half() { return SE(GaussRat::ratio(1, 2)); }

std::vector<F> dz(const ChartPtr& ch) {
    std::vector<F> t;
    for (int k = 0; k < ch->n; ++k) t.push_back(F::dx(ch, 2 * k) + I() * F::dx(ch, 2 * k + 1));
    return t;
}

std::vector<Point> points(const ChartPtr& ch, int k, uint64_t seed = 11) {
    Rng rng(seed);
    std::vector<Point> p;
    for (int i = 0; i < k; ++i) p.push_back(chart_point(rng, *ch));
    return p;
}

GKPair flat_pair(const ChartPtr& ch) {
    return make_gk_pair(make_complex_volume(dz(ch)), make_symplectic(F(ch), -omega_std(ch)));
}

struct HK {
    F wI, wJ, wK;
};
HK hk_forms(const ChartPtr& ch) {
    return {form(ch, {{"dx1^dx2", "1"}, {"dx3^dx4", "1"}}), form(ch, {{"dx1^dx3", "1"}, {"dx2^dx4", "-1"}}),
            form(ch, {{"dx1^dx4", "1"}, {"dx2^dx3", "1"}})};
}

}  // namespace

TEST(Compatibility, FlatKahlerPair) {
    for (int n : {1, 2}) {
        auto ch = make_chart(n, true);
        auto r = compatibility_check(flat_pair(ch), points(ch, 5));
        EXPECT_TRUE(r.ok()) << n;
        EXPECT_GT(r.min_eigenvalue, 0);
    }
}

TEST(Compatibility, OppositeSymplecticIsNotPositive) {
    auto ch = make_chart(2);
    auto pair = make_gk_pair(make_symplectic(F(ch), omega_std(ch)), make_symplectic(F(ch), -omega_std(ch)));
    auto pts = points(ch, 3);
    auto r = compatibility_check(pair, pts);
    EXPECT_TRUE(r.commute);
    EXPECT_FALSE(r.positive);
    EXPECT_EQ(r.failing_point, 0);
    EXPECT_THROW(epm_split(pair, pts[0]), DimensionMismatch);
}

TEST(Compatibility, HyperKahlerTypeZeroZero) {
    auto ch = make_chart(2, true);
    auto [wI, wJ, wK] = hk_forms(ch);
    F B = -wJ, w1 = -half() * (wI + wK), w2 = -half() * (wI - wK);
    auto pair = make_gk_pair(make_exp_two_form(B + I() * w1), make_symplectic(F(ch), w2));
    EXPECT_TRUE(compatibility_check(pair, points(ch, 5)).ok());
}

TEST(Compatibility, SecondMustBeSymplectic) {
    auto ch = make_chart(1);
    EXPECT_THROW(make_gk_pair(make_complex_volume(dz(ch)), make_complex_volume(dz(ch))), DimensionMismatch);
}

TEST(EpmSplit, FlatKahlerDimensions) {
    auto ch = make_chart(2, true);
    auto pair = flat_pair(ch);
    const auto& J1 = pair.J1.J();
    const auto& J2 = pair.psi.J();
    for (const auto& p : points(ch, 20)) {
        auto f = epm_split(pair, p);
        ASSERT_EQ(f.plus.size(), 2u);
        ASSERT_EQ(f.minus.size(), 2u);
        auto J1p = eval_mat(J1, p), J2p = eval_mat(J2, p);
        GaussRat i = GaussRat::I();
        for (const auto& e : f.plus) {
            EXPECT_EQ(apply(J1p, e), -i * e);
            EXPECT_EQ(apply(J2p, e), -i * e);
        }
        for (const auto& e : f.minus) {
            EXPECT_EQ(apply(J1p, e), -i * e);
            EXPECT_EQ(apply(J2p, e), i * e);
        }
    }
}

TEST(Type00, HyperKahlerPasses) {
    auto ch = make_chart(2, true);
    auto [wI, wJ, wK] = hk_forms(ch);
    auto r = type00_check(-wJ, -half() * (wI + wK), -half() * (wI - wK), points(ch, 5));
    EXPECT_TRUE(r.ok());
    EXPECT_TRUE(r.bb_sum && r.bb_nonzero && r.kernel_dims && r.tame);
}

TEST(Type00, Failures) {
    auto ch = make_chart(2, true);
    auto [wI, wJ, wK] = hk_forms(ch);
    F w1 = -half() * (wI + wK), w2 = -half() * (wI - wK);
    auto pts = points(ch, 3);
    auto zeroB = type00_check(F(ch), w1, w2, pts);
    EXPECT_FALSE(zeroB.bb_nonzero);
    EXPECT_FALSE(zeroB.ok());
    auto tilted = type00_check(-wJ, w1 + SE(GaussRat::ratio(1, 3)) * w2, w2, pts);
    EXPECT_FALSE(tilted.w1_w2);
    EXPECT_FALSE(tilted.ok());
    // swapping the sign of w2 breaks tameness only
    auto flipped = type00_check(-wJ, w1, -w2, pts);
    EXPECT_TRUE(flipped.bb_sum && flipped.kernel_dims);
    EXPECT_FALSE(flipped.tame);
}

TEST(Hamiltonian, Examples) {
    auto ch = make_chart(1);
    auto pair = make_gk_pair(make_symplectic(F(ch), omega_std(ch)), make_symplectic(F(ch), omega_std(ch)));
    EXPECT_EQ(hamiltonian_element(pair, expr(ch, "x1")), -GV::vec(ch, 1));
    EXPECT_TRUE(hamiltonian_element(pair, SE(7)).is_zero());
}

TEST(Hamiltonian, RandomPolynomialsWithBField) {
    auto ch = make_chart(2);
    Rng rng(4);
    F b = ext_d(random_form(rng, ch, 1, {2, 2, 1, false}));
    auto psi = make_symplectic(b, -omega_std(ch));
    auto pair = make_gk_pair(make_complex_volume(dz(ch)), psi);
    for (int k = 0; k < 20; ++k) {
        SE f = random_real_scalar(rng, *ch, {3, 3});
        GV e = hamiltonian_element(pair, f);  // throws if e.psi != i df psi
        GV v = e;
        for (int j = 0; j < 4; ++j) v.xi(j) = SE(0);
        // e = v - i_v b
        F ivb(ch);
        for (int j = 0; j < 4; ++j)
            if (!v.v(j).is_zero()) ivb += v.v(j) * interior(j, b);
        EXPECT_EQ(e - v, -GV::from_one_form(ivb));
    }
}

TEST(Ddbar, LinearFunctionGivesZero) {
    auto ch = make_chart(2);
    auto r = ddbar_pm(flat_pair(ch), expr(ch, "3*x1 - x4 + 2"));
    EXPECT_TRUE(r.mixed.is_zero());
    EXPECT_TRUE(r.via_cochain.is_zero());
    EXPECT_TRUE(r.element.is_zero());
}

TEST(Ddbar, QuadraticIsNonzeroAndRoutesAgree) {
    auto ch = make_chart(2);
    auto pair = flat_pair(ch);
    for (const char* f : {"x1*x2", "x1^2 + x3*x4 - x2*x3", "x1*x3"}) {
        auto r = ddbar_pm(pair, expr(ch, f));
        EXPECT_FALSE(r.mixed.is_zero()) << f;
        EXPECT_EQ(r.mixed, r.via_cochain) << f;
        EXPECT_TRUE(r.pure_blocks_vanish) << f;
        // the element annihilates E+ and E- in the slots it should
        auto fr = epm_fields(pair);
        Mat<SE> A = ad_matrix(r.element);
        for (const auto& e : fr.plus) {
            GV img = apply(A, e);
            for (const auto& m : fr.plus) EXPECT_TRUE(pair_tt(img, m).is_zero());
        }
    }
}

TEST(Ddbar, TrigFunctionOnTorus) {
    auto ch = make_chart(2, true);
    auto pair = flat_pair(ch);
    auto r = ddbar_pm(pair, expr(ch, "sin(x1)*cos(x3) + cos(x2 - x4)"));
    EXPECT_EQ(r.mixed, r.via_cochain);
    EXPECT_TRUE(r.pure_blocks_vanish);
    EXPECT_FALSE(r.mixed.is_zero());
}

TEST(TracePairing, ZeroAndIdentity) {
    auto ch = make_chart(2);
    auto pair = flat_pair(ch);
    Rng rng(8);
    auto p = chart_point(rng, *ch);
    auto g = eval_gcs(pair.J1, p);
    BiVec<GaussRat> zero(ch);
    auto t0 = trace_pairing(g, zero, zero);
    EXPECT_TRUE(t0.trace.is_zero());
    EXPECT_TRUE(t0.spinor_side.is_zero());
    for (int k = 0; k < 20; ++k) {
        auto h1 = random_h(rng, g.E), h2 = random_h(rng, g.E);
        auto t = trace_pairing(g, h1, h2);
        EXPECT_EQ(t.trace, GaussRat(16) * t.spinor_side);
        auto s = trace_pairing(g, h2, h1);
        EXPECT_EQ(s.spinor_side, -t.spinor_side);
        EXPECT_TRUE(t.trace.is_real());
    }
}

TEST(TracePairing, WrongBidegree) {
    auto ch = make_chart(2);
    auto pair = flat_pair(ch);
    Rng rng(2);
    auto g = eval_gcs(pair.J1, chart_point(rng, *ch));
    auto mixed = wedge2(g.E[0], conj(g.E[1]));
    BiVec<GaussRat> h = mixed + conj(mixed);
    EXPECT_THROW(trace_pairing(g, h, h), WrongBidegree);
}

TEST(TracePairing, CompatibleDirectionsCommuteWithJpsi) {
    auto ch = make_chart(2, true);
    auto pair = flat_pair(ch);
    Rng rng(3);
    auto p = chart_point(rng, *ch);
    auto fr = epm_split(pair, p);
    auto J2 = eval_mat(pair.psi.J(), p);
    for (int k = 0; k < 5; ++k) {
        auto h = random_compatible_h(rng, fr);
        EXPECT_TRUE(jdot(h, J2).is_zero());
        EXPECT_FALSE(h.is_zero());
    }
}
