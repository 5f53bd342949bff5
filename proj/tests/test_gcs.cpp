#include <gtest/gtest.h>

#include "gkcurv/gcs.hpp"
#include "helpers.hpp"

using namespace gkt;

namespace {

using G = GCStruct<SE>;

SE I() { return SE::I(); }

/// dz_k = dx_{2k-1} + i dx_{2k}
std::vector<F> dz(const ChartPtr& ch) {
    std::vector<F> t;
    for (int k = 0; k < ch->n; ++k) t.push_back(F::dx(ch, 2 * k) + I() * F::dx(ch, 2 * k + 1));
    return t;
}

/// d/dz_k = (d/dx_{2k-1} - i d/dx_{2k}) / 2
GV d_dz(const ChartPtr& ch, int k) {
    GV v(ch);
    v.v(2 * k) = SE(GaussRat::ratio(1, 2));
    v.v(2 * k + 1) = SE(GaussRat(0, mpq_class(-1, 2)));
    return v;
}

/// Real part beta + conj(beta) of the holomorphic bivector f d/dz1 ^ d/dz2.
BiVec<SE> real_holomorphic_bivector(const ChartPtr& ch, const SE& f) {
    BiVec<SE> b = f * wedge2(d_dz(ch, 0), d_dz(ch, 1));
    return b + conj(b);
}

/// Generator of the unit-speed rotation of z_k.
GV rotation(const ChartPtr& ch, int k) {
    GV v(ch);
    v.v(2 * k) = -SE::coord(2 * k + 1);
    v.v(2 * k + 1) = SE::coord(2 * k);
    return v;
}

void expect_structure_invariants(const G& g) {
    const Mat<SE>& J = g.J();
    int m = 2 * g.dim();
    EXPECT_EQ(J * J, -Mat<SE>::identity(m));
    Mat<SE> P = pairing_matrix<SE>(g.dim());
    EXPECT_EQ(J.transpose() * P * J, P);
    for (const auto& e : g.E) {
        EXPECT_TRUE(clifford_act(e, g.phi).is_zero());
        EXPECT_EQ(apply(J, e), (-I()) * e);
    }
    EXPECT_EQ(J, conj(J));  // J is real
}

G symplectic_std(const ChartPtr& ch) { return make_symplectic(F(ch), omega_std(ch)); }

}  // namespace

TEST(SpinorOf, Examples) {
    auto c1 = make_chart(1), c2 = make_chart(2);
    EXPECT_EQ(symplectic_std(c1).phi, form_exp(I() * omega_std(c1)));
    G cv = make_complex_volume(dz(c2));
    EXPECT_EQ(cv.phi, wedge(dz(c2)[0], dz(c2)[1]));
    BiVec<SE> beta = real_holomorphic_bivector(c2, SE(1));
    G bd = make_beta_deform(beta, cv);
    EXPECT_EQ(bd.phi, ad_beta(beta, cv.phi));
    EXPECT_EQ(degree_part(bd.phi, 4), F(c2));
    EXPECT_FALSE(degree_part(bd.phi, 0).is_zero());
    EXPECT_EQ(degree_part(bd.phi, 2), cv.phi);
    // i_{d/dz1} i_{d/dz2} (dz1 ^ dz2) = -1
    EXPECT_EQ(degree_part(bd.phi, 0), F(c2, SE(-1)));
}

TEST(Purity, Examples) {
    Rng rng(1);
    auto c1 = make_chart(1), c2 = make_chart(2);
    Point p = chart_point(rng, *c2);
    auto r = purity_nondeg(eval_form(form_exp(I() * omega_std(c2)), p));
    EXPECT_TRUE(r.pure);
    EXPECT_TRUE(r.nondegenerate);
    // annihilator is {v - i i_v w}
    auto sym = symplectic_std(c2);
    Mat<GaussRat> span = columns(r.annihilator);
    for (const auto& e : sym.E) {
        std::vector<GaussRat> v;
        for (const auto& x : e.c) v.push_back(x.constant_value());
        EXPECT_TRUE(solve(span, v).has_value());
    }

    auto deg = purity_nondeg(Form<GaussRat>::dx(c1, 0));
    EXPECT_TRUE(deg.pure);
    EXPECT_FALSE(deg.nondegenerate);

    auto np = purity_nondeg(eval_form(form(c2, {{"dx1^dx2", "1"}, {"dx3^dx4", "1"}}), p));
    EXPECT_FALSE(np.pure);
    EXPECT_THROW(purity_nondeg(Form<GaussRat>(c1)), ZeroSpinor);
}

TEST(TypeNumber, Examples) {
    Rng rng(2);
    auto c2 = make_chart(2);
    for (int t = 0; t < 5; ++t) {
        Point p = chart_point(rng, *c2);
        EXPECT_EQ(type_number(eval_form(symplectic_std(c2).phi, p)), 0);
        EXPECT_EQ(type_number(eval_form(make_complex_volume(dz(c2)).phi, p)), 2);
    }
    // beta = z1 z2 d/dz1 ^ d/dz2: type 0 off the coordinate lines, 2 on them
    SE z1 = SE::coord(0) + I() * SE::coord(1), z2 = SE::coord(2) + I() * SE::coord(3);
    G bd = make_beta_deform(real_holomorphic_bivector(c2, z1 * z2), make_complex_volume(dz(c2)));
    Point generic = chart_point(rng, *c2);
    EXPECT_EQ(type_number(eval_form(bd.phi, generic)), 0);
    Point on_line = generic;
    on_line.x[0] = GaussRat(0);
    on_line.x[1] = GaussRat(0);
    auto phi_line = eval_form(bd.phi, on_line);
    EXPECT_EQ(type_number(phi_line), 2);
    EXPECT_TRUE(purity_nondeg(phi_line).nondegenerate);
}

TEST(JMatrix, SymplecticExample) {
    // J = -i on the annihilator: J(d1) = -dx2, J(dx2) = d1
    auto c1 = make_chart(1);
    G g = symplectic_std(c1);
    const auto& J = g.J();
    EXPECT_EQ(column(c1, J, 0), -GV::covec(c1, 1));
    EXPECT_EQ(column(c1, J, 3), GV::vec(c1, 0));
}

TEST(JMatrix, ComplexExample) {
    auto c1 = make_chart(1);
    G g = make_complex_volume(dz(c1));
    const auto& J = g.J();
    EXPECT_EQ(column(c1, J, 0), GV::vec(c1, 1));
    EXPECT_EQ(column(c1, J, 2), GV::covec(c1, 1));
}

TEST(JMatrix, BetaZeroIsBase) {
    auto c2 = make_chart(2);
    G cv = make_complex_volume(dz(c2));
    EXPECT_EQ(make_beta_deform(BiVec<SE>(c2), cv).J(), cv.J());
}

TEST(JMatrix, DegenerateOmega) {
    auto c2 = make_chart(2);
    EXPECT_THROW(make_symplectic(F(c2), form(c2, {{"dx1^dx2", "1"}})), DegenerateOmega);
    EXPECT_THROW(make_symplectic(form(c2, {{"dx1^dx2", "x3"}}), omega_std(c2)), NotClosed);
}

TEST(Invariants, AllConstructors) {
    Rng rng(3);
    auto c2 = make_chart(2);
    auto t2 = make_chart(2, true);
    SE z1 = SE::coord(0) + I() * SE::coord(1), z2 = SE::coord(2) + I() * SE::coord(3);

    expect_structure_invariants(symplectic_std(c2));
    // nonconstant closed b and a nonconstant symplectic form
    F b = ext_d(random_form(rng, t2, 1, ExprShape{2, 1, 1, false, false}));
    F w = omega_std(t2) + ext_d(form(t2, {{"dx2", "sin(x1)/3"}, {"dx4", "cos(x3)/5"}}));
    expect_structure_invariants(make_symplectic(b, w));
    G cv = make_complex_volume(dz(c2));
    expect_structure_invariants(cv);
    expect_structure_invariants(make_beta_deform(real_holomorphic_bivector(c2, z1 * z2), cv));
    expect_structure_invariants(make_generic(form_exp(I() * omega_std(c2))));
    // the Gram route and the closed form agree
    G sym = make_symplectic(b, w);
    EXPECT_EQ(j_from_frame(sym.E), sym.J());
}

TEST(EtaN, ComplexVolumeIsClosed) {
    auto c2 = make_chart(2);
    auto r = eta_N_extract(make_complex_volume(dz(c2)));
    EXPECT_TRUE(r.eta.is_zero());
    EXPECT_TRUE(r.N.is_zero());
}

TEST(EtaN, TorusPoissonDeformation) {
    // beta = lambda V1 ^ V2 with unit-speed rotations: eta = lambda(-J V1 + J V2)
    auto c2 = make_chart(2);
    SE lambda(GaussRat::ratio(3, 2));
    G cv = make_complex_volume(dz(c2));
    GV V1 = rotation(c2, 0), V2 = rotation(c2, 1);
    G bd = make_beta_deform(lambda * wedge2(V1, V2), cv);
    auto r = eta_N_extract(bd);
    EXPECT_TRUE(r.N.is_zero());
    EXPECT_TRUE(integrable(bd));
    EXPECT_TRUE(is_real(r.eta));
    GV expected = lambda * (apply(bd.J(), V2) - apply(bd.J(), V1));
    EXPECT_EQ(r.eta, expected);
    EXPECT_EQ(r.eta.covector_form(), F(c2));
    // d phi = eta . phi
    EXPECT_EQ(ext_d(bd.phi), clifford_act(r.eta, bd.phi));
}

TEST(EtaN, SymplecticIsIntegrable) {
    Rng rng(4);
    auto t2 = make_chart(2, true);
    F b = ext_d(random_form(rng, t2, 1, ExprShape{2, 1, 1, false, false}));
    auto r = eta_N_extract(make_symplectic(b, omega_std(t2)));
    EXPECT_TRUE(r.eta.is_zero());
    EXPECT_TRUE(r.N.is_zero());
}

namespace {

/// phi = exp(i w + eps B) with a non-closed B: an almost structure with N != 0.
G nonintegrable(const ChartPtr& ch, const F& B) {
    F A = B + I() * omega_std(ch);
    std::vector<GV> frame;
    for (int k = 0; k < ch->dim(); ++k) {
        GV e = GV::vec(ch, k);
        for (int j = 0; j < ch->dim(); ++j) e.xi(j) = -two_form_entry(A, k, j);
        frame.push_back(e);
    }
    return make_generic(form_exp(A), frame);
}

}  // namespace

TEST(EtaN, NonIntegrableGeneric) {
    auto c2 = make_chart(2);
    G g = nonintegrable(c2, form(c2, {{"dx1^dx2", "x3/7"}}));
    expect_structure_invariants(g);
    auto r = eta_N_extract(g);
    EXPECT_FALSE(r.N.is_zero());
    EXPECT_FALSE(integrable(g));
    EXPECT_TRUE(is_real(r.eta));
    EXPECT_EQ(r.N, conj(r.N));
    EXPECT_EQ(clifford_act(r.eta, g.phi) + clifford_act(r.N, g.phi), ext_d(g.phi));
}

TEST(EtaN, BFieldEquivariance) {
    Rng rng(5);
    auto c2 = make_chart(2);
    G g = nonintegrable(c2, form(c2, {{"dx1^dx2", "x3/7"}, {"dx2^dx3", "x4*x1/5"}}));
    auto base = eta_N_extract(g);
    for (int t = 0; t < 3; ++t) {
        F b = ext_d(random_form(rng, c2, 1, ExprShape{2, 2, 0, false, false}));
        G gb = b_transform(b, g);
        auto r = eta_N_extract(gb);
        EXPECT_EQ(r.eta, ad_b(b, base.eta));
        EXPECT_EQ(r.N, transform(ad_b_matrix(b), base.N));
        EXPECT_EQ(gb.J(), ad_b_matrix(b) * g.J() * ad_b_matrix(-b));
    }
}

TEST(EtaN, PointwiseMatchesSymbolic) {
    Rng rng(6);
    auto c2 = make_chart(2);
    G g = nonintegrable(c2, form(c2, {{"dx1^dx2", "x3/7"}}));
    auto sym = eta_N_extract(g);
    Point p = chart_point(rng, *c2);
    auto ev = [&](const SE& v) { return v.eval(p); };
    auto gp = convert_gcs<GaussRat>(g, ev);
    Form<GaussRat> dphi = eval_form(ext_d(g.phi), p);
    auto r = eta_N_extract(gp, dphi);
    for (size_t i = 0; i < r.eta.c.size(); ++i) EXPECT_EQ(r.eta.c[i], sym.eta.c[i].eval(p));
    TriVec<GaussRat> Np(c2);
    for (const auto& [k, v] : sym.N.c) Np.add(k, v.eval(p));
    EXPECT_EQ(r.N, Np);
}
