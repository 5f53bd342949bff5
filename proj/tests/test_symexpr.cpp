#include <gtest/gtest.h>

#include <functional>
#include <random>

#include "gkcurv/parse.hpp"

using namespace gkcurv;

namespace {

const std::vector<std::string> kNames{"x1", "x2", "x3", "x4"};

ScalarExpr P(const std::string& s) { return parse_expr(s, kNames); }

Point algebraic_point(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> d(-9, 9), q(1, 7);
    Point p;
    for (int j = 0; j < 4; ++j) {
        p.x.push_back(GaussRat(mpq_class(d(rng), q(rng))));
        // unit circle point (1 - s^2 + 2 i s) / (1 + s^2)
        mpq_class s(d(rng), q(rng));
        mpq_class den = 1 + s * s;
        p.e.push_back(GaussRat(mpq_class((1 - s * s) / den), mpq_class(2 * s / den)));
    }
    return p;
}

// An expression tree evaluated two ways: through the canonical form and by
// direct recursive evaluation of the tree at a point.
struct Tree {
    std::function<ScalarExpr()> build;
    std::function<GaussRat(const Point&)> value;
};

Tree random_tree(std::mt19937_64& rng, int depth) {
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? 2 : 7);
    int kind = pick(rng);
    std::uniform_int_distribution<int> small(-3, 3), var(0, 3);
    if (kind == 0) {
        long a = small(rng), b = small(rng);
        GaussRat c(mpq_class(a), mpq_class(b, 2));
        return {[c] { return ScalarExpr(c); }, [c](const Point&) { return c; }};
    }
    if (kind == 1) {
        int j = var(rng);
        return {[j] { return ScalarExpr::coord(j); }, [j](const Point& p) { return *p.x[j]; }};
    }
    if (kind == 2) {
        std::vector<int> k(4, 0);
        k[var(rng)] = small(rng);
        k[var(rng)] += 1;
        bool is_sin = (small(rng) & 1) != 0;
        auto val = [k, is_sin](const Point& p) {
            GaussRat e(1), ei(1);
            for (int j = 0; j < 4; ++j) {
                for (int r = 0; r < std::abs(k[j]); ++r) {
                    e *= k[j] > 0 ? *p.e[j] : p.e[j]->inv();
                    ei *= k[j] > 0 ? p.e[j]->inv() : *p.e[j];
                }
            }
            return is_sin ? (e - ei) / GaussRat(0, 2) : (e + ei) / GaussRat(2);
        };
        return {[k, is_sin] { return is_sin ? ScalarExpr::sin_lin(k) : ScalarExpr::cos_lin(k); }, val};
    }
    Tree a = random_tree(rng, depth - 1), b = random_tree(rng, depth - 1);
    switch (kind) {
        case 3:
        case 4:
            return {[a, b] { return a.build() + b.build(); }, [a, b](const Point& p) { return a.value(p) + b.value(p); }};
        case 5:
            return {[a, b] { return a.build() - b.build(); }, [a, b](const Point& p) { return a.value(p) - b.value(p); }};
        case 6:
            return {[a, b] { return a.build() * b.build(); }, [a, b](const Point& p) { return a.value(p) * b.value(p); }};
        default: {
            // divide by (1 + b^2) style expression to keep denominators nonzero generically
            return {[a, b] { return a.build() / (ScalarExpr(3) + b.build() * b.build()); },
                    [a, b](const Point& p) { return a.value(p) / (GaussRat(3) + b.value(p) * b.value(p)); }};
        }
    }
}

}  // namespace

TEST(Canonicalize, PythagoreanIdentity) { EXPECT_EQ(P("sin(x1)^2 + cos(x1)^2"), ScalarExpr(1)); }

TEST(Canonicalize, FactorCancellation) { EXPECT_EQ(P("(x1^2 - 1)/(x1 - 1)"), P("x1 + 1")); }

TEST(Canonicalize, ComplexArithmetic) { EXPECT_EQ(P("(1 + i)*(1 - i)"), ScalarExpr(2)); }

TEST(Canonicalize, DivisionByZeroExpression) {
    EXPECT_THROW(P("x1/(sin(x2)^2 + cos(x2)^2 - 1)"), DivisionByZero);
    EXPECT_THROW(ScalarExpr(1) / ScalarExpr(0), DivisionByZero);
}

TEST(Canonicalize, MultivariateCancellation) {
    EXPECT_EQ(P("(x1^2 - x2^2)/(x1 + x2)"), P("x1 - x2"));
    EXPECT_EQ(P("(x1*x2 + x1)/(x2^2 - 1)"), P("x1/(x2 - 1)"));
    EXPECT_EQ(P("sin(2*x1)/sin(x1)"), P("2*cos(x1)"));
    EXPECT_EQ(P("(1 - cos(x1)^2)/(1 - cos(x1))"), P("1 + cos(x1)"));
}

TEST(Canonicalize, RejectsNonLinearTrigArgument) {
    EXPECT_THROW(P("sin(x1^2)"), ParseError);
    EXPECT_THROW(P("cos(x1 + 1)"), ParseError);
    EXPECT_THROW(P("sin(x1/2)"), ParseError);
    EXPECT_THROW(P("x9"), ParseError);
}

TEST(Partial, Examples) {
    EXPECT_EQ(P("sin(x1)").partial(0), P("cos(x1)"));
    EXPECT_EQ(P("1/(1 + x1^2)").partial(0), P("-2*x1/(1 + x1^2)^2"));
    EXPECT_EQ(P("x2").partial(0), ScalarExpr(0));
}

TEST(Eval, Examples) {
    Point p;
    p.x = {GaussRat(3), std::nullopt};
    p.e = {std::nullopt, std::nullopt};
    EXPECT_EQ(P("x1^2").eval(p), GaussRat(9));
    p.x[0] = GaussRat(1);
    EXPECT_EQ(P("1/(1 + x1^2)").eval(p), GaussRat::ratio(1, 2));
    EXPECT_THROW(P("1/(x1 - 1)").eval(p), EvaluationPole);
}

TEST(Eval, NumericFallbackForAngles) {
    auto v = P("sin(x1)^2 + 2*cos(x2)").eval_numeric<double>({0.3, 1.1, 0, 0});
    EXPECT_NEAR(v.real(), std::sin(0.3) * std::sin(0.3) + 2 * std::cos(1.1), 1e-14);
    EXPECT_NEAR(v.imag(), 0.0, 1e-14);
}

TEST(Predicates, ZeroRealConj) {
    EXPECT_TRUE(P("sin(x1)^2 + cos(x1)^2 - 1").is_zero());
    EXPECT_FALSE(P("i*x1").is_real());
    EXPECT_TRUE(P("sin(x1)*x2 + 1/(1 + x1^2)").is_real());
    EXPECT_EQ(P("x1 + i*x2").conj(), P("x1 - i*x2"));
    EXPECT_EQ(P("sin(x1) + i*cos(x2)").conj(), P("sin(x1) - i*cos(x2)"));
}

TEST(Printing, RoundTrips) {
    for (const char* s : {"x1 + 1", "sin(x1 - 2*x2)*x3^2 - 3/2*i", "1/(2 + cos(x1))", "(1 + 2*i)*x1/(x1^2 + x2^2 + 1)",
                          "cos(x1)*sin(x2)", "sin(x1)/(3 + sin(x2))", "-x1"}) {
        ScalarExpr v = P(s);
        std::string out = v.str(kNames);
        EXPECT_EQ(P(out), v) << s << " printed as " << out;
        EXPECT_EQ(P(out).str(kNames), out);
    }
    EXPECT_EQ(P("1/(2 + cos(x1))").str(kNames), "(2)/(4 + 2*cos(x1))");
    EXPECT_EQ(P("2*x1 - 1").str(kNames), "2*x1 - 1");
}

TEST(Properties, RingAxiomsOnRandomExpressions) {
    std::mt19937_64 rng(7);
    for (int it = 0; it < 60; ++it) {
        ScalarExpr f = random_tree(rng, 3).build(), g = random_tree(rng, 3).build();
        EXPECT_TRUE((f * g - g * f).is_zero());
        EXPECT_TRUE(((f + g) - g - f).is_zero());
        for (int k = 0; k < 2; ++k) EXPECT_EQ((f * g).partial(k), f.partial(k) * g + f * g.partial(k));
    }
}

TEST(Properties, EvalMatchesTreeEvaluation) {
    std::mt19937_64 rng(11);
    int checked = 0;
    for (int it = 0; it < 100; ++it) {
        Tree t = random_tree(rng, 3);
        ScalarExpr f = t.build();
        Point p = algebraic_point(rng);
        GaussRat direct;
        try {
            direct = t.value(p);
        } catch (const DivisionByZero&) {
            continue;
        }
        EXPECT_EQ(f.eval(p), direct);
        ++checked;
    }
    EXPECT_GE(checked, 90);
}
