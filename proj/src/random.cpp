#include "gkcurv/random.hpp"

namespace gkcurv {

namespace {
int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
}  // namespace

GaussRat random_rational(Rng& rng, int range, int qmax) {
    return GaussRat(mpq_class(uniform(rng, -range, range), uniform(rng, 1, qmax)));
}

GaussRat random_gauss(Rng& rng, int range, int qmax) {
    return GaussRat(mpq_class(uniform(rng, -range, range), uniform(rng, 1, qmax)),
                    mpq_class(uniform(rng, -range, range), uniform(rng, 1, qmax)));
}

GaussRat random_unit(Rng& rng) {
    mpq_class s(uniform(rng, -7, 7), uniform(rng, 1, 5));
    s.canonicalize();
    mpq_class den = 1 + s * s;
    return GaussRat(mpq_class((1 - s * s) / den), mpq_class(2 * s / den));
}

Point algebraic_point(Rng& rng, int dim) {
    Point p;
    for (int j = 0; j < dim; ++j) {
        GaussRat x = random_rational(rng, 7, 5);
        GaussRat e = random_gauss(rng, 5, 3);
        while (e.is_zero()) e = random_gauss(rng, 5, 3);
        p.x.push_back(x);
        p.e.push_back(e);
        p.approx.push_back(x.re.get_d());
    }
    return p;
}

Point chart_point(Rng& rng, const Chart& ch) {
    Point p;
    for (int j = 0; j < ch.dim(); ++j) {
        if (ch.periodic[static_cast<size_t>(j)]) {
            GaussRat e = random_unit(rng);
            p.x.push_back(std::nullopt);
            p.e.push_back(e);
            p.approx.push_back(std::arg(e.to_complex()));
        } else {
            GaussRat x = random_rational(rng, 7, 5);
            p.x.push_back(x);
            p.e.push_back(std::nullopt);
            p.approx.push_back(x.re.get_d());
        }
    }
    return p;
}

ScalarExpr random_scalar(Rng& rng, const Chart& ch, const ExprShape& shape) {
    int d = ch.dim();
    Poly num;
    for (int t = 0; t < shape.terms; ++t) {
        Mono m;
        int budget = uniform(rng, 0, shape.degree);
        for (int s = 0; s < budget; ++s) {
            int j = uniform(rng, 0, d - 1);
            if (ch.periodic[static_cast<size_t>(j)]) {
                int k = uniform(rng, -shape.frequency, shape.frequency);
                m.e[eslot(j)] = static_cast<int16_t>(m.e[eslot(j)] + k);
            } else {
                m.e[xslot(j)] = static_cast<int16_t>(m.e[xslot(j)] + 1);
            }
        }
        for (int j = 0; j < d; ++j) {  // keep phases bounded
            auto& k = m.e[eslot(j)];
            if (k > shape.frequency) k = static_cast<int16_t>(shape.frequency);
            if (k < -shape.frequency) k = static_cast<int16_t>(-shape.frequency);
        }
        GaussRat c = shape.complex ? random_gauss(rng) : random_rational(rng);
        num += Poly::term(m, c);
    }
    ScalarExpr f(num);
    if (!shape.complex) f = (f + f.conj()) * ScalarExpr(GaussRat::ratio(1, 2));
    if (shape.rational) {
        ScalarExpr g = random_real_scalar(rng, ch, ExprShape{2, 1, shape.frequency, false, false});
        f = f / (ScalarExpr(1) + g * g);
    }
    return f;
}

ScalarExpr random_real_scalar(Rng& rng, const Chart& ch, const ExprShape& shape) {
    ExprShape s = shape;
    s.rational = false;
    ScalarExpr f = random_scalar(rng, ch, s);
    f = f + f.conj();
    if (shape.rational) {
        ScalarExpr g = random_real_scalar(rng, ch, ExprShape{2, 1, shape.frequency, false, false});
        f = f / (ScalarExpr(1) + g * g);
    }
    return f;
}

Form<ScalarExpr> random_form(Rng& rng, const ChartPtr& ch, int k, const ExprShape& shape) {
    int d = ch->dim();
    Form<ScalarExpr> f(ch);
    for (unsigned m = 0; m < (1u << d); ++m) {
        if (k >= 0 && degree_of(m) != k) continue;
        if (k < 0 && uniform(rng, 0, 2) == 0) continue;
        f.add(m, random_scalar(rng, *ch, shape));
    }
    return f;
}

GenVec<ScalarExpr> random_genvec(Rng& rng, const ChartPtr& ch, const ExprShape& shape) {
    GenVec<ScalarExpr> e(ch);
    for (auto& x : e.c) x = random_scalar(rng, *ch, shape);
    return e;
}

Form<GaussRat> random_const_form(Rng& rng, const ChartPtr& ch, int k) {
    Form<GaussRat> f(ch);
    for (unsigned m = 0; m < (1u << ch->dim()); ++m)
        if (k < 0 || degree_of(m) == k) f.add(m, random_gauss(rng));
    return f;
}

GenVec<GaussRat> random_const_genvec(Rng& rng, const ChartPtr& ch) {
    GenVec<GaussRat> e(ch);
    for (auto& x : e.c) x = random_gauss(rng);
    return e;
}

}  // namespace gkcurv
