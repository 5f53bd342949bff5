#pragma once
// Seeded generators of random exact instances for property tests.

#include <random>

#include "gkcurv/genalg.hpp"

namespace gkcurv {

using Rng = std::mt19937_64;

/// p/q with |p| <= range and 1 <= q <= qmax.
GaussRat random_rational(Rng& rng, int range = 5, int qmax = 4);
/// a + b i with random rational parts.
GaussRat random_gauss(Rng& rng, int range = 5, int qmax = 4);
/// Unit Gaussian rational (1 - s^2 + 2 i s)/(1 + s^2).
GaussRat random_unit(Rng& rng);

/// A point with independent x and E values (valid for identity testing).
Point algebraic_point(Rng& rng, int dim);
/// A genuine chart point: x for polynomial coordinates, unit E for angles.
Point chart_point(Rng& rng, const Chart& ch);

struct ExprShape {
    int terms = 3;         // number of monomial terms
    int degree = 2;        // max polynomial degree per term
    int frequency = 1;     // max |k| of phases on periodic coordinates
    bool complex = true;   // false: real-valued function
    bool rational = false; // divide by a positive denominator 1 + (real square)
};

/// Random function on the chart: polynomial in non-periodic coordinates,
/// trigonometric in periodic ones.
ScalarExpr random_scalar(Rng& rng, const Chart& ch, const ExprShape& shape = {});
/// Random real function.
ScalarExpr random_real_scalar(Rng& rng, const Chart& ch, const ExprShape& shape = {});

/// Random homogeneous form of degree k (k < 0: mixed degree).
Form<ScalarExpr> random_form(Rng& rng, const ChartPtr& ch, int k, const ExprShape& shape = {});
GenVec<ScalarExpr> random_genvec(Rng& rng, const ChartPtr& ch, const ExprShape& shape = {});

/// Constant exact forms and vectors (used pointwise).
Form<GaussRat> random_const_form(Rng& rng, const ChartPtr& ch, int k);
GenVec<GaussRat> random_const_genvec(Rng& rng, const ChartPtr& ch);

}  // namespace gkcurv
