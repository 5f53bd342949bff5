#pragma once
// Ready-made scenes for the worked examples, each with the checks it is
// expected to pass attached as tasks.

#include <string>
#include <vector>

#include "gkcurv/scene.hpp"

namespace gkcurv {

/// Flat C^n: phi = dz_1 ^ ... ^ dz_n, psi = e^{i w}. n <= 3.
Json flat_kahler(int n);
/// C^2 with a product Kahler metric of non-constant scalar curvature.
Json kahler_c2();
/// Flat T^4 with the moment-map tasks.
Json flat_torus();
/// Affine chart of CP^n, n in {1, 2}.
Json fubini_study_chart(int n);
/// Flat T^4 with the constant hyperKahler triple, type (0,0).
Json hyperkahler_t4();
/// Type (0,0) pair on T^4 from a perturbed pair of closed decomposable 2-forms;
/// non-constant volume ratio.
Json type00_perturbed_t4();
/// C^2 with the rotation action and beta = lambda V1 ^ V2.
Json torus_poisson_c2();
/// A T^2-invariant, non-flat Kahler metric on T^4 deformed by translations.
Json torus_poisson_t4();
/// CP^2 deformed by the T^2 action whose Poisson structure vanishes on three lines.
Json cp2_three_lines();
/// b-field transform of flat T^4: generalized Calabi-Yau metrical, rho = 1.
Json gcy_bfield_t4();
/// Almost GK pair with N != 0 but N . psi = 0.
Json nonintegrable_t4();

std::vector<std::string> example_names();
/// Throws SceneError for an unknown name.
Json example_doc(const std::string& name);
Scene make_example(const std::string& name);

}  // namespace gkcurv
