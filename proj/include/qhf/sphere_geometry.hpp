// Differential geometry of the base sphere.
//
// Functions on the base are the winding-zero elements of the total-space
// algebra.  One-forms are horizontal combinations x eta_- + y eta_+ with
// x of winding +2 and y of winding -2; two-forms are multiples of the
// volume form dvol = eta_- eta_+.  This module packages the de Rham
// complex of the base together with its Hodge theory: the integral, the
// graded inner products, the Hodge stars, the codifferentials and the
// Laplacians acting on functions and on two-forms.

#pragma once

#include "qhf/calculus.hpp"

namespace qhf::sphere {

using calc::HForm1;
using coeff::ScalarQ;
using qg::Element;

// Grading membership tests (every nonzero monomial is checked).
bool is_function(const Element& p);   // winding 0
bool is_one_form(const HForm1& w);    // x winding +2, y winding -2

// The de Rham complex.  Two-forms are represented by their dvol
// coefficient throughout.
HForm1 d0(const Element& p);
Element d1(const HForm1& w);

// Hodge stars.  star0 maps functions to dvol coefficients, star2 maps
// dvol coefficients to functions; star1 is an (anti-linear) map of
// one-forms with star1 . star1 = -1/4.
Element star0(const Element& p);
HForm1 star1(const HForm1& w);
Element star2(const Element& nu);

// Codifferentials  codiff1 : Omega^1 -> Omega^0,  codiff2 : Omega^2 ->
// Omega^1, defined as the calibrated multiples of star . d . star that
// make them adjoint to d for the inner products below.
Element codiff1(const HForm1& w);
HForm1 codiff2(const Element& nu);

// Integral of a two-form (the Haar state of its dvol coefficient) and the
// graded inner products
//   <p, r>_0 = integral(p r* dvol),
//   <w, v>_1 = integral( 1/2 (q^2 wx vx* + wy vy*) dvol ),
//   <mu, nu>_2 = integral(mu nu* dvol).
ScalarQ integral(const Element& nu);
ScalarQ inner0(const Element& p, const Element& r);
ScalarQ inner1(const HForm1& w, const HForm1& v);
ScalarQ inner2(const Element& mu, const Element& nu);

// Hodge Laplacians on functions and on two-forms.
Element laplacian0(const Element& p);
Element laplacian2(const Element& nu);

}  // namespace qhf::sphere
