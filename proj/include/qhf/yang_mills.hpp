// Stationarity residuals for connections and coupled matter sections on
// the quantum Hopf fibration.
//
// A connection is "canonical + displacement", where the displacement is a
// horizontal one-form on the base.  This module decides when such a
// connection is stationary for the curvature functional (exactly when the
// displacement is closed, equivalently exact), finds the primitive
// realizing exactness, and implements the residuals of the coupled field
// equations for triples (connection, left section, right section) with a
// quadratic potential, together with their explicit solution families.

#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "qhf/bundles.hpp"
#include "qhf/sphere_geometry.hpp"

namespace qhf::ym {

using bundles::Section;
using calc::HForm1;
using coeff::ScalarQ;
using qg::Element;

struct YMError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Connection displacement: connection = canonical + lam.
struct Displacement {
  HForm1 lam;

  bool is_zero() const { return lam.is_zero(); }
  // Self-adjoint displacements satisfy lam* = lam; they form the real
  // span of the probe family below.
  bool is_self_adjoint() const { return lam.star() == lam; }
};

// Curvature of the displaced connection as a dvol coefficient: the
// canonical constant plus the exterior derivative of the displacement.
Element curvature(const Displacement& d);

// One-form residuals of the stationarity condition: the codifferential of
// the curvature and its star-conjugated mirror.  Both vanish exactly when
// the displacement is closed.
struct YMResidual {
  HForm1 left, right;

  bool is_zero() const { return left.is_zero() && right.is_zero(); }
};
YMResidual ym_residual(const Displacement& d);

// Directional derivative of the curvature functional at canonical + d in
// direction dprime:  -1/2 <d1(dprime.lam), d1(d.lam)>_2.  Zero for every
// direction exactly when d is stationary; strictly negative at numeric q
// in the direction of a non-closed d itself.
ScalarQ ym_variation(const Displacement& d, const Displacement& dprime);

// Primitive p with d0(p) = closed, solved exactly on the base monomials
// of word length <= filtration.  The representative is canonical: free
// coordinates (in particular the unit component) are zero.  Throws
// YMError("increase filtration") when the window is too small; a
// primitive always exists for closed one-forms because the first de Rham
// cohomology of the base is trivial.
Element find_primitive(const HForm1& closed, long filtration);

// Coupled field triple: connection displacement, left section of winding
// n, right section of winding -n, and the constant derivative of the
// quadratic potential.
struct Triple {
  Displacement omega;
  Section t1;  // winding n
  Section t2;  // winding -n
  ScalarQ vprime;

  long n() const { return t1.n; }
};

// The potential slope that makes the winding-n power sections stationary;
// it tends to the winding number in the commutative limit.
ScalarQ vprime_winding(long n);  // 1/2 q^4 (1 - q^(2n)) / (1 - q^2)

// The two explicit solution families at the canonical connection.
Triple solution_power(long n);      // sections a^n and a*^n
Triple solution_conjugate(long n);  // sections g^n and g*^n

// Matter residuals at the canonical connection: the covariant Laplacian
// of each section minus vprime times the section.  Both are zero exactly
// at stationary section pairs.
std::pair<Element, Element> matter_residual(const Triple& t);

// Coupling residual of the connection equation against one displacement
// probe: the pairing of the coupled left section against its covariant
// derivative, minus the calibrated right-handed analogue.  Zero for all
// probes at the solution triples; the trivial winding has zero coupling
// on both sides.
ScalarQ gauge_residual(const Triple& t, const Displacement& probe);

// Frozen relative normalization between the two coupling terms.  It is
// calibrated once, lazily, by requiring the residual to vanish on the
// winding-one power solution across a spanning probe family, and is
// verified independently on the higher-winding solutions by the tests.
const ScalarQ& gauge_rho();

// Self-adjoint spanning probe family: lam = x eta_- - x* eta_+ for every
// monomial x of winding +2 and word length <= max_len.
std::vector<Displacement> displacement_probes(long max_len);

}  // namespace qhf::ym
