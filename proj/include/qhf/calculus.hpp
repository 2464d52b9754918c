// First-order differential structure on the q-deformed total space.
//
// The three-dimensional left-covariant calculus is presented by a right
// ideal R in the kernel of the counit.  The germ space ker(eps)/R is
// three-dimensional with frame
//
//   e_- = [g*],   e_0 = [a - 1],   e_+ = [g],
//
// carrying the right action [x] o b = [x b].  The associated coordinate
// derivations delta_i(x) = (id (x) mu_i) phi(x), together with calibrated
// frame normalizations and two-form weights (the `Conventions`), produce
// the exterior derivative, the canonical-connection curvature and the
// circle (structure-group) calculus used by the fibration.

#pragma once

#include <array>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "qhf/linalg.hpp"
#include "qhf/quantum_group.hpp"

namespace qhf::calc {

using coeff::ScalarQ;
using qg::Element;
using qg::Monomial;

struct ConventionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Coordinates of a germ in the frame (e_-, e_0, e_+).
struct Germ {
  ScalarQ minus, zero, plus;

  bool is_zero() const { return minus.is_zero() && zero.is_zero() && plus.is_zero(); }
  Germ operator-() const { return {-minus, -zero, -plus}; }
  Germ& operator+=(const Germ& o);
  friend Germ operator+(Germ a, const Germ& b) { return a += b; }
  friend Germ operator-(Germ a, const Germ& b) { return a += -b; }
  friend Germ operator*(const ScalarQ& c, const Germ& g);
  bool operator==(const Germ&) const = default;
  std::string str() const;
};

using Mat3 = std::array<std::array<ScalarQ, 3>, 3>;

// The quotient model of the germ space for an ideal of the shape
//   { g^2, g g*, g*^2, a + e a* - (1+e) 1, (a - u) g, (a - u) g* }.
class GermsModel {
 public:
  GermsModel(const ScalarQ& u, const ScalarQ& e, long filtration_len = 4);

  const ScalarQ& param_u() const { return u_; }
  const ScalarQ& param_e() const { return e_; }
  std::vector<Element> ideal_generators() const;

  // Codimension of the relation span inside ker(eps) on the filtration.
  long corank() const { return corank_; }
  long filtration_len() const { return filt_len_; }

  // Quotient map computed by explicit elimination (restricted to the
  // filtration used at construction; throws beyond it).
  Germ project_eliminated(const Element& x) const;

  // Quotient map computed by the structure recursion
  //   pi(x b) = eps(x) pi(b) + pi(x) o b,
  // valid for arbitrary monomial length (memoized).
  Germ project(const Monomial& m) const;
  Germ project(const Element& x) const;

  // Right module action on germs.
  Germ circ(const Germ& v, const Monomial& b) const;
  Germ circ(const Germ& v, const Element& b) const;

  // Action matrix of a single generator letter (rows = frame, columns =
  // frame); `gen` must be one of a, a*, g, g*.
  const Mat3& circ_matrix(const Monomial& gen) const;

 private:
  Germ residue_to_germ(const Element& r, const ScalarQ& eps) const;

  ScalarQ u_, e_;
  long filt_len_;
  long corank_ = -1;
  // Elimination table: pivot monomial -> normalized relation element.
  std::map<Monomial, Element> reducers_;
  std::array<Mat3, 4> letter_action_;        // a, a*, g, g*
  std::array<Germ, 4> letter_germ_;          // pi of each letter
  mutable std::map<Monomial, Germ> memo_;
  mutable std::mutex memo_mu_;
};

// The calibrated model (singleton).
const GermsModel& germs();

// Coordinate derivations delta_i = (id (x) mu_i) phi and the normalized
// partial derivatives  partial_i = delta_i / c_i.
Element delta_minus(const Element& x);
Element delta_zero(const Element& x);
Element delta_plus(const Element& x);
Element partial_minus(const Element& x);
Element partial_zero(const Element& x);
Element partial_plus(const Element& x);

// ---------------------------------------------------------------------------
// Invariant exterior square: two-tensors on the germ space modulo the
// Woronowicz relation span { sum pi(r^(1)) (x) pi(r^(2)) : r in R }.
class ExteriorSquare {
 public:
  explicit ExteriorSquare(const GermsModel& gm, long filtration_len = 4);

  long dim_two() const { return dim_two_; }     // invariant 2-forms
  long dim_three() const { return dim_three_; }  // invariant 3-forms
  long dim_four() const { return dim_four_; }    // invariant 4-forms

  // Product e_i ^ e_j expressed in the surviving basis
  // (e_- e_0, e_- e_+, e_0 e_+); indices 0,1,2 mean -,0,+.
  std::array<ScalarQ, 3> wedge(int i, int j) const;

  // Maurer-Cartan differential d eta_[x] = - sum pi(x^(1)) ^ pi(x^(2)) of
  // an invariant 1-form given by its frame germ.
  std::array<ScalarQ, 3> mc_differential(const Germ& v) const;

 private:
  std::array<ScalarQ, 3> reduce_to_basis(const la::Vec& v9) const;

  long dim_two_, dim_three_, dim_four_;
  la::Mat relations_;  // rref rows of the relation span, in permuted coordinates
  std::vector<std::size_t> colpos_;  // coordinate (3i+j) -> permuted column
  std::array<std::array<std::array<ScalarQ, 3>, 3>, 3> wedge_;
  std::array<std::array<ScalarQ, 3>, 3> mc_frame_;
};

const ExteriorSquare& exterior();

// ---------------------------------------------------------------------------
// The circle calculus on the structure group: one-dimensional germ space
// spanned by sigma, with  pi'(z^n) = circle_coupling(n) sigma  and
// sigma o z^n = q^(-2n) sigma.
ScalarQ circle_coupling(long n);
// Whether projecting the total-space ideal along a -> z, g -> 0 lands in
// the circle ideal (it does not; the fiber calculus is independent data).
bool circle_calculus_induced();

// ---------------------------------------------------------------------------
// Calibrated conventions.  All scalars are solved at startup from intrinsic
// anchors (spectral normalization of the frame, curvature normalization,
// nilpotency of d, adjointness of the codifferential) and frozen.
struct Conventions {
  ScalarQ ideal_u, ideal_e;          // ideal parameters that passed calibration
  ScalarQ c_minus, c_zero, c_plus;   // eta_i = c_i e_i
  ScalarQ kappa_minus, kappa_plus;   // d(x eta_- + y eta_+) = (k+ d+x + k- d-y) dvol
  ScalarQ s1, s2;                    // codifferential scalars in grades 1 and 2
  ScalarQ curvature_coeff;           // canonical curvature / dvol
  std::string report() const;
};

const Conventions& conventions();

// ---------------------------------------------------------------------------
// Horizontal 1-forms x eta_- + y eta_+ (the frame forms are central in the
// bimodule, so one-sided coefficients lose nothing).
struct HForm1 {
  Element x, y;

  bool is_zero() const { return x.is_zero() && y.is_zero(); }
  HForm1 operator-() const { return {-x, -y}; }
  HForm1& operator+=(const HForm1& o);
  friend HForm1 operator+(HForm1 a, const HForm1& b) { return a += b; }
  friend HForm1 operator-(HForm1 a, const HForm1& b) { return a += -b; }
  friend HForm1 operator*(const ScalarQ& c, const HForm1& w) { return {c * w.x, c * w.y}; }
  friend HForm1 operator*(const Element& p, const HForm1& w) { return {p * w.x, p * w.y}; }
  bool operator==(const HForm1&) const = default;

  // (x eta_- + y eta_+)* = -y* eta_- - x* eta_+  (eta_i* = -eta_{-i}).
  HForm1 star() const { return {-y.star(), -x.star()}; }
};

// Exterior derivative restricted to the horizontal directions.
HForm1 d_fun(const Element& p);          // partial_- p eta_- + partial_+ p eta_+
Element d_one(const HForm1& w);          // dvol coefficient of d(w)

// Full curvature of the connection "canonical + displacement", as a
// multiple of dvol: curvature_coeff * 1 + d_one(displacement).
Element curvature(const HForm1& displacement);

// Monomial solutions of the bimodule commutation constraints
//   x b = q^(-2 deg b) b x  for all generators b
// that a regular connection displacement coefficient must satisfy.
std::vector<Monomial> regular_displacement_monomials(long max_len);

}  // namespace qhf::calc
