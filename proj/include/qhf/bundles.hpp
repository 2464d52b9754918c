// Associated line bundles of the quantum fibration.
//
// The sections of winding n are the degree-n homogeneous elements of the
// total-space algebra.  This module provides the unitary generator
// columns of each bundle, the left and right covariant derivatives
// induced by the canonical connection (optionally displaced), and the
// exact spectral theory of the two covariant Laplacians: block matrices
// by the Gram-adjoint method, eigenvalues and eigenvectors by
// back-substitution, and the closed-form eigenvalue formulas they must
// reproduce.

#pragma once

#include "qhf/calculus.hpp"
#include "qhf/linalg.hpp"

namespace qhf::bundles {

using calc::HForm1;
using coeff::Rational;
using coeff::ScalarQ;
using qg::Element;
using qg::Monomial;

struct BundleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A homogeneous section of the winding-n line bundle.
struct Section {
  long n;
  Element value;
};
// Builds a section from a homogeneous element (throws on mixed winding).
Section section(const Element& v);

// Unitary generator column of the winding-n bundle.  Square-root
// normalizations are never materialized: `squared_coeffs` stores their
// squares, and every verified identity is quadratic in the column.
struct GeneratorSet {
  long n;
  std::vector<Monomial> monomials;       // m_k
  std::vector<ScalarQ> squared_coeffs;   // c_k
  std::vector<ScalarQ> z_weights;        // diagonal weight matrix, aligned with k
};
GeneratorSet generator_set(long n);

struct Report {
  bool ok;
  std::string detail;
};
// Checks the column unitarity  sum_k c_k m_k* m_k = 1  and the weighted
// completeness  sum_k c_k z_k m_k m_k* = 1.
Report verify_generators(const GeneratorSet& g);

// Covariant derivatives for the connection "canonical + displacement".
// The displacement enters through its value lam on the normalized circle
// germ, coupled with the circle-calculus coordinate of z^{±n}.
HForm1 nabla_left(const Section& s, const HForm1& lam = {});
HForm1 nabla_right(const Section& s, const HForm1& lam = {});

enum class Side { left, right };

// Covariant Laplacian applied to a homogeneous element (exact, via the
// Gram-adjoint family matrices with interior buffering).
Element laplacian_left(const Element& s);
Element laplacian_right(const Element& s);

// Matrix of the covariant Laplacian on the degree-n monomials with
// k + l <= N, ordered family-by-family so that the matrix is upper
// triangular; assembled at filtration N + buffer, read inside N.
struct SpectralBlock {
  long n = 0;
  long N = 0;
  Side side = Side::left;
  std::vector<Monomial> basis;
  la::Mat matrix;
};
SpectralBlock laplacian_matrix(long n, long N, Side side, long buffer = 2);

struct EigenPair {
  Monomial label;      // basis monomial whose diagonal entry this is
  ScalarQ value;
  Element vector;      // leading coefficient 1 on `label`
};
std::vector<EigenPair> spectrum(const SpectralBlock& block);

// Closed-form eigenvalue of the monomial a^a g^k g*^l under the left and
// right covariant Laplacians (a may be negative, denoting a*^|a|).
ScalarQ left_eigenvalue(long a, long k, long l);
ScalarQ right_eigenvalue(long a, long k, long l);

// Witness monomial on which the two Laplacians fail to commute, and the
// commutator residual [lap_left, lap_right] applied to it.
Monomial commutation_witness_monomial(long n);
Element commutation_residual(long n);

// Numeric scan of the a^m g*^l (m - l = n) eigenvalue family: values at
// q = qv for m = 1..m_max, with a strict-monotonicity flag.
struct GrowthReport {
  std::vector<double> values;
  bool strictly_increasing = false;
};
GrowthReport growth_scan(long n, long m_max, const Rational& qv);

}  // namespace qhf::bundles
