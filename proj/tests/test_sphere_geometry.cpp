#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "qhf/sphere_geometry.hpp"

using namespace qhf::sphere;
using qhf::calc::HForm1;
using qhf::coeff::Rational;
using qhf::coeff::ScalarQ;
using qhf::qg::Element;

namespace {

const ScalarQ q = ScalarQ::q_power(1);
const ScalarQ one(1);
const Element A = Element::gen_a();
const Element As = Element::gen_a_star();
const Element G = Element::gen_g();
const Element Gs = Element::gen_g_star();
const Element I = Element::unit();

// Distinguished rank-one projector on the base.
Element projector() { return I - (one + q * q) * (G * Gs); }

std::vector<Element> function_probes() {
  return {I,       G * Gs,          A * Gs,           As * G,
          projector(), A * G * Gs * Gs, As * G * G * Gs, G * Gs * G * Gs};
}

std::vector<HForm1> one_form_probes() {
  return {{A * A, Element()},
          {Element(), Gs * Gs},
          {A * G, Element()},
          {Element(), As * Gs},
          {A * A * G * Gs, q * (Gs * Gs)},
          {A * G, As * Gs * G * Gs}};
}

}  // namespace

TEST_CASE("grading bookkeeping of the complex") {
  for (const Element& p : function_probes()) {
    CHECK(is_function(p));
    CHECK(is_one_form(d0(p)));
    CHECK(is_function(star0(p)));
  }
  CHECK(!is_function(A));
  CHECK(!is_one_form({Element(), A * G}));
  for (const HForm1& w : one_form_probes()) {
    CHECK(is_one_form(w));
    CHECK(is_function(d1(w)));
    CHECK(is_one_form(star1(w)));
    CHECK(is_function(codiff1(w)));
  }
  for (const Element& nu : function_probes()) CHECK(is_one_form(codiff2(nu)));
}

TEST_CASE("complex property and Stokes identity") {
  for (const Element& p : function_probes()) {
    CHECK(d1(d0(p)).is_zero());
    CHECK(codiff1(codiff2(p)).is_zero());
  }
  for (const HForm1& w : one_form_probes()) CHECK(integral(d1(w)).is_zero());
}

TEST_CASE("Hodge star involutions") {
  for (const Element& p : function_probes()) CHECK(star2(star0(p)) == p);
  const ScalarQ mq(Rational(-1, 4));
  for (const HForm1& w : one_form_probes()) {
    HForm1 ss = star1(star1(w));
    CHECK(ss == mq * w);
  }
}

TEST_CASE("codifferentials are adjoint to the differential") {
  for (const Element& p : function_probes()) {
    for (const HForm1& w : one_form_probes()) {
      CHECK(inner1(d0(p), w) == inner0(p, codiff1(w)));
      CHECK(inner1(w, d0(p)) == inner0(codiff1(w), p));
    }
  }
  for (const HForm1& w : one_form_probes()) {
    for (const Element& nu : function_probes()) {
      CHECK(inner2(d1(w), nu) == inner1(w, codiff2(nu)));
      CHECK(inner2(nu, d1(w)) == inner1(codiff2(nu), w));
    }
  }
}

TEST_CASE("inner products are hermitian and positive definite") {
  Rational qv(1, 2);
  for (const Element& p : function_probes()) {
    for (const Element& r : function_probes()) {
      // <p, r> = conj(<r, p>); all probe pairings are real polynomials in q.
      CHECK(inner0(p, r).eval(qv) == inner0(r, p).eval(qv));
    }
    CHECK(inner0(p, p).eval(qv) > 0);
    CHECK(inner2(p, p).eval(qv) > 0);
  }
  for (const HForm1& w : one_form_probes()) CHECK(inner1(w, w).eval(qv) > 0);
}

TEST_CASE("scalar Laplacian spectrum on the lowest modes") {
  const ScalarQ lam =
      ScalarQ(Rational(1, 2)) * (one + q * q) * (one + q * q);
  CHECK(laplacian0(I).is_zero());
  CHECK(laplacian0(projector()) == lam * projector());
  CHECK(laplacian0(A * Gs) == lam * (A * Gs));
  CHECK(laplacian0(As * G) == lam * (As * G));
  // The spin-one multiplet is orthogonal for the graded inner product.
  CHECK(inner0(projector() - qhf::qg::haar(projector()) * I, A * Gs).is_zero());
  CHECK(inner0(A * Gs, As * G).is_zero());
}

TEST_CASE("Laplacians are self-adjoint and intertwined by the star") {
  const auto& cv = qhf::calc::conventions();
  const ScalarQ ratio = cv.s2 / cv.s1;
  for (const Element& p : function_probes()) {
    CHECK(laplacian2(star0(p)) == ratio * star0(laplacian0(p)));
    for (const Element& r : function_probes()) {
      CHECK(inner0(laplacian0(p), r) == inner0(p, laplacian0(r)));
      CHECK(inner2(laplacian2(p), r) == inner2(p, laplacian2(r)));
    }
    // Nonnegative quadratic form at a numeric sample point.
    CHECK(inner0(laplacian0(p), p).eval(Rational(1, 2)) >= 0);
  }
}
