#include "qhf/sphere_geometry.hpp"

namespace qhf::sphere {

namespace {
using coeff::Rational;

const ScalarQ kHalf(Rational(1, 2));
}  // namespace

bool is_function(const Element& p) {
  auto d = p.degree();
  return p.is_zero() || (d && *d == 0);
}

bool is_one_form(const HForm1& w) {
  auto dx = w.x.degree();
  auto dy = w.y.degree();
  bool okx = w.x.is_zero() || (dx && *dx == 2);
  bool oky = w.y.is_zero() || (dy && *dy == -2);
  return okx && oky;
}

HForm1 d0(const Element& p) { return calc::d_fun(p); }

Element d1(const HForm1& w) { return calc::d_one(w); }

Element star0(const Element& p) { return p.star(); }

HForm1 star1(const HForm1& w) {
  return {-kHalf * w.y.star(), kHalf * w.x.star()};
}

Element star2(const Element& nu) { return nu.star(); }

Element codiff1(const HForm1& w) {
  const auto& cv = calc::conventions();
  return cv.s1 * star2(d1(star1(w)));
}

HForm1 codiff2(const Element& nu) {
  const auto& cv = calc::conventions();
  return cv.s2 * star1(d0(star2(nu)));
}

ScalarQ integral(const Element& nu) { return qg::haar(nu); }

ScalarQ inner0(const Element& p, const Element& r) { return integral(p * r.star()); }

ScalarQ inner1(const HForm1& w, const HForm1& v) {
  ScalarQ q2 = ScalarQ::q_power(2);
  return kHalf * integral(q2 * (w.x * v.x.star()) + w.y * v.y.star());
}

ScalarQ inner2(const Element& mu, const Element& nu) { return integral(mu * nu.star()); }

Element laplacian0(const Element& p) { return codiff1(d0(p)); }

Element laplacian2(const Element& nu) { return d1(codiff2(nu)); }

}  // namespace qhf::sphere
