// The q-deformed unitary 2x2 coordinate algebra: a *-Hopf algebra with
// generators a (alpha-like) and g (gamma-like), commutation rules
//
//   g a  = q^-1 a g      g* a  = q^-1 a g*     g g* = g* g
//   g a* = q   a* g      g* a* = q   a* g*
//   a a* = 1 - q^2 g g*  a* a  = 1 - g g*
//
// Every element has a unique normal form as a combination of ordered
// monomials  a^m g^k g*^l  (with a*^|m| when m < 0).  The Hopf structure
// (coproduct, counit, antipode) and the unique invariant state (Haar
// functional) are provided on top of that normal form.

#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include "qhf/coefficients.hpp"

namespace qhf::qg {

using coeff::Rational;
using coeff::ScalarQ;

// An ordered monomial a^a g^k g*^l; negative `a` means a*^|a|.
struct Monomial {
  long a = 0;
  long k = 0;
  long l = 0;

  auto operator<=>(const Monomial&) const = default;

  // Weight under the right circle coaction (z-winding of the right leg).
  long degree() const { return a + k - l; }
  // Weight under the left circle coaction.
  long co_degree() const { return a - k + l; }
  long length() const { return (a < 0 ? -a : a) + k + l; }
  bool is_unit() const { return a == 0 && k == 0 && l == 0; }

  std::string str() const;
};

class Element {
 public:
  using Terms = std::map<Monomial, ScalarQ>;

  Element() = default;
  static Element unit() { return monomial({0, 0, 0}); }
  static Element monomial(const Monomial& m, const ScalarQ& c = ScalarQ(1));
  static Element gen_a() { return monomial({1, 0, 0}); }
  static Element gen_a_star() { return monomial({-1, 0, 0}); }
  static Element gen_g() { return monomial({0, 1, 0}); }
  static Element gen_g_star() { return monomial({0, 0, 1}); }

  const Terms& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  ScalarQ coefficient(const Monomial& m) const;
  void add(const Monomial& m, const ScalarQ& c);

  Element operator-() const;
  Element& operator+=(const Element& o);
  Element& operator-=(const Element& o);
  friend Element operator+(Element x, const Element& y) { return x += y; }
  friend Element operator-(Element x, const Element& y) { return x -= y; }
  friend Element operator*(const ScalarQ& c, const Element& x);
  friend Element operator*(const Element& x, const Element& y);
  bool operator==(const Element&) const = default;

  Element star() const;      // the *-involution, in normal form
  Element antipode() const;  // the Hopf antipode, in normal form
  ScalarQ counit() const;

  // The common circle weight of all monomials, if homogeneous (zero for 0).
  std::optional<long> degree() const;
  std::optional<long> co_degree() const;

  std::string str() const;

 private:
  Terms t_;
};

// Normal-form product of two ordered monomials.
Element mono_mul(const Monomial& x, const Monomial& y);

// Elements of the algebraic tensor square, with both legs in normal form.
class Tensor2 {
 public:
  using Key = std::pair<Monomial, Monomial>;
  using Terms = std::map<Key, ScalarQ>;

  Tensor2() = default;
  static Tensor2 simple(const Element& x, const Element& y);

  const Terms& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  void add(const Monomial& m1, const Monomial& m2, const ScalarQ& c);

  Tensor2& operator+=(const Tensor2& o);
  friend Tensor2 operator+(Tensor2 x, const Tensor2& y) { return x += y; }
  friend Tensor2 operator*(const ScalarQ& c, const Tensor2& o);
  friend Tensor2 operator*(const Tensor2& x, const Tensor2& y);
  bool operator==(const Tensor2&) const = default;

  // Contract one leg with a linear functional, leaving an algebra element.
  template <typename Fn>
  Element contract_left(Fn&& f) const {  // sum f(m1) * m2
    Element r;
    for (const auto& [key, c] : t_) {
      ScalarQ v = f(key.first);
      if (!v.is_zero()) r.add(key.second, c * v);
    }
    return r;
  }
  template <typename Fn>
  Element contract_right(Fn&& f) const {  // sum f(m2) * m1
    Element r;
    for (const auto& [key, c] : t_) {
      ScalarQ v = f(key.second);
      if (!v.is_zero()) r.add(key.first, c * v);
    }
    return r;
  }

 private:
  Terms t_;
};

// The coproduct, multiplicative on monomials (cached per monomial).
const Tensor2& coproduct(const Monomial& m);
Tensor2 coproduct(const Element& x);

// Haar state: the unique invariant unital positive functional.  Its moments
// h((g g*)^k) are derived at runtime from invariance under the coproduct
// (no closed form is assumed); everything off the (g g*)-diagonal vanishes
// by circle-weight equivariance.
ScalarQ haar_moment(long k);
ScalarQ haar(const Element& x);

// Modular twist s with h(x y) = h(y s(x)); scales a^m g^k g*^l by q^(-2m).
Element modular_twist(const Element& x);

}  // namespace qhf::qg
