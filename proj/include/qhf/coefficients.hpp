// Exact coefficient arithmetic for the deformation parameter q.
//
// All scalars in this project live in the field Q(q) of rational functions
// with rational coefficients.  They are represented as quotients of Laurent
// polynomials in q (negative powers of q occur naturally throughout), kept
// in a canonical reduced form so that equality is structural and exact.

#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace qhf::coeff {

using Rational = mpq_class;

struct PoleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A Laurent polynomial in q with rational coefficients, stored sparsely as
// exponent -> coefficient with no explicit zero coefficients.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  LaurentPoly(const Rational& c);  // NOLINT: implicit constant embedding
  LaurentPoly(long c) : LaurentPoly(Rational(c)) {}

  // c * q^e
  static LaurentPoly q_power(long e, const Rational& c = Rational(1));

  bool is_zero() const { return c_.empty(); }
  bool is_one() const;
  long min_exp() const;  // smallest exponent with nonzero coefficient
  long max_exp() const;  // largest exponent with nonzero coefficient
  Rational coeff(long e) const;
  const std::map<long, Rational>& terms() const { return c_; }
  void add_term(long e, const Rational& c);  // accumulate, dropping zeros

  LaurentPoly operator-() const;
  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  bool operator==(const LaurentPoly& o) const { return c_ == o.c_; }

  LaurentPoly shifted(long e) const;           // multiply by q^e
  LaurentPoly scaled(const Rational& c) const;  // multiply by the constant c

  // Exact evaluation at q = q0 (q0 != 0 when negative exponents occur).
  Rational eval(const Rational& q0) const;
  double eval_double(double q0) const;

  // Monic gcd of the polynomial parts (q-power content is ignored; the
  // result has min_exp() == 0 and leading coefficient 1).
  static LaurentPoly gcd(const LaurentPoly& a, const LaurentPoly& b);
  // Exact division; throws std::logic_error if d does not divide *this.
  LaurentPoly divided_by(const LaurentPoly& d) const;

  std::string str() const;

 private:
  std::map<long, Rational> c_;
};

// An element of Q(q), canonically reduced:
//   - denominator is nonzero, has min_exp() == 0 and leading coefficient 1,
//   - gcd(numerator, denominator) == 1 up to q-power content,
//   - zero is represented as 0/1.
class ScalarQ {
 public:
  ScalarQ() : num_(), den_(Rational(1)) {}
  ScalarQ(long n) : ScalarQ(Rational(n)) {}
  ScalarQ(const Rational& r) : num_(r), den_(Rational(1)) {}
  ScalarQ(LaurentPoly n, LaurentPoly d = LaurentPoly(Rational(1)));

  static ScalarQ q_power(long e, const Rational& c = Rational(1));

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return den_.is_one() && num_.is_one(); }
  const LaurentPoly& num() const { return num_; }
  const LaurentPoly& den() const { return den_; }

  ScalarQ operator-() const;
  ScalarQ& operator+=(const ScalarQ& o);
  ScalarQ& operator-=(const ScalarQ& o);
  ScalarQ& operator*=(const ScalarQ& o);
  ScalarQ& operator/=(const ScalarQ& o);
  friend ScalarQ operator+(ScalarQ a, const ScalarQ& b) { return a += b; }
  friend ScalarQ operator-(ScalarQ a, const ScalarQ& b) { return a -= b; }
  friend ScalarQ operator*(ScalarQ a, const ScalarQ& b) { return a *= b; }
  friend ScalarQ operator/(ScalarQ a, const ScalarQ& b) { return a /= b; }
  bool operator==(const ScalarQ& o) const { return num_ == o.num_ && den_ == o.den_; }

  ScalarQ inv() const;
  ScalarQ pow(long e) const;  // e may be negative for nonzero scalars

  // If *this is a single term c*q^e, return (e, c).
  std::optional<std::pair<long, Rational>> as_monomial() const;
  // Square root of a scalar of the form c^2 * q^(2e); throws otherwise.
  ScalarQ sqrt_monomial() const;

  // Exact evaluation at q = q0; throws PoleError when the denominator
  // vanishes at q0.
  Rational eval(const Rational& q0) const;
  double eval_double(double q0) const;

  std::string str() const;
  static ScalarQ parse(const std::string& text);

 private:
  void normalize();
  LaurentPoly num_, den_;
};

// The basic q-integer [r] = (1 - q^(2r)) / (1 - q^2), defined for any
// integer r; [0] = 0, [1] = 1, [-1] = -q^(-2).
ScalarQ q_number(long r);

// Gaussian binomial coefficient in an arbitrary base b (an element of Q(q)),
// via the Pascal recurrence  C(n,k) = C(n-1,k-1) + b^k * C(n-1,k).
ScalarQ q_binomial(long n, long k, const ScalarQ& base);

}  // namespace qhf::coeff
