#include "qhf/coefficients.hpp"

#include <cctype>
#include <cmath>
#include <sstream>
#include <vector>

namespace qhf::coeff {

// ---------------------------------------------------------------------------
// LaurentPoly

LaurentPoly::LaurentPoly(const Rational& c) {
  if (c != 0) c_[0] = c;
}

LaurentPoly LaurentPoly::q_power(long e, const Rational& c) {
  LaurentPoly p;
  if (c != 0) p.c_[e] = c;
  return p;
}

bool LaurentPoly::is_one() const {
  return c_.size() == 1 && c_.begin()->first == 0 && c_.begin()->second == 1;
}

long LaurentPoly::min_exp() const {
  if (c_.empty()) throw std::logic_error("min_exp of zero polynomial");
  return c_.begin()->first;
}

long LaurentPoly::max_exp() const {
  if (c_.empty()) throw std::logic_error("max_exp of zero polynomial");
  return c_.rbegin()->first;
}

Rational LaurentPoly::coeff(long e) const {
  auto it = c_.find(e);
  return it == c_.end() ? Rational(0) : it->second;
}

void LaurentPoly::add_term(long e, const Rational& c) {
  if (c == 0) return;
  auto [it, fresh] = c_.try_emplace(e, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) c_.erase(it);
  }
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r;
  for (const auto& [e, c] : c_) r.c_[e] = -c;
  return r;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  for (const auto& [e, c] : o.c_) add_term(e, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  for (const auto& [e, c] : o.c_) add_term(e, -c);
  return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly r;
  for (const auto& [ea, ca] : a.c_)
    for (const auto& [eb, cb] : b.c_) r.add_term(ea + eb, ca * cb);
  return r;
}

LaurentPoly LaurentPoly::shifted(long e) const {
  LaurentPoly r;
  for (const auto& [ex, c] : c_) r.c_[ex + e] = c;
  return r;
}

LaurentPoly LaurentPoly::scaled(const Rational& c) const {
  LaurentPoly r;
  if (c == 0) return r;
  for (const auto& [e, v] : c_) r.c_[e] = v * c;
  return r;
}

Rational LaurentPoly::eval(const Rational& q0) const {
  if (c_.empty()) return Rational(0);
  if (q0 == 0) {
    if (min_exp() < 0) throw PoleError("evaluation of negative q-power at q=0");
    return coeff(0);
  }
  // Horner evaluation over the exponent range, shifted to be nonnegative.
  long lo = min_exp();
  Rational acc(0);
  long prev = max_exp();
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    for (long j = 0; j < prev - it->first; ++j) acc *= q0;
    acc += it->second;
    prev = it->first;
  }
  if (lo >= 0) {
    for (long j = 0; j < lo; ++j) acc *= q0;
  } else {
    for (long j = 0; j < -lo; ++j) acc /= q0;
  }
  return acc;
}

double LaurentPoly::eval_double(double q0) const {
  double r = 0;
  for (const auto& [e, c] : c_) r += c.get_d() * std::pow(q0, double(e));
  return r;
}

LaurentPoly LaurentPoly::gcd(const LaurentPoly& a, const LaurentPoly& b) {
  // Work with the polynomial parts (min exponent shifted to 0) and run the
  // Euclidean algorithm with monic remainders to limit coefficient growth.
  auto poly_part = [](const LaurentPoly& p) {
    return p.is_zero() ? p : p.shifted(-p.min_exp());
  };
  LaurentPoly x = poly_part(a), y = poly_part(b);
  while (!y.is_zero()) {
    // x mod y by long division on the leading terms.
    LaurentPoly r = x;
    long dy = y.max_exp();
    const Rational ly = y.coeff(dy);
    while (!r.is_zero() && r.max_exp() >= dy) {
      long dr = r.max_exp();
      Rational f = r.coeff(dr) / ly;
      r -= y.shifted(dr - dy).scaled(f);
    }
    x = y;
    y = poly_part(r);
    if (!y.is_zero()) y = y.scaled(1 / y.coeff(y.max_exp()));
  }
  if (x.is_zero()) return x;
  return x.scaled(1 / x.coeff(x.max_exp()));
}

LaurentPoly LaurentPoly::divided_by(const LaurentPoly& d) const {
  if (d.is_zero()) throw std::logic_error("division by zero polynomial");
  if (is_zero()) return {};
  LaurentPoly r = *this, quot;
  long dd = d.max_exp();
  const Rational ld = d.coeff(dd);
  while (!r.is_zero() && r.max_exp() - r.min_exp() >= dd - d.min_exp()) {
    long dr = r.max_exp();
    Rational f = r.coeff(dr) / ld;
    quot.add_term(dr - dd, f);
    r -= d.shifted(dr - dd).scaled(f);
    if (r.is_zero()) return quot;
  }
  throw std::logic_error("inexact polynomial division");
}

std::string LaurentPoly::str() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : c_) {
    Rational a = abs(c);
    if (first) {
      if (c < 0) os << "-";
      first = false;
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    if (a != 1 || e == 0) os << a.get_str();
    if (e != 0) {
      if (a != 1) os << "*";
      os << "q";
      if (e != 1) os << "^" << e;
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// ScalarQ

ScalarQ::ScalarQ(LaurentPoly n, LaurentPoly d) : num_(std::move(n)), den_(std::move(d)) {
  normalize();
}

ScalarQ ScalarQ::q_power(long e, const Rational& c) {
  return ScalarQ(LaurentPoly::q_power(e, c));
}

void ScalarQ::normalize() {
  if (den_.is_zero()) throw std::logic_error("zero denominator");
  if (num_.is_zero()) {
    den_ = LaurentPoly(Rational(1));
    return;
  }
  // Move the denominator's q-power content into the numerator.
  long s = den_.min_exp();
  if (s != 0) {
    den_ = den_.shifted(-s);
    num_ = num_.shifted(-s);
  }
  // Cancel the common polynomial factor.
  LaurentPoly g = LaurentPoly::gcd(num_, den_);
  if (!g.is_one()) {
    long n0 = num_.min_exp();
    num_ = num_.shifted(-n0).divided_by(g).shifted(n0);
    den_ = den_.divided_by(g);
  }
  // Make the denominator's leading coefficient 1.
  Rational lead = den_.coeff(den_.max_exp());
  if (lead != 1) {
    den_ = den_.scaled(1 / lead);
    num_ = num_.scaled(1 / lead);
  }
}

ScalarQ ScalarQ::operator-() const {
  ScalarQ r = *this;
  r.num_ = -r.num_;
  return r;
}

ScalarQ& ScalarQ::operator+=(const ScalarQ& o) {
  if (den_ == o.den_) {
    num_ += o.num_;
  } else {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ = den_ * o.den_;
  }
  normalize();
  return *this;
}

ScalarQ& ScalarQ::operator-=(const ScalarQ& o) { return *this += -o; }

ScalarQ& ScalarQ::operator*=(const ScalarQ& o) {
  num_ = num_ * o.num_;
  den_ = den_ * o.den_;
  normalize();
  return *this;
}

ScalarQ& ScalarQ::operator/=(const ScalarQ& o) {
  if (o.is_zero()) throw std::logic_error("division by zero scalar");
  num_ = num_ * o.den_;
  den_ = den_ * o.num_;
  normalize();
  return *this;
}

ScalarQ ScalarQ::inv() const {
  if (is_zero()) throw std::logic_error("inverse of zero scalar");
  return ScalarQ(den_, num_);
}

ScalarQ ScalarQ::pow(long e) const {
  if (e < 0) return inv().pow(-e);
  ScalarQ r(1), b = *this;
  while (e > 0) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

std::optional<std::pair<long, Rational>> ScalarQ::as_monomial() const {
  if (!den_.is_one() || num_.terms().size() != 1) return std::nullopt;
  const auto& [e, c] = *num_.terms().begin();
  return std::pair<long, Rational>{e, c};
}

ScalarQ ScalarQ::sqrt_monomial() const {
  auto m = as_monomial();
  if (!m || m->first % 2 != 0 || m->second < 0)
    throw std::logic_error("scalar is not an even monomial square: " + str());
  Rational c = m->second;
  mpz_class ns, ds;
  if (!mpz_perfect_square_p(c.get_num_mpz_t()) || !mpz_perfect_square_p(c.get_den_mpz_t()))
    throw std::logic_error("monomial coefficient is not a rational square: " + str());
  mpz_sqrt(ns.get_mpz_t(), c.get_num_mpz_t());
  mpz_sqrt(ds.get_mpz_t(), c.get_den_mpz_t());
  return q_power(m->first / 2, Rational(ns, ds));
}

Rational ScalarQ::eval(const Rational& q0) const {
  Rational d = den_.eval(q0);
  if (d == 0) throw PoleError("denominator vanishes at q = " + q0.get_str());
  return num_.eval(q0) / d;
}

double ScalarQ::eval_double(double q0) const {
  double d = den_.eval_double(q0);
  if (d == 0) throw PoleError("denominator vanishes at the evaluation point");
  return num_.eval_double(q0) / d;
}

std::string ScalarQ::str() const {
  if (den_.is_one()) return num_.str();
  return "(" + num_.str() + ")/(" + den_.str() + ")";
}

// --- parsing ---------------------------------------------------------------

namespace {

struct Cursor {
  const std::string& s;
  size_t i = 0;
  void skip_ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eat(char c) {
    skip_ws();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("parse error at position " + std::to_string(i) + ": " + what);
  }
};

long parse_integer(Cursor& cur) {
  cur.skip_ws();
  size_t start = cur.i;
  if (cur.i < cur.s.size() && (cur.s[cur.i] == '-' || cur.s[cur.i] == '+')) ++cur.i;
  while (cur.i < cur.s.size() && std::isdigit(static_cast<unsigned char>(cur.s[cur.i]))) ++cur.i;
  if (cur.i == start) cur.fail("expected integer");
  return std::stol(cur.s.substr(start, cur.i - start));
}

// term := [rational] ['*'] ['q' ['^' int]]   (at least one factor present)
void parse_term(Cursor& cur, int sign, LaurentPoly& out) {
  cur.skip_ws();
  Rational c(sign);
  bool have_coeff = false;
  if (cur.i < cur.s.size() && std::isdigit(static_cast<unsigned char>(cur.s[cur.i]))) {
    long n = parse_integer(cur);
    Rational v(n);
    if (cur.eat('/')) v /= parse_integer(cur);
    c *= v;
    have_coeff = true;
    cur.eat('*');
  }
  long e = 0;
  if (cur.eat('q')) {
    e = 1;
    if (cur.eat('^')) e = parse_integer(cur);
  } else if (!have_coeff) {
    cur.fail("expected term");
  }
  out.add_term(e, c);
}

LaurentPoly parse_poly(Cursor& cur) {
  LaurentPoly p;
  int sign = 1;
  if (cur.eat('-')) sign = -1;
  parse_term(cur, sign, p);
  while (true) {
    if (cur.eat('+')) {
      parse_term(cur, 1, p);
    } else if (cur.eat('-')) {
      parse_term(cur, -1, p);
    } else {
      break;
    }
  }
  return p;
}

}  // namespace

ScalarQ ScalarQ::parse(const std::string& text) {
  Cursor cur{text};
  LaurentPoly num, den(Rational(1));
  if (cur.eat('(')) {
    num = parse_poly(cur);
    if (!cur.eat(')')) cur.fail("expected ')'");
    if (cur.eat('/')) {
      if (!cur.eat('(')) cur.fail("expected '('");
      den = parse_poly(cur);
      if (!cur.eat(')')) cur.fail("expected ')'");
    }
  } else {
    num = parse_poly(cur);
  }
  cur.skip_ws();
  if (cur.i != text.size()) cur.fail("trailing characters");
  return ScalarQ(num, den);
}

// ---------------------------------------------------------------------------
// q-numbers

ScalarQ q_number(long r) {
  // [r] = (1 - q^(2r)) / (1 - q^2) expands to an explicit Laurent sum, which
  // avoids any rational-function reduction work.
  LaurentPoly p;
  if (r >= 0) {
    for (long j = 0; j < r; ++j) p.add_term(2 * j, 1);
  } else {
    for (long j = r; j < 0; ++j) p.add_term(2 * j, -1);
  }
  return ScalarQ(p);
}

ScalarQ q_binomial(long n, long k, const ScalarQ& base) {
  if (k < 0 || k > n) return ScalarQ(0);
  // Pascal recurrence, one row at a time.
  std::vector<ScalarQ> row{ScalarQ(1)};
  for (long m = 1; m <= n; ++m) {
    std::vector<ScalarQ> next(m + 1, ScalarQ(1));
    for (long j = 1; j < m; ++j) next[j] = row[j - 1] + base.pow(j) * row[j];
    row = std::move(next);
  }
  return row[k];
}

}  // namespace qhf::coeff
