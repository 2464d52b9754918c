#include "qhf/quantum_group.hpp"

#include <mutex>
#include <sstream>
#include <vector>

namespace qhf::qg {

namespace {

ScalarQ qpow(long e) { return ScalarQ::q_power(e); }

}  // namespace

// ---------------------------------------------------------------------------
// Monomial / Element basics

std::string Monomial::str() const {
  if (is_unit()) return "1";
  std::ostringstream os;
  auto emit = [&os](const char* g, long p) {
    if (p == 0) return;
    if (os.tellp() > 0) os << " ";
    os << g;
    if (p > 1) os << "^" << p;
  };
  if (a > 0) emit("a", a);
  if (a < 0) emit("a*", -a);
  emit("g", k);
  emit("g*", l);
  return os.str();
}

Element Element::monomial(const Monomial& m, const ScalarQ& c) {
  Element e;
  e.add(m, c);
  return e;
}

ScalarQ Element::coefficient(const Monomial& m) const {
  auto it = t_.find(m);
  return it == t_.end() ? ScalarQ(0) : it->second;
}

void Element::add(const Monomial& m, const ScalarQ& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = t_.try_emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) t_.erase(it);
  }
}

Element Element::operator-() const {
  Element r;
  for (const auto& [m, c] : t_) r.t_[m] = -c;
  return r;
}

Element& Element::operator+=(const Element& o) {
  for (const auto& [m, c] : o.t_) add(m, c);
  return *this;
}

Element& Element::operator-=(const Element& o) {
  for (const auto& [m, c] : o.t_) add(m, -c);
  return *this;
}

Element operator*(const ScalarQ& c, const Element& x) {
  Element r;
  if (c.is_zero()) return r;
  for (const auto& [m, v] : x.t_) r.t_[m] = c * v;
  return r;
}

Element operator*(const Element& x, const Element& y) {
  Element r;
  for (const auto& [mx, cx] : x.t_)
    for (const auto& [my, cy] : y.t_) {
      Element p = mono_mul(mx, my);
      ScalarQ c = cx * cy;
      for (const auto& [m, v] : p.terms()) r.add(m, c * v);
    }
  return r;
}

ScalarQ Element::counit() const {
  // eps(a) = eps(a*) = 1, eps(g) = eps(g*) = 0.
  ScalarQ r(0);
  for (const auto& [m, c] : t_)
    if (m.k == 0 && m.l == 0) r += c;
  return r;
}

std::optional<long> Element::degree() const {
  std::optional<long> d;
  for (const auto& [m, c] : t_) {
    if (d && *d != m.degree()) return std::nullopt;
    d = m.degree();
  }
  return t_.empty() ? std::optional<long>(0) : d;
}

std::optional<long> Element::co_degree() const {
  std::optional<long> d;
  for (const auto& [m, c] : t_) {
    if (d && *d != m.co_degree()) return std::nullopt;
    d = m.co_degree();
  }
  return t_.empty() ? std::optional<long>(0) : d;
}

std::string Element::str() const {
  if (t_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : t_) {
    if (!first) os << " + ";
    first = false;
    if (c.is_one()) {
      os << m.str();
    } else {
      os << "(" << c.str() << ")";
      if (!m.is_unit()) os << " " << m.str();
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Products

namespace {

// Normal form of a^x * a^y for opposite signs of x and y, memoized.  Every
// term of the result is of the shape a^c (g g*)^j, produced by repeatedly
// contracting one a against one a* via a a* = 1 - q^2 g g*  (resp.
// a* a = 1 - g g*) and pushing the central-looking factor g g* to the right
// through the remaining a-powers (which only costs an even q-power).
const Element& mixed_a_product(long x, long y) {
  static std::map<std::pair<long, long>, Element> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);

  auto compute = [](auto&& self, long a, long b) -> Element {
    auto it = cache.find({a, b});
    if (it != cache.end()) return it->second;
    Element r;
    if (a == 0 || b == 0) {
      r = Element::monomial({a + b, 0, 0});
    } else {
      Element inner = self(self, a > 0 ? a - 1 : a + 1, b > 0 ? b - 1 : b + 1);
      // a^a a*^m = inner - q^(2m) inner (g g*)   when a > 0 (m = -b),
      // a*^m a^b = inner - q^(-2(b-1)) inner (g g*) when a < 0.
      ScalarQ w = a > 0 ? qpow(-2 * b) : qpow(-2 * (b - 1));
      r = inner;
      for (const auto& [m, c] : inner.terms()) r.add({m.a, m.k + 1, m.l + 1}, -(w * c));
    }
    cache[{a, b}] = r;
    return r;
  };
  compute(compute, x, y);
  return cache[{x, y}];
}

}  // namespace

Element mono_mul(const Monomial& x, const Monomial& y) {
  // a^x.a g^x.k g*^x.l . a^y.a g^y.k g*^y.l
  //   = q^(-y.a (x.k+x.l)) (a^x.a a^y.a) g^(x.k+y.k) g*^(x.l+y.l),
  // since moving one a (resp. a*) left through one g-type letter costs
  // q^(-1) (resp. q^(+1)), and the g-letters commute among themselves.
  ScalarQ factor = qpow(-y.a * (x.k + x.l));
  long gk = x.k + y.k, gl = x.l + y.l;
  Element r;
  if (x.a == 0 || y.a == 0 || (x.a > 0) == (y.a > 0)) {
    r.add({x.a + y.a, gk, gl}, factor);
    return r;
  }
  for (const auto& [m, c] : mixed_a_product(x.a, y.a).terms())
    r.add({m.a, m.k + gk, m.l + gl}, factor * c);
  return r;
}

Element Element::star() const {
  // (a^m g^k g*^l)* = g^l g*^k a^(-m)-side = q^(m(k+l)) a^(-m) g^l g*^k.
  Element r;
  for (const auto& [m, c] : t_) r.add({-m.a, m.l, m.k}, c * qpow(m.a * (m.k + m.l)));
  return r;
}

Element Element::antipode() const {
  // kappa(a) = a*, kappa(a*) = a, kappa(g) = -q g, kappa(g*) = -q^-1 g*;
  // anti-multiplicativity plus reordering gives, on a^m g^k g*^l,
  // (-1)^(k+l) q^(k-l+m(k+l)) a^(-m) g^k g*^l.
  Element r;
  for (const auto& [m, c] : t_) {
    ScalarQ w = qpow(m.k - m.l + m.a * (m.k + m.l));
    if ((m.k + m.l) % 2 != 0) w = -w;
    r.add({-m.a, m.k, m.l}, c * w);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Tensor square

Tensor2 Tensor2::simple(const Element& x, const Element& y) {
  Tensor2 r;
  for (const auto& [mx, cx] : x.terms())
    for (const auto& [my, cy] : y.terms()) r.add(mx, my, cx * cy);
  return r;
}

void Tensor2::add(const Monomial& m1, const Monomial& m2, const ScalarQ& c) {
  if (c.is_zero()) return;
  Key key{m1, m2};
  auto [it, fresh] = t_.try_emplace(key, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) t_.erase(it);
  }
}

Tensor2& Tensor2::operator+=(const Tensor2& o) {
  for (const auto& [key, c] : o.t_) add(key.first, key.second, c);
  return *this;
}

Tensor2 operator*(const ScalarQ& c, const Tensor2& o) {
  Tensor2 r;
  if (c.is_zero()) return r;
  for (const auto& [key, v] : o.terms()) r.t_[key] = c * v;
  return r;
}

Tensor2 operator*(const Tensor2& x, const Tensor2& y) {
  Tensor2 r;
  for (const auto& [kx, cx] : x.t_)
    for (const auto& [ky, cy] : y.t_) {
      Element left = mono_mul(kx.first, ky.first);
      Element right = mono_mul(kx.second, ky.second);
      ScalarQ c = cx * cy;
      for (const auto& [m1, c1] : left.terms())
        for (const auto& [m2, c2] : right.terms()) r.add(m1, m2, c * c1 * c2);
    }
  return r;
}

// ---------------------------------------------------------------------------
// Coproduct

namespace {

Tensor2 coproduct_generator(long which) {
  // 0: a, 1: a*, 2: g, 3: g*.
  Tensor2 r;
  const Monomial A{1, 0, 0}, As{-1, 0, 0}, G{0, 1, 0}, Gs{0, 0, 1};
  switch (which) {
    case 0:  // phi(a) = a (x) a - q g* (x) g
      r.add(A, A, ScalarQ(1));
      r.add(Gs, G, -qpow(1));
      break;
    case 1:  // phi(a*) = a* (x) a* - q g (x) g*
      r.add(As, As, ScalarQ(1));
      r.add(G, Gs, -qpow(1));
      break;
    case 2:  // phi(g) = g (x) a + a* (x) g
      r.add(G, A, ScalarQ(1));
      r.add(As, G, ScalarQ(1));
      break;
    default:  // phi(g*) = g* (x) a* + a (x) g*
      r.add(Gs, As, ScalarQ(1));
      r.add(A, Gs, ScalarQ(1));
      break;
  }
  return r;
}

}  // namespace

const Tensor2& coproduct(const Monomial& m) {
  static std::map<Monomial, Tensor2> cache;
  static std::recursive_mutex mu;
  std::lock_guard<std::recursive_mutex> lock(mu);
  auto it = cache.find(m);
  if (it != cache.end()) return it->second;

  Tensor2 r;
  if (m.is_unit()) {
    r.add({0, 0, 0}, {0, 0, 0}, ScalarQ(1));
  } else {
    // Peel one generator off the left and recurse; the cache makes the
    // effective cost one tensor multiplication per distinct monomial.
    Monomial rest = m;
    long gen;
    if (m.a > 0) {
      gen = 0;
      rest.a -= 1;
    } else if (m.a < 0) {
      gen = 1;
      rest.a += 1;
    } else if (m.k > 0) {
      gen = 2;
      rest.k -= 1;
    } else {
      gen = 3;
      rest.l -= 1;
    }
    r = coproduct_generator(gen) * coproduct(rest);
  }
  auto [pos, ignored] = cache.insert_or_assign(m, std::move(r));
  return pos->second;
}

Tensor2 coproduct(const Element& x) {
  Tensor2 r;
  for (const auto& [m, c] : x.terms()) r += c * coproduct(m);
  return r;
}

// ---------------------------------------------------------------------------
// Haar state

namespace {

// Cached data for the invariance-derived moments c_k = h((g g*)^k).
struct HaarTable {
  std::vector<ScalarQ> moments{ScalarQ(1)};  // c_0 = 1 by unitality
  Tensor2 power;                             // phi(g g*)^k for k = moments.size()-1
  std::mutex mu;
  HaarTable() { power.add({0, 0, 0}, {0, 0, 0}, ScalarQ(1)); }
};

HaarTable& haar_table() {
  static HaarTable t;
  return t;
}

}  // namespace

ScalarQ haar_moment(long k) {
  if (k < 0) throw std::logic_error("negative Haar moment index");
  HaarTable& t = haar_table();
  std::lock_guard<std::mutex> lock(t.mu);
  const Tensor2 step = coproduct(Monomial{0, 1, 1});
  while (static_cast<long>(t.moments.size()) <= k) {
    long n = static_cast<long>(t.moments.size());
    t.power = t.power * step;
    // Invariance: (h (x) id) phi((g g*)^n) = c_n 1.  Expanding h over the
    // first leg (only monomials (g g*)^j survive) and reading off the
    // coefficient of g g* on the second leg yields one linear equation
    //   sum_j A_j c_j = 0  with A_n invertible, which determines c_n.
    std::vector<ScalarQ> A(n + 1, ScalarQ(0));
    for (const auto& [key, c] : t.power.terms()) {
      const auto& [m1, m2] = key;
      if (m1.a == 0 && m1.k == m1.l && m2 == Monomial{0, 1, 1}) A[m1.k] += c;
    }
    if (A[n].is_zero()) throw std::logic_error("degenerate invariance equation");
    ScalarQ rhs(0);
    for (long j = 0; j < n; ++j) rhs += A[j] * t.moments[j];
    t.moments.push_back(-(rhs / A[n]));
  }
  return t.moments[k];
}

ScalarQ haar(const Element& x) {
  ScalarQ r(0);
  for (const auto& [m, c] : x.terms())
    if (m.a == 0 && m.k == m.l) r += c * haar_moment(m.k);
  return r;
}

Element modular_twist(const Element& x) {
  Element r;
  for (const auto& [m, c] : x.terms()) r.add(m, c * qpow(-2 * m.a));
  return r;
}

}  // namespace qhf::qg
