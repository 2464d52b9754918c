#include "qhf/bundles.hpp"

#include <map>
#include <mutex>
#include <sstream>
#include <tuple>

namespace qhf::bundles {

namespace {

const ScalarQ kHalf(Rational(1, 2));
const ScalarQ kOne(1);

ScalarQ qpow(long e) { return ScalarQ::q_power(e); }

Monomial family_member(long a, long d, long j) {
  long k0 = d > 0 ? d : 0;
  long l0 = d < 0 ? -d : 0;
  return Monomial{a, k0 + j, l0 + j};
}

long family_index(const Monomial& m) { return m.k < m.l ? m.k : m.l; }

// Section pairing <u, v> = h(u v*) and horizontal 1-form pairing
// <w, v> = h( 1/2 (q^2 w.x v.x* + w.y v.y*) ), shared by both sides.
ScalarQ pair0(const Element& u, const Element& v) { return qg::haar(u * v.star()); }

ScalarQ pair1(const HForm1& w, const HForm1& v) {
  return kHalf * qg::haar(qpow(2) * (w.x * v.x.star()) + w.y * v.y.star());
}

HForm1 nabla_element(const Element& s, Side side) {
  if (side == Side::left) return {calc::partial_minus(s), calc::partial_plus(s)};
  Element st = s.star();
  return {-calc::partial_plus(st).star(), -calc::partial_minus(st).star()};
}

// Matrix of the covariant Laplacian on the family a^a g^{k0+j} g*^{l0+j},
// j = 0..J, by the Gram-adjoint method: G M = H with
// G[r][i] = <m_i, m_r>_0 and H[r][j] = <nabla m_j, nabla m_r>_1.
// Column j is exact whenever the Laplacian maps m_j into the span of the
// basis; the flag property (column j supported on i <= j) is asserted by
// the callers through the triangularity of the result.
using FamKey = std::tuple<long, long, long, int>;

const la::Mat& family_matrix(long a, long d, long J, Side side) {
  static std::map<FamKey, la::Mat> cache;
  static std::mutex mu;
  FamKey key{a, d, J, side == Side::left ? 0 : 1};
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  std::size_t dim = static_cast<std::size_t>(J) + 1;
  std::vector<Element> basis(dim);
  std::vector<HForm1> grads(dim);
  for (std::size_t j = 0; j < dim; ++j) {
    basis[j] = Element::monomial(family_member(a, d, static_cast<long>(j)));
    grads[j] = nabla_element(basis[j], side);
  }
  la::Mat G(dim, la::Vec(dim)), H(dim, la::Vec(dim));
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t j = 0; j < dim; ++j) {
      G[r][j] = pair0(basis[j], basis[r]);
      H[r][j] = pair1(grads[j], grads[r]);
    }
  la::Mat M = la::mat_mul(la::inverse(G), H);
  return cache.emplace(key, std::move(M)).first->second;
}

Element apply_laplacian(const Element& s, Side side) {
  Element out;
  for (const auto& [m, c] : s.terms()) {
    long j = family_index(m);
    long d = m.k - m.l;
    const la::Mat& M = family_matrix(m.a, d, j + 2, side);
    for (long i = 0; i <= j + 2; ++i) {
      const ScalarQ& entry = M[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (entry.is_zero()) continue;
      if (i > j)
        throw BundleError("covariant Laplacian violates the family flag");
      out += Element::monomial(family_member(m.a, d, i), c * entry);
    }
  }
  return out;
}

}  // namespace

Section section(const Element& v) {
  if (v.is_zero()) return {0, v};
  auto d = v.degree();
  if (!d) throw BundleError("section value is not homogeneous");
  return {*d, v};
}

GeneratorSet generator_set(long n) {
  GeneratorSet g;
  g.n = n;
  long nn = n >= 0 ? n : -n;
  for (long k = 0; k <= nn; ++k) {
    ScalarQ binom = coeff::q_binomial(nn, k, qpow(-2));
    if (n >= 0) {
      g.monomials.push_back({n - k, k, 0});
      g.squared_coeffs.push_back(binom);
      g.z_weights.push_back(qpow(2 * k));
    } else {
      // Negative winding uses the conjugate column; reordering the
      // letters of g*^k a*^{nn-k} into normal form contributes the extra
      // factor q^{2k(nn-k)} on top of the q^{2k} letter weights.
      g.monomials.push_back({-(nn - k), 0, k});
      g.squared_coeffs.push_back(qpow(2 * k * (nn - k + 1)) * binom);
      g.z_weights.push_back(qpow(-2 * k));
    }
  }
  return g;
}

Report verify_generators(const GeneratorSet& g) {
  Element unitarity, completeness;
  for (std::size_t k = 0; k < g.monomials.size(); ++k) {
    Element m = Element::monomial(g.monomials[k]);
    unitarity += g.squared_coeffs[k] * (m.star() * m);
    completeness += (g.squared_coeffs[k] * g.z_weights[k]) * (m * m.star());
  }
  bool ok1 = unitarity == Element::unit();
  bool ok2 = completeness == Element::unit();
  std::ostringstream os;
  os << "column unitarity: " << (ok1 ? "ok" : "FAILED: " + unitarity.str())
     << "; weighted completeness: " << (ok2 ? "ok" : "FAILED: " + completeness.str());
  return {ok1 && ok2, os.str()};
}

HForm1 nabla_left(const Section& s, const HForm1& lam) {
  HForm1 out = nabla_element(s.value, Side::left);
  if (!lam.is_zero()) out += calc::circle_coupling(s.n) * (s.value * lam);
  return out;
}

HForm1 nabla_right(const Section& s, const HForm1& lam) {
  HForm1 out = nabla_element(s.value, Side::right);
  // The section multiplies the displacement from the right, mirroring the
  // right-module structure.
  if (!lam.is_zero())
    out += calc::circle_coupling(-s.n) * HForm1{lam.x * s.value, lam.y * s.value};
  return out;
}

Element laplacian_left(const Element& s) { return apply_laplacian(s, Side::left); }
Element laplacian_right(const Element& s) { return apply_laplacian(s, Side::right); }

SpectralBlock laplacian_matrix(long n, long N, Side side, long buffer) {
  SpectralBlock block;
  block.n = n;
  block.N = N;
  block.side = side;
  // Families of degree-n monomials are labelled by d = k - l (then
  // a = n - d); within a family j = min(k, l) counts gamma gamma* pairs.
  struct Fam {
    long d;
    long jmax;
    std::size_t offset;
  };
  std::vector<Fam> fams;
  for (long d = -N; d <= N; ++d) {
    long jmax = (N - (d > 0 ? d : -d)) / 2;
    if (jmax < 0) continue;
    fams.push_back({d, jmax, block.basis.size()});
    for (long j = 0; j <= jmax; ++j) block.basis.push_back(family_member(n - d, d, j));
  }
  std::size_t dim = block.basis.size();
  block.matrix.assign(dim, la::Vec(dim, ScalarQ(0)));
  for (const Fam& f : fams) {
    const la::Mat& M = family_matrix(n - f.d, f.d, f.jmax + buffer, side);
    for (long i = 0; i <= f.jmax; ++i)
      for (long j = 0; j <= f.jmax; ++j)
        block.matrix[f.offset + i][f.offset + j] =
            M[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  return block;
}

std::vector<EigenPair> spectrum(const SpectralBlock& block) {
  std::vector<EigenPair> out;
  std::size_t dim = block.basis.size();
  for (std::size_t g = 0; g < dim; ++g) {
    const Monomial& label = block.basis[g];
    long j = family_index(label);
    ScalarQ lam = block.matrix[g][g];
    // Back-substitute inside the family flag: indices g-j .. g share the
    // family, ordered by increasing j.
    std::size_t base = g - static_cast<std::size_t>(j);
    std::vector<ScalarQ> c(static_cast<std::size_t>(j) + 1, ScalarQ(0));
    c.back() = kOne;
    for (long i = j - 1; i >= 0; --i) {
      ScalarQ acc(0);
      for (long t = i + 1; t <= j; ++t)
        acc += block.matrix[base + i][base + t] * c[static_cast<std::size_t>(t)];
      ScalarQ gap = block.matrix[base + i][base + i] - lam;
      if (gap.is_zero()) {
        if (!acc.is_zero())
          throw BundleError("degenerate eigenvalue collision inside a family");
        continue;
      }
      c[static_cast<std::size_t>(i)] = -acc / gap;
    }
    Element vec;
    for (long i = 0; i <= j; ++i)
      if (!c[static_cast<std::size_t>(i)].is_zero())
        vec += Element::monomial(block.basis[base + i], c[static_cast<std::size_t>(i)]);
    out.push_back({label, lam, vec});
  }
  return out;
}

ScalarQ left_eigenvalue(long a, long k, long l) {
  using coeff::q_number;
  if (a >= 0) {
    long m = a;
    return kHalf * (q_number(m) * q_number(l + 1) * qpow(2 * (2 - l)) +
                    q_number(k) * q_number(l + 1) * qpow(4 + 2 * m - 2 * l) +
                    q_number(l) * q_number(m + 1) * qpow(2 * (1 - l)) +
                    q_number(l) * q_number(k) * qpow(4 + 2 * m - 2 * l));
  }
  long m = -a;
  return kHalf * (q_number(m) * q_number(k + 1) * qpow(2 * (1 - m)) +
                  q_number(l) * q_number(k + 1) * qpow(2 - 2 * m - 2 * l) +
                  q_number(k) * q_number(m + 1) * qpow(2 * (2 - m)) +
                  q_number(l) * q_number(k) * qpow(4 - 2 * m - 2 * l));
}

ScalarQ right_eigenvalue(long a, long k, long l) {
  using coeff::q_number;
  if (a >= 0) {
    long m = a;
    return kHalf * (q_number(m) * q_number(l + 1) * qpow(2 - 2 * m - 2 * k) +
                    q_number(k) * q_number(l + 1) * qpow(2 * (1 - k)) +
                    q_number(l) * q_number(m + 1) * qpow(4 - 2 * m - 2 * k) +
                    q_number(l) * q_number(k) * qpow(2 * (3 - k)));
  }
  long m = -a;
  return kHalf * (q_number(m) * q_number(k + 1) * qpow(4 - 2 * k + 2 * l) +
                  q_number(l) * q_number(k + 1) * qpow(2 * (2 - k)) +
                  q_number(k) * q_number(m + 1) * qpow(2 - 2 * k + 2 * l) +
                  q_number(k) * q_number(l) * qpow(2 * (1 - k)));
}

Monomial commutation_witness_monomial(long n) {
  if (n > 0) return {n, 1, 1};
  if (n < 0) return {n, 1, 1};
  return {1, 1, 2};
}

Element commutation_residual(long n) {
  Element w = Element::monomial(commutation_witness_monomial(n));
  return laplacian_left(laplacian_right(w)) - laplacian_right(laplacian_left(w));
}

GrowthReport growth_scan(long n, long m_max, const Rational& qv) {
  GrowthReport rep;
  rep.strictly_increasing = true;
  double prev = 0;
  for (long m = 1; m <= m_max; ++m) {
    long l = m - n;
    if (l < 0) continue;
    double v = left_eigenvalue(m, 0, l).eval_double(qv.get_d());
    if (!rep.values.empty() && v <= prev) rep.strictly_increasing = false;
    rep.values.push_back(v);
    prev = v;
  }
  return rep;
}

}  // namespace qhf::bundles
