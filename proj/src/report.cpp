#include "qhf/report.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace qhf::report {

namespace {

using bundles::Side;
using json = nlohmann::ordered_json;

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string rational_str(const Rational& r) { return r.get_str(); }

std::string side_name(Side s) { return s == Side::left ? "left" : "right"; }

// Plain-text monomial in the generator letters, e.g. "a^2 g g*^3".
std::string monomial_text(const Monomial& m) {
  if (m.is_unit()) return "1";
  std::ostringstream os;
  auto power = [&os](const char* letter, long e) {
    if (e == 0) return;
    if (os.tellp() > 0) os << ' ';
    os << letter;
    if (e > 1) os << '^' << e;
  };
  power("a", m.a > 0 ? m.a : 0);
  power("a*", m.a < 0 ? -m.a : 0);
  power("g", m.k);
  power("g*", m.l);
  return os.str();
}

std::string monomial_latex(const Monomial& m) {
  if (m.is_unit()) return "\\mathbbm{1}";
  std::ostringstream os;
  auto power = [&os](const char* letter, bool star, long e) {
    if (e == 0) return;
    os << letter;
    if (star && e > 1)
      os << "^{\\ast\\," << e << '}';
    else if (star)
      os << "^{\\ast}";
    else if (e > 1)
      os << "^{" << e << '}';
  };
  power("\\alpha", false, m.a > 0 ? m.a : 0);
  power("\\alpha", true, m.a < 0 ? -m.a : 0);
  power("\\gamma", false, m.k);
  power("\\gamma", true, m.l);
  return os.str();
}

json row_to_json(const SpectralRow& r) {
  json jr;
  jr["n"] = r.n;
  jr["side"] = side_name(r.side);
  jr["family"] = {r.family.a, r.family.k, r.family.l};
  jr["computed"] = r.computed;
  jr["formula"] = r.formula;
  jr["match"] = r.match;
  if (!r.numeric.empty()) {
    json nums = json::array();
    for (double v : r.numeric) nums.push_back(fmt_double(v));
    jr["numeric"] = nums;
  }
  return jr;
}

std::string render_csv(const SpectralReport& r, const RunConfig& cfg) {
  std::ostringstream os;
  os << "n,side,a,k,l,eigenvalue,formula,match";
  if (cfg.mode == Mode::numeric)
    for (const Rational& q : cfg.q_values) os << ",q=" << rational_str(q);
  os << '\n';
  for (const SpectralRow& row : r.rows) {
    os << row.n << ',' << side_name(row.side) << ',' << row.family.a << ','
       << row.family.k << ',' << row.family.l << ',' << row.computed << ','
       << row.formula << ',' << (row.match ? "yes" : "NO");
    for (double v : row.numeric) os << ',' << fmt_double(v);
    os << '\n';
  }
  return os.str();
}

std::string render_latex(const SpectralReport& r) {
  std::ostringstream os;
  for (Side side : {Side::left, Side::right}) {
    os << "% covariant Laplacian spectrum, " << side_name(side) << " sections\n";
    os << "\\begin{tabular}{|c|c|c|}\n\\hline\n";
    os << "$T(1)$ & $n$ & $\\lambda$ \\\\\\hline\n";
    for (const SpectralRow& row : r.rows) {
      if (row.side != side) continue;
      os << '$' << monomial_latex(row.family) << "$ & $" << row.n
         << "$ & \\texttt{" << row.computed << "} \\\\\\hline\n";
    }
    os << "\\end{tabular}\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Verification suites used by the `verify` subcommand.

bool suite_tables(const RunConfig& cfg, std::string& detail) {
  SpectralReport r = spectral_report(cfg);
  std::size_t bad = 0;
  for (const SpectralRow& row : r.rows)
    if (!row.match) ++bad;
  if (bad) detail = std::to_string(bad) + " eigenvalue mismatches";
  return bad == 0;
}

bool suite_generators(const RunConfig& cfg, std::string& detail) {
  long bound = std::max(labs(cfg.n_lo), labs(cfg.n_hi));
  for (long n = -bound; n <= bound; ++n) {
    bundles::Report rep = bundles::verify_generators(bundles::generator_set(n));
    if (!rep.ok) {
      detail = "winding " + std::to_string(n) + ": " + rep.detail;
      return false;
    }
  }
  return true;
}

bool suite_curvature(std::string& detail) {
  ScalarQ expected = ScalarQ::q_power(1) + ScalarQ::q_power(3);
  if (!(calc::conventions().curvature_coeff == expected)) {
    detail = "canonical curvature is " + calc::conventions().curvature_coeff.str();
    return false;
  }
  if (!ym::ym_residual({}).is_zero()) {
    detail = "canonical connection is not stationary";
    return false;
  }
  return true;
}

bool suite_scalar(std::string& detail) {
  ScalarQ one(1), q2 = ScalarQ::q_power(2);
  ScalarQ expected = ScalarQ(Rational(1, 2)) * (one + q2) * (one + q2);
  Element gg = Element::gen_g() * Element::gen_g_star();
  std::vector<Element> eigen = {Element::unit() - (one + q2) * gg,
                                Element::gen_a() * Element::gen_g_star(),
                                Element::gen_a_star() * Element::gen_g()};
  for (const Element& p : eigen)
    if (!(sphere::laplacian0(p) == expected * p)) {
      detail = "scalar eigenvector failed: " + p.str();
      return false;
    }
  return true;
}

bool suite_ymsm(std::string& detail) {
  std::vector<ym::Displacement> probes = ym::displacement_probes(4);
  for (long n = 1; n <= 3; ++n)
    for (const ym::Triple& t : {ym::solution_power(n), ym::solution_conjugate(n)}) {
      auto [ml, mr] = ym::matter_residual(t);
      if (!ml.is_zero() || !mr.is_zero()) {
        detail = "matter residual nonzero at winding " + std::to_string(n);
        return false;
      }
      for (const ym::Displacement& p : probes)
        if (!ym::gauge_residual(t, p).is_zero()) {
          detail = "gauge residual nonzero at winding " + std::to_string(n);
          return false;
        }
    }
  return true;
}

int run_verify(const RunConfig& cfg, std::ostream& out) {
  struct Entry {
    std::string name;
    bool ok;
    std::string detail;
  };
  std::vector<Entry> results;
  auto want = [&cfg](const std::string& s) { return cfg.suite == "all" || cfg.suite == s; };
  std::string d;
  if (want("tables")) results.push_back({"tables", suite_tables(cfg, d), d}), d.clear();
  if (want("generators"))
    results.push_back({"generators", suite_generators(cfg, d), d}), d.clear();
  if (want("curvature")) results.push_back({"curvature", suite_curvature(d), d}), d.clear();
  if (want("scalar")) results.push_back({"scalar", suite_scalar(d), d}), d.clear();
  if (want("ymsm")) results.push_back({"ymsm", suite_ymsm(d), d}), d.clear();
  if (results.empty())
    throw CliError("unknown suite '" + cfg.suite +
                   "' (expected all, tables, generators, curvature, scalar or ymsm)");
  bool ok = true;
  for (const Entry& e : results) {
    out << e.name << ": " << (e.ok ? "ok" : "FAIL") ;
    if (!e.ok && !e.detail.empty()) out << " (" << e.detail << ")";
    out << '\n';
    ok = ok && e.ok;
  }
  return ok ? 0 : 1;
}

// ---------------------------------------------------------------------------

int run_ym_check(const RunConfig& cfg, std::ostream& out) {
  json doc;
  doc["filtration"] = cfg.filtration;
  json triples = json::array();
  bool all_ok = true;
  long lo = std::max<long>(1, cfg.n_lo);
  for (long n = lo; n <= cfg.n_hi; ++n)
    for (const char* family : {"power", "conjugate"}) {
      ym::Triple t = family == std::string("power") ? ym::solution_power(n)
                                                    : ym::solution_conjugate(n);
      json jt;
      jt["n"] = n;
      jt["family"] = family;

      ym::YMResidual yr = ym::ym_residual(t.omega);
      jt["ym_residual_norms"] = {sphere::inner1(yr.left, yr.left).str(),
                                 sphere::inner1(yr.right, yr.right).str()};
      bool prim_ok = true;
      try {
        Element p = ym::find_primitive(t.omega.lam, cfg.filtration);
        prim_ok = calc::d_fun(p) == t.omega.lam;
      } catch (const ym::YMError&) {
        prim_ok = false;
      }
      jt["primitive_found"] = prim_ok;

      auto [ml, mr] = ym::matter_residual(t);
      jt["ymsm_matter_residuals"] = {sphere::inner0(ml, ml).str(),
                                     sphere::inner0(mr, mr).str()};
      double gmax = 0.0;
      for (const ym::Displacement& probe : ym::displacement_probes(4)) {
        ScalarQ g = ym::gauge_residual(t, probe);
        if (!g.is_zero()) gmax = std::max(gmax, std::abs(g.eval_double(0.5)));
      }
      jt["gauge_residual_max"] = fmt_double(gmax);
      bool ok = prim_ok && yr.is_zero() && ml.is_zero() && mr.is_zero() && gmax == 0.0;
      jt["ok"] = ok;
      all_ok = all_ok && ok;
      triples.push_back(jt);
    }
  doc["triples"] = triples;
  doc["all_ok"] = all_ok;
  out << doc.dump(2) << '\n';
  return all_ok ? 0 : 1;
}

int run_haar(const RunConfig& cfg, std::ostream& out) {
  // The invariant state vanishes except on the balanced words g^j g*^j;
  // list the nonzero moments up to the filtration and count the rest.
  std::vector<std::pair<Monomial, ScalarQ>> rows;
  long vanishing = 0;
  for (long a = -cfg.filtration; a <= cfg.filtration; ++a)
    for (long k = 0; k <= cfg.filtration; ++k)
      for (long l = 0; l <= cfg.filtration; ++l) {
        Monomial m{a, k, l};
        if (m.length() > cfg.filtration) continue;
        ScalarQ h = qg::haar(Element::monomial(m));
        if (h.is_zero())
          ++vanishing;
        else
          rows.push_back({m, h});
      }
  if (cfg.format == Format::json) {
    json doc;
    doc["filtration"] = cfg.filtration;
    doc["vanishing_monomials"] = vanishing;
    json jr = json::array();
    for (const auto& [m, h] : rows) {
      json e;
      e["monomial"] = {m.a, m.k, m.l};
      e["value"] = h.str();
      if (cfg.mode == Mode::numeric) {
        json nums = json::array();
        for (const Rational& q : cfg.q_values)
          nums.push_back(fmt_double(h.eval_double(q.get_d())));
        e["numeric"] = nums;
      }
      jr.push_back(e);
    }
    doc["moments"] = jr;
    out << doc.dump(2) << '\n';
  } else {
    out << "a,k,l,haar";
    if (cfg.mode == Mode::numeric)
      for (const Rational& q : cfg.q_values) out << ",q=" << rational_str(q);
    out << '\n';
    for (const auto& [m, h] : rows) {
      out << m.a << ',' << m.k << ',' << m.l << ',' << h.str();
      if (cfg.mode == Mode::numeric)
        for (const Rational& q : cfg.q_values)
          out << ',' << fmt_double(h.eval_double(q.get_d()));
      out << '\n';
    }
    out << "# vanishing monomials up to length " << cfg.filtration << ": "
        << vanishing << '\n';
  }
  return 0;
}

int run_conventions(const RunConfig& cfg, std::ostream& out) {
  out << calc::conventions().report();
  out << "circle couplings:";
  for (long n = cfg.n_lo; n <= cfg.n_hi; ++n)
    out << "  c(" << n << ") = " << calc::circle_coupling(n).str();
  out << '\n';
  out << "coupling normalization rho = " << ym::gauge_rho().str() << '\n';
  return 0;
}

}  // namespace

std::vector<Rational> default_q_values() {
  return {Rational(1, 2), Rational(-1, 2), Rational(9, 10), Rational(999, 1000)};
}

void validate(RunConfig& cfg) {
  if (cfg.filtration < 0) throw CliError("filtration must be non-negative");
  if (cfg.n_lo > cfg.n_hi)
    throw CliError("empty winding range: " + std::to_string(cfg.n_lo) + ".." +
                   std::to_string(cfg.n_hi));
  if (cfg.mode == Mode::numeric && cfg.q_values.empty()) cfg.q_values = default_q_values();
  for (const Rational& q : cfg.q_values) {
    Rational v = q;
    v.canonicalize();
    if (v == 0 || v == 1 || v == -1)
      throw CliError("q value " + rational_str(q) +
                     " is a calculus pole; choose q in (-1,1) minus {0}");
  }
}

bool SpectralReport::all_match() const {
  for (const SpectralRow& r : rows)
    if (!r.match) return false;
  return true;
}

SpectralReport spectral_report(const RunConfig& cfg) {
  SpectralReport rep;
  rep.n_lo = cfg.n_lo;
  rep.n_hi = cfg.n_hi;
  rep.filtration = cfg.filtration;
  for (long n = cfg.n_lo; n <= cfg.n_hi; ++n)
    for (Side side : {Side::left, Side::right}) {
      bundles::SpectralBlock block = bundles::laplacian_matrix(n, cfg.filtration, side);
      for (const bundles::EigenPair& e : bundles::spectrum(block)) {
        SpectralRow row;
        row.n = n;
        row.side = side;
        row.family = e.label;
        row.computed = e.value.str();
        ScalarQ closed = side == Side::left
                             ? bundles::left_eigenvalue(e.label.a, e.label.k, e.label.l)
                             : bundles::right_eigenvalue(e.label.a, e.label.k, e.label.l);
        row.formula = closed.str();
        row.match = e.value == closed;
        if (cfg.mode == Mode::numeric)
          for (const Rational& q : cfg.q_values)
            row.numeric.push_back(e.value.eval_double(q.get_d()));
        rep.rows.push_back(row);
      }
    }
  return rep;
}

std::string to_json(const ScalarQ& s) { return json(s.str()).dump(); }

std::string to_json(const Element& e) {
  json terms = json::array();
  const auto ts = e.terms();
  for (const auto& [m, c] : ts) {
    json t;
    t["a"] = m.a;
    t["k"] = m.k;
    t["l"] = m.l;
    t["coeff"] = c.str();
    terms.push_back(t);
  }
  json doc;
  doc["terms"] = terms;
  return doc.dump();
}

std::string to_json(const SpectralReport& r) {
  json doc;
  doc["n_lo"] = r.n_lo;
  doc["n_hi"] = r.n_hi;
  doc["filtration"] = r.filtration;
  json rows = json::array();
  for (const SpectralRow& row : r.rows) rows.push_back(row_to_json(row));
  doc["rows"] = rows;
  return doc.dump(2);
}

ScalarQ scalar_from_json(const std::string& text) {
  return ScalarQ::parse(json::parse(text).get<std::string>());
}

Element element_from_json(const std::string& text) {
  json doc = json::parse(text);
  Element e;
  for (const json& t : doc.at("terms"))
    e += Element::monomial({t.at("a").get<long>(), t.at("k").get<long>(),
                            t.at("l").get<long>()},
                           ScalarQ::parse(t.at("coeff").get<std::string>()));
  return e;
}

SpectralReport spectral_report_from_json(const std::string& text) {
  json doc = json::parse(text);
  SpectralReport r;
  r.n_lo = doc.at("n_lo").get<long>();
  r.n_hi = doc.at("n_hi").get<long>();
  r.filtration = doc.at("filtration").get<long>();
  for (const json& jr : doc.at("rows")) {
    SpectralRow row;
    row.n = jr.at("n").get<long>();
    row.side = jr.at("side").get<std::string>() == "left" ? Side::left : Side::right;
    const json& fam = jr.at("family");
    row.family = {fam.at(0).get<long>(), fam.at(1).get<long>(), fam.at(2).get<long>()};
    row.computed = jr.at("computed").get<std::string>();
    row.formula = jr.at("formula").get<std::string>();
    row.match = jr.at("match").get<bool>();
    if (jr.contains("numeric"))
      for (const json& v : jr.at("numeric"))
        row.numeric.push_back(std::stod(v.get<std::string>()));
    r.rows.push_back(row);
  }
  return r;
}

std::string render(const SpectralReport& r, const RunConfig& cfg) {
  switch (cfg.format) {
    case Format::csv:
      return render_csv(r, cfg);
    case Format::json:
      return to_json(r) + "\n";
    case Format::latex:
      return render_latex(r);
  }
  throw CliError("unknown output format");
}

int run(const RunConfig& cfg, std::ostream& out) {
  std::ofstream file;
  std::ostream* sink = &out;
  if (!cfg.output_path.empty()) {
    file.open(cfg.output_path);
    if (!file) throw CliError("cannot write to " + cfg.output_path);
    sink = &file;
  }
  switch (cfg.command) {
    case Command::spectrum:
    case Command::table: {
      SpectralReport rep = spectral_report(cfg);
      *sink << render(rep, cfg);
      return rep.all_match() ? 0 : 1;
    }
    case Command::verify:
      return run_verify(cfg, *sink);
    case Command::ym_check:
      return run_ym_check(cfg, *sink);
    case Command::haar:
      return run_haar(cfg, *sink);
    case Command::conventions:
      return run_conventions(cfg, *sink);
  }
  throw CliError("unknown command");
}

}  // namespace qhf::report
