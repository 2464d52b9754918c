// Run configuration, spectral reporting, canonical serialization and the
// renderers behind the qhopf command-line tool.
//
// All artifacts are deterministic: identical configurations produce
// byte-identical output.  Exact values are stored as canonical scalar
// text; numeric columns are derived from the exact values on render.

#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "qhf/bundles.hpp"
#include "qhf/yang_mills.hpp"

namespace qhf::report {

using coeff::Rational;
using coeff::ScalarQ;
using qg::Element;
using qg::Monomial;

struct CliError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Command { spectrum, verify, table, ym_check, haar, conventions };
enum class Mode { exact, numeric };
enum class Format { csv, json, latex };

struct RunConfig {
  Command command = Command::spectrum;
  long n_lo = -2;
  long n_hi = 2;
  long filtration = 3;
  Mode mode = Mode::exact;
  std::vector<Rational> q_values;  // numeric evaluation points
  Format format = Format::csv;
  std::string output_path;  // empty: write to the given stream
  std::string suite = "all";  // verify subcommand only
};

// Default numeric sample points: sign coverage, moderate deformation and
// the near-classical regime.
std::vector<Rational> default_q_values();

// Validates ranges and modes, fills defaulted q values; throws CliError
// with an actionable message on invalid input.
void validate(RunConfig& cfg);

// ---------------------------------------------------------------------------
// Spectral report: one row per eigenvector of a covariant Laplacian
// block, carrying the computed eigenvalue, the closed-form value and the
// exact match flag.
struct SpectralRow {
  long n = 0;
  bundles::Side side = bundles::Side::left;
  Monomial family;
  std::string computed;  // canonical scalar text
  std::string formula;   // canonical text of the closed form
  bool match = false;    // exact symbolic equality
  std::vector<double> numeric;  // computed value at the q samples
};

struct SpectralReport {
  long n_lo = 0, n_hi = 0, filtration = 0;
  std::vector<SpectralRow> rows;

  bool all_match() const;
};

SpectralReport spectral_report(const RunConfig& cfg);

// ---------------------------------------------------------------------------
// Canonical JSON round trips.  Deserialization failures raise parse
// errors that carry the input location.
std::string to_json(const ScalarQ& s);
std::string to_json(const Element& e);
std::string to_json(const SpectralReport& r);
ScalarQ scalar_from_json(const std::string& text);
Element element_from_json(const std::string& text);
SpectralReport spectral_report_from_json(const std::string& text);

// Renders a spectral report in the requested format; numeric columns are
// included when the config ran in numeric mode.
std::string render(const SpectralReport& r, const RunConfig& cfg);

// ---------------------------------------------------------------------------
// Entry point shared by the command-line tool and the tests.  Writes the
// artifact to `out` (or to cfg.output_path when set) and returns the exit
// status: 0 on success, 1 when any verification mismatched.
int run(const RunConfig& cfg, std::ostream& out);

}  // namespace qhf::report
