// Command-line interface to the quantum Hopf fibration engine.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qhf/report.hpp"

namespace {

using qhf::report::CliError;
using qhf::report::Command;
using qhf::report::Format;
using qhf::report::Mode;
using qhf::report::Rational;
using qhf::report::RunConfig;

// Winding range "lo..hi" or a single integer.
void parse_range(const std::string& text, RunConfig& cfg) {
  auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      cfg.n_lo = cfg.n_hi = std::stol(text);
    } else {
      cfg.n_lo = std::stol(text.substr(0, dots));
      cfg.n_hi = std::stol(text.substr(dots + 2));
    }
  } catch (const std::exception&) {
    throw CliError("cannot parse winding range '" + text + "' (expected N or LO..HI)");
  }
}

Rational parse_rational(const std::string& text) {
  try {
    Rational r(text);
    r.canonicalize();
    return r;
  } catch (const std::exception&) {
    throw CliError("cannot parse q value '" + text + "' (expected an exact rational like 9/10)");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact spectral geometry of the quantum Hopf fibration"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string range_text, mode_text = "exact", format_text;
  std::vector<std::string> q_texts;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--n", range_text, "winding range, N or LO..HI");
    sub->add_option("--filtration", cfg.filtration, "exponent filtration bound");
    sub->add_option("--mode", mode_text, "exact or numeric")
        ->check(CLI::IsMember({"exact", "numeric"}));
    sub->add_option("--q", q_texts, "numeric sample points (exact rationals)");
    sub->add_option("--format", format_text, "csv, json or latex")
        ->check(CLI::IsMember({"csv", "json", "latex"}));
    sub->add_option("--output", cfg.output_path, "write the artifact to this path");
  };

  CLI::App* spectrum = app.add_subcommand("spectrum", "covariant Laplacian spectra");
  add_common(spectrum);
  CLI::App* verify = app.add_subcommand("verify", "run the exact verification suites");
  add_common(verify);
  verify->add_option("--suite", cfg.suite,
                     "all, tables, generators, curvature, scalar or ymsm");
  CLI::App* table = app.add_subcommand("table", "render the spectral tables");
  add_common(table);
  CLI::App* ymc = app.add_subcommand("ym-check", "field-equation residual report");
  add_common(ymc);
  CLI::App* haar = app.add_subcommand("haar", "moments of the invariant state");
  add_common(haar);
  CLI::App* conv = app.add_subcommand("conventions", "print the calibrated conventions");
  add_common(conv);

  CLI11_PARSE(app, argc, argv);

  try {
    if (spectrum->parsed()) cfg.command = Command::spectrum;
    if (verify->parsed()) cfg.command = Command::verify;
    if (table->parsed()) cfg.command = Command::table;
    if (ymc->parsed()) cfg.command = Command::ym_check;
    if (haar->parsed()) cfg.command = Command::haar;
    if (conv->parsed()) cfg.command = Command::conventions;

    if (!range_text.empty()) parse_range(range_text, cfg);
    cfg.mode = mode_text == "numeric" ? Mode::numeric : Mode::exact;
    if (format_text.empty())
      format_text = cfg.command == Command::table      ? "latex"
                    : cfg.command == Command::ym_check ? "json"
                                                       : "csv";
    cfg.format = format_text == "json"    ? Format::json
                 : format_text == "latex" ? Format::latex
                                          : Format::csv;
    for (const std::string& t : q_texts) cfg.q_values.push_back(parse_rational(t));

    qhf::report::validate(cfg);
    return qhf::report::run(cfg, std::cout);
  } catch (const CliError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 3;
  }
}
