// cvwerner: verification suites, parameter scans and discord sweeps for
// truncated CV Werner states.
//
// Exit status: 0 when every check and precondition holds, 1 when a check
// fails or a certificate is refused, 2 on invalid arguments.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "cli_support.hpp"
#include "cvwerner/certificate_io.hpp"
#include "cvwerner/discord.hpp"
#include "cvwerner/error.hpp"
#include "cvwerner/separability.hpp"
#include "cvwerner/verification.hpp"
#include "cvwerner/version.hpp"
#include "cvwerner/werner.hpp"

namespace {

using namespace cvwerner;
using cli::Format;

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct Common {
  std::string out_path;
  std::string format = "csv";
  std::vector<std::string> tol_overrides;
  cli::RunTolerances tol;
};

void add_common(CLI::App& cmd, Common& c, const std::string& default_format) {
  c.format = default_format;
  cmd.add_option("--out", c.out_path, "Output file (default stdout)");
  cmd.add_option("--format", c.format, "Output format: csv, json (verify also accepts text)")->capture_default_str();
  cmd.add_option("--tol", c.tol_overrides,
                 "Tolerance override NAME=VALUE (hermitian, clamp, trace, ppt, converge, reconstruct)");
}

void resolve_tolerances(Common& c) {
  for (const auto& t : c.tol_overrides) cli::apply_tolerance(c.tol, t);
}

void emit(const Common& c, const std::string& text) {
  if (c.out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out_path, std::ios::binary);
  if (!f) fail(ErrorCode::ParamOutOfRange, "cannot open output file '" + c.out_path + "'");
  f << text;
}

std::string render(const Common& c, const Table& table, const Metadata& meta, const Metadata& footer = {}) {
  const Format f = cli::parse_format(c.format);
  if (f == Format::Json) return table_to_json(table, meta, footer);
  if (f == Format::Csv) return table_to_csv(table, meta, footer);
  fail(ErrorCode::ParamOutOfRange, "this command writes csv or json");
}

Metadata with_tolerances(Metadata meta, const Common& c) {
  for (auto& kv : cli::tolerance_metadata(c.tol)) meta.push_back(std::move(kv));
  return meta;
}

void require_unit_interval(double v, const std::string& name, bool closed_above) {
  const bool ok = v >= 0.0 && (closed_above ? v <= 1.0 : v < 1.0);
  if (!ok) fail(ErrorCode::ParamOutOfRange, name + " out of range: " + format_double(v));
}

// verify --------------------------------------------------------------------

struct VerifyArgs {
  Common common;
  std::string fault = "none";
  bool quick = false;
  int cutoff = kDefaultCutoff;
  int n_trunc = 30;
  int series_terms = kDefaultSeriesTerms;
};

int run_verify(VerifyArgs& a) {
  resolve_tolerances(a.common);
  VerifyOptions o;
  o.tol = a.common.tol.numeric;
  o.fault = parse_fault(a.fault);
  o.include_threshold = !a.quick;
  o.discord_cutoff = a.cutoff;
  o.discord_levels = a.n_trunc;
  o.series_terms = a.series_terms;
  const Format format = cli::parse_format(a.common.format);

  Metadata meta = cli::base_metadata("verify");
  meta.push_back({"fault", to_string(o.fault)});
  meta.push_back({"quick", a.quick ? "1" : "0"});
  meta.push_back({"cutoff", std::to_string(o.discord_cutoff)});
  meta.push_back({"n_trunc", std::to_string(o.discord_levels)});
  meta.push_back({"series_terms", std::to_string(o.series_terms)});
  meta = with_tolerances(std::move(meta), a.common);

  const auto checks = run_verification(o);
  if (format == Format::Json) emit(a.common, checks_to_json(checks, meta));
  else if (format == Format::Csv) emit(a.common, checks_to_csv(checks, meta));
  else emit(a.common, checks_to_text(checks, meta));

  for (const auto& c : checks) {
    if (!c.passed) {
      std::cerr << "verify: first failing check: " << c.name << "\n";
      return kExitFailure;
    }
  }
  return 0;
}

// ppt-scan ------------------------------------------------------------------

struct PptScanArgs {
  Common common;
  std::string grid = "0.1:0.9:5";
  std::optional<double> lambda1, lambda2;
  std::vector<int> n_trunc{2, 3, 5};
};

int run_ppt_scan(PptScanArgs& a) {
  resolve_tolerances(a.common);
  const auto grid = cli::parse_grid(a.grid);
  const auto l1s = a.lambda1 ? std::vector<double>{*a.lambda1} : grid.values();
  const auto l2s = a.lambda2 ? std::vector<double>{*a.lambda2} : grid.values();
  for (double v : l1s) require_unit_interval(v, "lambda1", false);
  for (double v : l2s) require_unit_interval(v, "lambda2", false);

  Table t;
  t.columns = {"lambda1", "lambda2", "n_trunc", "threshold_analytic", "threshold_bisected", "abs_diff"};
  bool ok = true;
  for (int n : a.n_trunc) {
    for (double l1 : l1s) {
      for (double l2 : l2s) {
        const double analytic = ppt_threshold(l1, l2, n);
        const double bisected = ppt_threshold_bisected(l1, l2, n, 1e-12, a.common.tol.numeric);
        const double diff = std::abs(analytic - bisected);
        ok = ok && diff <= a.common.tol.ppt;
        t.rows.push_back({l1, l2, static_cast<double>(n), analytic, bisected, diff});
      }
    }
  }
  Metadata meta = cli::base_metadata("ppt-scan");
  meta.push_back({"grid", a.lambda1 && a.lambda2 ? "none" : grid.to_string()});
  meta.push_back({"lambda1", a.lambda1 ? format_double(*a.lambda1) : "grid"});
  meta.push_back({"lambda2", a.lambda2 ? format_double(*a.lambda2) : "grid"});
  std::string ns;
  for (int n : a.n_trunc) ns += (ns.empty() ? "" : ",") + std::to_string(n);
  meta.push_back({"n_trunc", ns});
  emit(a.common, render(a.common, t, with_tolerances(std::move(meta), a.common)));
  if (!ok) std::cerr << "ppt-scan: a threshold pair differs by more than tol.ppt\n";
  return ok ? 0 : kExitFailure;
}

// decompose -----------------------------------------------------------------

struct DecomposeArgs {
  Common common;
  double lambda1 = 0.5, lambda2 = 0.5, p = 0.0;
  int n_trunc = 2;
  bool boundary = false;
};

int run_decompose(DecomposeArgs& a) {
  resolve_tolerances(a.common);
  if (cli::parse_format(a.common.format) != Format::Json) {
    fail(ErrorCode::ParamOutOfRange, "certificates are written as json");
  }
  WernerParams params{a.lambda1, a.lambda2, a.p, a.n_trunc};
  if (a.boundary) {
    require_unit_interval(a.lambda1, "lambda1", false);
    params = BoundaryParams{a.lambda1}.werner(a.n_trunc);
  }
  params.validate();
  Metadata meta = cli::base_metadata("decompose");
  meta.push_back({"boundary", a.boundary ? "1" : "0"});
  meta.push_back({"lambda1", format_double(params.lambda1)});
  meta.push_back({"lambda2", format_double(params.lambda2)});
  meta.push_back({"p", format_double(params.p)});
  meta.push_back({"n_trunc", std::to_string(params.n_trunc)});
  meta.push_back({"ppt_threshold", format_double(ppt_threshold(params.lambda1, params.lambda2, params.n_trunc))});
  meta = with_tolerances(std::move(meta), a.common);

  SeparableDecomposition cert;
  try {
    cert = decompose_general_ppt(params);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotProvablySeparable) throw;
    std::cerr << "decompose: refused: " << e.what() << "\n";
    return kExitFailure;
  }
  emit(a.common, certificate_to_json(cert, meta));
  if (cert.reconstruction_error > a.common.tol.reconstruct) {
    std::cerr << "decompose: reconstruction error " << format_double(cert.reconstruction_error)
              << " exceeds tol.reconstruct\n";
    return kExitFailure;
  }
  return 0;
}

// converge ------------------------------------------------------------------

struct ConvergeArgs {
  Common common;
  std::string grid = "0.3:0.7:3";
  std::optional<double> lambda;
  std::vector<int> n_trunc{3, 5, 8};
  int cutoff = 200;
};

int run_converge(ConvergeArgs& a) {
  resolve_tolerances(a.common);
  const auto grid = cli::parse_grid(a.grid);
  const auto lambdas = a.lambda ? std::vector<double>{*a.lambda} : grid.values();
  for (double v : lambdas) require_unit_interval(v, "lambda", false);
  Table t;
  t.columns = {"lambda", "n_trunc", "cutoff", "trace_norm_numeric", "trace_norm_closed", "abs_diff", "tail_bound"};
  bool ok = true;
  for (int n : a.n_trunc) {
    for (double l : lambdas) {
      const auto r = trace_norm_convergence(l, n, a.cutoff, a.common.tol.numeric);
      const double diff = std::abs(r.numeric - r.closed_form);
      ok = ok && diff <= a.common.tol.converge;
      t.rows.push_back({l, static_cast<double>(n), static_cast<double>(a.cutoff), r.numeric, r.closed_form, diff,
                        r.tail_bound});
    }
  }
  Metadata meta = cli::base_metadata("converge");
  meta.push_back({"grid", a.lambda ? "none" : grid.to_string()});
  meta.push_back({"lambda", a.lambda ? format_double(*a.lambda) : "grid"});
  std::string ns;
  for (int n : a.n_trunc) ns += (ns.empty() ? "" : ",") + std::to_string(n);
  meta.push_back({"n_trunc", ns});
  meta.push_back({"cutoff", std::to_string(a.cutoff)});
  emit(a.common, render(a.common, t, with_tolerances(std::move(meta), a.common)));
  if (!ok) std::cerr << "converge: a trace norm differs from the closed form by more than tol.converge\n";
  return ok ? 0 : kExitFailure;
}

// discord-sweep / threshold -------------------------------------------------

struct DiscordArgs {
  Common common;
  std::string grid = "0.01:0.95:95";
  std::string bracket = "0.3:0.5";
  int n_trunc = 30;
  int cutoff = kDefaultCutoff;
  int series_terms = kDefaultSeriesTerms;
  double xtol = 1e-4;
  bool no_threshold = false;
};

Metadata discord_metadata(const std::string& command, const DiscordArgs& a) {
  Metadata meta = cli::base_metadata(command);
  meta.push_back({"n_trunc", std::to_string(a.n_trunc)});
  meta.push_back({"cutoff", std::to_string(a.cutoff)});
  meta.push_back({"series_terms", std::to_string(a.series_terms)});
  return meta;
}

int run_discord_sweep(DiscordArgs& a) {
  resolve_tolerances(a.common);
  const auto grid = cli::parse_grid(a.grid);
  const auto lambdas = grid.values();
  const auto reports = discord_sweep(lambdas, a.n_trunc, a.cutoff, a.series_terms, a.common.tol.numeric);

  Metadata meta = discord_metadata("discord-sweep", a);
  meta.push_back({"grid", grid.to_string()});
  Metadata footer;
  int status = 0;
  if (!a.no_threshold) {
    const auto br = cli::parse_bracket(a.bracket);
    meta.push_back({"bracket", a.bracket});
    meta.push_back({"xtol", format_double(a.xtol)});
    try {
      const double th = find_threshold(a.n_trunc, a.cutoff, a.series_terms, br, a.xtol, a.common.tol.numeric);
      footer.push_back({"lambda_th", format_double(th)});
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NoSignChange) throw;
      std::cerr << "discord-sweep: " << e.what() << "\n";
      footer.push_back({"lambda_th", "none"});
      status = kExitFailure;
    }
  }
  emit(a.common, render(a.common, discord_table(reports), with_tolerances(std::move(meta), a.common), footer));
  return status;
}

int run_threshold(DiscordArgs& a) {
  resolve_tolerances(a.common);
  const auto br = cli::parse_bracket(a.bracket);
  Metadata meta = discord_metadata("threshold", a);
  meta.push_back({"bracket", a.bracket});
  meta.push_back({"xtol", format_double(a.xtol)});
  double th = 0.0;
  try {
    th = find_threshold(a.n_trunc, a.cutoff, a.series_terms, br, a.xtol, a.common.tol.numeric);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NoSignChange) throw;
    std::cerr << "threshold: " << e.what() << "\n";
    return kExitFailure;
  }
  Table t;
  t.columns = {"n_trunc", "cutoff", "series_terms", "bracket_lo", "bracket_hi", "lambda_th"};
  t.rows.push_back({static_cast<double>(a.n_trunc), static_cast<double>(a.cutoff),
                    static_cast<double>(a.series_terms), br.first, br.second, th});
  emit(a.common, render(a.common, t, with_tolerances(std::move(meta), a.common)));
  return 0;
}

void add_discord_options(CLI::App& cmd, DiscordArgs& a) {
  cmd.add_option("--n-trunc", a.n_trunc, "Number of phase-vector levels N")->capture_default_str();
  cmd.add_option("--cutoff", a.cutoff, "Fock cutoff of mode A")->capture_default_str();
  cmd.add_option("--series-terms", a.series_terms, "Terms kept in the infinite series")->capture_default_str();
  cmd.add_option("--bracket", a.bracket, "Bisection bracket lo:hi for lambda_th")->capture_default_str();
  cmd.add_option("--xtol", a.xtol, "Bisection bracket width at which to stop")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Truncated CV Werner states: separability certificates, convergence and discord"};
  app.set_version_flag("--version", std::string(cvwerner::kVersion));
  app.require_subcommand(1);

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "Run the full invariant and cross-check suite");
  add_common(*verify_cmd, verify.common, "text");
  verify_cmd->add_option("--inject-fault", verify.fault, "Deliberate error: wrong-kn, drop-term, shift-threshold, wrong-entropy");
  verify_cmd->add_flag("--quick", verify.quick, "Skip the discord threshold bisection");
  verify_cmd->add_option("--cutoff", verify.cutoff, "Fock cutoff for the discord checks")->capture_default_str();
  verify_cmd->add_option("--n-trunc", verify.n_trunc, "Phase-vector levels for the discord checks")->capture_default_str();
  verify_cmd->add_option("--series-terms", verify.series_terms, "Series terms for the discord checks")
      ->capture_default_str();

  PptScanArgs scan;
  auto* scan_cmd = app.add_subcommand("ppt-scan", "Analytic versus bisected PPT threshold over a grid");
  add_common(*scan_cmd, scan.common, "csv");
  scan_cmd->add_option("--grid", scan.grid, "lambda grid start:stop:steps for both modes")->capture_default_str();
  scan_cmd->add_option("--lambda1", scan.lambda1, "Fix lambda1 instead of scanning it");
  scan_cmd->add_option("--lambda2", scan.lambda2, "Fix lambda2 instead of scanning it");
  scan_cmd->add_option("--n-trunc", scan.n_trunc, "Truncation levels (repeatable)")->capture_default_str();

  DecomposeArgs dec;
  auto* dec_cmd = app.add_subcommand("decompose", "Write a separable-decomposition certificate as json");
  add_common(*dec_cmd, dec.common, "json");
  dec_cmd->add_option("--lambda1", dec.lambda1, "Squeezing parameter lambda1 (lambda with --boundary)")
      ->capture_default_str();
  dec_cmd->add_option("--lambda2", dec.lambda2, "Thermal parameter lambda2")->capture_default_str();
  dec_cmd->add_option("--p", dec.p, "Mixing weight of the squeezed vacuum")->capture_default_str();
  dec_cmd->add_option("--n-trunc", dec.n_trunc, "Truncation level N")->capture_default_str();
  dec_cmd->add_flag("--boundary", dec.boundary, "Use the PPT boundary state lambda2^2 = lambda1, p = (1-lambda1)/2");

  ConvergeArgs conv;
  auto* conv_cmd = app.add_subcommand("converge", "Trace-norm distance of truncations against the closed form");
  add_common(*conv_cmd, conv.common, "csv");
  conv_cmd->add_option("--grid", conv.grid, "lambda grid start:stop:steps")->capture_default_str();
  conv_cmd->add_option("--lambda1", conv.lambda, "Single lambda instead of the grid");
  conv_cmd->add_option("--n-trunc", conv.n_trunc, "Truncation levels (repeatable)")->capture_default_str();
  conv_cmd->add_option("--cutoff", conv.cutoff, "Fock cutoff")->capture_default_str();

  DiscordArgs sweep;
  auto* sweep_cmd = app.add_subcommand("discord-sweep", "Delta(lambda) curve with the bisected crossover");
  sweep_cmd->alias("fig1");
  add_common(*sweep_cmd, sweep.common, "csv");
  add_discord_options(*sweep_cmd, sweep);
  sweep_cmd->add_option("--grid", sweep.grid, "lambda grid start:stop:steps")->capture_default_str();
  sweep_cmd->add_flag("--no-threshold", sweep.no_threshold, "Skip the crossover bisection");

  DiscordArgs thr;
  auto* thr_cmd = app.add_subcommand("threshold", "Bisect the zero of Delta(lambda)");
  add_common(*thr_cmd, thr.common, "csv");
  add_discord_options(*thr_cmd, thr);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*verify_cmd) return run_verify(verify);
    if (*scan_cmd) return run_ppt_scan(scan);
    if (*dec_cmd) return run_decompose(dec);
    if (*conv_cmd) return run_converge(conv);
    if (*sweep_cmd) return run_discord_sweep(sweep);
    if (*thr_cmd) return run_threshold(thr);
  } catch (const cvwerner::Error& e) {
    std::cerr << "cvwerner: " << e.what() << "\n";
    const bool usage = e.code() == cvwerner::ErrorCode::ParamOutOfRange ||
                       e.code() == cvwerner::ErrorCode::CutoffTooSmall ||
                       e.code() == cvwerner::ErrorCode::MalformedInput;
    return usage ? kExitUsage : kExitFailure;
  }
  return kExitUsage;
}
