#include "sel/app/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "sel/app/config.hpp"
#include "sel/app/qfunc.hpp"
#include "sel/app/sweep.hpp"
#include "sel/app/validate.hpp"
#include "sel/error.hpp"

namespace sel::app {

namespace {

namespace fs = std::filesystem;

/// Writes to `path` or, when empty, to `fallback`.
template <class Body>
void emit(const std::string& path, std::ostream& fallback, Body&& body) {
  if (path.empty()) {
    body(fallback);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ConfigError("cannot open " + path + " for writing");
  body(file);
  if (!file) throw ConfigError("failed writing " + path);
}

int do_sweep(const std::string& config_path, const std::string& out_path, bool plot_flag, std::ostream& out,
             std::ostream& err) {
  const SweepConfig config = load_config(config_path);
  const bool plot = plot_flag || config.plot;
  if (plot && out_path.empty()) throw ConfigError("plot output needs --out <csv>");

  const auto rows = run_sweep(config);
  emit(out_path, out, [&](std::ostream& os) { write_sweep_csv(os, config, rows); });
  if (plot) {
    const fs::path csv(out_path);
    fs::path script = csv;
    script.replace_extension(".gp");
    emit(script.string(), out, [&](std::ostream& os) { write_gnuplot_script(os, config, csv.filename().string()); });
  }

  std::size_t failed = 0;
  for (const auto& r : rows) failed += (r.numeric_status != "ok") ? 1 : 0;
  if (failed) err << "sweep: " << failed << " of " << rows.size() << " points have numeric errors (see status)\n";
  return kExitOk;
}

int do_validate(const std::string& level, const std::string& report_path, std::ostream& out) {
  ValidationOptions options;
  options.level = level == "full" ? ValidationLevel::kFull : ValidationLevel::kQuick;
  const auto report = run_validation(options);
  if (report_path.empty()) {
    report.write(out);
  } else {
    emit(report_path, out, [&](std::ostream& os) { report.write(os); });
    out << (report.passed() ? "validation passed" : "validation FAILED") << " (report: " << report_path << ")\n";
  }
  return report.passed() ? kExitOk : kExitValidationFailed;
}

int do_qfunc(const QfuncRequest& request, const std::string& out_path, std::ostream& out) {
  std::ostringstream buffer;
  write_qfunc_csv(buffer, request);
  emit(out_path, out, [&](std::ostream& os) { os << buffer.str(); });
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Single-emitter laser steady states, moments and quasi-probabilities", "sel-lab"};
  app.require_subcommand(1);

  std::string config_path;
  std::string sweep_out;
  bool sweep_plot = false;
  auto* sweep = app.add_subcommand("sweep", "Parameter sweep over omega, written as CSV");
  sweep->add_option("--config", config_path, "Sweep configuration file")->required();
  sweep->add_option("--out", sweep_out, "CSV output path (default: stdout)");
  sweep->add_flag("--plot", sweep_plot, "Also write a gnuplot script next to the CSV");

  std::string level = "quick";
  std::string report_path;
  auto* validate = app.add_subcommand("validate", "Run the acceptance checks");
  validate->add_option("--level", level, "quick or full")->check(CLI::IsMember({"quick", "full"}));
  validate->add_option("--report", report_path, "Write the report here instead of stdout");

  double omega = 0.0;
  double eta = 0.0;
  double tau = 0.0;
  int limit = 0;
  std::string grid_text = "0:0.1:6";
  std::string qfunc_out;
  auto* qfunc = app.add_subcommand("qfunc", "Tabulate phase-averaged quasi-probabilities");
  auto* o_omega = qfunc->add_option("--omega", omega, "Dimensionless pump");
  auto* o_eta = qfunc->add_option("--eta", eta, "Dimensionless spontaneous decay");
  auto* o_tau = qfunc->add_option("--tau", tau, "Dimensionless cavity decay");
  auto* o_limit = qfunc->add_option("--limit", limit, "Closed-form limit case")->check(CLI::IsMember({1, 2}));
  qfunc->add_option("--grid", grid_text, "Intensity grid start:step:end");
  qfunc->add_option("--out", qfunc_out, "CSV output path (default: stdout)");
  o_omega->needs(o_eta, o_tau)->excludes(o_limit);
  o_eta->needs(o_omega, o_tau)->excludes(o_limit);
  o_tau->needs(o_omega, o_eta)->excludes(o_limit);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfigError;
  }

  try {
    if (*sweep) return do_sweep(config_path, sweep_out, sweep_plot, out, err);
    if (*validate) return do_validate(level, report_path, out);

    if (!*o_limit && !*o_omega) {
      err << "qfunc: give --omega/--eta/--tau or --limit\n";
      return kExitConfigError;
    }
    QfuncRequest request;
    if (*o_omega) request.params = QfuncRequest::Params{omega, eta, tau};
    request.limit_case = *o_limit ? limit : 0;
    request.grid = parse_grid(grid_text);
    return do_qfunc(request, qfunc_out, out);
  } catch (const Error& e) {
    err << "sel-lab: " << e.what() << '\n';
    switch (e.code()) {
      case ErrorCode::kConfigError:
      case ErrorCode::kDomainError:
      case ErrorCode::kDegenerateParams:
        return kExitConfigError;
      default:
        return kExitSolverError;
    }
  } catch (const std::exception& e) {
    err << "sel-lab: " << e.what() << '\n';
    return kExitSolverError;
  }
}

}  // namespace sel::app
