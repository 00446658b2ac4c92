#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "sel/app/config.hpp"
#include "sel/liouvillian.hpp"
#include "sel/moments.hpp"

namespace sel::app {

struct SweepRow {
  double omega = 0.0;
  double eta = 0.0;
  double tau = 0.0;

  std::optional<moments::MomentSolution> analytic;
  std::string analytic_status = "ok";  // ok | zero-pump | out-of-regime | <error code>

  std::optional<lindblad::ObservableSet> numeric;
  std::string numeric_status = "ok";  // ok | <error code>
  int truncation_used = 0;

  std::optional<double> relation_residual;
};

/// One parameter point. Never throws for solver failures; they land in the
/// status fields. When omega = 0 makes the moment system degenerate
/// (eta = 0 or tau = 0) the analytic moments are those of the unpumped laser:
/// no photons, status zero-pump.
SweepRow evaluate_point(double omega, double eta, double tau,
                        const lindblad::SteadyStateOptions& solver, bool with_residuals);

/// Rows in grid order. `threads` = 0 picks the hardware concurrency.
std::vector<SweepRow> run_sweep(const SweepConfig& config, unsigned threads = 0);

std::vector<std::string> sweep_header(const SweepConfig& config);
std::vector<std::string> sweep_cells(const SweepConfig& config, const SweepRow& row);
void write_sweep_csv(std::ostream& out, const SweepConfig& config, const std::vector<SweepRow>& rows);

/// gnuplot script plotting <n> and Mandel Q against omega from `csv_name`.
void write_gnuplot_script(std::ostream& out, const SweepConfig& config, const std::string& csv_name);

}  // namespace sel::app
