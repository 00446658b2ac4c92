#include "sel/app/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "sel/app/csv.hpp"
#include "sel/error.hpp"
#include "sel/quasiprob/husimi.hpp"
#include "sel/quasiprob/residuals.hpp"

namespace sel::app {

namespace {

std::string status_of(const std::exception& e) {
  if (const auto* err = dynamic_cast<const Error*>(&e)) return std::string(to_string(err->code()));
  return "error";
}

}  // namespace

SweepRow evaluate_point(double omega, double eta, double tau,
                        const lindblad::SteadyStateOptions& solver, bool with_residuals) {
  SweepRow row;
  row.omega = omega;
  row.eta = eta;
  row.tau = tau;

  try {
    row.analytic = moments::solve_moments(omega, eta, tau);
    if (row.analytic->out_of_regime) row.analytic_status = "out-of-regime";
  } catch (const DegenerateParams& e) {
    if (omega == 0.0) {
      row.analytic = moments::MomentSolution{};
      row.analytic_status = "zero-pump";
    } else {
      row.analytic_status = status_of(e);
    }
  } catch (const std::exception& e) {
    row.analytic_status = status_of(e);
  }

  try {
    const auto params = lindblad::LaserParams::from_dimensionless(omega, eta, tau);
    const auto result = lindblad::solve_steady_state(params, solver);
    row.numeric = lindblad::observables(result.rho);
    row.truncation_used = result.n_max_used;
    if (with_residuals) {
      const auto set = quasiprob::husimi_radial(result.rho);
      row.relation_residual = quasiprob::relation_residual(set, params).max_abs;
    }
  } catch (const std::exception& e) {
    row.numeric.reset();
    row.numeric_status = status_of(e);
  }
  return row;
}

std::vector<SweepRow> run_sweep(const SweepConfig& config, unsigned threads) {
  const std::size_t n = config.omega_grid.size();
  std::vector<SweepRow> rows(n);
  const bool residuals = config.wants(Column::kResiduals);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      const double omega = config.omega_grid[i];
      rows[i] = evaluate_point(omega, config.eta, config.tau_rule.tau_for(omega), config.solver, residuals);
    }
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
  std::vector<std::jthread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  return rows;
}

std::vector<std::string> sweep_header(const SweepConfig& config) {
  std::vector<std::string> h{"omega", "eta", "tau"};
  if (config.wants(Column::kMeanN)) {
    h.push_back("mean_n_analytic");
    h.push_back("mean_n_numeric");
  }
  if (config.wants(Column::kMandelQ)) {
    h.push_back("mandel_q_analytic");
    h.push_back("mandel_q_numeric");
  }
  if (config.wants(Column::kSigmaZ)) h.push_back("sigma_z_numeric");
  h.push_back("delta_det");
  h.push_back("truncation_used");
  if (config.wants(Column::kResiduals)) h.push_back("relation_residual");
  h.push_back("analytic_status");
  h.push_back("numeric_status");
  return h;
}

std::vector<std::string> sweep_cells(const SweepConfig& config, const SweepRow& row) {
  constexpr std::string_view kUndefined = "undefined";
  const auto& a = row.analytic;
  const auto& n = row.numeric;
  const bool regime_ok = a && !a->out_of_regime;
  auto analytic_cell = [&](std::optional<double> v) {
    if (a && a->out_of_regime) return std::string("out-of-regime");
    return format_real(regime_ok ? v : std::nullopt, kUndefined);
  };

  std::vector<std::string> c{format_real(row.omega), format_real(row.eta), format_real(row.tau)};
  if (config.wants(Column::kMeanN)) {
    c.push_back(analytic_cell(a ? std::optional(a->mean_n) : std::nullopt));
    c.push_back(format_real(n ? std::optional(n->mean_n) : std::nullopt, kUndefined));
  }
  if (config.wants(Column::kMandelQ)) {
    c.push_back(analytic_cell(a ? a->mandel_q : std::nullopt));
    c.push_back(format_real(n ? n->mandel_q : std::nullopt, kUndefined));
  }
  if (config.wants(Column::kSigmaZ)) {
    c.push_back(format_real(n ? std::optional(n->sigma_z_mean) : std::nullopt, kUndefined));
  }
  const bool have_det = a && row.analytic_status != "zero-pump";
  c.push_back(format_real(have_det ? std::optional(a->det_delta) : std::nullopt, kUndefined));
  c.push_back(std::to_string(row.truncation_used));
  if (config.wants(Column::kResiduals)) c.push_back(format_real(row.relation_residual, kUndefined));
  c.push_back(row.analytic_status);
  c.push_back(row.numeric_status);
  return c;
}

void write_sweep_csv(std::ostream& out, const SweepConfig& config, const std::vector<SweepRow>& rows) {
  CsvWriter csv(out, kSweepSchema, sweep_header(config));
  for (const auto& row : rows) csv.row(sweep_cells(config, row));
}

void write_gnuplot_script(std::ostream& out, const SweepConfig& config, const std::string& csv_name) {
  out << "# gnuplot script for " << csv_name << '\n'
      << "set datafile separator ','\n"
      << "set datafile missing 'undefined'\n"
      << "set key autotitle columnheader\n"
      << "set xlabel 'omega'\n"
      << "set title 'eta = " << format_real(config.eta) << ", tau rule " << config.tau_rule.describe() << "'\n";
  const bool mean = config.wants(Column::kMeanN);
  const bool mandel = config.wants(Column::kMandelQ);
  if (mean && mandel) out << "set multiplot layout 2,1\n";
  if (mean) {
    out << "set ylabel '<n>'\n"
        << "plot '" << csv_name << "' using 'omega':'mean_n_numeric' with points pt 7, \\\n"
        << "     '' using 'omega':'mean_n_analytic' with lines dt 2\n";
  }
  if (mandel) {
    out << "set ylabel 'Mandel Q'\n"
        << "plot '" << csv_name << "' using 'omega':'mandel_q_numeric' with points pt 7, \\\n"
        << "     '' using 'omega':'mandel_q_analytic' with lines dt 2\n";
  }
  if (mean && mandel) out << "unset multiplot\n";
  out << "pause mouse close\n";
}

}  // namespace sel::app
