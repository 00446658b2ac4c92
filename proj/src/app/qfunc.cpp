#include "sel/app/qfunc.hpp"

#include <cmath>

#include "sel/app/csv.hpp"
#include "sel/error.hpp"
#include "sel/quasiprob/husimi.hpp"
#include "sel/quasiprob/limit_solutions.hpp"
#include "sel/quasiprob/residuals.hpp"

namespace sel::app {

namespace {

std::string cell(double v) { return std::isfinite(v) ? format_real(v) : std::string("undefined"); }

void write_params(std::ostream& out, const QfuncRequest::Params& p, const QfuncRequest& request) {
  const auto params = lindblad::LaserParams::from_dimensionless(p.omega, p.eta, p.tau);
  const auto result = lindblad::solve_steady_state(params, request.solver);
  const auto set = quasiprob::husimi_radial(result.rho);
  const auto relation = quasiprob::relation_residual(set, params);
  const auto pair = quasiprob::stationary_pair_residual(set, params);
  const auto ode5 = quasiprob::ode5_residual(set.q, quasiprob::ode5_coefficients(p.omega, p.eta, p.tau));

  CsvWriter csv(out, kQfuncSchema,
                {"I", "Q", "D", "rho_sigma", "relation_residual", "pair1_residual", "pair2_residual", "ode5_residual"});
  for (double i : request.grid) {
    csv.row({cell(i), cell(set.q(i)), cell(set.d(i)), cell(set.rho_sigma(i)), cell(relation.residual(i)),
             cell(pair[0].residual(i)), cell(pair[1].residual(i)), cell(ode5.residual(i))});
  }
}

void write_limit1(std::ostream& out, const QfuncRequest& request) {
  const auto q1 = quasiprob::vacuum_q();
  CsvWriter csv(out, kQfuncSchema, {"I", "Q", "Q_closed_form", "limit_ode_residual"});
  for (double i : request.grid) {
    csv.row({cell(i), cell(q1.value(i)), cell(std::exp(-i)), cell(quasiprob::limit_ode_value(1, q1, i))});
  }
}

void write_limit2(std::ostream& out, const QfuncRequest& request) {
  const auto q2 = quasiprob::limit2_q();
  const auto from_p = quasiprob::p_to_q_transform(quasiprob::C0Mode::kNormalize, 0.0, request.grid);
  CsvWriter csv(out, kQfuncSchema, {"I", "Q", "Q_series", "Q_from_P", "limit_ode_residual"});
  for (std::size_t k = 0; k < request.grid.size(); ++k) {
    const double i = request.grid[k];
    csv.row({cell(i), cell(q2.value(i)), cell((*q2.series)(i)), cell(from_p.q[k]),
             cell(quasiprob::limit_ode_value(2, q2, i))});
  }
}

}  // namespace

void write_qfunc_csv(std::ostream& out, const QfuncRequest& request) {
  if (request.grid.empty()) throw DomainError("qfunc grid is empty");
  for (double i : request.grid) {
    if (!(i >= 0.0) || !std::isfinite(i)) throw DomainError("qfunc grid values must be finite and >= 0");
  }
  if (request.params) {
    if (request.limit_case != 0) throw DomainError("give either parameters or a limit case, not both");
    write_params(out, *request.params, request);
  } else if (request.limit_case == 1) {
    write_limit1(out, request);
  } else if (request.limit_case == 2) {
    write_limit2(out, request);
  } else {
    throw DomainError("limit case must be 1 or 2");
  }
}

}  // namespace sel::app
