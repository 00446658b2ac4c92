#pragma once

#include <optional>
#include <ostream>
#include <vector>

#include "sel/liouvillian.hpp"

namespace sel::app {

struct QfuncRequest {
  struct Params {
    double omega, eta, tau;
  };
  std::optional<Params> params;  // exactly one of params / limit_case
  int limit_case = 0;            // 1 or 2
  std::vector<double> grid;      // intensities I >= 0
  lindblad::SteadyStateOptions solver;
};

/// Tabulates the phase-averaged quasi-probabilities on the grid.
///   params:  I, Q, D, rho_sigma, relation_residual, pair1_residual, pair2_residual, ode5_residual
///   limit 1: I, Q, Q_closed_form, limit_ode_residual
///   limit 2: I, Q, Q_series, Q_from_P, limit_ode_residual
/// Solver errors propagate; DomainError for an invalid request.
void write_qfunc_csv(std::ostream& out, const QfuncRequest& request);

}  // namespace sel::app
