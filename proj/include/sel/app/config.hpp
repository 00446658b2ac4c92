#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "sel/liouvillian.hpp"

namespace sel::app {

struct TauRule {
  enum class Kind { kEqual, kDouble, kFixed };
  Kind kind = Kind::kEqual;
  double fixed_value = 0.0;

  double tau_for(double omega) const;
  std::string describe() const;
};

enum class Column { kMeanN, kMandelQ, kSigmaZ, kResiduals };

struct SweepConfig {
  std::vector<double> omega_grid;
  TauRule tau_rule;
  double eta = 0.0;
  lindblad::SteadyStateOptions solver;
  std::vector<Column> columns{Column::kMeanN, Column::kMandelQ, Column::kSigmaZ, Column::kResiduals};
  bool plot = false;

  bool wants(Column c) const;
};

/// Parses
///   [params]  omega_grid = 0.05:0.05:1.5 | 0.1, 0.2, ...   tau_rule = equal | double | fixed(0.3)
///             eta = 0.5
///   [solver]  n_max_initial = 40   tail_tol = 1e-10
///   [output]  columns = mean_n, mandel_q, sigma_z, residuals   plot = false
/// '#' and ';' start comments. Unknown sections or keys, duplicates, missing
/// required keys and malformed values raise ConfigError.
SweepConfig parse_config(std::string_view text);
SweepConfig load_config(const std::filesystem::path& path);

/// "start:step:end" inclusive of end (to a 1e-9 relative slack), or a comma list,
/// optionally in brackets.
std::vector<double> parse_grid(std::string_view text);

}  // namespace sel::app
