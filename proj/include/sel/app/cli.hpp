#pragma once

#include <ostream>

namespace sel::app {

enum ExitCode : int {
  kExitOk = 0,
  kExitValidationFailed = 1,
  kExitConfigError = 2,
  kExitSolverError = 3,
};

/// sel-lab sweep --config <path> [--out <csv>] [--plot]
/// sel-lab validate [--level quick|full] [--report <path>]
/// sel-lab qfunc (--omega <r> --eta <r> --tau <r> | --limit 1|2) [--grid <start:step:end>] [--out <csv>]
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sel::app
