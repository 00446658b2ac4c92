#include "sel/app/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "sel/error.hpp"

namespace sel::app {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

double parse_real(std::string_view s, std::string_view what) {
  s = trim(s);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw ConfigError("cannot read '" + std::string(s) + "' as a real number for " + std::string(what));
  }
  return v;
}

int parse_int(std::string_view s, std::string_view what) {
  s = trim(s);
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ConfigError("cannot read '" + std::string(s) + "' as an integer for " + std::string(what));
  }
  return v;
}

bool parse_bool(std::string_view s, std::string_view what) {
  s = trim(s);
  if (s == "true" || s == "yes" || s == "1") return true;
  if (s == "false" || s == "no" || s == "0") return false;
  throw ConfigError("cannot read '" + std::string(s) + "' as a boolean for " + std::string(what));
}

TauRule parse_tau_rule(std::string_view s) {
  s = trim(s);
  if (s == "equal") return {TauRule::Kind::kEqual, 0.0};
  if (s == "double") return {TauRule::Kind::kDouble, 0.0};
  constexpr std::string_view prefix = "fixed(";
  if (s.starts_with(prefix) && s.ends_with(")")) {
    const double v = parse_real(s.substr(prefix.size(), s.size() - prefix.size() - 1), "tau_rule");
    if (!(v > 0.0)) throw ConfigError("fixed tau must be > 0");
    return {TauRule::Kind::kFixed, v};
  }
  throw ConfigError("tau_rule must be equal, double or fixed(<value>), got '" + std::string(s) + "'");
}

Column parse_column(std::string_view s) {
  if (s == "mean_n") return Column::kMeanN;
  if (s == "mandel_q") return Column::kMandelQ;
  if (s == "sigma_z") return Column::kSigmaZ;
  if (s == "residuals") return Column::kResiduals;
  throw ConfigError("unknown output column '" + std::string(s) + "'");
}

const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> keys{
      {"params", {"omega_grid", "tau_rule", "eta"}},
      {"solver", {"n_max_initial", "tail_tol"}},
      {"output", {"columns", "plot"}}};
  return keys;
}

}  // namespace

double TauRule::tau_for(double omega) const {
  switch (kind) {
    case Kind::kEqual: return omega;
    case Kind::kDouble: return 2.0 * omega;
    case Kind::kFixed: return fixed_value;
  }
  return omega;
}

std::string TauRule::describe() const {
  switch (kind) {
    case Kind::kEqual: return "equal";
    case Kind::kDouble: return "double";
    case Kind::kFixed: {
      std::ostringstream os;
      os << "fixed(" << fixed_value << ")";
      return os.str();
    }
  }
  return "?";
}

bool SweepConfig::wants(Column c) const {
  return std::find(columns.begin(), columns.end(), c) != columns.end();
}

std::vector<double> parse_grid(std::string_view text) {
  std::string_view s = trim(text);
  if (s.starts_with("[") && s.ends_with("]")) s = trim(s.substr(1, s.size() - 2));
  if (s.empty()) throw ConfigError("empty grid");

  std::vector<double> grid;
  if (s.find(':') != std::string_view::npos) {
    const auto parts = split(s, ':');
    if (parts.size() != 3) throw ConfigError("range grid must be start:step:end");
    const double start = parse_real(parts[0], "grid start");
    const double step = parse_real(parts[1], "grid step");
    const double end = parse_real(parts[2], "grid end");
    if (!(step > 0.0)) throw ConfigError("grid step must be > 0");
    if (end < start) throw ConfigError("grid end precedes start");
    const auto count = static_cast<long>(std::floor((end - start) / step * (1.0 + 1e-9) + 1e-9));
    if (count > 1'000'000) throw ConfigError("grid has too many points");
    for (long i = 0; i <= count; ++i) grid.push_back(start + static_cast<double>(i) * step);
  } else {
    for (const auto part : split(s, ',')) grid.push_back(parse_real(part, "grid value"));
  }
  return grid;
}

SweepConfig parse_config(std::string_view text) {
  SweepConfig cfg;
  std::string section;
  std::set<std::string> seen;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto c = line.find_first_of("#;"); c != std::string_view::npos) line = line.substr(0, c);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(line_no);

    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(where + ": malformed section header");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (!known_keys().contains(section)) throw ConfigError(where + ": unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(where + ": expected key = value");
    if (section.empty()) throw ConfigError(where + ": key outside any section");
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    if (!known_keys().at(section).contains(key)) {
      throw ConfigError(where + ": unknown key '" + key + "' in [" + section + "]");
    }
    if (!seen.insert(section + "." + key).second) throw ConfigError(where + ": duplicate key '" + key + "'");
    if (value.empty()) throw ConfigError(where + ": empty value for '" + key + "'");

    if (key == "omega_grid") {
      cfg.omega_grid = parse_grid(value);
    } else if (key == "tau_rule") {
      cfg.tau_rule = parse_tau_rule(value);
    } else if (key == "eta") {
      cfg.eta = parse_real(value, "eta");
    } else if (key == "n_max_initial") {
      cfg.solver.n_max_initial = parse_int(value, "n_max_initial");
    } else if (key == "tail_tol") {
      cfg.solver.tail_tol = parse_real(value, "tail_tol");
    } else if (key == "columns") {
      cfg.columns.clear();
      for (const auto name : split(value, ',')) {
        const Column c = parse_column(name);
        if (std::find(cfg.columns.begin(), cfg.columns.end(), c) == cfg.columns.end()) cfg.columns.push_back(c);
      }
    } else if (key == "plot") {
      cfg.plot = parse_bool(value, "plot");
    }
  }

  for (const char* required : {"params.omega_grid", "params.tau_rule", "params.eta"}) {
    if (!seen.contains(required)) throw ConfigError(std::string("missing required key ") + required);
  }
  for (std::size_t i = 0; i < cfg.omega_grid.size(); ++i) {
    if (cfg.omega_grid[i] < 0.0) throw ConfigError("omega_grid values must be >= 0");
    if (i > 0 && !(cfg.omega_grid[i] > cfg.omega_grid[i - 1])) {
      throw ConfigError("omega_grid must be strictly increasing");
    }
  }
  if (cfg.eta < 0.0) throw ConfigError("eta must be >= 0");
  if (cfg.solver.n_max_initial < 1) throw ConfigError("n_max_initial must be >= 1");
  if (!(cfg.solver.tail_tol > 0.0 && cfg.solver.tail_tol < 1.0)) throw ConfigError("tail_tol must lie in (0, 1)");
  if (cfg.solver.n_max_cap < cfg.solver.n_max_initial) cfg.solver.n_max_cap = cfg.solver.n_max_initial;
  return cfg;
}

SweepConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

}  // namespace sel::app
