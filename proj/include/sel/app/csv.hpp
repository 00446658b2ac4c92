#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace sel::app {

inline constexpr std::string_view kSweepSchema = "sel-lab-sweep/v1";
inline constexpr std::string_view kQfuncSchema = "sel-lab-qfunc/v1";

/// %.17g, which round-trips every double.
std::string format_real(double v);
std::string format_real(const std::optional<double>& v, std::string_view sentinel = "undefined");

/// Comma-separated, LF-terminated; the first line is "# schema: <schema>".
class CsvWriter {
 public:
  CsvWriter(std::ostream& out, std::string_view schema, std::vector<std::string> header);
  void row(const std::vector<std::string>& cells);
  const std::vector<std::string>& header() const noexcept { return header_; }

 private:
  std::ostream& out_;
  std::vector<std::string> header_;
};

}  // namespace sel::app
