#include "sel/app/csv.hpp"

#include <cstdio>

#include "sel/error.hpp"

namespace sel::app {

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_real(const std::optional<double>& v, std::string_view sentinel) {
  return v ? format_real(*v) : std::string(sentinel);
}

CsvWriter::CsvWriter(std::ostream& out, std::string_view schema, std::vector<std::string> header)
    : out_(out), header_(std::move(header)) {
  out_ << "# schema: " << schema << '\n';
  row(header_);
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  if (cells.size() != header_.size()) {
    throw DimensionMismatch("csv row has " + std::to_string(cells.size()) + " cells, header has " +
                            std::to_string(header_.size()));
  }
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out_ << ',';
    out_ << cells[i];
  }
  out_ << '\n';
}

}  // namespace sel::app
