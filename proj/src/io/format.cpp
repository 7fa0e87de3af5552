#include "io/format.hpp"

#include <cstdio>
#include <stdexcept>

namespace skyrme::io {

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& columns,
                     int schema_version)
    : out_(path), ncol_(columns.size()) {
  if (!out_) throw std::runtime_error("cannot open " + path);
  out_ << "# schema_version=" << schema_version << "\n";
  for (std::size_t i = 0; i < columns.size(); ++i)
    out_ << columns[i] << (i + 1 < columns.size() ? "," : "\n");
}

void CsvWriter::row(const std::vector<double>& values) {
  if (values.size() != ncol_) throw std::invalid_argument("csv row width mismatch");
  for (std::size_t i = 0; i < values.size(); ++i)
    out_ << fmt17(values[i]) << (i + 1 < values.size() ? "," : "\n");
}

}  // namespace skyrme::io
