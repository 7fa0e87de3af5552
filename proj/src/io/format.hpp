#pragma once

#include <fstream>
#include <string>
#include <vector>

namespace skyrme::io {

// Shortest fixed-precision form that survives a text round trip.
std::string fmt17(double x);

// Minimal CSV writer: one comment line carrying the schema version,
// then a header row, then data rows at 17 significant digits.
class CsvWriter {
public:
  CsvWriter(const std::string& path, const std::vector<std::string>& columns,
            int schema_version = 1);
  void row(const std::vector<double>& values);
  bool good() const { return out_.good(); }

private:
  std::ofstream out_;
  std::size_t ncol_;
};

}  // namespace skyrme::io
