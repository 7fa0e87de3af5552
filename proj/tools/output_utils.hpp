// Output helpers for the command-line tool: deterministic JSON with
// numbers at 17 significant digits, polyline SVG plots, and a reader
// for the diagnostics CSV files.
#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace cli_out {

inline std::string num17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// Streaming JSON object writer; keys are emitted in call order so the
// byte layout of a run is reproducible.
class JsonWriter {
public:
  JsonWriter() { os_ << "{"; }

  JsonWriter& field(const std::string& key, double v) {
    sep();
    os_ << '"' << key << "\":" << num17(v);
    return *this;
  }
  JsonWriter& field(const std::string& key, long long v) {
    sep();
    os_ << '"' << key << "\":" << v;
    return *this;
  }
  JsonWriter& field(const std::string& key, bool v) {
    sep();
    os_ << '"' << key << "\":" << (v ? "true" : "false");
    return *this;
  }
  JsonWriter& field(const std::string& key, const std::string& v) {
    sep();
    os_ << '"' << key << "\":\"" << v << '"';
    return *this;
  }
  JsonWriter& raw(const std::string& key, const std::string& json) {
    sep();
    os_ << '"' << key << "\":" << json;
    return *this;
  }
  JsonWriter& array(const std::string& key, const std::vector<double>& v) {
    sep();
    os_ << '"' << key << "\":[";
    for (std::size_t i = 0; i < v.size(); ++i) os_ << (i ? "," : "") << num17(v[i]);
    os_ << ']';
    return *this;
  }

  std::string str() const { return os_.str() + "}"; }

  void write(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << str() << "\n";
  }

private:
  void sep() {
    if (!first_) os_ << ",";
    first_ = false;
  }
  std::ostringstream os_;
  bool first_ = true;
};

struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  std::size_t col(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
      if (columns[i] == name) return i;
    throw std::runtime_error("csv column not found: " + name);
  }
};

inline CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  CsvTable t;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::stringstream ss(line);
    std::string cell;
    if (t.columns.empty()) {
      while (std::getline(ss, cell, ',')) t.columns.push_back(cell);
      continue;
    }
    std::vector<double> row;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    if (!row.empty()) t.rows.push_back(std::move(row));
  }
  return t;
}

// One data polyline in a fixed 640x480 viewport; an optional straight
// reference line (e.g. a fitted law) is drawn as a <line> element.
struct SvgLine {
  bool present = false;
  double x0 = 0.0, y0 = 0.0, x1 = 0.0, y1 = 0.0;
};

inline void write_svg_polyline(const std::string& path, const std::vector<double>& xs,
                               const std::vector<double>& ys, const std::string& title,
                               const SvgLine& ref = {}) {
  if (xs.size() != ys.size() || xs.empty()) throw std::runtime_error("svg: bad data");
  double xmin = xs[0], xmax = xs[0], ymin = ys[0], ymax = ys[0];
  for (std::size_t i = 0; i < xs.size(); ++i) {
    xmin = std::min(xmin, xs[i]);
    xmax = std::max(xmax, xs[i]);
    ymin = std::min(ymin, ys[i]);
    ymax = std::max(ymax, ys[i]);
  }
  if (ref.present) {
    xmin = std::min({xmin, ref.x0, ref.x1});
    xmax = std::max({xmax, ref.x0, ref.x1});
    ymin = std::min({ymin, ref.y0, ref.y1});
    ymax = std::max({ymax, ref.y0, ref.y1});
  }
  const double W = 640.0, H = 480.0, pad = 40.0;
  const double dx = (xmax > xmin) ? xmax - xmin : 1.0;
  const double dy = (ymax > ymin) ? ymax - ymin : 1.0;
  auto X = [&](double x) { return pad + (x - xmin) / dx * (W - 2 * pad); };
  auto Y = [&](double y) { return H - pad - (y - ymin) / dy * (H - 2 * pad); };

  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  char buf[64];
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"480\" "
         "viewBox=\"0 0 640 480\">\n";
  out << "  <title>" << title << "</title>\n";
  out << "  <rect x=\"0\" y=\"0\" width=\"640\" height=\"480\" fill=\"white\"/>\n";
  if (ref.present) {
    std::snprintf(buf, sizeof buf, "%.3f", X(ref.x0));
    out << "  <line x1=\"" << buf;
    std::snprintf(buf, sizeof buf, "%.3f", Y(ref.y0));
    out << "\" y1=\"" << buf;
    std::snprintf(buf, sizeof buf, "%.3f", X(ref.x1));
    out << "\" x2=\"" << buf;
    std::snprintf(buf, sizeof buf, "%.3f", Y(ref.y1));
    out << "\" y2=\"" << buf << "\" stroke=\"red\" stroke-dasharray=\"6,4\"/>\n";
  }
  out << "  <polyline fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.3f,%.3f", X(xs[i]), Y(ys[i]));
    out << (i ? " " : "") << buf;
  }
  out << "\"/>\n</svg>\n";
}

}  // namespace cli_out
