// Copyright 2026 The lindbladpp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "lindblad/io.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace lindblad {

using nlohmann::json;

namespace {

Complex parse_complex(const json& j, const std::string& where) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return Complex(j[0].get<double>(), j[1].get<double>());
  }
  throw ConfigError(where + ": complex entries must be numbers or [re, im] pairs");
}

CMatrix parse_matrix(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) throw ConfigError(where + ": expected a matrix (array of rows)");
  const size_t rows = j.size();
  const size_t cols = j[0].is_array() ? j[0].size() : 0;
  if (cols == 0) throw ConfigError(where + ": expected a matrix (array of rows)");
  CMatrix m(rows, cols);
  for (size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols) throw ConfigError(where + ": ragged matrix");
    for (size_t k = 0; k < cols; ++k) m(i, k) = parse_complex(j[i][k], where);
  }
  return m;
}

Eigen::Vector3d parse_vec3(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 3) throw ConfigError(where + ": expected [x, y, z]");
  Eigen::Vector3d v;
  for (int k = 0; k < 3; ++k) {
    if (!j[k].is_number()) throw ConfigError(where + ": expected real components");
    v(k) = j[k].get<double>();
  }
  return v;
}

}  // namespace

SystemSpec SpecInput::materialize(double n_T_value) const {
  if (channel) return assemble_two_mode(*channel, n_T_value);
  if (!spec) throw ConfigError("SpecInput: empty");
  return *spec;
}

SpecInput parse_spec_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("spec JSON parse error: ") + e.what());
  }
  SpecInput out;
  try {
    if (j.contains("thermal")) {
      const auto& t = j["thermal"];
      const double n_T = t.at("n_T").get<double>();
      out.spec = SystemSpec::thermal(parse_matrix(t.at("omega"), "thermal.omega"),
                                     parse_matrix(t.at("gamma"), "thermal.gamma"), n_T);
      out.n_T = n_T;
    } else if (j.contains("general")) {
      const auto& g = j["general"];
      out.spec = SystemSpec::general(parse_matrix(g.at("omega"), "general.omega"),
                                     parse_matrix(g.at("gamma_plus"), "general.gamma_plus"),
                                     parse_matrix(g.at("gamma_minus"), "general.gamma_minus"));
    } else if (j.contains("two_mode")) {
      const auto& t = j["two_mode"];
      out.channel = TwoModeChannel::cartesian(
          t.at("omega0").get<double>(), parse_vec3(t.at("omega"), "two_mode.omega"),
          t.at("gamma0").get<double>(), parse_vec3(t.at("gamma"), "two_mode.gamma"));
      if (t.contains("n_T")) out.n_T = t["n_T"].get<double>();
    } else {
      throw ConfigError("spec JSON must contain one of: thermal, general, two_mode");
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("spec JSON: ") + e.what());
  }
  return out;
}

SpecInput load_spec_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open spec file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_spec_json(buf.str());
}

std::string format_sig15(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_csv: cannot open " + path);
  for (size_t k = 0; k < header.size(); ++k) {
    out << header[k] << (k + 1 < header.size() ? "," : "");
  }
  out << "\n";
  for (const auto& row : rows) {
    for (size_t k = 0; k < row.size(); ++k) {
      out << format_sig15(row[k]) << (k + 1 < row.size() ? "," : "");
    }
    out << "\n";
  }
  if (!out) throw std::runtime_error("write_csv: write failed for " + path);
}

namespace {

struct Mapper {
  double lo, hi;     // data range
  double p0, p1;     // pixel range
  bool log_scale;
  double map(double v) const {
    double x = v;
    if (log_scale) x = std::log10(x);
    double a = lo, b = hi;
    if (b - a < 1e-300) b = a + 1.0;
    return p0 + (x - a) / (b - a) * (p1 - p0);
  }
};

std::string dash_for(int style) {
  switch (style % 3) {
    case 1: return " stroke-dasharray=\"8,5\"";
    case 2: return " stroke-dasharray=\"8,4,2,4\"";
    default: return "";
  }
}

const char* color_for(int k) {
  static const char* palette[] = {"#1f4e9c", "#c23b22", "#2a7e43", "#7a4fa3", "#b07d18"};
  return palette[k % 5];
}

}  // namespace

void emit_svg(const std::string& path, const std::vector<PlotSeries>& series,
              const PlotOptions& options) {
  if (series.empty()) throw std::runtime_error("emit_svg: no series");
  const int width = 840, height = 560;
  const double ml = 78, mr = 24, mt = 42, mb = 58;

  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  double ypos_min = 1e300;  // smallest positive value, for the log floor
  for (const auto& s : series) {
    for (size_t k = 0; k < s.x.size(); ++k) {
      xmin = std::min(xmin, s.x[k]);
      xmax = std::max(xmax, s.x[k]);
      ymin = std::min(ymin, s.y[k]);
      ymax = std::max(ymax, s.y[k]);
      if (s.y[k] > 0) ypos_min = std::min(ypos_min, s.y[k]);
    }
  }
  bool log_y = options.log_y && ypos_min < 1e300;
  double floor_y = 0;
  if (log_y) {
    floor_y = ypos_min;
    ymin = std::log10(ypos_min);
    ymax = std::log10(std::max(ymax, ypos_min));
    if (ymax - ymin < 1e-12) ymax = ymin + 1.0;
  } else if (ymax - ymin < 1e-300) {
    ymax = ymin + 1.0;
  }
  if (xmax - xmin < 1e-300) xmax = xmin + 1.0;

  const Mapper mx{xmin, xmax, ml, width - mr, false};
  const Mapper my{log_y ? ymin : ymin, log_y ? ymax : ymax, height - mb, mt, log_y};

  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("emit_svg: cannot open " + path);
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  // axes
  out << "<line x1=\"" << ml << "\" y1=\"" << height - mb << "\" x2=\"" << width - mr
      << "\" y2=\"" << height - mb << "\" stroke=\"black\"/>\n"
      << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\""
      << height - mb << "\" stroke=\"black\"/>\n";
  // ticks
  const int nticks = 6;
  for (int k = 0; k <= nticks; ++k) {
    const double fx = xmin + (xmax - xmin) * k / nticks;
    const double px = mx.map(fx);
    out << "<line x1=\"" << px << "\" y1=\"" << height - mb << "\" x2=\"" << px << "\" y2=\""
        << height - mb + 5 << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << px << "\" y=\"" << height - mb + 20
        << "\" font-size=\"12\" text-anchor=\"middle\">" << format_sig15(std::round(fx * 1e6) / 1e6)
        << "</text>\n";
    const double fy = (log_y ? ymin : ymin) + ((log_y ? ymax : ymax) - (log_y ? ymin : ymin)) * k / nticks;
    const double py = my.p0 + (fy - (log_y ? ymin : ymin)) / ((log_y ? ymax : ymax) - (log_y ? ymin : ymin) + 1e-300) * (my.p1 - my.p0);
    out << "<line x1=\"" << ml - 5 << "\" y1=\"" << py << "\" x2=\"" << ml << "\" y2=\"" << py
        << "\" stroke=\"black\"/>\n";
    std::ostringstream lab;
    if (log_y) {
      lab << "1e" << format_sig15(std::round(fy * 100) / 100);
    } else {
      lab << format_sig15(std::round(fy * 1e6) / 1e6);
    }
    out << "<text x=\"" << ml - 8 << "\" y=\"" << py + 4
        << "\" font-size=\"12\" text-anchor=\"end\">" << lab.str() << "</text>\n";
  }
  // labels and title
  out << "<text x=\"" << (ml + width - mr) / 2 << "\" y=\"" << height - 14
      << "\" font-size=\"14\" text-anchor=\"middle\">" << options.x_label << "</text>\n"
      << "<text x=\"18\" y=\"" << (mt + height - mb) / 2
      << "\" font-size=\"14\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
      << (mt + height - mb) / 2 << ")\">" << options.y_label << "</text>\n"
      << "<text x=\"" << width / 2 << "\" y=\"24\" font-size=\"16\" text-anchor=\"middle\">"
      << options.title << "</text>\n";
  // curves
  for (size_t si = 0; si < series.size(); ++si) {
    const auto& s = series[si];
    out << "<polyline fill=\"none\" stroke=\"" << color_for(static_cast<int>(si))
        << "\" stroke-width=\"1.6\"" << dash_for(s.style) << " points=\"";
    for (size_t k = 0; k < s.x.size(); ++k) {
      double y = s.y[k];
      if (log_y && y <= 0) y = floor_y;
      out << mx.map(s.x[k]) << "," << my.map(y) << " ";
    }
    out << "\"/>\n";
    // legend
    const double ly = mt + 18.0 * static_cast<double>(si);
    out << "<line x1=\"" << width - mr - 150 << "\" y1=\"" << ly << "\" x2=\""
        << width - mr - 118 << "\" y2=\"" << ly << "\" stroke=\"" << color_for(static_cast<int>(si))
        << "\" stroke-width=\"1.6\"" << dash_for(s.style) << "/>\n"
        << "<text x=\"" << width - mr - 112 << "\" y=\"" << ly + 4 << "\" font-size=\"12\">"
        << s.label << "</text>\n";
  }
  out << "</svg>\n";
  if (!out) throw std::runtime_error("emit_svg: write failed for " + path);
}

}  // namespace lindblad
