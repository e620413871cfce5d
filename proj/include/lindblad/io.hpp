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

#pragma once

#include "lindblad/model.hpp"

#include <optional>
#include <string>
#include <vector>

namespace lindblad {

/// Malformed configuration or spec JSON.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A system parsed from the spec JSON schema:
///   {"thermal": {"omega": [[..]], "gamma": [[..]], "n_T": x}}
///   {"general": {"omega": .., "gamma_plus": .., "gamma_minus": ..}}
///   {"two_mode": {"omega0": x, "omega": [x,y,z], "gamma0": x, "gamma": [x,y,z]}}
/// Complex entries are [re, im] pairs; bare numbers are accepted as real.
struct SpecInput {
  std::optional<SystemSpec> spec;          // absent for two_mode until n_T is chosen
  std::optional<TwoModeChannel> channel;   // present only for two_mode
  std::optional<double> n_T;               // thermal n_T when given in the file

  bool is_two_mode() const { return channel.has_value(); }
  SystemSpec materialize(double n_T_value) const;
};

SpecInput parse_spec_json(const std::string& text);
SpecInput load_spec_file(const std::string& path);

/// One value formatted with 15 significant digits.
std::string format_sig15(double x);

/// CSV with a header row, '\n' newlines, UTF-8, 15 significant digits.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

/// A curve for the SVG emitter. style: 0 solid, 1 dashed, 2 dot-dashed, then cycling.
struct PlotSeries {
  std::vector<double> x, y;
  std::string label;
  int style = 0;
};

struct PlotOptions {
  std::string title, x_label, y_label;
  bool log_y = false;  // semi-log presentation; nonpositive values are floored
};

/// Self-contained SVG (no external tooling); one polyline per series plus
/// axes, tick labels and a legend.
void emit_svg(const std::string& path, const std::vector<PlotSeries>& series,
              const PlotOptions& options);

}  // namespace lindblad
