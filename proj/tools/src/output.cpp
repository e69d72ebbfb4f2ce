/*
 Copyright 2026 The hjbcf Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/

#include "output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>

#include "hjbcf/errors.hpp"
#include "scenario.hpp"

namespace hjbcf::cli {
namespace {

constexpr const char* kNotConverged = "N/C";

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double parse_metric(const std::map<std::string, std::string>& kv, const std::string& key) {
    const auto it = kv.find(key);
    if (it == kv.end()) {
        throw UsageError("metrics file is missing '" + key + "'");
    }
    if (it->second == kNotConverged) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    return parse_vector(it->second)(0);
}

} // namespace

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
    if (traj.empty()) {
        throw UsageError("write_trajectory_csv: trajectory is empty");
    }
    const auto m = traj.states.front().size();
    const auto n = traj.controls.front().size();
    out << "t";
    for (Eigen::Index i = 1; i <= m; ++i) {
        out << ",x" << i;
    }
    for (Eigen::Index i = 1; i <= n; ++i) {
        out << ",tau" << i;
    }
    out << ",V,stage_cost\n";
    for (std::size_t k = 0; k < traj.size(); ++k) {
        out << num(traj.times[k]);
        for (Eigen::Index i = 0; i < m; ++i) {
            out << ',' << num(traj.states[k](i));
        }
        for (Eigen::Index i = 0; i < n; ++i) {
            out << ',' << num(traj.controls[k](i));
        }
        out << ',' << num(0.5 * traj.errors[k].squaredNorm()) << ',' << num(traj.stage_costs[k]) << '\n';
    }
}

void write_metrics(std::ostream& out, const MetricsReport& r) {
    const bool diverged = r.status == RunStatus::Diverged;
    out << "example = " << r.example << '\n'
        << "case = " << r.case_label << '\n'
        << "method = " << r.method << '\n'
        << "status = " << to_string(r.status) << '\n'
        << "itse = " << (diverged ? kNotConverged : num(r.itse)) << '\n'
        << "cumulative_cost = " << (diverged ? kNotConverged : num(r.cumulative_cost)) << '\n'
        << "convergence_time_s = "
        << (r.convergence_time_s && !diverged ? num(*r.convergence_time_s) : kNotConverged) << '\n'
        << "wall_clock_s = " << num(r.wall_clock_s) << '\n'
        << "dt = " << num(r.dt) << '\n'
        << "horizon = " << num(r.horizon) << '\n';
}

MetricsReport read_metrics(std::istream& in) {
    const auto kv = read_key_values(in);
    auto text = [&kv](const std::string& key) {
        const auto it = kv.find(key);
        if (it == kv.end()) {
            throw UsageError("metrics file is missing '" + key + "'");
        }
        return it->second;
    };
    MetricsReport r;
    r.example = text("example");
    r.case_label = text("case");
    r.method = text("method");
    r.status = parse_run_status(text("status"));
    r.itse = parse_metric(kv, "itse");
    r.cumulative_cost = parse_metric(kv, "cumulative_cost");
    const double tc = parse_metric(kv, "convergence_time_s");
    if (!std::isnan(tc)) {
        r.convergence_time_s = tc;
    }
    r.wall_clock_s = parse_metric(kv, "wall_clock_s");
    r.dt = parse_metric(kv, "dt");
    r.horizon = parse_metric(kv, "horizon");
    return r;
}

void write_metrics_file(const std::string& path, const MetricsReport& report) {
    std::ofstream out(path);
    if (!out) {
        throw UsageError("cannot write '" + path + "'");
    }
    write_metrics(out, report);
}

MetricsReport read_metrics_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw UsageError("cannot read metrics file '" + path + "'");
    }
    return read_metrics(in);
}

void write_svg_plot(std::ostream& out, const Trajectory& traj) {
    if (traj.empty()) {
        throw UsageError("write_svg_plot: trajectory is empty");
    }
    constexpr double width = 800.0;
    constexpr double panel = 220.0;
    constexpr double margin = 50.0;
    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd"};

    const std::size_t stride = std::max<std::size_t>(1, traj.size() / 2000);
    const double t0 = traj.times.front();
    const double t1 = std::max(traj.times.back(), t0 + 1e-12);

    struct Panel {
        std::string title;
        std::vector<std::vector<double>> series;
    };
    std::vector<Panel> panels(3);
    panels[0].title = "states";
    panels[1].title = "control";
    panels[2].title = "V(t)";
    panels[0].series.resize(static_cast<std::size_t>(traj.states.front().size()));
    panels[1].series.resize(static_cast<std::size_t>(traj.controls.front().size()));
    panels[2].series.resize(1);
    std::vector<double> t;
    for (std::size_t k = 0; k < traj.size(); k += stride) {
        t.push_back(traj.times[k]);
        for (std::size_t i = 0; i < panels[0].series.size(); ++i) {
            panels[0].series[i].push_back(traj.states[k](static_cast<Eigen::Index>(i)));
        }
        for (std::size_t i = 0; i < panels[1].series.size(); ++i) {
            panels[1].series[i].push_back(traj.controls[k](static_cast<Eigen::Index>(i)));
        }
        panels[2].series[0].push_back(0.5 * traj.errors[k].squaredNorm());
    }

    const double height = 3.0 * (panel + margin) + margin;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (std::size_t p = 0; p < panels.size(); ++p) {
        const double top = margin + static_cast<double>(p) * (panel + margin);
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        for (const auto& s : panels[p].series) {
            for (double v : s) {
                if (std::isfinite(v)) {
                    lo = std::min(lo, v);
                    hi = std::max(hi, v);
                }
            }
        }
        if (!(hi > lo)) {
            lo -= 1.0;
            hi += 1.0;
        }
        const double plot_w = width - 2.0 * margin;
        out << "<text x=\"" << margin << "\" y=\"" << top - 8 << "\">" << panels[p].title << " [" << num(lo)
            << ", " << num(hi) << "]</text>\n"
            << "<rect x=\"" << margin << "\" y=\"" << top << "\" width=\"" << plot_w << "\" height=\"" << panel
            << "\" fill=\"none\" stroke=\"#888\"/>\n";
        for (std::size_t s = 0; s < panels[p].series.size(); ++s) {
            out << "<polyline fill=\"none\" stroke-width=\"1.5\" stroke=\"" << colors[s % 5] << "\" points=\"";
            for (std::size_t k = 0; k < t.size(); ++k) {
                const double v = panels[p].series[s][k];
                if (!std::isfinite(v)) {
                    continue;
                }
                const double x = margin + (t[k] - t0) / (t1 - t0) * plot_w;
                const double y = top + panel - (v - lo) / (hi - lo) * panel;
                out << x << ',' << y << ' ';
            }
            out << "\"/>\n";
        }
    }
    out << "<text x=\"" << margin << "\" y=\"" << height - 15 << "\">t [s], " << num(t0) << " to " << num(t1)
        << "</text>\n</svg>\n";
}

nlohmann::json to_json(const MetricsReport& r) {
    const bool diverged = r.status == RunStatus::Diverged;
    nlohmann::json j;
    j["example"] = r.example;
    j["case"] = r.case_label;
    j["method"] = r.method;
    j["status"] = to_string(r.status);
    j["itse"] = diverged ? nlohmann::json(nullptr) : nlohmann::json(r.itse);
    j["cumulative_cost"] = diverged ? nlohmann::json(nullptr) : nlohmann::json(r.cumulative_cost);
    j["convergence_time_s"] = r.convergence_time_s && !diverged ? nlohmann::json(*r.convergence_time_s)
                                                                 : nlohmann::json(nullptr);
    j["wall_clock_s"] = r.wall_clock_s;
    j["dt"] = r.dt;
    j["horizon"] = r.horizon;
    return j;
}

nlohmann::json to_json(const ComparisonTable& table) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : table.rows) {
        rows.push_back(to_json(r));
    }
    return {{"title", table.title}, {"rows", rows}};
}

} // namespace hjbcf::cli
