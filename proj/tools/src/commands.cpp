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

#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "hjbcf/errors.hpp"
#include "output.hpp"

namespace hjbcf::cli {
namespace {

std::string short_num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

std::string vector_text(const Eigen::VectorXd& v) {
    std::string s = "[";
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        s += (i ? ", " : "") + short_num(v(i));
    }
    return s + "]";
}

std::string settings_line(double dt, double horizon) {
    return "dt = " + short_num(dt) + " s, T = " + short_num(horizon) + " s, RK4";
}

std::string metrics_file_name(const ScenarioConfig& cfg) {
    std::string name = "example_" + cfg.example_label();
    if (cfg.example_case != 0) {
        name += "_case" + std::to_string(cfg.example_case);
    }
    return name + "_" + to_string(cfg.method) + ".metrics";
}

} // namespace

int cmd_run(const ScenarioConfig& cfg, std::ostream& out, std::ostream& err, int timing_repeats) {
    ScenarioResult result;
    try {
        cfg.validate();
        result = run_scenario(cfg, timing_repeats);
    } catch (const GammaAdmissibilityError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInadmissibleGamma;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        std::ofstream csv(cfg.trajectory_path);
        if (!csv) {
            throw UsageError("cannot write '" + cfg.trajectory_path + "'");
        }
        write_trajectory_csv(csv, result.trajectory);
        write_metrics_file(cfg.metrics_path, result.report);
        if (!cfg.plot_path.empty()) {
            std::ofstream svg(cfg.plot_path);
            if (!svg) {
                throw UsageError("cannot write '" + cfg.plot_path + "'");
            }
            write_svg_plot(svg, result.trajectory);
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    out << "Example " << cfg.example_label() << (cfg.case_label().empty() ? "" : ", " + cfg.case_label())
        << ", " << result.report.method << " (" << settings_line(cfg.dt, cfg.horizon) << ")\n"
        << comparison_table({result.report}).render_text();
    if (result.trajectory.blew_up()) {
        out << "blow-up at t = " << short_num(result.trajectory.blowup_time) << ": "
            << result.trajectory.blowup_reason << "\n";
    }
    return result.report.status == RunStatus::Converged ? kExitOk : kExitNotConverged;
}

std::vector<ComparisonTable> bench_tables(const BenchOptions& opts, std::ostream& err) {
    std::vector<ComparisonTable> tables;
    for (const ExampleId example : opts.examples) {
        std::vector<MetricsReport> rows;
        const std::vector<int> cases = example == ExampleId::II ? std::vector<int>{1, 2} : std::vector<int>{0};
        double dt = 0.0;
        double horizon = 0.0;
        for (const int c : cases) {
            for (const Method method : {Method::Sola, Method::Proposed}) {
                if (opts.method && *opts.method != method) {
                    continue;
                }
                ScenarioConfig cfg = ScenarioConfig::defaults(example, c);
                cfg.method = method;
                dt = cfg.dt;
                horizon = cfg.horizon;
                MetricsReport row;
                try {
                    row = run_scenario(cfg, opts.timing_repeats).report;
                } catch (const Error& e) {
                    // Keep the row, marked as failed, so the rest of the bench still runs.
                    err << "bench: Example " << cfg.example_label() << " " << cfg.case_label() << " "
                        << cfg.method_label() << " failed: " << e.what() << "\n";
                    row.example = cfg.example_label();
                    row.case_label = cfg.case_label();
                    row.method = cfg.method_label() + " (failed)";
                    row.status = RunStatus::Diverged;
                    row.dt = cfg.dt;
                    row.horizon = cfg.horizon;
                }
                if (!opts.metrics_dir.empty()) {
                    write_metrics_file((std::filesystem::path(opts.metrics_dir) / metrics_file_name(cfg)).string(),
                                       row);
                }
                rows.push_back(std::move(row));
            }
        }
        tables.push_back(comparison_table(std::move(rows), "Example " + to_string(example) + " (" +
                                                               settings_line(dt, horizon) + ")"));
    }
    return tables;
}

int cmd_bench(const BenchOptions& opts, std::ostream& out, std::ostream& err) {
    std::vector<ComparisonTable> tables;
    try {
        if (opts.examples.empty()) {
            throw UsageError("bench: no examples selected");
        }
        if (!opts.metrics_dir.empty()) {
            std::filesystem::create_directories(opts.metrics_dir);
        }
        tables = bench_tables(opts, err);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    for (std::size_t i = 0; i < tables.size(); ++i) {
        out << (i ? "\n" : "") << tables[i].render_text();
    }
    if (!opts.json_path.empty()) {
        nlohmann::json doc = nlohmann::json::array();
        for (const auto& t : tables) {
            doc.push_back(to_json(t));
        }
        std::ofstream json(opts.json_path);
        if (!json) {
            err << "error: cannot write '" << opts.json_path << "'\n";
            return kExitUsage;
        }
        json << doc.dump(2) << "\n";
    }
    return kExitOk;
}

std::pair<double, double> parse_interval(const std::string& text) {
    const Eigen::VectorXd v = parse_vector(text);
    if (v.size() != 2) {
        throw UsageError("box axis '" + text + "' must be min,max");
    }
    if (!(v(0) < v(1))) {
        throw UsageError("box axis '" + text + "' needs min < max");
    }
    return {v(0), v(1)};
}

Box make_box(const std::vector<std::pair<double, double>>& axes, int state_dim) {
    if (axes.empty()) {
        return Box::symmetric(state_dim, 5.0);
    }
    if (axes.size() != 1 && axes.size() != static_cast<std::size_t>(state_dim)) {
        throw UsageError("box has " + std::to_string(axes.size()) + " axes, model state has " +
                         std::to_string(state_dim));
    }
    Box box{Eigen::VectorXd(state_dim), Eigen::VectorXd(state_dim)};
    for (int i = 0; i < state_dim; ++i) {
        const auto& [lo, hi] = axes[axes.size() == 1 ? 0 : static_cast<std::size_t>(i)];
        box.lower(i) = lo;
        box.upper(i) = hi;
    }
    return box;
}

int cmd_verify_gamma(const ScenarioConfig& cfg, const std::vector<std::pair<double, double>>& box_axes,
                     int points_per_axis, std::ostream& out, std::ostream& err) {
    GammaReport report;
    Box box;
    try {
        const DynamicsModel model = cfg.model();
        cfg.cost().validate(model.state_dim(), model.input_dim());
        box = make_box(box_axes, model.state_dim());
        report = verify_gamma_over_grid(model, cfg.cost(), box, points_per_axis);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    out << "Example " << cfg.example_label() << (cfg.case_label().empty() ? "" : ", " + cfg.case_label())
        << ", gamma = " << short_num(cfg.gamma) << ", box " << vector_text(box.lower) << " to "
        << vector_text(box.upper) << ", " << points_per_axis << " points/axis\n"
        << (report.admissible ? "admissible" : "inadmissible") << ": worst Q(x) = " << short_num(report.worst_margin)
        << " at x = " << vector_text(report.worst_x) << " (" << report.points_checked << " points)\n";
    return report.admissible ? kExitOk : kExitInadmissibleGamma;
}

int cmd_table(const std::vector<std::string>& metrics_paths, const std::string& title, std::ostream& out,
              std::ostream& err) {
    try {
        std::vector<MetricsReport> rows;
        for (const auto& path : metrics_paths) {
            rows.push_back(read_metrics_file(path));
        }
        out << comparison_table(std::move(rows), title).render_text();
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitOk;
}

} // namespace hjbcf::cli
