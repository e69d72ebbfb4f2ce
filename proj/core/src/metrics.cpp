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

#include "hjbcf/metrics.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <sstream>

#include "hjbcf/errors.hpp"

namespace hjbcf {

namespace {

double trapezoid(const std::vector<double>& t, const std::vector<double>& y) {
    double sum = 0.0;
    for (std::size_t k = 0; k + 1 < t.size(); ++k) {
        sum += 0.5 * (t[k + 1] - t[k]) * (y[k] + y[k + 1]);
    }
    return sum;
}

// Composite Simpson on a uniform grid; an odd trailing interval falls back to the trapezoid.
double simpson(const std::vector<double>& t, const std::vector<double>& y) {
    const std::size_t intervals = t.size() - 1;
    const std::size_t even = intervals - intervals % 2;
    double sum = 0.0;
    for (std::size_t k = 0; k + 2 <= even; k += 2) {
        const double h = 0.5 * (t[k + 2] - t[k]);
        sum += h / 3.0 * (y[k] + 4.0 * y[k + 1] + y[k + 2]);
    }
    if (even < intervals) {
        sum += 0.5 * (t[intervals] - t[even]) * (y[even] + y[intervals]);
    }
    return sum;
}

std::string fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
    return buf;
}

int example_rank(const std::string& example) {
    if (example == "I") {
        return 1;
    }
    if (example == "II") {
        return 2;
    }
    if (example == "III") {
        return 3;
    }
    return 4;
}

} // namespace

double integrate(const std::vector<double>& times, const std::vector<double>& values,
                 Quadrature rule) {
    if (times.size() != values.size()) {
        throw UsageError("integrate: times and values differ in length");
    }
    if (times.size() < 2) {
        return 0.0;
    }
    return rule == Quadrature::Trapezoid ? trapezoid(times, values) : simpson(times, values);
}

double itse(const Trajectory& traj, Quadrature rule) {
    if (traj.empty()) {
        throw UsageError("itse: trajectory is empty");
    }
    std::vector<double> integrand(traj.size());
    for (std::size_t k = 0; k < traj.size(); ++k) {
        integrand[k] = traj.times[k] * traj.errors[k].squaredNorm();
    }
    return integrate(traj.times, integrand, rule);
}

double itse(const Trajectory& traj, const ReferenceTrajectory& ref, Quadrature rule) {
    if (traj.empty()) {
        throw UsageError("itse: trajectory is empty");
    }
    std::vector<double> integrand(traj.size());
    for (std::size_t k = 0; k < traj.size(); ++k) {
        const double t = traj.times[k];
        integrand[k] = t * (traj.states[k] - ref.x_d(t)).squaredNorm();
    }
    return integrate(traj.times, integrand, rule);
}

std::vector<Eigen::VectorXd> control_rate(const Trajectory& traj) {
    const std::size_t n = traj.size();
    std::vector<Eigen::VectorXd> rate(n);
    if (n < 2) {
        for (auto& r : rate) {
            r = Eigen::VectorXd::Zero(traj.controls.empty() ? 0 : traj.controls.front().size());
        }
        return rate;
    }
    rate[0] = (traj.controls[1] - traj.controls[0]) / (traj.times[1] - traj.times[0]);
    for (std::size_t k = 1; k + 1 < n; ++k) {
        rate[k] = (traj.controls[k + 1] - traj.controls[k - 1]) / (traj.times[k + 1] - traj.times[k - 1]);
    }
    rate[n - 1] = (traj.controls[n - 1] - traj.controls[n - 2]) / (traj.times[n - 1] - traj.times[n - 2]);
    return rate;
}

double cumulative_cost(const Trajectory& traj, Quadrature rule) {
    if (traj.size() < 2) {
        throw UsageError("cumulative_cost: need at least two samples");
    }
    const std::vector<Eigen::VectorXd> rate = control_rate(traj);
    std::vector<double> integrand(traj.size());
    for (std::size_t k = 0; k < traj.size(); ++k) {
        integrand[k] = traj.errors[k].squaredNorm() + traj.controls[k].squaredNorm() +
                       rate[k].squaredNorm();
    }
    return integrate(traj.times, integrand, rule);
}

std::optional<double> convergence_time(const Trajectory& traj, double threshold) {
    if (traj.empty()) {
        throw UsageError("convergence_time: trajectory is empty");
    }
    if (traj.blew_up()) {
        return std::nullopt;
    }
    std::size_t k = traj.size();
    while (k > 0 && traj.errors[k - 1].norm() < threshold) {
        --k;
    }
    if (k == traj.size()) {
        return std::nullopt;
    }
    return traj.times[k];
}

double wall_clock(const std::function<void()>& run) {
    const auto start = std::chrono::steady_clock::now();
    run();
    const auto stop = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(stop - start).count();
}

double median_wall_clock(const std::function<void()>& run, int repeats) {
    if (repeats < 1) {
        throw UsageError("median_wall_clock: repeats must be positive");
    }
    std::vector<double> samples;
    samples.reserve(static_cast<std::size_t>(repeats));
    for (int i = 0; i < repeats; ++i) {
        samples.push_back(wall_clock(run));
    }
    std::sort(samples.begin(), samples.end());
    const std::size_t mid = samples.size() / 2;
    return samples.size() % 2 == 1 ? samples[mid] : 0.5 * (samples[mid - 1] + samples[mid]);
}

std::string to_string(RunStatus status) {
    switch (status) {
    case RunStatus::Converged:
        return "converged";
    case RunStatus::NotConverged:
        return "not_converged";
    case RunStatus::Diverged:
        return "diverged";
    }
    return "unknown";
}

RunStatus parse_run_status(const std::string& text) {
    if (text == "converged") {
        return RunStatus::Converged;
    }
    if (text == "not_converged") {
        return RunStatus::NotConverged;
    }
    if (text == "diverged") {
        return RunStatus::Diverged;
    }
    throw UsageError("unknown run status '" + text + "'");
}

RunStatus classify(const Trajectory& traj, double threshold) {
    if (traj.empty()) {
        throw UsageError("classify: trajectory is empty");
    }
    if (traj.blew_up()) {
        return RunStatus::Diverged;
    }
    if (convergence_time(traj, threshold)) {
        return RunStatus::Converged;
    }
    if (traj.errors.back().norm() > traj.errors.front().norm()) {
        return RunStatus::Diverged;
    }
    return RunStatus::NotConverged;
}

MetricsReport evaluate_trajectory(const Trajectory& traj, double threshold) {
    MetricsReport r;
    r.status = classify(traj, threshold);
    r.convergence_time_s = convergence_time(traj, threshold);
    r.itse = itse(traj);
    r.cumulative_cost = traj.size() >= 2 ? cumulative_cost(traj) : 0.0;
    r.dt = traj.dt;
    r.horizon = traj.horizon;
    return r;
}

ComparisonTable comparison_table(std::vector<MetricsReport> reports, std::string title) {
    if (reports.empty()) {
        throw UsageError("comparison_table: at least one report is required");
    }
    std::stable_sort(reports.begin(), reports.end(), [](const MetricsReport& a, const MetricsReport& b) {
        const int ra = example_rank(a.example);
        const int rb = example_rank(b.example);
        if (ra != rb) {
            return ra < rb;
        }
        return a.case_label < b.case_label;
    });
    return {std::move(title), std::move(reports)};
}

std::string ComparisonTable::render_text() const {
    const bool with_case = std::any_of(rows.begin(), rows.end(),
                                       [](const MetricsReport& r) { return !r.case_label.empty(); });
    std::vector<std::string> header;
    if (with_case) {
        header.push_back("Case");
    }
    header.insert(header.end(), {"Method", "ITSE", "Cumulative Cost", "Convergence Time (s)",
                                 "Computation Time (s)"});

    std::vector<std::vector<std::string>> cells;
    for (const MetricsReport& r : rows) {
        std::vector<std::string> row;
        if (with_case) {
            row.push_back(r.case_label);
        }
        row.push_back(r.method);
        const bool diverged = r.status == RunStatus::Diverged;
        row.push_back(diverged ? "N/C" : fixed(r.itse, 3));
        row.push_back(diverged ? "N/C" : fixed(r.cumulative_cost, 3));
        row.push_back(r.convergence_time_s && !diverged ? fixed(*r.convergence_time_s, 3) : "N/C");
        row.push_back(diverged ? "N/C" : fixed(r.wall_clock_s, 4));
        cells.push_back(std::move(row));
    }

    std::vector<std::size_t> width(header.size());
    for (std::size_t c = 0; c < header.size(); ++c) {
        width[c] = header[c].size();
        for (const auto& row : cells) {
            width[c] = std::max(width[c], row[c].size());
        }
    }
    auto rule = [&] {
        std::string s = "+";
        for (std::size_t w : width) {
            s += std::string(w + 2, '-') + "+";
        }
        return s + "\n";
    };
    auto line = [&](const std::vector<std::string>& row) {
        std::string s = "|";
        for (std::size_t c = 0; c < row.size(); ++c) {
            s += " " + row[c] + std::string(width[c] - row[c].size(), ' ') + " |";
        }
        return s + "\n";
    };

    std::ostringstream os;
    if (!title.empty()) {
        os << title << "\n";
    }
    os << rule() << line(header) << rule();
    for (const auto& row : cells) {
        os << line(row);
    }
    os << rule();
    if (std::any_of(rows.begin(), rows.end(), [](const MetricsReport& r) {
            return r.status != RunStatus::Converged;
        })) {
        os << "N/C: Not Converged\n";
    }
    return os.str();
}

} // namespace hjbcf
