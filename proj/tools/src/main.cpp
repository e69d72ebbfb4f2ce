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

#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "commands.hpp"
#include "hjbcf/errors.hpp"

using namespace hjbcf;
using namespace hjbcf::cli;

namespace {

// Flags override keys from --config; both feed scenario_from_keys so validation is shared.
struct ScenarioFlags {
    std::string config;
    std::map<std::string, std::string> keys;

    void add_to(CLI::App* cmd, bool with_outputs) {
        cmd->add_option("--config", config, "Flat key = value scenario file");
        add(cmd, "--example", "example", "Built-in example: I, II or III");
        add(cmd, "--case", "case", "Example II parameter case: 1 or 2");
        add(cmd, "--method", "method", "proposed or sola");
        add(cmd, "--x0", "x0", "Initial state, comma separated (use --x0=-1,2 for a leading minus)");
        add(cmd, "--q0", "Q0", "State weight: scalar (times I) or rows 'a,b;c,d'");
        add(cmd, "--r", "R", "Augmented input weight: scalar (times I) or rows");
        add(cmd, "--gamma", "gamma", "Penalty weight gamma");
        add(cmd, "--deadzone-eps", "deadzone_eps", "Deadzone radius on |P^T x|");
        add(cmd, "--dt", "dt", "Integration step [s]");
        add(cmd, "--horizon", "horizon", "Simulation horizon T [s]");
        if (with_outputs) {
            add(cmd, "--reference", "reference", "Tracking reference: none, sinusoid, feasible-sinusoid");
            add(cmd, "--ref-amplitude", "ref_amplitude", "Reference amplitude");
            add(cmd, "--ref-frequency", "ref_frequency", "Reference angular frequency [rad/s]");
            add(cmd, "--trajectory", "trajectory", "Trajectory CSV output path");
            add(cmd, "--metrics", "metrics", "Metrics output path");
            add(cmd, "--plot", "plot", "Optional SVG plot output path");
        }
    }

    ScenarioConfig resolve() const {
        std::map<std::string, std::string> merged;
        if (!config.empty()) {
            std::ifstream in(config);
            if (!in) {
                throw UsageError("cannot read config file '" + config + "'");
            }
            merged = read_key_values(in);
        }
        for (const auto& [k, v] : flag_values) {
            merged[k] = v;
        }
        return scenario_from_keys(merged);
    }

private:
    std::map<std::string, std::string> flag_values;

    void add(CLI::App* cmd, const std::string& flag, const std::string& key, const std::string& help) {
        cmd->add_option_function<std::string>(
            flag, [this, key](const std::string& v) { flag_values[key] = v; }, help);
    }
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Closed-form HJB optimal control: simulation, benchmarks and gamma checks"};
    app.require_subcommand(1);

    ScenarioFlags run_flags;
    int run_repeats = 5;
    CLI::App* run = app.add_subcommand("run", "Simulate one scenario; writes trajectory CSV and metrics");
    run_flags.add_to(run, true);
    run->add_option("--timing-repeats", run_repeats, "Timed repetitions for the wall-clock median")
        ->check(CLI::NonNegativeNumber);

    BenchOptions bench_opts;
    bool bench_all = false;
    std::vector<std::string> bench_examples;
    std::string bench_method;
    CLI::App* bench = app.add_subcommand("bench", "Reproduce the comparison tables with default settings");
    bench->add_flag("--all", bench_all, "All three examples (default)");
    bench->add_option("--example", bench_examples, "Example to include (repeatable)");
    bench->add_option("--method", bench_method, "Only this method: proposed or sola");
    bench->add_option("--json", bench_opts.json_path, "Write the tables as JSON");
    bench->add_option("--metrics-dir", bench_opts.metrics_dir, "Write one metrics file per row");
    bench->add_option("--timing-repeats", bench_opts.timing_repeats, "Timed repetitions per row")
        ->check(CLI::NonNegativeNumber);

    ScenarioFlags gamma_flags;
    std::vector<std::string> box_axes;
    int grid = 51;
    CLI::App* verify = app.add_subcommand("verify-gamma", "Check Q(x) >= 0 on a state grid");
    gamma_flags.add_to(verify, false);
    verify->add_option("--box", box_axes, "Per-axis min,max (repeat per axis, or once for all axes)");
    verify->add_option("--grid", grid, "Grid points per axis");

    std::vector<std::string> table_files;
    std::string table_title;
    CLI::App* table = app.add_subcommand("table", "Assemble a comparison table from metrics files");
    table->add_option("files", table_files, "Metrics files")->required();
    table->add_option("--title", table_title, "Table title");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*run) {
            return cmd_run(run_flags.resolve(), std::cout, std::cerr, run_repeats);
        }
        if (*bench) {
            if (bench_all && !bench_examples.empty()) {
                throw UsageError("use either --all or --example");
            }
            if (!bench_examples.empty()) {
                bench_opts.examples.clear();
                for (const auto& e : bench_examples) {
                    bench_opts.examples.push_back(parse_example_id(e));
                }
            }
            if (!bench_method.empty()) {
                bench_opts.method = parse_method(bench_method);
            }
            return cmd_bench(bench_opts, std::cout, std::cerr);
        }
        if (*verify) {
            std::vector<std::pair<double, double>> axes;
            for (const auto& a : box_axes) {
                axes.push_back(parse_interval(a));
            }
            return cmd_verify_gamma(gamma_flags.resolve(), axes, grid, std::cout, std::cerr);
        }
        if (*table) {
            return cmd_table(table_files, table_title, std::cout, std::cerr);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
