// Experiment pipelines behind `aflaz repro` and `aflaz bounds`.
//
// Each experiment turns an ExperimentConfig into one CSV table, a list of
// assertion-style checks and, optionally, a static SVG line chart. Output
// depends only on the config.

#pragma once

#include "aflaz/bounds.hpp"
#include "aflaz/io.hpp"
#include "aflaz/oracle.hpp"

#include <optional>
#include <string>
#include <vector>

namespace aflaz {

struct ExperimentConfig {
    std::string experiment = "custom";  // table1, fig1a, fig1b, fig3, custom
    std::vector<long long> n_list;
    long long n_eval = 10'000'000;
    std::vector<long long> m_list;
    std::vector<long long> zx_grid;
    std::vector<long long> zy_grid;
    std::vector<long long> roots;
    double beta = 0.9;
    std::string d_policy = "auto";  // "auto" or a fixed integer D
    std::string out_dir = ".";
    bool svg = false;

    /// Built-in parameters of a named experiment.
    static ExperimentConfig defaults(const std::string& experiment);

    /// JSON object; absent keys keep the defaults of its "experiment".
    static ExperimentConfig from_json(const nlohmann::json& j);
    nlohmann::ordered_json to_json() const;

    /// Throws std::invalid_argument on parameters the experiment cannot use.
    void validate() const;
};

struct ExperimentResult {
    std::string experiment;
    io::Table table;
    std::vector<CheckOutcome> checks;
    std::string svg;

    bool passed() const;
};

ExperimentResult run_table1(const ExperimentConfig& config);
ExperimentResult run_fig1a(const ExperimentConfig& config);
ExperimentResult run_fig1b(const ExperimentConfig& config);
ExperimentResult run_fig3(const ExperimentConfig& config);
ExperimentResult run_custom(const ExperimentConfig& config);
ExperimentResult run_experiment(const ExperimentConfig& config);

/// Writes <out_dir>/<experiment>.csv, <experiment>_checks.json and, when
/// requested, <experiment>.svg. Returns the written paths.
std::vector<std::string> write_experiment(const ExperimentResult& result, const ExperimentConfig& config);

/// Selection for the `bounds` subcommand.
struct BoundQuery {
    BoundParams params;
    std::optional<WeightFamily> family;  // all families when absent
    std::optional<int> q;                // best q per family when absent
    std::optional<long long> d;          // exact D sweep when absent
};

/// Benchmark, closed forms and the weighted bounds picked by the query.
/// q sweeps run only for Z_x <= 1024 (and N <= 1024 for the 2N-1 regime).
std::vector<BoundReport> evaluate_bounds(const BoundQuery& query);

struct ChartSeries {
    std::string name;
    std::vector<double> y;
};

/// Minimal deterministic SVG line chart; non-finite points are skipped.
std::string svg_line_chart(const std::string& title, const std::string& x_label, const std::string& y_label,
                           const std::vector<double>& x, const std::vector<ChartSeries>& series, bool log_x = false);

}  // namespace aflaz
