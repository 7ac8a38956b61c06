#pragma once

// Subcommand bodies shared by the command-line tool and the tests. Each run_*
// function maps failures onto the process exit codes: 0 success, 2 invalid
// input, 3 numerical failure.

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "biatom/config_io.hpp"
#include "biatom/series.hpp"

namespace biatom {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitInvalidInput = 2;
inline constexpr int kExitNumericalFailure = 3;

/// Runs body, printing any exception to err and returning the exit code.
int guarded(std::ostream& err, const std::function<void()>& body);

enum class SweepAxis { xi, delta, g };

SweepAxis parse_sweep_axis(const std::string& name);
const char* axis_name(SweepAxis axis);

struct SweepSummary {
    double value = 0.0;
    double max_impurity = 0.0;
    double min_concurrence = 0.0;
    double min_negativity = 0.0;
    double final_abs_f_sq = 0.0;
    double min_abs_f_sq = 0.0;
};

struct SweepResult {
    SweepAxis axis = SweepAxis::xi;
    nlohmann::json header;
    std::vector<double> values;
    std::vector<TimeSeries> series;
    std::vector<SweepSummary> summaries;
};

/// Every value is validated before any series is computed.
SweepResult sweep(const SimulationConfig& base, SweepAxis axis, const std::vector<double>& values);
SweepSummary summarize(double value, const TimeSeries& series);

void write_sweep_csv(std::ostream& out, const SweepResult& result);
void write_sweep_summary(std::ostream& out, const SweepResult& result);

/// Calibrates the finite-mode oracle and checks unitarity of the calibrated
/// system on a grid over [0, window_end].
nlohmann::json oracle_report(const RunConfig& config);

int run_evolve(const RunConfig& config, std::ostream& out, std::ostream& err);
int run_sweep(const RunConfig& config, const std::string& axis, const std::vector<double>& values,
              std::ostream& out, std::ostream* summary, std::ostream& err);
int run_oracle(const RunConfig& config, std::ostream& out, std::ostream& err);
/// Validates a CSV produced by run_evolve; prints one line per issue.
int run_check(std::istream& in, std::ostream& out, std::ostream& err);
/// Writes fig1_large.csv and fig1_small.csv (the data behind all three
/// figures) into dir, keeping the tolerances of config.
int run_figures(const RunConfig& config, const std::string& dir, std::ostream& err);

}  // namespace biatom
