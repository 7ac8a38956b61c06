#include "biatom/commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>

#include "biatom/finite_mode.hpp"

namespace biatom {

namespace {

void print_warnings(const SimulationConfig& config, std::ostream& err) {
    for (const auto& w : validate(config).warnings) err << "warning: " << w.field << ": " << w.message << '\n';
}

void write_file(const std::filesystem::path& path, const TimeSeries& series) {
    std::ofstream out(path);
    if (!out) throw InvalidInput("cannot write " + path.string());
    write_csv(out, series);
}

}  // namespace

int guarded(std::ostream& err, const std::function<void()>& body) {
    try {
        body();
        return kExitOk;
    } catch (const InvalidInput& e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalidInput;
    } catch (const NumericalFailure& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kExitNumericalFailure;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
}

SweepAxis parse_sweep_axis(const std::string& name) {
    if (name == "xi") return SweepAxis::xi;
    if (name == "delta") return SweepAxis::delta;
    if (name == "g") return SweepAxis::g;
    throw InvalidInput("sweep axis must be one of xi, delta, g; got '" + name + "'");
}

const char* axis_name(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::xi:
            return "xi";
        case SweepAxis::delta:
            return "delta";
        case SweepAxis::g:
            return "g";
    }
    return "?";
}

SweepSummary summarize(double value, const TimeSeries& series) {
    if (series.rows.empty()) throw InvalidInput("cannot summarize an empty series");
    SweepSummary s;
    s.value = value;
    s.max_impurity = -std::numeric_limits<double>::infinity();
    s.min_concurrence = s.min_negativity = s.min_abs_f_sq = std::numeric_limits<double>::infinity();
    for (const auto& r : series.rows) {
        s.max_impurity = std::max(s.max_impurity, r.impurity);
        s.min_concurrence = std::min(s.min_concurrence, r.concurrence);
        s.min_negativity = std::min(s.min_negativity, r.negativity);
        s.min_abs_f_sq = std::min(s.min_abs_f_sq, r.abs_f_sq);
    }
    s.final_abs_f_sq = series.rows.back().abs_f_sq;
    return s;
}

SweepResult sweep(const SimulationConfig& base, SweepAxis axis, const std::vector<double>& values) {
    if (values.empty()) throw InvalidInput("sweep needs at least one value");
    if (axis == SweepAxis::delta && !base.system.is_small())
        throw InvalidInput("a delta sweep requires the small-cavity regime");

    std::vector<SimulationConfig> configs;
    for (double v : values) {
        SimulationConfig c = base;
        switch (axis) {
            case SweepAxis::xi:
                c.state.xi = v;
                break;
            case SweepAxis::delta:
                c.system.regime = SmallCavity{v};
                break;
            case SweepAxis::g:
                c.system.g = v;
                break;
        }
        checked(c);
        configs.push_back(c);
    }

    SweepResult result;
    result.axis = axis;
    result.values = values;
    result.header = to_json(base);
    result.header["sweep"] = {{"axis", axis_name(axis)}, {"values", values}};
    for (std::size_t i = 0; i < configs.size(); ++i) {
        result.series.push_back(evolve(configs[i]));
        result.summaries.push_back(summarize(values[i], result.series.back()));
    }
    return result;
}

void write_sweep_csv(std::ostream& out, const SweepResult& result) {
    out << "# " << result.header.dump() << '\n' << "value," << kSeriesColumns << '\n';
    for (std::size_t i = 0; i < result.series.size(); ++i) {
        const std::string value = format_number(result.values[i]);
        for (const auto& r : result.series[i].rows) {
            out << value << ',' << format_number(r.t) << ',' << format_number(r.re_f) << ','
                << format_number(r.im_f) << ',' << format_number(r.abs_f_sq) << ',' << format_number(r.impurity)
                << ',' << format_number(r.concurrence) << ',' << format_number(r.negativity) << '\n';
        }
    }
}

void write_sweep_summary(std::ostream& out, const SweepResult& result) {
    out << "# " << result.header.dump() << '\n'
        << "value,max_impurity,min_concurrence,min_negativity,final_abs_f_sq,min_abs_f_sq\n";
    for (const auto& s : result.summaries) {
        out << format_number(s.value) << ',' << format_number(s.max_impurity) << ','
            << format_number(s.min_concurrence) << ',' << format_number(s.min_negativity) << ','
            << format_number(s.final_abs_f_sq) << ',' << format_number(s.min_abs_f_sq) << '\n';
    }
}

nlohmann::json oracle_report(const RunConfig& config) {
    const CalibrationRequest req = calibration_request(config);
    const CalibrationReport cal = calibrate_gamma(req);

    FiniteModeParams p;
    p.n_modes = req.n_modes;
    p.g = req.g;
    p.radius = req.radius;
    p.gamma = cal.gamma;
    p.omega0 = cal.omega0;
    const NormalModeSystem nm = normal_modes(build_quadratic_form(p), config.simulation.tolerances.eig_tol);

    double unitarity = 0.0;
    constexpr int kSamples = 25;
    for (int i = 0; i <= kSamples; ++i) {
        const double t = req.window_end * static_cast<double>(i) / kSamples;
        unitarity = std::max(unitarity, unitarity_deviation(t, nm));
    }

    nlohmann::json candidates = nlohmann::json::array();
    for (const auto& c : cal.candidates) {
        candidates.push_back(
            {{"gamma", c.gamma}, {"omega0", c.omega0}, {"fitted_rate", c.fitted_rate}, {"mismatch", c.mismatch}});
    }
    return {{"gamma", cal.gamma},
            {"omega0", cal.omega0},
            {"fitted_rate", cal.fitted_rate},
            {"mismatch", cal.mismatch},
            {"n_modes", cal.n_modes},
            {"radius", cal.radius},
            {"revival_time", cal.revival_time},
            {"g", req.g},
            {"omega_bar", req.omega_bar},
            {"window", {req.window_start, req.window_end}},
            {"unitarity_max_dev", unitarity},
            {"weight_sum_dev", std::abs(nm.weight_sum() - 1.0)},
            {"candidates", candidates}};
}

int run_evolve(const RunConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        print_warnings(checked(config.simulation), err);
        write_csv(out, evolve(config.simulation));
    });
}

int run_sweep(const RunConfig& config, const std::string& axis, const std::vector<double>& values,
              std::ostream& out, std::ostream* summary, std::ostream& err) {
    return guarded(err, [&] {
        const SweepResult result = sweep(config.simulation, parse_sweep_axis(axis), values);
        write_sweep_csv(out, result);
        if (summary) write_sweep_summary(*summary, result);
    });
}

int run_oracle(const RunConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] { out << oracle_report(config).dump(2) << '\n'; });
}

int run_check(std::istream& in, std::ostream& out, std::ostream& err) {
    int code = kExitOk;
    const int parsed = guarded(err, [&] {
        const auto issues = check_series(read_csv(in));
        for (const auto& issue : issues) out << issue << '\n';
        if (!issues.empty()) {
            err << issues.size() << " invariant violation(s)\n";
            code = kExitInvalidInput;
        } else {
            out << "ok\n";
        }
    });
    return parsed != kExitOk ? parsed : code;
}

int run_figures(const RunConfig& config, const std::string& dir, std::ostream& err) {
    return guarded(err, [&] {
        std::filesystem::create_directories(dir);
        SimulationConfig c;
        c.tolerances = config.simulation.tolerances;
        c.system.omega_bar = 1.5;
        c.system.g = 1.0;
        c.state.xi = 0.5;
        c.grid = {0.0, 10.0, 1001};
        c.system.regime = LargeCavity{};
        write_file(std::filesystem::path(dir) / "large_cavity.csv", evolve(c));
        c.system.regime = SmallCavity{0.1};
        write_file(std::filesystem::path(dir) / "small_cavity.csv", evolve(c));
    });
}

}  // namespace biatom
