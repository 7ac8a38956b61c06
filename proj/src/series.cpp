#include "biatom/series.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "biatom/amplitude.hpp"
#include "biatom/config_io.hpp"
#include "biatom/measures.hpp"

namespace biatom {

namespace {

constexpr double kRowTol = 1e-12;

std::vector<double> split_numbers(const std::string& line, std::size_t line_no) {
    std::vector<double> values;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(cell, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != cell.size() || cell.empty())
            throw InvalidInput("line " + std::to_string(line_no) + ": not a number: '" + cell + "'");
        values.push_back(v);
    }
    return values;
}

}  // namespace

TimeSeries evolve(const SimulationConfig& config) {
    checked(config);
    TimeSeries series;
    series.header = to_json(config);
    const auto times = config.grid.samples();
    series.rows.reserve(times.size());
    for (double t : times) {
        const Amplitude f = f_amplitude(t, config.system, config.tolerances);
        const ReducedDensity rho = reduced_density(config.state, f);
        const Measures m = measures(rho);
        series.rows.push_back({t, f.re(), f.im(), f.abs_sq(), m.impurity, m.concurrence, m.negativity});
    }
    return series;
}

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.14e", v);
    return buf;
}

void write_csv(std::ostream& out, const TimeSeries& series) {
    out << "# " << series.header.dump() << '\n' << kSeriesColumns << '\n';
    for (const auto& r : series.rows) {
        out << format_number(r.t) << ',' << format_number(r.re_f) << ',' << format_number(r.im_f) << ','
            << format_number(r.abs_f_sq) << ',' << format_number(r.impurity) << ','
            << format_number(r.concurrence) << ',' << format_number(r.negativity) << '\n';
    }
}

TimeSeries read_csv(std::istream& in) {
    TimeSeries series;
    std::string line;
    if (!std::getline(in, line) || line.rfind("# ", 0) != 0) throw InvalidInput("missing '#' configuration header");
    try {
        series.header = nlohmann::json::parse(line.substr(2));
    } catch (const nlohmann::json::parse_error& e) {
        throw InvalidInput(std::string("configuration header is not JSON: ") + e.what());
    }
    if (!std::getline(in, line) || line != kSeriesColumns) throw InvalidInput("unexpected column header");
    std::size_t line_no = 2;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto v = split_numbers(line, line_no);
        if (v.size() != 7) throw InvalidInput("line " + std::to_string(line_no) + ": expected 7 columns");
        series.rows.push_back({v[0], v[1], v[2], v[3], v[4], v[5], v[6]});
    }
    return series;
}

std::vector<std::string> check_series(const TimeSeries& series) {
    std::vector<std::string> issues;
    StateSpec state;
    try {
        const RunConfig cfg = apply_json(RunConfig{}, series.header);
        state = cfg.simulation.state;
    } catch (const InvalidInput& e) {
        issues.push_back(std::string("header: ") + e.what());
        return issues;
    }
    if (series.rows.empty()) issues.push_back("series has no rows");

    auto report = [&](std::size_t i, const std::string& what) {
        issues.push_back("row " + std::to_string(i) + ": " + what);
    };
    for (std::size_t i = 0; i < series.rows.size(); ++i) {
        const auto& r = series.rows[i];
        if (i > 0 && !(r.t > series.rows[i - 1].t)) report(i, "t not strictly increasing");
        const double f2 = r.re_f * r.re_f + r.im_f * r.im_f;
        if (std::abs(f2 - r.abs_f_sq) > kRowTol) report(i, "abs_f_sq differs from re_f^2 + im_f^2");
        if (!(r.abs_f_sq > 0.0) || r.abs_f_sq > 1.0 + kAbsSqSlack) report(i, "abs_f_sq outside (0, 1]");
        if (r.abs_f_sq > 1.0 + kAbsSqSlack || f2 > 1.0 + kAbsSqSlack) continue;

        const Measures m = measures(reduced_density(state, Amplitude{{r.re_f, r.im_f}}));
        if (std::abs(m.impurity - r.impurity) > kRowTol) report(i, "impurity inconsistent with f");
        if (std::abs(m.concurrence - r.concurrence) > kRowTol) report(i, "concurrence inconsistent with f");
        if (std::abs(m.negativity - r.negativity) > kRowTol) report(i, "negativity inconsistent with f");
        if (r.impurity < -kRowTol || r.impurity > 0.5 + kRowTol) report(i, "impurity outside [0, 1/2]");
        if (r.negativity < -kRowTol) report(i, "negativity negative");
        if (r.negativity > r.concurrence + kRowTol) report(i, "negativity exceeds concurrence");
        if (r.concurrence > 1.0 + kRowTol) report(i, "concurrence exceeds 1");
    }
    return issues;
}

}  // namespace biatom
