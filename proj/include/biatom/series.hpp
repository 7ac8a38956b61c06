#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "biatom/core.hpp"

namespace biatom {

struct SeriesRow {
    double t = 0.0;
    double re_f = 0.0;
    double im_f = 0.0;
    double abs_f_sq = 0.0;
    double impurity = 0.0;
    double concurrence = 0.0;
    double negativity = 0.0;
};

struct TimeSeries {
    nlohmann::json header;  ///< full configuration, including tolerances
    std::vector<SeriesRow> rows;
};

inline constexpr const char* kSeriesColumns = "t,re_f,im_f,abs_f_sq,impurity,concurrence,negativity";

/// Evaluates f and the three measures on every grid sample of a validated
/// configuration.
TimeSeries evolve(const SimulationConfig& config);

/// Formats v with 15 significant digits ("%.14e").
std::string format_number(double v);

void write_csv(std::ostream& out, const TimeSeries& series);
/// Inverse of write_csv. Throws InvalidInput on malformed content.
TimeSeries read_csv(std::istream& in);

/// Re-checks every row: strictly increasing t, |f|^2 = re^2 + im^2 within
/// (0, 1 + slack], D, C and N consistent with (xi, phi, f) from the header,
/// and 0 <= N <= C <= 1. Returns one message per failed check.
std::vector<std::string> check_series(const TimeSeries& series);

}  // namespace biatom
