#pragma once

// JSON form of SimulationConfig:
//
//   {"omega_bar": 1.5, "g": 1.0, "regime": "small", "delta": 0.1,
//    "xi": 0.5, "phi": 0.0, "t_start": 0, "t_end": 10, "n_points": 1001,
//    "tolerances": {"quad_tol": 1e-10, "series_tol": 1e-10, "eig_tol": 1e-9},
//    "allow_large_delta": false,
//    "oracle": {"n_modes": 1000, "radius": 15.7, "window_start": 1, "window_end": 6}}
//
// Every key is optional; missing keys keep their defaults. Unknown keys are
// rejected so that typos do not silently fall back to defaults.

#include <iosfwd>
#include <string>

#include <nlohmann/json.hpp>

#include "biatom/core.hpp"
#include "biatom/finite_mode.hpp"

namespace biatom {

struct OracleSettings {
    std::size_t n_modes = 1000;
    double radius = 5.0 * kPi;
    double window_start = 1.0;
    double window_end = 6.0;
};

struct RunConfig {
    SimulationConfig simulation;
    OracleSettings oracle;
};

/// Applies the keys present in `doc` on top of `base`. Throws InvalidInput on
/// unknown keys or wrongly typed values.
RunConfig apply_json(RunConfig base, const nlohmann::json& doc);

RunConfig parse_config(const std::string& text);
RunConfig load_config_file(const std::string& path);

nlohmann::json to_json(const SimulationConfig& config);
nlohmann::json to_json(const OracleSettings& oracle);

CalibrationRequest calibration_request(const RunConfig& config);

}  // namespace biatom
