#include "biatom/config_io.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace biatom {

namespace {

using nlohmann::json;

void reject_unknown(const json& doc, const std::set<std::string>& allowed, const std::string& where) {
    for (const auto& item : doc.items()) {
        if (!allowed.count(item.key())) throw InvalidInput("unknown configuration key '" + where + item.key() + "'");
    }
}

double number(const json& doc, const char* key, double fallback) {
    if (!doc.contains(key)) return fallback;
    const auto& v = doc.at(key);
    if (!v.is_number()) throw InvalidInput(std::string("configuration key '") + key + "' must be a number");
    return v.get<double>();
}

std::size_t count(const json& doc, const char* key, std::size_t fallback) {
    if (!doc.contains(key)) return fallback;
    const auto& v = doc.at(key);
    if (v.is_number_unsigned()) return v.get<std::size_t>();
    if (v.is_number_integer()) throw InvalidInput(std::string("'") + key + "' must be >= 0");
    if (v.is_number_float() && v.get<double>() >= 0.0 && v.get<double>() == std::floor(v.get<double>()))
        return static_cast<std::size_t>(v.get<double>());
    throw InvalidInput(std::string("configuration key '") + key + "' must be a non-negative integer");
}

}  // namespace

RunConfig apply_json(RunConfig base, const json& doc) {
    if (!doc.is_object()) throw InvalidInput("configuration must be a JSON object");
    reject_unknown(doc,
                   {"omega_bar", "g", "regime", "delta", "xi", "phi", "t_start", "t_end", "n_points",
                    "tolerances", "allow_large_delta", "delta_ceiling", "oracle"},
                   "");

    auto& sim = base.simulation;
    sim.system.omega_bar = number(doc, "omega_bar", sim.system.omega_bar);
    sim.system.g = number(doc, "g", sim.system.g);

    std::string regime = sim.system.is_small() ? "small" : "large";
    if (doc.contains("regime")) {
        if (!doc.at("regime").is_string()) throw InvalidInput("'regime' must be \"large\" or \"small\"");
        regime = doc.at("regime").get<std::string>();
    } else if (doc.contains("delta")) {
        regime = "small";
    }
    if (regime == "large") {
        if (doc.contains("delta")) throw InvalidInput("'delta' only applies to the small-cavity regime");
        sim.system.regime = LargeCavity{};
    } else if (regime == "small") {
        const double previous = sim.system.is_small() ? std::get<SmallCavity>(sim.system.regime).delta : 0.1;
        sim.system.regime = SmallCavity{number(doc, "delta", previous)};
    } else {
        throw InvalidInput("'regime' must be \"large\" or \"small\", got \"" + regime + "\"");
    }

    sim.state.xi = number(doc, "xi", sim.state.xi);
    sim.state.phi = number(doc, "phi", sim.state.phi);
    sim.grid.t_start = number(doc, "t_start", sim.grid.t_start);
    sim.grid.t_end = number(doc, "t_end", sim.grid.t_end);
    sim.grid.n_points = count(doc, "n_points", sim.grid.n_points);
    sim.options.delta_ceiling = number(doc, "delta_ceiling", sim.options.delta_ceiling);
    if (doc.contains("allow_large_delta")) {
        if (!doc.at("allow_large_delta").is_boolean()) throw InvalidInput("'allow_large_delta' must be a boolean");
        sim.options.allow_large_delta = doc.at("allow_large_delta").get<bool>();
    }

    if (doc.contains("tolerances")) {
        const auto& tol = doc.at("tolerances");
        if (!tol.is_object()) throw InvalidInput("'tolerances' must be an object");
        reject_unknown(tol, {"quad_tol", "series_tol", "eig_tol"}, "tolerances.");
        sim.tolerances.quad_tol = number(tol, "quad_tol", sim.tolerances.quad_tol);
        sim.tolerances.series_tol = number(tol, "series_tol", sim.tolerances.series_tol);
        sim.tolerances.eig_tol = number(tol, "eig_tol", sim.tolerances.eig_tol);
    }

    if (doc.contains("oracle")) {
        const auto& o = doc.at("oracle");
        if (!o.is_object()) throw InvalidInput("'oracle' must be an object");
        reject_unknown(o, {"n_modes", "radius", "window_start", "window_end"}, "oracle.");
        base.oracle.n_modes = count(o, "n_modes", base.oracle.n_modes);
        base.oracle.radius = number(o, "radius", base.oracle.radius);
        base.oracle.window_start = number(o, "window_start", base.oracle.window_start);
        base.oracle.window_end = number(o, "window_end", base.oracle.window_end);
    }
    return base;
}

RunConfig parse_config(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InvalidInput(std::string("malformed configuration JSON: ") + e.what());
    }
    return apply_json(RunConfig{}, doc);
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot read configuration file " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

json to_json(const SimulationConfig& config) {
    json doc;
    doc["omega_bar"] = config.system.omega_bar;
    doc["g"] = config.system.g;
    if (config.system.is_small()) {
        doc["regime"] = "small";
        doc["delta"] = config.system.delta();
    } else {
        doc["regime"] = "large";
    }
    doc["xi"] = config.state.xi;
    doc["phi"] = config.state.phi;
    doc["t_start"] = config.grid.t_start;
    doc["t_end"] = config.grid.t_end;
    doc["n_points"] = config.grid.n_points;
    doc["tolerances"] = {{"quad_tol", config.tolerances.quad_tol},
                         {"series_tol", config.tolerances.series_tol},
                         {"eig_tol", config.tolerances.eig_tol}};
    doc["allow_large_delta"] = config.options.allow_large_delta;
    doc["delta_ceiling"] = config.options.delta_ceiling;
    return doc;
}

json to_json(const OracleSettings& oracle) {
    return {{"n_modes", oracle.n_modes},
            {"radius", oracle.radius},
            {"window_start", oracle.window_start},
            {"window_end", oracle.window_end}};
}

CalibrationRequest calibration_request(const RunConfig& config) {
    CalibrationRequest req;
    req.n_modes = config.oracle.n_modes;
    req.radius = config.oracle.radius;
    req.window_start = config.oracle.window_start;
    req.window_end = config.oracle.window_end;
    req.g = config.simulation.system.g;
    req.omega_bar = config.simulation.system.omega_bar;
    return req;
}

}  // namespace biatom
