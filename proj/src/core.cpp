#include "biatom/core.hpp"

#include <cmath>
#include <sstream>

namespace biatom {

namespace {

std::string fmt_num(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

void require(ValidationReport& report, bool condition, std::string field, std::string message) {
    if (!condition) report.errors.push_back({std::move(field), std::move(message)});
}

}  // namespace

AmplitudeInvariantViolation::AmplitudeInvariantViolation(double t, double abs_sq)
    : NumericalFailure("amplitude invariant 0 < |f|^2 <= 1 violated at t = " + fmt_num(t) +
                       ": |f|^2 = " + fmt_num(abs_sq)),
      t_(t),
      abs_sq_(abs_sq) {}

double SystemParams::delta() const {
    if (const auto* small = std::get_if<SmallCavity>(&regime)) return small->delta;
    throw InvalidInput("delta is only defined for the small-cavity regime");
}

double TimeGrid::at(std::size_t i) const {
    if (n_points < 2) return t_start;
    if (i + 1 >= n_points) return t_end;
    const double step = (t_end - t_start) / static_cast<double>(n_points - 1);
    return t_start + step * static_cast<double>(i);
}

std::vector<double> TimeGrid::samples() const {
    std::vector<double> ts(n_points);
    for (std::size_t i = 0; i < n_points; ++i) ts[i] = at(i);
    return ts;
}

namespace {

std::string summary(const ValidationReport& report) {
    std::string out;
    for (const auto& v : report.errors) {
        if (!out.empty()) out += "; ";
        out += v.field + ": " + v.message;
    }
    return out;
}

}  // namespace

std::string ValidationReport::describe() const {
    std::ostringstream os;
    for (const auto& v : errors) os << "error: " << v.field << ": " << v.message << '\n';
    for (const auto& v : warnings) os << "warning: " << v.field << ": " << v.message << '\n';
    return os.str();
}

ValidationError::ValidationError(ValidationReport report)
    : InvalidInput(summary(report)), report_(std::move(report)) {}

double kappa(const SystemParams& params) {
    const double k2 = params.omega_bar * params.omega_bar - params.g * params.g;
    if (!(params.omega_bar > 0.0) || !(params.g >= 0.0) || !(k2 > 0.0)) {
        throw InvalidInput("kappa^2 = omega_bar^2 - g^2 must be positive (omega_bar = " +
                           fmt_num(params.omega_bar) + ", g = " + fmt_num(params.g) + ")");
    }
    return std::sqrt(k2);
}

void validate_into(const SystemParams& params, const ValidationOptions& options,
                   ValidationReport& report) {
    require(report, std::isfinite(params.omega_bar) && params.omega_bar > 0.0, "omega_bar",
            "omega_bar must be > 0");
    require(report, std::isfinite(params.g) && params.g > 0.0, "g", "g must be > 0");
    if (params.omega_bar > 0.0 && params.g > 0.0) {
        require(report, params.omega_bar > params.g, "g",
                "kappa^2 = omega_bar^2 - g^2 must be > 0 (need g < omega_bar = " +
                    fmt_num(params.omega_bar) + ")");
    }
    if (const auto* small = std::get_if<SmallCavity>(&params.regime)) {
        require(report, std::isfinite(small->delta) && small->delta > 0.0, "delta",
                "delta must be > 0");
        if (small->delta > options.delta_ceiling) {
            Violation v{"delta", "delta exceeds small-cavity validity (" + fmt_num(small->delta) +
                                     " > " + fmt_num(options.delta_ceiling) + ")"};
            if (options.allow_large_delta) {
                report.warnings.push_back(std::move(v));
            } else {
                report.errors.push_back(std::move(v));
            }
        }
    }
}

void validate_into(const StateSpec& state, ValidationReport& report) {
    require(report, state.xi >= 0.0 && state.xi <= 1.0, "xi", "xi out of [0,1]");
    require(report, std::isfinite(state.phi), "phi", "phi must be finite");
}

void validate_into(const Tolerances& tolerances, ValidationReport& report) {
    require(report, tolerances.quad_tol > 0.0 && std::isfinite(tolerances.quad_tol), "quad_tol",
            "quad_tol must be > 0");
    require(report, tolerances.series_tol > 0.0 && std::isfinite(tolerances.series_tol),
            "series_tol", "series_tol must be > 0");
    require(report, tolerances.eig_tol > 0.0 && std::isfinite(tolerances.eig_tol), "eig_tol",
            "eig_tol must be > 0");
}

void validate_into(const TimeGrid& grid, ValidationReport& report) {
    require(report, std::isfinite(grid.t_start) && grid.t_start >= 0.0, "t_start",
            "t_start must be >= 0");
    require(report, std::isfinite(grid.t_end) && grid.t_end > grid.t_start, "t_end",
            "t_end must be > t_start");
    require(report, grid.n_points >= 2, "n_points", "n_points must be >= 2");
}

ValidationReport validate(const SimulationConfig& config) {
    ValidationReport report;
    validate_into(config.system, config.options, report);
    validate_into(config.state, report);
    validate_into(config.tolerances, report);
    validate_into(config.grid, report);
    return report;
}

const SimulationConfig& checked(const SimulationConfig& config) {
    auto report = validate(config);
    if (!report.ok()) throw ValidationError(std::move(report));
    return config;
}

}  // namespace biatom
