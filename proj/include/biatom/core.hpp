#pragma once

// Parameter objects shared by every module. Units use c = 1 throughout:
// frequencies and the coupling g are inverse times, the cavity radius is a
// time, and the small-cavity parameter is delta = g R / pi.

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "biatom/errors.hpp"

namespace biatom {

inline constexpr double kPi = 3.14159265358979323846;

/// Slack on |f|^2 <= 1 before an amplitude is considered unphysical.
inline constexpr double kAbsSqSlack = 1e-8;

struct LargeCavity {};

struct SmallCavity {
    double delta = 0.1;
};

using CavityRegime = std::variant<LargeCavity, SmallCavity>;

struct SystemParams {
    double omega_bar = 1.5;  ///< renormalized center-of-mass frequency
    double g = 1.0;          ///< coupling strength
    CavityRegime regime = LargeCavity{};

    bool is_large() const { return std::holds_alternative<LargeCavity>(regime); }
    bool is_small() const { return std::holds_alternative<SmallCavity>(regime); }
    /// delta of a small cavity; throws InvalidInput for the large regime.
    double delta() const;
};

/// Initial superposition sqrt(xi)|1+,0-> + sqrt(1-xi) e^{i phi}|0+,1->.
struct StateSpec {
    double xi = 0.5;
    double phi = 0.0;
};

struct Tolerances {
    double quad_tol = 1e-10;
    double series_tol = 1e-10;
    double eig_tol = 1e-9;
};

struct TimeGrid {
    double t_start = 0.0;
    double t_end = 10.0;
    std::size_t n_points = 1001;

    /// Uniform sample i; the last sample is exactly t_end.
    double at(std::size_t i) const;
    std::vector<double> samples() const;
};

struct ValidationOptions {
    double delta_ceiling = 0.2;
    bool allow_large_delta = false;
};

struct SimulationConfig {
    SystemParams system;
    StateSpec state;
    TimeGrid grid;
    Tolerances tolerances;
    ValidationOptions options;
};

struct Violation {
    std::string field;
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> errors;
    std::vector<Violation> warnings;

    bool ok() const { return errors.empty(); }
    std::string describe() const;
};

class ValidationError : public InvalidInput {
public:
    explicit ValidationError(ValidationReport report);
    const ValidationReport& report() const noexcept { return report_; }

private:
    ValidationReport report_;
};

/// sqrt(omega_bar^2 - g^2); only the underdamped case is supported.
double kappa(const SystemParams& params);

// The validators are pure: they never modify their input, so validating an
// accepted configuration again yields the same (empty) error list.
void validate_into(const SystemParams& params, const ValidationOptions& options,
                   ValidationReport& report);
void validate_into(const StateSpec& state, ValidationReport& report);
void validate_into(const Tolerances& tolerances, ValidationReport& report);
void validate_into(const TimeGrid& grid, ValidationReport& report);

ValidationReport validate(const SimulationConfig& config);

/// Returns config unchanged, or throws ValidationError listing every violation.
const SimulationConfig& checked(const SimulationConfig& config);

}  // namespace biatom
