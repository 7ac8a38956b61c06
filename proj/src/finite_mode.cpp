#include "biatom/finite_mode.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

namespace biatom {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

std::string describe(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

// Eigenvalues of the arrowhead matrix [[alpha, z^T], [z, diag(d)]] (d strictly
// increasing) solve alpha - l = sum_k z_k^2 / (d_k - l). Each root is found
// in coordinates shifted to its nearest pole so that the gaps d_k - l keep
// full relative accuracy.
class SecularSolver {
public:
    SecularSolver(double alpha, std::vector<double> d, std::vector<double> z2)
        : alpha_(alpha), d_(std::move(d)), z2_(std::move(z2)), shifted_(d_.size()) {}

    struct Root {
        double lambda;
        double weight;  // squared first component of the unit eigenvector
    };

    std::vector<Root> solve() {
        const std::size_t n = d_.size();
        double zsum = 0.0, zmax = 0.0;
        for (double v : z2_) {
            zsum += std::sqrt(v);
            zmax = std::max(zmax, std::sqrt(v));
        }
        const double lower = std::min(alpha_ - zsum, d_.front() - zmax) - 1.0;
        const double upper = std::max(alpha_ + zsum, d_.back() + zmax) + 1.0;

        std::vector<Root> roots;
        roots.reserve(n + 1);
        roots.push_back(root_in(0, lower - d_[0], 0.0));
        for (std::size_t j = 0; j + 1 < n; ++j) {
            const double mid = 0.5 * (d_[j] + d_[j + 1]);
            if (secular_at(mid) > 0.0) {
                roots.push_back(root_in(j + 1, mid - d_[j + 1], 0.0));
            } else {
                roots.push_back(root_in(j, 0.0, mid - d_[j]));
            }
        }
        roots.push_back(root_in(n - 1, 0.0, upper - d_[n - 1]));
        return roots;
    }

private:
    double secular_at(double l) const {
        double s = alpha_ - l;
        for (std::size_t k = 0; k < d_.size(); ++k) s -= z2_[k] / (d_[k] - l);
        return s;
    }

    // Solves for mu = lambda - d[origin] on (lo, hi), one end of which is the
    // pole at mu = 0.
    Root root_in(std::size_t origin, double lo, double hi) {
        const double base = d_[origin];
        for (std::size_t k = 0; k < d_.size(); ++k) shifted_[k] = d_[k] - base;
        const double a0 = alpha_ - base;

        auto eval = [&](double mu, double& phi, double& dphi, double& dsum) {
            phi = a0 - mu;
            dsum = 0.0;
            for (std::size_t k = 0; k < shifted_.size(); ++k) {
                const double inv = 1.0 / (shifted_[k] - mu);
                const double t = z2_[k] * inv;
                phi -= t;
                dsum += t * inv;
            }
            dphi = -1.0 - dsum;
        };

        double mu = 0.5 * (lo + hi);
        double phi = 0.0, dphi = 0.0, dsum = 0.0;
        for (int iter = 0; iter < 200; ++iter) {
            eval(mu, phi, dphi, dsum);
            if (phi == 0.0) break;
            if (phi > 0.0) {
                lo = mu;
            } else {
                hi = mu;
            }
            // Newton on psi = -mu * phi, which cancels the pole at the origin.
            const double psi = -mu * phi;
            const double dpsi = -phi - mu * dphi;
            double next = dpsi != 0.0 ? mu - psi / dpsi : 0.5 * (lo + hi);
            if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
            const double scale = std::max(std::abs(lo), std::abs(hi));
            if (hi - lo <= 4.0 * kEps * scale || std::abs(next - mu) <= 2.0 * kEps * std::abs(mu)) {
                mu = next;
                eval(mu, phi, dphi, dsum);
                break;
            }
            mu = next;
        }
        return {base + mu, 1.0 / (1.0 + dsum)};
    }

    double alpha_;
    std::vector<double> d_;
    std::vector<double> z2_;
    std::vector<double> shifted_;
};

}  // namespace

double FiniteModeParams::eta() const { return 2.0 * std::sqrt(g * mode_spacing() / kPi); }

double FiniteModeParams::coupling(std::size_t k) const { return gamma * eta() * mode_frequency(k); }

double FiniteModeParams::binding_threshold() const {
    // (gamma eta omega_k)^2 / omega_k^2 summed over N modes
    const double ge = gamma * eta();
    return ge * ge * static_cast<double>(n_modes);
}

void validate_into(const FiniteModeParams& p, ValidationReport& report) {
    if (p.n_modes < 1) report.errors.push_back({"n_modes", "n_modes must be >= 1"});
    if (!(p.omega0 > 0.0)) report.errors.push_back({"omega0", "omega0 must be > 0"});
    if (!(p.radius > 0.0) || !std::isfinite(p.radius))
        report.errors.push_back({"radius", "radius must be > 0"});
    if (!(p.g >= 0.0) || !std::isfinite(p.g)) report.errors.push_back({"g", "g must be >= 0"});
    if (!(p.gamma > 0.0)) report.errors.push_back({"gamma", "gamma must be > 0"});
}

void require_valid(const FiniteModeParams& params) {
    ValidationReport report;
    validate_into(params, report);
    if (!report.ok()) throw ValidationError(std::move(report));
}

Eigen::MatrixXd build_quadratic_form(const FiniteModeParams& params) {
    require_valid(params);
    const auto n = static_cast<Eigen::Index>(params.n_modes);
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n + 1, n + 1);
    m(0, 0) = params.omega0 * params.omega0;
    for (Eigen::Index k = 1; k <= n; ++k) {
        const double wk = params.mode_frequency(static_cast<std::size_t>(k));
        m(k, k) = wk * wk;
        m(0, k) = m(k, 0) = -params.coupling(static_cast<std::size_t>(k));
    }
    return m;
}

double NormalModeSystem::weight_sum() const {
    double s = 0.0;
    for (double w : weights) s += w;
    return s;
}

NormalModeSystem normal_modes(const Eigen::MatrixXd& m, double eig_tol) {
    if (m.rows() != m.cols() || m.rows() == 0) throw InvalidInput("quadratic form must be square");
    const double norm = m.cwiseAbs().rowwise().sum().maxCoeff();
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * norm)
        throw InvalidInput("quadratic form must be symmetric");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
    if (solver.info() != Eigen::Success) throw NumericalFailure("symmetric eigensolver failed");
    const auto& lambda = solver.eigenvalues();
    if (lambda(0) <= 0.0) {
        throw UnstableConfiguration(
            "unstable configuration: bare frequency below binding threshold (lowest eigenvalue " +
            describe(lambda(0)) + ")");
    }

    NormalModeSystem nm;
    nm.transform = solver.eigenvectors();
    const auto n = static_cast<std::size_t>(m.rows());
    nm.frequencies.resize(n);
    nm.weights.resize(n);
    for (std::size_t r = 0; r < n; ++r) {
        const auto ri = static_cast<Eigen::Index>(r);
        nm.frequencies[r] = std::sqrt(lambda(ri));
        nm.weights[r] = nm.transform(0, ri) * nm.transform(0, ri);
    }

    const double spectral_norm = std::max(std::abs(lambda(0)), std::abs(lambda(lambda.size() - 1)));
    const double residual = max_residual(m, nm);
    if (residual > eig_tol * spectral_norm) {
        throw NumericalFailure("eigenpair residual " + describe(residual) + " exceeds tolerance");
    }
    if (std::abs(nm.weight_sum() - 1.0) > eig_tol) {
        throw NumericalFailure("normal-mode weights do not sum to one");
    }
    return nm;
}

NormalModeSystem normal_modes_arrowhead(const FiniteModeParams& params) {
    require_valid(params);
    const double alpha = params.omega0 * params.omega0;
    if (alpha <= params.binding_threshold()) {
        throw UnstableConfiguration("unstable configuration: bare frequency below binding threshold (" +
                                    describe(params.omega0) + "^2 <= " +
                                    describe(params.binding_threshold()) + ")");
    }
    std::vector<double> d(params.n_modes), z2(params.n_modes);
    for (std::size_t k = 0; k < params.n_modes; ++k) {
        const double wk = params.mode_frequency(k + 1);
        d[k] = wk * wk;
        const double c = params.coupling(k + 1);
        z2[k] = c * c;
    }
    const auto roots = SecularSolver(alpha, std::move(d), std::move(z2)).solve();

    NormalModeSystem nm;
    nm.frequencies.reserve(roots.size());
    nm.weights.reserve(roots.size());
    for (const auto& r : roots) {
        if (r.lambda <= 0.0) {
            throw UnstableConfiguration("unstable configuration: bare frequency below binding threshold");
        }
        nm.frequencies.push_back(std::sqrt(r.lambda));
        nm.weights.push_back(r.weight);
    }
    return nm;
}

double max_residual(const Eigen::MatrixXd& m, const NormalModeSystem& nm) {
    if (nm.transform.size() == 0) throw InvalidInput("residual needs eigenvectors");
    double worst = 0.0;
    for (Eigen::Index r = 0; r < nm.transform.cols(); ++r) {
        const double l = nm.frequencies[static_cast<std::size_t>(r)];
        const Eigen::VectorXd v = nm.transform.col(r);
        worst = std::max(worst, (m * v - l * l * v).norm());
    }
    return worst;
}

std::complex<double> f_exact(double t, const NormalModeSystem& nm) {
    std::complex<double> f{0.0, 0.0};
    for (std::size_t r = 0; r < nm.size(); ++r) f += nm.weights[r] * std::polar(1.0, -nm.frequencies[r] * t);
    return f;
}

double unitarity_deviation(double t, const NormalModeSystem& nm) {
    if (nm.transform.size() == 0) throw InvalidInput("unitarity check needs eigenvectors");
    const auto n = nm.transform.cols();
    Eigen::VectorXcd phased(n);
    for (Eigen::Index r = 0; r < n; ++r) {
        phased(r) = nm.transform(0, r) * std::polar(1.0, -nm.frequencies[static_cast<std::size_t>(r)] * t);
    }
    const Eigen::VectorXcd amplitudes = nm.transform.cast<std::complex<double>>() * phased;
    return std::abs(amplitudes.squaredNorm() - 1.0);
}

double dominant_frequency(const NormalModeSystem& nm) {
    const std::size_t n = nm.size();
    if (n == 1) return nm.frequencies[0];
    const auto& w = nm.frequencies;
    std::vector<double> density(n);
    for (std::size_t r = 0; r < n; ++r) {
        const double lo = r == 0 ? w[0] : w[r - 1];
        const double hi = r + 1 == n ? w[n - 1] : w[r + 1];
        const double span = (r == 0 || r + 1 == n) ? (hi - lo) : 0.5 * (hi - lo);
        density[r] = nm.weights[r] / span;
    }
    const auto peak = static_cast<std::size_t>(
        std::distance(density.begin(), std::max_element(density.begin(), density.end())));
    if (peak == 0 || peak + 1 == n) return w[peak];

    // Vertex of the parabola through the three samples around the peak.
    const double x0 = w[peak - 1], x1 = w[peak], x2 = w[peak + 1];
    const double y0 = density[peak - 1], y1 = density[peak], y2 = density[peak + 1];
    const double num = (x1 - x0) * (x1 - x0) * (y1 - y2) - (x1 - x2) * (x1 - x2) * (y1 - y0);
    const double den = (x1 - x0) * (y1 - y2) - (x1 - x2) * (y1 - y0);
    if (den == 0.0) return x1;
    return std::clamp(x1 - 0.5 * num / den, x0, x2);
}

FiniteModeParams tune_bare_frequency(FiniteModeParams params, double target) {
    if (!(target > 0.0)) throw InvalidInput("target frequency must be > 0");
    const double threshold = params.binding_threshold();
    auto dominant_at = [&](double excess) {
        params.omega0 = std::sqrt(threshold + excess);
        return dominant_frequency(normal_modes_arrowhead(params));
    };

    double lo = 1e-9 * std::max(target * target, 1.0);
    double hi = 4.0 * target * target;
    for (int i = 0; i < 60 && dominant_at(hi) < target; ++i) hi *= 2.0;
    if (dominant_at(lo) > target) {
        params.omega0 = std::sqrt(threshold + lo);
        return params;
    }
    for (int i = 0; i < 100 && hi - lo > 1e-13 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (dominant_at(mid) < target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    params.omega0 = std::sqrt(threshold + 0.5 * (lo + hi));
    return params;
}

DecayFit fit_decay_rate(const NormalModeSystem& nm, double t_begin, double t_end, double dt) {
    if (!(t_end > t_begin) || !(dt > 0.0)) throw InvalidInput("fit window must be non-empty");
    const auto steps = static_cast<std::size_t>(std::floor((t_end - t_begin) / dt + 1e-9));
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i <= steps; ++i) {
        const double t = t_begin + dt * static_cast<double>(i);
        const double mag = std::abs(f_exact(t, nm));
        if (!(mag > 0.0)) continue;
        const double y = std::log(mag);
        sx += t;
        sy += y;
        sxx += t * t;
        sxy += t * y;
        ++count;
    }
    if (count < 2) throw NumericalFailure("decay fit needs at least two nonzero samples");
    const double c = static_cast<double>(count);
    const double slope = (c * sxy - sx * sy) / (c * sxx - sx * sx);
    return {-slope, (sy - slope * sx) / c};
}

double min_survival(const NormalModeSystem& nm, double t_end, double dt) {
    const auto steps = static_cast<std::size_t>(std::ceil(t_end / dt));
    double lowest = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i <= steps; ++i) {
        const double t = std::min(t_end, dt * static_cast<double>(i));
        lowest = std::min(lowest, std::norm(f_exact(t, nm)));
    }
    return lowest;
}

CalibrationReport calibrate_gamma(const CalibrationRequest& req) {
    ValidationReport report;
    if (!(req.g > 0.0)) report.errors.push_back({"g", "g must be > 0: a decoupled oscillator does not decay"});
    if (req.n_modes < 1) report.errors.push_back({"n_modes", "n_modes must be >= 1"});
    if (!(req.radius > 0.0)) report.errors.push_back({"radius", "radius must be > 0"});
    if (!(req.omega_bar > 0.0)) report.errors.push_back({"omega_bar", "omega_bar must be > 0"});
    if (report.ok()) {
        const double delta = req.g * req.radius / kPi;
        if (delta < 5.0)
            report.errors.push_back({"radius", "large-cavity proxy needs delta = gR/pi >= 5, got " +
                                                   describe(delta)});
        const double needed = 10.0 * req.radius * req.omega_bar / kPi;
        if (static_cast<double>(req.n_modes) < needed)
            report.errors.push_back({"n_modes", "need n_modes >= 10 R omega_bar / pi = " + describe(needed)});
        if (!(req.window_start >= 0.0 && req.window_end > req.window_start))
            report.errors.push_back({"window", "fit window must satisfy 0 <= start < end"});
        if (req.window_end >= 2.0 * req.radius)
            report.errors.push_back({"window", "fit window must end before the revival time 2R"});
    }
    if (!report.ok()) throw ValidationError(std::move(report));

    CalibrationReport out;
    out.n_modes = req.n_modes;
    out.radius = req.radius;
    out.revival_time = 2.0 * req.radius;
    double best = std::numeric_limits<double>::infinity();
    for (double gamma : {0.5, 1.0, 2.0}) {
        FiniteModeParams p;
        p.n_modes = req.n_modes;
        p.g = req.g;
        p.radius = req.radius;
        p.gamma = gamma;
        p = tune_bare_frequency(p, req.omega_bar);
        const auto nm = normal_modes_arrowhead(p);
        const auto fit = fit_decay_rate(nm, req.window_start, req.window_end);
        const CalibrationCandidate cand{gamma, p.omega0, fit.rate, std::abs(fit.rate - req.g) / req.g};
        out.candidates.push_back(cand);
        if (cand.mismatch < best) {
            best = cand.mismatch;
            out.gamma = cand.gamma;
            out.omega0 = cand.omega0;
            out.fitted_rate = cand.fitted_rate;
            out.mismatch = cand.mismatch;
        }
    }
    if (out.mismatch > kCalibrationRejectMismatch) {
        throw CalibrationFailure("no coupling convention reproduces the decay rate g within 25% (best " +
                                 describe(out.mismatch) + "); review the parameters");
    }
    return out;
}

}  // namespace biatom
