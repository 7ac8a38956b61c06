#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "biatom/commands.hpp"

using namespace biatom;

namespace {

struct Overrides {
    std::string config_path;
    std::string regime;
    double omega_bar = 0, g = 0, delta = 0, xi = 0, phi = 0, t_start = 0, t_end = 0, n = 0;
    double quad_tol = 0, series_tol = 0, eig_tol = 0;
    bool allow_large_delta = false;
    std::string out;
    double n_modes = 0, radius = 0, window_start = 0, window_end = 0;
};

void add_common(CLI::App* sub, Overrides& o) {
    sub->add_option("--config", o.config_path, "JSON configuration file");
    sub->add_option("--regime", o.regime, "large | small");
    sub->add_option("--omega-bar", o.omega_bar, "renormalized frequency");
    sub->add_option("--g", o.g, "coupling strength");
    sub->add_option("--delta", o.delta, "small-cavity parameter gR/pi");
    sub->add_option("--xi", o.xi, "initial superposition weight");
    sub->add_option("--phi", o.phi, "initial relative phase");
    sub->add_option("--t-start", o.t_start);
    sub->add_option("--t-end", o.t_end);
    sub->add_option("--n", o.n, "number of time samples");
    sub->add_option("--quad-tol", o.quad_tol);
    sub->add_option("--series-tol", o.series_tol);
    sub->add_option("--eig-tol", o.eig_tol);
    sub->add_flag("--allow-large-delta", o.allow_large_delta, "downgrade the delta ceiling to a warning");
    sub->add_option("--out", o.out, "output file (default stdout)");
}

void add_oracle_options(CLI::App* sub, Overrides& o) {
    sub->add_option("--n-modes", o.n_modes, "cavity modes in the oracle");
    sub->add_option("--radius", o.radius, "cavity radius of the oracle");
    sub->add_option("--window-start", o.window_start, "start of the decay-fit window");
    sub->add_option("--window-end", o.window_end, "end of the decay-fit window");
}

RunConfig resolve(const CLI::App* sub, const Overrides& o) {
    RunConfig cfg = o.config_path.empty() ? RunConfig{} : load_config_file(o.config_path);
    nlohmann::json doc = nlohmann::json::object();
    auto set = [&](const char* flag, const char* key, double v) {
        if (sub->count(flag)) doc[key] = v;
    };
    if (sub->count("--regime")) doc["regime"] = o.regime;
    set("--omega-bar", "omega_bar", o.omega_bar);
    set("--g", "g", o.g);
    set("--delta", "delta", o.delta);
    set("--xi", "xi", o.xi);
    set("--phi", "phi", o.phi);
    set("--t-start", "t_start", o.t_start);
    set("--t-end", "t_end", o.t_end);
    set("--n", "n_points", o.n);
    if (sub->count("--allow-large-delta")) doc["allow_large_delta"] = true;

    nlohmann::json tol = nlohmann::json::object();
    if (sub->count("--quad-tol")) tol["quad_tol"] = o.quad_tol;
    if (sub->count("--series-tol")) tol["series_tol"] = o.series_tol;
    if (sub->count("--eig-tol")) tol["eig_tol"] = o.eig_tol;
    if (!tol.empty()) doc["tolerances"] = tol;

    nlohmann::json oracle = nlohmann::json::object();
    if (sub->get_option_no_throw("--n-modes")) {
        if (sub->count("--n-modes")) oracle["n_modes"] = o.n_modes;
        if (sub->count("--radius")) oracle["radius"] = o.radius;
        if (sub->count("--window-start")) oracle["window_start"] = o.window_start;
        if (sub->count("--window-end")) oracle["window_end"] = o.window_end;
    }
    if (!oracle.empty()) doc["oracle"] = oracle;

    return apply_json(cfg, doc);
}

std::vector<double> parse_values(const std::string& text) {
    std::vector<double> values;
    std::stringstream ss(text);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        if (cell.empty()) continue;
        std::size_t used = 0;
        double v = 0;
        try {
            v = std::stod(cell, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != cell.size()) throw InvalidInput("sweep value is not a number: '" + cell + "'");
        values.push_back(v);
    }
    return values;
}

// Writes through a temporary stream so that a failed run leaves no partial file.
int with_output(const std::string& path, const std::function<int(std::ostream&)>& body) {
    if (path.empty()) return body(std::cout);
    std::ostringstream buffer;
    const int code = body(buffer);
    if (code != kExitOk) return code;
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot write " << path << '\n';
        return kExitInvalidInput;
    }
    out << buffer.str();
    return out ? kExitOk : kExitInvalidInput;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Entanglement dynamics of two atoms sharing a spherical cavity"};
    app.require_subcommand(1);

    Overrides o;
    auto* evolve = app.add_subcommand("evolve", "time series of f and D, C, N as CSV");
    add_common(evolve, o);

    auto* sweep = app.add_subcommand("sweep", "one series per value of xi, delta or g");
    add_common(sweep, o);
    std::string axis, values_text, summary_path;
    sweep->add_option("--axis", axis, "xi | delta | g")->required();
    sweep->add_option("--values", values_text, "comma-separated values")->required();
    sweep->add_option("--summary", summary_path, "write the per-value summary table here");

    auto* oracle = app.add_subcommand("oracle", "finite-mode calibration and unitarity report (JSON)");
    add_common(oracle, o);
    add_oracle_options(oracle, o);

    auto* check = app.add_subcommand("check", "re-validate every row of an evolve CSV");
    std::string check_path;
    check->add_option("file", check_path, "CSV produced by evolve")->required();

    auto* figures = app.add_subcommand("figures", "write the CSV data for the standard impurity and entanglement plots");
    add_common(figures, o);
    std::string figure_dir = "figures";
    figures->add_option("--dir", figure_dir, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInvalidInput;
    }

    CLI::App* active = app.get_subcommands().front();
    if (active == check) {
        std::ifstream in(check_path);
        if (!in) {
            std::cerr << "error: cannot read " << check_path << '\n';
            return kExitInvalidInput;
        }
        return run_check(in, std::cout, std::cerr);
    }

    RunConfig cfg;
    const int resolved = guarded(std::cerr, [&] { cfg = resolve(active, o); });
    if (resolved != kExitOk) return resolved;

    if (active == evolve) {
        return with_output(o.out, [&](std::ostream& out) { return run_evolve(cfg, out, std::cerr); });
    }
    if (active == sweep) {
        std::vector<double> values;
        const int parsed = guarded(std::cerr, [&] { values = parse_values(values_text); });
        if (parsed != kExitOk) return parsed;
        std::ostringstream summary;
        const int code = with_output(o.out, [&](std::ostream& out) {
            return run_sweep(cfg, axis, values, out, summary_path.empty() ? nullptr : &summary, std::cerr);
        });
        if (code != kExitOk || summary_path.empty()) return code;
        return with_output(summary_path, [&](std::ostream& out) {
            out << summary.str();
            return kExitOk;
        });
    }
    if (active == oracle) {
        return with_output(o.out, [&](std::ostream& out) { return run_oracle(cfg, out, std::cerr); });
    }
    return run_figures(cfg, figure_dir, std::cerr);
}
