#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "reslevy/runner.hpp"

namespace {

std::string join_doubles(const std::vector<double>& xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) s += " ";
        s += std::to_string(xs[i]);
    }
    return s;
}

// Reconstructs a config file equivalent to the effective run. Feeding the
// output back through --config must reproduce the same configuration.
void dump_config(const reslevy::RunConfig& c, std::ostream& out) {
    out << "command=" << c.command << "\n";
    out << "family=" << c.family << "\n";
    out << "alpha=" << c.alpha << "\n";
    out << "rhobar=" << c.rho_bar << "\n";
    out << "scale=" << c.scale << "\n";
    out << "drift=" << c.drift << "\n";
    out << "sigma=" << c.sigma << "\n";
    out << "rate-up=" << c.rate_up << "\n";
    out << "mean-up=" << c.mean_up << "\n";
    out << "rate-down=" << c.rate_down << "\n";
    out << "mean-down=" << c.mean_down << "\n";
    out << "shape=" << c.shape << "\n";
    out << "rate=" << c.rate << "\n";
    out << "horizon=" << c.horizon << "\n";
    out << "grid-dt=" << c.grid_dt << "\n";
    out << "delta=" << c.truncation_delta << "\n";
    out << "budget=" << c.budget << "\n";
    out << "n-paths=" << c.n_paths << "\n";
    out << "starts=" << join_doubles(c.starts) << "\n";
    out << "lifetime-mode=" << c.lifetime_mode << "\n";
    out << "eps-abs-rel=" << c.eps_abs_rel << "\n";
    out << "eps-time-rel=" << c.eps_time_rel << "\n";
    out << "n-max=" << c.n_max << "\n";
    out << "checks=";
    for (std::size_t i = 0; i < c.checks.size(); ++i) {
        if (i) out << " ";
        out << c.checks[i];
    }
    out << "\n";
    out << "n=" << c.n << "\n";
    out << "n-fk=" << c.n_fk << "\n";
    out << "t=" << c.fk_t << "\n";
    out << "test-function=" << c.test_function << "\n";
    out << "alpha-grid=" << c.alpha_grid << "\n";
    out << "rho-grid=" << c.rho_grid << "\n";
    if (!c.out_json.empty()) out << "out-json=" << c.out_json << "\n";
    if (!c.out_csv.empty()) out << "out-csv=" << c.out_csv << "\n";
    out << "quiet=" << (c.quiet ? "true" : "false") << "\n";
    out << "seed=" << c.seed << "\n";
    out << "workers=" << c.workers << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    reslevy::RunConfig cfg;
    bool want_dump = false;

    CLI::App app{"Simulation and classification toolkit for killed-and-restarted jump models"};
    app.set_config("--config", "", "Read options from a key=value file");
    app.allow_config_extras(false);

    app.add_option("command,--command", cfg.command,
                   "One of: classify, simulate, lifetime, verify, criteria-map");
    app.add_option("--family", cfg.family, "Model family: cp, bcp, stable, stable-sub, gamma-sub")
        ->capture_default_str();
    app.add_option("--alpha", cfg.alpha, "Stability index")->capture_default_str();
    app.add_option("--rhobar", cfg.rho_bar, "Negative-jump positivity weight")
        ->capture_default_str();
    app.add_option("--scale", cfg.scale, "Scale factor")->capture_default_str();
    app.add_option("--drift", cfg.drift, "Linear drift")->capture_default_str();
    app.add_option("--sigma", cfg.sigma, "Diffusive volatility (bcp)")->capture_default_str();
    app.add_option("--rate-up", cfg.rate_up, "Upward jump rate (cp, bcp)")
        ->capture_default_str();
    app.add_option("--mean-up", cfg.mean_up, "Mean upward jump size (cp, bcp)")
        ->capture_default_str();
    app.add_option("--rate-down", cfg.rate_down, "Downward jump rate (cp, bcp)")
        ->capture_default_str();
    app.add_option("--mean-down", cfg.mean_down, "Mean downward jump size (cp, bcp)")
        ->capture_default_str();
    app.add_option("--shape", cfg.shape, "Subordinator shape (gamma-sub)")
        ->capture_default_str();
    app.add_option("--rate", cfg.rate, "Subordinator rate (gamma-sub)")->capture_default_str();
    app.add_option("--horizon", cfg.horizon, "Time horizon for simulate / zero-one probe")
        ->capture_default_str();
    app.add_option("--grid-dt", cfg.grid_dt, "Euler grid step for diffusive schemes")
        ->capture_default_str();
    app.add_option("--delta", cfg.truncation_delta, "Small-jump truncation threshold")
        ->capture_default_str();
    app.add_option("--budget", cfg.budget, "Per-path time budget for passage sampling")
        ->capture_default_str();
    app.add_option("--n-paths", cfg.n_paths, "Replicas for simulate / lifetime / zero-one")
        ->capture_default_str();
    app.add_option("--starts", cfg.starts, "Starting levels (one or more)")
        ->capture_default_str();
    app.add_option("--lifetime-mode", cfg.lifetime_mode, "pathwise or stable-decoupled")
        ->capture_default_str();
    app.add_option("--eps-abs-rel", cfg.eps_abs_rel,
                   "Relative position threshold for declaring absorption")
        ->capture_default_str();
    app.add_option("--eps-time-rel", cfg.eps_time_rel,
                   "Relative time-gap threshold for declaring absorption")
        ->capture_default_str();
    app.add_option("--n-max", cfg.n_max, "Restart cap per lifetime")->capture_default_str();
    app.add_option("--checks", cfg.checks,
                   "Checks to run (verify): all, or any of feynman-kac exp-law domination "
                   "kernel-invariance zero-one scaling")
        ->capture_default_str();
    app.add_option("--n", cfg.n, "Replicas for verify checks")->capture_default_str();
    app.add_option("--n-fk", cfg.n_fk, "Replicas for the feynman-kac check")
        ->capture_default_str();
    app.add_option("--t", cfg.fk_t, "Observation time for the feynman-kac check")
        ->capture_default_str();
    app.add_option("--test-function", cfg.test_function,
                   "min-with-one, one-minus-exp, capped-identity, or zero")
        ->capture_default_str();
    app.add_option("--alpha-grid", cfg.alpha_grid, "first:last:step (criteria-map)")
        ->capture_default_str();
    app.add_option("--rho-grid", cfg.rho_grid, "first:last:step (criteria-map)")
        ->capture_default_str();
    app.add_option("--out-json", cfg.out_json, "Write the JSON report to this path");
    app.add_option("--out-csv", cfg.out_csv, "Write the CSV artifact to this path");
    app.add_flag("--quiet", cfg.quiet, "Suppress stdout report");
    app.add_option("--seed", cfg.seed, "Master seed (RESLEVY_SEED overrides)")
        ->capture_default_str();
    app.add_option("--workers", cfg.workers, "Worker threads; results do not depend on this")
        ->capture_default_str();
    app.add_flag("--dump-config", want_dump, "Print the effective configuration and exit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);  // --help and friends, exit 0
    } catch (const CLI::ParseError& e) {
        app.exit(e);  // prints the message
        return 1;     // any usage problem is a config error
    }

    if (want_dump) {
        dump_config(cfg, std::cout);
        return 0;
    }
    if (cfg.command.empty()) {
        std::cerr << "config error: no command given; try --help\n";
        return 1;
    }
    return reslevy::run(cfg, std::cout, std::cerr);
}
