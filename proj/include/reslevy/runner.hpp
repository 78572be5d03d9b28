#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "reslevy/levy_model.hpp"

namespace reslevy {

// Flat, file-serializable description of a run. Field defaults double as
// the CLI defaults; the CLI and config file both populate exactly this.
struct RunConfig {
    std::string command;  // classify | simulate | lifetime | verify | criteria-map

    // model selection: cp | bcp | stable | stable-sub | gamma-sub
    std::string family = "stable";
    double alpha = 0.5;
    double rho_bar = 0.5;
    double scale = 1.0;
    double drift = 0.0;
    double sigma = 1.0;
    double rate_up = 1.0;
    double mean_up = 1.0;
    double rate_down = 1.0;
    double mean_down = 1.0;
    double shape = 1.0;
    double rate = 1.0;

    // simulation
    double horizon = 10.0;
    double grid_dt = 1e-2;
    double truncation_delta = 1e-4;
    double budget = 1e4;
    std::size_t n_paths = 1000;
    std::vector<double> starts = {1.0};
    std::string lifetime_mode = "pathwise";  // pathwise | stable-decoupled

    // absorption policy
    double eps_abs_rel = 1e-6;
    double eps_time_rel = 1e-8;
    std::size_t n_max = 100000;

    // verify
    std::vector<std::string> checks = {"all"};
    std::size_t n = 10000;
    std::size_t n_fk = 100000;
    double fk_t = 1.0;
    std::string test_function = "min-with-one";

    // criteria-map
    std::string alpha_grid = "0.1:2.0:0.1";
    std::string rho_grid = "0.05:0.95:0.05";

    // output
    std::string out_json;
    std::string out_csv;
    bool quiet = false;

    std::uint64_t seed = 20260815;
    unsigned workers = 1;
};

// "a:b:step" inclusive grid (right endpoint kept when it lands within half a
// step) or a single number. Throws std::invalid_argument on malformed input.
std::vector<double> parse_grid(const std::string& spec);

// Builds the model the config describes; throws std::invalid_argument with
// the offending key in the message.
LevyModel model_from_config(const RunConfig& cfg);

// Executes the configured command. Reports go to `out` and files; `err`
// carries diagnostics. Returns the process exit code:
//   0 = success (all requested checks passed),
//   1 = configuration error,
//   2 = a requested verification check failed,
//   3 = numerical-method or output error.
// The environment variable RESLEVY_SEED, when set, overrides cfg.seed.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace reslevy
