#include <CLI11.hpp>
#include <cstdio>
#include <map>
#include <string>

#include "commands.hpp"

namespace {

using sl2avg::cli::ConfigError;
using sl2avg::cli::RunConfig;

// raw flag values; typed validation happens in RunConfig so file and flag
// inputs fail identically
struct Flags {
    std::string config;
    std::string seed, out_dir, t_max, grid_step, samples, tolerance;
    std::string observable, mode;
};

void add_common(CLI::App* cmd, Flags& f) {
    cmd->add_option("--config", f.config, "key=value file applied over built-in defaults");
    cmd->add_option("--seed", f.seed, "sampler seed");
    cmd->add_option("--out-dir", f.out_dir, "run directory (env SL2AVG_OUT_DIR also honored)");
    cmd->add_option("--t-max", f.t_max, "largest flow time");
    cmd->add_option("--grid-step", f.grid_step, "time grid spacing");
    cmd->add_option("--samples", f.samples, "number of sample points");
    cmd->add_option("--tolerance", f.tolerance, "primary gate tolerance");
}

std::map<std::string, std::string> overrides(const CLI::App* cmd, const Flags& f) {
    std::map<std::string, std::string> kv;
    auto put = [&](const std::string& flag, const std::string& key, const std::string& v) {
        const CLI::Option* opt = cmd->get_option_no_throw(flag);
        if (opt != nullptr && opt->count() > 0) kv[key] = v;
    };
    put("--seed", "seed", f.seed);
    put("--out-dir", "out_dir", f.out_dir);
    put("--t-max", "t_max", f.t_max);
    put("--grid-step", "grid_step", f.grid_step);
    put("--samples", "samples", f.samples);
    put("--tolerance", "tolerance", f.tolerance);
    put("--observable", "observable", f.observable);
    put("--mode", "mode", f.mode);
    return kv;
}

const std::map<std::string, std::string> kBase = {
    {"seed", "2026"}, {"samples", "100"},   {"tolerance", "1e-6"},
    {"t_max", "5"},   {"grid_step", "0.5"},
};

std::map<std::string, std::string> with_base(std::map<std::string, std::string> extra) {
    extra.insert(kBase.begin(), kBase.end());
    return extra;
}

int dispatch(const CLI::App* cmd, const Flags& f,
             const std::map<std::string, std::string>& defaults,
             int (*run)(const RunConfig&)) {
    try {
        return run(RunConfig(defaults, f.config, overrides(cmd, f)));
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "run failed: %s\n", e.what());
        return 1;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"radial-flow averages on the modular quotient of SL(2,R)"};
    app.require_subcommand(1);

    Flags f;
    CLI::App* spherical = app.add_subcommand(
        "spherical", "matrix-coefficient sweep with decay envelopes and the Xi cross-check");
    CLI::App* spectral = app.add_subcommand(
        "spectral", "model-space operator identities, multiplier and tail-weight checks");
    CLI::App* ergodic = app.add_subcommand(
        "ergodic", "sampled averaging-operator study: convergence or maximal-function mode");
    CLI::App* oracle = app.add_subcommand(
        "oracle", "independent reference computations, written as golden files");
    for (CLI::App* c : {spherical, spectral, ergodic, oracle}) add_common(c, f);
    ergodic->add_option("--observable", f.observable, "library observable name");
    ergodic->add_option("--mode", f.mode, "convergence | maximal");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // help exits clean; anything else is a command-line configuration error
        return app.exit(e) == 0 ? 0 : 2;
    }

    if (spherical->parsed())
        return dispatch(spherical, f,
                        with_base({{"out_dir", "spherical_out"},
                                   {"tolerance", "1e-10"},
                                   {"t_max", "6"},
                                   {"grid_step", "0.25"},
                                   {"lambda_list", "0,1,5,20"},
                                   {"s_list", "0.1,0.3,0.5,0.7,0.9"},
                                   {"n_list", "0,2,-2,8,-8"}}),
                        sl2avg::cli::cmd_spherical);
    if (spectral->parsed())
        return dispatch(spectral, f,
                        with_base({{"out_dir", "spectral_out"},
                                   {"seed", "404"},
                                   {"samples", "200"},
                                   {"t_max", "4"},
                                   {"gate_multiplier", "1e-5"}}),
                        sl2avg::cli::cmd_spectral);
    if (ergodic->parsed())
        return dispatch(ergodic, f,
                        with_base({{"out_dir", "ergodic_out"},
                                   {"observable", "bump"},
                                   {"mode", "convergence"},
                                   {"t_list", "2,4,6,8"},
                                   {"k_nodes_per_t", "2048,8192,24576,65536"},
                                   {"s_nodes", "32"},
                                   {"k_nodes", "256"},
                                   {"gate_final", "0.05"},
                                   {"gate_shift", "0.2"}}),
                        sl2avg::cli::cmd_ergodic);
    return dispatch(oracle, f, with_base({{"out_dir", "oracle_out"}, {"zonal_nodes", "1000000"}}),
                    sl2avg::cli::cmd_oracle);
}
