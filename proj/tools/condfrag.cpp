#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "condfrag/commands.hpp"
#include "condfrag/fragmentation.hpp"
#include "condfrag/version.hpp"

namespace {

struct CommonOpts {
    std::string config_path;
    std::string out_dir = "out";
    std::uint64_t seed = 0;
    bool seed_given = false;
    int threads = 1;
};

void add_common(CLI::App* sub, CommonOpts& opts) {
    sub->add_option("--config", opts.config_path, "configuration file (key = value sections)")
        ->required();
    sub->add_option("--out", opts.out_dir, "output directory (default: out)");
    sub->add_option("--seed", opts.seed, "override the [run] seed")
        ->each([&opts](const std::string&) { opts.seed_given = true; });
    sub->add_option("--threads", opts.threads, "worker threads for independent runs/rows")
        ->check(CLI::PositiveNumber);
}

int dispatch(const std::string& name, const CommonOpts& opts) {
    using namespace condfrag;
    RunConfig cfg = RunConfig::parse_file(opts.config_path);
    if (opts.seed_given) cfg.seed = opts.seed;
    cfg.validate_common();
    if (name == "groundstate") return cmd_groundstate(cfg, opts.out_dir, opts.threads);
    if (name == "sweep") return cmd_sweep(cfg, opts.out_dir, opts.threads);
    if (name == "crossover") return cmd_crossover(cfg, opts.out_dir, opts.threads);
    return cmd_interfere(cfg, opts.out_dir, opts.threads);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"condfrag: single vs dual Bose condensates in a double-minimum trap"};
    app.set_version_flag("--version", condfrag::kVersion);
    app.require_subcommand(1);

    CommonOpts opts;
    const char* names[] = {"groundstate", "sweep", "crossover", "interfere"};
    const char* descs[] = {
        "solve the configured ground-state problem and write wavefunctions + reports",
        "compare E_s and E_d over a range of barrier heights",
        "bisect for the barrier height where the dual state becomes favored",
        "run the detection Monte Carlo and report the phase-statistics verdict"};
    for (int i = 0; i < 4; ++i) add_common(app.add_subcommand(names[i], descs[i]), opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : condfrag::kExitConfig;
    }

    const std::string sub = app.get_subcommands().front()->get_name();
    try {
        return dispatch(sub, opts);
    } catch (const condfrag::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return condfrag::kExitConfig;
    } catch (const condfrag::NoCrossoverInBracket& e) {
        std::cerr << e.what() << "\n";
        return condfrag::kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return condfrag::kExitConfig;
    }
}
