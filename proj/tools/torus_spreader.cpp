// Command-line front end: build | verify | rotate | probe | render over JSON
// experiment configs. Exit codes: 0 pass, 1 error, 2 violated, 3 inconclusive.

#include "torus/experiment.hpp"
#include "torus/parallel.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"torus-spreader: piecewise-affine torus dynamics toolkit"};
    app.require_subcommand(0, 1);

    std::string config_path;
    std::string out_dir;
    int threads = 0;
    long long seed = -1;
    int xi_override = -1;

    app.add_option("--config", config_path, "experiment config (JSON)")->required();
    app.add_option("--out", out_dir, "output directory for records and artifacts");
    app.add_option("--threads", threads, "worker threads (default: TORUS_SPREADER_THREADS or 1)");
    app.add_option("--seed", seed, "override the config seed");
    app.add_option("--xi-override", xi_override, "override xi upward (>= computed xi0)");

    std::string subcommand;
    for (const char* name : {"build", "verify", "rotate", "probe", "render"}) {
        CLI::App* sub = app.add_subcommand(name, std::string("run the ") + name + " pipeline");
        sub->fallthrough();  // --config etc. stay parent options
        sub->callback([&subcommand, name] { subcommand = name; });
    }

    CLI11_PARSE(app, argc, argv);

    if (threads <= 0) {
        if (const char* env = std::getenv("TORUS_SPREADER_THREADS")) threads = std::atoi(env);
    }
    torus::par::set_threads(threads > 0 ? threads : 1);

    try {
        auto config = torus::experiment::load_config(config_path);
        if (!subcommand.empty()) {
            torus::experiment::json patched = config.echo;
            patched["command"] = subcommand;
            config = torus::experiment::parse_config(patched);
        }
        if (!out_dir.empty()) config.output_dir = out_dir;
        if (seed >= 0) config.seed = static_cast<std::uint64_t>(seed);
        if (xi_override >= 0) config.xi_override = xi_override;

        const auto result = torus::experiment::run(config);
        std::cout << result.record.dump(2) << std::endl;
        return result.status;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << std::endl;
        return 1;
    }
}
