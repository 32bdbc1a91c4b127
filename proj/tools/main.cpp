// logwave: numerical laboratory for blow-up in the log-perturbed
// semilinear wave equation u_tt = u_xx + |u|^{p-1} u log^a(2+u^2).
//
// Subcommands: ode, pde, similarity, rates, sweep. Every run writes a
// manifest.json, a resolved config echo, CSV data and a verdict JSON.

#include "logwave/errors.hpp"
#include "logwave/run_config.hpp"
#include "logwave/runner.hpp"
#include "logwave/version.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

namespace {

struct CommonArgs {
    std::string config_path;
    std::vector<std::string> overrides;
    std::string out_dir;
    int jobs = 0;
};

void add_common(CLI::App* sub, CommonArgs& args) {
    sub->add_option("--config", args.config_path, "flat key = value config file");
    sub->add_option("--set", args.overrides, "override KEY=VALUE (repeatable)")
        ->take_all();
    sub->add_option("--out", args.out_dir,
                    "output directory (used as-is, no timestamped subdirectory)");
    sub->add_option("--jobs", args.jobs, "worker threads for sweep cells");
}

logwave::run::RunConfig build_config(const CommonArgs& args, const std::string& kind) {
    logwave::run::KeyValueConfig kv;
    if (!args.config_path.empty())
        kv = logwave::run::KeyValueConfig::parse_file(args.config_path);
    for (const auto& ov : args.overrides) kv.apply_override(ov);
    kv.set("kind", kind);
    if (!args.out_dir.empty()) {
        kv.set("out.dir", args.out_dir);
        kv.set("out.timestamp_subdir", "false");
    }
    return logwave::run::RunConfig::from(kv);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"logwave: blow-up laboratory for the log-perturbed semilinear "
                 "wave equation"};
    app.set_version_flag("--version", std::string(logwave::kVersion));
    app.require_subcommand(1);

    const std::vector<std::string> kinds{"ode", "pde", "similarity", "rates", "sweep"};
    const std::vector<std::string> blurbs{
        "integrate the blow-up ODE and fit the profile exponents",
        "finite-difference run to blow-up with curve extraction",
        "similarity-variable functionals and Lyapunov certification",
        "two-sided rate ratios and growth monitors",
        "(p, a) grid of ODE studies on a worker pool"};
    std::vector<CommonArgs> args(kinds.size());
    for (std::size_t i = 0; i < kinds.size(); ++i)
        add_common(app.add_subcommand(kinds[i], blurbs[i]), args[i]);

    CLI11_PARSE(app, argc, argv);

    for (std::size_t i = 0; i < kinds.size(); ++i) {
        if (!app.get_subcommand(kinds[i])->parsed()) continue;
        try {
            const logwave::run::RunConfig cfg = build_config(args[i], kinds[i]);
            const logwave::run::RunOutcome outcome =
                kinds[i] == "sweep" ? logwave::run::sweep(cfg, args[i].jobs)
                                    : logwave::run::run(cfg);
            std::cout << outcome.message << "\n"
                      << "artifacts: " << outcome.directory << "\n";
            return outcome.status;
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 2;
        }
    }
    return 2;
}
