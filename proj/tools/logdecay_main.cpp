#include <CLI11.hpp>

#include <iostream>

#include "logdecay/run_config.hpp"

int main(int argc, char** argv) {
    using logdecay::cli::RunConfig;

    CLI::App app{"numerical laboratory for zero-energy resonances and logarithmic wave decay"};
    app.set_config("--config", "", "key=value config file (same keys as the long flags)");
    app.require_subcommand(1);

    RunConfig cfg;

    auto add_model_flags = [&](CLI::App* sub) {
        sub->add_option("--model", cfg.variant,
                        "free | round-well | delta-ring | robin-disc");
        sub->add_option("--R", cfg.R, "interface radius");
        sub->add_option("--rho", cfg.rho, "obstacle radius");
        sub->add_option("--a", cfg.a, "well amplitude / ring coupling")
            ->each([&](const std::string&) { cfg.a_set = true; });
        sub->add_option("--sigma", cfg.sigma, "Robin coefficient")
            ->each([&](const std::string&) { cfg.sigma_set = true; });
        sub->add_option("--n", cfg.n_index, "resonance index j_{0,n}");
        sub->add_option("--mode", cfg.mode, "angular mode m");
    };
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--output", cfg.output, "output path");
        sub->add_option("--seed", cfg.seed, "seed for randomized test-data generation");
        sub->add_option("--workers", cfg.workers,
                        "worker count (0 = LOGDECAY_WORKERS or hardware)");
        sub->add_option("--tol", cfg.tol, "acceptance tolerance");
        sub->add_flag("--plot-script,!--no-plot-script", cfg.plot_script,
                      "emit a plotting stub next to CSV output");
    };

    CLI::App* resonance = app.add_subcommand(
        "resonance", "existence-condition residuals and state parameters");
    add_model_flags(resonance);
    add_common(resonance);

    CLI::App* resolvent =
        app.add_subcommand("resolvent", "sweep lambda and write <g, R(lambda) f> samples");
    add_model_flags(resolvent);
    add_common(resolvent);
    resolvent->add_option("--lambda-min", cfg.lambda_min, "smallest |lambda|");
    resolvent->add_option("--lambda-max", cfg.lambda_max, "largest |lambda|");
    resolvent->add_option("--per-ray", cfg.per_ray, "samples per ray");

    CLI::App* contour =
        app.add_subcommand("contour", "write (t, J, J log t/t) from contour quadrature");
    add_common(contour);
    contour->add_option("--b", cfg.b, "branch constant, e.g. -1i");
    contour->add_option("--t-grid", cfg.t_grid, "start:end:count, eX for e^X");
    contour->add_option("--eta", cfg.eta, "semicircle radius");
    contour->add_option("--A", cfg.A, "contour growth rate (> C')");
    contour->add_option("--C", cfg.C, "resolvent bound constant C");
    contour->add_option("--Cprime", cfg.Cprime, "resolvent bound constant C'");

    CLI::App* simulate =
        app.add_subcommand("simulate", "evolve the wave and write the u_d/u_z/u_r split");
    simulate->set_help_flag("--help", "print help");  // frees -h for the grid spacing
    add_model_flags(simulate);
    add_common(simulate);
    simulate->add_option("--T", cfg.T, "final time");
    simulate->add_option("-h,--h,--grid-h", cfg.h, "radial grid spacing");
    simulate->add_option("--cfl", cfg.cfl, "Courant number (<= 0.9)");
    simulate->add_option("--observers", cfg.observers, "comma-separated radii");
    simulate->add_option("--f-center", cfg.f_center, "initial data center");
    simulate->add_option("--f-sigma", cfg.f_sigma, "initial data width");

    CLI::App* fit = app.add_subcommand("fit", "fit an expansion or decay law from a CSV");
    add_common(fit);
    fit->add_option("--input", cfg.input, "input CSV")->required();
    fit->add_option("--kind", cfg.kind, "expansion | decay");
    fit->add_option("--law", cfg.law, "t-over-log | log-power");
    fit->add_option("--M", cfg.log_power, "log power for the trend check");
    fit->add_option("--noise-frac", cfg.noise_frac,
                    "multiplicative perturbation for robustness probes");

    CLI::App* verify = app.add_subcommand("verify-all", "run the acceptance matrix");
    add_common(verify);
    verify->add_option("--only", cfg.only, "criteria ids to run");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    for (auto* sub : {resonance, resolvent, contour, simulate, fit, verify})
        if (sub->parsed()) cfg.command = sub->get_name();

    return logdecay::cli::run(cfg, std::cout, std::cerr);
}
