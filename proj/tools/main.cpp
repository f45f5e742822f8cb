#include <CLI11.hpp>

#include "sparse_recover/cli.hpp"

using sparse_recover::cli::ExperimentSpec;

int main(int argc, char** argv) {
    CLI::App app{"sparse-recover: seeded spike-recovery experiments"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key=value config file; command-line flags override it");

    ExperimentSpec spec;

    auto add_common = [&spec](CLI::App* cmd) {
        cmd->fallthrough();  // lets --config appear after the subcommand
        cmd->add_option("--seed", spec.seed, "RNG seed (xoshiro256++)")
            ->capture_default_str();
        cmd->add_option("--out-csv", spec.out_csv, "trajectory CSV path")
            ->capture_default_str();
        cmd->add_option("--out-json", spec.out_json, "summary JSON path")
            ->capture_default_str();
    };

    auto* eg = app.add_subcommand("energy-gd",
                                  "particle gradient descent on the energy distance");
    eg->add_option("--n", spec.n, "number of particles")->capture_default_str();
    eg->add_option("--gamma", spec.gamma, "stepsize")->capture_default_str();
    eg->add_option("--max-iters", spec.max_iters,
                   "iteration cap (0 = contraction budget)");
    add_common(eg);

    auto* r1 = app.add_subcommand("recover1d", "recovery from finite Fourier moments");
    r1->add_option("--n", spec.n, "number of spikes")->capture_default_str();
    r1->add_option("--mode", spec.mode, "theory | empirical")->capture_default_str();
    r1->add_option("--gamma", spec.gamma, "stepsize (empirical mode)")->capture_default_str();
    r1->add_option("--m", spec.m, "moment count (empirical mode)");
    r1->add_option("--k", spec.k, "iteration count (0 = schedule)");
    r1->add_option("--ell", spec.ell, "minimum spike separation")->capture_default_str();
    r1->add_option("--eps", spec.eps, "target accuracy")->capture_default_str();
    r1->add_option("--stride", spec.stride, "trajectory sampling stride (0 = auto)");
    add_common(r1);

    auto* rd = app.add_subcommand("recoverd", "d-dimensional recovery");
    rd->add_option("--n", spec.n, "number of points (default 3)");
    rd->add_option("--d", spec.d, "dimension (default 2)");
    rd->add_option("--algo", spec.algo, "deterministic | randomized")->capture_default_str();
    rd->add_option("--beta", spec.beta, "coordinate separation, deterministic (default 0.4)");
    rd->add_option("--ell", spec.ell, "Euclidean separation, randomized (default 0.8)");
    rd->add_option("--kappa", spec.kappa, "failure probability budget")->capture_default_str();
    rd->add_option("--eps", spec.eps, "target accuracy (default 0.05)");
    rd->add_option("--stride", spec.stride, "trajectory sampling stride (0 = auto)");
    add_common(rd);

    auto* nn = app.add_subcommand("nn-demo",
                                  "toy single-layer network trained by particle descent");
    nn->add_option("--n", spec.n, "number of neurons")->capture_default_str();
    nn->add_option("--gamma", spec.gamma, "stepsize")->capture_default_str();
    nn->add_option("--samples", spec.samples, "Monte Carlo samples")->capture_default_str();
    nn->add_option("--max-iters", spec.max_iters, "iteration cap (0 = contraction budget)");
    add_common(nn);

    auto* bc = app.add_subcommand("bounds-check",
                                  "truncated sign-expansion error bounds on a grid");
    bc->add_option("--mB", spec.mb, "expansion indices (default 16 64 256 / 13 20 50)");
    add_common(bc);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : sparse_recover::cli::kExitUsage;
    }

    // recoverd defaults differ from the struct defaults; apply them only
    // where neither a flag nor a config entry set the value
    if (rd->parsed()) {
        if (rd->count("--n") == 0) spec.n = 3;
        if (rd->count("--d") == 0) spec.d = 2;
        if (rd->count("--beta") == 0) spec.beta = 0.4;
        if (rd->count("--ell") == 0) spec.ell = 0.8;
        if (rd->count("--eps") == 0) spec.eps = 0.05;
    }

    spec.command = app.get_subcommands().front()->get_name();
    return sparse_recover::cli::run(spec);
}
