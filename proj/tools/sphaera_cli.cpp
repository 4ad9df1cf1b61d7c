#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "sphaera/cli.hpp"

int main(int argc, char** argv) {
    using sphaera::Command;
    sphaera::RunConfig cfg;
    std::string command = "suite";

    CLI::App app{"Steiner symmetrization on the sphere: experiments and checks"};
    app.add_option("--cmd", command, "symmetrize | converge | sas | floating | winternitz | highdim | suite");
    app.add_option("--in", cfg.input, "region file (JSON)");
    app.add_option("--out", cfg.output, "CSV output path; stdout if omitted");
    app.add_option("--levels", cfg.levels, "theta levels per symmetral");
    app.add_option("--samples", cfg.samples, "smooth boundary samples; highdim: MC samples in units of 1e4");
    app.add_option("--restarts", cfg.restarts, "optimizer restarts");
    app.add_option("--seed", cfg.seed, "RNG seed");
    app.add_option("--eps", cfg.eps, "Hausdorff target for converge");
    app.add_option("--psi", cfg.psi, "axis direction for symmetrize");
    app.add_option("--n-max", cfg.n_max, "largest N for sas; largest N for floating rows");
    app.add_option("--iters", cfg.iterations, "iteration cap for converge");
    app.add_option("--x0", cfg.x0, "highdim: x0");
    app.add_option("--a-plus", cfg.a_plus, "highdim: A+");
    app.add_option("--b-plus", cfg.b_plus, "highdim: B+");
    app.add_option("--a-minus", cfg.a_minus, "highdim: A-");
    app.add_option("--b-minus", cfg.b_minus, "highdim: B-");
    app.add_option("--rotation", cfg.rotation, "highdim: rotation of the lune pair for the MC check");
    app.add_option("--grid", cfg.grid, "highdim: grid points per axis");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }
    const auto c = sphaera::parse_command(command);
    if (!c) {
        std::cerr << "usage: unknown command '" << command << "'\n";
        return 1;
    }
    cfg.command = *c;
    return sphaera::run(cfg, std::cout, std::cerr);
}
