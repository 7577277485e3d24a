#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "twobridge/cli.hpp"
#include "twobridge/errors.hpp"

using namespace twobridge;

int main(int argc, char** argv) {
    CLI::App app{"invariants of the genus-one two-bridge knots J(2m,2n): "
                 "nonabelian representations, twisted Alexander polynomials, torsion"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string x_text, format_text = "json";

    auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", format_text, "json, csv, or pretty")
            ->check(CLI::IsMember({"json", "csv", "pretty"}));
    };

    CLI::App* inv = app.add_subcommand("invariants",
                                       "representation roots and invariants at one x");
    inv->add_option("--m", cfg.m, "first twist parameter (J(2m,2n))")->required();
    inv->add_option("--n", cfg.n, "second twist parameter")->required();
    inv->add_option("--x", x_text, "meridian trace, e.g. 1.5 or 1+0.7i")->required();
    long p = 0, q = 0;
    CLI::Option* popt = inv->add_option("--p", p, "surgery slope numerator");
    CLI::Option* qopt = inv->add_option("--q", q, "surgery slope denominator");
    inv->add_option("--tol", cfg.tol, "residual tolerance for exit status");
    inv->add_option("--perturb", cfg.perturb, "offset each root y (negative-control hook)");
    add_format(inv);

    CLI::App* ver = app.add_subcommand("verify", "run the identity suites");
    int vm = 0, vn = 0;
    CLI::Option* vmopt = ver->add_option("--m", vm, "restrict grid to this m");
    CLI::Option* vnopt = ver->add_option("--n", vn, "restrict grid to this n");
    ver->add_option("--perturb", cfg.perturb, "offset each root y (negative-control hook)");

    CLI::App* tab = app.add_subcommand("table", "sweep x along a grid, CSV output");
    tab->add_option("--m", cfg.m, "first twist parameter")->required();
    tab->add_option("--n", cfg.n, "second twist parameter")->required();
    tab->add_option("--grid", cfg.grid, "START:END:COUNT, complex endpoints")->required();
    tab->add_option("--perturb", cfg.perturb, "offset each root y (negative-control hook)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    if (format_text == "csv")
        cfg.format = OutputFormat::csv;
    else if (format_text == "pretty")
        cfg.format = OutputFormat::pretty;

    if (inv->parsed()) {
        try {
            cfg.x = parse_complex(x_text);
        } catch (const error& e) {
            std::cerr << e.what() << "\n";
            return 1;
        }
        if (popt->count()) cfg.p = p;
        if (qopt->count()) cfg.q = q;
        return cmd_invariants(cfg, std::cout, std::cerr);
    }
    if (ver->parsed()) {
        if (vmopt->count()) cfg.verify_m = vm;
        if (vnopt->count()) cfg.verify_n = vn;
        return cmd_verify(cfg, std::cout, std::cerr);
    }
    return cmd_table(cfg, std::cout, std::cerr);
}
