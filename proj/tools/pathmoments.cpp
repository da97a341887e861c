// pathmoments: power sums of Dyck/Motzkin path areas, closed-form fits,
// standardized-moment limits and the Brownian excursion comparison.

#include "pathmoments/commands.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>

namespace {

using namespace pathmoments;
using namespace pathmoments::cli;

struct raw_options {
    std::string family;
    unsigned r_max = 20;
    unsigned n_max = 0;
    unsigned n_base = 1024;
    unsigned levels = 4;
    unsigned precision = 60;
    unsigned guard = default_guard;
    std::string format = "json";
    std::string out;
    bool allow_large = false;
};

void add_common(CLI::App* cmd, raw_options& o, bool needs_family) {
    auto* fam = cmd->add_option("--family", o.family, "dyck or motzkin");
    if (needs_family) fam->required();
    cmd->add_option("--rmax", o.r_max, "largest power r (default 20)");
    cmd->add_option("--nmax", o.n_max, "largest path size n in the table");
    cmd->add_option("--nbase", o.n_base, "smallest n of the extrapolation ladder (default 1024)");
    cmd->add_option("--levels", o.levels, "ladder levels, n quadruples per level (default 4)");
    cmd->add_option("--precision", o.precision, "significant decimal digits (default 60, minimum 30)");
    cmd->add_option("--guard", o.guard, "surplus equations per fit (default 10)");
    cmd->add_option("--format", o.format, "json, csv or latex (default json)");
    cmd->add_option("--out", o.out, "output file (default stdout)");
    cmd->add_flag("--allow-large", o.allow_large, "permit --rmax above 20");
}

run_config to_config(const raw_options& o, CLI::App* cmd) {
    run_config cfg;
    if (cmd->count("--family")) cfg.path_family = parse_family(o.family);
    cfg.r_max = o.r_max;
    if (cmd->count("--nmax")) cfg.n_max = o.n_max;
    cfg.n_base = o.n_base;
    cfg.levels = o.levels;
    cfg.precision_digits = o.precision;
    cfg.guard = o.guard;
    cfg.format = parse_format(o.format);
    cfg.allow_large = o.allow_large;
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact area moments of Dyck and Motzkin paths"};
    app.require_subcommand(1);
    raw_options opts;
    auto* powersums = app.add_subcommand("powersums", "dump the exact power-sum table");
    auto* fit = app.add_subcommand("fit", "guess closed forms for r = 1..rmax and verify them");
    auto* moments = app.add_subcommand("moments", "extrapolated limits of standardized moments");
    auto* compare = app.add_subcommand("compare", "compare lattice limits with Brownian excursion moments");
    auto* excursion = app.add_subcommand("excursion", "Brownian excursion area moments up to k = rmax");
    add_common(powersums, opts, true);
    add_common(fit, opts, true);
    add_common(moments, opts, true);
    add_common(compare, opts, false);
    add_common(excursion, opts, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_code::input_error;
    }

    CLI::App* chosen = app.get_subcommands().front();
    command_output result;
    try {
        const run_config cfg = to_config(opts, chosen);
        const budget limit = budget::from_environment();
        if (chosen == powersums) result = cmd_powersums(cfg, limit);
        else if (chosen == fit) result = cmd_fit(cfg, limit);
        else if (chosen == moments) result = cmd_moments(cfg, limit);
        else if (chosen == compare) result = cmd_compare(cfg, limit);
        else result = cmd_excursion(cfg, limit);
    } catch (const resource_budget_exceeded& e) {
        std::cerr << "pathmoments: " << e.what() << "; no output written\n";
        return exit_code::input_error;
    } catch (const precondition_error& e) {
        std::cerr << "pathmoments: " << e.what() << "\n\n" << chosen->help();
        return exit_code::input_error;
    } catch (const std::exception& e) {
        std::cerr << "pathmoments: " << e.what() << '\n';
        return exit_code::input_error;
    }

    if (!result.diagnostics.empty()) std::cerr << result.diagnostics;
    if (!result.artifact.empty()) {
        if (opts.out.empty()) {
            std::cout << result.artifact;
        } else {
            std::ofstream file(opts.out, std::ios::binary);
            if (!file) {
                std::cerr << "pathmoments: cannot write " << opts.out << '\n';
                return exit_code::input_error;
            }
            file << result.artifact;
        }
    }
    return result.exit_code;
}
