#include <iostream>
#include <optional>
#include <set>

#include <CLI11.hpp>

#include "cli.hpp"

using namespace schwarzf2;
using namespace schwarzf2::cli;

int main(int argc, char** argv)
{
    CLI::App app{"schwarzf2: periods, Schwarz map, theta inverse and monodromy of the Appell F2 system"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string config_path, grid_text;
    auto* o_abs = app.add_option("--abs-eps", cfg.tol.abs_eps, "absolute quadrature tolerance");
    auto* o_rel = app.add_option("--rel-eps", cfg.tol.rel_eps, "relative quadrature tolerance");
    auto* o_levels = app.add_option("--quad-levels", cfg.tol.quad_levels, "maximum tanh-sinh refinement levels");
    auto* o_format = app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "csv"}));
    auto* o_unval = app.add_flag("--unvalidated", cfg.unvalidated, "allow points off the real chamber");
    auto* o_grid = app.add_option("--grid", grid_text, "grid a:b:step used for both coordinates");
    auto* o_table = app.add_flag("--emit-table", cfg.emit_table, "emit grids as CSV tables");
    app.add_option("--config", config_path, "file of key=value lines; flags take precedence");

    std::optional<double> fx1, fx2;
    auto* forward_cmd = app.add_subcommand("forward", "Schwarz image (y1, y2, tau) of x = (x1, x2)");
    forward_cmd->add_option("x1", fx1);
    forward_cmd->add_option("x2", fx2);

    double iy[6] = {};
    auto* inverse_cmd = app.add_subcommand("inverse", "(x1, x2) from y1_re y1_im y2_re y2_im tau_re tau_im");
    for (int k = 0; k < 6; ++k) {
        static const char* names[] = {"y1_re", "y1_im", "y2_re", "y2_im", "tau_re", "tau_im"};
        inverse_cmd->add_option(names[k], iy[k])->required();
    }

    std::string suite = "all";
    auto* verify_cmd = app.add_subcommand("verify", "run an identity suite and report every check");
    verify_cmd->add_option("suite", suite)
        ->check(CLI::IsMember({"theta", "periods", "curve", "schwarz", "monodromy", "all"}));

    std::string action, matrix_input;
    bool signed_group = false;
    auto* mono_cmd = app.add_subcommand("monodromy", "membership and decomposition in the monodromy group");
    mono_cmd->add_option("action", action)->required()->check(CLI::IsMember({"check", "decompose"}));
    mono_cmd->add_option("matrix", matrix_input, "JSON text, file path, '-', M1..M5 or E4")->required();
    mono_cmd->add_flag("--signed", signed_group, "decompose in the group extended by -E4");

    std::optional<double> px1, px2;
    auto* periods_cmd = app.add_subcommand("periods", "period vector f1..f4 at x or over the grid");
    periods_cmd->add_option("x1", px1);
    periods_cmd->add_option("x2", px2);

    auto* table_cmd = app.add_subcommand("table", "Schwarz images over the grid");

    for (auto* sub : {forward_cmd, inverse_cmd, verify_cmd, mono_cmd, periods_cmd, table_cmd})
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitParse;
    }

    try {
        std::set<std::string> given;
        const std::pair<CLI::Option*, const char*> tracked[] = {
            {o_abs, "abs_eps"},       {o_rel, "rel_eps"}, {o_levels, "quad_levels"}, {o_format, "format"},
            {o_unval, "unvalidated"}, {o_grid, "grid"},   {o_table, "emit_table"},
        };
        for (const auto& [opt, key] : tracked)
            if (opt->count() > 0)
                given.insert(key);
        if (!config_path.empty())
            apply_config_file(config_path, cfg, given);
        if (!grid_text.empty())
            cfg.grid = parse_grid(grid_text);

        auto pair_of = [](const std::optional<double>& a,
                          const std::optional<double>& b) -> std::optional<std::pair<double, double>> {
            if (a.has_value() != b.has_value())
                throw ParseError("give both x1 and x2, or neither to use the grid");
            if (!a)
                return std::nullopt;
            return std::pair{*a, *b};
        };

        Output out;
        if (*forward_cmd)
            out = cmd_forward(pair_of(fx1, fx2), cfg);
        else if (*inverse_cmd)
            out = cmd_inverse({iy[0], iy[1]}, {iy[2], iy[3]}, {iy[4], iy[5]}, cfg);
        else if (*verify_cmd)
            out = cmd_verify(suite, cfg);
        else if (*mono_cmd)
            out = cmd_monodromy(action, matrix_input, signed_group, cfg);
        else if (*periods_cmd)
            out = cmd_periods(pair_of(px1, px2), cfg);
        else
            out = cmd_table(cfg);
        std::cout << out.text;
        return out.exit_code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    }
}
