#include "sgeom/catalog.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

namespace {

struct CommonArgs {
    std::string input;  // catalog name or config file path
    double tol = 1e-8;
    double rank_tol = 1e-9;
    std::uint64_t seed = 1;
    int points = 0;
    std::string report_path;
};

void add_common(CLI::App* cmd, CommonArgs& a) {
    cmd->add_option("metric", a.input, "catalog entry name or path to a metric config file")
        ->required();
    cmd->add_option("--tol", a.tol, "identity residual tolerance (relative)");
    cmd->add_option("--rank-tol", a.rank_tol, "rank cutoff tolerance (relative)");
    cmd->add_option("--seed", a.seed, "random seed for sampled fields and points");
    cmd->add_option("--points", a.points, "extra random sample points drawn from the box");
    cmd->add_option("--report", a.report_path, "write the report to this file");
}

sgeom::MetricSpec resolve(const std::string& input) {
    for (const sgeom::MetricSpec& s : sgeom::catalog())
        if (s.name == input) return s;
    return sgeom::load_spec(input);
}

int emit(const sgeom::RunReport& rep, const std::string& report_path) {
    const std::string text = rep.text();
    std::cout << text;
    if (!report_path.empty()) {
        std::ofstream out(report_path, std::ios::binary);
        if (!out) {
            std::cerr << "error: cannot write '" << report_path << "'\n";
            return 2;
        }
        out << text;
    }
    return rep.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"singular semi-Riemannian geometry toolkit"};
    app.require_subcommand(1);

    CommonArgs check_args, curv_args, verify_args;
    CLI::App* check = app.add_subcommand("check", "rank and radical-stationarity classification");
    add_common(check, check_args);
    CLI::App* curv = app.add_subcommand("curvature", "curvature tables and symmetry residuals");
    add_common(curv, curv_args);
    CLI::App* verify = app.add_subcommand("verify", "full identity suite with random fields");
    add_common(verify, verify_args);
    CLI::App* cat = app.add_subcommand("catalog", "list built-in metrics");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (cat->parsed()) {
            for (const sgeom::MetricSpec& s : sgeom::catalog()) {
                std::printf("%-18s dim=%zu", s.name.c_str(), s.dim());
                if (!s.expect.empty()) std::printf("  expect=%s", s.expect.c_str());
                if (!s.locus_hint.empty()) std::printf("  locus: %s", s.locus_hint.c_str());
                std::printf("\n");
            }
            return 0;
        }

        const CommonArgs& a =
            check->parsed() ? check_args : (curv->parsed() ? curv_args : verify_args);
        sgeom::RunOptions opt;
        opt.tol = a.tol;
        opt.rank_tol = a.rank_tol;
        opt.seed = a.seed;
        opt.random_points = a.points;

        const sgeom::MetricSpec spec = resolve(a.input);
        sgeom::RunReport rep;
        if (check->parsed())
            rep = sgeom::cmd_check(spec, opt);
        else if (curv->parsed())
            rep = sgeom::cmd_curvature(spec, opt);
        else
            rep = sgeom::cmd_verify(spec, opt);
        return emit(rep, a.report_path);
    } catch (const sgeom::SpecError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const sgeom::ParseError& e) {
        std::cerr << "expression error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
