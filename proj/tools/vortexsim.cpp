// Batch front end: simulate | oracle | figures | verify | slopes.
// Exit codes: 0 completed (a detected collision is a result, not an error),
// 1 failed verify property, 2 spec/usage error, 3 numerical failure.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vortex/analytic.hpp"
#include "vortex/batch.hpp"
#include "vortex/io.hpp"
#include "vortex/scenario.hpp"

namespace fs = std::filesystem;
using namespace vortex;

namespace {

void write_file(const fs::path& path, const std::string& content) {
    fs::create_directories(path.parent_path().empty() ? "." : path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

int cmd_simulate(const std::string& spec_path, const std::string& out_dir) {
    const ScenarioSpec spec = load_scenario_file(spec_path);
    const Trajectory traj = run_scenario(spec);
    const fs::path dir(out_dir);
    write_file(dir / spec.trajectory_csv, trajectory_csv(traj));
    write_file(dir / spec.events_json, events_json(traj).dump(2) + "\n");
    std::cout << "terminal=" << terminal_kind_name(traj.terminal.kind)
              << " t=" << format_double(traj.terminal.t) << " samples=" << traj.times.size()
              << "\n";
    if (traj.terminal.kind == TerminalKind::StepFloor ||
        traj.terminal.kind == TerminalKind::StepBudget) {
        std::cerr << "numerical failure: integration stopped by "
                  << terminal_kind_name(traj.terminal.kind) << " at t="
                  << format_double(traj.terminal.t) << "\n";
        return 3;
    }
    return 0;
}

int cmd_oracle(const std::string& spec_path, const std::string& out_dir) {
    const ScenarioSpec spec = load_scenario_file(spec_path);
    const OracleComparison cmp = compare_with_oracle(spec);
    nlohmann::json j{{"oracle", cmp.oracle},
                     {"max_rel_deviation", cmp.max_rel_deviation},
                     {"t_compared", cmp.t_compared},
                     {"samples", cmp.samples}};
    const std::string text = j.dump(2) + "\n";
    std::cout << text;
    if (!out_dir.empty()) write_file(fs::path(out_dir) / "oracle.json", text);
    return 0;
}

int cmd_figures(int figure, const std::string& out_dir) {
    const std::vector<FigureSeries> series = figure_data(figure);
    for (const FigureSeries& s : series) {
        const fs::path path = fs::path(out_dir) / ("fig" + std::to_string(s.figure) + "_n" +
                                                   std::to_string(s.n) + ".csv");
        write_file(path, ring_trajectory_csv(s.traj));
        std::cout << path.string() << " rows=" << s.traj.times.size()
                  << (s.traj.reached_floor
                          ? " rho1_zero_at=" + format_double(s.traj.t_final)
                          : "")
                  << "\n";
    }
    return 0;
}

int cmd_verify(const std::string& suite, uint64_t seed, int samples, bool serial,
               const std::string& out_dir) {
    std::vector<std::string> names;
    if (suite == "all") {
        names = verify_suite_names();
    } else {
        if (!has_verify_suite(suite)) {
            std::cerr << "unknown suite '" << suite << "'; available:\n";
            for (const std::string& n : verify_suite_names()) std::cerr << "  " << n << "\n";
            return 2;
        }
        names.push_back(suite);
    }
    bool all_pass = true;
    nlohmann::json report = nlohmann::json::array();
    for (const std::string& name : names) {
        const PropertyResult res = run_verify_suite(name, seed, samples, !serial);
        all_pass = all_pass && res.pass;
        std::cout << (res.pass ? "PASS" : "FAIL") << " " << res.name
                  << " samples=" << res.samples << " worst=" << format_double(res.worst)
                  << " tol=" << format_double(res.tolerance)
                  << (res.note.empty() ? "" : " note=" + res.note) << "\n";
        report.push_back({{"suite", res.name},
                          {"pass", res.pass},
                          {"samples", res.samples},
                          {"worst", res.worst},
                          {"tolerance", res.tolerance},
                          {"note", res.note}});
    }
    if (!out_dir.empty())
        write_file(fs::path(out_dir) / "verify.json", report.dump(2) + "\n");
    return all_pass ? 0 : 1;
}

int cmd_slopes(int n_min, int n_max, const std::vector<int>& families) {
    std::cout << "family  n  alpha              beta               sum   residual\n";
    for (int family : families) {
        for (int n = n_min; n <= n_max; ++n) {
            std::cout << family << "       " << n << "  ";
            try {
                const SlopePair p = solve_asymptotic_slopes(n, family);
                std::cout << format_double(p.alpha) << "  " << format_double(p.beta) << "  "
                          << format_double(p.alpha + p.beta) << "  "
                          << format_double(slope_residual(p))
                          << (p.degenerate ? "  (degenerate: equal slopes)" : "") << "\n";
            } catch (const NoSlopeRootError& e) {
                std::cout << "no positive slope pair (" << e.what() << ")\n";
            }
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"vortex dynamics batch tool"};
    app.require_subcommand(1);

    std::string spec_path, out_dir = ".";
    int figure = 2;
    std::string suite = "all";
    uint64_t seed = 1;
    int samples = 50;
    bool serial = false;
    int n_min = 2, n_max = 8;
    std::vector<int> families = {1, 2, 3, 4, 5, 6};

    auto* sim = app.add_subcommand("simulate", "integrate a scenario spec");
    sim->add_option("--spec", spec_path, "scenario spec JSON")->required();
    sim->add_option("--out", out_dir, "output directory");

    auto* orc = app.add_subcommand("oracle", "compare a scenario against its closed form");
    orc->add_option("--spec", spec_path, "scenario spec JSON")->required();
    orc->add_option("--out", out_dir, "output directory");

    auto* fig = app.add_subcommand("figures", "emit two-ring figure data CSVs");
    fig->add_option("--figure", figure, "figure id (2..5)")->required();
    fig->add_option("--out", out_dir, "output directory");

    auto* ver = app.add_subcommand("verify", "run seeded property suites");
    ver->add_option("--suite", suite, "suite name or 'all'");
    ver->add_option("--seed", seed, "random seed");
    ver->add_option("--samples", samples, "samples per suite");
    ver->add_flag("--serial", serial, "disable parallel sample evaluation");
    ver->add_option("--out", out_dir, "output directory");

    auto* slo = app.add_subcommand("slopes", "print asymptotic slope pairs");
    slo->add_option("--n-min", n_min, "smallest ring count");
    slo->add_option("--n-max", n_max, "largest ring count");
    slo->add_option("--families", families, "slope families (1..6)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (sim->parsed()) return cmd_simulate(spec_path, out_dir);
        if (orc->parsed()) return cmd_oracle(spec_path, out_dir);
        if (fig->parsed()) return cmd_figures(figure, out_dir);
        if (ver->parsed()) return cmd_verify(suite, seed, samples, serial, out_dir);
        if (slo->parsed()) return cmd_slopes(n_min, n_max, families);
    } catch (const SpecError& e) {
        std::cerr << "spec error: " << e.what() << "\n";
        return 2;
    } catch (const NoOracleError& e) {
        std::cerr << "oracle error: " << e.what() << "\n";
        return 2;
    } catch (const DegenerateConfigurationError& e) {
        std::cerr << "spec error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "spec error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
