// Command-line benchmark runner: reproduces the dt/mu/Ising/norm-ratio
// sweeps as CSV datasets, exports gate programs, and runs one-off composed
// evolutions. Exit code is 0 iff every requested assertion passed.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "trotter/bench.hpp"

namespace {

using namespace trotter;

std::vector<FormulaId> parse_formulas(const std::string& csv) {
    std::vector<FormulaId> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(formula_from_string(item));
    }
    if (out.empty()) throw Error("--formulas: empty list");
    return out;
}

std::vector<Assignment> parse_assignments(const std::string& s) {
    if (s == "both") return {Assignment::TermA_to_X, Assignment::TermA_to_Y};
    return {assignment_from_string(s)};
}

void write_output(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open output file: " + path);
    f << text;
    if (!f) throw Error("failed writing output file: " + path);
}

int finish_sweep(const SweepOutcome& out, const std::string& out_path) {
    write_output(out.csv, out_path);
    std::cerr << out.assertion_table();
    return out.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Time-dependent two-term Trotterization benchmarks"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand
    app.set_config("--config", "", "key=value configuration file; flags override it");

    std::string formulas_csv = "midpoint,mft,nine_exp,suzuki4";
    std::string assignment = "both";
    std::string out_path;
    double oracle_tol = -1.0;  // per-experiment default when negative

    app.add_option("--formulas", formulas_csv,
                   "comma list of midpoint,hdr,mft,nine_exp,suzuki4,mst");
    app.add_option("--assignment", assignment, "both | a_to_x | a_to_y");
    app.add_option("--oracle-tol", oracle_tol, "reference propagator tolerance");
    app.add_option("--out", out_path, "output path (default: stdout)");

    // dt-sweep
    auto* dt_cmd = app.add_subcommand("dt-sweep", "single-window errors vs dt at fixed mu");
    DtSweepConfig dt_cfg;
    dt_cmd->add_option("--mu", dt_cfg.mu, "window midpoint");
    dt_cmd->add_option("--dt-min", dt_cfg.dt_min);
    dt_cmd->add_option("--dt-max", dt_cfg.dt_max);
    dt_cmd->add_option("--points", dt_cfg.n_points, "grid size (>= 4)");
    dt_cmd->add_option("--r2-min", dt_cfg.r2_min, "<= 0 disables the r2 assertion");

    // mu-sweep
    auto* mu_cmd = app.add_subcommand("mu-sweep", "errors vs mu with dt tied to the norm");
    MuSweepConfig mu_cfg;
    mu_cmd->add_option("--mu-min", mu_cfg.mu_min);
    mu_cmd->add_option("--mu-max", mu_cfg.mu_max);
    mu_cmd->add_option("--points", mu_cfg.n_points);
    mu_cmd->add_option("--dt-scale", mu_cfg.dt_scale, "dt = scale/sqrt(1+mu^2)");

    // ising-bench
    auto* is_cmd = app.add_subcommand("ising-bench", "global errors vs gate count on the chain");
    IsingBenchConfig is_cfg;
    std::string steps_csv = "5,10,20,50,100,200,400";
    is_cmd->add_option("--L", is_cfg.params.L);
    is_cmd->add_option("--J", is_cfg.params.J);
    is_cmd->add_option("--hz", is_cfg.params.hz);
    is_cmd->add_option("--hx", is_cfg.params.hx);
    is_cmd->add_option("--ti", is_cfg.t_i);
    is_cmd->add_option("--tf", is_cfg.t_f);
    is_cmd->add_option("--steps", steps_csv, "comma list of step counts");
    is_cmd->add_option("--asymptotic-min", is_cfg.asymptotic_min_steps,
                       "smallest N used for fits and orderings");

    // norm-ratio
    auto* nr_cmd = app.add_subcommand("norm-ratio", "spectral/Frobenius error ratio stability");
    NormRatioConfig nr_cfg;
    nr_cmd->add_option("--mu", nr_cfg.grid.mu);
    nr_cmd->add_option("--dt-min", nr_cfg.grid.dt_min);
    nr_cmd->add_option("--dt-max", nr_cfg.grid.dt_max);
    nr_cmd->add_option("--points", nr_cfg.grid.n_points);
    nr_cmd->add_option("--max-spread", nr_cfg.max_spread);

    // export-gates
    auto* eg_cmd = app.add_subcommand("export-gates", "JSON-lines gate program of an evolution");
    ExportGatesConfig eg_cfg;
    std::string eg_formula = "midpoint";
    eg_cmd->add_option("--formula", eg_formula);
    eg_cmd->add_option("--L", eg_cfg.params.L);
    eg_cmd->add_option("--J", eg_cfg.params.J);
    eg_cmd->add_option("--hz", eg_cfg.params.hz);
    eg_cmd->add_option("--hx", eg_cfg.params.hx);
    eg_cmd->add_option("--ti", eg_cfg.t_i);
    eg_cmd->add_option("--tf", eg_cfg.t_f);
    eg_cmd->add_option("-N,--N", eg_cfg.n_steps, "number of windows (0: header only)");

    // evolve
    auto* ev_cmd = app.add_subcommand("evolve", "composed evolution of one model");
    EvolveConfig ev_cfg;
    std::string ev_model = "ising";
    std::string ev_formula = "mft";
    ev_cmd->add_option("--model", ev_model, "ising | lz");
    ev_cmd->add_option("--formula", ev_formula);
    ev_cmd->add_option("--L", ev_cfg.params.L);
    ev_cmd->add_option("--J", ev_cfg.params.J);
    ev_cmd->add_option("--hz", ev_cfg.params.hz);
    ev_cmd->add_option("--hx", ev_cfg.params.hx);
    ev_cmd->add_option("--ti", ev_cfg.t_i);
    ev_cmd->add_option("--tf", ev_cfg.t_f);
    ev_cmd->add_option("-N,--N", ev_cfg.n_steps);

    CLI11_PARSE(app, argc, argv);

    try {
        const auto formulas = parse_formulas(formulas_csv);
        const auto assignments = parse_assignments(assignment);

        if (dt_cmd->parsed()) {
            dt_cfg.formulas = formulas;
            dt_cfg.assignments = assignments;
            if (oracle_tol > 0) dt_cfg.oracle_tol = oracle_tol;
            return finish_sweep(run_dt_sweep(dt_cfg), out_path);
        }
        if (mu_cmd->parsed()) {
            mu_cfg.formulas = formulas;
            mu_cfg.assignments = assignments;
            if (oracle_tol > 0) mu_cfg.oracle_tol = oracle_tol;
            return finish_sweep(run_mu_sweep(mu_cfg), out_path);
        }
        if (is_cmd->parsed()) {
            is_cfg.formulas = formulas;
            if (oracle_tol > 0) is_cfg.oracle_tol = oracle_tol;
            is_cfg.steps.clear();
            std::stringstream ss(steps_csv);
            std::string item;
            while (std::getline(ss, item, ','))
                if (!item.empty()) is_cfg.steps.push_back(std::stoi(item));
            return finish_sweep(run_ising_bench(is_cfg), out_path);
        }
        if (nr_cmd->parsed()) {
            nr_cfg.grid.formulas = formulas;
            nr_cfg.grid.assignments = assignments;
            if (oracle_tol > 0) nr_cfg.grid.oracle_tol = oracle_tol;
            return finish_sweep(run_norm_ratio(nr_cfg), out_path);
        }
        if (eg_cmd->parsed()) {
            eg_cfg.formula = formula_from_string(eg_formula);
            write_output(export_gates_text(eg_cfg), out_path);
            return 0;
        }
        if (ev_cmd->parsed()) {
            ev_cfg.model = ev_model == "lz" ? ModelKind::LandauZener : ModelKind::Ising;
            ev_cfg.formula = formula_from_string(ev_formula);
            ev_cfg.assignment = assignments.front();
            if (oracle_tol > 0) ev_cfg.oracle_tol = oracle_tol;
            const auto out = run_evolve(ev_cfg);
            write_output(out.csv, out_path);
            return out.point.status == "ok" ? 0 : 1;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
