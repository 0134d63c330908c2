#pragma once

#include <optional>
#include <string>
#include <vector>

#include "trotter/models.hpp"
#include "trotter/reference.hpp"

namespace trotter {

/// One sweep data point. eps fields are absent when the point failed;
/// status then carries a machine-readable code instead of "ok".
struct PointResult {
    FormulaId formula;
    Assignment assignment = Assignment::TermA_to_X;
    double mu = 0.0;
    double dt = 0.0;
    int n_steps = 1;
    long n_exponentials = 0;
    long n_gates = 0;
    std::optional<double> eps_f, eps_s;
    std::string status = "ok";
};

struct FitResult {
    FormulaId formula;
    Assignment assignment;
    double slope = 0.0;
    double r2 = 0.0;
    int n_points = 0;
};

struct Assertion {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct SweepOutcome {
    std::vector<PointResult> points;
    std::vector<FitResult> fits;
    std::vector<Assertion> assertions;
    std::string csv;

    bool all_pass() const;
    /// One line per assertion, for the stderr summary table.
    std::string assertion_table() const;
};

struct DtSweepConfig {
    double mu = 1.0;
    double dt_min = 0.02;
    double dt_max = 0.4;
    int n_points = 8;  // >= 4
    std::vector<FormulaId> formulas = {FormulaId::Midpoint, FormulaId::MFT, FormulaId::NineExp,
                                       FormulaId::Suzuki4};
    std::vector<Assignment> assignments = {Assignment::TermA_to_X, Assignment::TermA_to_Y};
    double oracle_tol = 1e-13;
    double r2_min = 0.999;  // <= 0 disables the r2 assertion
    /// Allowed deviation of the fitted slope from (order + 1).
    double slope_tol_order2 = 0.15, slope_tol_order4 = 0.2, slope_tol_order6 = 0.3;
};

/// Single-window errors on the two-level avoided-crossing model across a
/// log-spaced dt grid, with slope fits per (formula, assignment).
SweepOutcome run_dt_sweep(const DtSweepConfig& cfg);

struct MuSweepConfig {
    double mu_min = 1e-2;
    double mu_max = 1e2;
    int n_points = 25;
    double dt_scale = 0.1;  // dt = dt_scale / sqrt(1 + mu^2)
    std::vector<FormulaId> formulas = {FormulaId::Midpoint, FormulaId::MFT, FormulaId::NineExp,
                                       FormulaId::Suzuki4};
    std::vector<Assignment> assignments = {Assignment::TermA_to_X, Assignment::TermA_to_Y};
    double oracle_tol = 1e-13;
    double tail_mu = 30.0;       // large-mu fit window (deep tail; the small-gamma
                                 // assignment approaches 1/mu slowly)
    double small_mu = 0.1;       // monotonicity window for the degenerate assignment
    double tail_slope_tol = 0.15;
    double ratio_lo = 5.0, ratio_hi = 20.0;
};

/// Errors across window midpoints with dt tied to the generator norm.
SweepOutcome run_mu_sweep(const MuSweepConfig& cfg);

struct IsingBenchConfig {
    IsingParams params{6, -1.0, 0.2, -2.0};
    double t_i = 0.0;
    double t_f = 3.14159265358979323846;
    std::vector<int> steps = {5, 10, 20, 50, 100, 200, 400};
    std::vector<FormulaId> formulas = {FormulaId::Midpoint, FormulaId::MFT, FormulaId::NineExp,
                                       FormulaId::Suzuki4};
    double oracle_tol = 1e-9;
    int asymptotic_min_steps = 20;  // fit and ordering window
    double slope_tol_order2 = 0.15, slope_tol_order4 = 0.2;
};

/// Global evolution errors against gate counts on the driven spin chain.
SweepOutcome run_ising_bench(const IsingBenchConfig& cfg);

struct NormRatioConfig {
    DtSweepConfig grid;           // the underlying dt sweep
    double max_spread = 0.20;     // (max-min)/(max+min) per formula
};

/// Spectral/Frobenius error ratio per formula across the dt grid.
SweepOutcome run_norm_ratio(const NormRatioConfig& cfg);

struct ExportGatesConfig {
    FormulaId formula = FormulaId::Midpoint;
    IsingParams params{6, -1.0, 0.2, -2.0};
    double t_i = 0.0;
    double t_f = 3.14159265358979323846;
    int n_steps = 10;  // 0 emits the header only
};

/// Gate program of the composed evolution, JSON-lines (header first).
std::string export_gates_text(const ExportGatesConfig& cfg);

enum class ModelKind { LandauZener, Ising };

struct EvolveConfig {
    ModelKind model = ModelKind::Ising;
    FormulaId formula = FormulaId::MFT;
    Assignment assignment = Assignment::TermA_to_X;  // two-level model only
    IsingParams params{6, -1.0, 0.2, -2.0};
    double t_i = 0.0;
    double t_f = 3.14159265358979323846;
    int n_steps = 100;
    double oracle_tol = 1e-11;
};

struct EvolveOutcome {
    PointResult point;
    double unitarity_defect = 0.0;
    std::string csv;
};

/// Composed evolution of a benchmark model plus its error metrics.
EvolveOutcome run_evolve(const EvolveConfig& cfg);

/// Log-spaced grid between lo and hi inclusive.
std::vector<double> log_grid(double lo, double hi, int n);

}  // namespace trotter
