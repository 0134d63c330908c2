#pragma once

#include <string>
#include <vector>

#include "trotter/formulas.hpp"

namespace trotter {

enum class NormKind { Frobenius, Spectral };

/// One benchmark data point.
struct ErrorRecord {
    FormulaId formula;
    double mu = 0.0;
    double dt = 0.0;
    int n_steps = 1;
    long n_exponentials = 0;
    long n_gates = 0;  // 0 when the run has no gate model
    double eps_frobenius = 0.0;
    double eps_spectral = 0.0;

    static std::string csv_header();
    std::string csv_row() const;
};

/// Which product formula backs the propagator cross-check. Auto picks the
/// sixth-order scheme and falls back to the fourth-order composition when
/// a sub-window trips a beta degeneracy gate; the fourth-order composition
/// is also the cheap default inside sweeps.
enum class CrossCheck { Suzuki4, MST, Off };

struct OracleOptions {
    double tol = 1e-12;  // >= 1e-13
    CrossCheck cross_check = CrossCheck::Suzuki4;
};

/// Propagator of dS/dt = A(t) S from t0 to t1 (either direction) by an
/// embedded 5(4) Runge-Kutta pair under local-error control at
/// tol/(|t1-t0| * dim), cross-validated against a self-converged composed
/// product-formula evolution; the two routes must agree within 10*tol or
/// OracleMismatchError is thrown.
CMatrix exact_propagator(const TwoTermGenerator& gen, double t0, double t1,
                         const OracleOptions& opts = {});

/// || exact - formula || over one window in the requested norm.
double trotter_error(const TwoTermGenerator& gen, FormulaId id, const Window& w,
                     NormKind norm, const OracleOptions& opts = {});

/// Both norms of the single-window formula error against a precomputed
/// exact propagator (lets sweeps share one oracle across formulas).
std::pair<double, double> trotter_error_both(const CMatrix& exact,
                                             const ExponentSchedule& schedule,
                                             const TwoTermGenerator& gen);

/// Left-ordered product of per-window schedules over N uniform steps
/// covering [t_i, t_f]. Failures are annotated with the failing step.
CMatrix composed_evolution(const TwoTermGenerator& gen, FormulaId id, double t_i, double t_f,
                           int n_steps);

/// Least-squares slope of log(eps) against log(dt) plus the coefficient of
/// determination. Requires >= 4 points, all above 10x the roundoff floor.
std::pair<double, double> order_fit(const std::vector<std::pair<double, double>>& points,
                                    double roundoff_floor = 1e-14);

}  // namespace trotter
