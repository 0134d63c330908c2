#include "trotter/reference.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace trotter {

std::string ErrorRecord::csv_header() {
    return "formula,mu,dt,N,n_exponentials,n_gates,eps_frobenius,eps_spectral";
}

std::string ErrorRecord::csv_row() const {
    char buf[320];
    std::snprintf(buf, sizeof(buf), "%s,%.17g,%.17g,%d,%ld,%ld,%.17g,%.17g",
                  to_string(formula), mu, dt, n_steps, n_exponentials, n_gates, eps_frobenius,
                  eps_spectral);
    return buf;
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5c = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
// Difference between the 5th- and 4th-order weights.
constexpr double d1 = 71.0 / 57600, d3 = -71.0 / 16695, d4 = 71.0 / 1920,
                 d5 = -17253.0 / 339200, d6 = 22.0 / 525, d7 = -1.0 / 40;

struct RkResult {
    CMatrix matrix;
    int accepted_steps;
};

RkResult rk_propagator(const TwoTermGenerator& gen, double t0, double t1, double tol) {
    const int dim = gen.dim();
    CMatrix y = CMatrix::identity(dim);
    if (t1 == t0) return {y, 0};

    const double span = t1 - t0;
    const double dir = span > 0 ? 1.0 : -1.0;
    const double tol_density = tol / (std::abs(span) * dim);

    double t = t0;
    double h = dir * std::min(0.1, std::abs(span));
    auto rhs = [&gen](double tt, const CMatrix& s) { return gen.at(tt) * s; };

    CMatrix k1 = rhs(t, y);
    int accepted = 0;
    while ((t1 - t) * dir > 0.0) {
        if (std::abs(h) > std::abs(t1 - t)) h = t1 - t;
        if (std::abs(h) < 1e-14 * std::abs(span))
            throw StepUnderflowError("exact_propagator: step size underflow");

        const CMatrix k2 = rhs(t + c2 * h, y + (h * a21) * k1);
        const CMatrix k3 = rhs(t + c3 * h, y + (h * a31) * k1 + (h * a32) * k2);
        const CMatrix k4 = rhs(t + c4 * h, y + (h * a41) * k1 + (h * a42) * k2 + (h * a43) * k3);
        const CMatrix k5 = rhs(t + c5c * h, y + (h * a51) * k1 + (h * a52) * k2 +
                                                (h * a53) * k3 + (h * a54) * k4);
        const CMatrix k6 = rhs(t + h, y + (h * a61) * k1 + (h * a62) * k2 + (h * a63) * k3 +
                                          (h * a64) * k4 + (h * a65) * k5);
        const CMatrix y5 = y + (h * b1) * k1 + (h * b3) * k3 + (h * b4) * k4 + (h * b5) * k5 +
                           (h * b6) * k6;
        const CMatrix k7 = rhs(t + h, y5);  // FSAL stage

        const CMatrix err_m = (h * d1) * k1 + (h * d3) * k3 + (h * d4) * k4 + (h * d5) * k5 +
                              (h * d6) * k6 + (h * d7) * k7;
        const double err = frobenius_norm(err_m);
        const double budget = tol_density * std::abs(h);

        if (err <= budget) {
            t += h;
            y = y5;
            k1 = k7;
            ++accepted;
        }
        const double safety = err > 0.0 ? 0.9 * std::pow(budget / err, 0.2) : 5.0;
        h *= std::clamp(safety, 0.2, 5.0);
    }
    return {y, accepted};
}

// Composed product-formula propagator with step doubling until
// self-convergence. The convergence target and the caller's agreement
// budget both carry a roundoff floor that grows with the number of matrix
// factors in the composition.
struct CompositionResult {
    CMatrix matrix;
    double floor;  // roundoff allowance at the accepted resolution
};

CompositionResult converged_composition(const TwoTermGenerator& gen, FormulaId id, double t0,
                                        double t1, double target) {
    const double span = std::abs(t1 - t0);
    const double per_factor = 4e-16 * std::sqrt(static_cast<double>(gen.dim()));
    const int steps_per = formula_step_count(id);
    int n = std::max(1, static_cast<int>(std::ceil(span / 0.2)));
    CMatrix prev = composed_evolution(gen, id, t0, t1, n);
    const int n_cap = 1 << 16;
    while (n < n_cap) {
        n *= 2;
        CMatrix cur = composed_evolution(gen, id, t0, t1, n);
        const double floor = per_factor * static_cast<double>(n) * steps_per;
        if (frobenius_norm(cur - prev) <= std::max(target, floor)) return {cur, floor};
        prev = cur;
    }
    throw ConvergenceError("exact_propagator: cross-check composition did not self-converge");
}

}  // namespace

CMatrix exact_propagator(const TwoTermGenerator& gen, double t0, double t1,
                         const OracleOptions& opts) {
    if (opts.tol < 1e-13) throw Error("exact_propagator: tol must be >= 1e-13");
    RkResult rk = rk_propagator(gen, t0, t1, opts.tol);
    if (opts.cross_check == CrossCheck::Off || t0 == t1) return rk.matrix;

    FormulaId check = opts.cross_check == CrossCheck::MST ? FormulaId::MST : FormulaId::Suzuki4;
    CompositionResult other{CMatrix(), 0.0};
    try {
        other = converged_composition(gen, check, t0, t1, opts.tol);
    } catch (const DegenerateBetaError&) {
        // A sub-window tripped a beta gate; the fourth-order composition
        // has no such gates.
        other = converged_composition(gen, FormulaId::Suzuki4, t0, t1, opts.tol);
    }
    const double dev = frobenius_norm(rk.matrix - other.matrix);
    // Both routes sit on double-precision floors once tol is tight: the
    // composition's grows with its factor count, the integrator's with the
    // accepted step count and the generator magnitude (calibrated).
    const double scale = one_norm(gen.at(0.5 * (t0 + t1)));
    const double rk_floor = 2.2e-16 * std::sqrt(static_cast<double>(gen.dim())) *
                            rk.accepted_steps * (50.0 + 12.0 * scale);
    const double budget = 10.0 * opts.tol + other.floor + rk_floor;
    if (dev > budget) {
        char msg[160];
        std::snprintf(msg, sizeof(msg),
                      "exact_propagator: integrator and composition disagree by %.3e "
                      "(budget %.3e)",
                      dev, budget);
        throw OracleMismatchError(msg, dev);
    }
    return rk.matrix;
}

std::pair<double, double> trotter_error_both(const CMatrix& exact,
                                             const ExponentSchedule& schedule,
                                             const TwoTermGenerator& gen) {
    const CMatrix diff = exact - evaluate(schedule, gen);
    return {frobenius_norm(diff), spectral_norm(diff)};
}

double trotter_error(const TwoTermGenerator& gen, FormulaId id, const Window& w, NormKind norm,
                     const OracleOptions& opts) {
    const CMatrix exact = exact_propagator(gen, w.lo(), w.hi(), opts);
    const auto sch = build_schedule(gen, id, w);
    const auto [ef, es] = trotter_error_both(exact, sch, gen);
    return norm == NormKind::Frobenius ? ef : es;
}

CMatrix composed_evolution(const TwoTermGenerator& gen, FormulaId id, double t_i, double t_f,
                           int n_steps) {
    if (n_steps < 1) throw Error("composed_evolution: N must be >= 1");
    const double dt = (t_f - t_i) / n_steps;
    const Direction dir = dt >= 0 ? Direction::Forward : Direction::Backward;
    CMatrix p = CMatrix::identity(gen.dim());
    for (int k = 1; k <= n_steps; ++k) {
        const double lo = t_i + (k - 1) * dt;
        const double hi = t_i + k * dt;
        const Window w(0.5 * (lo + hi), std::abs(dt));
        const std::string where =
            "composed_evolution: step " + std::to_string(k) + "/" + std::to_string(n_steps);
        try {
            p = evaluate(build_schedule(gen, id, w, dir), gen) * p;
        } catch (const DegenerateBetaError& e) {
            throw DegenerateBetaError(where + " failed: " + e.what(), e.remedies);
        } catch (const Error& e) {
            throw Error(where + " failed: " + e.what());
        }
    }
    return p;
}

std::pair<double, double> order_fit(const std::vector<std::pair<double, double>>& points,
                                    double roundoff_floor) {
    if (points.size() < 4) throw FitRangeError("order_fit: need at least 4 points");
    for (const auto& [dt, eps] : points) {
        if (!(dt > 0.0) || !std::isfinite(eps)) throw FitRangeError("order_fit: bad point");
        if (eps <= 10.0 * roundoff_floor)
            throw FitRangeError(
                "order_fit: a point sits at the roundoff floor; use a larger dt range");
    }
    const size_t n = points.size();
    double sx = 0, sy = 0;
    std::vector<double> xs(n), ys(n);
    for (size_t i = 0; i < n; ++i) {
        xs[i] = std::log(points[i].first);
        ys[i] = std::log(points[i].second);
        sx += xs[i];
        sy += ys[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0, syy = 0;
    for (size_t i = 0; i < n; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    const double slope = sxy / sxx;
    const double ss_res = syy - sxy * sxy / sxx;
    const double r2 = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
    return {slope, r2};
}

}  // namespace trotter
