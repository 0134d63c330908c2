#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "trotter/errors.hpp"

namespace trotter {

/// Smooth scalar coefficient function of time. Must be deterministic,
/// finite on every queried interval, and callable from multiple threads.
using ScalarFn = std::function<double(double)>;

/// A time interval described by its midpoint and (positive) width.
struct Window {
    double mu;  // interval midpoint
    double dt;  // interval width, > 0

    Window(double mu_, double dt_) : mu(mu_), dt(dt_) {
        if (!(dt > 0.0)) throw Error("Window: dt must be positive");
    }
    double lo() const { return mu - 0.5 * dt; }
    double hi() const { return mu + 0.5 * dt; }
};

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1,1].
/// 1 <= n <= 64. Exact for polynomials of degree <= 2n-1.
std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n);

/// Definite integral of f over [a,b] (a <= b) by whole-interval
/// Gauss-Legendre with node doubling 16 -> 32 -> ... until the relative
/// change drops below 1e-13. Throws QuadratureError (carrying the best
/// estimate) after six doublings without convergence.
double integrate(const ScalarFn& f, double a, double b);

/// Time-ordered nested integral over lo <= t_1 <= ... <= t_S <= hi of
/// prod_k fs[k](t_{k+1}), S = fs.size() <= 4. fs.front() is the innermost
/// (earliest-time) integrand, fs.back() the outermost. Evaluated by
/// recursive Gauss-Legendre with 16 nodes per level and verified against
/// a 24-node recomputation to 1e-10 relative.
double nested_simplex(const std::vector<ScalarFn>& fs, const Window& w);

/// Legendre expansion coefficients of a coefficient function on a window:
/// values[n-1] holds the order-n coefficient, which scales as O(dt^n).
struct LegendreCoeffs {
    Window window;
    std::vector<double> values;  // u^(1) .. u^(n_max)
};

/// Projection of f onto the Legendre basis rescaled to the window,
/// u^(n) = (dt / c_{n-1}) * Int_{-1}^{1} f(mu + v dt/2) P_{n-1}(v) dv
/// with c_n = 2/(2n+1). 1 <= n_max <= 6.
LegendreCoeffs legendre_coeffs(const ScalarFn& f, const Window& w, int n_max);

/// Default prefactor of the leading-order commutator coefficient formula
/// below. The value 1/6 is the one validated against nested_simplex
/// (closed-form check: x=1, y=t gives -dt^3/12 for any window midpoint).
inline constexpr double beta12_leading_prefactor = 1.0 / 6.0;

/// Leading-order fast path for the first commutator coefficient:
/// prefactor * (uy^(1) ux^(2) - ux^(1) uy^(2)), accurate to O(dt^5).
/// The prefactor is configurable; keep the default unless you are probing
/// the alternative convention.
double beta12_leading(const LegendreCoeffs& ux, const LegendreCoeffs& uy,
                      double prefactor = beta12_leading_prefactor);

/// Legendre polynomial P_n(x) by the three-term recurrence.
double legendre_p(int n, double x);

}  // namespace trotter
