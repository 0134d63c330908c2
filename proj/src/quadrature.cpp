#include "trotter/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace trotter {

double legendre_p(int n, double x) {
    if (n == 0) return 1.0;
    if (n == 1) return x;
    double pm = 1.0, p = x;
    for (int k = 2; k <= n; ++k) {
        const double pn = ((2.0 * k - 1.0) * x * p - (k - 1.0) * pm) / k;
        pm = p;
        p = pn;
    }
    return p;
}

std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n) {
    if (n < 1 || n > 64) throw Error("gauss_legendre: n must be in [1,64]");
    std::vector<double> nodes(n), weights(n);
    // Newton iteration from the Chebyshev-like initial guess; nodes come out
    // symmetric, so only half need solving.
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            const double p = legendre_p(n, x);
            const double pm = legendre_p(n - 1, x);
            dp = n * (x * p - pm) / (x * x - 1.0);
            const double dx = p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        const double p = legendre_p(n, x);
        const double pm = legendre_p(n - 1, x);
        dp = n * (x * p - pm) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) nodes[n / 2] = 0.0;
    return {nodes, weights};
}

namespace {

double gl_fixed(const ScalarFn& f, double a, double b, const std::vector<double>& nodes,
                const std::vector<double>& weights) {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    double s = 0.0;
    for (size_t i = 0; i < nodes.size(); ++i) s += weights[i] * f(mid + half * nodes[i]);
    return half * s;
}

struct GlRule {
    std::vector<double> nodes, weights;
};

const GlRule& rule(int n) {
    static const GlRule r16 = [] { auto [x, w] = gauss_legendre(16); return GlRule{x, w}; }();
    static const GlRule r24 = [] { auto [x, w] = gauss_legendre(24); return GlRule{x, w}; }();
    return n == 16 ? r16 : r24;
}

// Recursive evaluation of the simplex integral with a fixed per-level rule:
// level k integrates fs[k] * (inner integral up to t) over [lo, t].
double simplex_level(const std::vector<ScalarFn>& fs, int level, double lo, double hi,
                     const GlRule& r) {
    const double half = 0.5 * (hi - lo);
    const double mid = 0.5 * (hi + lo);
    double s = 0.0;
    for (size_t i = 0; i < r.nodes.size(); ++i) {
        const double t = mid + half * r.nodes[i];
        double v = fs[level](t);
        if (level > 0) v *= simplex_level(fs, level - 1, lo, t, r);
        s += r.weights[i] * v;
    }
    return half * s;
}

}  // namespace

double integrate(const ScalarFn& f, double a, double b) {
    if (!(a <= b)) throw Error("integrate: requires a <= b");
    if (a == b) return 0.0;

    double prev = 0.0;
    double fmax = 0.0;  // integrand magnitude; floors the test for zero integrals
    bool have_prev = false;
    for (int n = 16, pass = 0; pass <= 6; n *= 2, ++pass) {
        auto [nodes, weights] = gauss_legendre(std::min(n, 64));
        double cur;
        if (n <= 64) {
            cur = gl_fixed(f, a, b, nodes, weights);
        } else {
            // Past the 64-node cap, keep doubling resolution via panels.
            const int panels = n / 64;
            cur = 0.0;
            const double h = (b - a) / panels;
            for (int p = 0; p < panels; ++p)
                cur += gl_fixed(f, a + p * h, a + (p + 1) * h, nodes, weights);
        }
        if (pass == 0) {
            const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
            for (double x : nodes) fmax = std::max(fmax, std::abs(f(mid + half * x)));
        }
        if (have_prev) {
            const double scale = std::max({std::abs(cur), std::abs(prev), 1e-300});
            if (std::abs(cur - prev) <= 1e-13 * scale) return cur;
            if (std::abs(cur - prev) <= 1e-14 * fmax * (b - a)) return cur;
        }
        prev = cur;
        have_prev = true;
    }
    throw QuadratureError("integrate: no convergence after 6 doublings", prev);
}

double nested_simplex(const std::vector<ScalarFn>& fs, const Window& w) {
    const int S = static_cast<int>(fs.size());
    if (S < 1 || S > 4) throw Error("nested_simplex: order S must be in [1,4]");

    const double v16 = simplex_level(fs, S - 1, w.lo(), w.hi(), rule(16));
    const double v24 = simplex_level(fs, S - 1, w.lo(), w.hi(), rule(24));

    // Absolute floor for the verification of near-cancelling integrals:
    // product of coarse per-factor bounds times the simplex volume.
    double bound = 1.0;
    {
        auto [nodes, weights] = gauss_legendre(8);
        (void)weights;
        for (const auto& f : fs) {
            double m = 0.0;
            for (double x : nodes) m = std::max(m, std::abs(f(w.mu + 0.5 * w.dt * x)));
            bound *= m;
        }
        double vol = 1.0;
        for (int k = 1; k <= S; ++k) vol *= w.dt / k;
        bound *= vol;
    }

    const double dev = std::abs(v16 - v24);
    const double scale = std::max(std::abs(v16), std::abs(v24));
    if (dev > 1e-10 * scale && dev > 1e-13 * std::max(bound, 1e-300))
        throw QuadratureError("nested_simplex: 16/24-node verification failed", v24);
    return v16;
}

LegendreCoeffs legendre_coeffs(const ScalarFn& f, const Window& w, int n_max) {
    if (n_max < 1 || n_max > 6) throw Error("legendre_coeffs: n_max must be in [1,6]");
    LegendreCoeffs out{w, {}};
    out.values.resize(n_max);
    auto [nodes, weights] = gauss_legendre(32);
    for (int n = 1; n <= n_max; ++n) {
        const double cn = 2.0 / (2.0 * n - 1.0);  // c_{n-1} for the Legendre family
        double s = 0.0;
        for (size_t i = 0; i < nodes.size(); ++i)
            s += weights[i] * f(w.mu + 0.5 * w.dt * nodes[i]) * legendre_p(n - 1, nodes[i]);
        out.values[n - 1] = w.dt / cn * s;
    }
    return out;
}

double beta12_leading(const LegendreCoeffs& ux, const LegendreCoeffs& uy, double prefactor) {
    if (ux.values.size() < 2 || uy.values.size() < 2)
        throw Error("beta12_leading: needs coefficients up to order 2");
    return prefactor * (uy.values[0] * ux.values[1] - ux.values[0] * uy.values[1]);
}

}  // namespace trotter
