#include <doctest.h>

#include <cmath>
#include <numbers>

#include "trotter/quadrature.hpp"
#include "test_util.hpp"

using namespace trotter;

TEST_CASE("gauss_legendre rules") {
    {
        auto [x, w] = gauss_legendre(1);
        CHECK(x[0] == doctest::Approx(0.0).epsilon(1e-15));
        CHECK(w[0] == doctest::Approx(2.0).epsilon(1e-15));
    }
    {
        auto [x, w] = gauss_legendre(2);
        CHECK(x[0] == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-14));
        CHECK(x[1] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-14));
        CHECK(w[0] == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(w[1] == doctest::Approx(1.0).epsilon(1e-14));
    }
    for (int n : {3, 7, 16, 64}) {
        auto [x, w] = gauss_legendre(n);
        double sum = 0.0;
        for (double wi : w) {
            CHECK(wi > 0.0);
            sum += wi;
        }
        CHECK(std::abs(sum - 2.0) < 1e-14);
        for (double xi : x) CHECK(std::abs(xi) < 1.0);
    }
    // degree-(2n-1) exactness: Int v^4 over [-1,1] = 2/5 at n = 3
    {
        auto [x, w] = gauss_legendre(3);
        double s = 0.0;
        for (int i = 0; i < 3; ++i) s += w[i] * std::pow(x[i], 4);
        CHECK(s == doctest::Approx(0.4).epsilon(1e-14));
    }
    CHECK_THROWS_AS(gauss_legendre(0), Error);
    CHECK_THROWS_AS(gauss_legendre(65), Error);
}

TEST_CASE("integrate") {
    CHECK(integrate([](double) { return 1.0; }, 0.0, 0.1) ==
          doctest::Approx(0.1).epsilon(1e-14));

    const double mu = 0.7, dt = 0.3;
    CHECK(integrate([](double t) { return t; }, mu - dt / 2, mu + dt / 2) ==
          doctest::Approx(mu * dt).epsilon(1e-14));

    CHECK(std::abs(integrate([](double t) { return std::sin(t); }, 0.0, std::numbers::pi) -
                   2.0) < 1e-12);

    CHECK_THROWS_AS(integrate([](double) { return 1.0; }, 1.0, 0.0), Error);
}

TEST_CASE("nested_simplex basics") {
    const ScalarFn one = [](double) { return 1.0; };
    const ScalarFn ramp = [](double t) { return t; };

    // constant integrands give the simplex volume
    const Window w(0.3, 0.2);
    CHECK(nested_simplex({one, one}, w) == doctest::Approx(0.02).epsilon(1e-13));
    for (int S = 1; S <= 4; ++S) {
        std::vector<ScalarFn> fs(S, [](double) { return 1.3; });
        double vol = 1.0;
        for (int k = 1; k <= S; ++k) vol *= w.dt / k;
        const double expect = std::pow(1.3, S) * vol;
        CHECK(nested_simplex(fs, w) == doctest::Approx(expect).epsilon(1e-12));
    }

    // S = 1 reduces to a plain integral
    const Window w2(1.4, 0.37);
    CHECK(nested_simplex({ramp}, w2) ==
          doctest::Approx(integrate(ramp, w2.lo(), w2.hi())).epsilon(1e-13));

    // closed-form antisymmetric combination: Int (t1 - t2) over the ordered
    // simplex equals -dt^3/6 regardless of the midpoint
    for (double mu : {0.0, 1.0, -2.5}) {
        const Window wv(mu, 0.1);
        const double w21 = nested_simplex({ramp, one}, wv);
        const double w12 = nested_simplex({one, ramp}, wv);
        CHECK(w21 - w12 == doctest::Approx(-1e-3 / 6.0).epsilon(1e-11));
    }

    CHECK_THROWS_AS(nested_simplex({}, w), Error);
    CHECK_THROWS_AS(nested_simplex(std::vector<ScalarFn>(5, one), w), Error);
}

TEST_CASE("integrate non-convergence carries the best estimate") {
    // far more oscillations than the node-doubling ladder can resolve
    const ScalarFn wild = [](double t) { return std::sin(1e6 * t); };
    try {
        integrate(wild, 0.0, 1.0);
        FAIL("expected QuadratureError");
    } catch (const QuadratureError& e) {
        CHECK(std::isfinite(e.best_estimate));
    }
}

TEST_CASE("nested_simplex verification failure") {
    // a spike far narrower than the node spacing defeats the fixed rules
    const ScalarFn spike = [](double t) { return std::exp(-t * t / 1e-8); };
    const ScalarFn one = [](double) { return 1.0; };
    CHECK_THROWS_AS(nested_simplex({spike, one}, Window(0.0, 0.4)), QuadratureError);
}

TEST_CASE("nested_simplex permutation identity") {
    const ScalarFn f1 = [](double t) { return std::sin(t + 0.4); };
    const ScalarFn f2 = [](double t) { return std::cos(2.0 * t) + 1.5; };
    const Window w(0.9, 0.23);
    const double lhs = nested_simplex({f1, f2}, w) + nested_simplex({f2, f1}, w);
    const double rhs = integrate(f1, w.lo(), w.hi()) * integrate(f2, w.lo(), w.hi());
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
}

TEST_CASE("legendre_coeffs examples") {
    {
        const auto c = legendre_coeffs([](double) { return 1.0; }, Window(0.5, 0.4), 4);
        CHECK(c.values[0] == doctest::Approx(0.4).epsilon(1e-14));
        for (int n = 2; n <= 4; ++n) CHECK(std::abs(c.values[n - 1]) < 1e-15);
    }
    {
        const auto c = legendre_coeffs([](double t) { return t; }, Window(1.0, 0.2), 3);
        CHECK(c.values[0] == doctest::Approx(0.2).epsilon(1e-13));
        CHECK(c.values[1] == doctest::Approx(0.02).epsilon(1e-13));  // dt^2/2
        CHECK(std::abs(c.values[2]) < 1e-15);
    }
    {
        const auto c = legendre_coeffs([](double t) { return t * t; }, Window(0.0, 0.3), 3);
        CHECK(c.values[0] == doctest::Approx(std::pow(0.3, 3) / 12.0).epsilon(1e-13));
    }
    CHECK_THROWS_AS(legendre_coeffs([](double) { return 1.0; }, Window(0, 1), 7), Error);
}

TEST_CASE("legendre_coeffs order law") {
    const ScalarFn f = [](double t) { return std::exp(std::sin(t)); };
    const double mu = 0.6;
    for (int n = 1; n <= 4; ++n) {
        const double a = legendre_coeffs(f, Window(mu, 0.2), n).values[n - 1];
        const double b = legendre_coeffs(f, Window(mu, 0.1), n).values[n - 1];
        CHECK(std::log2(std::fabs(a / b)) == doctest::Approx(n).epsilon(0.1 / n));
    }
}

TEST_CASE("window integral parity") {
    // Int f over the window minus [f(mu) dt + f''(mu) dt^3/24] is O(dt^5);
    // f'' taken by central differences with step dt/100.
    const ScalarFn f = [](double t) { return std::exp(std::sin(t)); };
    const double mu = 0.6;
    std::vector<std::pair<double, double>> pts;
    for (double dt : {0.2, 0.1, 0.05, 0.025}) {
        const double h = dt / 100.0;
        const double f2 = (f(mu + h) - 2.0 * f(mu) + f(mu - h)) / (h * h);
        const double rem =
            integrate(f, mu - dt / 2, mu + dt / 2) - (f(mu) * dt + f2 * dt * dt * dt / 24.0);
        pts.emplace_back(dt, rem);
    }
    CHECK(testutil::fit_slope(pts) == doctest::Approx(5.0).epsilon(0.03));
}

TEST_CASE("leading-order commutator coefficient fast path") {
    // The 1/6 prefactor matches the nested integrals; 2/3 does not.
    const ScalarFn one = [](double) { return 1.0; };
    const ScalarFn ramp = [](double t) { return t; };
    for (double dt : {0.2, 0.1}) {
        const Window w(1.0, dt);
        const auto ux = legendre_coeffs(one, w, 2);
        const auto uy = legendre_coeffs(ramp, w, 2);
        const double direct =
            0.5 * (nested_simplex({ramp, one}, w) - nested_simplex({one, ramp}, w));
        CHECK(beta12_leading(ux, uy) == doctest::Approx(direct).epsilon(1e-12));
        CHECK(beta12_leading(ux, uy) == doctest::Approx(-dt * dt * dt / 12.0).epsilon(1e-12));
        CHECK(std::fabs(beta12_leading(ux, uy, 2.0 / 3.0) - direct) > std::fabs(direct));
    }
    // O(dt^5) remainder on generic smooth inputs
    const ScalarFn f1 = [](double t) { return std::sin(t + 0.3); };
    const ScalarFn f2 = [](double t) { return std::cos(2.0 * t) + 1.5; };
    std::vector<std::pair<double, double>> pts;
    for (double dt : {0.4, 0.2, 0.1, 0.05}) {
        const Window w(0.7, dt);
        const double direct =
            0.5 * (nested_simplex({f2, f1}, w) - nested_simplex({f1, f2}, w));
        const double fast =
            beta12_leading(legendre_coeffs(f1, w, 2), legendre_coeffs(f2, w, 2));
        pts.emplace_back(dt, direct - fast);
    }
    CHECK(testutil::fit_slope(pts) == doctest::Approx(5.0).epsilon(0.05));
}
