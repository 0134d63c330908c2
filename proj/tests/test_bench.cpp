#include <doctest.h>

#include <sstream>

#include "trotter/bench.hpp"

using namespace trotter;

TEST_CASE("log_grid") {
    const auto g = log_grid(0.02, 0.4, 8);
    REQUIRE(g.size() == 8);
    CHECK(g.front() == 0.02);
    CHECK(g.back() == 0.4);
    for (size_t i = 1; i < g.size(); ++i) {
        CHECK(g[i] > g[i - 1]);
        CHECK(g[i] / g[i - 1] == doctest::Approx(g[1] / g[0]).epsilon(1e-12));
    }
    CHECK_THROWS_AS(log_grid(0.0, 1.0, 4), Error);
}

TEST_CASE("dt sweep output shape and determinism") {
    DtSweepConfig cfg;
    cfg.formulas = {FormulaId::Midpoint, FormulaId::Suzuki4};
    cfg.assignments = {Assignment::TermA_to_X};
    cfg.n_points = 5;
    cfg.dt_min = 0.05;
    cfg.dt_max = 0.4;
    cfg.oracle_tol = 1e-12;

    const auto out = run_dt_sweep(cfg);
    CHECK(out.points.size() == 10);    // 2 formulas x 5 points
    CHECK(out.fits.size() == 2);
    CHECK(out.all_pass());

    // byte-for-byte deterministic CSV
    const auto again = run_dt_sweep(cfg);
    CHECK(out.csv == again.csv);

    std::istringstream is(out.csv);
    std::string header;
    std::getline(is, header);
    CHECK(header ==
          "formula,mu,dt,N,n_exponentials,n_gates,eps_frobenius,eps_spectral,assignment,"
          "status,slope,r2");
    int rows = 0;
    for (std::string line; std::getline(is, line);) ++rows;
    CHECK(rows == 12);  // 10 data rows + 2 fit rows

    CHECK_THROWS_AS(run_dt_sweep(DtSweepConfig{1.0, 0.1, 0.4, 3}), Error);
}

TEST_CASE("failed points become status rows, not aborts") {
    // mu = 0 makes b2 vanish for the a_to_x assignment: the decorated
    // formulas degenerate while the undecorated ones keep running.
    DtSweepConfig cfg;
    cfg.mu = 0.0;
    cfg.formulas = {FormulaId::Midpoint, FormulaId::MFT};
    cfg.assignments = {Assignment::TermA_to_X};
    cfg.n_points = 4;
    cfg.dt_min = 0.1;
    cfg.dt_max = 0.4;
    cfg.oracle_tol = 1e-12;
    cfg.r2_min = 0.0;

    const auto out = run_dt_sweep(cfg);
    int degenerate = 0, ok = 0;
    for (const auto& p : out.points) {
        if (p.formula == FormulaId::MFT) {
            CHECK(p.status == "degenerate_beta");
            CHECK(!p.eps_f.has_value());
            ++degenerate;
        } else {
            CHECK(p.status == "ok");
            ++ok;
        }
    }
    CHECK(degenerate == 4);
    CHECK(ok == 4);
    CHECK(!out.all_pass());  // the degenerate formula has no fit
    CHECK(out.csv.find("degenerate_beta") != std::string::npos);
}

TEST_CASE("evolve runner") {
    EvolveConfig cfg;
    cfg.model = ModelKind::LandauZener;
    cfg.formula = FormulaId::Suzuki4;
    cfg.assignment = Assignment::TermA_to_X;
    cfg.t_i = 0.5;
    cfg.t_f = 1.5;
    cfg.n_steps = 20;
    cfg.oracle_tol = 1e-12;
    const auto out = run_evolve(cfg);
    CHECK(out.point.status == "ok");
    CHECK(*out.point.eps_f < 1e-6);
    CHECK(*out.point.eps_s <= *out.point.eps_f * (1.0 + 1e-9));
    CHECK(out.unitarity_defect < 1e-12);
    CHECK(out.point.n_exponentials == 11 * 20);
    CHECK(out.point.n_gates == 0);  // no gate model for the two-level run
    CHECK(out.csv.find("suzuki4") != std::string::npos);
}

TEST_CASE("mu sweep requires two decades") {
    MuSweepConfig cfg;
    cfg.mu_min = 1.0;
    cfg.mu_max = 10.0;
    CHECK_THROWS_AS(run_mu_sweep(cfg), Error);
}

TEST_CASE("norm ratio sweep") {
    NormRatioConfig cfg;
    cfg.grid.formulas = {FormulaId::Midpoint, FormulaId::MFT};
    cfg.grid.assignments = {Assignment::TermA_to_X};
    cfg.grid.n_points = 5;
    cfg.grid.oracle_tol = 1e-12;
    const auto out = run_norm_ratio(cfg);
    CHECK(out.all_pass());
    CHECK(out.csv.find(",spread") != std::string::npos);
}
