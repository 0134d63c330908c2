// Acceptance suite: runs the eight benchmark criteria end to end and
// prints one pass/fail line per criterion. Exit code 0 iff all requested
// criteria pass. Usage: acceptance [--criterion N].

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "trotter/bench.hpp"

using namespace trotter;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), f, v);
    return buf;
}

bool sweep_ok(const SweepOutcome& out, std::string& detail) {
    std::ostringstream os;
    bool pass = true;
    for (const auto& a : out.assertions) {
        if (!a.pass) {
            pass = false;
            os << " [" << a.name << ": " << a.detail << "]";
        }
    }
    if (pass) {
        os << " " << out.assertions.size() << " assertions";
        for (const auto& f : out.fits)
            os << "; " << to_string(f.formula) << "/" << to_string(f.assignment) << " slope "
               << fmt("%.3f", f.slope);
    }
    detail += os.str();
    return pass;
}

// 1. Single-window convergence orders at mu = 1 on the two-level model.
Outcome criterion1() {
    DtSweepConfig cfg;  // defaults: mu 1, dt 0.02..0.4 (8 pts), 4 formulas, both assignments
    const auto out = run_dt_sweep(cfg);
    std::string detail;
    return {sweep_ok(out, detail), detail};
}

// 2. Sixth-order formula reaches local order seven.
Outcome criterion2() {
    DtSweepConfig cfg;
    cfg.dt_min = 0.05;
    cfg.formulas = {FormulaId::MST};
    cfg.r2_min = 0.0;
    const auto out = run_dt_sweep(cfg);
    std::string detail;
    return {sweep_ok(out, detail), detail};
}

// 3. Constant coefficients reduce the decorated formulas to their
// classical base schemes.
Outcome criterion3() {
    bool pass = true;
    std::string detail;
    for (auto [x, y] : {std::pair{1.0, 1.0}, std::pair{1.3, 0.8}}) {
        TwoTermGenerator gen(cdouble(0.0, -1.0) * pauli_x(), cdouble(0.0, -1.0) * pauli_z(),
                             [x = x](double) { return x; }, [y = y](double) { return y; },
                             true);
        const Window w(0.4, 0.25);
        const double b1 = x * w.dt, b2 = y * w.dt;
        const double floor = 1e-12 * w.dt * w.dt;

        const auto m = mft(gen, w);
        const auto n = nine_exp(gen, w);
        const auto s = mst(gen, w);
        for (double v : {m.u, n.u, s.decoration.u1, s.decoration.u2, s.decoration.u3,
                         s.decoration.u4, s.decoration.w, s.decoration.z})
            if (std::abs(v) > floor) {
                pass = false;
                detail += " decoration " + fmt("%.2e", v) + " above floor;";
            }

        const auto frs = splitting_coeffs(SplittingName::ForestRuthSuzuki);
        const double e7[7] = {frs.a[0] * b1, frs.b[0] * b2, frs.a[1] * b1, frs.b[1] * b2,
                              frs.a[1] * b1, frs.b[0] * b2, frs.a[0] * b1};
        const auto om = splitting_coeffs(SplittingName::OmelyanFR);
        const double e9[9] = {om.a[0] * b1, om.b[0] * b2, om.a[1] * b1,
                              om.b[1] * b2, om.a[2] * b1, om.b[1] * b2,
                              om.a[1] * b1, om.b[0] * b2, om.a[0] * b1};
        const auto yo = splitting_coeffs(SplittingName::Yoshida6);
        const double e15[15] = {yo.a[0] * b1, yo.b[0] * b2, yo.a[1] * b1, yo.b[1] * b2,
                                yo.a[2] * b1, yo.b[2] * b2, yo.a[3] * b1, yo.b[3] * b2,
                                yo.a[3] * b1, yo.b[2] * b2, yo.a[2] * b1, yo.b[1] * b2,
                                yo.a[1] * b1, yo.b[0] * b2, yo.a[0] * b1};
        auto check = [&](const ExponentSchedule& sch, const double* expect, int count,
                         const char* name) {
            for (int i = 0; i < count; ++i)
                if (std::abs(sch.steps[i].coeff - expect[i]) > 1e-13) {
                    pass = false;
                    detail += std::string(" ") + name + " step " + std::to_string(i) +
                              " off by " + fmt("%.2e", sch.steps[i].coeff - expect[i]) + ";";
                }
        };
        check(m.schedule, e7, 7, "7-exp");
        check(n.schedule, e9, 9, "9-exp");
        check(s.schedule, e15, 15, "15-exp");
    }
    if (pass) detail = " all coefficients within 1e-13, decorations below 1e-12 dt^2";
    return {pass, detail};
}

// 4. Window-midpoint sweep: 1/mu tail, degenerate-assignment divergence,
// tail ratio between the assignments.
Outcome criterion4() {
    const auto out = run_mu_sweep(MuSweepConfig{});
    std::string detail;
    return {sweep_ok(out, detail), detail};
}

// 5. Spin-chain benchmark: global orders vs gate count, error orderings,
// closed-form gate counts.
Outcome criterion5() {
    const auto out = run_ising_bench(IsingBenchConfig{});
    std::string detail;
    return {sweep_ok(out, detail), detail};
}

// 6. Spectral/Frobenius error ratio is stable per formula and never
// exceeds one.
Outcome criterion6() {
    NormRatioConfig cfg;  // grid = criterion-1 grid
    const auto out = run_norm_ratio(cfg);
    std::string detail;
    return {sweep_ok(out, detail), detail};
}

// 7. Cross-cutting invariants.
Outcome criterion7() {
    bool pass = true;
    std::string detail;
    auto expect = [&](bool ok, const std::string& what, double value, double bound) {
        if (!ok) {
            pass = false;
            detail += " [" + what + ": " + fmt("%.3e", value) + " vs " + fmt("%.3e", bound) + "]";
        }
    };

    // time-reversal products within 1e-11
    for (auto assign : {Assignment::TermA_to_X, Assignment::TermA_to_Y}) {
        const auto gen = landau_zener(assign);
        const Window w(1.0, 0.2);
        for (auto id : {FormulaId::Midpoint, FormulaId::HdR, FormulaId::MFT,
                        FormulaId::NineExp, FormulaId::Suzuki4, FormulaId::MST}) {
            const auto fwd = evaluate(build_schedule(gen, id, w, Direction::Forward), gen);
            const auto bwd = evaluate(build_schedule(gen, id, w, Direction::Backward), gen);
            const double defect = frobenius_norm(bwd * fwd - CMatrix::identity(2));
            expect(defect <= 1e-11, std::string("time reversal ") + to_string(id), defect,
                   1e-11);
        }
    }

    // unitarity of composed evolutions within 1e-10
    {
        const auto chain = ising_chain(IsingParams{3, -1.0, 0.2, -2.0});
        for (auto id : {FormulaId::Midpoint, FormulaId::MFT, FormulaId::Suzuki4}) {
            const auto evo = composed_evolution(chain, id, 0.0, std::numbers::pi, 400);
            const double defect =
                frobenius_norm(evo.adjoint() * evo - CMatrix::identity(8));
            expect(defect <= 1e-10, std::string("unitarity ") + to_string(id), defect, 1e-10);
        }
        const auto lz = landau_zener(Assignment::TermA_to_X);
        const auto evo = composed_evolution(lz, FormulaId::NineExp, 0.0, 2.0, 400);
        const double defect = frobenius_norm(evo.adjoint() * evo - CMatrix::identity(2));
        expect(defect <= 1e-10, "unitarity nine_exp two-level", defect, 1e-10);
    }

    // dual-oracle agreement within 1e-11: integrator vs sixth-order
    // composition, measured directly
    {
        const auto lz = landau_zener(Assignment::TermA_to_X);
        const auto rk = exact_propagator(lz, 0.95, 1.05, {1e-12, CrossCheck::MST});
        const auto mst_route = composed_evolution(lz, FormulaId::MST, 0.95, 1.05, 16);
        const double dev = frobenius_norm(rk - mst_route);
        expect(dev <= 1e-11, "dual oracle two-level", dev, 1e-11);

        const auto chain = ising_chain(IsingParams{2, -1.0, 0.2, -2.0});
        const auto rk_c = exact_propagator(chain, 0.4, 0.6, {1e-12, CrossCheck::MST});
        const auto mst_c = composed_evolution(chain, FormulaId::MST, 0.4, 0.6, 16);
        const double dev_c = frobenius_norm(rk_c - mst_c);
        expect(dev_c <= 1e-11, "dual oracle chain", dev_c, 1e-11);
    }

    // beta order-law slopes 3/5/5 within 0.1
    {
        TwoTermGenerator gen(cdouble(0.0, -1.0) * pauli_x(), cdouble(0.0, -1.0) * pauli_z(),
                             [](double t) { return std::sin(t + 0.3); },
                             [](double t) { return std::cos(2.0 * t) + 1.5; }, true);
        std::vector<std::pair<double, double>> p12, p112, p1112;
        for (double dt : {0.2, 0.1, 0.05, 0.025}) {
            const auto bs = beta_set(gen, Window(0.7, dt), 6);
            p12.emplace_back(dt, std::fabs(*bs.b12));
            p112.emplace_back(dt, std::fabs(*bs.b112));
            p1112.emplace_back(dt, std::fabs(*bs.b1112));
        }
        const double s12 = order_fit(p12, 1e-18).first;
        const double s112 = order_fit(p112, 1e-18).first;
        const double s1112 = order_fit(p1112, 1e-18).first;
        expect(std::abs(s12 - 3.0) <= 0.1, "b12 slope", s12, 3.0);
        expect(std::abs(s112 - 5.0) <= 0.1, "b112 slope", s112, 5.0);
        expect(std::abs(s1112 - 5.0) <= 0.1, "b1112 slope", s1112, 5.0);
    }

    // exponent-sum consistency within 1e-12 relative
    for (auto assign : {Assignment::TermA_to_X, Assignment::TermA_to_Y}) {
        const auto gen = landau_zener(assign);
        const Window w(1.0, 0.2);
        const auto bs = beta_set(gen, w, 2);
        for (auto id : {FormulaId::Midpoint, FormulaId::HdR, FormulaId::MFT,
                        FormulaId::NineExp, FormulaId::Suzuki4, FormulaId::MST}) {
            const auto sch = build_schedule(gen, id, w);
            const double dx = std::abs(sch.sum_x() - bs.b1) / std::abs(bs.b1);
            const double dy = std::abs(sch.sum_y() - bs.b2) / std::abs(bs.b2);
            expect(dx <= 1e-12, std::string("sum_x ") + to_string(id), dx, 1e-12);
            expect(dy <= 1e-12, std::string("sum_y ") + to_string(id), dy, 1e-12);
        }
    }

    // the five-fold composition merges to exactly 11 steps
    {
        const auto gen = landau_zener(Assignment::TermA_to_X);
        const auto sch = suzuki4(gen, Window(1.0, 0.2));
        expect(sch.steps.size() == 11, "composition step count",
               static_cast<double>(sch.steps.size()), 11.0);
    }

    // gate-program roundtrip at L = 3 within 1e-9
    {
        ExportGatesConfig cfg;
        cfg.formula = FormulaId::NineExp;
        cfg.params = IsingParams{3, -1.0, 0.2, -2.0};
        cfg.t_i = 0.0;
        cfg.t_f = 1.5;
        cfg.n_steps = 6;
        std::istringstream is(export_gates_text(cfg));
        const auto prog = read_gate_program(is);
        const auto gen = ising_chain(cfg.params);
        const double dev = frobenius_norm(replay_gates(prog.gates, 3) -
                                          composed_evolution(gen, cfg.formula, 0.0, 1.5, 6));
        expect(dev <= 1e-9, "gate roundtrip", dev, 1e-9);
    }

    if (pass) detail = " reversal, unitarity, dual oracle, beta slopes, sums, merge, roundtrip";
    return {pass, detail};
}

// 8. Closed form of the first commutator coefficient and its sign.
Outcome criterion8() {
    bool pass = true;
    std::string detail;
    const auto gen = landau_zener(Assignment::TermA_to_X);  // x = 1, y = t

    for (double dt : {0.05, 0.1, 0.2}) {
        const auto bs = beta_set(gen, Window(1.0, dt), 4);
        const double expectv = -dt * dt * dt / 12.0;
        const double rel = std::abs(*bs.b12 - expectv) / std::abs(expectv);
        if (rel > 1e-12) {
            pass = false;
            detail += " [b12(" + fmt("%.2f", dt) + ") rel dev " + fmt("%.2e", rel) + "]";
        }
    }

    // flipping the sign of b12 must degrade the 7-exponential formula from
    // fifth-order to about third-order local error
    std::vector<std::pair<double, double>> good, flipped;
    for (double dt : {0.4, 0.2, 0.1, 0.05}) {
        const Window w(1.0, dt);
        const auto truth = exact_propagator(gen, w.lo(), w.hi(), {1e-13, CrossCheck::Suzuki4});
        auto bs = beta_set(gen, w, 4);
        good.emplace_back(dt,
                          frobenius_norm(truth - evaluate(mft_from_betas(bs).schedule, gen)));
        bs.b12 = -*bs.b12;
        flipped.emplace_back(
            dt, frobenius_norm(truth - evaluate(mft_from_betas(bs).schedule, gen)));
    }
    const double slope_good = order_fit(good, 1e-15).first;
    const double slope_flipped = order_fit(flipped, 1e-15).first;
    if (std::abs(slope_good - 5.0) > 0.2) {
        pass = false;
        detail += " [good-sign slope " + fmt("%.3f", slope_good) + " not 5 +- 0.2]";
    }
    if (std::abs(slope_flipped - 3.0) > 0.35) {
        pass = false;
        detail += " [flipped-sign slope " + fmt("%.3f", slope_flipped) + " not ~3]";
    }
    if (pass)
        detail = " b12 = -dt^3/12 to 1e-12; slopes " + fmt("%.3f", slope_good) + " vs " +
                 fmt("%.3f", slope_flipped) + " flipped";
    return {pass, detail};
}

struct Criterion {
    int id;
    const char* name;
    double time_limit_s;  // <= 0: no limit asserted
    std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) only = std::atoi(argv[++i]);
    }

    const std::vector<Criterion> criteria = {
        {1, "local order, 4 formulas x 2 assignments", 10.0, criterion1},
        {2, "sixth-order formula reaches order 7", 10.0, criterion2},
        {3, "time-independent reduction to classical schemes", 0.0, criterion3},
        {4, "mu sweep: tail slope, divergence, assignment ratio", 60.0, criterion4},
        {5, "spin-chain benchmark vs gate count", 300.0, criterion5},
        {6, "spectral/Frobenius ratio stability", 0.0, criterion6},
        {7, "invariant suite", 0.0, criterion7},
        {8, "first commutator coefficient closed form and sign", 0.0, criterion8},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        if (only != 0 && c.id != only) continue;
        const auto start = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception& e) {
            out = {false, std::string(" exception: ") + e.what()};
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        bool in_budget = c.time_limit_s <= 0.0 || secs < c.time_limit_s;
        if (!in_budget) out.pass = false;
        std::printf("[%s] criterion %d (%s):%s (%.1f s%s)\n", out.pass ? "PASS" : "FAIL", c.id,
                    c.name, out.detail.c_str(), secs,
                    in_budget ? "" : fmt(", over the %.0f s budget", c.time_limit_s).c_str());
        std::fflush(stdout);
        if (!out.pass) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
