#pragma once

#include <string>
#include <vector>

#include "trotter/magnus.hpp"

namespace trotter {

enum class Slot { X, Y };

enum class FormulaId { Midpoint, HdR, MFT, NineExp, Suzuki4, MST };

const char* to_string(FormulaId id);
FormulaId formula_from_string(const std::string& name);

/// Local order of the single-window error (error = O(dt^{order+1})).
int formula_order(FormulaId id);
/// Number of exponentials in one window of the formula.
int formula_step_count(FormulaId id);

struct ScheduleStep {
    Slot slot;
    double coeff;
};

/// A product of exponentials prod_k e^{coeff_k * Z_{slot_k}} for one window,
/// listed leftmost factor first (the leftmost factor acts last on a state).
/// Adjacent steps never share a slot.
struct ExponentSchedule {
    FormulaId formula;
    Window window;
    std::vector<ScheduleStep> steps;

    double sum_x() const;
    double sum_y() const;
};

/// Whether a window is traversed forward or backward in time. Backward
/// schedules realize the inverse propagator of the mirrored window.
enum class Direction { Forward, Backward };

/// Sums adjacent same-slot steps. Zero-coefficient steps are kept so that
/// per-formula step-count contracts survive degenerate coefficients.
std::vector<ScheduleStep> merge_adjacent(std::vector<ScheduleStep> steps);

enum class SplittingName { ForestRuthSuzuki, OmelyanFR, Yoshida6 };

/// Classical time-independent splitting coefficients; the base schemes the
/// decorated formulas reduce to for constant coefficient functions.
struct SplittingCoeffs {
    SplittingName name;
    std::vector<double> a;
    std::vector<double> b;
};

SplittingCoeffs splitting_coeffs(SplittingName name);

/// Second-order 3-exponential rule using the window midpoint values.
ExponentSchedule midpoint(const TwoTermGenerator& gen, const Window& w,
                          Direction dir = Direction::Forward);

/// Second-order 3-exponential rule using exact sub-interval integrals of
/// the coefficient functions.
ExponentSchedule hdr(const TwoTermGenerator& gen, const Window& w,
                     Direction dir = Direction::Forward);

/// Fourth-order 11-exponential scheme: midpoint composed over five
/// sub-windows (middle one backward) and merged at the junctions.
ExponentSchedule suzuki4(const TwoTermGenerator& gen, const Window& w,
                         Direction dir = Direction::Forward);

struct MftResult {
    ExponentSchedule schedule;
    double u;             // b12 / b2
    double u_over_dt2;    // |u| / dt^2 diagnostic; O(1) when well-posed
};

/// Minimum fourth-order 7-exponential formula: the three-stage splitting
/// on (b1, b2) conjugated by e^{+-u X}, u = b12/b2.
MftResult mft(const TwoTermGenerator& gen, const Window& w,
              Direction dir = Direction::Forward);
MftResult mft_from_betas(const BetaSet& bs);

/// Fourth-order 9-exponential variant built on the optimized four-stage
/// splitting; smaller error constant than the 7-exponential formula.
MftResult nine_exp(const TwoTermGenerator& gen, const Window& w,
                   Direction dir = Direction::Forward);
MftResult nine_exp_from_betas(const BetaSet& bs);

/// Solved corrections decorating the sixth-order base scheme.
/// u1..u4 are O(dt^2); w and z are O(dt^3). All vanish for constant
/// coefficient functions.
struct MstDecoration {
    double u1 = 0.0, u2 = 0.0, u3 = 0.0, u4 = 0.0;
    double w = 0.0, z = 0.0;
};

struct MstResult {
    ExponentSchedule schedule;
    MstDecoration decoration;
};

/// Relative floor on |b1|/dt and |b2|/dt below which the sixth-order
/// decoration solve is refused.
inline constexpr double mst_beta_floor_factor = 1e-6;

/// Minimum sixth-order 15-exponential formula: the sixth-order base
/// splitting decorated with u1..u4 (antisymmetric) and w, z (symmetric),
/// solved from the order-5 coefficient matching conditions.
MstResult mst(const TwoTermGenerator& gen, const Window& w,
              Direction dir = Direction::Forward,
              double beta_floor_factor = mst_beta_floor_factor);
MstResult mst_from_betas(const BetaSet& bs,
                         double beta_floor_factor = mst_beta_floor_factor);

/// Uniform entry point used by sweeps; diagnostics of the decorated
/// formulas are dropped.
ExponentSchedule build_schedule(const TwoTermGenerator& gen, FormulaId id, const Window& w,
                                Direction dir = Direction::Forward);

/// Right-to-left product of the step exponentials. Diagonal slot
/// exponentials are applied as row scalings.
CMatrix evaluate(const ExponentSchedule& schedule, const TwoTermGenerator& gen);

/// One-line JSON document {"formula","mu","dt","steps":[{"slot","coeff"},...]}
/// with numbers rendered to 17 significant digits.
std::string schedule_to_json(const ExponentSchedule& schedule);

}  // namespace trotter
