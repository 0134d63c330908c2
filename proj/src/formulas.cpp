#include "trotter/formulas.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

namespace trotter {

const char* to_string(FormulaId id) {
    switch (id) {
        case FormulaId::Midpoint: return "midpoint";
        case FormulaId::HdR: return "hdr";
        case FormulaId::MFT: return "mft";
        case FormulaId::NineExp: return "nine_exp";
        case FormulaId::Suzuki4: return "suzuki4";
        case FormulaId::MST: return "mst";
    }
    return "?";
}

FormulaId formula_from_string(const std::string& name) {
    static const std::map<std::string, FormulaId> m = {
        {"midpoint", FormulaId::Midpoint}, {"hdr", FormulaId::HdR},
        {"mft", FormulaId::MFT},           {"nine_exp", FormulaId::NineExp},
        {"suzuki4", FormulaId::Suzuki4},   {"mst", FormulaId::MST}};
    auto it = m.find(name);
    if (it == m.end()) throw Error("unknown formula name: " + name);
    return it->second;
}

int formula_order(FormulaId id) {
    switch (id) {
        case FormulaId::Midpoint:
        case FormulaId::HdR: return 2;
        case FormulaId::MFT:
        case FormulaId::NineExp:
        case FormulaId::Suzuki4: return 4;
        case FormulaId::MST: return 6;
    }
    return 0;
}

int formula_step_count(FormulaId id) {
    switch (id) {
        case FormulaId::Midpoint:
        case FormulaId::HdR: return 3;
        case FormulaId::MFT: return 7;
        case FormulaId::NineExp: return 9;
        case FormulaId::Suzuki4: return 11;
        case FormulaId::MST: return 15;
    }
    return 0;
}

double ExponentSchedule::sum_x() const {
    double s = 0.0;
    for (const auto& st : steps)
        if (st.slot == Slot::X) s += st.coeff;
    return s;
}

double ExponentSchedule::sum_y() const {
    double s = 0.0;
    for (const auto& st : steps)
        if (st.slot == Slot::Y) s += st.coeff;
    return s;
}

std::vector<ScheduleStep> merge_adjacent(std::vector<ScheduleStep> steps) {
    std::vector<ScheduleStep> out;
    for (const auto& st : steps) {
        if (!out.empty() && out.back().slot == st.slot)
            out.back().coeff += st.coeff;
        else
            out.push_back(st);
    }
    return out;
}

namespace {

ExponentSchedule finish(FormulaId id, const Window& w, std::vector<ScheduleStep> steps) {
    ExponentSchedule sch{id, w, merge_adjacent(std::move(steps))};
    if (static_cast<int>(sch.steps.size()) != formula_step_count(id))
        throw Error(std::string("internal: ") + to_string(id) + " produced " +
                    std::to_string(sch.steps.size()) + " steps");
    return sch;
}

}  // namespace

SplittingCoeffs splitting_coeffs(SplittingName name) {
    switch (name) {
        case SplittingName::ForestRuthSuzuki: {
            const double s = 1.0 / (2.0 - std::cbrt(2.0));
            return {name, {0.5 * s, 0.5 * (1.0 - s)}, {s, 1.0 - 2.0 * s}};
        }
        case SplittingName::OmelyanFR: {
            // Optimized four-stage extended scheme (xi, lambda, chi).
            const double xi = 0.1786178958448091;
            const double lambda = -0.2123418310626054;
            const double chi = -0.06626458266981849;
            SplittingCoeffs c{name,
                              {xi, chi, 1.0 - 2.0 * (chi + xi)},
                              {0.5 * (1.0 - 2.0 * lambda), lambda}};
            if (std::abs(2.0 * c.a[0] + 2.0 * c.a[1] + c.a[2] - 1.0) > 1e-14 ||
                std::abs(2.0 * c.b[0] + 2.0 * c.b[1] - 1.0) > 1e-14)
                throw Error("splitting_coeffs: four-stage closure sums violated");
            return c;
        }
        case SplittingName::Yoshida6: {
            const double a1 = 0.39225680523878;
            const double a2 = 0.5100434119184585;
            const double a3 = -0.4710533854097566;
            const double b1 = 0.78451361047756;
            const double b2 = 0.235573213359357;
            const double b3 = -1.17767998417887;
            const double a4 = 0.5 - (a1 + a2 + a3);
            const double b4 = 1.0 - 2.0 * (b1 + b2 + b3);
            // Closure values must reproduce the tabulated decimals.
            if (std::abs(a4 - 0.0687531682525181) > 1e-13 ||
                std::abs(b4 - 1.31518632068391) > 1e-13)
                throw Error("splitting_coeffs: sixth-order closure sums drifted");
            return {name, {a1, a2, a3, a4}, {b1, b2, b3, b4}};
        }
    }
    throw Error("splitting_coeffs: unknown name");
}

namespace {

std::vector<ScheduleStep> midpoint_steps(const TwoTermGenerator& gen, double m,
                                         double signed_width) {
    const double xc = gen.xfn()(m) * signed_width;
    const double yc = gen.yfn()(m) * signed_width;
    return {{Slot::X, 0.5 * xc}, {Slot::Y, yc}, {Slot::X, 0.5 * xc}};
}

}  // namespace

ExponentSchedule midpoint(const TwoTermGenerator& gen, const Window& w, Direction dir) {
    const double sw = dir == Direction::Forward ? w.dt : -w.dt;
    return finish(FormulaId::Midpoint, w, midpoint_steps(gen, w.mu, sw));
}

ExponentSchedule hdr(const TwoTermGenerator& gen, const Window& w, Direction dir) {
    const double x_lo = integrate(gen.xfn(), w.lo(), w.mu);
    const double x_hi = integrate(gen.xfn(), w.mu, w.hi());
    const double y_full = integrate(gen.yfn(), w.lo(), w.hi());
    std::vector<ScheduleStep> steps;
    if (dir == Direction::Forward)
        steps = {{Slot::X, x_hi}, {Slot::Y, y_full}, {Slot::X, x_lo}};
    else
        steps = {{Slot::X, -x_lo}, {Slot::Y, -y_full}, {Slot::X, -x_hi}};
    return finish(FormulaId::HdR, w, std::move(steps));
}

ExponentSchedule suzuki4(const TwoTermGenerator& gen, const Window& w, Direction dir) {
    const double p = 1.0 / (4.0 - std::cbrt(4.0));
    const double h = 0.5 * w.dt;
    // Sub-windows of the five-fold composition, leftmost (latest) first:
    // midpoints mu +- (1-p) h, mu +- (1-3p) h, mu; widths p dt except for
    // the backward middle leg of width (1-4p) dt.
    struct Sub { double m, width; };
    std::vector<Sub> subs = {{w.mu + (1.0 - p) * h, p * w.dt},
                             {w.mu + (1.0 - 3.0 * p) * h, p * w.dt},
                             {w.mu, (1.0 - 4.0 * p) * w.dt},
                             {w.mu - (1.0 - 3.0 * p) * h, p * w.dt},
                             {w.mu - (1.0 - p) * h, p * w.dt}};
    if (dir == Direction::Backward) {
        std::reverse(subs.begin(), subs.end());
        for (auto& s : subs) s.width = -s.width;
    }
    std::vector<ScheduleStep> steps;
    for (const auto& s : subs) {
        auto part = midpoint_steps(gen, s.m, s.width);
        steps.insert(steps.end(), part.begin(), part.end());
    }
    return finish(FormulaId::Suzuki4, w, std::move(steps));
}

namespace {

double u_from_betas(const BetaSet& bs, const char* who) {
    const double dt = bs.window.dt;
    if (std::abs(bs.b2) < beta2_floor_factor * dt) {
        std::vector<std::string> remedies;
        if (std::abs(bs.b1) >= beta2_floor_factor * dt)
            remedies.push_back("swap the term assignment: b1 is regular, so interchange "
                               "(z1,xfn) <-> (z2,yfn)");
        remedies.push_back("set u = 0 (valid when both b1 and b2 are degenerate)");
        remedies.push_back("shrink dt");
        throw DegenerateBetaError(std::string(who) + ": |b2| = " + std::to_string(bs.b2) +
                                      " is below the u floor " +
                                      std::to_string(beta2_floor_factor * dt),
                                  std::move(remedies));
    }
    return *bs.b12 / bs.b2;
}

}  // namespace

MftResult mft_from_betas(const BetaSet& bs) {
    if (bs.order < 4 || !bs.b12) throw Error("mft_from_betas: needs order >= 4 betas");
    const double u = u_from_betas(bs, "mft");
    const double s = 1.0 / (2.0 - std::cbrt(2.0));
    const double b1 = bs.b1, b2 = bs.b2;
    std::vector<ScheduleStep> steps = {
        {Slot::X, 0.5 * s * b1 + u}, {Slot::Y, s * b2},
        {Slot::X, 0.5 * (1.0 - s) * b1}, {Slot::Y, (1.0 - 2.0 * s) * b2},
        {Slot::X, 0.5 * (1.0 - s) * b1}, {Slot::Y, s * b2},
        {Slot::X, 0.5 * s * b1 - u}};
    const double dt2 = bs.window.dt * bs.window.dt;
    return {finish(FormulaId::MFT, bs.window, std::move(steps)), u, std::abs(u) / dt2};
}

MftResult mft(const TwoTermGenerator& gen, const Window& w, Direction dir) {
    BetaSet bs = beta_set(gen, w, 4);
    if (dir == Direction::Backward) bs = bs.negated();
    return mft_from_betas(bs);
}

MftResult nine_exp_from_betas(const BetaSet& bs) {
    if (bs.order < 4 || !bs.b12) throw Error("nine_exp_from_betas: needs order >= 4 betas");
    const double u = u_from_betas(bs, "nine_exp");
    const auto c = splitting_coeffs(SplittingName::OmelyanFR);
    const double b1 = bs.b1, b2 = bs.b2;
    std::vector<ScheduleStep> steps = {
        {Slot::X, c.a[0] * b1 + u}, {Slot::Y, c.b[0] * b2},
        {Slot::X, c.a[1] * b1},     {Slot::Y, c.b[1] * b2},
        {Slot::X, c.a[2] * b1},     {Slot::Y, c.b[1] * b2},
        {Slot::X, c.a[1] * b1},     {Slot::Y, c.b[0] * b2},
        {Slot::X, c.a[0] * b1 - u}};
    const double dt2 = bs.window.dt * bs.window.dt;
    return {finish(FormulaId::NineExp, bs.window, std::move(steps)), u, std::abs(u) / dt2};
}

MftResult nine_exp(const TwoTermGenerator& gen, const Window& w, Direction dir) {
    BetaSet bs = beta_set(gen, w, 4);
    if (dir == Direction::Backward) bs = bs.negated();
    return nine_exp_from_betas(bs);
}

namespace mst_poly {
// Coefficients of the order-5 commutator polynomials of the decorated
// 15-exponential product, in terms of the base values a1..a4, b1..b4.
// Cross-reference (term -> constant):
//   c12   : u1 b1 -> k12_u1 (= 2(a1+a2)-1), u3 b1 -> k12_u3 (= 2 a1 - 1),
//           u2 b2 -> k12_u2 (= 1 - 2 b1), u4 b2 -> 1
//   c112  : b2 u2^2 -> k112_u2sq, u1 b1 u2 -> k112_u1u2, u4 b2 u2 -> k112_u4u2,
//           z b1^2 -> k112_z, u1 u4 b1 -> k112_u1u4, u3 u4 b1 -> k112_u3u4,
//           u4^2 b2 -> k112_u4sq, w b1 b2 -> k112_w
//   c212  : b1 u1^2 -> k212_u1sq, u3 b1 u1 -> k212_u1u3, w b2^2 -> k212_w,
//           u3^2 b1 -> k212_u3sq, u2 u3 b2 -> k212_u2u3, z b1 b2 -> k212_z
//   c1112 : u1 b1^3 -> k1112_u1, u3 b1^3 -> k1112_u3, u2 b2 b1^2 -> k1112_u2
//   c2212 : u2 b2^3 -> k2212_u2, u1 b1 b2^2 -> k2212_u1, u3 b1 b2^2 -> k2212_u3
//   c1212 : u1 b2 b1^2 -> k1212_u1, u3 b2 b1^2 -> k1212_u3, u2 b2^2 b1 -> k1212_u2
inline constexpr double k12_u1 = 0.804600434314477;
inline constexpr double k12_u3 = -0.21548638952244;
inline constexpr double k12_u2 = -0.56902722095512;

inline constexpr double k112_u2sq = -0.28451361047756;
inline constexpr double k112_u1u2 = 0.804600434314477;
inline constexpr double k112_u4u2 = -0.56902722095512;
inline constexpr double k112_z = -0.157118466580002;
inline constexpr double k112_u1u4 = 0.804600434314477;
inline constexpr double k112_u3u4 = -0.21548638952244;
inline constexpr double k112_u4sq = 0.5;
inline constexpr double k112_w = -0.161938460199746;

inline constexpr double k212_u1sq = 0.402300217157238;
inline constexpr double k212_u1u3 = 0.804600434314477;
inline constexpr double k212_w = -0.161938460199745;
inline constexpr double k212_u3sq = -0.10774319476122;
inline constexpr double k212_u2u3 = -0.56902722095512;
inline constexpr double k212_z = -0.489977318150775;

inline constexpr double k1112_u1 = -0.0118215295615413;
inline constexpr double k1112_u3 = 0.00856168382290096;
inline constexpr double k1112_u2 = 0.0562690326323137;

inline constexpr double k2212_u2 = 0.0160325321433039;
inline constexpr double k2212_u1 = 0.0641595078732893;
inline constexpr double k2212_u3 = 0.065376134206464;

inline constexpr double k1212_u1 = 0.0115567664079044;
inline constexpr double k1212_u3 = 0.0538195677848599;
inline constexpr double k1212_u2 = 0.112538065264628;
}  // namespace mst_poly

namespace {

// Row-equilibrated Gaussian elimination with partial pivoting for the tiny
// decoration systems. The 1-norm condition of the equilibrated matrix is
// estimated from the explicit inverse and gated.
std::vector<double> solve_small(std::vector<std::vector<double>> m, std::vector<double> r,
                                const std::string& context) {
    const int n = static_cast<int>(r.size());
    for (int i = 0; i < n; ++i) {
        double mx = 0.0;
        for (int j = 0; j < n; ++j) mx = std::max(mx, std::abs(m[i][j]));
        if (mx == 0.0) throw IllConditionedError("mst solve: zero row; " + context);
        for (int j = 0; j < n; ++j) m[i][j] /= mx;
        r[i] /= mx;
    }

    // Invert the equilibrated matrix by Gauss-Jordan to get both the
    // solution and the condition estimate.
    std::vector<std::vector<double>> inv(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) inv[i][i] = 1.0;
    auto a = m;
    for (int k = 0; k < n; ++k) {
        int piv = k;
        for (int i = k + 1; i < n; ++i)
            if (std::abs(a[i][k]) > std::abs(a[piv][k])) piv = i;
        if (a[piv][k] == 0.0) throw IllConditionedError("mst solve: singular; " + context);
        std::swap(a[k], a[piv]);
        std::swap(inv[k], inv[piv]);
        const double d = a[k][k];
        for (int j = 0; j < n; ++j) {
            a[k][j] /= d;
            inv[k][j] /= d;
        }
        for (int i = 0; i < n; ++i) {
            if (i == k) continue;
            const double f = a[i][k];
            if (f == 0.0) continue;
            for (int j = 0; j < n; ++j) {
                a[i][j] -= f * a[k][j];
                inv[i][j] -= f * inv[k][j];
            }
        }
    }
    auto norm1 = [n](const std::vector<std::vector<double>>& mm) {
        double best = 0.0;
        for (int j = 0; j < n; ++j) {
            double c = 0.0;
            for (int i = 0; i < n; ++i) c += std::abs(mm[i][j]);
            best = std::max(best, c);
        }
        return best;
    };
    const double cond = norm1(m) * norm1(inv);
    if (!(cond <= 1e12))
        throw IllConditionedError("mst solve: condition " + std::to_string(cond) +
                                  " exceeds 1e12; " + context);

    std::vector<double> x(n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) x[i] += inv[i][j] * r[j];
    return x;
}

}  // namespace

MstResult mst_from_betas(const BetaSet& bs, double beta_floor_factor) {
    using namespace mst_poly;
    if (bs.order < 6) throw Error("mst_from_betas: needs order-6 betas");
    const double b1 = bs.b1, b2 = bs.b2, dt = bs.window.dt;
    const std::string ratio_detail = "b1/dt = " + std::to_string(b1 / dt) +
                                     ", b2/dt = " + std::to_string(b2 / dt);
    if (std::abs(b1) < beta_floor_factor * dt || std::abs(b2) < beta_floor_factor * dt)
        throw DegenerateBetaError("mst: beta below the Theta(dt) floor; " + ratio_detail,
                                  {"swap the term assignment", "shrink dt",
                                   "use a fourth-order formula on this window"});

    // Stage 1: the three order-5 conditions are linear in u1, u2, u3.
    const std::vector<std::vector<double>> m3 = {
        {k1112_u1 * b1 * b1 * b1, k1112_u2 * b2 * b1 * b1, k1112_u3 * b1 * b1 * b1},
        {k2212_u1 * b1 * b2 * b2, k2212_u2 * b2 * b2 * b2, k2212_u3 * b1 * b2 * b2},
        {k1212_u1 * b2 * b1 * b1, k1212_u2 * b2 * b2 * b1, k1212_u3 * b2 * b1 * b1}};
    const std::vector<double> r3 = {*bs.b1112, *bs.b2212, *bs.b1212 + *bs.b2112};
    const auto u123 = solve_small(m3, r3, ratio_detail);
    const double u1 = u123[0], u2 = u123[1], u3 = u123[2];

    // Stage 2: the order-3 condition fixes u4.
    const double u4 = (*bs.b12 - k12_u1 * u1 * b1 - k12_u3 * u3 * b1 - k12_u2 * u2 * b2) / b2;

    // Stage 3: the two remaining order-5 conditions are linear in w, z.
    const double known112 = k112_u2sq * b2 * u2 * u2 + k112_u1u2 * u1 * b1 * u2 +
                            k112_u4u2 * u4 * b2 * u2 + k112_u1u4 * u1 * u4 * b1 +
                            k112_u3u4 * u3 * u4 * b1 + k112_u4sq * u4 * u4 * b2;
    const double known212 = k212_u1sq * b1 * u1 * u1 + k212_u1u3 * u3 * b1 * u1 +
                            k212_u3sq * u3 * u3 * b1 + k212_u2u3 * u2 * u3 * b2;
    const std::vector<std::vector<double>> m2 = {{k112_w * b1 * b2, k112_z * b1 * b1},
                                                 {k212_w * b2 * b2, k212_z * b1 * b2}};
    const std::vector<double> r2 = {*bs.b112 - known112, *bs.b212 - known212};
    const auto wz = solve_small(m2, r2, ratio_detail);
    const double w = wz[0], z = wz[1];

    const auto c = splitting_coeffs(SplittingName::Yoshida6);
    const auto& a = c.a;
    const auto& b = c.b;
    std::vector<ScheduleStep> steps = {
        {Slot::X, a[0] * b1 + u4}, {Slot::Y, b[0] * b2 + u3},
        {Slot::X, a[1] * b1 + u2}, {Slot::Y, b[1] * b2 + u1 - z},
        {Slot::X, a[2] * b1 - w},  {Slot::Y, b[2] * b2 + z},
        {Slot::X, a[3] * b1 + w},  {Slot::Y, b[3] * b2},
        {Slot::X, a[3] * b1 + w},  {Slot::Y, b[2] * b2 + z},
        {Slot::X, a[2] * b1 - w},  {Slot::Y, b[1] * b2 - u1 - z},
        {Slot::X, a[1] * b1 - u2}, {Slot::Y, b[0] * b2 - u3},
        {Slot::X, a[0] * b1 - u4}};
    return {finish(FormulaId::MST, bs.window, std::move(steps)),
            MstDecoration{u1, u2, u3, u4, w, z}};
}

MstResult mst(const TwoTermGenerator& gen, const Window& w, Direction dir,
              double beta_floor_factor) {
    BetaSet bs = beta_set(gen, w, 6);
    if (dir == Direction::Backward) bs = bs.negated();
    return mst_from_betas(bs, beta_floor_factor);
}

ExponentSchedule build_schedule(const TwoTermGenerator& gen, FormulaId id, const Window& w,
                                Direction dir) {
    switch (id) {
        case FormulaId::Midpoint: return midpoint(gen, w, dir);
        case FormulaId::HdR: return hdr(gen, w, dir);
        case FormulaId::MFT: return mft(gen, w, dir).schedule;
        case FormulaId::NineExp: return nine_exp(gen, w, dir).schedule;
        case FormulaId::Suzuki4: return suzuki4(gen, w, dir);
        case FormulaId::MST: return mst(gen, w, dir).schedule;
    }
    throw Error("build_schedule: unknown formula");
}

CMatrix evaluate(const ExponentSchedule& schedule, const TwoTermGenerator& gen) {
    CMatrix p = CMatrix::identity(gen.dim());
    for (auto it = schedule.steps.rbegin(); it != schedule.steps.rend(); ++it) {
        const int slot = it->slot == Slot::X ? 1 : 2;
        if (gen.slot_exponential_diagonal(slot)) {
            p.scale_rows(gen.slot_exponential_diag(slot, it->coeff));
        } else {
            p = gen.slot_exponential(slot, it->coeff) * p;
        }
    }
    return p;
}

std::string schedule_to_json(const ExponentSchedule& schedule) {
    char buf[64];
    auto g17 = [&buf](double v) {
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        return std::string(buf);
    };
    std::ostringstream os;
    os << "{\"formula\":\"" << to_string(schedule.formula) << "\",\"mu\":" << g17(schedule.window.mu)
       << ",\"dt\":" << g17(schedule.window.dt) << ",\"steps\":[";
    for (size_t i = 0; i < schedule.steps.size(); ++i) {
        if (i) os << ",";
        os << "{\"slot\":\"" << (schedule.steps[i].slot == Slot::X ? "X" : "Y")
           << "\",\"coeff\":" << g17(schedule.steps[i].coeff) << "}";
    }
    os << "]}";
    return os.str();
}

}  // namespace trotter
