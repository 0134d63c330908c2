#include "trotter/models.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace trotter {

const char* to_string(Assignment a) {
    return a == Assignment::TermA_to_X ? "a_to_x" : "a_to_y";
}

Assignment assignment_from_string(const std::string& name) {
    if (name == "a_to_x") return Assignment::TermA_to_X;
    if (name == "a_to_y") return Assignment::TermA_to_Y;
    throw Error("unknown assignment: " + name);
}

CMatrix pauli_x() {
    return CMatrix::from_entries(2, {0.0, 1.0, 1.0, 0.0});
}

CMatrix pauli_y() {
    return CMatrix::from_entries(2, {0.0, cdouble(0.0, -1.0), cdouble(0.0, 1.0), 0.0});
}

CMatrix pauli_z() {
    return CMatrix::from_entries(2, {1.0, 0.0, 0.0, -1.0});
}

CMatrix site_operator(const CMatrix& op, int site, int length) {
    if (op.dim() != 2) throw DimensionError("site_operator: expects a 1-qubit operator");
    if (site < 0 || site >= length) throw Error("site_operator: site out of range");
    const int dim = 1 << length;
    CMatrix m(dim);
    const int mask = 1 << site;
    for (int r = 0; r < dim; ++r) {
        const int rb = (r & mask) ? 1 : 0;
        for (int cb = 0; cb < 2; ++cb) {
            const cdouble v = op(rb, cb);
            if (v == cdouble(0.0, 0.0)) continue;
            const int c = (r & ~mask) | (cb ? mask : 0);
            m(r, c) += v;
        }
    }
    return m;
}

TwoTermGenerator landau_zener(Assignment assign) {
    const cdouble minus_i(0.0, -1.0);
    CMatrix zx = minus_i * pauli_x();
    CMatrix zz = minus_i * pauli_z();
    ScalarFn one = [](double) { return 1.0; };
    ScalarFn ramp = [](double t) { return t; };
    if (assign == Assignment::TermA_to_X)
        return TwoTermGenerator(std::move(zx), std::move(zz), one, ramp, true);
    return TwoTermGenerator(std::move(zz), std::move(zx), ramp, one, true);
}

TwoTermGenerator ising_chain(const IsingParams& p) {
    if (p.L < 2 || p.L > 10) throw Error("ising_chain: L must be in [2,10]");
    const int dim = 1 << p.L;
    const CMatrix sx = pauli_x();

    CMatrix f(dim);
    for (int i = 0; i < p.L; ++i) f += p.hx * site_operator(sx, i, p.L);

    // G is diagonal in the computational basis; build it entrywise.
    CMatrix g(dim);
    for (int basis = 0; basis < dim; ++basis) {
        double e = 0.0;
        for (int i = 0; i < p.L; ++i) {
            const double zi = (basis >> i) & 1 ? -1.0 : 1.0;
            const double zj = (basis >> ((i + 1) % p.L)) & 1 ? -1.0 : 1.0;
            e += p.J * zi * zj + p.hz * zi;
        }
        g(basis, basis) = e;
    }

    const cdouble minus_i(0.0, -1.0);
    return TwoTermGenerator(minus_i * f, minus_i * g, [](double t) { return std::sin(t); },
                            [](double) { return 1.0; }, true);
}

std::vector<GateOp> compile_gates(const ExponentSchedule& schedule, const IsingParams& p) {
    if (p.L < 2 || p.L > 10) throw Error("compile_gates: L out of range");
    std::vector<GateOp> gates;
    gates.reserve(schedule.steps.size() * 2 * p.L);
    // Application order: rightmost exponential acts first.
    for (auto it = schedule.steps.rbegin(); it != schedule.steps.rend(); ++it) {
        const double c = it->coeff;
        if (it->slot == Slot::X) {
            for (int i = 0; i < p.L; ++i) gates.push_back({GateKind::RX, {i}, 2.0 * c * p.hx});
        } else {
            for (int i = 0; i < p.L; ++i)
                gates.push_back({GateKind::RZZ, {i, (i + 1) % p.L}, 2.0 * c * p.J});
            for (int i = 0; i < p.L; ++i) gates.push_back({GateKind::RZ, {i}, 2.0 * c * p.hz});
        }
    }
    return gates;
}

long gate_count(FormulaId id, int L, int N) {
    switch (id) {
        case FormulaId::Midpoint: return 5L * L * N;
        case FormulaId::MFT: return 10L * L * N;
        case FormulaId::NineExp: return 13L * L * N;
        case FormulaId::Suzuki4: return 15L * L * N;
        default: return structural_gate_count(id, L, N);
    }
}

long structural_gate_count(FormulaId id, int L, int N) {
    const int steps = formula_step_count(id);
    const int x_steps = (steps + 1) / 2;  // every schedule here is X-outside
    const int y_steps = steps - x_steps;
    return static_cast<long>(N) * L * (x_steps + 2 * y_steps);
}

CMatrix gate_matrix(const GateOp& g, int L) {
    const int dim = 1 << L;
    const double half = 0.5 * g.angle;
    switch (g.kind) {
        case GateKind::RX: {
            // cos(a/2) I - i sin(a/2) X on the target site
            CMatrix m = std::cos(half) * CMatrix::identity(dim);
            m += cdouble(0.0, -std::sin(half)) * site_operator(pauli_x(), g.qubits.at(0), L);
            return m;
        }
        case GateKind::RZ: {
            CMatrix m(dim);
            const int mask = 1 << g.qubits.at(0);
            for (int b = 0; b < dim; ++b) {
                const double z = (b & mask) ? -1.0 : 1.0;
                m(b, b) = std::exp(cdouble(0.0, -half * z));
            }
            return m;
        }
        case GateKind::RZZ: {
            CMatrix m(dim);
            const int m1 = 1 << g.qubits.at(0);
            const int m2 = 1 << g.qubits.at(1);
            if (g.qubits.at(0) == g.qubits.at(1)) throw Error("gate_matrix: rzz needs two sites");
            for (int b = 0; b < dim; ++b) {
                const double z1 = (b & m1) ? -1.0 : 1.0;
                const double z2 = (b & m2) ? -1.0 : 1.0;
                m(b, b) = std::exp(cdouble(0.0, -half * z1 * z2));
            }
            return m;
        }
    }
    throw Error("gate_matrix: unknown gate kind");
}

CMatrix replay_gates(const std::vector<GateOp>& gates, int L) {
    CMatrix u = CMatrix::identity(1 << L);
    for (const auto& g : gates) u = gate_matrix(g, L) * u;
    return u;
}

namespace {

const char* kind_name(GateKind k) {
    switch (k) {
        case GateKind::RX: return "rx";
        case GateKind::RZ: return "rz";
        case GateKind::RZZ: return "rzz";
    }
    return "?";
}

GateKind kind_from(const std::string& s) {
    if (s == "rx") return GateKind::RX;
    if (s == "rz") return GateKind::RZ;
    if (s == "rzz") return GateKind::RZZ;
    throw Error("unknown gate kind: " + s);
}

std::string g17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

void write_gate_program(std::ostream& os, const GateProgramHeader& header,
                        const std::vector<GateOp>& gates) {
    os << "{\"L\":" << header.L << ",\"formula\":\"" << to_string(header.formula)
       << "\",\"N\":" << header.N << ",\"dt\":" << g17(header.dt) << "}\n";
    for (const auto& g : gates) {
        os << "{\"kind\":\"" << kind_name(g.kind) << "\",\"qubits\":[";
        for (size_t i = 0; i < g.qubits.size(); ++i) {
            if (i) os << ",";
            os << g.qubits[i];
        }
        os << "],\"angle\":" << g17(g.angle) << "}\n";
    }
}

GateProgram read_gate_program(std::istream& is) {
    GateProgram prog;
    std::string line;
    if (!std::getline(is, line)) throw Error("read_gate_program: empty input");
    auto header = nlohmann::json::parse(line);
    prog.header.L = header.at("L").get<int>();
    prog.header.formula = formula_from_string(header.at("formula").get<std::string>());
    prog.header.N = header.at("N").get<int>();
    prog.header.dt = header.at("dt").get<double>();
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        auto j = nlohmann::json::parse(line);
        GateOp g;
        g.kind = kind_from(j.at("kind").get<std::string>());
        g.qubits = j.at("qubits").get<std::vector<int>>();
        g.angle = j.at("angle").get<double>();
        prog.gates.push_back(std::move(g));
    }
    return prog;
}

}  // namespace trotter
