#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "trotter/formulas.hpp"

namespace trotter {

/// Which physical Hamiltonian term occupies slot X. Term A is the
/// constant-coefficient sigma_x term of the two-level model.
enum class Assignment { TermA_to_X, TermA_to_Y };

const char* to_string(Assignment a);
Assignment assignment_from_string(const std::string& name);

CMatrix pauli_x();
CMatrix pauli_y();
CMatrix pauli_z();

/// op acting on site `site` of an L-site chain (site 0 is the least
/// significant qubit of the computational-basis index).
CMatrix site_operator(const CMatrix& op, int site, int length);

/// Two-level avoided-crossing generator H(t) = sigma_x + t sigma_z,
/// as A(t) = -iH(t) split across the two slots per the assignment.
TwoTermGenerator landau_zener(Assignment assign);

struct IsingParams {
    int L = 6;
    double J = -1.0;
    double hz = 0.2;
    double hx = -2.0;
};

/// Periodic transverse-field Ising chain under an oscillatory drive:
/// H(t) = sin(t) F + G with F = sum_i hx sigma_x^i and
/// G = sum_i (J sigma_z^i sigma_z^{i+1} + hz sigma_z^i); slots carry
/// (-iF, -iG). 2 <= L <= 10. At L = 2 the periodic closure duplicates
/// the single bond, which is kept (coefficient 2J) to honor the sum.
TwoTermGenerator ising_chain(const IsingParams& p);

enum class GateKind { RX, RZ, RZZ };

/// One rotation gate. Conventions:
///   RX(theta)  = e^{-i theta sigma_x / 2}
///   RZ(theta)  = e^{-i theta sigma_z / 2}
///   RZZ(theta) = e^{-i theta sigma_z x sigma_z / 2}
struct GateOp {
    GateKind kind;
    std::vector<int> qubits;  // one site, or an RZZ pair
    double angle;
};

/// Compiles a schedule for the Ising generator into rotation gates:
/// an X step with coefficient c becomes L RX(2 c hx) gates; a Y step
/// becomes L RZZ(2 c J) (ascending bond) then L RZ(2 c hz) gates.
/// Gates are listed in application order (first-applied first), so the
/// schedule is traversed right to left.
std::vector<GateOp> compile_gates(const ExponentSchedule& schedule, const IsingParams& p);

/// Gate count of an N-step evolution under the nominal benchmark counting
/// model: 5LN (midpoint), 10LN (7-exponential), 13LN (9-exponential),
/// 15LN (11-exponential Suzuki). The remaining formulas have no nominal
/// model and count structurally. Note the nominal midpoint and Suzuki
/// values differ from the emitted circuit sizes (4LN and 16LN); see
/// structural_gate_count and the README.
long gate_count(FormulaId id, int L, int N);

/// Exact emitted-circuit size: N x (L per X step + 2L per Y step).
long structural_gate_count(FormulaId id, int L, int N);

/// Dense matrix of one gate on an L-site register.
CMatrix gate_matrix(const GateOp& g, int L);

/// Product of a gate program in application order (first gate acts first).
CMatrix replay_gates(const std::vector<GateOp>& gates, int L);

/// Header object preceding the gates in an exported program.
struct GateProgramHeader {
    int L = 0;
    FormulaId formula = FormulaId::Midpoint;
    int N = 0;
    double dt = 0.0;
};

/// JSON-lines serialization: one header object
/// {"L":..,"formula":..,"N":..,"dt":..} followed by one object per gate
/// {"kind":"rx"|"rz"|"rzz","qubits":[...],"angle":...}, 17 significant
/// digits on numbers.
void write_gate_program(std::ostream& os, const GateProgramHeader& header,
                        const std::vector<GateOp>& gates);

struct GateProgram {
    GateProgramHeader header;
    std::vector<GateOp> gates;
};

GateProgram read_gate_program(std::istream& is);

}  // namespace trotter
