#pragma once

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <tuple>

#include "trotter/cmatrix.hpp"
#include "trotter/quadrature.hpp"

namespace trotter {

struct BetaSet;
class TwoTermGenerator;
BetaSet beta_set(const TwoTermGenerator& gen, const Window& w, int order);

/// Two-term time-dependent generator A(t) = x(t) Z1 + y(t) Z2.
/// Immutable after construction; copies share the lazily built
/// exponential fast-path data and the coefficient cache.
class TwoTermGenerator {
public:
    /// anti_hermitian asserts that both operators are anti-Hermitian
    /// (e.g. -iF, -iG for Hermitian F, G); it is verified on construction.
    TwoTermGenerator(CMatrix z1, CMatrix z2, ScalarFn xfn, ScalarFn yfn,
                     bool anti_hermitian);

    const CMatrix& z1() const;
    const CMatrix& z2() const;
    const ScalarFn& xfn() const;
    const ScalarFn& yfn() const;
    bool anti_hermitian() const;
    int dim() const;

    /// The generator with (z1, xfn) and (z2, yfn) interchanged.
    /// The propagator is invariant under this swap; formulas are not.
    TwoTermGenerator swapped() const;

    /// A(t) as a dense matrix.
    CMatrix at(double t) const;

    /// e^{c * z_slot} for slot 1 or 2, through the eigendecomposition fast
    /// path when the operator is (anti-)Hermitian, dense expm otherwise.
    CMatrix slot_exponential(int slot, double coeff) const;

    /// True when the slot exponential is diagonal in the computational
    /// basis (lets callers replace a matrix product by a row scaling).
    bool slot_exponential_diagonal(int slot) const;
    /// Diagonal of e^{c * z_slot}; only valid when the slot is diagonal.
    std::vector<cdouble> slot_exponential_diag(int slot, double coeff) const;

    struct CacheKey {
        std::uint64_t mu_bits, dt_bits;
        bool operator<(const CacheKey& o) const {
            return std::tie(mu_bits, dt_bits) < std::tie(o.mu_bits, o.dt_bits);
        }
    };

private:
    struct Shared;
    std::shared_ptr<Shared> s_;
    friend BetaSet beta_set(const TwoTermGenerator&, const Window&, int);
};

/// Continuous-BCH coefficients of one window. Entries beyond the
/// populated order are absent (nullopt), not zero.
struct BetaSet {
    BetaSet(const Window& w, int ord) : window(w), order(ord) {}

    Window window;
    int order;  // 2, 4 or 6

    double b1 = 0.0, b2 = 0.0;
    std::optional<double> b12;
    std::optional<double> b112, b212;
    std::optional<double> b1112, b1212, b2112, b2212;

    /// Coefficients of the same window traversed backward: every entry
    /// flips sign (the log of the inverse propagator).
    BetaSet negated() const;
};

/// Computes the coefficient set for a window at the requested order
/// (2: b1,b2; 4: adds b12; 6: all). Results are cached per generator,
/// keyed by the exact (mu, dt) bit patterns.
BetaSet beta_set(const TwoTermGenerator& gen, const Window& w, int order);

/// The first four terms of the operator logarithm of the propagator:
/// O1 = b1 Z1 + b2 Z2, O2 = b12 [Z1,Z2],
/// O3 = sum_i b_{i12} [Z_i,[Z1,Z2]], O4 = sum_ij b_{ij12} [Z_i,[Z_j,[Z1,Z2]]].
std::array<CMatrix, 4> omega_matrices(const TwoTermGenerator& gen, const Window& w);

/// Leading time-dependent error operator of the 7-exponential formula:
/// O3 + O4 - (u^2/2) b2 [Z1,[Z1,Z2]] with u = b12/b2.
/// Throws DegenerateBetaError when |b2| is below the u floor.
CMatrix upsilon5(const TwoTermGenerator& gen, const Window& w);

/// |b2| below this fraction of dt makes u = b12/b2 meaningless.
inline constexpr double beta2_floor_factor = 1e-12;

/// Fifth-order commutator combination
///   g1 [A,[A,[A,[A,B]]]] + g2 [A,[A,[B,[A,B]]]] + g3 [B,[A,[A,[A,B]]]]
/// + g4 [B,[B,[B,[A,B]]]] + g5 [B,[B,[A,[A,B]]]] + g6 [A,[B,[B,[A,B]]]].
/// Callers substitute A <- b1 Z1, B <- b2 Z2 to obtain the leading
/// time-independent splitting error.
CMatrix c5_leading_error(const std::array<double, 6>& gammas, const CMatrix& a,
                         const CMatrix& b);

/// Leading-error weights of the plain fourth-order three-stage splitting;
/// their ratio explains the large-mu gap between the two term assignments.
inline constexpr double frs_gamma1 = -0.0004138;
inline constexpr double frs_gamma4 = 0.0046844;

}  // namespace trotter
