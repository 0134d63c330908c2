#pragma once

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "trotter/cmatrix.hpp"

namespace testutil {

// Deterministic cross-platform generator (xorshift64*); the standard
// distributions are implementation-defined, which would make frozen
// expected values fragile.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : s_(seed ? seed : 0x9e3779b97f4a7c15ull) {}

    double uniform() {  // [0, 1)
        s_ ^= s_ >> 12;
        s_ ^= s_ << 25;
        s_ ^= s_ >> 27;
        const std::uint64_t r = s_ * 0x2545f4914f6cdd1dull;
        return static_cast<double>(r >> 11) * 0x1.0p-53;
    }
    double sym() { return 2.0 * uniform() - 1.0; }  // [-1, 1)

private:
    std::uint64_t s_;
};

inline trotter::CMatrix random_matrix(int dim, Rng& rng) {
    trotter::CMatrix m(dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) m(i, j) = trotter::cdouble(rng.sym(), rng.sym());
    return m;
}

inline trotter::CMatrix random_hermitian(int dim, Rng& rng) {
    auto m = random_matrix(dim, rng);
    return 0.5 * (m + m.adjoint());
}

inline trotter::CMatrix random_anti_hermitian(int dim, Rng& rng) {
    auto m = random_matrix(dim, rng);
    return 0.5 * (m - m.adjoint());
}

// Least-squares slope of log(v) against log(x); independent of the
// library's own fitting code.
inline double fit_slope(const std::vector<std::pair<double, double>>& pts) {
    double sx = 0, sy = 0;
    for (auto& [x, v] : pts) {
        sx += std::log(x);
        sy += std::log(std::fabs(v));
    }
    const double n = static_cast<double>(pts.size());
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0;
    for (auto& [x, v] : pts) {
        const double dx = std::log(x) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(std::fabs(v)) - my);
    }
    return sxy / sxx;
}

}  // namespace testutil
