#pragma once

#include <complex>
#include <vector>

#include "trotter/errors.hpp"

namespace trotter {

using cdouble = std::complex<double>;

namespace tolerances {
/// Relative Hermiticity gate for eigensolver inputs.
inline constexpr double hermiticity = 1e-12;
/// Jacobi sweeps stop once the off-diagonal Frobenius mass drops below
/// this fraction of the input norm.
inline constexpr double jacobi_offdiag = 1e-13;
}  // namespace tolerances

/// Dense square complex matrix, row-major.
class CMatrix {
public:
    CMatrix() = default;
    /// Zero matrix of the given dimension (dim >= 1).
    explicit CMatrix(int dim);

    static CMatrix identity(int dim);
    /// Builds from row-major entries; rejects NaN/Inf and size mismatches.
    static CMatrix from_entries(int dim, std::vector<cdouble> entries);

    int dim() const { return dim_; }
    bool empty() const { return dim_ == 0; }

    cdouble& operator()(int i, int j) { return a_[static_cast<size_t>(i) * dim_ + j]; }
    const cdouble& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * dim_ + j]; }

    const std::vector<cdouble>& entries() const { return a_; }

    CMatrix& operator+=(const CMatrix& o);
    CMatrix& operator-=(const CMatrix& o);
    CMatrix& operator*=(cdouble s);

    CMatrix adjoint() const;
    cdouble trace() const;
    bool all_finite() const;

    /// In-place left multiplication by a diagonal matrix: row i scaled by d[i].
    void scale_rows(const std::vector<cdouble>& d);
    /// In-place right multiplication by a diagonal matrix: column j scaled by d[j].
    void scale_cols(const std::vector<cdouble>& d);

private:
    int dim_ = 0;
    std::vector<cdouble> a_;
};

CMatrix operator+(CMatrix a, const CMatrix& b);
CMatrix operator-(CMatrix a, const CMatrix& b);
CMatrix operator*(const CMatrix& a, const CMatrix& b);
CMatrix operator*(cdouble s, CMatrix a);
CMatrix operator*(CMatrix a, cdouble s);

/// ab - ba.
CMatrix commutator(const CMatrix& a, const CMatrix& b);

/// sqrt(sum |a_ij|^2) = sqrt(tr(a† a)).
double frobenius_norm(const CMatrix& m);

/// Maximum absolute column sum.
double one_norm(const CMatrix& m);

double max_abs_entry(const CMatrix& m);

/// Largest singular value, computed through the Hermitian eigensolver
/// applied to m† m. Deterministic; relative accuracy ~1e-10.
double spectral_norm(const CMatrix& m);

/// e^m by scaling-and-squaring with the order-13 Pade approximant,
/// thresholded on the 1-norm. Backward-stable for the dimensions and
/// norms this library works at (dim <= ~1024, moderate norms).
CMatrix expm(const CMatrix& m);

/// Solves a x = b for x with partial-pivoting LU; b may hold many columns.
CMatrix lu_solve(CMatrix a, CMatrix b);

/// Full eigendecomposition of a Hermitian matrix.
struct HermitianEig {
    std::vector<double> eigenvalues;  // ascending
    CMatrix basis;                    // columns are eigenvectors
    bool identity_basis = false;      // set when the input was already diagonal
};

/// Cyclic complex Jacobi eigensolver. The input must be Hermitian within
/// `herm_tol` relative Frobenius deviation, otherwise NonHermitianError.
HermitianEig hermitian_eig(const CMatrix& z, double herm_tol = tolerances::hermiticity);

/// basis · diag(e^{c·lambda_k}) · basis†, i.e. e^{cZ} for the decomposed Z.
CMatrix exp_scaled(const HermitianEig& eig, cdouble c);

}  // namespace trotter
