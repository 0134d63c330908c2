#include "trotter/cmatrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

namespace trotter {

namespace {

void require_same_dim(const CMatrix& a, const CMatrix& b, const char* op) {
    if (a.dim() != b.dim())
        throw DimensionError(std::string(op) + ": dimension mismatch (" +
                             std::to_string(a.dim()) + " vs " + std::to_string(b.dim()) + ")");
}

}  // namespace

CMatrix::CMatrix(int dim) : dim_(dim) {
    if (dim < 1) throw DimensionError("CMatrix: dim must be >= 1");
    a_.assign(static_cast<size_t>(dim) * dim, cdouble(0.0, 0.0));
}

CMatrix CMatrix::identity(int dim) {
    CMatrix m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

CMatrix CMatrix::from_entries(int dim, std::vector<cdouble> entries) {
    if (dim < 1) throw DimensionError("CMatrix: dim must be >= 1");
    if (entries.size() != static_cast<size_t>(dim) * dim)
        throw DimensionError("CMatrix: entry count does not match dim^2");
    CMatrix m;
    m.dim_ = dim;
    m.a_ = std::move(entries);
    if (!m.all_finite()) throw NonFiniteError("CMatrix: non-finite entry");
    return m;
}

CMatrix& CMatrix::operator+=(const CMatrix& o) {
    require_same_dim(*this, o, "operator+");
    for (size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
    return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& o) {
    require_same_dim(*this, o, "operator-");
    for (size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
    return *this;
}

CMatrix& CMatrix::operator*=(cdouble s) {
    for (auto& v : a_) v *= s;
    return *this;
}

CMatrix CMatrix::adjoint() const {
    CMatrix r(dim_);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) r(j, i) = std::conj((*this)(i, j));
    return r;
}

cdouble CMatrix::trace() const {
    cdouble t = 0.0;
    for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
}

bool CMatrix::all_finite() const {
    for (const auto& v : a_)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
}

void CMatrix::scale_rows(const std::vector<cdouble>& d) {
    if (d.size() != static_cast<size_t>(dim_)) throw DimensionError("scale_rows: bad diagonal size");
    for (int i = 0; i < dim_; ++i) {
        const cdouble s = d[i];
        cdouble* row = &a_[static_cast<size_t>(i) * dim_];
        for (int j = 0; j < dim_; ++j) row[j] *= s;
    }
}

void CMatrix::scale_cols(const std::vector<cdouble>& d) {
    if (d.size() != static_cast<size_t>(dim_)) throw DimensionError("scale_cols: bad diagonal size");
    for (int i = 0; i < dim_; ++i) {
        cdouble* row = &a_[static_cast<size_t>(i) * dim_];
        for (int j = 0; j < dim_; ++j) row[j] *= d[j];
    }
}

CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
CMatrix operator*(cdouble s, CMatrix a) { return a *= s; }
CMatrix operator*(CMatrix a, cdouble s) { return a *= s; }

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
    require_same_dim(a, b, "operator*");
    const int n = a.dim();
    CMatrix c(n);
    // i-k-j order keeps the inner loop contiguous in both b and c.
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < n; ++k) {
            const cdouble aik = a(i, k);
            if (aik == cdouble(0.0, 0.0)) continue;
            const cdouble* brow = &b(k, 0);
            cdouble* crow = &c(i, 0);
            for (int j = 0; j < n; ++j) crow[j] += aik * brow[j];
        }
    }
    return c;
}

CMatrix commutator(const CMatrix& a, const CMatrix& b) {
    require_same_dim(a, b, "commutator");
    return a * b - b * a;
}

double frobenius_norm(const CMatrix& m) {
    double s = 0.0;
    for (const auto& v : m.entries()) s += std::norm(v);
    return std::sqrt(s);
}

double one_norm(const CMatrix& m) {
    const int n = m.dim();
    double best = 0.0;
    for (int j = 0; j < n; ++j) {
        double col = 0.0;
        for (int i = 0; i < n; ++i) col += std::abs(m(i, j));
        best = std::max(best, col);
    }
    return best;
}

double max_abs_entry(const CMatrix& m) {
    double best = 0.0;
    for (const auto& v : m.entries()) best = std::max(best, std::abs(v));
    return best;
}

double spectral_norm(const CMatrix& m) {
    const auto gram = m.adjoint() * m;  // Hermitian PSD
    const auto eig = hermitian_eig(gram, 1e-8);
    double lam = eig.eigenvalues.empty() ? 0.0 : eig.eigenvalues.back();
    return std::sqrt(std::max(0.0, lam));
}

CMatrix lu_solve(CMatrix a, CMatrix b) {
    require_same_dim(a, b, "lu_solve");
    const int n = a.dim();
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);

    for (int k = 0; k < n; ++k) {
        int piv = k;
        double best = std::abs(a(k, k));
        for (int i = k + 1; i < n; ++i) {
            const double v = std::abs(a(i, k));
            if (v > best) { best = v; piv = i; }
        }
        if (best == 0.0) throw ConvergenceError("lu_solve: singular matrix");
        if (piv != k) {
            for (int j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
            for (int j = 0; j < n; ++j) std::swap(b(k, j), b(piv, j));
        }
        const cdouble akk = a(k, k);
        for (int i = k + 1; i < n; ++i) {
            const cdouble f = a(i, k) / akk;
            a(i, k) = f;
            if (f == cdouble(0.0, 0.0)) continue;
            for (int j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
            for (int j = 0; j < n; ++j) b(i, j) -= f * b(k, j);
        }
    }
    // Back substitution.
    for (int k = n - 1; k >= 0; --k) {
        const cdouble akk = a(k, k);
        for (int j = 0; j < n; ++j) {
            cdouble s = b(k, j);
            for (int i = k + 1; i < n; ++i) s -= a(k, i) * b(i, j);
            b(k, j) = s / akk;
        }
    }
    return b;
}

CMatrix expm(const CMatrix& m) {
    if (!m.all_finite()) throw NonFiniteError("expm: non-finite input");
    const int n = m.dim();

    // Order-13 Pade numerator/denominator coefficients.
    static const double b[] = {
        64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
        1187353796428800.0,  129060195264000.0,   10559470521600.0,
        670442572800.0,      33522128640.0,       1323241920.0,
        40840800.0,          960960.0,            16380.0,
        182.0,               1.0};
    constexpr double theta13 = 5.371920351148152;

    CMatrix A = m;
    const double nrm = one_norm(A);
    int squarings = 0;
    if (nrm > theta13) {
        squarings = static_cast<int>(std::ceil(std::log2(nrm / theta13)));
        A *= cdouble(std::ldexp(1.0, -squarings), 0.0);
    }

    const CMatrix I = CMatrix::identity(n);
    const CMatrix A2 = A * A;
    const CMatrix A4 = A2 * A2;
    const CMatrix A6 = A2 * A4;

    CMatrix U = A6 * (b[13] * A6 + b[11] * A4 + b[9] * A2);
    U += b[7] * A6 + b[5] * A4 + b[3] * A2 + b[1] * I;
    U = A * U;

    CMatrix V = A6 * (b[12] * A6 + b[10] * A4 + b[8] * A2);
    V += b[6] * A6 + b[4] * A4 + b[2] * A2 + b[0] * I;

    CMatrix R = lu_solve(V - U, V + U);
    for (int s = 0; s < squarings; ++s) R = R * R;
    return R;
}

HermitianEig hermitian_eig(const CMatrix& z, double herm_tol) {
    const int n = z.dim();
    const double znorm = frobenius_norm(z);
    const double herm_dev = frobenius_norm(z - z.adjoint());
    if (herm_dev > herm_tol * std::max(znorm, 1e-300))
        throw NonHermitianError("hermitian_eig: input is not Hermitian within tolerance");

    // Work on the Hermitized copy so roundoff dust in the input cannot bias
    // the rotations.
    CMatrix a = 0.5 * (z + z.adjoint());
    CMatrix v = CMatrix::identity(n);
    bool rotated = false;

    const double target = tolerances::jacobi_offdiag * std::max(znorm, 1e-300);
    auto offdiag = [&]() {
        double s = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (i != j) s += std::norm(a(i, j));
        return std::sqrt(s);
    };

    const int max_sweeps = 60;
    int sweep = 0;
    while (offdiag() > target) {
        if (++sweep > max_sweeps)
            throw ConvergenceError("hermitian_eig: Jacobi sweeps did not converge");
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const cdouble apq = a(p, q);
                const double mag = std::abs(apq);
                if (mag <= 1e-300 || mag <= 1e-18 * znorm / n) continue;
                rotated = true;

                const cdouble phase = apq / mag;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double theta = (aqq - app) / (2.0 * mag);
                // Small root of t^2 - 2 theta t - 1 = 0; the sign choice is
                // the one that annihilates a(p,q) under this J convention.
                const double t = -(theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                // Two-sided rotation J† A J with
                //   J[p][p]=c, J[p][q]=-s*phase, J[q][p]=s*conj(phase), J[q][q]=c.
                for (int k = 0; k < n; ++k) {  // A <- A J
                    const cdouble akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp + s * std::conj(phase) * akq;
                    a(k, q) = -s * phase * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {  // A <- J† A
                    const cdouble apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk + s * phase * aqk;
                    a(q, k) = -s * std::conj(phase) * apk + c * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = cdouble(a(p, p).real(), 0.0);
                a(q, q) = cdouble(a(q, q).real(), 0.0);

                for (int k = 0; k < n; ++k) {  // V <- V J
                    const cdouble vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp + s * std::conj(phase) * vkq;
                    v(k, q) = -s * phase * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(),
              [&](int i, int j) { return a(i, i).real() < a(j, j).real(); });

    HermitianEig out;
    out.eigenvalues.resize(n);
    out.basis = CMatrix(n);
    bool already_sorted = true;
    for (int k = 0; k < n; ++k) {
        out.eigenvalues[k] = a(idx[k], idx[k]).real();
        if (idx[k] != k) already_sorted = false;
        for (int i = 0; i < n; ++i) out.basis(i, k) = v(i, idx[k]);
    }
    out.identity_basis = !rotated && already_sorted;
    return out;
}

CMatrix exp_scaled(const HermitianEig& eig, cdouble c) {
    const int n = eig.basis.dim();
    std::vector<cdouble> d(n);
    for (int k = 0; k < n; ++k) d[k] = std::exp(c * eig.eigenvalues[k]);
    if (eig.identity_basis) {
        CMatrix r(n);
        for (int k = 0; k < n; ++k) r(k, k) = d[k];
        return r;
    }
    CMatrix w = eig.basis;
    w.scale_cols(d);
    return w * eig.basis.adjoint();
}

}  // namespace trotter
