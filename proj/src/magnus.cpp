#include "trotter/magnus.hpp"

#include <bit>
#include <cmath>
#include <mutex>
#include <string>

namespace trotter {

namespace {

enum class OpKind { AntiHermitian, Hermitian, General };

OpKind classify(const CMatrix& z) {
    const double n = frobenius_norm(z);
    if (n == 0.0) return OpKind::Hermitian;
    if (frobenius_norm(z - z.adjoint()) <= tolerances::hermiticity * n) return OpKind::Hermitian;
    if (frobenius_norm(z + z.adjoint()) <= tolerances::hermiticity * n)
        return OpKind::AntiHermitian;
    return OpKind::General;
}

}  // namespace

struct TwoTermGenerator::Shared {
    CMatrix z1, z2;
    ScalarFn xfn, yfn;
    bool anti_hermitian = false;

    OpKind kind[2] = {OpKind::General, OpKind::General};
    std::once_flag eig_once[2];
    std::optional<HermitianEig> eig[2];  // of z (Hermitian) or i z (anti-Hermitian)

    mutable std::shared_mutex beta_mutex;
    mutable std::map<CacheKey, BetaSet> beta_cache;

    const HermitianEig& eig_for(int slot) {
        const int k = slot - 1;
        std::call_once(eig_once[k], [&] {
            const CMatrix& z = (slot == 1) ? z1 : z2;
            if (kind[k] == OpKind::Hermitian) {
                eig[k] = hermitian_eig(z);
            } else {
                eig[k] = hermitian_eig(cdouble(0.0, 1.0) * z);  // iZ is Hermitian
            }
        });
        return *eig[k];
    }
};

TwoTermGenerator::TwoTermGenerator(CMatrix z1, CMatrix z2, ScalarFn xfn, ScalarFn yfn,
                                   bool anti_hermitian)
    : s_(std::make_shared<Shared>()) {
    if (z1.dim() != z2.dim())
        throw DimensionError("TwoTermGenerator: slot operators must share a dimension");
    if (!z1.all_finite() || !z2.all_finite())
        throw NonFiniteError("TwoTermGenerator: non-finite operator entries");
    if (anti_hermitian) {
        for (const CMatrix* z : {&z1, &z2}) {
            const double n = frobenius_norm(*z);
            if (n > 0.0 && frobenius_norm(*z + z->adjoint()) > 1e-12 * n)
                throw NonHermitianError(
                    "TwoTermGenerator: anti_hermitian flag set but operator is not");
        }
    }
    s_->z1 = std::move(z1);
    s_->z2 = std::move(z2);
    s_->xfn = std::move(xfn);
    s_->yfn = std::move(yfn);
    s_->anti_hermitian = anti_hermitian;
    s_->kind[0] = classify(s_->z1);
    s_->kind[1] = classify(s_->z2);
}

const CMatrix& TwoTermGenerator::z1() const { return s_->z1; }
const CMatrix& TwoTermGenerator::z2() const { return s_->z2; }
const ScalarFn& TwoTermGenerator::xfn() const { return s_->xfn; }
const ScalarFn& TwoTermGenerator::yfn() const { return s_->yfn; }
bool TwoTermGenerator::anti_hermitian() const { return s_->anti_hermitian; }
int TwoTermGenerator::dim() const { return s_->z1.dim(); }

TwoTermGenerator TwoTermGenerator::swapped() const {
    return TwoTermGenerator(s_->z2, s_->z1, s_->yfn, s_->xfn, s_->anti_hermitian);
}

CMatrix TwoTermGenerator::at(double t) const {
    CMatrix m = s_->z1;
    m *= cdouble(s_->xfn(t), 0.0);
    CMatrix m2 = s_->z2;
    m2 *= cdouble(s_->yfn(t), 0.0);
    return m + m2;
}

CMatrix TwoTermGenerator::slot_exponential(int slot, double coeff) const {
    const CMatrix& z = (slot == 1) ? s_->z1 : s_->z2;
    const OpKind k = s_->kind[slot - 1];
    if (k == OpKind::General) {
        CMatrix m = z;
        m *= cdouble(coeff, 0.0);
        return expm(m);
    }
    const auto& eig = s_->eig_for(slot);
    // Hermitian slot: e^{cZ}. Anti-Hermitian slot: Z = -i (iZ), so
    // e^{cZ} = e^{-ic (iZ)} through the Hermitian decomposition of iZ.
    const cdouble c = (k == OpKind::Hermitian) ? cdouble(coeff, 0.0) : cdouble(0.0, -coeff);
    return exp_scaled(eig, c);
}

bool TwoTermGenerator::slot_exponential_diagonal(int slot) const {
    if (s_->kind[slot - 1] == OpKind::General) return false;
    return s_->eig_for(slot).identity_basis;
}

std::vector<cdouble> TwoTermGenerator::slot_exponential_diag(int slot, double coeff) const {
    const auto& eig = s_->eig_for(slot);
    const OpKind k = s_->kind[slot - 1];
    const cdouble c = (k == OpKind::Hermitian) ? cdouble(coeff, 0.0) : cdouble(0.0, -coeff);
    std::vector<cdouble> d(eig.eigenvalues.size());
    for (size_t i = 0; i < d.size(); ++i) d[i] = std::exp(c * eig.eigenvalues[i]);
    return d;
}

BetaSet BetaSet::negated() const {
    BetaSet r = *this;
    r.b1 = -r.b1;
    r.b2 = -r.b2;
    auto flip = [](std::optional<double>& v) {
        if (v) v = -*v;
    };
    flip(r.b12);
    flip(r.b112);
    flip(r.b212);
    flip(r.b1112);
    flip(r.b1212);
    flip(r.b2112);
    flip(r.b2212);
    return r;
}

namespace {

// One time-ordered word: digits index the coefficient functions, listed
// innermost (earliest time) first.
double omega_word(const TwoTermGenerator& gen, const Window& w, std::initializer_list<int> word) {
    std::vector<ScalarFn> fs;
    fs.reserve(word.size());
    for (int i : word) fs.push_back(i == 1 ? gen.xfn() : gen.yfn());
    return nested_simplex(fs, w);
}

BetaSet compute_betas(const TwoTermGenerator& gen, const Window& w, int order) {
    BetaSet bs{w, order};
    bs.b1 = integrate(gen.xfn(), w.lo(), w.hi());
    bs.b2 = integrate(gen.yfn(), w.lo(), w.hi());
    if (order < 4) return bs;

    auto om = [&](std::initializer_list<int> word) { return omega_word(gen, w, word); };

    bs.b12 = 0.5 * (om({2, 1}) - om({1, 2}));
    if (order < 6) return bs;

    // b_{i12} = (1/6)(w_{21i} - w_{12i} - w_{i21} + w_{i12})
    bs.b112 = (om({2, 1, 1}) - om({1, 2, 1}) - om({1, 2, 1}) + om({1, 1, 2})) / 6.0;
    bs.b212 = (om({2, 1, 2}) - om({1, 2, 2}) - om({2, 2, 1}) + om({2, 1, 2})) / 6.0;

    // b_{ij12} = (1/12)(w_{ij21} - w_{ij12} + w_{j12i} - w_{j21i}
    //                   + w_{21ji} - w_{12ji} + w_{1ji2} - w_{2ji1}).
    // The +1/12 prefactor is the one consistent with the time-ordered word
    // convention above; it was re-derived from the fourth nested-commutator
    // integral and is pinned by the order-7 convergence tests.
    auto b4 = [&](int i, int j) {
        return (om({i, j, 2, 1}) - om({i, j, 1, 2}) + om({j, 1, 2, i}) - om({j, 2, 1, i}) +
                om({2, 1, j, i}) - om({1, 2, j, i}) + om({1, j, i, 2}) - om({2, j, i, 1})) /
               12.0;
    };
    bs.b1112 = b4(1, 1);
    bs.b1212 = b4(1, 2);
    bs.b2112 = b4(2, 1);
    bs.b2212 = b4(2, 2);
    return bs;
}

}  // namespace

BetaSet beta_set(const TwoTermGenerator& gen, const Window& w, int order) {
    if (order != 2 && order != 4 && order != 6)
        throw Error("beta_set: order must be 2, 4 or 6");

    TwoTermGenerator::Shared* shared = gen.s_.get();

    const TwoTermGenerator::CacheKey key{std::bit_cast<std::uint64_t>(w.mu),
                                         std::bit_cast<std::uint64_t>(w.dt)};
    {
        std::shared_lock lock(shared->beta_mutex);
        auto it = shared->beta_cache.find(key);
        if (it != shared->beta_cache.end() && it->second.order >= order) {
            BetaSet bs = it->second;
            if (order < 6) bs.b1112 = bs.b1212 = bs.b2112 = bs.b2212 = bs.b112 = bs.b212 = {};
            if (order < 4) bs.b12 = {};
            bs.order = order;
            return bs;
        }
    }
    BetaSet bs = compute_betas(gen, w, order);
    {
        std::unique_lock lock(shared->beta_mutex);
        auto it = shared->beta_cache.find(key);
        if (it == shared->beta_cache.end() || it->second.order < order)
            shared->beta_cache.insert_or_assign(key, bs);
    }
    return bs;
}

std::array<CMatrix, 4> omega_matrices(const TwoTermGenerator& gen, const Window& w) {
    const BetaSet bs = beta_set(gen, w, 6);
    const CMatrix& Z1 = gen.z1();
    const CMatrix& Z2 = gen.z2();
    const CMatrix C = commutator(Z1, Z2);

    const CMatrix C1 = commutator(Z1, C);
    const CMatrix C2 = commutator(Z2, C);

    CMatrix O1 = bs.b1 * Z1 + bs.b2 * Z2;
    CMatrix O2 = *bs.b12 * C;
    CMatrix O3 = *bs.b112 * C1 + *bs.b212 * C2;
    CMatrix O4 = *bs.b1112 * commutator(Z1, C1) + *bs.b1212 * commutator(Z1, C2) +
                 *bs.b2112 * commutator(Z2, C1) + *bs.b2212 * commutator(Z2, C2);
    return {O1, O2, O3, O4};
}

CMatrix upsilon5(const TwoTermGenerator& gen, const Window& w) {
    const BetaSet bs = beta_set(gen, w, 6);
    if (std::abs(bs.b2) < beta2_floor_factor * w.dt)
        throw DegenerateBetaError(
            "upsilon5: |b2| below the u floor; u = b12/b2 is numerically meaningless",
            {"swap the term assignment (interchange the two generator terms)",
             "set u = 0 if both b1 and b2 are degenerate", "shrink dt"});
    const double u = *bs.b12 / bs.b2;
    auto om = omega_matrices(gen, w);
    const CMatrix xxy = commutator(gen.z1(), commutator(gen.z1(), gen.z2()));
    return om[2] + om[3] - (0.5 * u * u * bs.b2) * xxy;
}

CMatrix c5_leading_error(const std::array<double, 6>& g, const CMatrix& a, const CMatrix& b) {
    if (a.dim() != b.dim()) throw DimensionError("c5_leading_error: dimension mismatch");
    const CMatrix ab = commutator(a, b);
    const CMatrix a_ab = commutator(a, ab);
    const CMatrix b_ab = commutator(b, ab);
    const CMatrix aa_ab = commutator(a, a_ab);
    const CMatrix ba_ab = commutator(b, a_ab);
    const CMatrix bb_ab = commutator(b, b_ab);
    const CMatrix ab_ab = commutator(a, b_ab);

    return g[0] * commutator(a, aa_ab) + g[1] * commutator(a, ba_ab) +
           g[2] * commutator(b, aa_ab) + g[3] * commutator(b, bb_ab) +
           g[4] * commutator(b, ab_ab) + g[5] * commutator(a, bb_ab);
}

}  // namespace trotter
