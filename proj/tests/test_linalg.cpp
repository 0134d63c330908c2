#include <doctest.h>

#include <cmath>
#include <numbers>

#include "trotter/cmatrix.hpp"
#include "trotter/models.hpp"
#include "test_util.hpp"

using namespace trotter;
using testutil::Rng;

TEST_CASE("commutator basics") {
    CHECK(frobenius_norm(commutator(pauli_x(), pauli_x())) == 0.0);

    // [sx, sz] = -2i sy, by direct 2x2 computation
    const CMatrix expected = cdouble(0.0, -2.0) * pauli_y();
    CHECK(frobenius_norm(commutator(pauli_x(), pauli_z()) - expected) < 1e-15);

    Rng rng(11);
    const auto a = testutil::random_matrix(4, rng);
    const auto b = testutil::random_matrix(4, rng);
    CHECK(frobenius_norm(commutator(a, b) + commutator(b, a)) < 1e-14);

    CHECK_THROWS_AS(commutator(CMatrix(2), CMatrix(3)), DimensionError);
}

TEST_CASE("matrix construction guards") {
    CHECK_THROWS_AS(CMatrix::from_entries(2, {1.0, 2.0, 3.0}), DimensionError);
    CHECK_THROWS_AS(
        CMatrix::from_entries(1, {cdouble(std::nan(""), 0.0)}), NonFiniteError);
}

TEST_CASE("expm basics") {
    CHECK(frobenius_norm(expm(CMatrix(3)) - CMatrix::identity(3)) < 1e-15);

    // e^{i pi sx} = cos(pi) I + i sin(pi) sx = -I
    const CMatrix m = cdouble(0.0, std::numbers::pi) * pauli_x();
    CHECK(frobenius_norm(expm(m) + CMatrix::identity(2)) < 1e-13);

    Rng rng(21);
    auto a = testutil::random_matrix(8, rng);
    a *= cdouble(1.0 / frobenius_norm(a), 0.0);
    CHECK(frobenius_norm(expm(a) * expm(cdouble(-1.0, 0.0) * a) - CMatrix::identity(8)) < 1e-12);
}

TEST_CASE("expm backward stability up to dim 64, norm 5") {
    Rng rng(33);
    for (int dim : {16, 64}) {
        auto a = testutil::random_matrix(dim, rng);
        a *= cdouble(5.0 / frobenius_norm(a), 0.0);
        const auto defect = expm(a) * expm(cdouble(-1.0, 0.0) * a) - CMatrix::identity(dim);
        CHECK(frobenius_norm(defect) < 1e-11);
    }
}

TEST_CASE("hermitian_eig examples") {
    const auto eig = hermitian_eig(pauli_z());
    REQUIRE(eig.eigenvalues.size() == 2);
    CHECK(eig.eigenvalues[0] == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(eig.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-14));

    const auto id3 = hermitian_eig(CMatrix::identity(3));
    for (double v : id3.eigenvalues) CHECK(v == doctest::Approx(1.0).epsilon(1e-14));

    CMatrix skew(2);
    skew(0, 1) = 1.0;
    CHECK_THROWS_AS(hermitian_eig(skew), NonHermitianError);
}

TEST_CASE("hermitian_eig reconstruction and unitarity") {
    Rng rng(7);
    const auto z = testutil::random_hermitian(16, rng);
    const auto eig = hermitian_eig(z);

    CHECK(frobenius_norm(eig.basis.adjoint() * eig.basis - CMatrix::identity(16)) < 1e-12);

    CMatrix lambda(16);
    for (int k = 0; k < 16; ++k) lambda(k, k) = eig.eigenvalues[k];
    const auto rec = eig.basis * lambda * eig.basis.adjoint();
    CHECK(frobenius_norm(rec - z) < 1e-11 * frobenius_norm(z));

    // ascending order and trace identity
    double sum = 0.0;
    for (size_t k = 1; k < eig.eigenvalues.size(); ++k)
        CHECK(eig.eigenvalues[k - 1] <= eig.eigenvalues[k]);
    for (double v : eig.eigenvalues) sum += v;
    CHECK(sum == doctest::Approx(z.trace().real()).epsilon(1e-12));
}

TEST_CASE("exp_scaled") {
    const auto eig = hermitian_eig(pauli_z());
    CHECK(frobenius_norm(exp_scaled(eig, 0.0) - CMatrix::identity(2)) < 1e-14);

    // e^{-i pi/2 sz} = diag(e^{-i pi/2}, e^{i pi/2})
    const auto m = exp_scaled(eig, cdouble(0.0, -std::numbers::pi / 2));
    CHECK(std::abs(m(0, 0) - std::exp(cdouble(0.0, -std::numbers::pi / 2))) < 1e-14);
    CHECK(std::abs(m(1, 1) - std::exp(cdouble(0.0, std::numbers::pi / 2))) < 1e-14);
    CHECK(std::abs(m(0, 1)) < 1e-14);

    Rng rng(55);
    const auto z = testutil::random_hermitian(8, rng);
    const cdouble c(0.0, -0.3);
    CHECK(frobenius_norm(exp_scaled(hermitian_eig(z), c) - expm(c * z)) < 1e-11);
}

TEST_CASE("norms") {
    CHECK(frobenius_norm(CMatrix::identity(4)) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(frobenius_norm(pauli_x()) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));

    Rng rng(91);
    const auto a = testutil::random_matrix(6, rng);
    const cdouble c(0.7, -1.3);
    CHECK(frobenius_norm(c * a) ==
          doctest::Approx(std::abs(c) * frobenius_norm(a)).epsilon(1e-13));

    CMatrix d(2);
    d(0, 0) = 3.0;
    d(1, 1) = -1.0;
    CHECK(spectral_norm(d) == doctest::Approx(3.0).epsilon(1e-12));

    // a unitary has unit spectral norm
    const auto u = expm(testutil::random_anti_hermitian(6, rng));
    CHECK(spectral_norm(u) == doctest::Approx(1.0).epsilon(1e-10));

    const auto b = testutil::random_matrix(5, rng);
    CHECK(spectral_norm(b) <= frobenius_norm(b) * (1.0 + 1e-12));
}

TEST_CASE("spectral norm is unitarily invariant") {
    Rng rng(123);
    const auto a = testutil::random_matrix(6, rng);
    const auto u = expm(testutil::random_anti_hermitian(6, rng));
    const auto v = expm(testutil::random_anti_hermitian(6, rng));
    CHECK(spectral_norm(u * a * v) == doctest::Approx(spectral_norm(a)).epsilon(1e-10));
}
