#include "qsd/qubit_algebra.hpp"
#include "qsd/quantum_optimal.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace qsd;

namespace {

double overlap_sq(const Ket& a, const Ket& b) {
    const cplx ip = std::conj(a[0]) * b[0] + std::conj(a[1]) * b[1];
    return std::norm(ip);
}

double norm_of(const Ket& k) { return std::sqrt(std::norm(k[0]) + std::norm(k[1])); }

HermitianOp random_hermitian(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    Mat2 m;
    m.a00 = u(rng);
    m.a11 = u(rng);
    m.a01 = cplx(u(rng), u(rng));
    m.a10 = std::conj(m.a01);
    return HermitianOp::from_matrix(m);
}

}  // namespace

TEST_CASE("make_state_pair endpoints") {
    const PureStatePair same = make_state_pair(1.0);
    CHECK(std::abs(same.ket1[0] - same.ket2[0]) < 1e-15);
    CHECK(std::abs(same.ket1[1] - same.ket2[1]) < 1e-15);
    CHECK(same.ket1[0].real() == doctest::Approx(1.0));

    const PureStatePair orth = make_state_pair(0.0);
    const double r = std::sqrt(0.5);
    CHECK(orth.ket1[0].real() == doctest::Approx(r));
    CHECK(orth.ket1[1].real() == doctest::Approx(r));
    CHECK(orth.ket2[1].real() == doctest::Approx(-r));
    CHECK(overlap_sq(orth.ket1, orth.ket2) < 1e-24);
}

TEST_CASE("make_state_pair reproduces the requested confusability") {
    // Recompute the overlap from the constructed vectors.
    CHECK(std::abs(overlap_sq(make_state_pair(0.6).ket1, make_state_pair(0.6).ket2) - 0.6) < 1e-12);
    for (int i = 0; i <= 100; ++i) {
        const double c = i * 0.01;
        const PureStatePair p = make_state_pair(c);
        CHECK(std::abs(norm_of(p.ket1) - 1.0) < 1e-12);
        CHECK(std::abs(norm_of(p.ket2) - 1.0) < 1e-12);
        CHECK(std::abs(overlap_sq(p.ket1, p.ket2) - c) < 1e-12);
    }
    CHECK_THROWS_AS(make_state_pair(-0.1), std::domain_error);
    CHECK_THROWS_AS(make_state_pair(1.1), std::domain_error);
}

TEST_CASE("depolarize spectra and trace") {
    const PureStatePair pair = make_state_pair(0.37);

    const auto [pure1, pure2] = depolarize(pair, 1.0);
    CHECK((pure1 - HermitianOp::projector(pair.ket1)).matrix().max_abs() < 1e-14);
    CHECK(std::abs(eigen_decompose(pure1).values[0]) < 1e-14);

    const auto [flat1, flat2] = depolarize(pair, 0.0);
    CHECK((flat1 - flat2).matrix().max_abs() < 1e-15);
    CHECK((flat1 - 0.5 * HermitianOp::identity()).matrix().max_abs() < 1e-15);

    const auto [half1, half2] = depolarize(pair, 0.5);
    for (const HermitianOp& rho : {half1, half2}) {
        const EigenSystem es = eigen_decompose(rho);
        CHECK(std::abs(es.values[0] - 0.25) < 1e-12);
        CHECK(std::abs(es.values[1] - 0.75) < 1e-12);
    }

    for (double eps : {0.0, 0.1, 0.33, 0.77, 1.0}) {
        const auto [r1, r2] = depolarize(pair, eps);
        CHECK(std::abs(r1.trace() - 1.0) < 1e-12);
        CHECK(std::abs(r2.trace() - 1.0) < 1e-12);
    }
    CHECK_THROWS_AS(depolarize(pair, -0.01), std::domain_error);
    CHECK_THROWS_AS(depolarize(pair, 1.01), std::domain_error);
}

TEST_CASE("positive_part basics") {
    const auto d = positive_part(HermitianOp::diag(1.0, -1.0));
    CHECK(d.trace == doctest::Approx(1.0));
    CHECK((d.part - HermitianOp::diag(1.0, 0.0)).matrix().max_abs() < 1e-14);

    const auto z = positive_part(HermitianOp::zero());
    CHECK(z.trace == 0.0);
    CHECK(z.part.matrix().max_abs() == 0.0);

    // Eigenvalues of half the difference of two pure projectors are
    // +-sqrt(1-c)/2.
    const PureStatePair pair = make_state_pair(0.6);
    const HermitianOp h =
        0.5 * (HermitianOp::projector(pair.ket1) - HermitianOp::projector(pair.ket2));
    CHECK(positive_part(h).trace == doctest::Approx(0.316227766016838).epsilon(1e-12));
}

TEST_CASE("positive_part reconstruction on random Hermitians") {
    std::mt19937_64 rng(7101);
    for (int i = 0; i < 200; ++i) {
        const HermitianOp h = random_hermitian(rng);
        const PositivePart pos = positive_part(h);
        const PositivePart neg = positive_part(HermitianOp::zero() - h);
        CHECK((h - (pos.part - neg.part)).matrix().max_abs() < 1e-12);
        CHECK(eigen_decompose(pos.part).values[0] >= -1e-12);
        CHECK(eigen_decompose(neg.part).values[0] >= -1e-12);
        // pos and neg live on orthogonal eigenspaces.
        CHECK((pos.part.matrix() * neg.part.matrix()).max_abs() < 1e-12);
    }
}

TEST_CASE("eigen_decompose reconstructs and orders") {
    std::mt19937_64 rng(7102);
    for (int i = 0; i < 200; ++i) {
        const HermitianOp h = random_hermitian(rng);
        const EigenSystem es = eigen_decompose(h);
        CHECK(es.values[0] <= es.values[1]);
        Mat2 rebuilt = es.values[0] * Mat2::outer(es.vectors[0], es.vectors[0]) +
                       es.values[1] * Mat2::outer(es.vectors[1], es.vectors[1]);
        CHECK((h.matrix() - rebuilt).max_abs() < 1e-12);
        CHECK(std::abs(norm_of(es.vectors[0]) - 1.0) < 1e-12);
        CHECK(std::abs(std::conj(es.vectors[0][0]) * es.vectors[1][0] +
                       std::conj(es.vectors[0][1]) * es.vectors[1][1]) < 1e-12);
    }
}

TEST_CASE("HermitianOp rejects non-Hermitian input") {
    Mat2 bad = Mat2::identity();
    bad.a01 = cplx(0.0, 1.0);
    bad.a10 = cplx(0.0, 1.0);  // conjugate would be -i
    CHECK_THROWS_AS(HermitianOp::from_matrix(bad), std::invalid_argument);
}

TEST_CASE("validate_povm diagnostics") {
    const HermitianOp third = (1.0 / 3.0) * HermitianOp::identity();
    CHECK(validate_povm({third, third, third}).pass);

    const Povm3 bad{HermitianOp::identity(), HermitianOp::identity(),
                    HermitianOp::zero() - HermitianOp::identity()};
    const PovmDiagnostics d = validate_povm(bad);
    CHECK_FALSE(d.pass);
    CHECK(d.min_eigenvalues[2] == doctest::Approx(-1.0));
    CHECK(d.completeness_residual < 1e-15);

    // A POVM the oracle produces passes its own validation.
    const PureStatePair pair = make_state_pair(0.6);
    const auto [rho1, rho2] = depolarize(pair, 1.0);
    const PovmOracleResult res = povm_oracle(rho1, rho2, 0.5, 0.2);
    CHECK(validate_povm(res.povm).pass);
}

TEST_CASE("instance validation") {
    CHECK_THROWS_WITH_AS(DiscriminationInstance(1.2, 0.6), "q1 must lie in (0,1)",
                         std::domain_error);
    CHECK_THROWS_AS(DiscriminationInstance(0.0, 0.6), std::domain_error);
    CHECK_THROWS_AS(DiscriminationInstance(0.5, -0.1), std::domain_error);
    CHECK_THROWS_AS(NoisyInstance(DiscriminationInstance(0.5, 0.5), 1.5), std::domain_error);
    const DiscriminationInstance inst(0.3, 0.4);
    CHECK(inst.q2() == doctest::Approx(0.7));
}
