#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qcsp/operators.hpp"
#include "support.hpp"

using namespace qcsp;

namespace {

CMatrix pauli_x() {
    CMatrix x(2, 2);
    x << 0, 1, 1, 0;
    return x;
}

CMatrix pauli_z() {
    CMatrix z(2, 2);
    z << 1, 0, 0, -1;
    return z;
}

}  // namespace

TEST_CASE("normalized_trace: identity, diag(1,-1), rank-r projection") {
    CHECK(normalized_trace(CMatrix::Identity(5, 5)).real() == doctest::Approx(1.0));
    CHECK(normalized_trace(pauli_z()).real() == doctest::Approx(0.0));
    CMatrix proj = CMatrix::Zero(4, 4);
    proj(0, 0) = proj(1, 1) = proj(2, 2) = 1.0;  // rank 3 in dim 4
    CHECK(normalized_trace(proj).real() == doctest::Approx(0.75));
    CHECK_THROWS_AS(normalized_trace(CMatrix::Zero(2, 3)), std::invalid_argument);
}

TEST_CASE("commute: identity, diagonal pair, anticommuting pair") {
    auto rng = substream(3, "commute-test");
    CMatrix a = support::random_hermitian(3, rng);
    CommuteResult with_id = commute(CMatrix::Identity(3, 3), a);
    CHECK(with_id.commuting);
    CHECK(with_id.defect == doctest::Approx(0.0));

    CMatrix d1 = CMatrix::Zero(2, 2), d2 = CMatrix::Zero(2, 2);
    d1.diagonal() << 1.0, 2.0;
    d2.diagonal() << -3.0, 5.0;
    CHECK(commute(d1, d2).commuting);

    CommuteResult anti = commute(pauli_x(), pauli_z());
    CHECK_FALSE(anti.commuting);
    CHECK(anti.defect == doctest::Approx(2.0 * std::sqrt(2.0)));

    CHECK_THROWS_AS(commute(CMatrix::Identity(2, 2), CMatrix::Identity(3, 3)),
                    std::invalid_argument);
}

TEST_CASE("check_measurement: computational-basis PVM passes") {
    Measurement p = {CMatrix::Zero(2, 2), CMatrix::Zero(2, 2)};
    p[0](0, 0) = 1.0;
    p[1](1, 1) = 1.0;
    CHECK(check_measurement(p, MeasurementKind::Pvm).ok);
    CHECK(check_measurement(p, MeasurementKind::Povm).ok);
    CHECK(check_measurement(p, MeasurementKind::SelfCommutingPovm).ok);
}

TEST_CASE("check_measurement: {I/2, I/2} fails idempotence, passes as POVM") {
    Measurement half = {0.5 * CMatrix::Identity(2, 2), 0.5 * CMatrix::Identity(2, 2)};
    MeasurementVerdict as_pvm = check_measurement(half, MeasurementKind::Pvm);
    CHECK_FALSE(as_pvm.ok);
    CHECK(as_pvm.failures.front().find("idempotence") != std::string::npos);
    CHECK(check_measurement(half, MeasurementKind::Povm).ok);
}

TEST_CASE("check_measurement: every PVM passes the POVM check") {
    auto rng = substream(17, "pvm-monotone");
    for (int trial = 0; trial < 20; ++trial) {
        Measurement p = support::random_pvm(4, 3, rng);
        REQUIRE(check_measurement(p, MeasurementKind::Pvm).ok);
        CHECK(check_measurement(p, MeasurementKind::Povm).ok);
    }
}

TEST_CASE("simultaneous_diagonalize: diagonal family keeps the identity basis") {
    std::vector<CMatrix> family;
    CMatrix d1 = CMatrix::Zero(3, 3), d2 = CMatrix::Zero(3, 3);
    d1.diagonal() << 1.0, 2.0, 3.0;
    d2.diagonal() << 4.0, 5.0, 6.0;
    family = {d1, d2};
    SimDiagResult r = simultaneous_diagonalize(family);
    CHECK(r.off_diagonal_residual <= 1e-12);
    CHECK((r.basis - CMatrix::Identity(3, 3)).norm() <= 1e-12);
}

TEST_CASE("simultaneous_diagonalize: {I, X} yields diagonals (1,-1) up to order") {
    std::vector<CMatrix> family = {CMatrix::Identity(2, 2), pauli_x()};
    SimDiagResult r = simultaneous_diagonalize(family);
    CHECK(r.off_diagonal_residual <= 1e-10);
    std::vector<double> diag = {r.diagonals[1](0), r.diagonals[1](1)};
    std::sort(diag.begin(), diag.end());
    CHECK(diag[0] == doctest::Approx(-1.0));
    CHECK(diag[1] == doctest::Approx(1.0));
}

TEST_CASE("simultaneous_diagonalize: anticommuting pair is rejected by name") {
    std::vector<CMatrix> family = {pauli_z(), pauli_x()};
    CHECK_THROWS_WITH_AS(simultaneous_diagonalize(family),
                         doctest::Contains("0 and 1"), std::invalid_argument);
}

TEST_CASE("simultaneous_diagonalize: reconstruction on random commuting families") {
    auto rng = substream(23, "simdiag-random");
    for (int trial = 0; trial < 10; ++trial) {
        const int d = 6;
        CMatrix v = support::random_unitary(d, rng);
        std::vector<CMatrix> family;
        for (int op = 0; op < 4; ++op) {
            CMatrix diag = CMatrix::Zero(d, d);
            for (int i = 0; i < d; ++i) {
                // repeated eigenvalues force the degenerate-cluster path
                diag(i, i) = static_cast<double>(static_cast<int>(uniform_below(rng, 3)) - 1);
            }
            family.push_back(v * diag * v.adjoint());
        }
        SimDiagResult r = simultaneous_diagonalize(family);
        CHECK(r.off_diagonal_residual <= 1e-8 * d);
        for (std::size_t op = 0; op < family.size(); ++op) {
            CMatrix rebuilt = r.basis *
                              CMatrix(r.diagonals[op].cast<Complex>().asDiagonal()) *
                              r.basis.adjoint();
            CHECK((rebuilt - family[op]).norm() <= 1e-8);
        }
    }
}

TEST_CASE("clifford_generators: r=2 gives anticommuting dim-2 observables") {
    CliffordFamily fam = clifford_generators(2);
    CHECK(fam.dimension == 2);
    REQUIRE(fam.generators.size() == 2);
    for (const CMatrix& g : fam.generators) CHECK(is_observable(g, 1e-12));
    CMatrix anti = fam.generators[0] * fam.generators[1] +
                   fam.generators[1] * fam.generators[0];
    CHECK(anti.norm() <= 1e-14);
}

TEST_CASE("clifford_generators: r=3 and r=5 relations") {
    for (int r : {3, 5}) {
        CliffordFamily fam = clifford_generators(r);
        CHECK(fam.dimension == (1 << ((r + 1) / 2)));
        for (int i = 0; i < r; ++i) {
            const CMatrix& gi = fam.generators[i];
            CHECK((gi * gi - CMatrix::Identity(fam.dimension, fam.dimension))
                      .norm() <= 1e-12);
            for (int j = 0; j < r; ++j) {
                double expected = (i == j) ? 1.0 : 0.0;
                CHECK(normalized_trace(gi * fam.generators[j]).real() ==
                      doctest::Approx(expected).epsilon(1e-12));
                if (i != j) {
                    CHECK((gi * fam.generators[j] + fam.generators[j] * gi)
                              .norm() <= 1e-12);
                }
            }
        }
    }
}

TEST_CASE("clifford_generators: dimension budget") {
    CHECK_THROWS_AS(clifford_generators(30), std::invalid_argument);
}

TEST_CASE("observable <-> binary PVM round trip is exact") {
    auto rng = substream(29, "obs-pvm");
    for (int trial = 0; trial < 10; ++trial) {
        CMatrix x = support::random_observable(3, rng);
        Measurement pvm = binary_pvm_from_observable(x);
        CHECK(check_measurement(pvm, MeasurementKind::Pvm).ok);
        CHECK((observable_from_binary_pvm(pvm) - x).norm() <= 1e-13);
    }
}
