#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qcsp/projectivize.hpp"
#include "support.hpp"

using namespace qcsp;

namespace {

// POVM assignment on a ULC where every vertex mixes commuting PVMs in a
// shared per-side eigenbasis (tensor split keeps edges commuting).
MeasurementAssignment random_povm_ulc_assignment(const LabelCoverInstance& phi,
                                                 int left_dim, int right_dim,
                                                 std::uint64_t seed) {
    auto rng = substream(seed, "povm-ulc");
    MeasurementAssignment asg;
    asg.dim = left_dim * right_dim;
    asg.cls = CommutationClass::Quantum;
    asg.kind = MeasurementKind::Povm;
    const CMatrix idl = CMatrix::Identity(left_dim, left_dim);
    const CMatrix idr = CMatrix::Identity(right_dim, right_dim);
    for (int u = 0; u < phi.left_count; ++u) {
        Measurement local =
            support::random_self_commuting_povm(left_dim, phi.alphabet, rng);
        Measurement lifted;
        for (const CMatrix& op : local) lifted.push_back(kron(op, idr));
        asg.vertices.push_back(std::move(lifted));
    }
    for (int v = 0; v < phi.right_count; ++v) {
        Measurement local =
            support::random_self_commuting_povm(right_dim, phi.alphabet, rng);
        Measurement lifted;
        for (const CMatrix& op : local) lifted.push_back(kron(idl, op));
        asg.vertices.push_back(std::move(lifted));
    }
    return asg;
}

}  // namespace

TEST_CASE("minimal_projections: a PVM yields 0/1 weights on its eigenspaces") {
    auto rng = substream(3, "minproj-pvm");
    Measurement pvm = support::random_pvm(4, 3, rng);
    MinimalProjectionBasis basis = minimal_projections(pvm);
    for (std::size_t b = 0; b < basis.blocks.size(); ++b) {
        for (int a = 0; a < 3; ++a) {
            double w = basis.weights[a][b];
            CHECK((std::abs(w) <= 1e-9 || std::abs(w - 1.0) <= 1e-9));
        }
    }
}

TEST_CASE("minimal_projections: d=1 uniform coin is one block of (1/2, 1/2)") {
    Measurement coin = {0.5 * CMatrix::Identity(1, 1), 0.5 * CMatrix::Identity(1, 1)};
    MinimalProjectionBasis basis = minimal_projections(coin);
    REQUIRE(basis.blocks.size() == 1);
    CHECK(basis.weights[0][0] == doctest::Approx(0.5));
    CHECK(basis.weights[1][0] == doctest::Approx(0.5));
}

TEST_CASE("minimal_projections: random self-commuting POVM is reconstructed") {
    auto rng = substream(7, "minproj-rebuild");
    for (int trial = 0; trial < 10; ++trial) {
        Measurement p = support::random_self_commuting_povm(5, 3, rng);
        MinimalProjectionBasis basis = minimal_projections(p);
        for (int a = 0; a < 3; ++a) {
            CMatrix rebuilt = CMatrix::Zero(5, 5);
            for (std::size_t b = 0; b < basis.blocks.size(); ++b) {
                rebuilt += basis.weights[a][b] * block_projection(basis, b);
            }
            CHECK((rebuilt - p[a]).norm() <= 1e-8);
        }
    }
}

TEST_CASE("minimal_projections rejects non-commuting input") {
    CMatrix x(2, 2), z(2, 2);
    x << 0, 1, 1, 0;
    z << 1, 0, 0, -1;
    const CMatrix id = CMatrix::Identity(2, 2);
    // three outcomes built from anticommuting directions do not self-commute
    // (two-outcome POVMs always do, the second element being I minus the first)
    Measurement bad = {(id + x) / 4.0, (id + z) / 4.0,
                       id - (id + x) / 4.0 - (id + z) / 4.0};
    CHECK_THROWS_AS(minimal_projections(bad), std::invalid_argument);
}

TEST_CASE("decompose_to_pvms: a PVM decomposes as itself with weight 1") {
    auto rng = substream(11, "decompose-pvm");
    Measurement pvm = support::random_pvm(4, 3, rng);
    PvmDecomposition dec = decompose_to_pvms(minimal_projections(pvm));
    REQUIRE(dec.pvms.size() == 1);
    CHECK(dec.weights[0] == doctest::Approx(1.0).epsilon(1e-9));
    for (int a = 0; a < 3; ++a) {
        CHECK((dec.pvms[0][a] - pvm[a]).norm() <= 1e-9);
    }
}

TEST_CASE("decompose_to_pvms: d=1 coin splits into two deterministic PVMs") {
    Measurement coin = {0.5 * CMatrix::Identity(1, 1), 0.5 * CMatrix::Identity(1, 1)};
    PvmDecomposition dec = decompose_to_pvms(minimal_projections(coin));
    REQUIRE(dec.pvms.size() == 2);
    CHECK(dec.weights[0] == doctest::Approx(0.5));
    CHECK(dec.weights[1] == doctest::Approx(0.5));
}

TEST_CASE("decompose_to_pvms: reconstruction, term bound, probability weights") {
    auto rng = substream(13, "decompose-random");
    for (int trial = 0; trial < 10; ++trial) {
        Measurement p = support::random_self_commuting_povm(4, 3, rng);
        MinimalProjectionBasis basis = minimal_projections(p);
        PvmDecomposition dec = decompose_to_pvms(basis);
        CHECK(dec.pvms.size() <= 3 * basis.blocks.size());
        double total = 0.0;
        for (double w : dec.weights) {
            CHECK(w > 0.0);
            total += w;
        }
        CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
        for (int a = 0; a < 3; ++a) {
            CMatrix rebuilt = CMatrix::Zero(4, 4);
            for (std::size_t t = 0; t < dec.pvms.size(); ++t) {
                rebuilt += dec.weights[t] * dec.pvms[t][a];
            }
            CHECK((rebuilt - p[a]).norm() <= 1e-8);
            CHECK(check_measurement(dec.pvms[0], MeasurementKind::Pvm).ok);
        }
    }
}

TEST_CASE("projectivize: an already-PVM assignment is unchanged") {
    LabelCoverInstance phi = generate_random_ulc(2, 2, 3, 1.0, 17);
    MeasurementAssignment asg =
        support::random_quantum_ulc_assignment(phi, 2, 2, 17);
    ProjectivizeResult r = projectivize_assignment(phi, asg);
    for (std::size_t v = 0; v < asg.vertices.size(); ++v) {
        for (int a = 0; a < 3; ++a) {
            CHECK((r.assignment.vertices[v][a] - asg.vertices[v][a]).norm() == 0.0);
        }
    }
}

TEST_CASE("projectivize: d=1 probabilistic labels round to the argmax labeling") {
    LabelCoverInstance phi;
    phi.left_count = 1;
    phi.right_count = 1;
    phi.alphabet = 2;
    phi.unique = true;
    phi.edges.push_back({0, 0, {0, 1}, 1.0});
    MeasurementAssignment mixed;
    mixed.dim = 1;
    mixed.cls = CommutationClass::Quantum;
    mixed.kind = MeasurementKind::Povm;
    Measurement biased = {CMatrix::Constant(1, 1, 0.75), CMatrix::Constant(1, 1, 0.25)};
    mixed.vertices = {biased, biased};
    double randomized = eval_labelcover_value(phi, mixed);
    CHECK(randomized == doctest::Approx(0.625));

    ProjectivizeResult r = projectivize_assignment(phi, mixed);
    double rounded = eval_labelcover_value(phi, r.assignment);
    CHECK(rounded == doctest::Approx(1.0));  // both vertices pick label 0
    CHECK(rounded >= randomized);
}

TEST_CASE("projectivize: value never decreases on random POVM assignments") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        LabelCoverInstance phi = generate_random_ulc(2, 2, 2, 1.0, seed + 1000);
        MeasurementAssignment povm = random_povm_ulc_assignment(phi, 2, 2, seed);
        REQUIRE(validate_assignment(phi, povm).ok);
        double before = eval_labelcover_value(phi, povm);
        ProjectivizeResult r = projectivize_assignment(phi, povm, seed);
        double after = eval_labelcover_value(phi, r.assignment);
        CHECK(after >= before - 1e-9);
        // stepwise monotone
        for (std::size_t step = 1; step < r.value_trace.size(); ++step) {
            CHECK(r.value_trace[step] >= r.value_trace[step - 1] - 1e-10);
        }
        // output is projective and preserves the commutation class
        for (const Measurement& p : r.assignment.vertices) {
            CHECK(check_measurement(p, MeasurementKind::Pvm).ok);
        }
        CHECK(validate_assignment(phi, r.assignment).ok);
    }
}

TEST_CASE("projectivize: commutant preservation") {
    auto rng = substream(23, "commutant");
    // M commutes with the POVM it was built from; the rounded PVM elements
    // must stay within 1e−7 of commuting with M.
    for (int trial = 0; trial < 10; ++trial) {
        Measurement p = support::random_self_commuting_povm(4, 3, rng);
        CMatrix m = CMatrix::Zero(4, 4);
        for (int a = 0; a < 3; ++a) {
            m += (a + 1.5) * p[a];  // a polynomial in the POVM elements
        }
        GeneralCspInstance inst;
        inst.arity = 1;
        inst.alphabet = 3;
        inst.variable_count = 1;
        inst.constraints.push_back({{0}, {{0}}, 1.0});
        MeasurementAssignment asg;
        asg.dim = 4;
        asg.cls = CommutationClass::Quantum;
        asg.kind = MeasurementKind::Povm;
        asg.vertices = {p};
        ProjectivizeResult r = projectivize_assignment(inst, asg);
        for (const CMatrix& pi : r.assignment.vertices[0]) {
            CHECK((m * pi - pi * m).norm() <= 1e-7);
        }
    }
}
