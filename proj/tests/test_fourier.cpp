#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qcsp/fourier.hpp"
#include "support.hpp"

using namespace qcsp;

namespace {

OperatorFunction scalar_function(int m, const std::vector<double>& values) {
    OperatorFunction f;
    f.m = m;
    f.dim = 1;
    for (double v : values) f.table.push_back(CMatrix::Constant(1, 1, v));
    return f;
}

// Definition-based influence oracle: Inf_a(g) = E_x[Var_{x_a} g] which for
// Boolean resampling of one coordinate is E_x[(g(x) − g(x with a flipped))²]/4.
double variance_influence(const std::vector<double>& values, int m, int a) {
    double total = 0.0;
    for (std::uint32_t x = 0; x < values.size(); ++x) {
        double diff = values[x] - values[x ^ (1u << a)];
        total += diff * diff / 4.0;
    }
    return total / static_cast<double>(values.size());
}

}  // namespace

TEST_CASE("chi: empty set, singletons, group law") {
    CHECK(chi(0, 5) == 1);
    for (std::uint32_t x = 0; x < 8; ++x) {
        CHECK(chi(0, x) == 1);
        CHECK(chi(1u << 1, x) == (((x >> 1) & 1u) ? -1 : 1));
    }
    auto rng = substream(5, "chi-group-law");
    for (int trial = 0; trial < 50; ++trial) {
        std::uint32_t s = rng() & 0xff, t = rng() & 0xff, x = rng() & 0xff;
        CHECK(chi(s, x) * chi(t, x) == chi(s ^ t, x));
    }
}

TEST_CASE("fourier_transform: constant function concentrates on the empty set") {
    OperatorFunction f;
    f.m = 2;
    f.dim = 3;
    f.table.assign(4, CMatrix::Identity(3, 3));
    FourierTable t = fourier_transform(f);
    CHECK((t.table[0] - CMatrix::Identity(3, 3)).norm() <= 1e-14);
    for (std::uint32_t s = 1; s < 4; ++s) CHECK(t.table[s].norm() <= 1e-14);
}

TEST_CASE("fourier_transform: dictator concentrates on its singleton") {
    const int m = 3, a = 1;
    std::vector<double> values(8);
    for (std::uint32_t x = 0; x < 8; ++x) {
        values[x] = ((x >> a) & 1u) ? -1.0 : 1.0;
    }
    FourierTable t = fourier_transform(scalar_function(m, values));
    for (std::uint32_t s = 0; s < 8; ++s) {
        double expected = (s == (1u << a)) ? 1.0 : 0.0;
        CHECK(t.table[s](0, 0).real() == doctest::Approx(expected).epsilon(1e-14));
    }
}

TEST_CASE("fourier round trip and oddness for random observable functions") {
    auto rng = substream(7, "fourier-roundtrip");
    OperatorFunction f = support::random_odd_observable_function(3, 2, rng, false);
    REQUIRE(is_odd(f, 1e-14));
    FourierTable t = fourier_transform(f);
    CHECK(t.table[0].norm() <= 1e-13);  // odd ⇒ empty coefficient vanishes
    OperatorFunction back = inverse_fourier(t);
    for (std::uint32_t x = 0; x < f.table.size(); ++x) {
        CHECK((back.table[x] - f.table[x]).norm() <= 1e-12);
    }
}

TEST_CASE("fourier_transform agrees with the serial reference kernel") {
    auto rng = substream(11, "fourier-vs-reference");
    OperatorFunction f;
    f.m = 4;
    f.dim = 3;
    for (int x = 0; x < 16; ++x) f.table.push_back(support::random_hermitian(3, rng));
    FourierTable fast = fourier_transform(f);
    FourierTable direct = reference::fourier_transform_direct(f);
    for (std::uint32_t s = 0; s < 16; ++s) {
        CHECK((fast.table[s] - direct.table[s]).norm() <= 1e-13);
    }
}

TEST_CASE("fourier_transform is linear") {
    auto rng = substream(13, "fourier-linear");
    OperatorFunction f, g;
    f.m = g.m = 3;
    f.dim = g.dim = 2;
    for (int x = 0; x < 8; ++x) {
        f.table.push_back(support::random_hermitian(2, rng));
        g.table.push_back(support::random_hermitian(2, rng));
    }
    OperatorFunction combo;
    combo.m = 3;
    combo.dim = 2;
    for (int x = 0; x < 8; ++x) {
        combo.table.push_back(2.5 * f.table[x] - 0.75 * g.table[x]);
    }
    FourierTable tf = fourier_transform(f), tg = fourier_transform(g);
    FourierTable tc = fourier_transform(combo);
    for (std::uint32_t s = 0; s < 8; ++s) {
        CHECK((tc.table[s] - (2.5 * tf.table[s] - 0.75 * tg.table[s])).norm() <=
              1e-12);
    }
}

TEST_CASE("oddness is equivalent to vanishing even-size coefficients") {
    auto rng = substream(17, "fourier-odd-even");
    OperatorFunction f = support::random_odd_observable_function(4, 2, rng, false);
    FourierTable t = fourier_transform(f);
    for (std::uint32_t s = 0; s < t.table.size(); ++s) {
        if (std::popcount(s) % 2 == 0) CHECK(t.table[s].norm() <= 1e-12);
    }
}

TEST_CASE("influence: dictator and full parity") {
    const int m = 4;
    std::vector<double> dictator(16), parity(16);
    for (std::uint32_t x = 0; x < 16; ++x) {
        dictator[x] = ((x >> 2) & 1u) ? -1.0 : 1.0;
        parity[x] = (std::popcount(x) % 2) ? -1.0 : 1.0;
    }
    std::vector<double> dict_hat = scalar_fourier(dictator);
    CHECK(influence(dict_hat, m, 2) == doctest::Approx(1.0));
    CHECK(influence(dict_hat, m, 0) == doctest::Approx(0.0));

    std::vector<double> parity_hat = scalar_fourier(parity);
    CHECK(influence(parity_hat, m, 1) == doctest::Approx(1.0));
    CHECK(influence(parity_hat, m, 1, m - 1) == doctest::Approx(0.0));
}

TEST_CASE("influence matches the variance-form oracle on random functions") {
    auto rng = substream(19, "influence-oracle");
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<double> g = support::random_pm1_function(4, rng);
        std::vector<double> g_hat = scalar_fourier(g);
        for (int a = 0; a < 4; ++a) {
            CHECK(influence(g_hat, 4, a) ==
                  doctest::Approx(variance_influence(g, 4, a)).epsilon(1e-12));
        }
    }
}

TEST_CASE("noise_stability: dictator gives rho, constant gives 1") {
    std::vector<double> dictator(8), constant(8, 1.0);
    for (std::uint32_t x = 0; x < 8; ++x) dictator[x] = (x & 1u) ? -1.0 : 1.0;
    for (double rho : {-0.9, -0.5, -0.1, 0.0}) {
        CHECK(noise_stability(dictator, rho) == doctest::Approx(rho).epsilon(1e-12));
        CHECK(noise_stability(constant, rho) == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK_THROWS_AS(noise_stability(constant, 0.5), std::invalid_argument);
}

TEST_CASE("noise_stability equals the Fourier-side identity") {
    auto rng = substream(23, "stability-fourier");
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<double> g = support::random_pm1_function(3, rng);
        std::vector<double> g_hat = scalar_fourier(g);
        double rho = -uniform01(rng) * 0.9;
        double fourier_side = 0.0;
        for (std::uint32_t s = 0; s < 8; ++s) {
            fourier_side += std::pow(rho, std::popcount(s)) * g_hat[s] * g_hat[s];
        }
        CHECK(noise_stability(g, rho) ==
              doctest::Approx(fourier_side).epsilon(1e-11));
    }
}

TEST_CASE("parseval holds for observable-valued functions") {
    auto rng = substream(29, "parseval");
    for (int trial = 0; trial < 10; ++trial) {
        OperatorFunction f;
        f.m = 3;
        f.dim = 4;
        for (int x = 0; x < 8; ++x) {
            f.table.push_back(support::random_observable(4, rng));
        }
        CHECK(parseval_defect(fourier_transform(f)) <= 1e-9);
    }
}

TEST_CASE("povm_from_observable_function: long-code lift recovers the PVM") {
    auto rng = substream(31, "povm-longcode");
    Measurement pvm = support::random_pvm(4, 3, rng);
    OperatorFunction code = long_code_encode(pvm, 3);
    ObsPovmResult r = povm_from_observable_function(code);
    for (int a = 0; a < 3; ++a) {
        CHECK((r.povm[a] - pvm[a]).norm() <= 1e-12);
    }
    CHECK(r.remainder_norm <= 1e-12);
}

TEST_CASE("povm_from_observable_function: constant identity leaves Q = I") {
    OperatorFunction f;
    f.m = 2;
    f.dim = 2;
    f.table.assign(4, CMatrix::Identity(2, 2));
    ObsPovmResult r = povm_from_observable_function(f);
    for (const CMatrix& p : r.povm) CHECK(p.norm() <= 1e-13);
    CHECK((r.remainder - CMatrix::Identity(2, 2)).norm() <= 1e-13);
}

TEST_CASE("povm_from_observable_function: odd commuting input is a POVM with Q=0") {
    auto rng = substream(37, "povm-odd");
    OperatorFunction f = support::random_odd_observable_function(3, 2, rng, true);
    ObsPovmResult r = povm_from_observable_function(f);
    CHECK(r.remainder_norm <= 1e-9);
    CHECK(check_measurement(r.povm, MeasurementKind::SelfCommutingPovm).ok);
}

TEST_CASE("povm_from_observable_function rejects non-observable entries") {
    OperatorFunction f;
    f.m = 1;
    f.dim = 2;
    f.table.assign(2, 0.5 * CMatrix::Identity(2, 2));
    CHECK_THROWS_AS(povm_from_observable_function(f), std::invalid_argument);
}
