// Waveform-bank orthonormality, energy accounting, and the equivalence of
// time-domain synthesis plus matched filtering with the closed-form virtual
// data model.
#include <doctest.h>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <utility>
#include <vector>

#include "pmimo/array.hpp"
#include "pmimo/beamforming.hpp"
#include "pmimo/units.hpp"
#include "pmimo/waveform.hpp"

using namespace pmimo;

TEST_CASE("bank rows are orthonormal under the discrete inner product") {
    WaveformBank bank = make_bank(5, 256);
    REQUIRE(bank.table.rows() == 5);
    REQUIRE(bank.table.cols() == 256);
    CMatrix gram = bank.table * bank.table.adjoint();
    CHECK((gram - CMatrix::Identity(5, 5)).cwiseAbs().maxCoeff() < 1e-13);

    WaveformBank tight = make_bank(4, 4);
    CHECK((tight.table * tight.table.adjoint() - CMatrix::Identity(4, 4)).cwiseAbs().maxCoeff() <
          1e-13);
}

TEST_CASE("bank parameters are validated") {
    CHECK_THROWS_AS(make_bank(0, 16), std::invalid_argument);
    CHECK_THROWS_AS(make_bank(5, 4), std::invalid_argument);
}

TEST_CASE("every partition radiates total pulse energy M") {
    ArrayConfig cfg(10, 10, 0.5, 0.5);
    const double theta_s = deg2rad(10.0);
    for (int k : {1, 2, 5, 10}) {
        Partition part = Partition::fully_overlapped(10, k);
        WaveformBank bank = make_bank(k, 64);
        std::vector<CVector> w = conventional_tx_weights(cfg, part, theta_s);
        TransmitSignalSet tx = synthesize_tx(bank, w, cfg, part);
        CHECK(pulse_energy(tx) == doctest::Approx(10.0).epsilon(1e-10));
    }
    // With K = M each element radiates its own waveform at unit energy.
    Partition part = Partition::fully_overlapped(10, 10);
    TransmitSignalSet tx = synthesize_tx(make_bank(10, 64),
                                         conventional_tx_weights(cfg, part, theta_s), cfg, part);
    for (int m = 0; m < 10; ++m) {
        CHECK(tx.samples.row(m).squaredNorm() == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("power toward the steered direction is M(M-K+1)") {
    ArrayConfig cfg(10, 10, 0.5, 0.5);
    const double theta_s = deg2rad(10.0);
    for (auto [k, expect] : std::vector<std::pair<int, double>>{{1, 100.0}, {5, 60.0}, {10, 10.0}}) {
        Partition part = Partition::fully_overlapped(10, k);
        std::vector<CVector> w = conventional_tx_weights(cfg, part, theta_s);
        CHECK(transmit_power(w, cfg, part, theta_s, 1.0) == doctest::Approx(expect).epsilon(1e-10));
        CHECK(transmit_power(w, cfg, part, theta_s, 2.0) ==
              doctest::Approx(2.0 * expect).epsilon(1e-10));
    }
}

TEST_CASE("synthesis requires unit-norm subarray weights") {
    ArrayConfig cfg(10, 10, 0.5, 0.5);
    Partition part = Partition::fully_overlapped(10, 5);
    std::vector<CVector> w = conventional_tx_weights(cfg, part, 0.1);
    w[1] *= 2.0;
    CHECK_THROWS_AS(synthesize_tx(make_bank(5, 64), w, cfg, part), std::invalid_argument);
}

TEST_CASE("matched filter separates waveforms and stacks waveform-major") {
    const int n = 3, kwave = 3, len = 32;
    ArrayConfig cfg(4, n, 0.5, 0.5);
    WaveformBank bank = make_bank(kwave, len);
    CVector b = rx_steering(cfg, deg2rad(25.0));
    // Receive pulse that carries only waveform 1 on the b(theta) footprint.
    CMatrix rx = b * bank.table.row(1);
    CVector y = matched_filter(rx, bank);
    REQUIRE(y.size() == kwave * n);
    CHECK((y.segment(0, n)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((y.segment(n, n) - b).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((y.segment(2 * n, n)).cwiseAbs().maxCoeff() < 1e-12);

    CMatrix short_rx = CMatrix::Zero(n, len - 1);
    CHECK_THROWS_AS(matched_filter(short_rx, bank), std::invalid_argument);
}

TEST_CASE("time-domain synthesis reproduces the closed-form virtual model") {
    const int m = 10, n = 8, kk = 4;
    ArrayConfig cfg(m, n, 0.5, 0.5);
    Partition part = Partition::fully_overlapped(m, kk);
    const double theta_s = deg2rad(10.0);
    std::vector<CVector> w = conventional_tx_weights(cfg, part, theta_s);
    WaveformBank bank = make_bank(kk, 128);
    TransmitSignalSet tx = synthesize_tx(bank, w, cfg, part);

    std::vector<std::pair<double, Complex>> sources = {
        {deg2rad(10.0), Complex(1.0, 0.5)},
        {deg2rad(-30.0), Complex(-0.3, 2.0)},
        {deg2rad(41.0), Complex(0.0, -1.25)},
    };
    CMatrix rx = simulate_rx_pulse(tx, cfg, sources);
    CVector y = matched_filter(rx, bank);

    CVector expect = CVector::Zero(kk * n);
    const double scale = std::sqrt(static_cast<double>(m) / kk);
    for (const auto& [theta, beta] : sources) {
        expect += beta * scale * virtual_steering(w, cfg, part, theta);
    }
    CHECK((y - expect).norm() / expect.norm() < 1e-9);
}
