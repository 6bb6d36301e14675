// Closed-form SINR against frozen references, covariance assembly, and the
// determinism and convergence contracts of the Monte-Carlo estimator.
#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "pmimo/array.hpp"
#include "pmimo/beamforming.hpp"
#include "pmimo/sinr.hpp"
#include "pmimo/units.hpp"

using namespace pmimo;

namespace {

Scenario standard_scenario(int k, double signal_power, double interferer_power,
                           double noise_power) {
    ArrayConfig cfg(10, 10, 0.5, 0.5);
    Partition part = Partition::fully_overlapped(10, k);
    Scenario sc{cfg,
                part,
                Target{deg2rad(10.0), signal_power},
                {},
                std::nullopt,
                noise_power,
                100,
                100,
                1};
    if (interferer_power > 0.0) {
        sc.interferers = {{deg2rad(-30.0), interferer_power}, {deg2rad(-10.0), interferer_power}};
    }
    return sc;
}

double conventional_sinr(const Scenario& sc) {
    std::vector<CVector> w =
        conventional_tx_weights(sc.cfg, sc.part, sc.target.theta);
    CVector u_s = virtual_steering(w, sc.cfg, sc.part, sc.target.theta);
    return analytic_sinr(sc, w, u_s);
}

}  // namespace

TEST_CASE("noise-only conventional output matches the closed forms") {
    // Coherent gains M*M, M, and M*(M-K+1) times the N-element receive gain.
    const double ph = conventional_sinr(standard_scenario(1, 1.0, 0.0, 1.0));
    const double mimo = conventional_sinr(standard_scenario(10, 1.0, 0.0, 1.0));
    const double phmimo = conventional_sinr(standard_scenario(5, 1.0, 0.0, 1.0));
    CHECK(ph == doctest::Approx(1000.0).epsilon(1e-12));
    CHECK(mimo == doctest::Approx(100.0).epsilon(1e-12));
    CHECK(phmimo == doctest::Approx(600.0).epsilon(1e-12));
    CHECK(ph / mimo == doctest::Approx(10.0).epsilon(1e-12));
    CHECK(phmimo / ph == doctest::Approx(0.6).epsilon(1e-12));
}

TEST_CASE("two-interferer closed forms match frozen references") {
    // Frozen with an independent implementation: conventional and optimal
    // output SINR at signal 1, interferers 1e3, noise 1.
    struct Ref {
        int k;
        double conv_db;
        double opt_db;
    };
    for (const Ref& ref : {Ref{1, 2.7677, 29.8314}, Ref{10, 2.6944, 19.9978},
                           Ref{5, 25.8647, 27.7778}}) {
        Scenario sc = standard_scenario(ref.k, 1.0, 1e3, 1.0);
        std::vector<CVector> w = conventional_tx_weights(sc.cfg, sc.part, sc.target.theta);
        CVector u_s = virtual_steering(w, sc.cfg, sc.part, sc.target.theta);
        CHECK(to_db(analytic_sinr(sc, w, u_s)) == doctest::Approx(ref.conv_db).epsilon(1e-4));
        CHECK(to_db(optimal_sinr(sc, w)) == doctest::Approx(ref.opt_db).epsilon(1e-4));
    }
}

TEST_CASE("interference-dominant regime equalizes the coherent systems") {
    // Frozen: with noise 60 dB below the interferers the phased array loses
    // its coherent-gain advantage while the partitioned system keeps its
    // transmit sidelobe suppression.
    const double ph = to_db(conventional_sinr(standard_scenario(1, 1.0, 1e3, 1e-3)));
    const double mimo = to_db(conventional_sinr(standard_scenario(10, 1.0, 1e3, 1e-3)));
    const double phmimo = to_db(conventional_sinr(standard_scenario(5, 1.0, 1e3, 1e-3)));
    CHECK(ph == doctest::Approx(2.7759).epsilon(1e-3));
    CHECK(std::abs(ph - mimo) < 0.01);
    CHECK(phmimo == doctest::Approx(30.3321).epsilon(1e-3));
}

TEST_CASE("optimal sinr upper bounds every fixed beamformer") {
    Scenario sc = standard_scenario(5, 1.0, 1e3, 1.0);
    std::vector<CVector> w = conventional_tx_weights(sc.cfg, sc.part, sc.target.theta);
    const double bound = optimal_sinr(sc, w);
    CVector u_s = virtual_steering(w, sc.cfg, sc.part, sc.target.theta);
    CHECK(analytic_sinr(sc, w, u_s) <= bound * (1.0 + 1e-12));
    CovarianceEstimate exact = interference_noise_covariance(sc, w);
    CVector w_opt = mvdr_weights(exact, u_s);
    CHECK(analytic_sinr(sc, w, w_opt) == doctest::Approx(bound).epsilon(1e-10));
}

TEST_CASE("interference covariance assembles points and distributed patches") {
    Scenario sc = standard_scenario(2, 1.0, 50.0, 0.25);
    sc.distributed = DistributedInterference{deg2rad(-40.0), deg2rad(-20.0), 300.0, 3};
    std::vector<CVector> w = conventional_tx_weights(sc.cfg, sc.part, sc.target.theta);

    std::vector<PointInterferer> eff = sc.effective_interferers();
    REQUIRE(eff.size() == 5);
    CHECK(eff[0].theta == deg2rad(-30.0));
    CHECK(eff[1].theta == deg2rad(-10.0));
    CHECK(eff[2].theta == doctest::Approx(deg2rad(-40.0)).epsilon(1e-15));
    CHECK(eff[3].theta == doctest::Approx(deg2rad(-30.0)).epsilon(1e-15));
    CHECK(eff[4].theta == doctest::Approx(deg2rad(-20.0)).epsilon(1e-15));
    for (int i = 2; i < 5; ++i) CHECK(eff[i].power == doctest::Approx(100.0).epsilon(1e-12));

    const double gain = 10.0 / 2.0;  // M/K
    CMatrix expect = 0.25 * CMatrix::Identity(20, 20);
    for (const PointInterferer& p : eff) {
        CVector u = virtual_steering(w, sc.cfg, sc.part, p.theta);
        expect += gain * p.power * (u * u.adjoint());
    }
    CovarianceEstimate est = interference_noise_covariance(sc, w);
    CHECK((est.matrix - expect).cwiseAbs().maxCoeff() /
              expect.cwiseAbs().maxCoeff() <
          1e-12);

    // A single patch collapses to the sector midpoint with the full power.
    sc.distributed->n_patches = 1;
    std::vector<PointInterferer> mid = sc.effective_interferers();
    REQUIRE(mid.size() == 3);
    CHECK(mid[2].theta == doctest::Approx(deg2rad(-30.0)).epsilon(1e-15));
    CHECK(mid[2].power == doctest::Approx(300.0).epsilon(1e-12));
}

TEST_CASE("scenario invariants are validated") {
    Scenario sc = standard_scenario(5, 1.0, 1e3, 1.0);
    std::vector<CVector> w = conventional_tx_weights(sc.cfg, sc.part, sc.target.theta);

    Scenario bad = sc;
    bad.noise_power = 0.0;
    CHECK_THROWS_AS(interference_noise_covariance(bad, w), std::invalid_argument);
    bad = sc;
    bad.target.power = -1.0;
    CHECK_THROWS_AS(analytic_sinr(bad, w, virtual_steering(w, sc.cfg, sc.part, sc.target.theta)),
                    std::invalid_argument);
    bad = sc;
    bad.interferers[0].power = -5.0;
    CHECK_THROWS_AS(interference_noise_covariance(bad, w), std::invalid_argument);
    bad = sc;
    bad.distributed = DistributedInterference{0.5, -0.5, 10.0, 4};
    CHECK_THROWS_AS(interference_noise_covariance(bad, w), std::invalid_argument);
    bad = sc;
    bad.distributed = DistributedInterference{-0.5, 0.5, 10.0, 0};
    CHECK_THROWS_AS(interference_noise_covariance(bad, w), std::invalid_argument);
}

TEST_CASE("monte carlo with fixed weights converges to the analytic value") {
    Scenario sc = standard_scenario(5, 1.0, 0.0, 1.0);
    sc.pulse_runs = 4000;
    std::vector<CVector> w = conventional_tx_weights(sc.cfg, sc.part, sc.target.theta);
    MonteCarloOptions opt;
    MonteCarloEstimate est = monte_carlo_sinr_detailed(sc, w, opt);
    const double analytic_db = to_db(conventional_sinr(sc));
    CHECK(est.stderr_db < 0.2);
    CHECK(std::abs(to_db(est.sinr) - analytic_db) < 3.0 * est.stderr_db + 1e-9);
}

TEST_CASE("monte carlo is bit-stable across thread counts and reruns") {
    Scenario sc = standard_scenario(2, 1.0, 1e3, 1.0);
    sc.pulse_runs = 64;
    sc.snapshot_count = 30;
    sc.seed = 99;
    std::vector<CVector> w = conventional_tx_weights(sc.cfg, sc.part, sc.target.theta);
    MonteCarloOptions opt;
    opt.beamformer = RxBeamformer::Mvdr;
    opt.threads = 1;
    MonteCarloEstimate one = monte_carlo_sinr_detailed(sc, w, opt);
    opt.threads = 4;
    MonteCarloEstimate four = monte_carlo_sinr_detailed(sc, w, opt);
    opt.threads = 3;
    MonteCarloEstimate three = monte_carlo_sinr_detailed(sc, w, opt);
    CHECK(one.sinr == four.sinr);
    CHECK(one.stderr_db == four.stderr_db);
    CHECK(one.sinr == three.sinr);
    opt.threads = 1;
    MonteCarloEstimate again = monte_carlo_sinr_detailed(sc, w, opt);
    CHECK(one.sinr == again.sinr);
}

TEST_CASE("distinct streams and seeds give distinct estimates") {
    Scenario sc = standard_scenario(2, 1.0, 0.0, 1.0);
    sc.pulse_runs = 32;
    std::vector<CVector> w = conventional_tx_weights(sc.cfg, sc.part, sc.target.theta);
    MonteCarloOptions opt;
    MonteCarloEstimate base = monte_carlo_sinr_detailed(sc, w, opt);
    opt.stream = 1;
    CHECK(monte_carlo_sinr_detailed(sc, w, opt).sinr != base.sinr);
    opt.stream = 0;
    sc.seed = 2;
    CHECK(monte_carlo_sinr_detailed(sc, w, opt).sinr != base.sinr);
}

TEST_CASE("sample-covariance mvdr tracks the optimal sinr") {
    Scenario sc = standard_scenario(1, 1.0, 1e3, 1.0);
    sc.pulse_runs = 300;
    std::vector<CVector> w = conventional_tx_weights(sc.cfg, sc.part, sc.target.theta);
    MonteCarloOptions opt;
    opt.beamformer = RxBeamformer::Mvdr;
    opt.threads = 2;
    MonteCarloEstimate est = monte_carlo_sinr_detailed(sc, w, opt);
    // The K*N = 10 system trains on 100 snapshots: within about half a dB
    // of the exact-covariance bound, and never above it by more than noise.
    const double bound_db = to_db(optimal_sinr(sc, w));
    CHECK(to_db(est.sinr) < bound_db + 3.0 * est.stderr_db);
    CHECK(to_db(est.sinr) > bound_db - 1.0);
}

TEST_CASE("training snapshots reproduce the interference covariance") {
    ArrayConfig cfg(4, 2, 0.5, 0.5);
    Partition part = Partition::fully_overlapped(4, 2);
    Scenario sc{cfg, part, Target{deg2rad(10.0), 1.0},
                {{deg2rad(-20.0), 10.0}}, std::nullopt, 0.5, 1, 1, 5};
    std::vector<CVector> w = conventional_tx_weights(cfg, part, sc.target.theta);
    std::vector<PointInterferer> eff = sc.effective_interferers();
    std::vector<CVector> u_i = {virtual_steering(w, cfg, part, eff[0].theta)};

    RunRng rng(5, 0, 0);
    const int n = 40000;
    CMatrix sum = CMatrix::Zero(4, 4);
    for (int i = 0; i < n; ++i) {
        CVector y = training_snapshot(sc, eff, u_i, rng);
        sum.noalias() += y * y.adjoint();
    }
    CMatrix mean = sum / static_cast<double>(n);
    CMatrix exact = interference_noise_covariance(sc, w).matrix;
    CHECK((mean - exact).cwiseAbs().maxCoeff() / exact.cwiseAbs().maxCoeff() < 0.05);
}
