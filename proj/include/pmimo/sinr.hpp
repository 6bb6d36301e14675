// Output-SINR analysis for the virtual data model: exact interference-plus-
// noise covariance, closed-form SINR of a given beamformer, the optimal
// (exact-covariance MVDR) SINR, and Monte-Carlo estimation with per-run
// sample-covariance MVDR.
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pmimo/array.hpp"
#include "pmimo/beamforming.hpp"
#include "pmimo/rng.hpp"

namespace pmimo {

struct Target {
    double theta;
    double power;  // sigma_s^2
};

struct PointInterferer {
    double theta;
    double power;  // sigma_i^2 per pulse
};

// A contiguous angular sector discretized into equal-power point patches;
// endpoints are included and the patch powers sum to total_power.
struct DistributedInterference {
    double theta_lo;
    double theta_hi;
    double total_power;
    int n_patches;
};

struct Scenario {
    ArrayConfig cfg;
    Partition part;
    Target target;
    std::vector<PointInterferer> interferers;
    std::optional<DistributedInterference> distributed;
    double noise_power;  // sigma_n^2 per virtual-data element
    int snapshot_count;  // target-free training snapshots per MVDR run
    int pulse_runs;
    std::uint64_t seed;

    // Point interferers first, then distributed patches low-to-high angle.
    // The order is part of the determinism contract: it fixes the
    // reflection-coefficient draw order inside every run.
    std::vector<PointInterferer> effective_interferers() const;
};

// Exact R_{i+n} = sum_i (M/K) sigma_i^2 u(theta_i) u(theta_i)^H +
// sigma_n^2 I over the K*N virtual data.
CovarianceEstimate interference_noise_covariance(const Scenario& scenario,
                                                 const std::vector<CVector>& tx_weights);

// Closed-form SINR of fixed receive weights:
// (M/K) sigma_s^2 |w^H u_s|^2 / (w^H R_{i+n} w).
double analytic_sinr(const Scenario& scenario, const std::vector<CVector>& tx_weights,
                     const CVector& rx_weights);

// (M/K) sigma_s^2 u_s^H R_{i+n}^{-1} u_s, the SINR attained by MVDR on the
// exact covariance; upper-bounds analytic_sinr over all weights.
double optimal_sinr(const Scenario& scenario, const std::vector<CVector>& tx_weights);

enum class RxBeamformer { ConventionalRx, Mvdr };

struct MonteCarloOptions {
    RxBeamformer beamformer = RxBeamformer::ConventionalRx;
    double diagonal_load = 10.0;  // absolute, added to the unnormalized sum
    int threads = 1;
    std::uint64_t stream = 0;  // keys the RNG per sweep point
};

struct MonteCarloEstimate {
    double sinr;       // ratio of mean signal power to mean interference+noise power
    double stderr_db;  // delta-method standard error of the dB estimate
};

// Per run: draw the test pulse (target beta, interferer betas, noise), then
// for MVDR draw snapshot_count target-free training snapshots and form
// sample-covariance weights with the configured load. Power sums are reduced
// sequentially over run index, so results are byte-stable for any thread
// count.
MonteCarloEstimate monte_carlo_sinr_detailed(const Scenario& scenario,
                                             const std::vector<CVector>& tx_weights,
                                             const MonteCarloOptions& options);

double monte_carlo_sinr(const Scenario& scenario, const std::vector<CVector>& tx_weights,
                        const MonteCarloOptions& options);

// One target-free training snapshot from the given stream; exposed so the
// MVDR-pattern path trains on exactly the statistics the Monte Carlo uses.
CVector training_snapshot(const Scenario& scenario,
                          const std::vector<PointInterferer>& interferers,
                          const std::vector<CVector>& u_interferers, RunRng& rng);

}  // namespace pmimo
