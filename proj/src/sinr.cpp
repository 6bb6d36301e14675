#include "pmimo/sinr.hpp"

#include <Eigen/Cholesky>

#include <cmath>
#include <exception>
#include <limits>
#include <stdexcept>
#include <thread>

namespace pmimo {

namespace {

void validate_scenario(const Scenario& sc) {
    if (!(sc.target.power >= 0.0)) throw std::invalid_argument("target power must be >= 0");
    if (!(sc.noise_power > 0.0)) throw std::invalid_argument("noise power must be > 0");
    for (const auto& i : sc.interferers) {
        if (!(i.power >= 0.0)) throw std::invalid_argument("interferer power must be >= 0");
    }
    if (sc.distributed) {
        if (sc.distributed->n_patches < 1) {
            throw std::invalid_argument("distributed interference needs n_patches >= 1");
        }
        if (!(sc.distributed->theta_lo <= sc.distributed->theta_hi)) {
            throw std::invalid_argument("distributed sector bounds are reversed");
        }
        if (!(sc.distributed->total_power >= 0.0)) {
            throw std::invalid_argument("distributed power must be >= 0");
        }
    }
}

double tx_gain_factor(const Scenario& sc) {
    return static_cast<double>(sc.cfg.m_tx) / static_cast<double>(sc.part.k_subarrays);
}

}  // namespace

std::vector<PointInterferer> Scenario::effective_interferers() const {
    std::vector<PointInterferer> all = interferers;
    if (distributed) {
        const auto& d = *distributed;
        const double patch_power = d.total_power / static_cast<double>(d.n_patches);
        if (d.n_patches == 1) {
            all.push_back({0.5 * (d.theta_lo + d.theta_hi), patch_power});
        } else {
            const double step = (d.theta_hi - d.theta_lo) / static_cast<double>(d.n_patches - 1);
            for (int j = 0; j < d.n_patches; ++j) {
                all.push_back({d.theta_lo + step * static_cast<double>(j), patch_power});
            }
        }
    }
    return all;
}

CovarianceEstimate interference_noise_covariance(const Scenario& scenario,
                                                 const std::vector<CVector>& tx_weights) {
    validate_scenario(scenario);
    const double gain = tx_gain_factor(scenario);
    const Eigen::Index dim =
        static_cast<Eigen::Index>(scenario.part.k_subarrays) * scenario.cfg.n_rx;
    CMatrix acc = CMatrix::Zero(dim, dim);
    for (const auto& interferer : scenario.effective_interferers()) {
        const CVector u =
            virtual_steering(tx_weights, scenario.cfg, scenario.part, interferer.theta);
        acc.selfadjointView<Eigen::Lower>().rankUpdate(u, gain * interferer.power);
    }
    CMatrix r = acc.selfadjointView<Eigen::Lower>();
    r.diagonal().array() += scenario.noise_power;
    return CovarianceEstimate{std::move(r), 0, 0.0};
}

double analytic_sinr(const Scenario& scenario, const std::vector<CVector>& tx_weights,
                     const CVector& rx_weights) {
    const CovarianceEstimate cov = interference_noise_covariance(scenario, tx_weights);
    const CVector u_s =
        virtual_steering(tx_weights, scenario.cfg, scenario.part, scenario.target.theta);
    if (rx_weights.size() != u_s.size()) {
        throw std::invalid_argument("receive weights do not match the virtual data dimension");
    }
    const double num =
        tx_gain_factor(scenario) * scenario.target.power * std::norm(rx_weights.dot(u_s));
    if (!(num > 0.0) && scenario.target.power > 0.0) {
        throw std::invalid_argument("receive weights have zero response toward the target");
    }
    const double den = rx_weights.dot(cov.matrix * rx_weights).real();
    return num / den;
}

double optimal_sinr(const Scenario& scenario, const std::vector<CVector>& tx_weights) {
    const CovarianceEstimate cov = interference_noise_covariance(scenario, tx_weights);
    const CVector u_s =
        virtual_steering(tx_weights, scenario.cfg, scenario.part, scenario.target.theta);
    Eigen::LLT<CMatrix> llt(cov.matrix);
    if (llt.info() != Eigen::Success) {
        throw std::runtime_error("interference covariance is not positive definite");
    }
    return tx_gain_factor(scenario) * scenario.target.power * u_s.dot(llt.solve(u_s)).real();
}

CVector training_snapshot(const Scenario& scenario,
                          const std::vector<PointInterferer>& interferers,
                          const std::vector<CVector>& u_interferers, RunRng& rng) {
    const double scale = std::sqrt(tx_gain_factor(scenario));
    const Eigen::Index dim =
        static_cast<Eigen::Index>(scenario.part.k_subarrays) * scenario.cfg.n_rx;
    CVector snap = CVector::Zero(dim);
    for (std::size_t j = 0; j < interferers.size(); ++j) {
        snap += (scale * std::sqrt(interferers[j].power) * rng.cgauss()) * u_interferers[j];
    }
    const double sigma_n = std::sqrt(scenario.noise_power);
    for (Eigen::Index e = 0; e < dim; ++e) snap(e) += sigma_n * rng.cgauss();
    return snap;
}

MonteCarloEstimate monte_carlo_sinr_detailed(const Scenario& scenario,
                                             const std::vector<CVector>& tx_weights,
                                             const MonteCarloOptions& options) {
    validate_scenario(scenario);
    if (scenario.pulse_runs < 1) throw std::invalid_argument("pulse_runs must be >= 1");
    if (scenario.snapshot_count < 1) throw std::invalid_argument("snapshot_count must be >= 1");

    const auto interferers = scenario.effective_interferers();
    const CVector u_s =
        virtual_steering(tx_weights, scenario.cfg, scenario.part, scenario.target.theta);
    std::vector<CVector> u_i;
    u_i.reserve(interferers.size());
    for (const auto& interferer : interferers) {
        u_i.push_back(virtual_steering(tx_weights, scenario.cfg, scenario.part, interferer.theta));
    }

    const double scale = std::sqrt(tx_gain_factor(scenario));
    const double sigma_n = std::sqrt(scenario.noise_power);
    const Eigen::Index dim = u_s.size();
    const int runs = scenario.pulse_runs;
    std::vector<double> signal_power(static_cast<std::size_t>(runs));
    std::vector<double> clutter_power(static_cast<std::size_t>(runs));

    auto run_range = [&](int lo, int hi) {
        std::vector<CVector> snapshots;
        for (int r = lo; r < hi; ++r) {
            RunRng rng(scenario.seed, options.stream, static_cast<std::uint64_t>(r));
            // Draw order is fixed: target beta, interferer betas, test noise,
            // then training. Keeping the betas first means every partition of
            // the same scenario sees identical reflection coefficients.
            const Complex beta_s = std::sqrt(scenario.target.power) * rng.cgauss();
            CVector q = CVector::Zero(dim);
            for (std::size_t j = 0; j < interferers.size(); ++j) {
                q += (scale * std::sqrt(interferers[j].power) * rng.cgauss()) * u_i[j];
            }
            for (Eigen::Index e = 0; e < dim; ++e) q(e) += sigma_n * rng.cgauss();

            CVector w;
            if (options.beamformer == RxBeamformer::Mvdr) {
                snapshots.clear();
                snapshots.reserve(static_cast<std::size_t>(scenario.snapshot_count));
                for (int t = 0; t < scenario.snapshot_count; ++t) {
                    snapshots.push_back(training_snapshot(scenario, interferers, u_i, rng));
                }
                w = mvdr_weights(sample_covariance(snapshots, options.diagonal_load), u_s);
            } else {
                w = u_s;
            }
            signal_power[static_cast<std::size_t>(r)] =
                tx_gain_factor(scenario) * std::norm(beta_s) * std::norm(w.dot(u_s));
            clutter_power[static_cast<std::size_t>(r)] = std::norm(w.dot(q));
        }
    };

    const int n_threads = std::max(1, std::min(options.threads, runs));
    if (n_threads == 1) {
        run_range(0, runs);
    } else {
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n_threads));
        const int chunk = (runs + n_threads - 1) / n_threads;
        for (int t = 0; t < n_threads; ++t) {
            const int lo = t * chunk;
            const int hi = std::min(runs, lo + chunk);
            pool.emplace_back([&, t, lo, hi] {
                try {
                    run_range(lo, hi);
                } catch (...) {
                    errors[static_cast<std::size_t>(t)] = std::current_exception();
                }
            });
        }
        for (auto& th : pool) th.join();
        for (const auto& err : errors) {
            if (err) std::rethrow_exception(err);
        }
    }

    // Sequential reduction in run order: the estimate is independent of the
    // thread count down to the last bit.
    double sum_s = 0.0;
    double sum_q = 0.0;
    for (int r = 0; r < runs; ++r) {
        sum_s += signal_power[static_cast<std::size_t>(r)];
        sum_q += clutter_power[static_cast<std::size_t>(r)];
    }
    const double mean_s = sum_s / runs;
    const double mean_q = sum_q / runs;

    MonteCarloEstimate est{mean_s / mean_q, std::numeric_limits<double>::quiet_NaN()};
    if (runs > 1) {
        double var_s = 0.0;
        double var_q = 0.0;
        double cov_sq = 0.0;
        for (int r = 0; r < runs; ++r) {
            const double ds = signal_power[static_cast<std::size_t>(r)] - mean_s;
            const double dq = clutter_power[static_cast<std::size_t>(r)] - mean_q;
            var_s += ds * ds;
            var_q += dq * dq;
            cov_sq += ds * dq;
        }
        var_s /= runs - 1;
        var_q /= runs - 1;
        cov_sq /= runs - 1;
        const double n = static_cast<double>(runs);
        const double var_log = var_s / (n * mean_s * mean_s) + var_q / (n * mean_q * mean_q) -
                               2.0 * cov_sq / (n * mean_s * mean_q);
        est.stderr_db = 10.0 / std::log(10.0) * std::sqrt(std::max(0.0, var_log));
    }
    return est;
}

double monte_carlo_sinr(const Scenario& scenario, const std::vector<CVector>& tx_weights,
                        const MonteCarloOptions& options) {
    return monte_carlo_sinr_detailed(scenario, tx_weights, options).sinr;
}

}  // namespace pmimo
