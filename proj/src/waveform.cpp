#include "pmimo/waveform.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "pmimo/units.hpp"

namespace pmimo {

namespace {

void check_weights(const std::vector<CVector>& weights, const Partition& part) {
    if (static_cast<int>(weights.size()) != part.k_subarrays) {
        throw std::invalid_argument("expected one weight vector per subarray");
    }
    for (int k = 0; k < part.k_subarrays; ++k) {
        if (weights[k].size() != part.subarray_size(k)) {
            throw std::invalid_argument("weight vector " + std::to_string(k) +
                                        " does not match its subarray size");
        }
        if (std::abs(weights[k].norm() - 1.0) > 1e-9) {
            throw std::invalid_argument("weight vector " + std::to_string(k) +
                                        " must be unit norm");
        }
    }
}

}  // namespace

WaveformBank make_bank(int k_waveforms, int samples_per_pulse) {
    if (k_waveforms < 1) throw std::invalid_argument("k_waveforms must be >= 1");
    if (samples_per_pulse < k_waveforms) {
        throw std::invalid_argument("samples_per_pulse must be >= k_waveforms for orthogonality");
    }
    WaveformBank bank{k_waveforms, samples_per_pulse, CMatrix(k_waveforms, samples_per_pulse)};
    const double root_l = std::sqrt(static_cast<double>(samples_per_pulse));
    for (int k = 0; k < k_waveforms; ++k) {
        // Tones at cycles 1..K per pulse; integer cycle counts make the rows
        // exactly orthogonal over the L-sample window.
        const double omega = 2.0 * kPi * static_cast<double>(k + 1) /
                             static_cast<double>(samples_per_pulse);
        for (int l = 0; l < samples_per_pulse; ++l) {
            bank.table(k, l) = std::polar(1.0 / root_l, omega * static_cast<double>(l));
        }
    }
    return bank;
}

CMatrix transmit_weight_matrix(const std::vector<CVector>& weights, const ArrayConfig& cfg,
                               const Partition& part) {
    check_weights(weights, part);
    CMatrix w = CMatrix::Zero(cfg.m_tx, part.k_subarrays);
    for (int k = 0; k < part.k_subarrays; ++k) {
        const auto& idx = part.subarrays[k];
        for (std::size_t j = 0; j < idx.size(); ++j) {
            if (idx[j] < 0 || idx[j] >= cfg.m_tx) {
                throw std::invalid_argument("partition references element outside the array");
            }
            w(idx[j], k) = weights[k](static_cast<Eigen::Index>(j));
        }
    }
    return w;
}

TransmitSignalSet synthesize_tx(const WaveformBank& bank, const std::vector<CVector>& weights,
                                const ArrayConfig& cfg, const Partition& part) {
    if (bank.k_waveforms != part.k_subarrays) {
        throw std::invalid_argument("bank must provide one waveform per subarray");
    }
    CMatrix w = transmit_weight_matrix(weights, cfg, part);
    const double scale = std::sqrt(static_cast<double>(cfg.m_tx) /
                                   static_cast<double>(part.k_subarrays));
    TransmitSignalSet tx;
    tx.samples = scale * (w.conjugate() * bank.table);
    tx.weight_matrix = std::move(w);
    return tx;
}

double pulse_energy(const TransmitSignalSet& tx) { return tx.samples.squaredNorm(); }

double transmit_power(const std::vector<CVector>& weights, const ArrayConfig& cfg,
                      const Partition& part, double theta, double sigma2) {
    const CVector c = coherent_vector(weights, cfg, part, theta);
    return static_cast<double>(cfg.m_tx) / static_cast<double>(part.k_subarrays) * sigma2 *
           c.squaredNorm();
}

CMatrix simulate_rx_pulse(const TransmitSignalSet& tx, const ArrayConfig& cfg,
                          const std::vector<std::pair<double, Complex>>& sources) {
    if (tx.samples.rows() != cfg.m_tx) {
        throw std::invalid_argument("transmit samples do not match the array size");
    }
    CMatrix rx = CMatrix::Zero(cfg.n_rx, tx.samples.cols());
    for (const auto& [theta, beta] : sources) {
        // a^T (not a^H): the outbound path accumulates the same phase signs
        // as the steering definition.
        const Eigen::RowVectorXcd illum = tx_steering(cfg, theta).transpose() * tx.samples;
        rx.noalias() += beta * (rx_steering(cfg, theta) * illum);
    }
    return rx;
}

CVector matched_filter(const CMatrix& rx_pulse, const WaveformBank& bank) {
    if (rx_pulse.cols() != bank.samples_per_pulse) {
        throw std::invalid_argument("receive pulse length does not match the bank");
    }
    // N x K correlator outputs; column k is the output of waveform k's filter.
    const CMatrix y = rx_pulse * bank.table.adjoint();
    CVector out(static_cast<Eigen::Index>(bank.k_waveforms) * rx_pulse.rows());
    for (int k = 0; k < bank.k_waveforms; ++k) {
        out.segment(static_cast<Eigen::Index>(k) * rx_pulse.rows(), rx_pulse.rows()) = y.col(k);
    }
    return out;
}

}  // namespace pmimo
