// Orthonormal waveform bank, per-antenna transmit synthesis, energy and
// power accounting, and the matched-filter bank that produces the K*N
// virtual data vector.
#pragma once

#include <utility>
#include <vector>

#include "pmimo/array.hpp"

namespace pmimo {

// K baseband pulse waveforms sampled at L points. Row k holds
// exp(j*2*pi*(k+1)*l/L)/sqrt(L), so the discrete Gram is exactly I_K:
// the rows are orthonormal under sum_l x[l] * conj(y[l]).
struct WaveformBank {
    int k_waveforms;
    int samples_per_pulse;
    CMatrix table;  // K x L
};

WaveformBank make_bank(int k_waveforms, int samples_per_pulse);

// Per-antenna transmit samples psi = sqrt(M/K) * conj(W) * Phi (M x L) plus
// the zero-padded M x K weight matrix W whose column k carries w_k on the
// rows of subarray k.
struct TransmitSignalSet {
    CMatrix samples;
    CMatrix weight_matrix;
};

CMatrix transmit_weight_matrix(const std::vector<CVector>& weights, const ArrayConfig& cfg,
                               const Partition& part);

// Weights must be unit-norm; each subarray then radiates energy M/K and the
// whole aperture energy M per pulse, independent of K.
TransmitSignalSet synthesize_tx(const WaveformBank& bank, const std::vector<CVector>& weights,
                                const ArrayConfig& cfg, const Partition& part);

// Total energy sum_m sum_l |psi_ml|^2 of one pulse.
double pulse_energy(const TransmitSignalSet& tx);

// Power radiated toward theta for a unit-power source model scaled by
// sigma2: (M/K) * sigma2 * sum_k |w_k^H a_k(theta)|^2.
double transmit_power(const std::vector<CVector>& weights, const ArrayConfig& cfg,
                      const Partition& part, double theta, double sigma2);

// Noise-free receive pulse (N x L) for point sources given as
// (theta, reflection coefficient) pairs, built through the physical
// per-antenna path: x(l) = sum_s beta_s * b(theta_s) * (a(theta_s)^T psi(l)).
CMatrix simulate_rx_pulse(const TransmitSignalSet& tx, const ArrayConfig& cfg,
                          const std::vector<std::pair<double, Complex>>& sources);

// Correlates each receive channel against every bank waveform and stacks the
// N x K outputs waveform-major into a K*N vector, matching the
// (c o d) (x) b ordering of virtual_steering().
CVector matched_filter(const CMatrix& rx_pulse, const WaveformBank& bank);

}  // namespace pmimo
