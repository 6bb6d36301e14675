// Transmit/receive beamformers over the virtual data model: conventional
// (phase-steered) weights, sample covariance with diagonal loading, and the
// MVDR solution.
#pragma once

#include <vector>

#include "pmimo/array.hpp"

namespace pmimo {

// Unit-norm per-subarray transmit weights steered at theta_s:
// w_k = a_k(theta_s)/||a_k(theta_s)||, giving coherent gain sqrt(M-K+1) per
// subarray on a fully-overlapped partition.
std::vector<CVector> conventional_tx_weights(const ArrayConfig& cfg, const Partition& part,
                                             double theta_s);

// Conventional receive weights for the K*N virtual data: w_d = u(theta_s).
CVector conventional_rx_weights(const ArrayConfig& cfg, const Partition& part,
                                const std::vector<CVector>& tx_weights, double theta_s);

struct CovarianceEstimate {
    CMatrix matrix;
    int n_snapshots;
    double diagonal_load;
};

// Unnormalized snapshot sum: R = sum_t y_t y_t^H + load * I. The load is an
// absolute level, so its strength relative to the data scales with the
// snapshot count; callers relying on a load-to-noise ratio must account for
// that. The result is exactly Hermitian by construction.
CovarianceEstimate sample_covariance(const std::vector<CVector>& snapshots, double diagonal_load);

// w = R^{-1} u_s / (u_s^H R^{-1} u_s); solved via Cholesky, throws
// std::runtime_error when R is not positive definite. Satisfies
// w^H u_s = 1 and is invariant to uniform scaling of R.
CVector mvdr_weights(const CMatrix& covariance, const CVector& u_s);
inline CVector mvdr_weights(const CovarianceEstimate& cov, const CVector& u_s) {
    return mvdr_weights(cov.matrix, u_s);
}

}  // namespace pmimo
