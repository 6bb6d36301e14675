#include "pmimo/beamforming.hpp"

#include <Eigen/Cholesky>

#include <stdexcept>

namespace pmimo {

std::vector<CVector> conventional_tx_weights(const ArrayConfig& cfg, const Partition& part,
                                             double theta_s) {
    std::vector<CVector> weights;
    weights.reserve(part.k_subarrays);
    for (int k = 0; k < part.k_subarrays; ++k) {
        CVector a = subarray_steering(cfg, part, k, theta_s);
        weights.push_back(a / a.norm());
    }
    return weights;
}

CVector conventional_rx_weights(const ArrayConfig& cfg, const Partition& part,
                                const std::vector<CVector>& tx_weights, double theta_s) {
    return virtual_steering(tx_weights, cfg, part, theta_s);
}

CovarianceEstimate sample_covariance(const std::vector<CVector>& snapshots,
                                     double diagonal_load) {
    if (snapshots.empty()) throw std::invalid_argument("need at least one snapshot");
    if (diagonal_load < 0.0) throw std::invalid_argument("diagonal load must be >= 0");
    const Eigen::Index dim = snapshots.front().size();
    CMatrix acc = CMatrix::Zero(dim, dim);
    for (const CVector& y : snapshots) {
        if (y.size() != dim) throw std::invalid_argument("snapshots must share one dimension");
        acc.selfadjointView<Eigen::Lower>().rankUpdate(y);
    }
    // Mirroring the lower triangle keeps the estimate exactly Hermitian.
    CMatrix r = acc.selfadjointView<Eigen::Lower>();
    r.diagonal().array() += diagonal_load;
    return CovarianceEstimate{std::move(r), static_cast<int>(snapshots.size()), diagonal_load};
}

CVector mvdr_weights(const CMatrix& covariance, const CVector& u_s) {
    if (covariance.rows() != covariance.cols() || covariance.rows() != u_s.size()) {
        throw std::invalid_argument("covariance and steering dimensions disagree");
    }
    Eigen::LLT<CMatrix> llt(covariance);
    if (llt.info() != Eigen::Success) {
        throw std::runtime_error("covariance is not positive definite");
    }
    const CVector x = llt.solve(u_s);
    const double denom = u_s.dot(x).real();
    if (!(denom > 0.0)) {
        throw std::runtime_error("steering vector has no response under this covariance");
    }
    return x / denom;
}

}  // namespace pmimo
