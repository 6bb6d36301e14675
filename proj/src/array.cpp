#include "pmimo/array.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "pmimo/units.hpp"

namespace pmimo {

namespace {

// Tiny slack so deg2rad(90) and friends never trip the domain check.
constexpr double kAngleSlack = 1e-9;

void check_angle(double theta) {
    if (!(theta >= -kPi / 2 - kAngleSlack && theta <= kPi / 2 + kAngleSlack)) {
        throw std::domain_error("steering angle must lie in [-pi/2, pi/2] radians");
    }
}

void check_subarray_index(const Partition& part, int k) {
    if (k < 0 || k >= part.k_subarrays) {
        throw std::out_of_range("subarray index " + std::to_string(k) + " outside [0, " +
                                std::to_string(part.k_subarrays) + ")");
    }
}

void check_partition_count(int m_tx, int k) {
    if (m_tx < 1) throw std::invalid_argument("m_tx must be >= 1");
    if (k < 1 || k > m_tx) {
        throw std::invalid_argument("k_subarrays must satisfy 1 <= K <= M (got K=" +
                                    std::to_string(k) + ", M=" + std::to_string(m_tx) + ")");
    }
}

}  // namespace

ArrayConfig::ArrayConfig(int m_tx_, int n_rx_, double d_tx_, double d_rx_)
    : m_tx(m_tx_), n_rx(n_rx_), d_tx(d_tx_), d_rx(d_rx_) {
    if (m_tx < 1) throw std::invalid_argument("m_tx must be >= 1");
    if (n_rx < 1) throw std::invalid_argument("n_rx must be >= 1");
    if (!(d_tx > 0.0)) throw std::invalid_argument("d_tx must be > 0");
    if (!(d_rx > 0.0)) throw std::invalid_argument("d_rx must be > 0");
}

Partition Partition::fully_overlapped(int m_tx, int k) {
    check_partition_count(m_tx, k);
    Partition p{PartitionScheme::FullyOverlapped, k, {}};
    const int size = m_tx - k + 1;
    p.subarrays.reserve(k);
    for (int s = 0; s < k; ++s) {
        std::vector<int> idx(size);
        for (int j = 0; j < size; ++j) idx[j] = s + j;
        p.subarrays.push_back(std::move(idx));
    }
    return p;
}

Partition Partition::non_overlapped(int m_tx, int k) {
    check_partition_count(m_tx, k);
    if (m_tx % k != 0) {
        throw std::invalid_argument("non-overlapped partition requires K to divide M (got K=" +
                                    std::to_string(k) + ", M=" + std::to_string(m_tx) + ")");
    }
    Partition p{PartitionScheme::NonOverlapped, k, {}};
    const int size = m_tx / k;
    p.subarrays.reserve(k);
    for (int s = 0; s < k; ++s) {
        std::vector<int> idx(size);
        for (int j = 0; j < size; ++j) idx[j] = s * size + j;
        p.subarrays.push_back(std::move(idx));
    }
    return p;
}

Partition Partition::whole_array(int m_tx, int k) {
    check_partition_count(m_tx, k);
    Partition p{PartitionScheme::WholeArray, k, {}};
    std::vector<int> idx(m_tx);
    for (int j = 0; j < m_tx; ++j) idx[j] = j;
    p.subarrays.assign(k, idx);
    return p;
}

Partition Partition::make(PartitionScheme scheme, int m_tx, int k) {
    switch (scheme) {
        case PartitionScheme::FullyOverlapped: return fully_overlapped(m_tx, k);
        case PartitionScheme::NonOverlapped: return non_overlapped(m_tx, k);
        case PartitionScheme::WholeArray: return whole_array(m_tx, k);
    }
    throw std::invalid_argument("unknown partition scheme");
}

namespace {

CVector ula_steering(int length, double spacing, double theta) {
    check_angle(theta);
    CVector v(length);
    const double step = -2.0 * kPi * spacing * std::sin(theta);
    for (int m = 0; m < length; ++m) v(m) = std::polar(1.0, step * static_cast<double>(m));
    return v;
}

}  // namespace

CVector tx_steering(const ArrayConfig& cfg, double theta) {
    return ula_steering(cfg.m_tx, cfg.d_tx, theta);
}

CVector rx_steering(const ArrayConfig& cfg, double theta) {
    return ula_steering(cfg.n_rx, cfg.d_rx, theta);
}

CVector subarray_steering(const ArrayConfig& cfg, const Partition& part, int k, double theta) {
    check_subarray_index(part, k);
    check_angle(theta);
    const auto& idx = part.subarrays[k];
    CVector v(idx.size());
    const double step = -2.0 * kPi * cfg.d_tx * std::sin(theta);
    // Phases are built from index offsets, so identical subarray shapes give
    // bit-identical vectors regardless of where the subarray sits.
    for (std::size_t j = 0; j < idx.size(); ++j) {
        v(static_cast<Eigen::Index>(j)) = std::polar(1.0, step * static_cast<double>(idx[j] - idx[0]));
    }
    return v;
}

CVector diversity_vector(const ArrayConfig& cfg, const Partition& part, double theta) {
    check_angle(theta);
    CVector d(part.k_subarrays);
    const double step = -2.0 * kPi * cfg.d_tx * std::sin(theta);
    for (int k = 0; k < part.k_subarrays; ++k) {
        d(k) = std::polar(1.0, step * static_cast<double>(part.subarrays[k].front()));
    }
    return d;
}

CVector coherent_vector(const std::vector<CVector>& weights, const ArrayConfig& cfg,
                        const Partition& part, double theta) {
    if (static_cast<int>(weights.size()) != part.k_subarrays) {
        throw std::invalid_argument("expected one weight vector per subarray");
    }
    CVector c(part.k_subarrays);
    for (int k = 0; k < part.k_subarrays; ++k) {
        if (weights[k].size() != part.subarray_size(k)) {
            throw std::invalid_argument("weight vector " + std::to_string(k) +
                                        " does not match its subarray size");
        }
        c(k) = weights[k].dot(subarray_steering(cfg, part, k, theta));
    }
    return c;
}

CVector virtual_steering(const std::vector<CVector>& weights, const ArrayConfig& cfg,
                         const Partition& part, double theta) {
    const CVector c = coherent_vector(weights, cfg, part, theta);
    const CVector d = diversity_vector(cfg, part, theta);
    return kron(c.cwiseProduct(d), rx_steering(cfg, theta));
}

CVector mimo_virtual_steering(const ArrayConfig& cfg, double theta) {
    return kron(tx_steering(cfg, theta), rx_steering(cfg, theta));
}

CVector kron(const CVector& x, const CVector& y) {
    CVector out(x.size() * y.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) out.segment(i * y.size(), y.size()) = x(i) * y;
    return out;
}

}  // namespace pmimo
