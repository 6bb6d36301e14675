// Array geometry, transmit-array partitioning and the steering-vector
// constructions the rest of the library is built on: transmit/receive
// steering a(theta), b(theta), per-subarray steering, the waveform-diversity
// vector d(theta), the coherent-gain vector c(theta), and the K*N virtual
// steering vector u(theta) = (c(theta) o d(theta)) (x) b(theta).
#pragma once

#include <Eigen/Dense>

#include <complex>
#include <vector>

namespace pmimo {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

// Uniform linear transmit/receive arrays. Spacings are in wavelengths.
struct ArrayConfig {
    int m_tx;
    int n_rx;
    double d_tx;
    double d_rx;

    ArrayConfig(int m_tx, int n_rx, double d_tx, double d_rx);
};

enum class PartitionScheme { FullyOverlapped, NonOverlapped, WholeArray };

// Grouping of the M transmit elements into K subarrays. Element indices are
// 0-based and contiguous for every scheme, so each subarray is itself a ULA.
struct Partition {
    PartitionScheme scheme;
    int k_subarrays;
    std::vector<std::vector<int>> subarrays;

    // Subarray k spans elements {k, ..., k + M - K}; all K share M-K+1 elements.
    static Partition fully_overlapped(int m_tx, int k);
    // Disjoint blocks of M/K consecutive elements; requires K to divide M.
    static Partition non_overlapped(int m_tx, int k);
    // Every subarray is the full aperture (K repeated transmissions).
    static Partition whole_array(int m_tx, int k);
    static Partition make(PartitionScheme scheme, int m_tx, int k);

    int subarray_size(int k) const { return static_cast<int>(subarrays.at(k).size()); }
};

// Steering vectors use the exp(-j*2*pi*m*d*sin(theta)) phase convention with
// element 0 as the phase reference. theta must lie in [-pi/2, pi/2].
CVector tx_steering(const ArrayConfig& cfg, double theta);
CVector rx_steering(const ArrayConfig& cfg, double theta);

// Steering vector of subarray k re-phased to its own leading element, so the
// first entry is exactly 1. On a ULA every subarray of a given partition then
// yields the same vector; the inter-subarray phase offsets live in
// diversity_vector() instead.
CVector subarray_steering(const ArrayConfig& cfg, const Partition& part, int k, double theta);

// Entry k is the propagation phase of subarray k's reference element,
// exp(-j*2*pi*first_k*d_tx*sin(theta)). WholeArray degenerates to all-ones.
CVector diversity_vector(const ArrayConfig& cfg, const Partition& part, double theta);

// Entry k is w_k^H a_k(theta), the coherent transmit gain of subarray k
// toward theta under per-subarray weights w_k.
CVector coherent_vector(const std::vector<CVector>& weights, const ArrayConfig& cfg,
                        const Partition& part, double theta);

// Virtual steering vector of the K*N matched-filter data,
// u(theta) = (c(theta) o d(theta)) (x) b(theta), stacked waveform-major.
CVector virtual_steering(const std::vector<CVector>& weights, const ArrayConfig& cfg,
                         const Partition& part, double theta);

// M*N virtual steering a(theta) (x) b(theta) of the K = M element-level case;
// collapses to an MN-element ULA response when d_tx = N*d_rx.
CVector mimo_virtual_steering(const ArrayConfig& cfg, double theta);

CVector kron(const CVector& x, const CVector& y);

}  // namespace pmimo
