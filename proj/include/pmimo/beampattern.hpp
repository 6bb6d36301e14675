// Beampattern evaluation and analysis: angle grids, the transmit/diversity/
// receive component patterns and their product form, overall and MVDR
// patterns, sidelobe structure reports, and the aperture-tradeoff curves
// H_K built from periodic sinc ratios.
#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "pmimo/array.hpp"

namespace pmimo {

// Strictly increasing angles (radians) spanning [-pi/2, pi/2]. uniform()
// inserts theta_s exactly so mainlobe bookkeeping never lands between
// samples; resolution is capped at 0.1 degrees.
struct AngleGrid {
    std::vector<double> angles;
    double resolution;

    static AngleGrid uniform(double resolution, double theta_s);
    std::size_t index_of(double theta) const;  // exact match or throws
    std::size_t size() const { return angles.size(); }
};

enum class PatternKind { TransmitC, DiversityD, ReceiveR, Overall, Mvdr };

struct PatternParams {
    int m_tx;
    int n_rx;
    int k_subarrays;
    PartitionScheme scheme;
    double d_tx;
    double d_rx;
    double theta_s;
};

// Linear power values normalized to exactly 1 at theta_s.
struct BeampatternCurve {
    AngleGrid grid;
    std::vector<double> values;
    PatternKind kind;
    PatternParams params;
};

struct ComponentPatterns {
    BeampatternCurve transmit;   // C(theta), coherent subarray gain
    BeampatternCurve diversity;  // D(theta), subarray phase-center factor
    BeampatternCurve receive;    // R(theta)
};

// Component factorization under conventional transmit weights. Valid for all
// three partition schemes (the normalizer is the actual subarray size);
// WholeArray degenerates to D = 1 and K = M to C = 1.
ComponentPatterns component_patterns(const ArrayConfig& cfg, const Partition& part,
                                     double theta_s, const AngleGrid& grid);

// G(theta) = |w_d^H u(theta)|^2 with w_d = u(theta_s), evaluated directly
// from the virtual data model for arbitrary unit-norm transmit weights.
BeampatternCurve overall_pattern(const ArrayConfig& cfg, const Partition& part,
                                 const std::vector<CVector>& tx_weights, double theta_s,
                                 const AngleGrid& grid);

// C * D * R product under conventional weights; agrees with overall_pattern
// to floating-point accuracy on a ULA.
BeampatternCurve factored_overall_pattern(const ArrayConfig& cfg, const Partition& part,
                                          double theta_s, const AngleGrid& grid);

// |w^H u(theta)|^2 normalized to the theta_s response; throws when the
// weights have no response at theta_s.
BeampatternCurve mvdr_pattern(const ArrayConfig& cfg, const Partition& part,
                              const std::vector<CVector>& tx_weights, const CVector& rx_weights,
                              double theta_s, const AngleGrid& grid);

// Mainlobe bounds are the first strict local minima on each side of the
// theta_s peak; the peak sidelobe is taken over everything outside them.
// Flat curves (no descent anywhere) are flagged degenerate and report the
// full domain at level 1. strong_lobes lists every local maximum at or
// above -3 dB so grating-lobe structure is visible.
struct SidelobeReport {
    double mainlobe_left;
    double mainlobe_right;
    double peak_sidelobe_level;  // linear; 0 when no sidelobe region exists
    double peak_sidelobe_angle;  // NaN when no sidelobe region exists
    bool degenerate;
    std::vector<std::pair<double, double>> strong_lobes;  // (angle, level)
};

SidelobeReport sidelobe_report(const BeampatternCurve& curve);

// Periodic sinc ratio sin(kappa*omega/2)/sin(omega/2) on omega in [-pi, pi],
// continued with its limit value at omega = 0.
double dirichlet_sinc(int kappa, double omega);

struct SincPeak {
    double omega;
    double value;  // of |dirichlet_sinc(kappa, omega)| / kappa
};

// Highest sidelobe of |dirichlet_sinc(kappa, .)|/kappa over (2*pi/kappa, pi].
// kappa = 2 has no sidelobes (the ratio is cos(omega/2)); kappa = 3 peaks at
// omega = pi with value exactly 1/3.
std::optional<SincPeak> sinc_peak_sidelobe(int kappa);

// H_K(omega) = |sinc_{M-K+1}(omega)| * |sinc_K(omega)| / (K*(M-K+1)),
// the normalized transmit-side envelope; H_K(0) = 1 for every K.
std::vector<double> hk_function(int m_tx, int k_subarrays, const std::vector<double>& omegas);

// Overall patterns of the K-subarray and (M-K+1)-subarray systems coincide;
// max_abs_diff[k-1] is the grid-wise deviation for the pair (k, M-k+1).
struct SwapSymmetryReport {
    int m_tx;
    std::vector<double> max_abs_diff;

    bool pass(double tolerance) const;
};

SwapSymmetryReport verify_proposition1(const ArrayConfig& cfg, double theta_s,
                                       const AngleGrid& grid);

// Sidelobe-ordering report: every overlapped partition keeps its overall
// peak sidelobe at or below the K = 1 (phased-array) level, the product of
// the component peak sidelobes stays below the phased-array peak sidelobe in
// the regime where both component factors have true sidelobes
// (K > 3 and M-K+1 > 3), and alpha1 = M/(K*(M-K+1)) never exceeds 1.
struct SidelobeOrderEntry {
    int k;
    double peak_sidelobe;  // linear, of the overall pattern G_K
    double alpha1;
    // zeta2/zeta3: peak sidelobes of the two component sinc envelopes;
    // gamma = zeta2*zeta3/zeta1. NaN outside the regime above, except the
    // K = 1 baseline where gamma is exactly 1.
    double zeta2;
    double zeta3;
    double gamma;
};

struct SidelobeOrderReport {
    int m_tx;
    double zeta1;  // peak sidelobe of the full-aperture sinc envelope
    std::vector<SidelobeOrderEntry> entries;
    bool ordered_below_phased_array;
    bool zeta_product_below_zeta1;
    bool alpha1_bounded;
};

SidelobeOrderReport verify_proposition2(const ArrayConfig& cfg, double theta_s,
                                        const AngleGrid& grid);

}  // namespace pmimo
