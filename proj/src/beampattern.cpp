#include "pmimo/beampattern.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "pmimo/beamforming.hpp"
#include "pmimo/units.hpp"

namespace pmimo {

namespace {

constexpr double kHalfPi = kPi / 2.0;

PatternParams make_params(const ArrayConfig& cfg, const Partition& part, double theta_s) {
    return PatternParams{cfg.m_tx,  cfg.n_rx, part.k_subarrays, part.scheme,
                         cfg.d_tx, cfg.d_rx, theta_s};
}

}  // namespace

AngleGrid AngleGrid::uniform(double resolution, double theta_s) {
    const double max_resolution = deg2rad(0.1) * (1.0 + 1e-12);
    if (!(resolution > 0.0) || resolution > max_resolution) {
        throw std::invalid_argument("grid resolution must lie in (0, 0.1] degrees");
    }
    if (!(theta_s >= -kHalfPi && theta_s <= kHalfPi)) {
        throw std::domain_error("theta_s must lie in [-pi/2, pi/2]");
    }
    AngleGrid grid;
    grid.resolution = resolution;
    grid.angles.reserve(static_cast<std::size_t>(kPi / resolution) + 2);
    for (long i = 0;; ++i) {
        const double theta = -kHalfPi + static_cast<double>(i) * resolution;
        if (theta >= kHalfPi - resolution * 1e-6) break;
        grid.angles.push_back(theta);
    }
    grid.angles.push_back(kHalfPi);
    auto it = std::lower_bound(grid.angles.begin(), grid.angles.end(), theta_s);
    if (it != grid.angles.end() && *it == theta_s) return grid;
    // Snap the nearest interior sample onto theta_s instead of inserting a
    // separate point; two nearly coincident samples would defeat the local
    // null search around the steered peak.
    std::size_t at = static_cast<std::size_t>(it - grid.angles.begin());
    std::size_t nearest = at;
    if (at > 0 && (at == grid.angles.size() ||
                   theta_s - grid.angles[at - 1] < grid.angles[at] - theta_s)) {
        nearest = at - 1;
    }
    if (nearest > 0 && nearest + 1 < grid.angles.size() &&
        std::abs(grid.angles[nearest] - theta_s) <= resolution * 0.5) {
        grid.angles[nearest] = theta_s;
    } else {
        grid.angles.insert(grid.angles.begin() + static_cast<std::ptrdiff_t>(at), theta_s);
    }
    return grid;
}

std::size_t AngleGrid::index_of(double theta) const {
    auto it = std::lower_bound(angles.begin(), angles.end(), theta);
    if (it == angles.end() || *it != theta) {
        throw std::invalid_argument("angle is not a grid point");
    }
    return static_cast<std::size_t>(it - angles.begin());
}

ComponentPatterns component_patterns(const ArrayConfig& cfg, const Partition& part,
                                     double theta_s, const AngleGrid& grid) {
    const PatternParams params = make_params(cfg, part, theta_s);
    const CVector a_s = subarray_steering(cfg, part, 0, theta_s);
    const CVector d_s = diversity_vector(cfg, part, theta_s);
    const CVector b_s = rx_steering(cfg, theta_s);
    // Steered responses are real element counts, so each curve is exactly 1
    // at theta_s.
    const double c_norm = std::norm(a_s.dot(a_s));
    const double d_norm = std::norm(d_s.dot(d_s));
    const double r_norm = std::norm(b_s.dot(b_s));

    ComponentPatterns out{
        BeampatternCurve{grid, std::vector<double>(grid.size()), PatternKind::TransmitC, params},
        BeampatternCurve{grid, std::vector<double>(grid.size()), PatternKind::DiversityD, params},
        BeampatternCurve{grid, std::vector<double>(grid.size()), PatternKind::ReceiveR, params}};
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double theta = grid.angles[i];
        out.transmit.values[i] = std::norm(a_s.dot(subarray_steering(cfg, part, 0, theta))) / c_norm;
        out.diversity.values[i] = std::norm(d_s.dot(diversity_vector(cfg, part, theta))) / d_norm;
        out.receive.values[i] = std::norm(b_s.dot(rx_steering(cfg, theta))) / r_norm;
    }
    return out;
}

BeampatternCurve overall_pattern(const ArrayConfig& cfg, const Partition& part,
                                 const std::vector<CVector>& tx_weights, double theta_s,
                                 const AngleGrid& grid) {
    BeampatternCurve curve{grid, std::vector<double>(grid.size()), PatternKind::Overall,
                           make_params(cfg, part, theta_s)};
    const CVector w_d = virtual_steering(tx_weights, cfg, part, theta_s);
    const double denom = std::norm(w_d.dot(w_d));
    if (!(denom > 0.0)) throw std::runtime_error("transmit weights give no response at theta_s");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        curve.values[i] =
            std::norm(w_d.dot(virtual_steering(tx_weights, cfg, part, grid.angles[i]))) / denom;
    }
    return curve;
}

BeampatternCurve factored_overall_pattern(const ArrayConfig& cfg, const Partition& part,
                                          double theta_s, const AngleGrid& grid) {
    ComponentPatterns comps = component_patterns(cfg, part, theta_s, grid);
    BeampatternCurve curve{grid, std::vector<double>(grid.size()), PatternKind::Overall,
                           make_params(cfg, part, theta_s)};
    for (std::size_t i = 0; i < grid.size(); ++i) {
        curve.values[i] =
            comps.transmit.values[i] * comps.diversity.values[i] * comps.receive.values[i];
    }
    return curve;
}

BeampatternCurve mvdr_pattern(const ArrayConfig& cfg, const Partition& part,
                              const std::vector<CVector>& tx_weights, const CVector& rx_weights,
                              double theta_s, const AngleGrid& grid) {
    const double denom =
        std::norm(rx_weights.dot(virtual_steering(tx_weights, cfg, part, theta_s)));
    if (!(denom > 0.0)) {
        throw std::runtime_error("receive weights have no response at theta_s");
    }
    BeampatternCurve curve{grid, std::vector<double>(grid.size()), PatternKind::Mvdr,
                           make_params(cfg, part, theta_s)};
    for (std::size_t i = 0; i < grid.size(); ++i) {
        curve.values[i] =
            std::norm(rx_weights.dot(virtual_steering(tx_weights, cfg, part, grid.angles[i]))) /
            denom;
    }
    return curve;
}

SidelobeReport sidelobe_report(const BeampatternCurve& curve) {
    const auto& v = curve.values;
    const auto& angles = curve.grid.angles;
    const std::size_t n = v.size();
    if (n < 3) throw std::invalid_argument("curve too short for sidelobe analysis");
    const std::size_t peak = curve.grid.index_of(curve.params.theta_s);

    SidelobeReport report{};
    report.degenerate = (peak == 0 || v[peak - 1] >= v[peak]) &&
                        (peak + 1 == n || v[peak + 1] >= v[peak]);
    if (report.degenerate) {
        report.mainlobe_left = angles.front();
        report.mainlobe_right = angles.back();
        report.peak_sidelobe_level = 1.0;
        report.peak_sidelobe_angle = std::numeric_limits<double>::quiet_NaN();
        return report;
    }

    std::size_t left = peak;
    while (left > 0 && v[left - 1] < v[left]) --left;
    std::size_t right = peak;
    while (right + 1 < n && v[right + 1] < v[right]) ++right;
    report.mainlobe_left = angles[left];
    report.mainlobe_right = angles[right];

    report.peak_sidelobe_level = 0.0;
    report.peak_sidelobe_angle = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t i = 0; i < n; ++i) {
        if (i >= left && i <= right) continue;
        if (v[i] > report.peak_sidelobe_level) {
            report.peak_sidelobe_level = v[i];
            report.peak_sidelobe_angle = angles[i];
        }
    }

    for (std::size_t i = 0; i < n; ++i) {
        const bool rising = (i == 0) || v[i] > v[i - 1];
        const bool falling = (i + 1 == n) || v[i] >= v[i + 1];
        if (rising && falling && v[i] >= 0.5) report.strong_lobes.emplace_back(angles[i], v[i]);
    }
    return report;
}

double dirichlet_sinc(int kappa, double omega) {
    if (kappa < 1) throw std::invalid_argument("kappa must be >= 1");
    const double s = std::sin(omega / 2.0);
    if (std::abs(s) < 1e-9) {
        // Continuation through the removable singularity; exactly kappa at 0.
        return static_cast<double>(kappa) * std::cos(static_cast<double>(kappa) * omega / 2.0) /
               std::cos(omega / 2.0);
    }
    return std::sin(static_cast<double>(kappa) * omega / 2.0) / s;
}

std::optional<SincPeak> sinc_peak_sidelobe(int kappa) {
    if (kappa < 1) throw std::invalid_argument("kappa must be >= 1");
    // kappa = 1 is constant, kappa = 2 is cos(omega/2): no sidelobes.
    if (kappa < 3) return std::nullopt;
    const double lo = 2.0 * kPi / static_cast<double>(kappa);
    const double step = 1e-5;
    auto eval = [kappa](double omega) {
        return std::abs(dirichlet_sinc(kappa, omega)) / static_cast<double>(kappa);
    };
    SincPeak best{lo, eval(lo)};
    for (double omega = lo; omega < kPi; omega += step) {
        const double value = eval(omega);
        if (value > best.value) best = {omega, value};
    }
    if (eval(kPi) > best.value) best = {kPi, eval(kPi)};

    if (best.omega > lo + step && best.omega < kPi - step) {
        // One parabolic correction around the grid winner.
        const double y0 = eval(best.omega - step);
        const double y2 = eval(best.omega + step);
        const double denom = y0 - 2.0 * best.value + y2;
        if (denom < 0.0) {
            const double dx = 0.5 * step * (y0 - y2) / denom;
            if (std::abs(dx) <= step) {
                const double omega = best.omega + dx;
                const double value = eval(omega);
                if (value > best.value) best = {omega, value};
            }
        }
    }
    return best;
}

std::vector<double> hk_function(int m_tx, int k_subarrays, const std::vector<double>& omegas) {
    if (m_tx < 1) throw std::invalid_argument("m_tx must be >= 1");
    if (k_subarrays < 1 || k_subarrays > m_tx) {
        throw std::invalid_argument("k_subarrays must satisfy 1 <= K <= M");
    }
    const int other = m_tx - k_subarrays + 1;
    const double scale = static_cast<double>(k_subarrays) * static_cast<double>(other);
    std::vector<double> out(omegas.size());
    for (std::size_t i = 0; i < omegas.size(); ++i) {
        out[i] = std::abs(dirichlet_sinc(other, omegas[i])) *
                 std::abs(dirichlet_sinc(k_subarrays, omegas[i])) / scale;
    }
    return out;
}

bool SwapSymmetryReport::pass(double tolerance) const {
    for (double dev : max_abs_diff) {
        if (!(dev <= tolerance)) return false;
    }
    return !max_abs_diff.empty();
}

SwapSymmetryReport verify_proposition1(const ArrayConfig& cfg, double theta_s,
                                       const AngleGrid& grid) {
    std::vector<BeampatternCurve> by_k;
    by_k.reserve(cfg.m_tx);
    for (int k = 1; k <= cfg.m_tx; ++k) {
        const Partition part = Partition::fully_overlapped(cfg.m_tx, k);
        by_k.push_back(
            overall_pattern(cfg, part, conventional_tx_weights(cfg, part, theta_s), theta_s, grid));
    }
    SwapSymmetryReport report{cfg.m_tx, std::vector<double>(cfg.m_tx, 0.0)};
    for (int k = 1; k <= cfg.m_tx; ++k) {
        const auto& a = by_k[static_cast<std::size_t>(k - 1)].values;
        const auto& b = by_k[static_cast<std::size_t>(cfg.m_tx - k)].values;
        double dev = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) dev = std::max(dev, std::abs(a[i] - b[i]));
        report.max_abs_diff[static_cast<std::size_t>(k - 1)] = dev;
    }
    return report;
}

SidelobeOrderReport verify_proposition2(const ArrayConfig& cfg, double theta_s,
                                        const AngleGrid& grid) {
    SidelobeOrderReport report{};
    report.m_tx = cfg.m_tx;
    const auto zeta_full = sinc_peak_sidelobe(cfg.m_tx);
    report.zeta1 =
        zeta_full ? zeta_full->value : std::numeric_limits<double>::quiet_NaN();

    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (int k = 1; k <= cfg.m_tx; ++k) {
        const Partition part = Partition::fully_overlapped(cfg.m_tx, k);
        const BeampatternCurve g =
            overall_pattern(cfg, part, conventional_tx_weights(cfg, part, theta_s), theta_s, grid);
        SidelobeOrderEntry entry{k, sidelobe_report(g).peak_sidelobe_level,
                                 static_cast<double>(cfg.m_tx) /
                                     (static_cast<double>(k) * static_cast<double>(cfg.m_tx - k + 1)),
                                 nan, nan, nan};
        if (k == 1) {
            entry.zeta2 = report.zeta1;
            entry.zeta3 = 1.0;
            entry.gamma = 1.0;
        } else {
            const auto z2 = sinc_peak_sidelobe(cfg.m_tx - k + 1);
            const auto z3 = sinc_peak_sidelobe(k);
            if (z2 && z3 && zeta_full) {
                entry.zeta2 = z2->value;
                entry.zeta3 = z3->value;
                entry.gamma = entry.zeta2 * entry.zeta3 / report.zeta1;
            }
        }
        report.entries.push_back(entry);
    }

    const double baseline = report.entries.front().peak_sidelobe;
    report.ordered_below_phased_array = true;
    report.alpha1_bounded = true;
    report.zeta_product_below_zeta1 = true;
    for (const auto& entry : report.entries) {
        // K = M mirrors K = 1 exactly, so allow equality up to rounding.
        if (entry.peak_sidelobe > baseline * (1.0 + 1e-9)) {
            report.ordered_below_phased_array = false;
        }
        if (entry.alpha1 > 1.0 + 1e-12) report.alpha1_bounded = false;
        if (entry.k > 3 && cfg.m_tx - entry.k + 1 > 3 && zeta_full) {
            if (!(entry.zeta2 * entry.zeta3 < report.zeta1)) {
                report.zeta_product_below_zeta1 = false;
            }
        }
    }
    return report;
}

}  // namespace pmimo
