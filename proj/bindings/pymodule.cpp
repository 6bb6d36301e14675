// Python bindings for the core operations: steering/partitioning, waveform
// synthesis and matched filtering, beamformers, beampattern analysis, SINR
// analysis and the experiment harness.
#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "pmimo/beamforming.hpp"
#include "pmimo/beampattern.hpp"
#include "pmimo/experiment.hpp"
#include "pmimo/rng.hpp"
#include "pmimo/sinr.hpp"
#include "pmimo/units.hpp"
#include "pmimo/waveform.hpp"

namespace py = pybind11;
using namespace pybind11::literals;
using namespace pmimo;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Phased-MIMO radar beampattern/SINR analysis core";
    m.attr("__version__") = "0.1.0";

    py::register_exception<ConfigError>(m, "ConfigError");

    m.def("deg2rad", &deg2rad, "deg"_a);
    m.def("rad2deg", &rad2deg, "rad"_a);
    m.def("to_db", &to_db, "linear"_a);
    m.def("from_db", &from_db, "db"_a);

    py::class_<ArrayConfig>(m, "ArrayConfig")
        .def(py::init<int, int, double, double>(), "m_tx"_a, "n_rx"_a, "d_tx"_a = 0.5,
             "d_rx"_a = 0.5)
        .def_readonly("m_tx", &ArrayConfig::m_tx)
        .def_readonly("n_rx", &ArrayConfig::n_rx)
        .def_readonly("d_tx", &ArrayConfig::d_tx)
        .def_readonly("d_rx", &ArrayConfig::d_rx);

    py::enum_<PartitionScheme>(m, "PartitionScheme")
        .value("FULLY_OVERLAPPED", PartitionScheme::FullyOverlapped)
        .value("NON_OVERLAPPED", PartitionScheme::NonOverlapped)
        .value("WHOLE_ARRAY", PartitionScheme::WholeArray);

    py::class_<Partition>(m, "Partition")
        .def_static("fully_overlapped", &Partition::fully_overlapped, "m_tx"_a, "k"_a)
        .def_static("non_overlapped", &Partition::non_overlapped, "m_tx"_a, "k"_a)
        .def_static("whole_array", &Partition::whole_array, "m_tx"_a, "k"_a)
        .def_static("make", &Partition::make, "scheme"_a, "m_tx"_a, "k"_a)
        .def_readonly("scheme", &Partition::scheme)
        .def_readonly("k_subarrays", &Partition::k_subarrays)
        .def_readonly("subarrays", &Partition::subarrays)
        .def("subarray_size", &Partition::subarray_size, "k"_a);

    m.def("tx_steering", &tx_steering, "cfg"_a, "theta"_a);
    m.def("rx_steering", &rx_steering, "cfg"_a, "theta"_a);
    m.def("subarray_steering", &subarray_steering, "cfg"_a, "part"_a, "k"_a, "theta"_a);
    m.def("diversity_vector", &diversity_vector, "cfg"_a, "part"_a, "theta"_a);
    m.def("coherent_vector", &coherent_vector, "weights"_a, "cfg"_a, "part"_a, "theta"_a);
    m.def("virtual_steering", &virtual_steering, "weights"_a, "cfg"_a, "part"_a, "theta"_a);
    m.def("mimo_virtual_steering", &mimo_virtual_steering, "cfg"_a, "theta"_a);
    m.def("kron", &kron, "x"_a, "y"_a);

    py::class_<WaveformBank>(m, "WaveformBank")
        .def_readonly("k_waveforms", &WaveformBank::k_waveforms)
        .def_readonly("samples_per_pulse", &WaveformBank::samples_per_pulse)
        .def_readonly("table", &WaveformBank::table);
    py::class_<TransmitSignalSet>(m, "TransmitSignalSet")
        .def_readonly("samples", &TransmitSignalSet::samples)
        .def_readonly("weight_matrix", &TransmitSignalSet::weight_matrix);
    m.def("make_bank", &make_bank, "k_waveforms"_a, "samples_per_pulse"_a = 256);
    m.def("transmit_weight_matrix", &transmit_weight_matrix, "weights"_a, "cfg"_a, "part"_a);
    m.def("synthesize_tx", &synthesize_tx, "bank"_a, "weights"_a, "cfg"_a, "part"_a);
    m.def("pulse_energy", &pulse_energy, "tx"_a);
    m.def("transmit_power", &transmit_power, "weights"_a, "cfg"_a, "part"_a, "theta"_a,
          "sigma2"_a = 1.0);
    m.def("simulate_rx_pulse", &simulate_rx_pulse, "tx"_a, "cfg"_a, "sources"_a);
    m.def("matched_filter", &matched_filter, "rx_pulse"_a, "bank"_a);

    m.def("conventional_tx_weights", &conventional_tx_weights, "cfg"_a, "part"_a, "theta_s"_a);
    m.def("conventional_rx_weights", &conventional_rx_weights, "cfg"_a, "part"_a, "tx_weights"_a,
          "theta_s"_a);
    py::class_<CovarianceEstimate>(m, "CovarianceEstimate")
        .def_readonly("matrix", &CovarianceEstimate::matrix)
        .def_readonly("n_snapshots", &CovarianceEstimate::n_snapshots)
        .def_readonly("diagonal_load", &CovarianceEstimate::diagonal_load);
    m.def("sample_covariance", &sample_covariance, "snapshots"_a, "diagonal_load"_a = 0.0);
    m.def("mvdr_weights",
          py::overload_cast<const CMatrix&, const CVector&>(&mvdr_weights), "covariance"_a,
          "u_s"_a);
    m.def("mvdr_weights",
          py::overload_cast<const CovarianceEstimate&, const CVector&>(&mvdr_weights),
          "covariance"_a, "u_s"_a);

    py::class_<AngleGrid>(m, "AngleGrid")
        .def_static("uniform", &AngleGrid::uniform, "resolution"_a, "theta_s"_a)
        .def_readonly("angles", &AngleGrid::angles)
        .def_readonly("resolution", &AngleGrid::resolution)
        .def("index_of", &AngleGrid::index_of, "theta"_a)
        .def("__len__", &AngleGrid::size);

    py::enum_<PatternKind>(m, "PatternKind")
        .value("TRANSMIT_C", PatternKind::TransmitC)
        .value("DIVERSITY_D", PatternKind::DiversityD)
        .value("RECEIVE_R", PatternKind::ReceiveR)
        .value("OVERALL", PatternKind::Overall)
        .value("MVDR", PatternKind::Mvdr);

    py::class_<PatternParams>(m, "PatternParams")
        .def_readonly("m_tx", &PatternParams::m_tx)
        .def_readonly("n_rx", &PatternParams::n_rx)
        .def_readonly("k_subarrays", &PatternParams::k_subarrays)
        .def_readonly("scheme", &PatternParams::scheme)
        .def_readonly("d_tx", &PatternParams::d_tx)
        .def_readonly("d_rx", &PatternParams::d_rx)
        .def_readonly("theta_s", &PatternParams::theta_s);

    py::class_<BeampatternCurve>(m, "BeampatternCurve")
        .def_readonly("grid", &BeampatternCurve::grid)
        .def_readonly("values", &BeampatternCurve::values)
        .def_readonly("kind", &BeampatternCurve::kind)
        .def_readonly("params", &BeampatternCurve::params);

    py::class_<ComponentPatterns>(m, "ComponentPatterns")
        .def_readonly("transmit", &ComponentPatterns::transmit)
        .def_readonly("diversity", &ComponentPatterns::diversity)
        .def_readonly("receive", &ComponentPatterns::receive);

    m.def("component_patterns", &component_patterns, "cfg"_a, "part"_a, "theta_s"_a, "grid"_a);
    m.def("overall_pattern", &overall_pattern, "cfg"_a, "part"_a, "tx_weights"_a, "theta_s"_a,
          "grid"_a);
    m.def("factored_overall_pattern", &factored_overall_pattern, "cfg"_a, "part"_a, "theta_s"_a,
          "grid"_a);
    m.def("mvdr_pattern", &mvdr_pattern, "cfg"_a, "part"_a, "tx_weights"_a, "rx_weights"_a,
          "theta_s"_a, "grid"_a);

    py::class_<SidelobeReport>(m, "SidelobeReport")
        .def_readonly("mainlobe_left", &SidelobeReport::mainlobe_left)
        .def_readonly("mainlobe_right", &SidelobeReport::mainlobe_right)
        .def_readonly("peak_sidelobe_level", &SidelobeReport::peak_sidelobe_level)
        .def_readonly("peak_sidelobe_angle", &SidelobeReport::peak_sidelobe_angle)
        .def_readonly("degenerate", &SidelobeReport::degenerate)
        .def_readonly("strong_lobes", &SidelobeReport::strong_lobes);
    m.def("sidelobe_report", &sidelobe_report, "curve"_a);

    m.def("dirichlet_sinc", &dirichlet_sinc, "kappa"_a, "omega"_a);
    py::class_<SincPeak>(m, "SincPeak")
        .def_readonly("omega", &SincPeak::omega)
        .def_readonly("value", &SincPeak::value);
    m.def("sinc_peak_sidelobe", &sinc_peak_sidelobe, "kappa"_a);
    m.def("hk_function", &hk_function, "m_tx"_a, "k_subarrays"_a, "omegas"_a);

    py::class_<SwapSymmetryReport>(m, "SwapSymmetryReport")
        .def_readonly("m_tx", &SwapSymmetryReport::m_tx)
        .def_readonly("max_abs_diff", &SwapSymmetryReport::max_abs_diff)
        .def("passes", &SwapSymmetryReport::pass, "tolerance"_a);
    m.def("verify_proposition1", &verify_proposition1, "cfg"_a, "theta_s"_a, "grid"_a);

    py::class_<SidelobeOrderEntry>(m, "SidelobeOrderEntry")
        .def_readonly("k", &SidelobeOrderEntry::k)
        .def_readonly("peak_sidelobe", &SidelobeOrderEntry::peak_sidelobe)
        .def_readonly("alpha1", &SidelobeOrderEntry::alpha1)
        .def_readonly("zeta2", &SidelobeOrderEntry::zeta2)
        .def_readonly("zeta3", &SidelobeOrderEntry::zeta3)
        .def_readonly("gamma", &SidelobeOrderEntry::gamma);
    py::class_<SidelobeOrderReport>(m, "SidelobeOrderReport")
        .def_readonly("m_tx", &SidelobeOrderReport::m_tx)
        .def_readonly("zeta1", &SidelobeOrderReport::zeta1)
        .def_readonly("entries", &SidelobeOrderReport::entries)
        .def_readonly("ordered_below_phased_array",
                      &SidelobeOrderReport::ordered_below_phased_array)
        .def_readonly("zeta_product_below_zeta1", &SidelobeOrderReport::zeta_product_below_zeta1)
        .def_readonly("alpha1_bounded", &SidelobeOrderReport::alpha1_bounded);
    m.def("verify_proposition2", &verify_proposition2, "cfg"_a, "theta_s"_a, "grid"_a);

    py::class_<RunRng>(m, "RunRng")
        .def(py::init<std::uint64_t, std::uint64_t, std::uint64_t>(), "seed"_a, "stream"_a = 0,
             "run"_a = 0)
        .def("cgauss", &RunRng::cgauss);

    py::class_<Target>(m, "Target")
        .def(py::init([](double theta, double power) { return Target{theta, power}; }), "theta"_a,
             "power"_a = 1.0)
        .def_readwrite("theta", &Target::theta)
        .def_readwrite("power", &Target::power);
    py::class_<PointInterferer>(m, "PointInterferer")
        .def(py::init([](double theta, double power) { return PointInterferer{theta, power}; }),
             "theta"_a, "power"_a)
        .def_readwrite("theta", &PointInterferer::theta)
        .def_readwrite("power", &PointInterferer::power);
    py::class_<DistributedInterference>(m, "DistributedInterference")
        .def(py::init([](double theta_lo, double theta_hi, double total_power, int n_patches) {
                 return DistributedInterference{theta_lo, theta_hi, total_power, n_patches};
             }),
             "theta_lo"_a, "theta_hi"_a, "total_power"_a, "n_patches"_a = 61)
        .def_readwrite("theta_lo", &DistributedInterference::theta_lo)
        .def_readwrite("theta_hi", &DistributedInterference::theta_hi)
        .def_readwrite("total_power", &DistributedInterference::total_power)
        .def_readwrite("n_patches", &DistributedInterference::n_patches);

    py::class_<Scenario>(m, "Scenario")
        .def(py::init([](ArrayConfig cfg, Partition part, Target target,
                         std::vector<PointInterferer> interferers,
                         std::optional<DistributedInterference> distributed, double noise_power,
                         int snapshot_count, int pulse_runs, std::uint64_t seed) {
                 return Scenario{std::move(cfg),       std::move(part),
                                 target,               std::move(interferers),
                                 std::move(distributed), noise_power,
                                 snapshot_count,       pulse_runs,
                                 seed};
             }),
             "cfg"_a, "part"_a, "target"_a, "interferers"_a = std::vector<PointInterferer>{},
             "distributed"_a = std::nullopt, "noise_power"_a = 1.0, "snapshot_count"_a = 100,
             "pulse_runs"_a = 100, "seed"_a = 1)
        .def_readwrite("cfg", &Scenario::cfg)
        .def_readwrite("part", &Scenario::part)
        .def_readwrite("target", &Scenario::target)
        .def_readwrite("interferers", &Scenario::interferers)
        .def_readwrite("distributed", &Scenario::distributed)
        .def_readwrite("noise_power", &Scenario::noise_power)
        .def_readwrite("snapshot_count", &Scenario::snapshot_count)
        .def_readwrite("pulse_runs", &Scenario::pulse_runs)
        .def_readwrite("seed", &Scenario::seed)
        .def("effective_interferers", &Scenario::effective_interferers);

    py::enum_<RxBeamformer>(m, "RxBeamformer")
        .value("CONVENTIONAL", RxBeamformer::ConventionalRx)
        .value("MVDR", RxBeamformer::Mvdr);
    py::class_<MonteCarloOptions>(m, "MonteCarloOptions")
        .def(py::init([](RxBeamformer beamformer, double diagonal_load, int threads,
                         std::uint64_t stream) {
                 return MonteCarloOptions{beamformer, diagonal_load, threads, stream};
             }),
             "beamformer"_a = RxBeamformer::ConventionalRx, "diagonal_load"_a = 10.0,
             "threads"_a = 1, "stream"_a = 0)
        .def_readwrite("beamformer", &MonteCarloOptions::beamformer)
        .def_readwrite("diagonal_load", &MonteCarloOptions::diagonal_load)
        .def_readwrite("threads", &MonteCarloOptions::threads)
        .def_readwrite("stream", &MonteCarloOptions::stream);
    py::class_<MonteCarloEstimate>(m, "MonteCarloEstimate")
        .def_readonly("sinr", &MonteCarloEstimate::sinr)
        .def_readonly("stderr_db", &MonteCarloEstimate::stderr_db);

    m.def("interference_noise_covariance", &interference_noise_covariance, "scenario"_a,
          "tx_weights"_a);
    m.def("analytic_sinr", &analytic_sinr, "scenario"_a, "tx_weights"_a, "rx_weights"_a);
    m.def("optimal_sinr", &optimal_sinr, "scenario"_a, "tx_weights"_a);
    m.def("monte_carlo_sinr", &monte_carlo_sinr, "scenario"_a, "tx_weights"_a,
          "options"_a = MonteCarloOptions{});
    m.def("monte_carlo_sinr_detailed", &monte_carlo_sinr_detailed, "scenario"_a, "tx_weights"_a,
          "options"_a = MonteCarloOptions{});

    m.def(
        "default_config_json",
        [](const std::string& experiment) {
            return default_config(experiment_from_name(experiment)).canonical_json();
        },
        "experiment"_a);
    m.def(
        "canonicalize_config",
        [](const std::string& json_text) { return config_from_json(json_text).canonical_json(); },
        "json_text"_a);
    m.def(
        "run_experiment_json",
        [](const std::string& json_text, const std::filesystem::path& out_dir) {
            const ExperimentResult result = run_experiment(config_from_json(json_text), out_dir);
            std::vector<std::string> files;
            files.reserve(result.files.size());
            for (const auto& p : result.files) files.push_back(p.string());
            return files;
        },
        "json_text"_a, "out_dir"_a);
    m.def(
        "verify_csv",
        [](const std::filesystem::path& path) {
            const VerifyOutcome outcome = verify_csv(path);
            return py::make_tuple(outcome.ok, outcome.message);
        },
        "path"_a);
}
