// Experiment harness: JSON config parsing with strict schema checking,
// canonical config serialization and hashing, experiment orchestration into
// CSV result tables, and integrity verification of emitted files.
#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pmimo/array.hpp"
#include "pmimo/csv.hpp"
#include "pmimo/sinr.hpp"

namespace pmimo {

class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class ExperimentKind {
    Beampattern,
    SinrCurve,
    MvdrPattern,
    VerifyProp1,
    VerifyProp2,
    HkCurves,
};

std::string experiment_name(ExperimentKind kind);
ExperimentKind experiment_from_name(const std::string& name);
std::string scheme_name(PartitionScheme scheme);
PartitionScheme scheme_from_name(const std::string& name);
std::string beamformer_name(RxBeamformer beamformer);
RxBeamformer beamformer_from_name(const std::string& name);

struct SnrSweep {
    double start_db = -10.0;
    double stop_db = 20.0;
    double step_db = 2.0;
};

struct DistributedSpec {
    double theta_lo_deg;
    double theta_hi_deg;
    int n_patches;
};

// Effective experiment description. Angles and ratios are in degrees/dB here
// (the wire format); everything is converted at scenario_for()/run time.
struct ExperimentConfig {
    ExperimentKind experiment = ExperimentKind::Beampattern;
    int m_tx = 10;
    int n_rx = 10;
    double d_tx = 0.5;
    double d_rx = 0.5;
    PartitionScheme scheme = PartitionScheme::FullyOverlapped;
    int k_subarrays = 5;
    double theta_s_deg = 10.0;
    double snr_db = 0.0;
    std::vector<double> interferer_theta_deg = {-30.0, -10.0};
    std::optional<DistributedSpec> distributed;
    double inr_db = 30.0;
    bool tie_inr_to_snr = false;
    double noise_power = 1.0;
    int snapshot_count = 100;
    double diagonal_load = 10.0;
    int runs = 100;
    std::uint64_t seed = 1;
    double grid_resolution_deg = 0.1;  // verification experiments default to 0.02
    SnrSweep sweep;
    RxBeamformer beamformer = RxBeamformer::ConventionalRx;
    int threads = 1;

    ArrayConfig array_config() const;
    Partition partition() const;
    Scenario scenario_for(const Partition& part, double snr_db_point) const;

    // Canonical compact JSON with every result-affecting field present and
    // keys sorted; equal scenarios serialize to equal bytes. threads is
    // excluded since parallelism never changes emitted numbers.
    std::string canonical_json() const;
    std::uint64_t scenario_hash() const;
};

ExperimentConfig default_config(ExperimentKind kind);

// Strict parse: unknown fields, type mismatches and invariant violations all
// raise ConfigError naming the offending field path. When `forced` is set it
// overrides the file's experiment kind (the CLI subcommand wins).
ExperimentConfig config_from_json(const std::string& json_text,
                                  std::optional<ExperimentKind> forced = std::nullopt);
ExperimentConfig load_config(const std::filesystem::path& path,
                             std::optional<ExperimentKind> forced = std::nullopt);

struct EmittedTable {
    std::string filename;
    ResultTable table;
};

struct ExperimentResult {
    std::vector<std::filesystem::path> files;
    std::vector<EmittedTable> tables;
};

// Computes every table first, then writes them; on a write failure the
// already-written files of this invocation are removed before rethrowing, so
// an output directory never holds a partial result set.
ExperimentResult run_experiment(const ExperimentConfig& config,
                                const std::filesystem::path& out_dir);

struct VerifyOutcome {
    bool ok;
    std::string message;
};

// Recomputes the canonical-config fingerprint embedded in a result file and
// compares it against the stored scenario_hash line.
VerifyOutcome verify_csv(const std::filesystem::path& path);

}  // namespace pmimo
